//! Symbolic group descriptions and their text grammar.
//!
//! ```text
//! spec    := factor (" x " factor)*
//! factor  := "C" n | "C" p "^" n | "D" 2n | "S" n | "A" n
//!          | "PSL2(" q ")" | "PGL2(" q ")" | "AGL1(" q "," d ")" | "Sz(" q ")"
//! ```
//!
//! Products are flattened, so `X x Y x Z` and `(X x Y) x Z` are the same value
//! and printing always reparses to an identical spec.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{is_prime, prime_power};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    ElementaryAbelian { p: u64, n: u32 },
    /// Dihedral group of the given order (2n).
    Dihedral(u64),
    Symmetric(u32),
    Alternating(u32),
    Psl2(u64),
    Pgl2(u64),
    Agl1 { q: u64, d: u64 },
    Suzuki(u64),
    DirectProduct(Vec<GroupSpec>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid parameters for {family}: {reason}")]
    Invalid { family: &'static str, reason: String },
}

fn invalid(family: &'static str, reason: impl Into<String>) -> SpecError {
    SpecError::Invalid { family, reason: reason.into() }
}

impl GroupSpec {
    /// Checks the family-specific parameter constraints.
    pub fn validate(&self) -> Result<(), SpecError> {
        match *self {
            GroupSpec::Cyclic(0) => Err(invalid("C", "order must be positive")),
            GroupSpec::ElementaryAbelian { p, n } => {
                if !is_prime(p) {
                    Err(invalid("C^", format!("{p} is not prime")))
                } else if n == 0 {
                    Err(invalid("C^", "rank must be positive"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Dihedral(m) if m < 2 || m % 2 == 1 => {
                Err(invalid("D", format!("order {m} must be even and at least 2")))
            }
            GroupSpec::Symmetric(0) => Err(invalid("S", "degree must be positive")),
            GroupSpec::Alternating(0) => Err(invalid("A", "degree must be positive")),
            GroupSpec::Psl2(q) | GroupSpec::Pgl2(q) if prime_power(q).is_none() => {
                Err(invalid("PSL2/PGL2", format!("{q} is not a prime power")))
            }
            GroupSpec::Agl1 { q, d } => {
                if prime_power(q).is_none() {
                    Err(invalid("AGL1", format!("{q} is not a prime power")))
                } else if d < 2 || (q - 1) % d != 0 {
                    Err(invalid("AGL1", format!("d = {d} must exceed 1 and divide q - 1 = {}", q - 1)))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Suzuki(q) => match prime_power(q) {
                Some((2, f)) if f % 2 == 1 && f >= 3 => Ok(()),
                _ => Err(invalid("Sz", format!("{q} is not 2^(2m+1) with m >= 1"))),
            },
            GroupSpec::DirectProduct(ref fs) => {
                if fs.len() < 2 {
                    return Err(invalid("x", "a direct product needs two factors"));
                }
                for f in fs {
                    if matches!(f, GroupSpec::DirectProduct(_)) {
                        return Err(invalid("x", "nested products must be flattened"));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Builds `a x b`, flattening nested products.
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        let mut fs = match a {
            GroupSpec::DirectProduct(fs) => fs,
            other => vec![other],
        };
        match b {
            GroupSpec::DirectProduct(more) => fs.extend(more),
            other => fs.push(other),
        }
        GroupSpec::DirectProduct(fs)
    }

    /// Group order; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        fn fact(n: u32) -> Option<u128> {
            (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k))
        }
        let q3 = |q: u64| -> Option<u128> {
            let q = q as u128;
            q.checked_mul(q.checked_mul(q)?.checked_sub(1)?)
        };
        match *self {
            GroupSpec::Cyclic(n) => Some(n as u128),
            GroupSpec::ElementaryAbelian { p, n } => (p as u128).checked_pow(n),
            GroupSpec::Dihedral(m) => Some(m as u128),
            GroupSpec::Symmetric(n) => fact(n),
            GroupSpec::Alternating(n) => Some(if n < 2 { 1 } else { fact(n)? / 2 }),
            GroupSpec::Psl2(q) => Some(q3(q)? / if q % 2 == 1 { 2 } else { 1 }),
            GroupSpec::Pgl2(q) => q3(q),
            GroupSpec::Agl1 { q, d } => Some(q as u128 * d as u128),
            GroupSpec::Suzuki(q) => {
                let q = q as u128;
                q.checked_mul(q)?.checked_mul(q - 1)?.checked_mul(q.checked_mul(q)? + 1)
            }
            GroupSpec::DirectProduct(ref fs) => {
                fs.iter().try_fold(1u128, |a, f| a.checked_mul(f.order()?))
            }
        }
    }

    pub fn is_suzuki_component(&self) -> bool {
        match self {
            GroupSpec::Suzuki(_) => true,
            GroupSpec::DirectProduct(fs) => fs.iter().any(|f| f.is_suzuki_component()),
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::ElementaryAbelian { p, n } => write!(f, "C{p}^{n}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2({q})"),
            GroupSpec::Pgl2(q) => write!(f, "PGL2({q})"),
            GroupSpec::Agl1 { q, d } => write!(f, "AGL1({q},{d})"),
            GroupSpec::Suzuki(q) => write!(f, "Sz({q})"),
            GroupSpec::DirectProduct(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), SpecError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn number(&mut self) -> Result<u64, SpecError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn small(&mut self) -> Result<u32, SpecError> {
        let start = self.pos;
        let n = self.number()?;
        u32::try_from(n).or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn factor(&mut self) -> Result<GroupSpec, SpecError> {
        let spec = if self.eat("PSL2(") {
            let q = self.number()?;
            self.expect(")")?;
            GroupSpec::Psl2(q)
        } else if self.eat("PGL2(") {
            let q = self.number()?;
            self.expect(")")?;
            GroupSpec::Pgl2(q)
        } else if self.eat("AGL1(") {
            let q = self.number()?;
            self.expect(",")?;
            let d = self.number()?;
            self.expect(")")?;
            GroupSpec::Agl1 { q, d }
        } else if self.eat("Sz(") {
            let q = self.number()?;
            self.expect(")")?;
            GroupSpec::Suzuki(q)
        } else if self.eat("C") {
            let n = self.number()?;
            if self.eat("^") {
                let k = self.small()?;
                GroupSpec::ElementaryAbelian { p: n, n: k }
            } else {
                GroupSpec::Cyclic(n)
            }
        } else if self.eat("D") {
            GroupSpec::Dihedral(self.number()?)
        } else if self.eat("S") {
            GroupSpec::Symmetric(self.small()?)
        } else if self.eat("A") {
            GroupSpec::Alternating(self.small()?)
        } else {
            return self.err("expected a group family");
        };
        spec.validate()?;
        Ok(spec)
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        let mut acc = self.factor()?;
        while self.pos < self.src.len() {
            self.expect(" x ")?;
            let rhs = self.factor()?;
            acc = GroupSpec::product(acc, rhs);
        }
        Ok(acc)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if text.is_empty() {
        return p.err("empty spec");
    }
    p.spec()
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_spec("C3^4").unwrap(), GroupSpec::ElementaryAbelian { p: 3, n: 4 });
        assert_eq!(parse_spec("PSL2(7)").unwrap(), GroupSpec::Psl2(7));
        assert_eq!(
            parse_spec("AGL1(5,4) x C3").unwrap(),
            GroupSpec::DirectProduct(vec![GroupSpec::Agl1 { q: 5, d: 4 }, GroupSpec::Cyclic(3)])
        );
        assert_eq!(parse_spec("D12").unwrap(), GroupSpec::Dihedral(12));
        assert_eq!(parse_spec("Sz(8)").unwrap(), GroupSpec::Suzuki(8));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_spec("PSL2(7").unwrap_err(),
            SpecError::Syntax { pos: 6, msg: "expected `)`".into() }
        );
        assert!(matches!(parse_spec("Q8"), Err(SpecError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_spec("C3 X C3"), Err(SpecError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_spec(""), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec("c3"), Err(SpecError::Syntax { .. })));
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(parse_spec("C4^2"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("D7"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("PSL2(6)"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("AGL1(7,4)"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("AGL1(7,1)"), Err(SpecError::Invalid { .. })));
        assert!(parse_spec("Sz(32)").is_ok());
        assert!(matches!(parse_spec("Sz(2)"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("Sz(16)"), Err(SpecError::Invalid { .. })));
        assert!(matches!(parse_spec("C0"), Err(SpecError::Invalid { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(parse_spec("PSL2(7)").unwrap().order(), Some(168));
        assert_eq!(parse_spec("PSL2(4)").unwrap().order(), Some(60));
        assert_eq!(parse_spec("PGL2(5)").unwrap().order(), Some(120));
        assert_eq!(parse_spec("Sz(8)").unwrap().order(), Some(29120));
        assert_eq!(parse_spec("AGL1(5,4) x C3").unwrap().order(), Some(60));
        assert_eq!(parse_spec("A1").unwrap().order(), Some(1));
    }

    fn arb_factor() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1u64..200).prop_map(GroupSpec::Cyclic),
            (prop::sample::select(vec![2u64, 3, 5, 7, 11]), 1u32..6)
                .prop_map(|(p, n)| GroupSpec::ElementaryAbelian { p, n }),
            (1u64..100).prop_map(|n| GroupSpec::Dihedral(2 * n)),
            (1u32..9).prop_map(GroupSpec::Symmetric),
            (1u32..9).prop_map(GroupSpec::Alternating),
            prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25]).prop_map(GroupSpec::Psl2),
            prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_map(GroupSpec::Pgl2),
            prop::sample::select(vec![(5u64, 4u64), (7, 3), (9, 8), (16, 5), (4, 3)])
                .prop_map(|(q, d)| GroupSpec::Agl1 { q, d }),
            prop::sample::select(vec![8u64, 32, 128]).prop_map(GroupSpec::Suzuki),
        ]
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        prop::collection::vec(arb_factor(), 1..4).prop_map(|fs| {
            if fs.len() == 1 {
                fs.into_iter().next().unwrap()
            } else {
                GroupSpec::DirectProduct(fs)
            }
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(spec in arb_spec()) {
            let text = spec.to_string();
            let back = parse_spec(&text).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
