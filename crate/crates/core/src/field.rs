//! Arithmetic in GF(p^f) over coefficient vectors.
//!
//! Elements are polynomials over GF(p) of degree < f, stored with ascending
//! coefficients and reduced modulo a fixed monic irreducible polynomial. The
//! modulus is the lexicographically smallest monic irreducible of degree f,
//! comparing coefficient lists from the constant term upward, so every run
//! builds the same field.

use thiserror::Error;

/// Largest field order accepted by [`FiniteField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{f} exceeds the limit {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, f: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to GF({p}^{f})")]
    Mismatch { p: u32, f: u32 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^f` into `(p, f)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    f: u32,
    modulus: Vec<u32>,
}

impl FiniteField {
    /// Builds GF(p^f) with the deterministic modulus.
    pub fn new(p: u64, f: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if f == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match p.checked_pow(f) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(FieldError::TooLarge { p, f }),
        }
        let p = p as u32;
        let modulus = smallest_irreducible(p, f as usize);
        Ok(Self { p, f, modulus })
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    /// Monic modulus, ascending coefficients, length `f + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.f as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    /// The class of `x`, i.e. the polynomial generator of the extension.
    /// For a prime field this is the constant `0`.
    pub fn generator_x(&self) -> FieldElem {
        let mut e = self.zero();
        if self.f > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(self.mismatch());
        }
        Ok(FieldElem { coeffs: coeffs.to_vec() })
    }

    /// All elements in lexicographic order of their coefficient vectors.
    pub fn elements(&self) -> Vec<FieldElem> {
        let n = self.order() as usize;
        let f = self.f as usize;
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![0u32; f];
        for _ in 0..n {
            out.push(FieldElem { coeffs: cur.clone() });
            // odometer with coeffs[0] most significant
            for i in (0..f).rev() {
                cur[i] += 1;
                if cur[i] < self.p {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }

    /// Position of `a` in [`FiniteField::elements`].
    pub fn index_of(&self, a: &FieldElem) -> usize {
        a.coeffs.iter().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        a.coeffs.len() == self.f as usize && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn mismatch(&self) -> FieldError {
        FieldError::Mismatch { p: self.p, f: self.f }
    }

    fn check(&self, a: &FieldElem) -> Result<(), FieldError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    /// Checked binary operation; `b` is ignored for `Inv` and `Pow`.
    pub fn arith(&self, a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
            FieldOp::Pow(e) => Ok(self.pow(a, e)),
            FieldOp::Inv => self.inv(a),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.p).collect();
        FieldElem { coeffs }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let f = self.f as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1})
        for k in (f..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..f].iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[k - f + i] = (prod[k - f + i] + p - sub) % p;
            }
        }
        FieldElem { coeffs: prod[..f].iter().map(|&c| c as u32).collect() }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.order() - 1;
        let mut order = n;
        for (r, _) in factorize(n) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// The lexicographically first element of multiplicative order `|F| - 1`.
    pub fn multiplicative_generator(&self) -> FieldElem {
        let n = self.order() - 1;
        self.elements()
            .into_iter()
            .find(|a| self.multiplicative_order(a) == Some(n))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    // den is monic
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    if r.len() < den.len() {
        return r.iter().all(|&c| c == 0);
    }
    for k in (dd..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (i, &m) in den.iter().enumerate() {
            let idx = k - dd + i;
            r[idx] = (r[idx] + p - c * m as u64 % p) % p;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut k = k;
            for _ in 0..d {
                div.push((k % p as u64) as u32);
                k /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, f: usize) -> Vec<u32> {
    let mut low = vec![0u32; f];
    loop {
        let mut poly = low.clone();
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
        // lexicographic successor with low[0] most significant
        let mut i = f;
        loop {
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
        }
    }
}
