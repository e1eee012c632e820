//! Cache records and their JSON encoding.

use particover_core::formulas::{RhoEntry, SigmaEntry, SigmaRhoReport};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A σ or ρ value as stored: a number, `inf`, `none`, `unknown`, or a
/// `[lower, upper]` pair with `null` for an unknown upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Value", try_from = "Value")]
pub enum Quantity {
    Value(u128),
    Infinite,
    NotPartitionable,
    Unknown,
    Interval(u128, Option<u128>),
}

impl From<SigmaEntry> for Quantity {
    fn from(s: SigmaEntry) -> Self {
        match s {
            SigmaEntry::Value(v) => Quantity::Value(v),
            SigmaEntry::Infinite => Quantity::Infinite,
            SigmaEntry::Interval { lower, upper } => Quantity::Interval(lower, Some(upper)),
            SigmaEntry::Unknown => Quantity::Unknown,
        }
    }
}

impl From<RhoEntry> for Quantity {
    fn from(r: RhoEntry) -> Self {
        match r {
            RhoEntry::Value(v) => Quantity::Value(v),
            RhoEntry::NotPartitionable => Quantity::NotPartitionable,
            RhoEntry::Interval { lower, upper } => Quantity::Interval(lower, upper),
            RhoEntry::Unknown => Quantity::Unknown,
        }
    }
}

impl Quantity {
    pub fn value(self) -> Option<u128> {
        match self {
            Quantity::Value(v) => Some(v),
            _ => None,
        }
    }

    /// Everything but intervals and unknowns.
    pub fn is_determined(self) -> bool {
        !matches!(self, Quantity::Interval(..) | Quantity::Unknown)
    }

    /// Whether `v` is consistent with this quantity.
    pub fn admits(self, v: u128) -> bool {
        match self {
            Quantity::Value(x) => x == v,
            Quantity::Interval(lo, hi) => lo <= v && hi.is_none_or(|h| v <= h),
            _ => false,
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Value(v) => write!(f, "{v}"),
            Quantity::Infinite => f.write_str("inf"),
            Quantity::NotPartitionable => f.write_str("none"),
            Quantity::Unknown => f.write_str("unknown"),
            Quantity::Interval(lo, Some(hi)) => write!(f, "[{lo}, {hi}]"),
            Quantity::Interval(lo, None) => write!(f, "[{lo}, ?]"),
        }
    }
}

fn big_to_value(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(v.to_string()),
    }
}

fn value_to_big(v: &Value) -> Result<u128, String> {
    match v {
        Value::Number(n) => n.as_u64().map(u128::from).ok_or_else(|| format!("not a nonnegative integer: {n}")),
        Value::String(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

impl From<Quantity> for Value {
    fn from(q: Quantity) -> Value {
        match q {
            Quantity::Value(v) => big_to_value(v),
            Quantity::Infinite => Value::from("inf"),
            Quantity::NotPartitionable => Value::from("none"),
            Quantity::Unknown => Value::from("unknown"),
            Quantity::Interval(lo, hi) => Value::Array(vec![big_to_value(lo), hi.map_or(Value::Null, big_to_value)]),
        }
    }
}

impl TryFrom<Value> for Quantity {
    type Error = String;

    fn try_from(v: Value) -> Result<Self, String> {
        match &v {
            Value::String(s) if s == "inf" => Ok(Quantity::Infinite),
            Value::String(s) if s == "none" => Ok(Quantity::NotPartitionable),
            Value::String(s) if s == "unknown" => Ok(Quantity::Unknown),
            Value::Array(pair) if pair.len() == 2 => {
                let hi = if pair[1].is_null() { None } else { Some(value_to_big(&pair[1])?) };
                Ok(Quantity::Interval(value_to_big(&pair[0])?, hi))
            }
            other => value_to_big(other).map(Quantity::Value),
        }
    }
}

mod big {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        super::big_to_value(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        super::value_to_big(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// One line of the result cache.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub spec: String,
    #[serde(with = "big")]
    pub order: u128,
    pub sigma: Quantity,
    pub rho: Quantity,
    pub sigma_source: Option<String>,
    pub rho_source: Option<String>,
    pub cert_digest: Option<String>,
    pub version: String,
    pub seconds: f64,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl ResultRecord {
    pub fn from_report(rep: &SigmaRhoReport, cert_digest: Option<String>, seconds: f64) -> Self {
        Self {
            spec: rep.spec.to_string(),
            order: rep.order,
            sigma: rep.sigma.into(),
            rho: rep.rho.into(),
            sigma_source: rep.sigma_source.map(|s| s.tag().to_string()),
            rho_source: rep.rho_source.map(|s| s.tag().to_string()),
            cert_digest,
            version: VERSION.to_string(),
            seconds,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultRecord {
        ResultRecord {
            spec: "S4".into(),
            order: 24,
            sigma: Quantity::Value(4),
            rho: Quantity::Value(10),
            sigma_source: Some("formula".into()),
            rho_source: Some("solver-exact".into()),
            cert_digest: Some("ab".repeat(32)),
            version: VERSION.into(),
            seconds: 0.123456789,
        }
    }

    #[test]
    fn field_names() {
        let v: Value = serde_json::from_str(&sample().to_line()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut want =
            vec!["spec", "order", "sigma", "rho", "sigma_source", "rho_source", "cert_digest", "version", "seconds"];
        want.sort_unstable();
        assert_eq!(keys, want);
    }

    #[test]
    fn quantity_encodings() {
        let cases = [
            (Quantity::Value(7), "7"),
            (Quantity::Infinite, "\"inf\""),
            (Quantity::NotPartitionable, "\"none\""),
            (Quantity::Unknown, "\"unknown\""),
            (Quantity::Interval(14, Some(50)), "[14,50]"),
            (Quantity::Interval(14, None), "[14,null]"),
            (Quantity::Value(u128::MAX), "\"340282366920938463463374607431768211455\""),
        ];
        for (q, text) in cases {
            assert_eq!(serde_json::to_string(&q).unwrap(), text);
            assert_eq!(serde_json::from_str::<Quantity>(text).unwrap(), q);
        }
        assert!(serde_json::from_str::<Quantity>("\"many\"").is_err());
        assert!(serde_json::from_str::<Quantity>("-3").is_err());
    }

    #[test]
    fn admits() {
        assert!(Quantity::Interval(14, Some(50)).admits(50));
        assert!(!Quantity::Interval(14, Some(50)).admits(51));
        assert!(Quantity::Interval(14, None).admits(999));
        assert!(!Quantity::Infinite.admits(3));
    }
}
