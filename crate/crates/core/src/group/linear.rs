//! Projective 2x2 matrices and affine maps over a finite field.

use super::ElementDomain;
use crate::field::{FieldElem, FiniteField};

/// A class of invertible 2x2 matrices modulo scalars, stored row-major and
/// scaled so that the first nonzero entry is 1. Acts on row vectors from
/// the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMatrix {
    entries: [FieldElem; 4],
}

impl ProjMatrix {
    pub fn entries(&self) -> &[FieldElem; 4] {
        &self.entries
    }

    pub fn new(field: &FiniteField, entries: [FieldElem; 4]) -> Self {
        let lead = entries.iter().find(|e| !e.is_zero()).expect("nonzero matrix").clone();
        let scale = field.inv(&lead).expect("nonzero lead");
        Self { entries: entries.map(|e| field.mul(&e, &scale)) }
    }

    pub fn is_canonical(&self, field: &FiniteField) -> bool {
        self.entries.iter().find(|e| !e.is_zero()).is_some_and(|e| *e == field.one())
    }

    pub fn determinant(&self, field: &FiniteField) -> FieldElem {
        let [a, b, c, d] = &self.entries;
        field.sub(&field.mul(a, d), &field.mul(b, c))
    }

    /// Image of the projective point `v`, returned in canonical form.
    pub fn act(&self, field: &FiniteField, v: &[FieldElem; 2]) -> [FieldElem; 2] {
        let [a, b, c, d] = &self.entries;
        let x = field.add(&field.mul(&v[0], a), &field.mul(&v[1], c));
        let y = field.add(&field.mul(&v[0], b), &field.mul(&v[1], d));
        canonical_point(field, [x, y])
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn canonical_point(field: &FiniteField, v: [FieldElem; 2]) -> [FieldElem; 2] {
    let lead = if v[0].is_zero() { &v[1] } else { &v[0] };
    let s = field.inv(lead).expect("nonzero projective point");
    [field.mul(&v[0], &s), field.mul(&v[1], &s)]
}

/// Points of the projective line in canonical order: `(0:1)` first, then
/// `(1:t)` with `t` in field order.
pub fn projective_points(field: &FiniteField) -> Vec<[FieldElem; 2]> {
    let mut pts = vec![[field.zero(), field.one()]];
    pts.extend(field.elements().into_iter().map(|t| [field.one(), t]));
    pts
}

pub struct PglDomain {
    pub field: FiniteField,
}

impl PglDomain {
    pub fn matrix(&self, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> ProjMatrix {
        ProjMatrix::new(&self.field, [a, b, c, d])
    }
}

impl ElementDomain for PglDomain {
    type Elem = ProjMatrix;

    fn identity(&self) -> ProjMatrix {
        let f = &self.field;
        self.matrix(f.one(), f.zero(), f.zero(), f.one())
    }

    fn multiply(&self, x: &ProjMatrix, y: &ProjMatrix) -> ProjMatrix {
        let f = &self.field;
        let [a, b, c, d] = &x.entries;
        let [e, g, h, k] = &y.entries;
        let dot = |p: &FieldElem, q: &FieldElem, r: &FieldElem, s: &FieldElem| f.add(&f.mul(p, q), &f.mul(r, s));
        ProjMatrix::new(f, [dot(a, e, b, h), dot(a, g, b, k), dot(c, e, d, h), dot(c, g, d, k)])
    }

    fn validate(&self, m: &ProjMatrix) -> Result<(), String> {
        if !m.entries.iter().all(|e| self.field.contains(e)) {
            return Err("entry outside the field".into());
        }
        if m.determinant(&self.field).is_zero() {
            return Err("singular matrix".into());
        }
        if !m.is_canonical(&self.field) {
            return Err("matrix is not in canonical projective form".into());
        }
        Ok(())
    }
}

/// The map `x -> a*x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: FieldElem,
    pub b: FieldElem,
}

pub struct AffineDomain {
    pub field: FiniteField,
}

impl ElementDomain for AffineDomain {
    type Elem = AffineMap;

    fn identity(&self) -> AffineMap {
        AffineMap { a: self.field.one(), b: self.field.zero() }
    }

    // first x, then y: z -> y.a (x.a z + x.b) + y.b
    fn multiply(&self, x: &AffineMap, y: &AffineMap) -> AffineMap {
        let f = &self.field;
        AffineMap { a: f.mul(&x.a, &y.a), b: f.add(&f.mul(&y.a, &x.b), &y.b) }
    }

    fn validate(&self, m: &AffineMap) -> Result<(), String> {
        if !self.field.contains(&m.a) || !self.field.contains(&m.b) {
            return Err("coefficient outside the field".into());
        }
        if m.a.is_zero() {
            return Err("affine map with zero slope".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scaling() {
        let f = FiniteField::new(5, 1).unwrap();
        let m = ProjMatrix::new(&f, [f.zero(), f.constant(3), f.constant(2), f.constant(4)]);
        assert!(m.is_canonical(&f));
        assert_eq!(m.entries()[1], f.one());
        // 3^-1 = 2 in GF(5), so 2 * 2 = 4 and 4 * 2 = 3
        assert_eq!(m.entries()[2], f.constant(4));
        assert_eq!(m.entries()[3], f.constant(3));
    }

    #[test]
    fn point_stabilizer_is_upper_triangular() {
        let f = FiniteField::new(7, 1).unwrap();
        let pts = projective_points(&f);
        assert_eq!(pts.len(), 8);
        let d = PglDomain { field: f.clone() };
        let upper = d.matrix(f.constant(2), f.constant(5), f.zero(), f.constant(3));
        assert_eq!(upper.act(&f, &pts[0]), pts[0]);
        let lower = d.matrix(f.one(), f.zero(), f.one(), f.one());
        assert_ne!(lower.act(&f, &pts[0]), pts[0]);
    }
}
