//! Permutations of `{0, .., n-1}`, composed left to right: `(a * b)(x) = b(a(x))`.

use super::ElementDomain;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u16).collect() }
    }

    /// Unchecked; validity is enforced by [`PermDomain::validate`].
    pub fn from_images(images: Vec<u16>) -> Self {
        Self { images }
    }

    /// Builds a permutation from cycles written with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, String> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(format!("point {pt} outside 1..={degree}"));
                }
                if std::mem::replace(&mut seen[pt - 1], true) {
                    return Err(format!("point {pt} repeated"));
                }
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn compose(&self, then: &Self) -> Self {
        Self { images: self.images.iter().map(|&x| then.images[x as usize]).collect() }
    }
}

pub struct PermDomain {
    pub degree: usize,
}

impl ElementDomain for PermDomain {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn multiply(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn validate(&self, e: &Permutation) -> Result<(), String> {
        if e.degree() != self.degree {
            return Err(format!("degree {} differs from domain degree {}", e.degree(), self.degree));
        }
        let mut seen = vec![false; self.degree];
        for &x in &e.images {
            if x as usize >= self.degree || std::mem::replace(&mut seen[x as usize], true) {
                return Err("images are not a bijection".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        let p = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(p.image(0), 1);
        assert_eq!(p.image(3), 0);
        let t = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        // (1 2) then (1 2 3 4): 1 -> 2 -> 3
        assert_eq!(t.compose(&p).image(0), 2);
        assert!(Permutation::from_cycles(3, &[&[1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }
}
