use serde::Serialize;

use super::field::Field;
use crate::error::{param, Result};

/// `F_p ⊂ F_q ⊂ F_{q^m1}, F_{q^m2}` with `q = p^m`, both top fields built as
/// relative extensions of `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    pub p: u64,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub fp: Field,
    pub fq: Field,
    pub fq1: Field,
    pub fq2: Field,
}

/// Enough to rebuild a tower bit-for-bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub q: u64,
    pub modulus_fq: Vec<u64>,
    pub modulus_fq1: Vec<u64>,
    pub modulus_fq2: Vec<u64>,
    pub primitive_fq: Vec<u64>,
}

impl FieldTower {
    pub fn build(p: u64, m: usize, m1: usize, m2: usize) -> Result<FieldTower> {
        if m == 0 || m1 == 0 || m2 == 0 {
            return param("extension degrees must be positive");
        }
        let fp = Field::prime(p)?;
        let fq = if m == 1 {
            fp.clone()
        } else {
            Field::extension_of_degree(&fp, m)?
        };
        if fq.size() > 1024 {
            return param(format!(
                "base field of size {} exceeds the supported 1024",
                fq.size()
            ));
        }
        let fq1 = Field::extension_of_degree(&fq, m1)?;
        let fq2 = if m2 == m1 {
            fq1.clone()
        } else {
            Field::extension_of_degree(&fq, m2)?
        };
        Ok(FieldTower {
            p,
            m,
            m1,
            m2,
            fp,
            fq,
            fq1,
            fq2,
        })
    }

    pub fn q(&self) -> u64 {
        self.fq.size()
    }

    /// `M = m1 + m2`.
    pub fn total_degree(&self) -> usize {
        self.m1 + self.m2
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            m1: self.m1,
            m2: self.m2,
            q: self.q(),
            modulus_fq: self.fq.modulus().to_vec(),
            modulus_fq1: self.fq1.modulus().to_vec(),
            modulus_fq2: self.fq2.modulus().to_vec(),
            primitive_fq: self.fq.prime_digits(self.fq.primitive()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            FieldTower::build(2, 1, 1, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            FieldTower::build(3, 0, 1, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            FieldTower::build(15, 1, 1, 1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn sizes_and_chain() {
        let t = FieldTower::build(3, 2, 3, 2).unwrap();
        assert_eq!(t.q(), 9);
        assert_eq!(t.fq1.size(), 729);
        assert_eq!(t.fq2.size(), 81);
        assert!(t.fq1.contains_subfield(&t.fp));
        assert!(!t.fq.contains_subfield(&t.fq1));
        assert_eq!(t.descriptor().modulus_fq, vec![1, 0, 1]);
    }

    #[test]
    fn deterministic_rebuild() {
        let a = FieldTower::build(5, 1, 3, 2).unwrap();
        let b = FieldTower::build(5, 1, 3, 2).unwrap();
        assert_eq!(a.descriptor(), b.descriptor());
        assert_eq!(a.fq1.ordering(), b.fq1.ordering());
    }
}
