use super::field::{FieldCtx, Fq};
use crate::coxeter::Gcm;
use crate::error::{Error, Result};

/// Element of the split torus `T = (F_q^*)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusElement(Vec<Fq>);

impl TorusElement {
    pub fn new(coords: Vec<Fq>) -> Result<Self> {
        if coords.contains(&0) {
            return Err(Error::Invalid("torus coordinates must be nonzero".into()));
        }
        Ok(TorusElement(coords))
    }

    pub fn identity(n: usize) -> Self {
        TorusElement(vec![1; n])
    }

    pub fn coords(&self) -> &[Fq] {
        &self.0
    }

    pub fn mul(&self, f: &FieldCtx, o: &TorusElement) -> TorusElement {
        TorusElement(self.0.iter().zip(&o.0).map(|(&x, &y)| f.mul(x, y)).collect())
    }

    pub fn inv(&self, f: &FieldCtx) -> TorusElement {
        TorusElement(self.0.iter().map(|&x| f.inv(x).unwrap()).collect())
    }
}

/// `alpha_j(t) = prod_i t_i^{a_ij}`.
pub fn torus_character(f: &FieldCtx, a: &Gcm, j: usize, t: &[Fq]) -> Fq {
    (0..a.n()).fold(1, |acc, i| f.mul(acc, f.pow(t[i], a.entry(i, j))))
}
