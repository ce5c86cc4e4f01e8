//! Finite models of the Levi factors `L_J = M_J T` for cliques `J` of commuting
//! rank-one groups.
//!
//! An element is `(m, t)`: one matrix `m_j` in `SL_2(q)` for each `j` in `J`,
//! and a torus element `t` whose coordinates on `J` are 1 (those directions are
//! carried by the coroots `h_j(l) = diag(l^-1, l)` inside `m_j`). The torus acts
//! on `M_j` by conjugation with `d_j(t) = diag(1, alpha_j(t))`, so
//! `(m, t)(m', t') = (m . Ad_t(m'), t t')`.
//!
//! The action domain is the residue `prod_{j in J} P^1(F_q)` (mixed radix,
//! factor `k` has weight `(q+1)^k`, base chamber 0), followed by the nonzero
//! vectors of `F_q^2` for each `j` in `J` and the points of `F_q^*` for each
//! torus coordinate outside `J`. The extra points make the action faithful.

use std::sync::Arc;

use super::field::{FieldCtx, Fq};
use super::group::{FiniteActionGroup, Perm};
use super::mat2::{vector_from_index, vector_index, Mat2};
use super::torus::torus_character;
use crate::coxeter::{subset_elements, Gcm, Subset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviElement {
    pub mats: Vec<Mat2>,
    pub torus: Vec<Fq>,
}

#[derive(Debug, Clone)]
pub struct LeviModel {
    field: Arc<FieldCtx>,
    gcm: Gcm,
    j: Vec<usize>,
}

impl LeviModel {
    pub fn new(field: Arc<FieldCtx>, gcm: Gcm, j: Subset) -> Result<Self> {
        let elems = subset_elements(j);
        if elems.iter().any(|&x| x >= gcm.n()) {
            return Err(Error::Invalid("index outside the Cartan matrix".into()));
        }
        for &x in &elems {
            for &y in &elems {
                if x != y && gcm.entry(x, y) != 0 {
                    return Err(Error::Unsupported(format!(
                        "{} is not a set of pairwise commuting generators",
                        crate::coxeter::subset_label(j)
                    )));
                }
            }
        }
        Ok(LeviModel { field, gcm, j: elems })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn mask(&self) -> Subset {
        crate::coxeter::subset_from(&self.j)
    }

    pub fn n(&self) -> usize {
        self.gcm.n()
    }

    pub fn position(&self, j: usize) -> Option<usize> {
        self.j.iter().position(|&x| x == j)
    }

    fn q1(&self) -> usize {
        self.field.q() as usize + 1
    }

    pub fn chamber_count(&self) -> usize {
        self.q1().pow(self.j.len() as u32)
    }

    fn vector_block(&self) -> usize {
        self.field.q() as usize * self.field.q() as usize - 1
    }

    pub fn degree(&self) -> usize {
        let q = self.field.q() as usize;
        self.chamber_count() + self.j.len() * self.vector_block() + (self.n() - self.j.len()) * (q - 1)
    }

    pub fn identity(&self) -> LeviElement {
        LeviElement { mats: vec![Mat2::identity(); self.j.len()], torus: vec![1; self.n()] }
    }

    pub fn alpha(&self, j: usize, t: &[Fq]) -> Fq {
        torus_character(&self.field, &self.gcm, j, t)
    }

    fn d(&self, j: usize, t: &[Fq]) -> Mat2 {
        Mat2::diag(&self.field, 1, self.alpha(j, t)).unwrap()
    }

    pub fn coroot(&self, l: Fq) -> Mat2 {
        let f = &*self.field;
        Mat2::new(f, f.inv(l).expect("nonzero"), 0, 0, l).unwrap()
    }

    pub fn mul(&self, x: &LeviElement, y: &LeviElement) -> LeviElement {
        let f = &*self.field;
        let mats = self
            .j
            .iter()
            .enumerate()
            .map(|(k, &j)| x.mats[k].mul(f, &y.mats[k].conj(f, &self.d(j, &x.torus))))
            .collect();
        let torus = x.torus.iter().zip(&y.torus).map(|(&a, &b)| f.mul(a, b)).collect();
        LeviElement { mats, torus }
    }

    pub fn inv(&self, x: &LeviElement) -> LeviElement {
        let f = &*self.field;
        let tinv: Vec<Fq> = x.torus.iter().map(|&a| f.inv(a).unwrap()).collect();
        let mats = self.j.iter().enumerate().map(|(k, &j)| x.mats[k].inv(f).conj(f, &self.d(j, &tinv))).collect();
        LeviElement { mats, torus: tinv }
    }

    /// Normal form of a torus element given by all `n` coordinates.
    pub fn from_torus(&self, t: &[Fq]) -> LeviElement {
        let mut torus = t.to_vec();
        let mats = self
            .j
            .iter()
            .map(|&j| {
                let m = self.coroot(t[j]);
                torus[j] = 1;
                m
            })
            .collect();
        LeviElement { mats, torus }
    }

    /// The element acting by `m` on the factor of `j` and trivially elsewhere.
    pub fn in_factor(&self, j: usize, m: Mat2) -> Result<LeviElement> {
        let k = self.position(j).ok_or_else(|| Error::Invalid(format!("{} not in the clique", j + 1)))?;
        let mut x = self.identity();
        x.mats[k] = m;
        Ok(x)
    }

    /// Image of an element of the model for a subclique.
    pub fn embed(&self, sub: &LeviModel, x: &LeviElement) -> Result<LeviElement> {
        if sub.n() != self.n() || sub.j.iter().any(|j| self.position(*j).is_none()) {
            return Err(Error::Invalid("not a subclique model".into()));
        }
        let mut torus = x.torus.clone();
        let mats = self
            .j
            .iter()
            .map(|&j| match sub.position(j) {
                Some(k) => x.mats[k],
                None => {
                    torus[j] = 1;
                    self.coroot(x.torus[j])
                }
            })
            .collect();
        Ok(LeviElement { mats, torus })
    }

    /// Matrix by which `x` acts on the factor in position `k`.
    pub fn factor_matrix(&self, x: &LeviElement, k: usize) -> Mat2 {
        x.mats[k].mul(&self.field, &self.d(self.j[k], &x.torus))
    }

    pub fn chamber_coords(&self, c: usize) -> Vec<usize> {
        let mut c = c;
        let b = self.q1();
        (0..self.j.len())
            .map(|_| {
                let x = c % b;
                c /= b;
                x
            })
            .collect()
    }

    pub fn chamber_index(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &x| acc * self.q1() + x)
    }

    /// Index of the chamber obtained from `c` by resetting the coordinates in
    /// `keep` to the base point; chambers of one `keep`-residue share this value.
    pub fn residue_key(&self, c: usize, keep: Subset) -> usize {
        let mut coords = self.chamber_coords(c);
        for (k, &j) in self.j.iter().enumerate() {
            if keep >> j & 1 == 1 {
                coords[k] = 0;
            }
        }
        self.chamber_index(&coords)
    }

    /// Chamber reached from the base chamber by `x`.
    pub fn base_image(&self, x: &LeviElement) -> usize {
        let f = &*self.field;
        let coords: Vec<usize> = (0..self.j.len()).map(|k| self.factor_matrix(x, k).apply_point(f, 0)).collect();
        self.chamber_index(&coords)
    }

    pub fn perm(&self, x: &LeviElement) -> Perm {
        let f = &*self.field;
        let facs: Vec<Mat2> = (0..self.j.len()).map(|k| self.factor_matrix(x, k)).collect();
        let mut images = Vec::with_capacity(self.degree());
        for c in 0..self.chamber_count() {
            let coords: Vec<usize> =
                self.chamber_coords(c).iter().zip(&facs).map(|(&p, m)| m.apply_point(f, p)).collect();
            images.push(self.chamber_index(&coords) as u32);
        }
        let mut offset = self.chamber_count();
        let vb = self.vector_block();
        for m in &facs {
            for v in 0..vb {
                images.push((offset + vector_index(f, m.apply_vec(f, vector_from_index(f, v)))) as u32);
            }
            offset += vb;
        }
        for i in 0..self.n() {
            if self.position(i).is_some() {
                continue;
            }
            for a in 1..f.q() {
                images.push((offset + f.mul(x.torus[i], a) as usize - 1) as u32);
            }
            offset += f.q() as usize - 1;
        }
        Perm::new(images)
    }

    pub fn generate(&self, gens: &[LeviElement], cap: usize) -> Result<FiniteActionGroup> {
        let labelled = gens.iter().map(|g| (self.perm(g), g.clone())).collect();
        FiniteActionGroup::generate_labeled(
            self.degree(),
            self.chamber_count(),
            labelled,
            self.identity(),
            &|a, b| self.mul(a, b),
            cap,
        )
    }

    /// Elements of `g` stabilising the residue of type `keep` through the base chamber.
    pub fn residue_stabilizer(&self, g: &FiniteActionGroup, keep: Subset) -> FiniteActionGroup {
        g.filter_subgroup(|p| self.residue_key(p.apply(0), keep) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: u64, rows: Vec<Vec<i64>>, j: Subset) -> LeviModel {
        LeviModel::new(Arc::new(FieldCtx::new(p, 1).unwrap()), Gcm::new(rows).unwrap(), j).unwrap()
    }

    fn samples(m: &LeviModel) -> Vec<LeviElement> {
        let f = m.field().clone();
        let sl: Vec<Mat2> = Mat2::sl2_elements(&f).step_by(5).take(6).collect();
        let mut out = Vec::new();
        for (k, a) in sl.iter().enumerate() {
            let mut x =
                m.from_torus(&(0..m.n()).map(|i| ((k + i) % (f.q() as usize - 1) + 1) as Fq).collect::<Vec<_>>());
            for pos in 0..m.j().len() {
                x = m.mul(&x, &m.in_factor(m.j()[pos], *a).unwrap());
            }
            out.push(x);
        }
        out
    }

    #[test]
    fn action_is_a_homomorphism() {
        let m = model(5, vec![vec![2, 0, -3], vec![0, 2, -1], vec![-2, -2, 2]], 0b011);
        let xs = samples(&m);
        for x in &xs {
            assert_eq!(m.perm(&m.mul(x, &m.inv(x))), Perm::identity(m.degree()));
            for y in &xs {
                assert_eq!(m.perm(&m.mul(x, y)), m.perm(x).compose(&m.perm(y)));
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let rows = vec![vec![2, 0, -3], vec![0, 2, -1], vec![-2, -2, 2]];
        let big = model(7, rows.clone(), 0b011);
        let small = model(7, rows, 0b001);
        let xs = samples(&small);
        for x in &xs {
            for y in &xs {
                assert_eq!(
                    big.embed(&small, &small.mul(x, y)).unwrap(),
                    big.mul(&big.embed(&small, x).unwrap(), &big.embed(&small, y).unwrap())
                );
            }
        }
    }

    #[test]
    fn rejects_non_clique() {
        let r = LeviModel::new(
            Arc::new(FieldCtx::new(3, 1).unwrap()),
            Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap(),
            0b11,
        );
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn sizes() {
        let m = model(3, vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]], 0b011);
        assert_eq!(m.chamber_count(), 16);
        assert_eq!(m.degree(), 16 + 2 * 8 + 2);
        assert_eq!(m.chamber_index(&m.chamber_coords(13)), 13);
    }
}
