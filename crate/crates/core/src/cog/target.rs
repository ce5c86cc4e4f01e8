use std::collections::HashMap;
use std::sync::Arc;

use super::covering::TargetComplex;
use super::scwol::{build_chamber_scwol, Scwol};
use crate::algebra::{FieldCtx, LeviElement, LeviModel};
use crate::coxeter::{spherical_subsets, subset_label, Gcm, Subset};
use crate::error::{Error, Result};

/// The canonical complex of groups over the chamber scwol, each parabolic
/// `P_J` standing in through the Levi model of `J` acting on its residue.
/// The coset set `P_J / P_J'` is identified with the `J'`-residues of the
/// `J`-residue; the unipotent radical acts trivially on it and is not modelled.
#[derive(Debug, Clone)]
pub struct TargetResidueFamily {
    scwol: Scwol,
    models: Vec<LeviModel>,
    /// For each edge `J' -> J`, residue key of a chamber to coset label.
    blocks: Vec<HashMap<usize, usize>>,
}

impl TargetResidueFamily {
    /// Requires every spherical subset to consist of pairwise commuting generators.
    pub fn new(field: Arc<FieldCtx>, gcm: &Gcm) -> Result<Self> {
        let lattice = spherical_subsets(&gcm.coxeter_matrix());
        let scwol = build_chamber_scwol(&lattice);
        let models = lattice
            .subsets()
            .iter()
            .map(|&j| {
                LeviModel::new(field.clone(), gcm.clone(), j).map_err(|_| {
                    Error::Unsupported(format!("spherical subset {} has no product-of-lines residue", subset_label(j)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let blocks = scwol
            .edges()
            .iter()
            .map(|&(i, t)| {
                let m = &models[t];
                let keep = scwol.vertex_type(i);
                let mut labels = HashMap::new();
                for c in 0..m.chamber_count() {
                    let next = labels.len();
                    labels.entry(m.residue_key(c, keep)).or_insert(next);
                }
                labels
            })
            .collect();
        Ok(TargetResidueFamily { scwol, models, blocks })
    }

    pub fn model(&self, v: usize) -> &LeviModel {
        &self.models[v]
    }

    pub fn vertex_of(&self, j: Subset) -> Option<usize> {
        (0..self.scwol.vertex_count()).find(|&v| self.scwol.vertex_type(v) == j)
    }

    pub fn edge_between(&self, small: Subset, big: Subset) -> Option<usize> {
        let (i, t) = (self.vertex_of(small)?, self.vertex_of(big)?);
        self.scwol.edges().iter().position(|&e| e == (i, t))
    }
}

impl TargetComplex for TargetResidueFamily {
    type Elem = LeviElement;

    fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    fn identity(&self, v: usize) -> LeviElement {
        self.models[v].identity()
    }

    fn mul(&self, v: usize, x: &LeviElement, y: &LeviElement) -> LeviElement {
        self.models[v].mul(x, y)
    }

    fn inv(&self, v: usize, x: &LeviElement) -> LeviElement {
        self.models[v].inv(x)
    }

    fn theta(&self, b: usize, x: &LeviElement) -> LeviElement {
        let (i, t) = self.scwol.edge(b);
        self.models[t].embed(&self.models[i], x).expect("edges go to larger cliques")
    }

    fn coset_of(&self, b: usize, x: &LeviElement) -> usize {
        let (i, t) = self.scwol.edge(b);
        let m = &self.models[t];
        self.blocks[b][&m.residue_key(m.base_image(x), self.scwol.vertex_type(i))]
    }

    fn coset_count(&self, b: usize) -> usize {
        self.blocks[b].len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_counts_are_powers() {
        let f = Arc::new(FieldCtx::new(3, 1).unwrap());
        let a = Gcm::new(vec![vec![2, 0, -2], vec![0, 2, -2], vec![-2, -2, 2]]).unwrap();
        let t = TargetResidueFamily::new(f, &a).unwrap();
        let s = t.scwol().clone();
        for b in 0..s.edge_count() {
            let (i, j) = s.edge(b);
            let d = (s.vertex_type(j) & !s.vertex_type(i)).count_ones();
            assert_eq!(t.coset_count(b), 4usize.pow(d));
        }
        assert_eq!(s.vertex_count(), 5);
    }
}
