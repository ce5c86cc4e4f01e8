use std::collections::BTreeMap;

use num_rational::Ratio;

use super::scwol::Scwol;
use crate::algebra::FiniteActionGroup;
use crate::error::{Error, Result};

/// A complex of finite groups over a scwol. Group elements are referred to by
/// their index in the local group's element list (index 0 is the identity).
#[derive(Debug, Clone)]
pub struct ComplexOfGroups {
    scwol: Scwol,
    groups: Vec<FiniteActionGroup>,
    /// `psi[a][g]` is the image in `G_{t(a)}` of element `g` of `G_{i(a)}`.
    psi: Vec<Vec<usize>>,
    twists: BTreeMap<(usize, usize), usize>,
}

impl ComplexOfGroups {
    pub fn new(scwol: Scwol, groups: Vec<FiniteActionGroup>, psi: Vec<Vec<usize>>) -> Result<Self> {
        if groups.len() != scwol.vertex_count() || psi.len() != scwol.edge_count() {
            return Err(Error::Invalid("local data does not match the scwol".into()));
        }
        for (a, map) in psi.iter().enumerate() {
            let (i, t) = scwol.edge(a);
            if map.len() != groups[i].order() || map.iter().any(|&x| x >= groups[t].order()) {
                return Err(Error::Invalid(format!("edge map {a} has the wrong shape")));
            }
        }
        Ok(ComplexOfGroups { scwol, groups, psi, twists: BTreeMap::new() })
    }

    /// Builds the maps `psi_a` by matching permutations produced by `transport`.
    pub fn from_transport(
        scwol: Scwol,
        groups: Vec<FiniteActionGroup>,
        transport: impl Fn(usize, usize) -> Result<crate::algebra::Perm>,
    ) -> Result<Self> {
        let mut psi = Vec::with_capacity(scwol.edge_count());
        for a in 0..scwol.edge_count() {
            let (i, t) = scwol.edge(a);
            let mut map = Vec::with_capacity(groups[i].order());
            for g in 0..groups[i].order() {
                let p = transport(a, g)?;
                map.push(groups[t].index_of(&p).ok_or_else(|| {
                    Error::NotSubgroup(format!(
                        "image of {} is not contained in the group at {}",
                        scwol.name(i),
                        scwol.name(t)
                    ))
                })?);
            }
            psi.push(map);
        }
        ComplexOfGroups::new(scwol, groups, psi)
    }

    /// The complex with edge `a` deleted from the scwol (later edges renumbered).
    pub fn without_edge(&self, a: usize) -> Self {
        let mut scwol = self.scwol.clone();
        scwol.remove_edge(a);
        let mut psi = self.psi.clone();
        psi.remove(a);
        let shift = |x: usize| if x > a { x - 1 } else { x };
        let twists = self
            .twists
            .iter()
            .filter(|&(&(x, y), _)| x != a && y != a)
            .map(|(&(x, y), &g)| ((shift(x), shift(y)), g))
            .collect();
        ComplexOfGroups { scwol, groups: self.groups.clone(), psi, twists }
    }

    pub fn set_twist(&mut self, a: usize, b: usize, g: usize) {
        self.twists.insert((a, b), g);
    }

    pub fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    pub fn group(&self, v: usize) -> &FiniteActionGroup {
        &self.groups[v]
    }

    pub fn groups(&self) -> &[FiniteActionGroup] {
        &self.groups
    }

    pub fn replace_group(&mut self, v: usize, g: FiniteActionGroup, psi_into: BTreeMap<usize, Vec<usize>>) {
        self.groups[v] = g;
        for (a, map) in psi_into {
            self.psi[a] = map;
        }
    }

    pub fn psi(&self, a: usize, g: usize) -> usize {
        self.psi[a][g]
    }

    pub fn psi_map(&self, a: usize) -> &[usize] {
        &self.psi[a]
    }

    pub fn twist(&self, a: usize, b: usize) -> usize {
        self.twists.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.twists.values().all(|&g| g == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.order() == 1)
    }

    /// Image subgroup `psi_a(G_{i(a)})` as element indices of `G_{t(a)}`.
    pub fn image_indices(&self, a: usize) -> Vec<usize> {
        let mut v = self.psi[a].clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Violations of the complex-of-groups axioms; empty when valid.
    pub fn problems(&self) -> Vec<String> {
        let mut out: Vec<String> = self.scwol.validate();
        if !out.is_empty() {
            return out;
        }
        for a in 0..self.scwol.edge_count() {
            let (i, t) = self.scwol.edge(a);
            let (gi, gt) = (&self.groups[i], &self.groups[t]);
            let map = &self.psi[a];
            if self.image_indices(a).len() != gi.order() {
                out.push(format!("psi_{a} is not injective"));
            }
            for s in gi.generators() {
                let s = gi.index_of(s).expect("generator in group");
                for x in 0..gi.order() {
                    if map[gi.mul_idx(s, x)] != gt.mul_idx(map[s], map[x]) {
                        out.push(format!("psi_{a} is not a homomorphism"));
                        break;
                    }
                }
            }
        }
        for ((a, b), ab) in self.scwol.composable_pairs() {
            let gt = &self.groups[self.scwol.terminal(a)];
            let g = self.twist(a, b);
            let gi = gt.inv_idx(g);
            let src = &self.groups[self.scwol.initial(b)];
            for x in 0..src.order() {
                let lhs = gt.mul_idx(gt.mul_idx(g, self.psi[ab][x]), gi);
                if lhs != self.psi[a][self.psi[b][x]] {
                    out.push(format!("twist condition fails on ({a}, {b})"));
                    break;
                }
            }
        }
        let pairs: Vec<((usize, usize), usize)> = self.scwol.composable_pairs().collect();
        for &((a, b), ab) in &pairs {
            for &((b2, c), bc) in &pairs {
                if b2 != b {
                    continue;
                }
                let gt = &self.groups[self.scwol.terminal(a)];
                let lhs = gt.mul_idx(self.psi[a][self.twist(b, c)], self.twist(a, bc));
                let rhs = gt.mul_idx(self.twist(a, b), self.twist(ab, c));
                if lhs != rhs {
                    out.push(format!("cocycle condition fails on ({a}, {b}, {c})"));
                }
            }
        }
        out
    }

    /// Sum of `1/|G_v|` over the vertices of type `{}` (chamber weight 1).
    pub fn covolume(&self) -> Ratio<u64> {
        (0..self.scwol.vertex_count())
            .filter(|&v| self.scwol.vertex_type(v) == 0)
            .map(|v| Ratio::new(1, self.groups[v].order() as u64))
            .sum()
    }
}
