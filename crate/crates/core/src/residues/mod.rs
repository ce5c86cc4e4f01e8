//! Finite chamber systems modelling spherical residues, their star posets, and
//! transversals assembled from coset representatives.

mod geometry;
mod transversal;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{FieldCtx, FiniteActionGroup, LeviModel};
use crate::coxeter::{
    component_type, poincare_polynomial, subset_elements, subset_from, subset_label, CoxeterMatrix, Gcm, Subset,
};
use crate::error::{Error, Result};

pub use geometry::{flag_geometry, symplectic_form, FlagGeometry};
pub use transversal::{transversal_from_cosets, transversals_are_valid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueKind {
    ProductOfLines,
    A2Plane,
    B2Quadrangle,
    CountingOnly,
}

impl ResidueKind {
    pub fn name(self) -> &'static str {
        match self {
            ResidueKind::ProductOfLines => "product_of_lines",
            ResidueKind::A2Plane => "a2_plane",
            ResidueKind::B2Quadrangle => "b2_quadrangle",
            ResidueKind::CountingOnly => "counting_only",
        }
    }
}

/// A spherical residue as a chamber system: chambers `0..chamber_count`,
/// base chamber 0, and for each generator in the residue type a partition
/// of the chambers into panels.
#[derive(Debug, Clone)]
pub struct ResidueModel {
    kind: ResidueKind,
    q: u64,
    types: Vec<usize>,
    chambers: usize,
    /// `panels[k][c]`: label of the panel of type `types[k]` through `c`.
    panels: Vec<Vec<usize>>,
    group: Option<FiniteActionGroup>,
}

fn relabel_by_first(raw: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut seen = HashMap::new();
    raw.map(|x| {
        let next = seen.len();
        *seen.entry(x).or_insert(next)
    })
    .collect()
}

impl ResidueModel {
    fn from_panels(kind: ResidueKind, q: u64, types: Vec<usize>, chambers: usize, raw: Vec<Vec<usize>>) -> Self {
        let panels = raw.into_iter().map(|p| relabel_by_first(p.into_iter())).collect();
        ResidueModel { kind, q, types, chambers, panels, group: None }
    }

    pub fn kind(&self) -> ResidueKind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn mask(&self) -> Subset {
        subset_from(&self.types)
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers
    }

    pub fn is_geometric(&self) -> bool {
        self.kind != ResidueKind::CountingOnly
    }

    pub fn group(&self) -> Option<&FiniteActionGroup> {
        self.group.as_ref()
    }

    /// Panel label of chamber `c` for the generator `types[k]`.
    pub fn panel_of(&self, k: usize, c: usize) -> usize {
        self.panels[k][c]
    }

    pub fn panel_count(&self, k: usize) -> usize {
        self.panels[k].iter().max().map_or(0, |m| m + 1)
    }

    /// Renames the generators, keeping their order.
    pub fn with_types(mut self, types: Vec<usize>) -> Result<Self> {
        if types.len() != self.types.len() {
            return Err(Error::Invalid("wrong number of residue types".into()));
        }
        self.types = types;
        Ok(self)
    }

    /// Labels of the residues of type `keep` (a subset of the residue type),
    /// numbered in order of their first chamber.
    pub fn residue_labels(&self, keep: Subset) -> Vec<usize> {
        let ks: Vec<usize> = (0..self.types.len()).filter(|&k| keep >> self.types[k] & 1 == 1).collect();
        let mut parent: Vec<usize> = (0..self.chambers).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &k in &ks {
            let mut first: HashMap<usize, usize> = HashMap::new();
            for c in 0..self.chambers {
                match first.get(&self.panels[k][c]) {
                    Some(&d) => {
                        let (a, b) = (find(&mut parent, c), find(&mut parent, d));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                    None => {
                        first.insert(self.panels[k][c], c);
                    }
                }
            }
        }
        relabel_by_first((0..self.chambers).map(|c| find(&mut parent, c)))
    }

    pub fn residue_count(&self, keep: Subset) -> usize {
        self.residue_labels(keep).into_iter().max().map_or(0, |m| m + 1)
    }

    /// Violations of the chamber-system axioms and of the chamber count `expected`.
    pub fn problems(&self, expected: u128) -> Vec<String> {
        let mut out = Vec::new();
        if self.chambers as u128 != expected {
            out.push(format!("{} chambers, expected {expected}", self.chambers));
        }
        for k in 0..self.panels.len() {
            let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
            for &p in &self.panels[k] {
                *sizes.entry(p).or_default() += 1;
            }
            if let Some((p, s)) = sizes.iter().find(|&(_, &s)| s != self.q + 1) {
                out.push(format!("panel {p} of type {} has {s} chambers", self.types[k] + 1));
            }
            for l in k + 1..self.panels.len() {
                let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
                for c in 0..self.chambers {
                    *pairs.entry((self.panels[k][c], self.panels[l][c])).or_default() += 1;
                }
                if pairs.values().any(|&n| n > 1) {
                    out.push(format!(
                        "panels of types {} and {} share more than one chamber",
                        self.types[k] + 1,
                        self.types[l] + 1
                    ));
                }
            }
        }
        out
    }

    /// Attaches a group acting on the chambers (its first `chamber_count`
    /// points), after checking that it preserves panels and is transitive.
    pub fn attach_group(&mut self, g: FiniteActionGroup) -> Result<()> {
        if g.points() != self.chambers {
            return Err(Error::Invalid("group does not act on this chamber set".into()));
        }
        for s in g.generators() {
            for k in 0..self.panels.len() {
                let mut image: HashMap<usize, usize> = HashMap::new();
                for c in 0..self.chambers {
                    let p = self.panels[k][c];
                    let q = self.panels[k][s.apply(c)];
                    if *image.entry(p).or_insert(q) != q {
                        return Err(Error::Invalid("group does not preserve panels".into()));
                    }
                }
            }
        }
        if !g.is_transitive() {
            return Err(Error::Invalid("group is not transitive on chambers".into()));
        }
        self.group = Some(g);
        Ok(())
    }
}

/// Chambers `prod_{j in J} P^1(F_q)` in the mixed-radix order of the Levi model.
pub fn residue_product_of_lines(a: &Gcm, f: Arc<FieldCtx>, j: Subset) -> Result<ResidueModel> {
    let model = LeviModel::new(f.clone(), a.clone(), j)?;
    let types = subset_elements(j);
    let panels =
        types.iter().map(|&t| (0..model.chamber_count()).map(|c| model.residue_key(c, 1 << t)).collect()).collect();
    Ok(ResidueModel::from_panels(ResidueKind::ProductOfLines, f.q() as u64, types, model.chamber_count(), panels))
}

fn from_flags(kind: ResidueKind, g: &FlagGeometry, q: u64) -> ResidueModel {
    let panels = vec![g.flags.iter().map(|&(_, l)| l).collect(), g.flags.iter().map(|&(p, _)| p).collect()];
    ResidueModel::from_panels(kind, q, vec![0, 1], g.flags.len(), panels)
}

/// Point-line flags of `PG(2, q)`. The first type's panels fix the line, the
/// second type's panels fix the point.
pub fn residue_a2(f: &FieldCtx) -> ResidueModel {
    from_flags(ResidueKind::A2Plane, &flag_geometry(f, 3, None), f.q() as u64)
}

/// Flags of isotropic points and totally isotropic lines for the symplectic
/// form `x1 y2 - x2 y1 + x3 y4 - x4 y3` on `F_q^4`.
pub fn residue_b2(f: &FieldCtx) -> ResidueModel {
    from_flags(ResidueKind::B2Quadrangle, &flag_geometry(f, 4, Some(symplectic_form)), f.q() as u64)
}

/// The residue model for a spherical subset: lines for commuting generators,
/// the projective plane for `m = 3`, the quadrangle for `m = 4`, otherwise
/// chamber counts only.
pub fn residue_for(a: &Gcm, f: Arc<FieldCtx>, j: Subset) -> Result<ResidueModel> {
    let m = a.coxeter_matrix();
    let elems = subset_elements(j);
    if elems.iter().all(|&x| elems.iter().all(|&y| x == y || m.m(x, y) == 2)) {
        return residue_product_of_lines(a, f, j);
    }
    if elems.len() == 2 {
        match m.m(elems[0], elems[1]) {
            3 => return residue_a2(&f).with_types(elems),
            4 => return residue_b2(&f).with_types(elems),
            _ => {}
        }
    }
    counting_residue(&m, j, f.q() as u64)
}

pub fn counting_residue(m: &CoxeterMatrix, j: Subset, q: u64) -> Result<ResidueModel> {
    let chambers = poincare_polynomial(m, j)?.eval(q)?;
    let chambers = usize::try_from(chambers).map_err(|_| Error::Overflow)?;
    Ok(ResidueModel {
        kind: ResidueKind::CountingOnly,
        q,
        types: subset_elements(j),
        chambers,
        panels: Vec::new(),
        group: None,
    })
}

/// Spherical type of `j`, or a description of why it is not spherical.
pub fn residue_type_name(m: &CoxeterMatrix, j: Subset) -> String {
    crate::coxeter::coxeter_components(m, j)
        .into_iter()
        .map(|c| component_type(m, c).unwrap_or_else(|| format!("non-spherical {}", subset_label(c))))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Typed face poset of the star of the vertex `sigma_J`: one element per
/// residue of each type `J' <= J` (the cosets `h P_J'`), ordered by inclusion.
#[derive(Debug, Clone)]
pub struct StarPoset {
    mask: Subset,
    /// Element types in (size, elements) order; `offsets[k]` is the first
    /// element of `cotypes[k]`.
    cotypes: Vec<Subset>,
    offsets: Vec<usize>,
    /// Element of each cotype containing each chamber.
    chamber_to: Vec<Vec<usize>>,
    elements: Vec<(Subset, usize)>,
    covers: Vec<(usize, usize)>,
}

impl StarPoset {
    pub fn mask(&self) -> Subset {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn cotypes(&self) -> &[Subset] {
        &self.cotypes
    }

    /// `(cotype, residue label)` of each element.
    pub fn elements(&self) -> &[(Subset, usize)] {
        &self.elements
    }

    pub fn count_of(&self, cotype: Subset) -> usize {
        self.elements.iter().filter(|e| e.0 == cotype).count()
    }

    pub fn element(&self, cotype: Subset, label: usize) -> Option<usize> {
        let k = self.cotypes.iter().position(|&c| c == cotype)?;
        let e = self.offsets[k] + label;
        (self.elements.get(e)?.0 == cotype).then_some(e)
    }

    /// Element of the given cotype containing chamber `c`.
    pub fn containing(&self, cotype: Subset, c: usize) -> usize {
        let k = self.cotypes.iter().position(|&t| t == cotype).expect("cotype of the poset");
        self.chamber_to[k][c]
    }

    /// Strict inclusions `(smaller, larger)` between elements.
    pub fn relations(&self) -> &[(usize, usize)] {
        &self.covers
    }
}

pub fn star_poset(r: &ResidueModel) -> Result<StarPoset> {
    if !r.is_geometric() {
        return Err(Error::Unsupported("star poset of a counting-only residue".into()));
    }
    let mask = r.mask();
    let mut cotypes: Vec<Subset> = (0..=mask).filter(|&s| s & mask == s).collect();
    cotypes.sort_by_key(|&s| (s.count_ones(), subset_elements(s)));
    let mut offsets = Vec::new();
    let mut chamber_to = Vec::new();
    let mut elements = Vec::new();
    for &t in &cotypes {
        offsets.push(elements.len());
        let labels = r.residue_labels(t);
        let count = labels.iter().max().map_or(0, |m| m + 1);
        chamber_to.push(labels.iter().map(|&l| elements.len() + l).collect::<Vec<_>>());
        elements.extend((0..count).map(|l| (t, l)));
    }
    let mut covers = std::collections::BTreeSet::new();
    for c in 0..r.chamber_count() {
        for (a, &sa) in cotypes.iter().enumerate() {
            for (b, &sb) in cotypes.iter().enumerate() {
                if sa != sb && sa & sb == sa {
                    covers.insert((chamber_to[a][c], chamber_to[b][c]));
                }
            }
        }
    }
    Ok(StarPoset { mask, cotypes, offsets, chamber_to, elements, covers: covers.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::index_ratio;

    fn field(p: u64, h: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, h).unwrap())
    }

    fn gcm(rows: Vec<Vec<i64>>) -> Gcm {
        Gcm::new(rows).unwrap()
    }

    #[test]
    fn lines_counts() {
        let a = gcm(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let r = residue_product_of_lines(&a, field(2, 1), 0b001).unwrap();
        assert_eq!((r.chamber_count(), r.types().len()), (3, 1));
        let r = residue_product_of_lines(&a, field(3, 1), 0b011).unwrap();
        assert_eq!(r.chamber_count(), 16);
        assert_eq!(r.residue_count(0b001), 4);
        let r = residue_product_of_lines(&a, field(2, 1), 0b111).unwrap();
        assert_eq!(r.chamber_count(), 27);
        assert!(r.problems(27).is_empty());
    }

    #[test]
    fn lines_reject_non_clique() {
        let a = gcm(vec![vec![2, -1], vec![-1, 2]]);
        assert!(residue_product_of_lines(&a, field(2, 1), 0b11).is_err());
    }

    #[test]
    fn plane_and_quadrangle_counts() {
        for (q, a2, b2) in [(2u64, 21, 45), (3, 52, 160), (4, 105, 425)] {
            let f = FieldCtx::new(if q == 4 { 2 } else { q }, if q == 4 { 2 } else { 1 }).unwrap();
            let r = residue_a2(&f);
            assert!(r.problems(a2).is_empty(), "{:?}", r.problems(a2));
            let r = residue_b2(&f);
            assert!(r.problems(b2).is_empty(), "{:?}", r.problems(b2));
        }
    }

    #[test]
    fn every_point_on_q_plus_one_lines() {
        let f = FieldCtx::new(3, 1).unwrap();
        let r = residue_a2(&f);
        let mut per_point: HashMap<usize, usize> = HashMap::new();
        for c in 0..r.chamber_count() {
            *per_point.entry(r.panel_of(1, c)).or_default() += 1;
        }
        assert_eq!(per_point.len(), 13);
        assert!(per_point.values().all(|&n| n == 4));
    }

    #[test]
    fn star_poset_counts() {
        let f = field(2, 1);
        let a = gcm(vec![vec![2, 0], vec![0, 2]]);
        let s = star_poset(&residue_product_of_lines(&a, f.clone(), 0b01).unwrap()).unwrap();
        assert_eq!((s.count_of(0b01), s.count_of(0)), (1, 3));
        let s = star_poset(&residue_a2(&f)).unwrap();
        assert_eq!([s.count_of(0b11), s.count_of(0b01), s.count_of(0b10), s.count_of(0)], [1, 7, 7, 21]);
        let s = star_poset(&residue_b2(&f)).unwrap();
        assert_eq!([s.count_of(0b11), s.count_of(0b01), s.count_of(0b10), s.count_of(0)], [1, 15, 15, 45]);
    }

    #[test]
    fn star_poset_matches_index_ratios() {
        for rows in [vec![vec![2, -1], vec![-1, 2]], vec![vec![2, -2], vec![-1, 2]], vec![vec![2, 0], vec![0, 2]]] {
            let a = gcm(rows);
            let m = a.coxeter_matrix();
            for (p, h) in [(2, 1), (3, 1), (2, 2)] {
                let f = field(p, h);
                let r = residue_for(&a, f.clone(), 0b11).unwrap();
                let s = star_poset(&r).unwrap();
                for &t in s.cotypes() {
                    let want = index_ratio(&m, 0b11, t, f.q() as u64).unwrap();
                    assert_eq!(s.count_of(t) as u128, want);
                }
                // every chamber lies below one element of each cotype
                for &(x, y) in s.relations() {
                    assert!(s.elements()[x].0 & s.elements()[y].0 == s.elements()[x].0);
                }
            }
        }
    }

    #[test]
    fn counting_only_for_hexagons() {
        let a = gcm(vec![vec![2, -3], vec![-1, 2]]);
        let r = residue_for(&a, field(2, 1), 0b11).unwrap();
        assert_eq!(r.kind(), ResidueKind::CountingOnly);
        assert_eq!(r.chamber_count(), 189);
        assert!(star_poset(&r).is_err());
    }

    #[test]
    fn levi_group_preserves_panels() {
        let a = gcm(vec![vec![2, 0, -2], vec![0, 2, -2], vec![-2, -2, 2]]);
        let f = field(3, 1);
        let mut r = residue_product_of_lines(&a, f.clone(), 0b011).unwrap();
        let model = LeviModel::new(f.clone(), a.clone(), 0b011).unwrap();
        let mut gens = Vec::new();
        for i in [0, 1] {
            gens.extend(crate::algebra::ai_generators(crate::algebra::AiCase::Q3Mod4, &model, i).unwrap());
        }
        let g = model.generate(&gens, 1 << 20).unwrap();
        r.attach_group(g).unwrap();
        let g = r.group().unwrap();
        assert_eq!(g.order() / g.point_stabilizer(0).order(), r.chamber_count());
    }
}
