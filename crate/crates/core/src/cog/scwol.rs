use std::collections::BTreeMap;

use crate::coxeter::{subset_label, SphericalLattice, Subset};

/// A finite small category without loops. Vertices carry a type (a subset of
/// the generators); an edge `a` runs from `i(a)` to `t(a)`, and a composable
/// pair `(a, b)` (with `i(a) = t(b)`) has composite `ab` from `i(b)` to `t(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scwol {
    types: Vec<Subset>,
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    composition: BTreeMap<(usize, usize), usize>,
}

impl Scwol {
    pub fn new(types: Vec<Subset>, names: Vec<String>) -> Self {
        assert_eq!(types.len(), names.len());
        Scwol { types, names, edges: Vec::new(), composition: BTreeMap::new() }
    }

    pub fn add_vertex(&mut self, ty: Subset, name: String) -> usize {
        self.types.push(ty);
        self.names.push(name);
        self.types.len() - 1
    }

    pub fn add_edge(&mut self, i: usize, t: usize) -> usize {
        self.edges.push((i, t));
        self.edges.len() - 1
    }

    pub fn set_composite(&mut self, a: usize, b: usize, ab: usize) {
        self.composition.insert((a, b), ab);
    }

    /// Removes an edge together with every composition entry mentioning it;
    /// later edges are renumbered down by one.
    pub fn remove_edge(&mut self, e: usize) {
        self.edges.remove(e);
        let shift = |x: usize| if x > e { x - 1 } else { x };
        self.composition = std::mem::take(&mut self.composition)
            .into_iter()
            .filter(|&((a, b), ab)| a != e && b != e && ab != e)
            .map(|((a, b), ab)| ((shift(a), shift(b)), shift(ab)))
            .collect();
    }

    pub fn vertex_count(&self) -> usize {
        self.types.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_type(&self, v: usize) -> Subset {
        self.types[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn edge(&self, a: usize) -> (usize, usize) {
        self.edges[a]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn initial(&self, a: usize) -> usize {
        self.edges[a].0
    }

    pub fn terminal(&self, a: usize) -> usize {
        self.edges[a].1
    }

    pub fn composite(&self, a: usize, b: usize) -> Option<usize> {
        self.composition.get(&(a, b)).copied()
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.composition.iter().map(|(&k, &v)| (k, v))
    }

    pub fn composable_count(&self) -> usize {
        self.composition.len()
    }

    pub fn edges_from(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&a| self.edges[a].0 == v).collect()
    }

    pub fn edges_into(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&a| self.edges[a].1 == v).collect()
    }

    /// Violations of the scwol axioms; empty when valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.types.len();
        for (a, &(i, t)) in self.edges.iter().enumerate() {
            if i >= nv || t >= nv {
                out.push(format!("edge {a} has an endpoint outside the vertex set"));
                continue;
            }
            if i == t {
                out.push(format!("edge {a} is a loop at vertex {i}"));
            }
            let (ti, tt) = (self.types[i], self.types[t]);
            if ti & tt != ti || ti == tt {
                out.push(format!("edge {a} does not increase type: {} -> {}", subset_label(ti), subset_label(tt)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let ne = self.edges.len();
        for (&(a, b), &ab) in &self.composition {
            if a >= ne || b >= ne || ab >= ne {
                out.push(format!("composite of ({a}, {b}) refers to a missing edge"));
                continue;
            }
            if self.edges[a].0 != self.edges[b].1 {
                out.push(format!("edges ({a}, {b}) are not composable"));
            }
            if self.edges[ab] != (self.edges[b].0, self.edges[a].1) {
                out.push(format!("composite {ab} of ({a}, {b}) has the wrong endpoints"));
            }
        }
        for a in 0..ne {
            for b in 0..ne {
                if self.edges[a].0 == self.edges[b].1 && !self.composition.contains_key(&(a, b)) {
                    out.push(format!("composable pair ({a}, {b}) has no composite"));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (&(a, b), &ab) in &self.composition {
            for c in 0..ne {
                if self.edges[b].0 == self.edges[c].1 {
                    let bc = self.composition[&(b, c)];
                    if self.composition.get(&(ab, c)) != self.composition.get(&(a, bc)) {
                        out.push(format!("composition is not associative on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        out
    }

    /// Graphviz rendering; vertex labels are the names, edges point from `i(a)` to `t(a)`.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut s = format!("digraph {graph_name} {{\n");
        for (v, name) in self.names.iter().enumerate() {
            s.push_str(&format!("  v{v} [label=\"{name}\"];\n"));
        }
        for &(i, t) in &self.edges {
            s.push_str(&format!("  v{i} -> v{t};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The scwol of the chamber: one vertex per spherical subset, one edge per
/// strict containment, composites by transitivity.
pub fn build_chamber_scwol(lattice: &SphericalLattice) -> Scwol {
    let subsets = lattice.subsets();
    let mut s = Scwol::new(subsets.to_vec(), subsets.iter().map(|&j| subset_label(j)).collect());
    let mut edge_of = BTreeMap::new();
    for (ti, &big) in subsets.iter().enumerate() {
        for (ii, &small) in subsets.iter().enumerate() {
            if small != big && small & big == small {
                edge_of.insert((ii, ti), s.add_edge(ii, ti));
            }
        }
    }
    let edges = s.edges.clone();
    for (a, &(ai, at)) in edges.iter().enumerate() {
        for (b, &(bi, bt)) in edges.iter().enumerate() {
            if ai == bt {
                s.set_composite(a, b, edge_of[&(bi, at)]);
            }
        }
    }
    s
}

/// Nondegeneracy of a vertex/edge map `f` from `src` to `dst`: a functor that is
/// bijective from the edges leaving each vertex onto the edges leaving its image.
pub fn morphism_problems(src: &Scwol, dst: &Scwol, vmap: &[usize], emap: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    if vmap.len() != src.vertex_count() || emap.len() != src.edge_count() {
        out.push("vertex or edge map has the wrong length".into());
        return out;
    }
    for (a, &(i, t)) in src.edges.iter().enumerate() {
        let b = emap[a];
        if b >= dst.edge_count() || dst.edges[b] != (vmap[i], vmap[t]) {
            out.push(format!("edge {a} is not mapped compatibly with its endpoints"));
        }
    }
    for (&(a, b), &ab) in &src.composition {
        if dst.composite(emap[a], emap[b]) != Some(emap[ab]) {
            out.push(format!("composite of ({a}, {b}) is not preserved"));
        }
    }
    for v in 0..src.vertex_count() {
        let mut images: Vec<usize> = src.edges_from(v).iter().map(|&a| emap[a]).collect();
        images.sort_unstable();
        let expected = dst.edges_from(vmap[v]);
        if images != expected {
            out.push(format!(
                "edges leaving vertex {} do not map bijectively onto those leaving {}",
                src.name(v),
                dst.name(vmap[v])
            ));
        }
    }
    out
}
