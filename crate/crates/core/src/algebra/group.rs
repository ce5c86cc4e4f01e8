//! Finite groups given by generating permutations, stored as full element lists.
//!
//! The domain is `0..degree`. The first `points` entries are the geometric
//! points (a projective line, a residue's chambers); the rest, when present,
//! are auxiliary points added so that the action is faithful. Orbit and
//! stabiliser computations refer to the geometric points.

use std::collections::{HashMap, HashSet, VecDeque};

use super::levi::LeviElement;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Perm {
    /// Panics if `images` is not a permutation of `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!((x as usize) < images.len() && !seen[x as usize], "not a permutation");
            seen[x as usize] = true;
        }
        Perm(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct FiniteActionGroup {
    degree: usize,
    points: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    labels: Option<Vec<LeviElement>>,
}

/// Elements, their labels, and the index of each element.
type Closure<L> = (Vec<Perm>, Vec<L>, HashMap<Perm, usize>);

fn bfs_closure<L: Clone>(
    degree: usize,
    gens: &[(Perm, L)],
    identity: L,
    mul: &dyn Fn(&L, &L) -> L,
    cap: usize,
) -> Result<Closure<L>> {
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut labels = vec![identity];
    let mut lookup = HashMap::new();
    lookup.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gl) in gens {
            let x = g.compose(&elements[i]);
            if !lookup.contains_key(&x) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                let label = mul(gl, &labels[i]);
                lookup.insert(x.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(x);
                labels.push(label);
            }
        }
    }
    Ok((elements, labels, lookup))
}

impl FiniteActionGroup {
    pub fn generate(degree: usize, points: usize, gens: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Invalid("generator degree mismatch".into()));
            }
        }
        let paired: Vec<(Perm, ())> = gens.iter().cloned().map(|g| (g, ())).collect();
        let (elements, _, lookup) = bfs_closure(degree, &paired, (), &|_, _| (), cap)?;
        Ok(FiniteActionGroup { degree, points, generators: gens, elements, lookup, labels: None })
    }

    /// Closure of labelled generators; labels of new elements are products of
    /// generator labels along the breadth-first search.
    pub fn generate_labeled(
        degree: usize,
        points: usize,
        gens: Vec<(Perm, LeviElement)>,
        identity: LeviElement,
        mul: &dyn Fn(&LeviElement, &LeviElement) -> LeviElement,
        cap: usize,
    ) -> Result<Self> {
        let (elements, labels, lookup) = bfs_closure(degree, &gens, identity, mul, cap)?;
        Ok(FiniteActionGroup {
            degree,
            points,
            generators: gens.into_iter().map(|(g, _)| g).collect(),
            elements,
            lookup,
            labels: Some(labels),
        })
    }

    pub fn trivial(degree: usize, points: usize, identity_label: Option<LeviElement>) -> Self {
        let id = Perm::identity(degree);
        let mut lookup = HashMap::new();
        lookup.insert(id.clone(), 0);
        FiniteActionGroup {
            degree,
            points,
            generators: Vec::new(),
            elements: vec![id],
            lookup,
            labels: identity_label.map(|l| vec![l]),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn labels(&self) -> Option<&[LeviElement]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<&LeviElement> {
        self.labels.as_ref().map(|l| &l[i])
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let x = self.elements[i].compose(&self.elements[j]);
        self.lookup[&x]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.lookup[&self.elements[i].inverse()]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while !self.elements[x].is_identity() {
            x = self.mul_idx(x, i);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|i| self.element_order(i) == n)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut out = vec![x];
        let mut k = 0;
        while k < out.len() {
            let y = out[k];
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbits on the geometric points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.orbits_on(&(0..self.points).collect::<Vec<_>>())
    }

    /// Orbits on an invariant subset of the domain.
    pub fn orbits_on(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for &x in set {
            if !done[x] {
                let o = self.orbit(x);
                for &y in &o {
                    done[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.points > 0 && self.orbit(0).iter().filter(|&&x| x < self.points).count() == self.points
    }

    pub fn fixed_points(&self, i: usize) -> Vec<usize> {
        (0..self.points).filter(|&x| self.elements[i].apply(x) == x).collect()
    }

    /// Subgroup of the elements satisfying `keep`; the predicate must select a subgroup.
    pub fn filter_subgroup(&self, keep: impl Fn(&Perm) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.order()).filter(|&i| keep(&self.elements[i])).collect();
        self.subgroup_from_indices(&idx)
    }

    /// Subgroup given by element indices (which must form a subgroup).
    pub fn subgroup_from_indices(&self, idx: &[usize]) -> Self {
        let elements: Vec<Perm> = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let labels = self.labels.as_ref().map(|l| idx.iter().map(|&i| l[i].clone()).collect());
        let lookup: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let generators = greedy_generators(self.degree, &elements);
        FiniteActionGroup { degree: self.degree, points: self.points, generators, elements, lookup, labels }
    }

    pub fn point_stabilizer(&self, x: usize) -> Self {
        self.filter_subgroup(|g| g.apply(x) == x)
    }

    /// Elements acting trivially on the geometric points.
    pub fn kernel_on_points(&self) -> Self {
        let n = self.points;
        self.filter_subgroup(|g| (0..n).all(|x| g.apply(x) == x))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Invalid("groups act on different domains".into()));
        }
        Ok(self.filter_subgroup(|g| other.contains(g)))
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn index_of_subgroup(&self, sub: &Self) -> Result<usize> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("not contained in the ambient group".into()));
        }
        Ok(self.order() / sub.order())
    }

    /// Left coset representatives `gH`, the first element of each coset in
    /// element order. Returns element indices.
    pub fn coset_transversal(&self, sub: &Self) -> Result<Vec<usize>> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("not contained in the ambient group".into()));
        }
        let mut marked = vec![false; self.order()];
        let mut reps = Vec::new();
        for i in 0..self.order() {
            if marked[i] {
                continue;
            }
            reps.push(i);
            for h in sub.elements() {
                marked[self.lookup[&self.elements[i].compose(h)]] = true;
            }
        }
        Ok(reps)
    }

    pub fn same_elements(&self, other: &Self) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }
}

/// A generating set chosen greedily in element order.
pub fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut have: HashSet<Perm> = HashSet::new();
    have.insert(Perm::identity(degree));
    for x in elements {
        if have.contains(x) {
            continue;
        }
        gens.push(x.clone());
        // extend closure
        let mut frontier: Vec<Perm> = have.iter().cloned().collect();
        frontier.sort();
        let mut queue: VecDeque<Perm> = frontier.into();
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = g.compose(&y);
                if have.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

/// Whether `set` is a left transversal of `sub` in `group`: one element per coset.
pub fn is_transversal(group: &FiniteActionGroup, sub: &FiniteActionGroup, set: &[Perm]) -> bool {
    if set.iter().any(|x| !group.contains(x)) {
        return false;
    }
    let Ok(index) = group.index_of_subgroup(sub) else { return false };
    if set.len() != index {
        return false;
    }
    let mut seen = HashSet::with_capacity(group.order());
    for x in set {
        for u in sub.elements() {
            if !seen.insert(x.compose(u)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> FiniteActionGroup {
        FiniteActionGroup::generate(3, 3, vec![Perm::new(vec![1, 0, 2]), Perm::new(vec![1, 2, 0])], DEFAULT_ORDER_CAP)
            .unwrap()
    }

    #[test]
    fn closure_and_orbits() {
        let g = sym3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
        let s = g.point_stabilizer(0);
        assert_eq!(s.order(), 2);
        assert_eq!(g.index_of_subgroup(&s).unwrap(), 3);
        let t = g.coset_transversal(&s).unwrap();
        assert_eq!(t.len(), 3);
        let reps: Vec<Perm> = t.iter().map(|&i| g.element(i).clone()).collect();
        assert!(is_transversal(&g, &s, &reps));
    }

    #[test]
    fn cap_is_enforced() {
        let err =
            FiniteActionGroup::generate(3, 3, vec![Perm::new(vec![1, 0, 2]), Perm::new(vec![1, 2, 0])], 5).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 5 });
    }

    #[test]
    fn not_a_subgroup() {
        let g = FiniteActionGroup::generate(3, 3, vec![Perm::new(vec![1, 0, 2])], 10).unwrap();
        let h = FiniteActionGroup::generate(3, 3, vec![Perm::new(vec![0, 2, 1])], 10).unwrap();
        assert!(g.index_of_subgroup(&h).is_err());
        assert!(g.coset_transversal(&h).is_err());
        assert_eq!(g.intersection(&h).unwrap().order(), 1);
    }

    #[test]
    fn greedy_generators_generate() {
        let g = sym3();
        let gens = greedy_generators(3, g.elements());
        let h = FiniteActionGroup::generate(3, 3, gens, 100).unwrap();
        assert_eq!(h.order(), 6);
    }
}
