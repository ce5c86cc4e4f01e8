use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use super::complex::ComplexOfGroups;
use super::scwol::{morphism_problems, Scwol};

/// The target complex of groups `H(Z)`, accessed only through its local
/// groups' multiplication, the edge monomorphisms and the coset sets
/// `H_{t(b)} / theta_b(H_{i(b)})`.
pub trait TargetComplex {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn scwol(&self) -> &Scwol;
    fn identity(&self, v: usize) -> Self::Elem;
    fn mul(&self, v: usize, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, v: usize, x: &Self::Elem) -> Self::Elem;
    /// `theta_b : H_{i(b)} -> H_{t(b)}`.
    fn theta(&self, b: usize, x: &Self::Elem) -> Self::Elem;
    /// `h_{b,c}`; identity for simple complexes.
    fn twist(&self, b: usize, _c: usize) -> Self::Elem {
        self.identity(self.scwol().terminal(b))
    }
    /// Label in `0..coset_count(b)` of the coset `x theta_b(H_{i(b)})`.
    fn coset_of(&self, b: usize, x: &Self::Elem) -> usize;
    fn coset_count(&self, b: usize) -> usize;
}

/// A morphism `Phi` from a finite complex of groups to a target.
#[derive(Debug, Clone)]
pub struct CogMorphism<E> {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    /// `local_maps[v][g]`: image of element `g` of `G_v` in `H_{f(v)}`.
    pub local_maps: Vec<Vec<E>>,
    /// `phi(a)` in `H_{t(f(a))}`.
    pub edge_elements: Vec<E>,
}

impl<E: Clone> CogMorphism<E> {
    /// The morphism restricted to a source complex with edge `a` deleted.
    pub fn without_edge(&self, a: usize) -> Self {
        let mut m = self.clone();
        m.edge_map.remove(a);
        m.edge_elements.remove(a);
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// Outcome of one coset map `Phi_{sigma/b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub sigma: usize,
    pub b: usize,
    /// Number of edges `a` with `f(a) = b` and `t(a) = sigma`.
    pub fibres: usize,
    pub domain: usize,
    pub image: usize,
    pub target_index: usize,
    pub bijective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The complex of groups or the scwol map violates an axiom.
    Structure(String),
    /// Two elements of `G_sigma` with the same image.
    LocalNotInjective {
        sigma: usize,
        g: usize,
        h: usize,
    },
    LocalNotHomomorphism {
        sigma: usize,
    },
    /// The square `phi_{t(a)} psi_a = ad(phi(a)) theta_{f(a)} phi_{i(a)}` fails at `g`.
    Square {
        a: usize,
        g: usize,
    },
    /// The compatibility equation fails on the composable pair `(a, b)`.
    Compatibility {
        a: usize,
        b: usize,
    },
    /// Two cosets (edge, representative) with the same image.
    Collision {
        sigma: usize,
        b: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    NotSurjective {
        sigma: usize,
        b: usize,
        image: usize,
        target_index: usize,
    },
}

impl Witness {
    pub fn describe(&self, src: &Scwol, dst: &Scwol) -> String {
        let e = |s: &Scwol, a: usize| format!("{}->{}", s.name(s.initial(a)), s.name(s.terminal(a)));
        match self {
            Witness::Structure(s) => format!("structure: {s}"),
            Witness::LocalNotInjective { sigma, g, h } => {
                format!("local map at {} identifies elements {g} and {h}", src.name(*sigma))
            }
            Witness::LocalNotHomomorphism { sigma } => {
                format!("local map at {} is not a homomorphism", src.name(*sigma))
            }
            Witness::Square { a, g } => format!("square fails on edge {} at element {g}", e(src, *a)),
            Witness::Compatibility { a, b } => {
                format!("compatibility fails on ({}, {})", e(src, *a), e(src, *b))
            }
            Witness::Collision { sigma, b, first, second } => format!(
                "collision at ({}, {}): coset {} of edge {} and coset {} of edge {}",
                src.name(*sigma),
                e(dst, *b),
                first.1,
                e(src, first.0),
                second.1,
                e(src, second.0)
            ),
            Witness::NotSurjective { sigma, b, image, target_index } => format!(
                "not surjective at ({}, {}): image {image} < index {target_index}",
                src.name(*sigma),
                e(dst, *b)
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoveringCertificate {
    pub verdict: Verdict,
    pub tallies: Vec<CheckTally>,
    pub witnesses: Vec<Witness>,
}

impl CoveringCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Checks that `phi` is a morphism and a covering from `src` to `dst`.
///
/// Structural problems (axioms of the complex, of the scwol map, of the
/// morphism) are recorded as witnesses; the coset maps are still evaluated
/// when the morphism equations hold, so tallies remain informative.
pub fn verify_covering<T: TargetComplex>(
    src: &ComplexOfGroups,
    dst: &T,
    phi: &CogMorphism<T::Elem>,
) -> CoveringCertificate {
    let mut witnesses = Vec::new();
    let ys = src.scwol();
    let zs = dst.scwol();
    let fail = |witnesses| CoveringCertificate { verdict: Verdict::Fail, tallies: Vec::new(), witnesses };
    let shape_ok = phi.vertex_map.len() == ys.vertex_count()
        && phi.edge_map.len() == ys.edge_count()
        && phi.local_maps.len() == ys.vertex_count()
        && phi.edge_elements.len() == ys.edge_count()
        && phi.vertex_map.iter().all(|&v| v < zs.vertex_count())
        && phi.edge_map.iter().enumerate().all(|(a, &b)| {
            let (i, t) = ys.edge(a);
            b < zs.edge_count() && zs.edge(b) == (phi.vertex_map[i], phi.vertex_map[t])
        })
        && (0..ys.vertex_count()).all(|v| phi.local_maps[v].len() == src.group(v).order());
    if !shape_ok {
        witnesses.push(Witness::Structure("morphism data does not match the scwols".into()));
        return fail(witnesses);
    }
    for p in src.problems() {
        witnesses.push(Witness::Structure(p));
    }
    for p in morphism_problems(ys, zs, &phi.vertex_map, &phi.edge_map) {
        witnesses.push(Witness::Structure(p));
    }

    // local maps: injective homomorphisms
    for v in 0..ys.vertex_count() {
        let g = src.group(v);
        let map = &phi.local_maps[v];
        let mut seen: HashMap<&T::Elem, usize> = HashMap::new();
        for (x, img) in map.iter().enumerate() {
            if let Some(&y) = seen.get(img) {
                witnesses.push(Witness::LocalNotInjective { sigma: v, g: y, h: x });
                break;
            }
            seen.insert(img, x);
        }
        let fv = phi.vertex_map[v];
        'hom: for s in g.generators() {
            let s = g.index_of(s).expect("generator in group");
            for x in 0..g.order() {
                if map[g.mul_idx(s, x)] != dst.mul(fv, &map[s], &map[x]) {
                    witnesses.push(Witness::LocalNotHomomorphism { sigma: v });
                    break 'hom;
                }
            }
        }
    }

    // the commuting square on every edge
    for a in 0..ys.edge_count() {
        let (i, t) = ys.edge(a);
        let fa = phi.edge_map[a];
        let ft = phi.vertex_map[t];
        let pa = &phi.edge_elements[a];
        let pa_inv = dst.inv(ft, pa);
        for g in 0..src.group(i).order() {
            let lhs = &phi.local_maps[t][src.psi(a, g)];
            let inner = dst.theta(fa, &phi.local_maps[i][g]);
            let rhs = dst.mul(ft, &dst.mul(ft, pa, &inner), &pa_inv);
            if *lhs != rhs {
                witnesses.push(Witness::Square { a, g });
                break;
            }
        }
    }
    // phi_{t(a)}(g_{a,b}) phi(ab) = phi(a) theta_{f(a)}(phi(b)) h_{f(a),f(b)}
    for ((a, b), ab) in ys.composable_pairs() {
        let ft = phi.vertex_map[ys.terminal(a)];
        let (fa, fb) = (phi.edge_map[a], phi.edge_map[b]);
        let lhs = dst.mul(ft, &phi.local_maps[ys.terminal(a)][src.twist(a, b)], &phi.edge_elements[ab]);
        let rhs =
            dst.mul(ft, &dst.mul(ft, &phi.edge_elements[a], &dst.theta(fa, &phi.edge_elements[b])), &dst.twist(fa, fb));
        if lhs != rhs {
            witnesses.push(Witness::Compatibility { a, b });
        }
    }

    // coset maps Phi_{sigma/b}
    let mut tallies = Vec::new();
    for sigma in 0..ys.vertex_count() {
        let fs = phi.vertex_map[sigma];
        let g = src.group(sigma);
        for b in zs.edges_into(fs) {
            let fibre: Vec<usize> = ys.edges_into(sigma).into_iter().filter(|&a| phi.edge_map[a] == b).collect();
            let mut images: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            let mut domain = 0;
            let mut injective = true;
            for &a in &fibre {
                let sub = src.image_indices(a);
                let mut covered = vec![false; g.order()];
                for x in 0..g.order() {
                    if covered[x] {
                        continue;
                    }
                    for &h in &sub {
                        covered[g.mul_idx(x, h)] = true;
                    }
                    domain += 1;
                    let c = dst.coset_of(b, &dst.mul(fs, &phi.local_maps[sigma][x], &phi.edge_elements[a]));
                    if let Some(&first) = images.get(&c) {
                        if injective {
                            witnesses.push(Witness::Collision { sigma, b, first, second: (a, x) });
                        }
                        injective = false;
                    } else {
                        images.insert(c, (a, x));
                    }
                }
            }
            let target_index = dst.coset_count(b);
            let image = images.len();
            if image < target_index {
                witnesses.push(Witness::NotSurjective { sigma, b, image, target_index });
            }
            tallies.push(CheckTally {
                sigma,
                b,
                fibres: fibre.len(),
                domain,
                image,
                target_index,
                bijective: injective && image == target_index,
            });
        }
    }
    let verdict =
        if witnesses.is_empty() && tallies.iter().all(|t| t.bijective) { Verdict::Pass } else { Verdict::Fail };
    CoveringCertificate { verdict, tallies, witnesses }
}

/// A target given by a finite complex of groups (elements are indices).
pub struct FiniteTarget<'a> {
    pub complex: &'a ComplexOfGroups,
    cosets: Vec<Vec<usize>>,
}

impl<'a> FiniteTarget<'a> {
    pub fn new(complex: &'a ComplexOfGroups) -> Self {
        let s = complex.scwol();
        let cosets = (0..s.edge_count())
            .map(|b| {
                let g = complex.group(s.terminal(b));
                let sub = complex.image_indices(b);
                let mut label = vec![usize::MAX; g.order()];
                let mut next = 0;
                for x in 0..g.order() {
                    if label[x] == usize::MAX {
                        for &h in &sub {
                            label[g.mul_idx(x, h)] = next;
                        }
                        next += 1;
                    }
                }
                label
            })
            .collect();
        FiniteTarget { complex, cosets }
    }
}

impl TargetComplex for FiniteTarget<'_> {
    type Elem = usize;

    fn scwol(&self) -> &Scwol {
        self.complex.scwol()
    }

    fn identity(&self, _v: usize) -> usize {
        0
    }

    fn mul(&self, v: usize, x: &usize, y: &usize) -> usize {
        self.complex.group(v).mul_idx(*x, *y)
    }

    fn inv(&self, v: usize, x: &usize) -> usize {
        self.complex.group(v).inv_idx(*x)
    }

    fn theta(&self, b: usize, x: &usize) -> usize {
        self.complex.psi(b, *x)
    }

    fn twist(&self, b: usize, c: usize) -> usize {
        self.complex.twist(b, c)
    }

    fn coset_of(&self, b: usize, x: &usize) -> usize {
        self.cosets[b][*x]
    }

    fn coset_count(&self, b: usize) -> usize {
        self.cosets[b].iter().max().map_or(0, |m| m + 1)
    }
}

/// The identity morphism of a finite complex of groups.
pub fn identity_morphism(c: &ComplexOfGroups) -> CogMorphism<usize> {
    let s = c.scwol();
    CogMorphism {
        vertex_map: (0..s.vertex_count()).collect(),
        edge_map: (0..s.edge_count()).collect(),
        local_maps: c.groups().iter().map(|g| (0..g.order()).collect()).collect(),
        edge_elements: vec![0; s.edge_count()],
    }
}
