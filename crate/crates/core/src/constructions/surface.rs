use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::ra::{choose_g, one_based};
use super::require;
use crate::algebra::{ai_generators, AiCase, FieldCtx, FiniteActionGroup, LeviElement};
use crate::cog::{
    verify_covering, CogMorphism, ComplexOfGroups, CoveringCertificate, Scwol, TargetComplex, TargetResidueFamily,
};
use crate::coxeter::{subset_label, Gcm, Subset};
use crate::error::{Error, Result};
use crate::intlinalg::in_integer_column_span;

/// A closed edge path of constant type. `edges` lists `(edge, sign)` with
/// sign `+1` when the edge is traversed from its tail to its head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    pub ty: usize,
    pub edges: Vec<(usize, i64)>,
}

/// A closed orientable surface tiled by `F` right-angled `n`-gons with
/// type-preserving side pairings.
///
/// Faces `0..F/2` are positively oriented ("black"), faces `F/2..F` negatively
/// ("white"); every side pairing joins a black face to a white one. Side `c`
/// of a face runs from corner `c` to corner `c+1`, and gluing along side `c`
/// identifies corners with the same label. Edge `c * F/2 + b` is side `c` of
/// black face `b`, oriented as that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    n: usize,
    half: usize,
    /// `pi[c][b]`: white face (in `0..F/2`) glued to black face `b` along side `c`.
    pi: Vec<Vec<usize>>,
    /// `corner_vertex[face][c]`: vertex at corner `c` of `face`.
    corner_vertex: Vec<Vec<usize>>,
    vertices: usize,
    geodesics: Vec<Geodesic>,
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

impl SurfaceComplex {
    /// Builds the surface from the side pairings `pi[c]` (black to white).
    pub fn from_pairings(n: usize, pi: Vec<Vec<usize>>) -> Result<Self> {
        let half = pi.first().map_or(0, |p| p.len());
        if pi.len() != n || n < 3 || half == 0 {
            return Err(Error::Invalid("need one pairing per side type".into()));
        }
        for p in &pi {
            let mut seen = vec![false; half];
            for &x in p {
                if x >= half || seen[x] {
                    return Err(Error::Invalid("side pairing is not a bijection".into()));
                }
                seen[x] = true;
            }
        }
        let faces = 2 * half;
        let mut parent: Vec<usize> = (0..faces * n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (x, y) = (find(p, a), find(p, b));
            if x != y {
                p[x.max(y)] = x.min(y);
            }
        };
        for c in 0..n {
            for b in 0..half {
                let w = half + pi[c][b];
                union(&mut parent, b * n + c, w * n + c);
                union(&mut parent, b * n + (c + 1) % n, w * n + (c + 1) % n);
            }
        }
        let mut ids = HashMap::new();
        let mut corner_vertex = vec![vec![0; n]; faces];
        for face in 0..faces {
            for c in 0..n {
                let r = find(&mut parent, face * n + c);
                let next = ids.len();
                corner_vertex[face][c] = *ids.entry(r).or_insert(next);
            }
        }
        let vertices = ids.len();
        let mut s = SurfaceComplex { n, half, pi, corner_vertex, vertices, geodesics: Vec::new() };
        s.geodesics = s.trace_geodesics();
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn face_count(&self) -> usize {
        2 * self.half
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.half
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> i64 {
        1 - self.euler_characteristic() / 2
    }

    pub fn pairings(&self) -> &[Vec<usize>] {
        &self.pi
    }

    pub fn geodesics(&self) -> &[Geodesic] {
        &self.geodesics
    }

    pub fn edge(&self, c: usize, black: usize) -> usize {
        c * self.half + black
    }

    /// `(type, black face)` of an edge.
    pub fn edge_side(&self, e: usize) -> (usize, usize) {
        (e / self.half, e % self.half)
    }

    pub fn corner_vertex(&self, face: usize, c: usize) -> usize {
        self.corner_vertex[face][c % self.n]
    }

    /// Black face across side `c` of white face `w` (white faces numbered from `F/2`).
    pub fn black_across(&self, c: usize, w: usize) -> usize {
        self.pi[c].iter().position(|&x| x + self.half == w).expect("pairing is a bijection")
    }

    /// Edge on side `c` of any face.
    pub fn side_edge(&self, face: usize, c: usize) -> usize {
        let c = c % self.n;
        if face < self.half {
            self.edge(c, face)
        } else {
            self.edge(c, self.black_across(c, face))
        }
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (c, b) = self.edge_side(e);
        (self.corner_vertex(b, c), self.corner_vertex(b, c + 1))
    }

    /// `rho_c = pi_{c-1}^{-1} pi_c`: the black face opposite `b` at its corner `c`.
    fn rho(&self, c: usize) -> Vec<usize> {
        let prev = invert(&self.pi[(c + self.n - 1) % self.n]);
        self.pi[c % self.n].iter().map(|&w| prev[w]).collect()
    }

    fn trace_geodesics(&self) -> Vec<Geodesic> {
        let mut out = Vec::new();
        for c in 0..self.n {
            let at_head = self.rho(c + 1);
            let at_tail = self.rho(c);
            let mut used = vec![false; self.half];
            for start in 0..self.half {
                if used[start] {
                    continue;
                }
                let mut edges = Vec::new();
                let mut b = start;
                loop {
                    used[b] = true;
                    edges.push((self.edge(c, b), 1));
                    let back = at_head[b];
                    used[back] = true;
                    edges.push((self.edge(c, back), -1));
                    b = at_tail[back];
                    if b == start {
                        break;
                    }
                }
                out.push(Geodesic { ty: c, edges });
            }
        }
        out
    }

    /// Integer boundary matrix from 2-chains to 1-chains (rows are edges).
    pub fn boundary2(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.face_count()]; self.edge_count()];
        for face in 0..self.face_count() {
            let sign = if face < self.half { 1 } else { -1 };
            for c in 0..self.n {
                m[self.side_edge(face, c)][face] += sign;
            }
        }
        m
    }

    pub fn boundary1(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.vertices];
        for (e, &x) in chain.iter().enumerate() {
            let (t, h) = self.edge_endpoints(e);
            out[h] += x;
            out[t] -= x;
        }
        out
    }

    pub fn geodesic_chain(&self, k: usize, sign: i64) -> Vec<i64> {
        let mut v = vec![0i64; self.edge_count()];
        for &(e, s) in &self.geodesics[k].edges {
            v[e] += sign * s;
        }
        v
    }

    pub fn face_boundary(&self, face: usize) -> Vec<i64> {
        self.boundary2().iter().map(|row| row[face]).collect()
    }

    fn is_connected(&self) -> bool {
        let faces = self.face_count();
        let mut seen = vec![false; faces];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for c in 0..self.n {
                let y = if x < self.half { self.half + self.pi[c][x] } else { self.black_across(c, x) };
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Violations of the tessellation invariants; empty when valid.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut corners: Vec<Vec<usize>> = vec![Vec::new(); self.vertices];
        for face in 0..self.face_count() {
            for c in 0..self.n {
                corners[self.corner_vertex[face][c]].push(face);
            }
        }
        for (v, fs) in corners.iter().enumerate() {
            let mut d = fs.clone();
            d.sort_unstable();
            d.dedup();
            if fs.len() != 4 || d.len() != 4 {
                out.push(format!("vertex {v} has {} corners from {} faces", fs.len(), d.len()));
            }
        }
        if !self.is_connected() {
            out.push("surface is not connected".into());
        }
        let f = self.face_count() as i64;
        let expected = f * (4 - self.n as i64);
        if 4 * self.euler_characteristic() != expected {
            out.push(format!("Euler characteristic {} differs from F(1 - n/4)", self.euler_characteristic()));
        }
        let mut covered = vec![0usize; self.edge_count()];
        for g in &self.geodesics {
            for &(e, _) in &g.edges {
                covered[e] += 1;
                if self.edge_side(e).0 != g.ty {
                    out.push(format!("geodesic of type {} uses an edge of another type", g.ty + 1));
                }
            }
        }
        if covered.iter().any(|&c| c != 1) {
            out.push("geodesics do not partition the edges".into());
        }
        for v in 0..self.vertices {
            let types: Vec<usize> = self
                .geodesics
                .iter()
                .filter(|g| {
                    g.edges.iter().any(|&(e, _)| {
                        let (t, h) = self.edge_endpoints(e);
                        t == v || h == v
                    })
                })
                .map(|g| g.ty)
                .collect();
            let ok = types.len() == 2 && {
                let (a, b) = (types[0], types[1]);
                (a + 1) % self.n == b || (b + 1) % self.n == a
            };
            if !ok {
                out.push(format!("vertex {v} does not lie on two geodesics of adjacent types"));
            }
        }
        out
    }
}

/// Whether the sum of the given 1-cycles bounds an integer 2-chain.
pub fn is_nullhomologous(s: &SurfaceComplex, cycles: &[Vec<i64>]) -> Result<bool> {
    let mut sum = vec![0i64; s.edge_count()];
    for c in cycles {
        if c.len() != sum.len() {
            return Err(Error::Invalid("chain has the wrong length".into()));
        }
        if s.boundary1(c).iter().any(|&x| x != 0) {
            return Err(Error::Invalid("chain is not a cycle".into()));
        }
        for (x, y) in sum.iter_mut().zip(c) {
            *x = x.checked_add(*y).ok_or(Error::Overflow)?;
        }
    }
    in_integer_column_span(&s.boundary2(), &sum)
}

#[derive(Debug, Clone)]
pub enum SearchOutcome<T> {
    Found { surface: SurfaceComplex, data: T, nodes: u64, rejected: u64 },
    Exhausted { nodes: u64, rejected: u64 },
    Budget { nodes: u64, rejected: u64 },
}

/// Lexicographic enumeration of fixed-point-free involutions of `0..m`: the
/// digit `k` chooses the partner of the smallest unpaired point among the
/// remaining ones.
struct Involutions {
    m: usize,
    digits: Vec<usize>,
}

impl Involutions {
    fn new(m: usize) -> Self {
        Involutions { m, digits: vec![0; m / 2] }
    }

    fn current(&self) -> Vec<usize> {
        let mut free: Vec<usize> = (0..self.m).collect();
        let mut p = vec![0; self.m];
        for &d in &self.digits {
            let a = free.remove(0);
            let b = free.remove(d);
            p[a] = b;
            p[b] = a;
        }
        p
    }

    fn advance(&mut self) -> bool {
        for k in (0..self.digits.len()).rev() {
            let radix = self.m - 2 * k - 1;
            if self.digits[k] + 1 < radix {
                self.digits[k] += 1;
                for d in &mut self.digits[k + 1..] {
                    *d = 0;
                }
                return true;
            }
        }
        false
    }
}

fn is_fpf_involution(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| x != i && p[x] == i)
}

/// Depth-first search over type-preserving tessellations by `faces` copies of
/// the right-angled `n`-gon, in lexicographic order of `(rho_1, .., rho_{n-1})`
/// with `pi_0 = id`. Each candidate involution costs one node. `accept`
/// decides whether a valid tessellation is used or the search moves on.
pub fn search_tessellation<T>(
    n: usize,
    faces: usize,
    budget: u64,
    accept: &mut dyn FnMut(&SurfaceComplex, &mut u64) -> Result<Option<T>>,
) -> Result<SearchOutcome<T>> {
    if !faces.is_multiple_of(4) || faces == 0 || n < 3 {
        return Err(Error::Invalid("tessellation search needs n >= 3 and 4 | F".into()));
    }
    let m = faces / 2;
    let mut nodes = 0u64;
    let mut rejected = 0u64;
    let mut iters: Vec<Involutions> = (1..n).map(|_| Involutions::new(m)).collect();
    let mut pis: Vec<Vec<usize>> = vec![(0..m).collect()];
    let mut level = 0;
    loop {
        nodes += 1;
        if nodes > budget {
            return Ok(SearchOutcome::Budget { nodes: budget, rejected });
        }
        let rho = iters[level].current();
        let prev = &pis[level];
        let pi: Vec<usize> = rho.iter().map(|&x| prev[x]).collect();
        let mut descend = false;
        if level + 1 < n - 1 {
            descend = true;
        } else if is_fpf_involution(&pi) {
            let mut all = pis.clone();
            all.push(pi.clone());
            let s = SurfaceComplex::from_pairings(n, all)?;
            if s.problems().is_empty() {
                if let Some(data) = accept(&s, &mut nodes)? {
                    return Ok(SearchOutcome::Found { surface: s, data, nodes, rejected });
                }
                rejected += 1;
                if nodes > budget {
                    return Ok(SearchOutcome::Budget { nodes: budget, rejected });
                }
            }
        }
        if descend {
            pis.push(pi);
            level += 1;
            iters[level] = Involutions::new(m);
            continue;
        }
        loop {
            if iters[level].advance() {
                break;
            }
            if level == 0 {
                return Ok(SearchOutcome::Exhausted { nodes, rejected });
            }
            level -= 1;
            pis.pop();
        }
    }
}

/// Signs `e_k` (with `e_0 = +1`) such that `sum e_k [h_k] = 0` in `H_1`,
/// trying sign vectors in binary order. Each test costs one node.
pub fn orient_geodesics(s: &SurfaceComplex, nodes: &mut u64, budget: u64) -> Result<Option<Vec<i64>>> {
    let count = s.geodesics().len();
    if count == 0 {
        return Ok(Some(Vec::new()));
    }
    if count > 63 {
        return Err(Error::BudgetExhausted(budget));
    }
    let chains: Vec<Vec<i64>> = (0..count).map(|k| s.geodesic_chain(k, 1)).collect();
    for mask in 0u64..1 << (count - 1) {
        *nodes += 1;
        if *nodes > budget {
            return Ok(None);
        }
        let signs: Vec<i64> = (0..count).map(|k| if k > 0 && mask >> (k - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let cycles: Vec<Vec<i64>> =
            chains.iter().zip(&signs).map(|(c, &e)| c.iter().map(|&x| x * e).collect()).collect();
        if is_nullhomologous(s, &cycles)? {
            return Ok(Some(signs));
        }
    }
    Ok(None)
}

/// Number of faces and genus from whichever of them is given, for `n`-gons.
pub fn faces_for(n: usize, faces: Option<usize>, genus: Option<u64>) -> Result<(usize, u64)> {
    require(n >= 5, format!("n = {n}: the surface construction needs n >= 5"))?;
    let k = n as u64 - 4;
    let (f, g) = match (faces, genus) {
        (Some(f), g) => {
            let num = f as u64 * k;
            require(num.is_multiple_of(8), format!("F = {f} gives a non-integral genus"))?;
            let g2 = 1 + num / 8;
            if let Some(g) = g {
                require(g == g2, format!("F = {f} and genus {g} are inconsistent"))?;
            }
            (f, g2)
        }
        (None, Some(g)) => {
            require(g >= 2, "genus at least 2")?;
            let num = 8 * (g - 1);
            require(num % k == 0, format!("genus {g} gives a non-integral F"))?;
            ((num / k) as usize, g)
        }
        (None, None) => return Err(Error::Hypothesis("one of F or genus is required".into())),
    };
    require(f >= 8 && f % 8 == 0, format!("F = {f} is not a positive multiple of 8"))?;
    Ok((f, g))
}

pub fn bourdon_hypotheses(a: &Gcm, field: &FieldCtx, faces: Option<usize>, genus: Option<u64>) -> Result<(usize, u64)> {
    let n = a.n();
    require(n >= 5, format!("n = {n}: the Weyl group must be W_n with n >= 5"))?;
    let m = a.coxeter_matrix();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            let want = if adjacent { 2 } else { crate::coxeter::INFINITY };
            require(m.m(i, j) == want, format!("Weyl group is not W_{n} at ({}, {})", i + 1, j + 1))?;
        }
    }
    let km = a.km_condition();
    require(km.holds, format!("Cartan condition fails on pairs {:?}", one_based(&km.witnesses)))?;
    require(field.q() % 4 == 1, format!("q = {} is not 1 mod 4", field.q()))?;
    faces_for(n, faces, genus)
}

#[derive(Debug, Clone)]
pub struct Bourdon {
    pub faces: usize,
    pub genus: u64,
    pub surface: SurfaceComplex,
    pub orientation: Vec<i64>,
    pub nodes: u64,
    pub rejected: u64,
    pub scwol: Scwol,
    pub target: TargetResidueFamily,
    pub complex: ComplexOfGroups,
    pub morphism: CogMorphism<LeviElement>,
    pub g: Vec<LeviElement>,
    pub certificate: CoveringCertificate,
}

/// First barycentric subdivision of the tessellation as a scwol: faces, then
/// edges, then vertices; edges face -> edge, edge -> vertex, face -> vertex.
pub fn surface_scwol(s: &SurfaceComplex) -> Scwol {
    let n = s.n();
    let (nf, ne) = (s.face_count(), s.edge_count());
    let half = nf / 2;
    let mut types: Vec<Subset> = Vec::new();
    let mut names = Vec::new();
    for face in 0..nf {
        types.push(0);
        names.push(if face < half { format!("b{face}") } else { format!("w{}", face - half) });
    }
    for e in 0..ne {
        let (c, b) = s.edge_side(e);
        types.push(1 << c);
        names.push(format!("e{}.{b}", c + 1));
    }
    let mut vtype = vec![0; s.vertex_count()];
    for c in 0..n {
        for b in 0..half {
            vtype[s.corner_vertex(b, c)] = (1 << c) | (1 << ((c + n - 1) % n));
        }
    }
    for (v, &t) in vtype.iter().enumerate() {
        types.push(t);
        names.push(format!("v{v}"));
    }
    let mut y = Scwol::new(types, names);
    let mut index = HashMap::new();
    let mut add = |y: &mut Scwol, i: usize, t: usize| *index.entry((i, t)).or_insert_with(|| y.add_edge(i, t));
    for e in 0..ne {
        let (c, b) = s.edge_side(e);
        add(&mut y, b, nf + e);
        add(&mut y, half + s.pairings()[c][b], nf + e);
    }
    for e in 0..ne {
        let (t, h) = s.edge_endpoints(e);
        add(&mut y, nf + e, nf + ne + t);
        add(&mut y, nf + e, nf + ne + h);
    }
    for face in 0..nf {
        for c in 0..n {
            add(&mut y, face, nf + ne + s.corner_vertex(face, c));
        }
    }
    for face in 0..nf {
        for c in 0..n {
            let e = s.side_edge(face, c);
            for corner in [c, c + 1] {
                let v = nf + ne + s.corner_vertex(face, corner);
                let a = add(&mut y, nf + e, v);
                let b = add(&mut y, face, nf + e);
                let ab = add(&mut y, face, v);
                y.set_composite(a, b, ab);
            }
        }
    }
    y
}

/// Lattice acting with `F` chamber orbits on the right-angled Fuchsian
/// building, over a tessellated surface.
pub fn build_bourdon_surface(
    a: &Gcm,
    field: Arc<FieldCtx>,
    faces: Option<usize>,
    genus: Option<u64>,
    budget: u64,
    cap: usize,
) -> Result<Bourdon> {
    let (faces, genus) = bourdon_hypotheses(a, &field, faces, genus)?;
    let n = a.n();
    let mut accept = |s: &SurfaceComplex, nodes: &mut u64| orient_geodesics(s, nodes, budget);
    let (surface, orientation, nodes, rejected) = match search_tessellation(n, faces, budget, &mut accept)? {
        SearchOutcome::Found { surface, data, nodes, rejected } => (surface, data, nodes, rejected),
        SearchOutcome::Budget { .. } => return Err(Error::BudgetExhausted(budget)),
        SearchOutcome::Exhausted { nodes, rejected } => {
            return Err(Error::Internal(format!(
                "search space exhausted after {nodes} nodes ({rejected} tessellations without a null-homologous orientation)"
            )))
        }
    };
    let target = TargetResidueFamily::new(field, a)?;
    let k = target.scwol();
    let vertex_model = |t: Subset| -> Result<(usize, &crate::algebra::LeviModel)> {
        let v = target.vertex_of(t).ok_or_else(|| Error::Internal(format!("no vertex {}", subset_label(t))))?;
        Ok((v, target.model(v)))
    };
    let mut type_groups: HashMap<Subset, FiniteActionGroup> = HashMap::new();
    for v in 0..k.vertex_count() {
        let t = k.vertex_type(v);
        let model = target.model(v);
        let g = if t == 0 {
            FiniteActionGroup::trivial(model.degree(), model.chamber_count(), Some(model.identity()))
        } else {
            let mut gens = Vec::new();
            for i in crate::coxeter::subset_elements(t) {
                gens.extend(ai_generators(AiCase::Q1Mod4, model, i)?);
            }
            model.generate(&gens, cap)?
        };
        type_groups.insert(t, g);
    }
    let g: Vec<LeviElement> =
        (0..n).map(|i| choose_g(vertex_model(1 << i)?.1, &type_groups[&(1 << i)], i)).collect::<Result<_>>()?;

    let y = surface_scwol(&surface);
    let (nf, ne) = (surface.face_count(), surface.edge_count());
    let half = nf / 2;
    let vertex_map: Vec<usize> = (0..y.vertex_count()).map(|v| target.vertex_of(y.vertex_type(v)).unwrap()).collect();
    let edge_map: Vec<usize> =
        y.edges().iter().map(|&(i, t)| target.edge_between(y.vertex_type(i), y.vertex_type(t)).unwrap()).collect();
    let groups: Vec<FiniteActionGroup> =
        (0..y.vertex_count()).map(|v| type_groups[&y.vertex_type(v)].clone()).collect();

    let mut sign = vec![0i64; ne];
    for (h, geo) in surface.geodesics().iter().enumerate() {
        for &(e, s) in &geo.edges {
            sign[e] = s * orientation[h];
        }
    }
    let mut edge_elements: Vec<Option<LeviElement>> = vec![None; y.edge_count()];
    for (a, &(i, t)) in y.edges().iter().enumerate() {
        let (ti, tt) = (y.vertex_type(i), y.vertex_type(t));
        if ti == 0 && tt.count_ones() == 1 {
            let e = t - nf;
            let c = tt.trailing_zeros() as usize;
            let left = if i < half { sign[e] == 1 } else { sign[e] == -1 };
            let model = vertex_model(tt)?.1;
            edge_elements[a] = Some(if left { model.identity() } else { g[c].clone() });
        } else if ti.count_ones() == 1 {
            let e = i - nf;
            let (c, b) = surface.edge_side(e);
            let other = (tt & !ti).trailing_zeros() as usize;
            let left = sign[surface.edge(other, b)] == 1;
            let (_, model) = vertex_model(tt)?;
            edge_elements[a] =
                Some(if left { model.identity() } else { model.embed(vertex_model(1 << other)?.1, &g[other])? });
            debug_assert_ne!(c, other);
        }
    }
    for ((a, b), ab) in y.composable_pairs() {
        if edge_elements[ab].is_none() {
            let ft = vertex_map[y.terminal(a)];
            let x = target.mul(
                ft,
                edge_elements[a].as_ref().unwrap(),
                &target.theta(edge_map[a], edge_elements[b].as_ref().unwrap()),
            );
            edge_elements[ab] = Some(x);
        }
    }
    let edge_elements: Vec<LeviElement> = edge_elements
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Internal("edge without an element".into())))
        .collect::<Result<_>>()?;

    let complex = {
        let gs = groups.clone();
        let yy = y.clone();
        ComplexOfGroups::from_transport(y.clone(), groups, |a, x| {
            let (i, t) = yy.edge(a);
            let mi = target.model(vertex_map[i]);
            let mt = target.model(vertex_map[t]);
            Ok(mt.perm(&mt.embed(mi, gs[i].label(x).unwrap())?))
        })?
    };
    let morphism = CogMorphism {
        vertex_map,
        edge_map,
        local_maps: complex.groups().iter().map(|g| g.labels().unwrap().to_vec()).collect(),
        edge_elements,
    };
    let certificate = verify_covering(&complex, &target, &morphism);
    Ok(Bourdon {
        faces,
        genus,
        surface,
        orientation,
        nodes,
        rejected,
        scwol: y,
        target,
        complex,
        morphism,
        g,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_surface(n: usize, faces: usize) -> SurfaceComplex {
        let mut take = |_: &SurfaceComplex, _: &mut u64| Ok(Some(()));
        match search_tessellation(n, faces, 1_000_000, &mut take).unwrap() {
            SearchOutcome::Found { surface, .. } => surface,
            other => panic!("no tessellation: {other:?}"),
        }
    }

    #[test]
    fn involutions_in_lex_order() {
        let mut it = Involutions::new(4);
        let mut all = vec![it.current()];
        while it.advance() {
            all.push(it.current());
        }
        assert_eq!(all, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]);
        let mut it = Involutions::new(6);
        let mut count = 1;
        while it.advance() {
            count += 1;
        }
        assert_eq!(count, 15);
    }

    #[test]
    fn pentagon_surface_counts() {
        let s = first_surface(5, 8);
        assert!(s.problems().is_empty(), "{:?}", s.problems());
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (10, 20, 8));
        assert_eq!((s.euler_characteristic(), s.genus()), (-2, 2));
    }

    #[test]
    fn hexagon_surface_genus() {
        assert_eq!(faces_for(6, Some(8), None).unwrap(), (8, 3));
        let s = first_surface(6, 8);
        assert!(s.problems().is_empty());
        assert_eq!(s.genus(), 3);
    }

    #[test]
    fn homology_basics() {
        let s = first_surface(5, 8);
        assert!(is_nullhomologous(&s, &[s.face_boundary(0)]).unwrap());
        let h = s.geodesic_chain(0, 1);
        let r = s.geodesic_chain(0, -1);
        assert!(is_nullhomologous(&s, &[h.clone(), r]).unwrap());
        let mut bad = vec![0; s.edge_count()];
        bad[0] = 1;
        assert!(is_nullhomologous(&s, &[bad]).is_err());
    }

    #[test]
    fn some_geodesic_is_not_a_boundary() {
        let s = first_surface(5, 8);
        let nonzero = (0..s.geodesics().len()).any(|k| !is_nullhomologous(&s, &[s.geodesic_chain(k, 1)]).unwrap());
        assert!(nonzero);
    }

    #[test]
    fn face_and_genus_rules() {
        assert!(faces_for(5, Some(12), None).is_err());
        assert!(faces_for(4, Some(8), None).is_err());
        assert_eq!(faces_for(5, None, Some(2)).unwrap(), (8, 2));
        assert_eq!(faces_for(5, Some(16), None).unwrap(), (16, 3));
    }
}
