//! End-to-end acceptance run: one line per criterion, each criterion run twice
//! to check that its report is reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{Debug, Write as _};
use std::sync::Arc;
use std::time::{Duration, Instant};

use kmlattice::algebra::finite::t0_generators;
use kmlattice::algebra::{
    build_ai, nonsplit_torus, sl2_group, torus_normalizer, AiCase, FieldCtx, FiniteActionGroup, LeviModel, Perm,
    DEFAULT_ORDER_CAP,
};
use kmlattice::cog::{verify_covering, CheckTally, Scwol, TargetComplex, Witness};
use kmlattice::constructions::*;
use kmlattice::coxeter::{index_ratio, parse_gcm, spherical_subsets, subset_label, Gcm};
use kmlattice::residues::{residue_product_of_lines, transversal_from_cosets, transversals_are_valid};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Accumulates a report and the mismatches found while writing it.
#[derive(Default)]
struct Log {
    report: String,
    failures: Vec<String>,
}

impl Log {
    fn line(&mut self, s: impl AsRef<str>) {
        self.report.push_str(s.as_ref());
        self.report.push('\n');
    }

    fn eq<T: Debug + PartialEq>(&mut self, what: &str, got: T, want: T) {
        writeln!(self.report, "{what} = {got:?}").unwrap();
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn ensure(&mut self, what: &str, ok: bool) {
        self.eq(what, ok, true);
    }

    fn fail(&mut self, what: String) {
        self.line(format!("{what} = error"));
        self.failures.push(what);
    }
}

fn field(p: u64, h: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, h).unwrap())
}

fn gcm(s: &str) -> Gcm {
    parse_gcm(s).unwrap()
}

/// Cartan matrix with `0` on the listed pairs and `-2` elsewhere.
fn right_angled(n: usize, commuting: &[(usize, usize)]) -> Gcm {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        "2"
                    } else if commuting.contains(&(i.min(j), i.max(j))) {
                        "0"
                    } else {
                        "-2"
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    gcm(&rows.join("; "))
}

fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let mut h = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        h += 1;
    }
    (p, h)
}

/// Orbits of the group generated by `gens` on `0..n`, by union-find on
/// generator images.
fn orbit_sizes(gens: &[Perm], n: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        *sizes.entry(find(&mut parent, x)).or_default() += 1;
    }
    let mut v: Vec<usize> = sizes.into_values().collect();
    v.sort_unstable();
    v
}

/// Action of an integer matrix on `P^1(F_p)`, points `[x:1]` then `[1:0]`.
fn projective_image(p: u64, m: [u64; 4], x: usize) -> usize {
    let (u, v) = if x as u64 == p { (1, 0) } else { (x as u64, 1) };
    let (s, t) = ((m[0] * u + m[1] * v) % p, (m[2] * u + m[3] * v) % p);
    if t == 0 {
        return p as usize;
    }
    let inv = (1..p).find(|k| k * t % p == 1).unwrap();
    (s * inv % p) as usize
}

fn finite_groups(log: &mut Log) {
    let a = right_angled(3, &[]);
    let n = a.n() as u32;
    let grid = [(AiCase::P2, [2u64, 4, 8].as_slice()), (AiCase::Q3Mod4, &[3, 7, 11]), (AiCase::Q1Mod4, &[5, 13])];
    for (case, qs) in grid {
        for &q in qs {
            let (p, h) = prime_power(q);
            let f = field(p, h);
            let tag = format!("{}.q{q}", case.name());
            let g = match build_ai(case, f.clone(), &a, 0) {
                Ok(g) => g,
                Err(e) => {
                    log.fail(format!("{tag}: {e}"));
                    continue;
                }
            };
            let pts = q as usize + 1;
            let orbits = orbit_sizes(g.generators(), pts);
            let stab = g.point_stabilizer(0);
            let q = q as usize;
            match case {
                AiCase::P2 => {
                    log.eq(&format!("{tag}.order"), g.order(), q + 1);
                    log.eq(&format!("{tag}.orbits"), orbits, vec![q + 1]);
                    log.eq(&format!("{tag}.meets_base_stabiliser"), stab.order(), 1);
                }
                AiCase::Q3Mod4 => {
                    log.eq(&format!("{tag}.order"), g.order(), (q + 1) << n);
                    log.eq(&format!("{tag}.orbits"), orbits, vec![q + 1]);
                    let model = LeviModel::new(f.clone(), a.clone(), 1).unwrap();
                    let t0 = model.generate(&t0_generators(&model), DEFAULT_ORDER_CAP).unwrap();
                    log.eq(&format!("{tag}.meets_base_stabiliser"), stab.order(), 1 << n);
                    log.ensure(&format!("{tag}.meets_base_stabiliser_in_t0"), stab.same_elements(&t0));
                    let h = nonsplit_torus(f.clone()).unwrap();
                    let nh = torus_normalizer(f.clone()).unwrap();
                    log.eq(&format!("{tag}.torus_normaliser_order"), (h.order(), nh.order()), (q + 1, 2 * (q + 1)));
                    log.eq(&format!("{tag}.torus_normaliser_orbits"), orbit_sizes(nh.generators(), pts), vec![q + 1]);
                }
                AiCase::Q1Mod4 => {
                    let r = q.div_ceil(2);
                    log.eq(&format!("{tag}.order"), g.order(), r);
                    log.eq(&format!("{tag}.orbits"), orbits, vec![r, r]);
                    let moving = (0..g.order())
                        .filter(|&k| !g.element(k).is_identity())
                        .all(|k| (0..pts).all(|x| g.element(k).apply(x) != x));
                    log.ensure(&format!("{tag}.fixed_point_free"), moving);
                }
            }
            if h == 1 {
                // labels against matrices acting on the projective line directly
                let consistent = (0..g.order()).all(|k| {
                    let l = g.label(k).unwrap();
                    let m = l.mats[0];
                    let det_one = (m.a as u64 * m.d as u64 + p * p - m.b as u64 * m.c as u64 % p) % p == 1;
                    let acting = LeviModel::new(f.clone(), a.clone(), 1).unwrap().factor_matrix(l, 0);
                    let mm = [acting.a as u64, acting.b as u64, acting.c as u64, acting.d as u64];
                    det_one && (0..pts).all(|x| projective_image(p, mm, x) == g.element(k).apply(x))
                });
                log.ensure(&format!("{tag}.labels_match_matrices"), consistent);
            }
        }
    }
}

fn index_law(log: &mut Log) {
    // {1,2,3} pairwise commuting, 4 free against all
    let a = right_angled(4, &[(0, 1), (0, 2), (1, 2)]);
    let m = a.coxeter_matrix();
    let lattice = spherical_subsets(&m);
    for q in [2u64, 3, 5] {
        let f = field(q, 1);
        for &big in lattice.subsets() {
            if big.count_ones() > 3 {
                continue;
            }
            let residue = residue_product_of_lines(&a, f.clone(), big).unwrap();
            for &small in lattice.subsets() {
                if small == big || small & !big != 0 {
                    continue;
                }
                let expected = (q as u128 + 1).pow((big & !small).count_ones());
                let tag = format!("q{q}.{}:{}", subset_label(big), subset_label(small));
                log.eq(&format!("{tag}.residues"), residue.residue_count(small) as u128, expected);
                log.eq(&format!("{tag}.poincare"), index_ratio(&m, big, small, q).unwrap(), expected);
            }
        }
    }
}

fn tally_matches(s: &Scwol, q: u64, t: &CheckTally) -> bool {
    let (i, j) = s.edge(t.b);
    let expected = (q as usize + 1).pow((s.vertex_type(j) & !s.vertex_type(i)).count_ones());
    t.target_index == expected && t.image == expected && t.domain == expected && t.bijective
}

fn chamber_transitive(log: &mut Log) {
    let shapes = [
        ("n2", right_angled(2, &[])),
        ("n3", right_angled(3, &[])),
        ("n3_one_square", right_angled(3, &[(0, 1)])),
        ("n4_square_nerve", right_angled(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])),
    ];
    for (name, a) in &shapes {
        for q in [2u64, 4, 3, 7] {
            let (p, h) = prime_power(q);
            let tag = format!("{name}.q{q}");
            let r = match build_ra_chamber_transitive(a, field(p, h), DEFAULT_ORDER_CAP) {
                Ok(r) => r,
                Err(e) => {
                    log.fail(format!("{tag}: {e}"));
                    continue;
                }
            };
            log.eq(&format!("{tag}.case"), r.case.name(), AiCase::for_field(&field(p, h)).name());
            log.ensure(&format!("{tag}.pass"), r.certificate.passed());
            log.ensure(&format!("{tag}.conditions_agree"), r.agree() && r.conditions_hold());
            let s = r.target.scwol();
            log.eq(&format!("{tag}.checks"), r.certificate.tallies.len(), s.edge_count());
            let good = r.certificate.tallies.iter().filter(|t| tally_matches(s, q, t)).count();
            log.eq(&format!("{tag}.checks_matching_index"), good, r.certificate.tallies.len());
            log.line(format!("{tag}.covolume = {}", r.complex.covolume()));

            let v = r.target.vertex_of(0b001).unwrap();
            let mut groups: Vec<FiniteActionGroup> = r.complex.groups().to_vec();
            groups[v] = groups[v].point_stabilizer(0);
            let shrunk =
                ra_chamber_transitive_assemble(&r.target, groups).map(|(c, m)| verify_covering(&c, &r.target, &m));
            match shrunk {
                Ok(cert) => {
                    log.ensure(&format!("{tag}.shrunken_fails"), !cert.passed());
                    let named = cert.witnesses.iter().any(|w| matches!(w, Witness::NotSurjective { .. }));
                    log.ensure(&format!("{tag}.shrunken_witness"), named);
                }
                Err(e) => log.fail(format!("{tag}.shrunken: {e}")),
            }
            let cert = verify_covering(&r.complex.without_edge(0), &r.target, &r.morphism.without_edge(0));
            log.ensure(&format!("{tag}.dropped_edge_fails"), !cert.passed() && !cert.witnesses.is_empty());
        }
    }
}

fn two_orbit(log: &mut Log) {
    for n in [2usize, 3, 4] {
        for q in [5u64, 13] {
            let tag = format!("n{n}.q{q}");
            let r = match build_ra_two_orbit(&right_angled(n, &[]), field(q, 1), DEFAULT_ORDER_CAP) {
                Ok(r) => r,
                Err(e) => {
                    log.fail(format!("{tag}: {e}"));
                    continue;
                }
            };
            log.ensure(&format!("{tag}.pass"), r.certificate.passed());
            let fibres: BTreeSet<usize> = r.certificate.tallies.iter().map(|t| t.fibres).collect();
            log.eq(&format!("{tag}.panel_fibres"), fibres, BTreeSet::from([2]));
            log.eq(&format!("{tag}.panel_checks"), r.certificate.tallies.len(), n);
            let s = r.target.scwol();
            let good = r.certificate.tallies.iter().filter(|t| tally_matches(s, q, t)).count();
            log.eq(&format!("{tag}.checks_matching_index"), good, n);
            log.eq(&format!("{tag}.covolume"), r.complex.covolume().to_string(), "2".to_string());
        }
    }
}

fn bourdon(log: &mut Log) {
    let a = right_angled(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    let b = match build_bourdon_surface(&a, field(5, 1), Some(8), None, 1_000_000, DEFAULT_ORDER_CAP) {
        Ok(b) => b,
        Err(e) => return log.fail(format!("bourdon: {e}")),
    };
    let (n, f) = (5usize, 8usize);
    let s = &b.surface;
    log.eq("genus", b.genus, 2);
    log.eq("euler_characteristic", s.euler_characteristic(), -2);
    log.eq("vertices", s.vertex_count(), f * n / 4);
    log.eq("edges", s.edge_count(), f * n / 2);
    log.eq("faces", s.face_count(), f);
    log.ensure("surface_valid", s.problems().is_empty());
    log.line(format!("search_nodes = {}", b.nodes));
    log.ensure("within_budget", b.nodes <= 1_000_000);
    let cycles: Vec<Vec<i64>> = b.orientation.iter().enumerate().map(|(k, &e)| s.geodesic_chain(k, e)).collect();
    log.line(format!("geodesics = {}", cycles.len()));
    log.eq("geodesics_sum_to_boundary", is_nullhomologous(s, &cycles).unwrap(), true);
    log.ensure("pass", b.certificate.passed());
    let k = b.target.scwol();
    let mut fibres: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    for t in &b.certificate.tallies {
        let (i, j) = k.edge(t.b);
        let kind = match (k.vertex_type(i).count_ones(), k.vertex_type(j).count_ones()) {
            (0, 2) => "vertex",
            (0, 1) => "panel",
            _ => "vertex_from_panel",
        };
        fibres.entry(kind).or_default().insert(t.fibres);
        if !tally_matches(k, 5, t) {
            log.fail(format!("check {}/{} does not match the index", t.sigma, t.b));
        }
    }
    log.eq("vertex_fibres", fibres.remove("vertex").unwrap_or_default(), BTreeSet::from([4]));
    log.eq("panel_fibres", fibres.remove("panel").unwrap_or_default(), BTreeSet::from([2]));
    log.eq("vertex_from_panel_fibres", fibres.remove("vertex_from_panel").unwrap_or_default(), BTreeSet::from([2]));
    log.eq("covolume", b.complex.covolume().to_string(), f.to_string());
}

/// First Betti number of the glued complex, read off the homotopy-equivalent
/// bipartite graph of star copies and chambers.
fn glued_graph_rank(s: &Scwol) -> usize {
    let nv = s.vertex_count();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, t) in s.edges() {
        if s.vertex_type(i) != 0 && s.vertex_type(t) != 0 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, t));
            parent[a.max(b)] = a.min(b);
        }
    }
    let copies: HashSet<usize> = (0..nv).filter(|&v| s.vertex_type(v) != 0).map(|v| find(&mut parent, v)).collect();
    let chambers: Vec<usize> = (0..nv).filter(|&v| s.vertex_type(v) == 0).collect();
    let incidences: HashSet<(usize, usize)> = s
        .edges()
        .iter()
        .filter(|&&(i, t)| s.vertex_type(i) == 0 && s.vertex_type(t) != 0)
        .map(|&(i, t)| (find(&mut parent, t), i))
        .collect();
    // the bipartite graph is connected when every chamber meets every factor
    let mut g: Vec<usize> = (0..nv).collect();
    for &(c, ch) in &incidences {
        let (a, b) = (find(&mut g, c), find(&mut g, ch));
        g[a.max(b)] = a.min(b);
    }
    let nodes: Vec<usize> = copies.iter().copied().chain(chambers.iter().copied()).collect();
    let comps: HashSet<usize> = nodes.iter().map(|&x| find(&mut g, x)).collect();
    incidences.len() + comps.len() - nodes.len()
}

fn free_products(log: &mut Log) {
    let a1 = |q: u128| q + 1;
    let a2 = |q: u128| (q + 1) * (q * q + q + 1);
    let b2 = |q: u128| (q + 1) * (q + 1) * (q * q + 1);
    let cases: [(&str, &str, u64, Vec<u128>); 6] = [
        ("a1_a1", "2 -2; -2 2", 2, vec![a1(2), a1(2)]),
        ("a1_a1", "2 -2; -2 2", 3, vec![a1(3), a1(3)]),
        ("a1_a1", "2 -2; -2 2", 5, vec![a1(5), a1(5)]),
        ("a2_a1", "2 -1 -2; -1 2 -2; -2 -2 2", 2, vec![a2(2), a1(2)]),
        ("b2_a1", "2 -2 -2; -1 2 -2; -2 -2 2", 2, vec![b2(2), a1(2)]),
        ("a1_a1_a1", "2 -2 -2; -2 2 -2; -2 -2 2", 2, vec![a1(2), a1(2), a1(2)]),
    ];
    for (name, a, q, m) in cases {
        let tag = format!("{name}.q{q}");
        let o = match build_fp(&gcm(a), field(q, 1), None, DEFAULT_ORDER_CAP) {
            Ok(o) => o,
            Err(e) => {
                log.fail(format!("{tag}: {e}"));
                continue;
            }
        };
        let big: u128 = m.iter().product();
        let copies: Vec<u128> = m.iter().map(|mk| big / mk).collect();
        let n = m.len() as i128;
        let formula = 1 - copies.iter().sum::<u128>() as i128 - big as i128 + n * big as i128;
        log.eq(&format!("{tag}.m"), o.m.clone(), m);
        log.eq(&format!("{tag}.chambers"), o.chambers, big);
        log.eq(&format!("{tag}.copies"), o.copies.clone(), copies);
        log.eq(&format!("{tag}.formula_rank"), o.formula_rank, formula);
        let Some(g) = &o.geometry else {
            log.fail(format!("{tag}: no geometric mode"));
            continue;
        };
        log.ensure(&format!("{tag}.pass"), g.certificate.passed());
        log.eq(&format!("{tag}.free_rank"), g.free_rank as i128, formula);
        log.eq(&format!("{tag}.graph_rank"), glued_graph_rank(&g.scwol) as i128, formula);
    }
}

/// A point stabiliser one time in three, otherwise the subgroup generated by
/// up to two random elements.
fn random_subgroup(rng: &mut ChaCha8Rng, g: &FiniteActionGroup) -> FiniteActionGroup {
    if rng.random_range(0..3) == 0 {
        return g.point_stabilizer(rng.random_range(0..g.points()));
    }
    let k = rng.random_range(1..=2);
    let gens: Vec<Perm> = (0..k).map(|_| g.element(rng.random_range(0..g.order())).clone()).collect();
    FiniteActionGroup::generate(g.degree(), g.points(), gens, DEFAULT_ORDER_CAP).unwrap()
}

/// One representative per coset `xU`, each a random member of its coset.
fn random_transversal(rng: &mut ChaCha8Rng, h: &FiniteActionGroup, u: &FiniteActionGroup) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for x in h.elements() {
        if seen.contains(x) {
            continue;
        }
        let coset: Vec<Perm> = u.elements().iter().map(|y| x.compose(y)).collect();
        out.push(coset.choose(rng).unwrap().clone());
        seen.extend(coset);
    }
    out
}

/// `B` lies in `V`, has `|V:U|` elements, and no two lie in one coset of `U`.
fn is_left_transversal(v: &FiniteActionGroup, u: &FiniteActionGroup, b: &[Perm]) -> bool {
    if b.len() * u.order() != v.order() || !b.iter().all(|x| v.contains(x)) {
        return false;
    }
    let cosets: HashSet<Vec<Perm>> = b
        .iter()
        .map(|x| {
            let mut c: Vec<Perm> = u.elements().iter().map(|y| x.compose(y)).collect();
            c.sort();
            c
        })
        .collect();
    cosets.len() == b.len()
}

fn transversals(log: &mut Log) {
    let mut pool: Vec<(String, FiniteActionGroup)> = Vec::new();
    for (p, h) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1)] {
        let f = field(p, h);
        pool.push((format!("sl2.q{}", f.q()), sl2_group(f.clone()).unwrap()));
        if p != 2 {
            pool.push((format!("normaliser.q{}", f.q()), torus_normalizer(f).unwrap()));
        }
    }
    for (q, a) in [(3, right_angled(3, &[(0, 1)])), (7, right_angled(3, &[]))] {
        let r = build_ra_chamber_transitive(&a, field(q, 1), DEFAULT_ORDER_CAP).unwrap();
        let top = (0..r.complex.scwol().vertex_count()).max_by_key(|&v| r.complex.group(v).order()).unwrap();
        pool.push((format!("local.q{q}"), r.complex.group(top).clone()));
    }
    pool.retain(|(_, g)| g.order() <= 5000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e_5f1c);
    let mut agreed = 0;
    let mut valid = 0;
    let mut by_group: BTreeMap<String, usize> = BTreeMap::new();
    for trial in 0..200 {
        let (name, h) = pool.choose(&mut rng).unwrap();
        let v = random_subgroup(&mut rng, h);
        let u = random_subgroup(&mut rng, &v);
        let c = random_transversal(&mut rng, h, &u);
        let a = random_transversal(&mut rng, h, &v);
        let b = match transversal_from_cosets(h, &v, &u, &c, &a) {
            Ok(b) => b,
            Err(e) => {
                log.fail(format!("chain {trial}: {e}"));
                continue;
            }
        };
        let ok = b.len() == a.len() && b.iter().all(|bj| is_left_transversal(&v, &u, bj));
        valid += ok as usize;
        agreed += (ok == transversals_are_valid(&v, &u, &b)) as usize;
        *by_group.entry(name.clone()).or_default() += 1;
        log.line(format!("chain {trial}: {name} |H|={} |V|={} |U|={}", h.order(), v.order(), u.order()));
    }
    log.eq("valid_chains", valid, 200);
    log.eq("library_agrees", agreed, 200);
    for (name, k) in by_group {
        log.line(format!("sampled {name} = {k}"));
    }
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn(&mut Log),
}

fn main() {
    let criteria = [
        Criterion { name: "finite subgroups A_i", limit: Duration::from_secs(10), run: finite_groups },
        Criterion { name: "residue index law", limit: Duration::from_secs(60), run: index_law },
        Criterion { name: "chamber-transitive lattices", limit: Duration::from_secs(60), run: chamber_transitive },
        Criterion { name: "two-orbit lattices", limit: Duration::from_secs(30), run: two_orbit },
        Criterion { name: "surface tessellation lattice", limit: Duration::from_secs(300), run: bourdon },
        Criterion { name: "free-product lattices", limit: Duration::from_secs(60), run: free_products },
        Criterion { name: "transversals of random chains", limit: Duration::from_secs(60), run: transversals },
    ];
    let mut all_ok = true;
    let mut reproducible = true;
    let mut results = Vec::new();
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut first = Log::default();
        (c.run)(&mut first);
        let elapsed = start.elapsed();
        let mut second = Log::default();
        (c.run)(&mut second);
        let same = first.report == second.report;
        reproducible &= same;
        let ok = first.failures.is_empty() && elapsed <= c.limit;
        all_ok &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {verdict} {} ({} report lines, {:.2}s, limit {}s)",
            k + 1,
            c.name,
            first.report.lines().count(),
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for f in &first.failures {
            println!("    {f}");
        }
        if elapsed > c.limit {
            println!("    over the time limit");
        }
        results.push(first.report);
    }
    let verdict = if reproducible { "PASS" } else { "FAIL" };
    println!("criterion 8: {verdict} reports identical across two runs of criteria 1-7");
    all_ok &= reproducible;
    if std::env::var_os("KMLATTICE_ACCEPTANCE_DUMP").is_some() {
        for (k, r) in results.iter().enumerate() {
            println!("--- criterion {} report ---\n{r}", k + 1);
        }
    }
    if !all_ok {
        std::process::exit(1);
    }
}
