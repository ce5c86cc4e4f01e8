use std::sync::Arc;

use kmlattice::algebra::{FieldCtx, FiniteActionGroup, DEFAULT_ORDER_CAP};
use kmlattice::cog::{presentation_over_cone, verify_covering, TargetComplex, Witness};
use kmlattice::constructions::*;
use kmlattice::coxeter::{index_ratio, parse_gcm, Gcm};
use kmlattice::error::Error;
use num_rational::Ratio;

fn field(p: u64, h: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, h).unwrap())
}

fn gcm(s: &str) -> Gcm {
    parse_gcm(s).unwrap()
}

const FREE3: &str = "2 -2 -2; -2 2 -2; -2 -2 2";
const ONE_SQUARE: &str = "2 0 -2; 0 2 -2; -2 -2 2";

#[test]
fn chamber_transitive_free_product_of_three() {
    let r = build_ra_chamber_transitive(&gcm(FREE3), field(2, 1), DEFAULT_ORDER_CAP).unwrap();
    assert!(r.certificate.passed(), "{:?}", r.certificate.witnesses);
    assert!(r.conditions_hold() && r.agree());
    assert_eq!(r.complex.covolume(), Ratio::from_integer(1));
    assert_eq!(presentation_over_cone(&r.complex).unwrap().to_string(), "< a, b, c | a^3, b^3, c^3 >");
}

#[test]
fn chamber_transitive_with_commuting_pair() {
    let r = build_ra_chamber_transitive(&gcm(ONE_SQUARE), field(3, 1), DEFAULT_ORDER_CAP).unwrap();
    assert!(r.certificate.passed(), "{:?}", r.certificate.witnesses);
    assert!(r.agree());
    let s = r.target.scwol();
    let v12 = r.target.vertex_of(0b011).unwrap();
    let v1 = r.target.vertex_of(0b001).unwrap();
    assert_eq!(r.complex.group(v12).order() / r.complex.group(v1).order(), 4);
    let m = gcm(ONE_SQUARE).coxeter_matrix();
    for t in &r.certificate.tallies {
        let (i, j) = s.edge(t.b);
        let expected = index_ratio(&m, s.vertex_type(j), s.vertex_type(i), 3).unwrap();
        assert_eq!(t.target_index as u128, expected);
        assert_eq!(t.image, t.target_index);
    }
}

#[test]
fn chamber_transitive_hypotheses() {
    let finite = gcm("2 0; 0 2");
    assert!(matches!(build_ra_chamber_transitive(&finite, field(2, 1), DEFAULT_ORDER_CAP), Err(Error::Hypothesis(_))));
    assert!(matches!(
        build_ra_chamber_transitive(&gcm("2 -2; -2 2"), field(5, 1), DEFAULT_ORDER_CAP),
        Err(Error::Hypothesis(_))
    ));
    assert!(matches!(
        build_ra_chamber_transitive(&gcm("2 -1; -1 2"), field(2, 1), DEFAULT_ORDER_CAP),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn shrunken_local_group_fails() {
    let a = gcm(FREE3);
    let r = build_ra_chamber_transitive(&a, field(2, 1), DEFAULT_ORDER_CAP).unwrap();
    let v = r.target.vertex_of(0b001).unwrap();
    let mut groups: Vec<FiniteActionGroup> = r.complex.groups().to_vec();
    let g = &groups[v];
    groups[v] = FiniteActionGroup::trivial(g.degree(), g.points(), Some(r.target.model(v).identity()));
    let (complex, morphism) = ra_chamber_transitive_assemble(&r.target, groups).unwrap();
    let cert = verify_covering(&complex, &r.target, &morphism);
    assert!(!cert.passed());
    assert!(cert.witnesses.iter().any(|w| matches!(w, Witness::NotSurjective { .. })));
}

#[test]
fn dropped_edge_fails() {
    let r = build_ra_chamber_transitive(&gcm(FREE3), field(2, 1), DEFAULT_ORDER_CAP).unwrap();
    let complex = r.complex.without_edge(0);
    let morphism = r.morphism.without_edge(0);
    let cert = verify_covering(&complex, &r.target, &morphism);
    assert!(!cert.passed());
    assert!(!cert.witnesses.is_empty());
}

#[test]
fn two_orbit_panels() {
    for (n, q) in [(2, 5u64), (3, 13)] {
        let rows: Vec<String> =
            (0..n).map(|i| (0..n).map(|j| if i == j { "2" } else { "-2" }).collect::<Vec<_>>().join(" ")).collect();
        let r = build_ra_two_orbit(&gcm(&rows.join("; ")), field(q, 1), DEFAULT_ORDER_CAP).unwrap();
        assert!(r.certificate.passed(), "{:?}", r.certificate.witnesses);
        assert_eq!(r.certificate.tallies.len(), n);
        assert_eq!(r.complex.covolume(), Ratio::from_integer(2));
        for t in &r.certificate.tallies {
            assert_eq!((t.fibres, t.domain, t.target_index), (2, q as usize + 1, q as usize + 1));
        }
    }
}

#[test]
fn two_orbit_with_g_inside_the_orbit_collides() {
    let a = gcm("2 -2; -2 2");
    let r = build_ra_two_orbit(&a, field(5, 1), DEFAULT_ORDER_CAP).unwrap();
    let ai = ra_two_orbit_groups(&r.target, 2, DEFAULT_ORDER_CAP).unwrap();
    let bad: Vec<_> = ai.iter().map(|g| g.label(1).unwrap().clone()).collect();
    let (complex, morphism) = ra_two_orbit_assemble(&r.target, &ai, &bad).unwrap();
    let cert = verify_covering(&complex, &r.target, &morphism);
    assert!(!cert.passed());
    assert!(cert.witnesses.iter().any(|w| matches!(w, Witness::Collision { .. })));
}

#[test]
fn two_orbit_hypotheses() {
    assert!(build_ra_two_orbit(&gcm("2 -2; -2 2"), field(3, 1), DEFAULT_ORDER_CAP).is_err());
    assert!(build_ra_two_orbit(&gcm("2 -1; -4 2"), field(5, 1), DEFAULT_ORDER_CAP).is_err());
}

fn pentagon() -> Gcm {
    gcm("2 0 -2 -2 0; 0 2 0 -2 -2; -2 0 2 0 -2; -2 -2 0 2 0; 0 -2 -2 0 2")
}

#[test]
fn bourdon_pentagons() {
    let b = build_bourdon_surface(&pentagon(), field(5, 1), Some(8), None, DEFAULT_BUDGET, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(b.genus, 2);
    assert_eq!(b.surface.euler_characteristic(), -2);
    assert_eq!((b.surface.vertex_count(), b.surface.edge_count()), (10, 20));
    assert!(b.certificate.passed(), "{:?}", b.certificate.witnesses);
    assert_eq!(b.complex.covolume(), Ratio::from_integer(8));
    let cycles: Vec<Vec<i64>> =
        b.orientation.iter().enumerate().map(|(k, &e)| b.surface.geodesic_chain(k, e)).collect();
    assert!(is_nullhomologous(&b.surface, &cycles).unwrap());
    let k = b.target.scwol();
    assert_eq!(b.certificate.tallies.len(), 20 + 10 * 3);
    for t in &b.certificate.tallies {
        let (i, j) = k.edge(t.b);
        let drop = (k.vertex_type(j) & !k.vertex_type(i)).count_ones();
        let expected = if k.vertex_type(j).count_ones() == 2 && drop == 2 { 4 } else { 2 };
        assert_eq!(t.fibres, expected);
        assert_eq!(t.target_index, 6usize.pow(drop));
        assert_eq!(t.domain, t.target_index);
    }
}

#[test]
fn bourdon_hypotheses() {
    let p = pentagon();
    let f = field(5, 1);
    let run = |faces| build_bourdon_surface(&p, f.clone(), Some(faces), None, DEFAULT_BUDGET, DEFAULT_ORDER_CAP);
    assert!(matches!(run(12), Err(Error::Hypothesis(_))));
    assert!(matches!(
        build_bourdon_surface(&p, field(3, 1), Some(8), None, DEFAULT_BUDGET, DEFAULT_ORDER_CAP),
        Err(Error::Hypothesis(_))
    ));
    let square = gcm("2 0 -2 0; 0 2 0 -2; -2 0 2 0; 0 -2 0 2");
    assert!(matches!(
        build_bourdon_surface(&square, field(5, 1), Some(8), None, DEFAULT_BUDGET, DEFAULT_ORDER_CAP),
        Err(Error::Hypothesis(_))
    ));
    assert!(matches!(
        build_bourdon_surface(&p, f.clone(), Some(8), None, 5, DEFAULT_ORDER_CAP),
        Err(Error::BudgetExhausted(_))
    ));
}

#[test]
fn free_products() {
    let cases = [
        ("2 -2; -2 2", 2, 4),
        ("2 -2; -2 2", 3, 9),
        ("2 -2; -2 2", 5, 25),
        ("2 -1 -2; -1 2 -2; -2 -2 2", 2, 40),
        ("2 -2 -2; -1 2 -2; -2 -2 2", 2, 88),
        (FREE3, 2, 28),
    ];
    for (a, p, rank) in cases {
        let o = build_fp(&gcm(a), field(p, 1), None, DEFAULT_ORDER_CAP).unwrap();
        let g = o.geometry.as_ref().unwrap();
        assert!(g.certificate.passed(), "{a} at q={p}: {:?}", g.certificate.witnesses);
        assert_eq!(g.free_rank as i128, o.formula_rank);
        assert_eq!(o.formula_rank, rank);
    }
}

#[test]
fn free_product_rejections() {
    let nonspherical = gcm("2 -1 -1 -2; -1 2 -1 -2; -1 -1 2 -2; -2 -2 -2 2");
    match build_fp(&nonspherical, field(2, 1), None, DEFAULT_ORDER_CAP) {
        Err(Error::Hypothesis(s)) => assert!(s.contains("{1,2,3}"), "{s}"),
        other => panic!("{other:?}"),
    }
}
