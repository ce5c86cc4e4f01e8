//! The finite subgroups `A_i` of the rank-one Levi factors.

use std::sync::Arc;

use super::field::FieldCtx;
use super::group::{FiniteActionGroup, DEFAULT_ORDER_CAP};
use super::levi::{LeviElement, LeviModel};
use super::mat2::Mat2;
use super::quad::QuadExt;
use crate::coxeter::Gcm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AiCase {
    /// `q` even: `A_i` is the non-split torus, simply transitive on `P^1`.
    P2,
    /// `q = 3 mod 4`: normaliser of the non-split torus times `T_0`.
    Q3Mod4,
    /// `q = 1 mod 4`: index-two subgroup of the non-split torus.
    Q1Mod4,
}

impl AiCase {
    pub fn for_field(f: &FieldCtx) -> Self {
        if f.p() == 2 {
            AiCase::P2
        } else if f.q() % 4 == 3 {
            AiCase::Q3Mod4
        } else {
            AiCase::Q1Mod4
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AiCase::P2 => "p2",
            AiCase::Q3Mod4 => "q3mod4",
            AiCase::Q1Mod4 => "q1mod4",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "p2" => Ok(AiCase::P2),
            "q3mod4" => Ok(AiCase::Q3Mod4),
            "q1mod4" => Ok(AiCase::Q1Mod4),
            _ => Err(Error::Invalid(format!("unknown case `{s}`"))),
        }
    }

    pub fn check(self, f: &FieldCtx) -> Result<()> {
        if AiCase::for_field(f) == self {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!("case {} does not apply to q = {}", self.name(), f.q())))
        }
    }
}

/// Generator of the non-split torus `H` and an element of `SL_2(q)` inverting it.
#[derive(Debug, Clone)]
pub struct RankOneData {
    pub ext: QuadExt,
    pub torus_generator: Mat2,
    pub inverter: Mat2,
}

impl RankOneData {
    pub fn new(f: &FieldCtx) -> Result<Self> {
        let ext = QuadExt::new(f);
        let q = f.q() as u64;
        let z = ext.generator(f);
        let u = ext.pow(f, z, q - 1);
        let torus_generator = ext.mult_matrix(f, u);
        let w = ext.element_of_norm(f, f.neg(1));
        let inverter = ext.conjugation_matrix(f).mul(f, &ext.mult_matrix(f, w));
        if torus_generator.det() != 1 || torus_generator.order(f) != q + 1 {
            return Err(Error::Internal("non-split torus generator has the wrong order".into()));
        }
        if inverter.det() != 1 || torus_generator.conj(f, &inverter) != torus_generator.inv(f) {
            return Err(Error::Internal("no element inverting the non-split torus".into()));
        }
        Ok(RankOneData { ext, torus_generator, inverter })
    }
}

fn rank_one_model(f: Arc<FieldCtx>) -> LeviModel {
    LeviModel::new(f, Gcm::new(vec![vec![2]]).unwrap(), 1).unwrap()
}

/// The norm-one subgroup of `F_{q^2}^*` acting on `P^1(F_q)` (faithfully, with
/// the nonzero vectors of `F_q^2` as extra points).
pub fn nonsplit_torus(f: Arc<FieldCtx>) -> Result<FiniteActionGroup> {
    let data = RankOneData::new(&f)?;
    let model = rank_one_model(f);
    model.generate(&[model.in_factor(0, data.torus_generator)?], DEFAULT_ORDER_CAP)
}

/// `N_{SL_2(q)}(H)` for odd `q`, of order `2(q+1)`.
pub fn torus_normalizer(f: Arc<FieldCtx>) -> Result<FiniteActionGroup> {
    if f.p() == 2 {
        return Err(Error::Invalid("torus normaliser is built for odd q only".into()));
    }
    let data = RankOneData::new(&f)?;
    let model = rank_one_model(f);
    model.generate(&[model.in_factor(0, data.torus_generator)?, model.in_factor(0, data.inverter)?], DEFAULT_ORDER_CAP)
}

/// `SL_2(q)` acting on `P^1(F_q)` and the nonzero vectors, generated by the
/// upper unipotent `u(1)`, the Weyl element and `diag(z^-1, z)` for a
/// primitive `z`.
pub fn sl2_group(f: Arc<FieldCtx>) -> Result<FiniteActionGroup> {
    let z = f.generator();
    let zi = f.inv(z).expect("generator is nonzero");
    let gens = [Mat2::new(&f, 1, 1, 0, 1), Mat2::new(&f, 0, f.neg(1), 1, 0), Mat2::diag(&f, zi, z)];
    let model = rank_one_model(f);
    let gens = gens.into_iter().map(|m| model.in_factor(0, m.expect("determinant one"))).collect::<Result<Vec<_>>>()?;
    model.generate(&gens, DEFAULT_ORDER_CAP)
}

/// Generators of the Sylow 2-subgroup `T_0 = {1,-1}^n` of the torus, `q = 3 mod 4`.
pub fn t0_generators(model: &LeviModel) -> Vec<LeviElement> {
    let f = model.field();
    (0..model.n())
        .map(|k| {
            let mut t = vec![1; model.n()];
            t[k] = f.neg(1);
            model.from_torus(&t)
        })
        .collect()
}

/// Generators of `A_i` inside a Levi model containing `i`.
pub fn ai_generators(case: AiCase, model: &LeviModel, i: usize) -> Result<Vec<LeviElement>> {
    let f = model.field();
    case.check(f)?;
    let data = RankOneData::new(f)?;
    let u = data.torus_generator;
    Ok(match case {
        AiCase::P2 => vec![model.in_factor(i, u)?],
        AiCase::Q3Mod4 => {
            let mut g = vec![model.in_factor(i, u)?, model.in_factor(i, data.inverter)?];
            g.extend(t0_generators(model));
            g
        }
        AiCase::Q1Mod4 => vec![model.in_factor(i, u.mul(f, &u))?],
    })
}

/// `A_i` acting on `P^1(F_q)` in the Levi model of `{i}`.
pub fn build_ai(case: AiCase, f: Arc<FieldCtx>, a: &Gcm, i: usize) -> Result<FiniteActionGroup> {
    let model = LeviModel::new(f, a.clone(), 1 << i)?;
    model.generate(&ai_generators(case, &model, i)?, DEFAULT_ORDER_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, h: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, h).unwrap())
    }

    #[test]
    fn nonsplit_torus_orders() {
        for (p, h) in [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let f = field(p, h);
            let q = f.q() as usize;
            let h = nonsplit_torus(f).unwrap();
            assert_eq!(h.order(), q + 1);
            assert!(h.is_cyclic());
            for g in 1..h.order() {
                let img_trivial = (0..h.points()).all(|x| h.element(g).apply(x) == x);
                assert!(img_trivial || h.fixed_points(g).is_empty());
            }
        }
    }

    #[test]
    fn nonsplit_torus_q5() {
        let h = nonsplit_torus(field(5, 1)).unwrap();
        let mut orders: Vec<usize> = (0..6).map(|i| h.element_order(i)).collect();
        orders.sort_unstable();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        // -1 lies in H and acts trivially on the line, so H has two orbits of size 3
        assert_eq!(h.orbits().iter().map(|o| o.len()).collect::<Vec<_>>(), vec![3, 3]);
    }

    #[test]
    fn normaliser_orders() {
        for (p, order) in [(3, 8), (5, 12), (7, 16)] {
            let n = torus_normalizer(field(p, 1)).unwrap();
            assert_eq!(n.order(), order);
            assert_eq!(n.is_transitive(), p % 4 == 3);
        }
        assert!(torus_normalizer(field(2, 2)).is_err());
    }

    #[test]
    fn case_mismatch() {
        let a = Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(build_ai(AiCase::P2, field(3, 1), &a, 0), Err(Error::Hypothesis(_))));
        assert!(matches!(build_ai(AiCase::Q1Mod4, field(7, 1), &a, 0), Err(Error::Hypothesis(_))));
        assert!(matches!(build_ai(AiCase::Q3Mod4, field(5, 1), &a, 0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn q3_stabiliser_is_t0() {
        let a = Gcm::new(vec![vec![2, -3, 0], vec![-3, 2, -2], vec![0, -2, 2]]).unwrap();
        let g = build_ai(AiCase::Q3Mod4, field(3, 1), &a, 1).unwrap();
        assert_eq!(g.order(), 4 * 8);
        assert!(g.is_transitive());
        let stab = g.point_stabilizer(0);
        assert_eq!(stab.order(), 8);
        for l in stab.labels().unwrap() {
            assert!(l.mats[0].b == 0 && l.mats[0].c == 0, "stabiliser element {l:?} is not diagonal");
        }
    }
}
