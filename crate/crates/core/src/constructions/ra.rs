use std::sync::Arc;

use super::require;
use crate::algebra::{ai_generators, AiCase, FieldCtx, FiniteActionGroup, Fq, LeviElement, LeviModel, Mat2};
use crate::cog::{
    verify_covering, CogMorphism, ComplexOfGroups, CoveringCertificate, Scwol, TargetComplex, TargetResidueFamily,
};
use crate::coxeter::{subset_elements, subset_label, Gcm, Subset};
use crate::error::{Error, Result};

/// One of the direct conditions on the local groups: an index or an intersection order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: String,
    pub expected: u128,
    pub actual: u128,
}

impl ConditionCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone)]
pub struct RaChamberTransitive {
    pub case: AiCase,
    pub target: TargetResidueFamily,
    pub complex: ComplexOfGroups,
    pub morphism: CogMorphism<LeviElement>,
    pub conditions: Vec<ConditionCheck>,
    pub certificate: CoveringCertificate,
}

impl RaChamberTransitive {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(ConditionCheck::holds)
    }

    /// Whether the direct conditions and the generic verifier agree.
    pub fn agree(&self) -> bool {
        self.conditions_hold() == self.certificate.passed()
    }
}

/// Hypotheses of the chamber-transitive construction.
pub fn ra_chamber_transitive_hypotheses(a: &Gcm, f: &FieldCtx) -> Result<AiCase> {
    require(a.n() >= 2, "rank at least 2")?;
    let km = a.km_condition();
    require(km.holds, format!("Cartan condition fails on pairs {:?}", one_based(&km.witnesses)))?;
    let m = a.coxeter_matrix();
    require(m.is_right_angled(), "Weyl group is not right-angled")?;
    require(m.is_weyl_infinite(), "Weyl group is finite")?;
    let case = AiCase::for_field(f);
    require(case != AiCase::Q1Mod4, format!("q = {} is 1 mod 4; no chamber-transitive construction", f.q()))?;
    Ok(case)
}

pub(crate) fn one_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
}

fn model_of(target: &TargetResidueFamily, j: Subset) -> Result<(usize, &LeviModel)> {
    let v = target.vertex_of(j).ok_or_else(|| Error::Internal(format!("no vertex of type {}", subset_label(j))))?;
    Ok((v, target.model(v)))
}

/// Torus coordinates of a diagonal element of a Levi model, if it is diagonal.
fn as_torus(model: &LeviModel, x: &LeviElement) -> Option<Vec<Fq>> {
    let mut t = x.torus.clone();
    for (k, &j) in model.j().iter().enumerate() {
        let m = x.mats[k];
        if m.b != 0 || m.c != 0 {
            return None;
        }
        t[j] = m.d;
    }
    (model.from_torus(&t) == *x).then_some(t)
}

/// `A_J = <A_j : j in J>` for every spherical `J`, with `A_{} = cap_i A_i`
/// computed inside the torus.
pub fn ra_local_groups(target: &TargetResidueFamily, case: AiCase, cap: usize) -> Result<Vec<FiniteActionGroup>> {
    let s = target.scwol();
    let mut groups: Vec<Option<FiniteActionGroup>> = vec![None; s.vertex_count()];
    for v in 0..s.vertex_count() {
        let j = s.vertex_type(v);
        if j == 0 {
            continue;
        }
        let model = target.model(v);
        let mut gens = Vec::new();
        for i in subset_elements(j) {
            for g in ai_generators(case, model, i)? {
                if !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        groups[v] = Some(model.generate(&gens, cap)?);
    }
    let (v0, m0) = model_of(target, 0)?;
    let n = m0.n();
    let mut common: Vec<Vec<Fq>> = Vec::new();
    let (w, first) = model_of(target, 1)?;
    let a1 = groups[w].as_ref().unwrap();
    for k in 0..a1.order() {
        let x = a1.label(k).unwrap();
        let Some(t) = as_torus(first, x) else { continue };
        let everywhere = (0..n).all(|i| {
            let (u, mi) = model_of(target, 1 << i).unwrap();
            groups[u].as_ref().unwrap().contains(&mi.perm(&mi.from_torus(&t)))
        });
        if everywhere {
            common.push(t);
        }
    }
    let gens: Vec<LeviElement> = common.iter().map(|t| m0.from_torus(t)).filter(|x| *x != m0.identity()).collect();
    groups[v0] = Some(if gens.is_empty() {
        FiniteActionGroup::trivial(m0.degree(), m0.chamber_count(), Some(m0.identity()))
    } else {
        m0.generate(&gens, cap)?
    });
    Ok(groups.into_iter().map(Option::unwrap).collect())
}

/// The simple complex over the chamber scwol with the given local groups and
/// inclusions, and the morphism to the target over the identity.
pub fn ra_chamber_transitive_assemble(
    target: &TargetResidueFamily,
    groups: Vec<FiniteActionGroup>,
) -> Result<(ComplexOfGroups, CogMorphism<LeviElement>)> {
    let s = target.scwol().clone();
    let complex = {
        let gs = groups.clone();
        ComplexOfGroups::from_transport(s.clone(), groups, |a, g| {
            let (i, t) = s.edge(a);
            let x = gs[i].label(g).ok_or_else(|| Error::Internal("unlabelled group".into()))?;
            let mt = target.model(t);
            Ok(mt.perm(&mt.embed(target.model(i), x)?))
        })?
    };
    let morphism = CogMorphism {
        vertex_map: (0..s.vertex_count()).collect(),
        edge_map: (0..s.edge_count()).collect(),
        local_maps: complex.groups().iter().map(|g| g.labels().unwrap().to_vec()).collect(),
        edge_elements: (0..s.edge_count()).map(|a| target.identity(s.terminal(a))).collect(),
    };
    Ok((complex, morphism))
}

fn direct_conditions(target: &TargetResidueFamily, groups: &[FiniteActionGroup], q: u64) -> Vec<ConditionCheck> {
    let s = target.scwol();
    let mut out = Vec::new();
    for v in 0..s.vertex_count() {
        let j = s.vertex_type(v);
        for i in subset_elements(j) {
            let w = target.vertex_of(j & !(1 << i)).unwrap();
            out.push(ConditionCheck {
                name: format!("index A{}:A{}", subset_label(j), subset_label(j & !(1 << i))),
                expected: q as u128 + 1,
                actual: (groups[v].order() / groups[w].order()) as u128,
            });
        }
    }
    for v in 0..s.vertex_count() {
        let j = s.vertex_type(v);
        for w in 0..s.vertex_count() {
            let jj = s.vertex_type(w);
            if jj == j || jj & j != jj {
                continue;
            }
            let model = target.model(v);
            let stab = model.residue_stabilizer(&groups[v], jj);
            let sub = &groups[w];
            let inside = (0..sub.order()).all(|g| {
                let x = model.embed(target.model(w), sub.label(g).unwrap()).unwrap();
                stab.contains(&model.perm(&x))
            });
            out.push(ConditionCheck {
                name: format!("intersection A{} cap P{}", subset_label(j), subset_label(jj)),
                expected: sub.order() as u128,
                actual: if inside { stab.order() as u128 } else { 0 },
            });
        }
    }
    out
}

/// Chamber-transitive lattice for right-angled Weyl groups with `p = 2` or
/// `q = 3 mod 4`.
pub fn build_ra_chamber_transitive(a: &Gcm, f: Arc<FieldCtx>, cap: usize) -> Result<RaChamberTransitive> {
    let case = ra_chamber_transitive_hypotheses(a, &f)?;
    let target = TargetResidueFamily::new(f.clone(), a)?;
    let groups = ra_local_groups(&target, case, cap)?;
    let mut conditions = direct_conditions(&target, &groups, f.q() as u64);
    let (v0, m0) = model_of(&target, 0)?;
    match case {
        AiCase::P2 => {
            conditions.push(ConditionCheck {
                name: "order A{}".into(),
                expected: 1,
                actual: groups[v0].order() as u128,
            });
            let s = target.scwol();
            for v in 0..s.vertex_count() {
                let j = s.vertex_type(v);
                let product: usize =
                    subset_elements(j).iter().map(|&i| groups[target.vertex_of(1 << i).unwrap()].order()).product();
                conditions.push(ConditionCheck {
                    name: format!("direct product A{}", subset_label(j)),
                    expected: product as u128,
                    actual: groups[v].order() as u128,
                });
            }
        }
        AiCase::Q3Mod4 => {
            let t0 = m0.generate(&crate::algebra::finite::t0_generators(m0), cap)?;
            conditions.push(ConditionCheck {
                name: "A{} equals T_0".into(),
                expected: t0.order() as u128,
                actual: if t0.same_elements(&groups[v0]) { groups[v0].order() as u128 } else { 0 },
            });
        }
        AiCase::Q1Mod4 => unreachable!("rejected by the hypotheses"),
    }
    let (complex, morphism) = ra_chamber_transitive_assemble(&target, groups)?;
    let certificate = verify_covering(&complex, &target, &morphism);
    Ok(RaChamberTransitive { case, target, complex, morphism, conditions, certificate })
}

#[derive(Debug, Clone)]
pub struct RaTwoOrbit {
    pub target: TargetResidueFamily,
    pub complex: ComplexOfGroups,
    pub morphism: CogMorphism<LeviElement>,
    /// `g_i` in the Levi model of `{i}`.
    pub g: Vec<LeviElement>,
    pub certificate: CoveringCertificate,
}

pub fn ra_two_orbit_hypotheses(a: &Gcm, f: &FieldCtx) -> Result<()> {
    require(a.n() >= 2, "rank at least 2")?;
    require(f.q() % 4 == 1, format!("q = {} is not 1 mod 4", f.q()))?;
    for i in 0..a.n() {
        for j in 0..a.n() {
            require(
                i == j || a.entry(i, j).abs() >= 2,
                format!("|a_{}{}| = {} < 2", i + 1, j + 1, a.entry(i, j).abs()),
            )?;
        }
    }
    Ok(())
}

/// The first element of `SL_2(q)`, in lexicographic order, moving the base
/// chamber out of the orbit of `A_i`.
pub fn choose_g(model: &LeviModel, ai: &FiniteActionGroup, i: usize) -> Result<LeviElement> {
    let orbit = ai.orbit(0);
    for m in Mat2::sl2_elements(model.field()) {
        let x = model.in_factor(i, m)?;
        if !orbit.contains(&model.base_image(&x)) {
            return Ok(x);
        }
    }
    Err(Error::Internal("A_i is transitive on the panel".into()))
}

/// `A_i` of order `(q+1)/2` for each `i`, in the Levi model of `{i}`.
pub fn ra_two_orbit_groups(target: &TargetResidueFamily, n: usize, cap: usize) -> Result<Vec<FiniteActionGroup>> {
    (0..n)
        .map(|i| {
            let (_, model) = model_of(target, 1 << i)?;
            model.generate(&ai_generators(AiCase::Q1Mod4, model, i)?, cap)
        })
        .collect()
}

/// Two chambers glued along all their mirrors: vertices `{}#1`, `{}#2`, then
/// `{i}` for each `i`; edges `{}#1 -> {i}`, `{}#2 -> {i}` for each `i`.
pub fn ra_two_orbit_assemble(
    target: &TargetResidueFamily,
    ai: &[FiniteActionGroup],
    g: &[LeviElement],
) -> Result<(ComplexOfGroups, CogMorphism<LeviElement>)> {
    let n = ai.len();
    let mut types = vec![0, 0];
    let mut names = vec!["{}#1".to_string(), "{}#2".to_string()];
    for i in 0..n {
        types.push(1 << i);
        names.push(subset_label(1 << i));
    }
    let mut s = Scwol::new(types, names);
    let mut edge_map = Vec::new();
    let mut edge_elements = Vec::new();
    for i in 0..n {
        let b = target.edge_between(0, 1 << i).ok_or_else(|| Error::Internal("missing chamber edge".into()))?;
        let (_, mi) = model_of(target, 1 << i)?;
        for l in 0..2 {
            s.add_edge(l, 2 + i);
            edge_map.push(b);
            edge_elements.push(if l == 0 { mi.identity() } else { g[i].clone() });
        }
    }
    let (v0, m0) = model_of(target, 0)?;
    let trivial = FiniteActionGroup::trivial(m0.degree(), m0.chamber_count(), Some(m0.identity()));
    let mut groups = vec![trivial.clone(), trivial];
    groups.extend(ai.iter().cloned());
    let psi = vec![vec![0]; s.edge_count()];
    let mut vertex_map = vec![v0, v0];
    for i in 0..n {
        vertex_map.push(target.vertex_of(1 << i).unwrap());
    }
    let complex = ComplexOfGroups::new(s, groups, psi)?;
    let morphism = CogMorphism {
        vertex_map,
        edge_map,
        local_maps: complex.groups().iter().map(|g| g.labels().unwrap().to_vec()).collect(),
        edge_elements,
    };
    Ok((complex, morphism))
}

/// Lattice with two chamber orbits, transitive on panels of each type, for
/// `q = 1 mod 4` and all `|a_ij| >= 2`.
pub fn build_ra_two_orbit(a: &Gcm, f: Arc<FieldCtx>, cap: usize) -> Result<RaTwoOrbit> {
    ra_two_orbit_hypotheses(a, &f)?;
    let target = TargetResidueFamily::new(f, a)?;
    let ai = ra_two_orbit_groups(&target, a.n(), cap)?;
    let g = (0..a.n()).map(|i| choose_g(model_of(&target, 1 << i)?.1, &ai[i], i)).collect::<Result<Vec<_>>>()?;
    let (complex, morphism) = ra_two_orbit_assemble(&target, &ai, &g)?;
    let certificate = verify_covering(&complex, &target, &morphism);
    Ok(RaTwoOrbit { target, complex, morphism, g, certificate })
}
