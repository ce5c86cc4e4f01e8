use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::ra::one_based;
use super::require;
use crate::algebra::FieldCtx;
use crate::cog::{
    build_chamber_scwol, first_betti_number, morphism_problems, CheckTally, CoveringCertificate, Scwol, Verdict,
    Witness,
};
use crate::coxeter::{
    free_product_decomposition, index_ratio, spherical_subsets, subset_label, FreeProduct, Gcm, Subset,
};
use crate::error::{Error, Result};
use crate::residues::{residue_for, residue_type_name, star_poset, ResidueKind, StarPoset};

/// `1 - sum_k M_k - M + N M` with `M = prod m_k` and `M_k = M / m_k`.
pub fn free_rank_formula(m: &[u128]) -> Result<i128> {
    let total = m.iter().try_fold(1u128, |acc, &x| acc.checked_mul(x)).ok_or(Error::Overflow)?;
    let total = i128::try_from(total).map_err(|_| Error::Overflow)?;
    let copies: i128 = m.iter().map(|&x| total / x as i128).sum();
    let n = m.len() as i128;
    n.checked_mul(total).map(|nm| 1 - copies - total + nm).ok_or(Error::Overflow)
}

/// The glued complex `Y`: chambers `0..M` (mixed radix in the chamber indices
/// of the factors, first factor fastest), then for each factor `k` its
/// `M_k` copies of the star of `J_k`.
#[derive(Debug, Clone)]
pub struct FpGeometry {
    pub scwol: Scwol,
    pub target: Scwol,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub certificate: CoveringCertificate,
    /// First Betti number of `Y`.
    pub free_rank: usize,
}

#[derive(Debug, Clone)]
pub struct FpOutcome {
    pub components: Vec<Subset>,
    pub residue_types: Vec<String>,
    pub residue_kinds: Vec<ResidueKind>,
    /// `m_k`: chambers in a residue of type `J_k`.
    pub m: Vec<u128>,
    /// `M`: chamber orbits.
    pub chambers: u128,
    /// `M_k = M / m_k`.
    pub copies: Vec<u128>,
    pub formula_rank: i128,
    /// `None` when some factor has no implemented residue geometry.
    pub geometry: Option<FpGeometry>,
}

impl FpOutcome {
    pub fn is_geometric(&self) -> bool {
        self.geometry.is_some()
    }
}

/// Components of the nerve, checked against an optional expected partition.
pub fn fp_hypotheses(a: &Gcm, partition: Option<&[Subset]>) -> Result<Vec<Subset>> {
    let km = a.km_condition();
    require(km.holds, format!("Cartan condition fails on pairs {:?}", one_based(&km.witnesses)))?;
    let comps = match free_product_decomposition(&a.coxeter_matrix()) {
        FreeProduct::Decomposition(c) => c,
        other => return Err(Error::Hypothesis(other.describe())),
    };
    if let Some(p) = partition {
        let mut want = p.to_vec();
        want.sort_unstable();
        let mut have = comps.clone();
        have.sort_unstable();
        require(
            want == have,
            format!(
                "partition {} differs from the nerve components {}",
                p.iter().map(|&s| subset_label(s)).collect::<Vec<_>>().join(" "),
                comps.iter().map(|&s| subset_label(s)).collect::<Vec<_>>().join(" ")
            ),
        )?;
    }
    Ok(comps)
}

struct Glued {
    scwol: Scwol,
    /// Per edge: the factor, and the poset relation `(smaller, larger)` it realises.
    relation: Vec<(usize, usize, usize)>,
    /// Per vertex outside the chambers: `(factor, copy, poset element)`.
    copy_of: Vec<Option<(usize, usize, usize)>>,
}

fn glue(stars: &[StarPoset], m: &[usize]) -> Glued {
    let n = m.len();
    let total: usize = m.iter().product();
    let mut types = vec![0 as Subset; total];
    let mut names: Vec<String> = (0..total)
        .map(|c| {
            let mut r = c;
            let digits: Vec<String> = m
                .iter()
                .map(|&mk| {
                    let d = r % mk;
                    r /= mk;
                    d.to_string()
                })
                .collect();
            format!("c{}", digits.join("."))
        })
        .collect();
    let mut copy_of = vec![None; total];
    let mut stride = vec![1usize; n];
    for k in 1..n {
        stride[k] = stride[k - 1] * m[k - 1];
    }
    let mut edges_spec = Vec::new();
    for k in 0..n {
        let star = &stars[k];
        let copies = total / m[k];
        for copy in 0..copies {
            // chamber with digit k = 0 and the other digits from `copy`
            let mut rest = copy;
            let mut base = 0;
            for j in 0..n {
                if j != k {
                    base += (rest % m[j]) * stride[j];
                    rest /= m[j];
                }
            }
            let mut node = vec![usize::MAX; star.len()];
            for (e, &(t, label)) in star.elements().iter().enumerate() {
                node[e] = if t == 0 {
                    base + label * stride[k]
                } else {
                    types.push(t);
                    names.push(format!("Z{}.{copy}:{}#{label}", k + 1, subset_label(t)));
                    copy_of.push(Some((k, copy, e)));
                    types.len() - 1
                };
            }
            for &(x, y) in star.relations() {
                edges_spec.push((node[x], node[y], (k, x, y)));
            }
        }
    }
    let mut scwol = Scwol::new(types, names);
    let mut index = HashMap::new();
    let mut relation = Vec::new();
    for &(i, t, rel) in &edges_spec {
        index.insert((i, t), scwol.add_edge(i, t));
        relation.push(rel);
    }
    for &(x, y, _) in &edges_spec {
        for &(y2, z, _) in &edges_spec {
            if y2 == y {
                if let Some(&xz) = index.get(&(x, z)) {
                    scwol.set_composite(index[&(y, z)], index[&(x, y)], xz);
                }
            }
        }
    }
    Glued { scwol, relation, copy_of }
}

#[allow(clippy::too_many_arguments)]
fn certify(
    a: &Gcm,
    q: u64,
    comps: &[Subset],
    stars: &[StarPoset],
    glued: &Glued,
    target: &Scwol,
    vertex_map: &[usize],
    edge_map: &[usize],
) -> Result<CoveringCertificate> {
    let y = &glued.scwol;
    let cm = a.coxeter_matrix();
    let mut witnesses: Vec<Witness> =
        morphism_problems(y, target, vertex_map, edge_map).into_iter().map(Witness::Structure).collect();
    let chambers = (0..y.vertex_count()).filter(|&v| glued.copy_of[v].is_none()).count();
    for c in 0..chambers {
        for (k, &jk) in comps.iter().enumerate() {
            let hits = y.edges_from(c).iter().filter(|&&e| y.vertex_type(y.terminal(e)) == jk).count();
            if hits != 1 {
                witnesses.push(Witness::Structure(format!(
                    "chamber {} lies in {hits} copies of the star of factor {}",
                    y.name(c),
                    k + 1
                )));
            }
        }
    }
    // each copy realises every element and relation of its star exactly once
    let mut seen: HashMap<(usize, usize), (Vec<usize>, usize)> = HashMap::new();
    for v in 0..y.vertex_count() {
        if let Some((k, copy, e)) = glued.copy_of[v] {
            seen.entry((k, copy)).or_insert_with(|| (vec![0; stars[k].len()], 0)).0[e] += 1;
        }
    }
    for (a, &(k, _, _)) in glued.relation.iter().enumerate() {
        let t = y.terminal(a);
        if let Some((_, copy, _)) = glued.copy_of[t] {
            seen.entry((k, copy)).or_insert_with(|| (vec![0; stars[k].len()], 0)).1 += 1;
        }
    }
    let mut keys: Vec<_> = seen.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let (counts, rels) = &seen[&key];
        let star = &stars[key.0];
        let bad = star.elements().iter().enumerate().any(|(e, &(t, _))| counts[e] != usize::from(t != 0));
        if bad || *rels != star.relations().len() {
            witnesses.push(Witness::Structure(format!(
                "copy {} of the star of factor {} is not isomorphic to the star",
                key.1,
                key.0 + 1
            )));
        }
    }

    let relations: Vec<HashSet<(usize, usize)>> =
        stars.iter().map(|s| s.relations().iter().copied().collect()).collect();
    let mut tallies = Vec::new();
    for sigma in 0..y.vertex_count() {
        let Some((k, _, se)) = glued.copy_of[sigma] else { continue };
        let fs = vertex_map[sigma];
        let big = y.vertex_type(sigma);
        for b in target.edges_into(fs) {
            let small = target.vertex_type(target.initial(b));
            let fibre: Vec<usize> = y.edges_into(sigma).into_iter().filter(|&e| edge_map[e] == b).collect();
            let mut images = HashSet::new();
            let mut injective = true;
            for &e in &fibre {
                let (kk, x, yy) = glued.relation[e];
                if kk != k || yy != se || !relations[k].contains(&(x, yy)) {
                    witnesses.push(Witness::Structure(format!(
                        "edge {}->{} is not an inclusion of residues",
                        y.name(y.initial(e)),
                        y.name(sigma)
                    )));
                }
                if !images.insert(x) {
                    injective = false;
                    witnesses.push(Witness::Collision { sigma, b, first: (e, 0), second: (e, 0) });
                }
            }
            let target_index = usize::try_from(index_ratio(&cm, big, small, q)?).map_err(|_| Error::Overflow)?;
            if images.len() < target_index {
                witnesses.push(Witness::NotSurjective { sigma, b, image: images.len(), target_index });
            }
            tallies.push(CheckTally {
                sigma,
                b,
                fibres: fibre.len(),
                domain: fibre.len(),
                image: images.len(),
                target_index,
                bijective: injective && images.len() == target_index,
            });
        }
    }
    let verdict =
        if witnesses.is_empty() && tallies.iter().all(|t| t.bijective) { Verdict::Pass } else { Verdict::Fail };
    Ok(CoveringCertificate { verdict, tallies, witnesses })
}

/// Lattice with trivial local groups and `M` chamber orbits when the Weyl
/// group is a free product of finite special subgroups.
///
/// When every factor has an implemented residue geometry the quotient is
/// built explicitly and the covering is checked by residue inclusions (all
/// local groups are trivial, so each coset map is a map between residues);
/// otherwise only the counts are reported.
pub fn build_fp(a: &Gcm, field: Arc<FieldCtx>, partition: Option<&[Subset]>, cap: usize) -> Result<FpOutcome> {
    let comps = fp_hypotheses(a, partition)?;
    let cm = a.coxeter_matrix();
    let q = field.q() as u64;
    let mut residues = Vec::new();
    for &j in &comps {
        residues.push(residue_for(a, field.clone(), j)?);
    }
    let m: Vec<u128> = residues.iter().map(|r| r.chamber_count() as u128).collect();
    let chambers = m.iter().try_fold(1u128, |acc, &x| acc.checked_mul(x)).ok_or(Error::Overflow)?;
    let copies: Vec<u128> = m.iter().map(|&x| chambers / x).collect();
    let formula_rank = free_rank_formula(&m)?;
    let mut out = FpOutcome {
        residue_types: comps.iter().map(|&j| residue_type_name(&cm, j)).collect(),
        residue_kinds: residues.iter().map(|r| r.kind()).collect(),
        components: comps.clone(),
        m,
        chambers,
        copies,
        formula_rank,
        geometry: None,
    };
    if !residues.iter().all(|r| r.is_geometric()) {
        return Ok(out);
    }
    let stars: Vec<StarPoset> = residues.iter().map(star_poset).collect::<Result<_>>()?;
    let size: u128 = chambers + stars.iter().zip(&out.copies).map(|(s, &c)| c * s.len() as u128).sum::<u128>();
    if size > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let mk: Vec<usize> = out.m.iter().map(|&x| x as usize).collect();
    let glued = glue(&stars, &mk);
    let lattice = spherical_subsets(&cm);
    let target = build_chamber_scwol(&lattice);
    let y = &glued.scwol;
    let vertex_map: Vec<usize> = (0..y.vertex_count())
        .map(|v| {
            lattice
                .position(y.vertex_type(v))
                .ok_or_else(|| Error::Internal(format!("type {} is not spherical", subset_label(y.vertex_type(v)))))
        })
        .collect::<Result<_>>()?;
    let target_edges: HashMap<(usize, usize), usize> =
        target.edges().iter().enumerate().map(|(b, &e)| (e, b)).collect();
    let edge_map: Vec<usize> = y
        .edges()
        .iter()
        .map(|&(i, t)| {
            target_edges
                .get(&(vertex_map[i], vertex_map[t]))
                .copied()
                .ok_or_else(|| Error::Internal("edge between incomparable types".into()))
        })
        .collect::<Result<_>>()?;
    let certificate = certify(a, q, &comps, &stars, &glued, &target, &vertex_map, &edge_map)?;
    let free_rank = first_betti_number(y)?;
    out.geometry = Some(FpGeometry { scwol: glued.scwol, target, vertex_map, edge_map, certificate, free_rank });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_ORDER_CAP;
    use crate::coxeter::parse_gcm;

    fn run(cartan: &str, p: u64) -> FpOutcome {
        let a = parse_gcm(cartan).unwrap();
        build_fp(&a, Arc::new(FieldCtx::new(p, 1).unwrap()), None, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn formula_values() {
        assert_eq!(free_rank_formula(&[3, 3]).unwrap(), 4);
        assert_eq!(free_rank_formula(&[21, 3]).unwrap(), 40);
        assert_eq!(free_rank_formula(&[3, 3, 3]).unwrap(), 28);
    }

    #[test]
    fn two_lines_give_k33() {
        let o = run("2 -2; -2 2", 2);
        assert_eq!((o.m.clone(), o.chambers), (vec![3, 3], 9));
        let g = o.geometry.unwrap();
        assert!(g.certificate.passed(), "{:?}", g.certificate.witnesses);
        assert_eq!(g.free_rank, 4);
        assert_eq!(g.scwol.vertex_count(), 15);
    }

    #[test]
    fn plane_and_line() {
        let o = run("2 -1 -2; -1 2 -2; -2 -2 2", 2);
        assert_eq!((o.m.clone(), o.copies.clone()), (vec![21, 3], vec![3, 21]));
        let g = o.geometry.unwrap();
        assert!(g.certificate.passed());
        assert_eq!(g.free_rank as i128, o.formula_rank);
        assert_eq!(o.formula_rank, 40);
    }

    #[test]
    fn partition_must_match() {
        let a = parse_gcm("2 -2 -2; -2 2 -2; -2 -2 2").unwrap();
        let f = Arc::new(FieldCtx::new(2, 1).unwrap());
        assert!(build_fp(&a, f.clone(), Some(&[0b011, 0b100]), DEFAULT_ORDER_CAP).is_err());
        assert!(build_fp(&a, f, Some(&[0b100, 0b010, 0b001]), DEFAULT_ORDER_CAP).is_ok());
    }

    #[test]
    fn connected_nerve_is_rejected() {
        let a = parse_gcm("2 0; 0 2").unwrap();
        let f = Arc::new(FieldCtx::new(2, 1).unwrap());
        assert!(matches!(build_fp(&a, f, None, DEFAULT_ORDER_CAP), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn hexagon_factor_counts_only() {
        let o = run("2 -1 -2; -3 2 -2; -2 -2 2", 2);
        assert!(!o.is_geometric());
        assert_eq!(o.m, vec![189, 3]);
        assert_eq!(o.formula_rank, free_rank_formula(&[189, 3]).unwrap());
    }
}
