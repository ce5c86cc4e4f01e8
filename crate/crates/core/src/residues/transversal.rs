use std::collections::HashMap;

use crate::algebra::group::is_transversal;
use crate::algebra::{FiniteActionGroup, Perm};
use crate::error::{Error, Result};

/// Given `U <= V <= H`, a transversal `c` of `H/U` and a transversal `a` of
/// `H/V`, returns for each `a_j` the set `{a_j^-1 c_i : c_i U in a_j V}`, which
/// is a transversal of `V/U`.
pub fn transversal_from_cosets(
    h: &FiniteActionGroup,
    v: &FiniteActionGroup,
    u: &FiniteActionGroup,
    c: &[Perm],
    a: &[Perm],
) -> Result<Vec<Vec<Perm>>> {
    if !u.is_subgroup_of(v) || !v.is_subgroup_of(h) {
        return Err(Error::NotSubgroup("expected a chain U <= V <= H".into()));
    }
    if !is_transversal(h, u, c) {
        return Err(Error::Invalid("not a transversal of H/U".into()));
    }
    if !is_transversal(h, v, a) {
        return Err(Error::Invalid("not a transversal of H/V".into()));
    }
    // left coset a_j V of every element of H
    let mut coset: HashMap<Perm, usize> = HashMap::with_capacity(h.order());
    for (j, aj) in a.iter().enumerate() {
        for x in v.elements() {
            coset.insert(aj.compose(x), j);
        }
    }
    let inverses: Vec<Perm> = a.iter().map(Perm::inverse).collect();
    let mut out = vec![Vec::new(); a.len()];
    for ci in c {
        let j = coset[ci];
        out[j].push(inverses[j].compose(ci));
    }
    Ok(out)
}

pub fn transversals_are_valid(v: &FiniteActionGroup, u: &FiniteActionGroup, sets: &[Vec<Perm>]) -> bool {
    sets.iter().all(|b| is_transversal(v, u, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sl2_group, FieldCtx};
    use std::sync::Arc;

    fn reps(g: &FiniteActionGroup, sub: &FiniteActionGroup) -> Vec<Perm> {
        g.coset_transversal(sub).unwrap().into_iter().map(|i| g.element(i).clone()).collect()
    }

    #[test]
    fn sl2_three_chain() {
        let h = sl2_group(Arc::new(FieldCtx::new(3, 1).unwrap())).unwrap();
        assert_eq!(h.order(), 24);
        let v = h.point_stabilizer(0);
        let far = 1;
        let u = v.intersection(&h.point_stabilizer(far)).unwrap();
        let b = transversal_from_cosets(&h, &v, &u, &reps(&h, &u), &reps(&h, &v)).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|s| s.len() == v.order() / u.order()));
        assert!(transversals_are_valid(&v, &u, &b));
    }

    #[test]
    fn degenerate_chains() {
        let h = sl2_group(Arc::new(FieldCtx::new(2, 1).unwrap())).unwrap();
        let v = h.point_stabilizer(0);
        let b = transversal_from_cosets(&h, &v, &v, &reps(&h, &v), &reps(&h, &v)).unwrap();
        assert!(b.iter().all(|s| s.len() == 1 && v.contains(&s[0])));
        let u = v.point_stabilizer(1);
        let c = reps(&h, &u);
        let b = transversal_from_cosets(&h, &h, &u, &c, &[Perm::identity(h.degree())]).unwrap();
        assert_eq!(b, vec![c]);
    }

    #[test]
    fn rejects_bad_input() {
        let h = sl2_group(Arc::new(FieldCtx::new(2, 1).unwrap())).unwrap();
        let v = h.point_stabilizer(0);
        let id = vec![Perm::identity(h.degree())];
        assert!(transversal_from_cosets(&h, &v, &v, &id, &id).is_err());
        assert!(transversal_from_cosets(&v, &h, &v, &id, &id).is_err());
    }
}
