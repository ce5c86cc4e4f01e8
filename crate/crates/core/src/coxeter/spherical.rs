use std::collections::HashMap;

use super::{subset_elements, subset_label, CoxeterMatrix, Subset, INFINITY};

/// Connected components of the Coxeter diagram restricted to `s` (edges `m >= 3`).
pub fn coxeter_components(m: &CoxeterMatrix, s: Subset) -> Vec<Subset> {
    components(s, |i, j| m.m(i, j) != 2)
}

fn components(s: Subset, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Subset> {
    let mut left = s;
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp: Subset = 1 << start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in subset_elements(s) {
                if comp >> j & 1 == 0 && adjacent(i, j) {
                    comp |= 1 << j;
                    stack.push(j);
                }
            }
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// Finite type name (`A3`, `B2`, `D4`, `E6`, `F4`, `G2`, ...) of a connected
/// diagram, or `None` if the component generates an infinite group.
pub fn component_type(m: &CoxeterMatrix, comp: Subset) -> Option<String> {
    let v = subset_elements(comp);
    let k = v.len();
    if k == 1 {
        return Some("A1".into());
    }
    let mut edges = Vec::new();
    for (x, &i) in v.iter().enumerate() {
        for (y, &j) in v.iter().enumerate().skip(x + 1) {
            let l = m.m(i, j);
            if l == INFINITY {
                return None;
            }
            if l != 2 {
                edges.push((x, y, l));
            }
        }
    }
    if edges.len() != k - 1 {
        return None;
    }
    if k == 2 {
        return Some(match edges[0].2 {
            3 => "A2".into(),
            4 => "B2".into(),
            6 => "G2".into(),
            l => format!("I2({l})"),
        });
    }
    if edges.iter().any(|e| e.2 > 4) {
        return None;
    }
    let mut deg = vec![0; k];
    for &(x, y, _) in &edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let fours: Vec<_> = edges.iter().filter(|e| e.2 == 4).collect();
    if fours.len() > 1 || deg.iter().any(|&d| d > 3) {
        return None;
    }
    let branch: Vec<usize> = (0..k).filter(|&x| deg[x] == 3).collect();
    if fours.len() == 1 {
        if !branch.is_empty() {
            return None;
        }
        let (x, y, _) = *fours[0];
        if deg[x] == 1 || deg[y] == 1 {
            return Some(format!("B{k}"));
        }
        return (k == 4).then(|| "F4".into());
    }
    match branch.len() {
        0 => Some(format!("A{k}")),
        1 => {
            let c = branch[0];
            let mut arms: Vec<usize> = edges
                .iter()
                .filter_map(|&(x, y, _)| {
                    if x == c {
                        Some(y)
                    } else if y == c {
                        Some(x)
                    } else {
                        None
                    }
                })
                .map(|start| arm_length(&edges, c, start))
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Some(format!("D{k}")),
                (1, 2, 2) => Some("E6".into()),
                (1, 2, 3) => Some("E7".into()),
                (1, 2, 4) => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(edges: &[(usize, usize, u32)], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = edges.iter().find_map(|&(x, y, _)| {
            if x == cur && y != prev {
                Some(y)
            } else if y == cur && x != prev {
                Some(x)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

pub fn is_spherical(m: &CoxeterMatrix, s: Subset) -> bool {
    coxeter_components(m, s).into_iter().all(|c| component_type(m, c).is_some())
}

/// All spherical subsets ordered by size, then by sorted element list.
#[derive(Debug, Clone)]
pub struct SphericalLattice {
    subsets: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl SphericalLattice {
    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    pub fn position(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// Strict containments `(J', J)` with `J' < J`.
    pub fn containments(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for &big in &self.subsets {
            for &small in &self.subsets {
                if small != big && small & big == small {
                    out.push((small, big));
                }
            }
        }
        out
    }

    pub fn maximal(&self) -> Vec<Subset> {
        self.subsets.iter().copied().filter(|&s| !self.subsets.iter().any(|&t| t != s && t & s == s)).collect()
    }
}

pub fn spherical_subsets(m: &CoxeterMatrix) -> SphericalLattice {
    let n = m.n();
    let mut all = vec![0 as Subset];
    let mut level = vec![0 as Subset];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &s in &level {
            let start = if s == 0 { 0 } else { 32 - s.leading_zeros() as usize };
            for k in start..n {
                let t = s | 1 << k;
                if is_spherical(m, t) {
                    next.push(t);
                }
            }
        }
        all.extend(&next);
        level = next;
    }
    all.sort_by_key(|&s| (s.count_ones(), subset_elements(s)));
    let index = all.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    SphericalLattice { subsets: all, index }
}

/// Edges `{i, j}` with `m_ij < oo`, `i < j`.
pub fn nerve_edges(m: &CoxeterMatrix) -> Vec<(usize, usize)> {
    let n = m.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !m.is_infinite(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeProduct {
    Decomposition(Vec<Subset>),
    /// The nerve is connected (`N = 1`).
    SingleComponent(Subset),
    NonSpherical {
        components: Vec<Subset>,
        offending: Subset,
    },
}

impl FreeProduct {
    pub fn describe(&self) -> String {
        match self {
            FreeProduct::Decomposition(c) => {
                format!("components {}", c.iter().map(|&s| subset_label(s)).collect::<Vec<_>>().join(" "))
            }
            FreeProduct::SingleComponent(s) => format!("nerve is connected: single component {}", subset_label(*s)),
            FreeProduct::NonSpherical { offending, .. } => {
                format!("component {} is not spherical", subset_label(*offending))
            }
        }
    }
}

/// Connected components of the nerve graph, accepted when there are at least
/// two and each is spherical.
pub fn free_product_decomposition(m: &CoxeterMatrix) -> FreeProduct {
    let comps = components(m.full_set(), |i, j| !m.is_infinite(i, j));
    if comps.len() < 2 {
        return FreeProduct::SingleComponent(comps[0]);
    }
    if let Some(&bad) = comps.iter().find(|&&c| !is_spherical(m, c)) {
        return FreeProduct::NonSpherical { components: comps, offending: bad };
    }
    FreeProduct::Decomposition(comps)
}
