use super::require;
use crate::coxeter::{nerve_edges, Gcm};
use crate::error::Result;

/// Exhaustive search is used up to this many generators.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSubgroupReport {
    /// An induced cycle of length at least 5 in the nerve, in cyclic order.
    pub cycle: Option<Vec<usize>>,
    pub exhaustive: bool,
    /// Search nodes used.
    pub nodes: u64,
    /// Graph-product presentation over the cycle.
    pub presentation: Option<String>,
}

fn is_induced_cycle(adj: &[Vec<bool>], path: &[usize]) -> bool {
    let k = path.len();
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let cyclic = b == a + 1 || (a == 0 && b == k - 1);
            adj[path[a]][path[b]] == cyclic
        })
    })
}

/// Induced cycle of length at least `min_len` in the graph, preferring the
/// smallest start vertex and lexicographically first extension. The search
/// stops after `budget` extensions; the flag says whether it was exhaustive.
pub fn find_induced_cycle(adj: &[Vec<bool>], min_len: usize, budget: u64) -> (Option<Vec<usize>>, bool, u64) {
    let n = adj.len();
    let mut nodes = 0u64;
    fn extend(
        adj: &[Vec<bool>],
        path: &mut Vec<usize>,
        min_len: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<Option<Vec<usize>>> {
        let start = path[0];
        let last = *path.last().unwrap();
        for v in start + 1..adj.len() {
            if !adj[last][v] || path.contains(&v) {
                continue;
            }
            // v must not be adjacent to any interior path vertex other than `last`
            let chordless = path.len() < 2 || path[1..path.len() - 1].iter().all(|&u| !adj[u][v]);
            if !chordless {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            path.push(v);
            if path.len() >= min_len && adj[v][start] && is_induced_cycle(adj, path) {
                return Some(Some(path.clone()));
            }
            if !(adj[v][start] && path.len() > 2) {
                match extend(adj, path, min_len, nodes, budget) {
                    Some(Some(c)) => return Some(Some(c)),
                    None => return None,
                    Some(None) => {}
                }
            }
            path.pop();
        }
        Some(None)
    }
    for s in 0..n {
        let mut path = vec![s];
        match extend(adj, &mut path, min_len, &mut nodes, budget) {
            Some(Some(c)) => return (Some(c), true, nodes),
            None => return (None, false, nodes),
            Some(None) => {}
        }
    }
    (None, true, nodes)
}

/// Looks for a full cycle of length at least 5 in the nerve of a right-angled
/// Weyl group; over it the lattice contains the graph product of the `A_i`.
pub fn surface_subgroup_hypothesis(a: &Gcm, orders: Option<&[usize]>, budget: u64) -> Result<SurfaceSubgroupReport> {
    let m = a.coxeter_matrix();
    require(m.is_right_angled(), "Weyl group is not right-angled")?;
    let n = a.n();
    let mut adj = vec![vec![false; n]; n];
    for (i, j) in nerve_edges(&m) {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let budget = if n <= EXHAUSTIVE_LIMIT { u64::MAX } else { budget };
    let (cycle, exhaustive, nodes) = find_induced_cycle(&adj, 5, budget);
    let presentation = cycle.as_ref().map(|c| graph_product_presentation(c, orders));
    Ok(SurfaceSubgroupReport { cycle, exhaustive, nodes, presentation })
}

/// `< x_i | x_i^{m_i}, [x_i, x_j] for cyclically adjacent i, j >`, with
/// generators named by their one-based index.
fn graph_product_presentation(cycle: &[usize], orders: Option<&[usize]>) -> String {
    let gens: Vec<String> = cycle.iter().map(|&i| format!("x{}", i + 1)).collect();
    let mut rels = Vec::new();
    if let Some(o) = orders {
        for &i in cycle {
            rels.push(format!("x{0}^{1}", i + 1, o[i]));
        }
    }
    for k in 0..cycle.len() {
        let (i, j) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        rels.push(format!("[x{}, x{}]", i.min(j) + 1, i.max(j) + 1));
    }
    format!("< {} | {} >", gens.join(", "), rels.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_gcm;

    fn pentagon_gcm(n: usize) -> Gcm {
        let rows: Vec<String> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            "2"
                        } else if (i + 1) % n == j || (j + 1) % n == i {
                            "0"
                        } else {
                            "-2"
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        parse_gcm(&rows.join("; ")).unwrap()
    }

    #[test]
    fn pentagon_has_a_cycle() {
        let r = surface_subgroup_hypothesis(&pentagon_gcm(5), Some(&[5; 5]), 1000).unwrap();
        assert_eq!(r.cycle, Some(vec![0, 1, 2, 3, 4]));
        assert!(r.exhaustive);
        assert_eq!(
            r.presentation.unwrap(),
            "< x1, x2, x3, x4, x5 | x1^5, x2^5, x3^5, x4^5, x5^5, [x1, x2], [x2, x3], [x3, x4], [x4, x5], [x1, x5] >"
        );
    }

    #[test]
    fn no_edges_no_cycle() {
        let a = parse_gcm("2 -2 -2; -2 2 -2; -2 -2 2").unwrap();
        let r = surface_subgroup_hypothesis(&a, None, 1000).unwrap();
        assert_eq!(r.cycle, None);
        assert!(r.exhaustive);
    }

    #[test]
    fn square_is_too_short() {
        assert_eq!(surface_subgroup_hypothesis(&pentagon_gcm(4), None, 1000).unwrap().cycle, None);
    }

    #[test]
    fn chords_are_avoided() {
        // hexagon with the chord 0-3: only induced cycles are two squares
        let mut adj = vec![vec![false; 6]; 6];
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)] {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        assert_eq!(find_induced_cycle(&adj, 5, u64::MAX).0, None);
        adj[0][3] = false;
        adj[3][0] = false;
        assert_eq!(find_induced_cycle(&adj, 5, u64::MAX).0, Some(vec![0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn rejects_non_right_angled() {
        let a = parse_gcm("2 -1; -1 2").unwrap();
        assert!(surface_subgroup_hypothesis(&a, None, 10).is_err());
    }
}
