use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::complex::ComplexOfGroups;
use super::scwol::Scwol;
use crate::algebra::{FiniteActionGroup, Perm};
use crate::coxeter::subset_elements;
use crate::error::{Error, Result};
use crate::intlinalg;

/// Number of connected components of the underlying graph.
pub fn component_count(s: &Scwol) -> usize {
    let mut parent: Vec<usize> = (0..s.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for &(i, t) in s.edges() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, t));
        if a != b {
            parent[a] = b;
        }
    }
    (0..s.vertex_count()).filter(|&v| find(&mut parent, v) == v).count()
}

/// First Betti number of the geometric realisation: the number of edges
/// outside a spanning forest, less the rank of the boundary map on the
/// 2-simplices (composable pairs).
pub fn first_betti_number(s: &Scwol) -> Result<usize> {
    let ne = s.edge_count();
    let cycle_rank = ne + component_count(s) - s.vertex_count();
    let pairs: Vec<((usize, usize), usize)> = s.composable_pairs().collect();
    if pairs.is_empty() {
        return Ok(cycle_rank);
    }
    // boundary of the 2-simplex (a, b) is a + b - ab
    let mut m = vec![vec![0i64; pairs.len()]; ne];
    for (col, &((a, b), ab)) in pairs.iter().enumerate() {
        m[a][col] += 1;
        m[b][col] += 1;
        m[ab][col] -= 1;
    }
    Ok(cycle_rank - intlinalg::rank(&m)?)
}

/// Rank of the free fundamental group of a trivial complex of groups.
pub fn free_rank_trivial(c: &ComplexOfGroups) -> Result<usize> {
    if !c.is_trivial() {
        return Err(Error::Invalid("free rank is defined here for trivial complexes only".into()));
    }
    first_betti_number(c.scwol())
}

/// A word is a sequence of (generator, exponent) letters.
pub type Word = Vec<(usize, i64)>;

fn push_letter(w: &mut Word, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((g, e));
}

pub fn concat(a: &Word, b: &Word) -> Word {
    let mut w = a.clone();
    for &(g, e) in b {
        push_letter(&mut w, g, e);
    }
    w
}

pub fn invert(a: &Word) -> Word {
    a.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{}", self.generators[g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.word_string(w)).collect();
        if rels.is_empty() {
            return write!(f, "< {} >", self.generators.join(", "));
        }
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Words for every element of `g` in the generators `gens` (indices into
/// `letters`), from a breadth-first spanning tree of the Cayley graph, together
/// with the relators read off the non-tree edges.
fn cayley_words(g: &FiniteActionGroup, gens: &[(Perm, usize)]) -> Result<(Vec<Word>, Vec<Word>)> {
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    let mut tree = HashMap::new();
    while let Some(x) = queue.pop_front() {
        for (k, (s, letter)) in gens.iter().enumerate() {
            let y = g
                .index_of(&s.compose(g.element(x)))
                .ok_or_else(|| Error::Internal("generator outside group".into()))?;
            if words[y].is_none() {
                let mut w = vec![(*letter, 1)];
                w = concat(&w, words[x].as_ref().unwrap());
                words[y] = Some(w);
                tree.insert((x, k), y);
                queue.push_back(y);
            }
        }
    }
    let words: Vec<Word> = words
        .into_iter()
        .map(|w| w.ok_or_else(|| Error::Internal("generators do not generate the group".into())))
        .collect::<Result<_>>()?;
    let mut relators = Vec::new();
    for x in 0..g.order() {
        for (k, (s, letter)) in gens.iter().enumerate() {
            if tree.contains_key(&(x, k)) {
                continue;
            }
            let y = g.index_of(&s.compose(g.element(x))).unwrap();
            let r = concat(&concat(&vec![(*letter, 1)], &words[x]), &invert(&words[y]));
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    Ok((words, relators))
}

fn letter_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Presentation of the fundamental group of a complex of groups over the
/// chamber scwol (a cone, hence simply connected): the colimit of the local
/// groups. Generators come from the rank-one vertex groups; a rank-one group
/// that is cyclic contributes one generator `x` and the relator `x^m`.
/// Direct products of commuting rank-one groups contribute commutators; other
/// local groups contribute the relators of their Cayley graphs.
pub fn presentation_over_cone(c: &ComplexOfGroups) -> Result<Presentation> {
    let s = c.scwol();
    let cone: Vec<usize> = (0..s.vertex_count()).filter(|&v| s.vertex_type(v) == 0).collect();
    if cone.len() != 1 || s.edges_from(cone[0]).len() + 1 != s.vertex_count() {
        return Err(Error::Invalid("complex is not over a cone on a single vertex of type {}".into()));
    }
    let root = cone[0];
    let mut rank_one: Vec<(usize, usize)> = (0..s.vertex_count())
        .filter(|&v| s.vertex_type(v).count_ones() == 1)
        .map(|v| (s.vertex_type(v).trailing_zeros() as usize, v))
        .collect();
    rank_one.sort_unstable();
    let n = rank_one.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let vertex_of_gen: HashMap<usize, usize> = rank_one.iter().copied().collect();
    let edge = |i: usize, t: usize| s.edges().iter().position(|&e| e == (i, t));

    let mut generators = Vec::new();
    let mut relators = Vec::new();
    // per rank-one vertex: generator perms (in its own group) with letter indices, and element words
    let mut gen_perms: HashMap<usize, Vec<(Perm, usize)>> = HashMap::new();
    let mut elem_words: HashMap<usize, Vec<Word>> = HashMap::new();
    for &(i, v) in &rank_one {
        let g = c.group(v);
        let cyclic_gen = (0..g.order()).find(|&x| g.element_order(x) == g.order() && g.order() > 1);
        let perms: Vec<Perm> = match cyclic_gen {
            Some(x) => vec![g.element(x).clone()],
            None => g.generators().to_vec(),
        };
        let mut gens = Vec::new();
        for (k, p) in perms.into_iter().enumerate() {
            let name = if cyclic_gen.is_some() { letter_name(i, n) } else { format!("{}{}", letter_name(i, n), k + 1) };
            generators.push(name);
            gens.push((p, generators.len() - 1));
        }
        let (words, rels) = cayley_words(g, &gens)?;
        if cyclic_gen.is_some() {
            relators.push(vec![(gens[0].1, g.order() as i64)]);
        } else {
            relators.extend(rels);
        }
        gen_perms.insert(v, gens);
        elem_words.insert(v, words);
    }
    // identify the images of the chamber group in the rank-one groups
    let g0 = c.group(root);
    for t in 0..g0.order() {
        let mut first: Option<Word> = None;
        for &(_, v) in &rank_one {
            let a = edge(root, v).expect("cone edge");
            let w = elem_words[&v][c.psi(a, t)].clone();
            match &first {
                None => first = Some(w),
                Some(f) => {
                    let r = concat(f, &invert(&w));
                    if !r.is_empty() {
                        relators.push(r);
                    }
                }
            }
        }
    }
    // higher-rank vertices
    let mut higher: Vec<usize> = (0..s.vertex_count()).filter(|&v| s.vertex_type(v).count_ones() >= 2).collect();
    higher.sort_by_key(|&v| (s.vertex_type(v).count_ones(), subset_elements(s.vertex_type(v))));
    for v in higher {
        let members = subset_elements(s.vertex_type(v));
        let gv = c.group(v);
        let mut gens: Vec<(Perm, usize)> = Vec::new();
        let mut per_member: Vec<Vec<(Perm, usize)>> = Vec::new();
        let mut product = 1usize;
        for &j in &members {
            let u = *vertex_of_gen.get(&j).ok_or_else(|| Error::Invalid("missing rank-one vertex".into()))?;
            let a = edge(u, v).ok_or_else(|| Error::Invalid("missing edge in the chamber scwol".into()))?;
            let gu = c.group(u);
            product *= gu.order();
            let mine: Vec<(Perm, usize)> = gen_perms[&u]
                .iter()
                .map(|(p, l)| (gv.element(c.psi(a, gu.index_of(p).unwrap())).clone(), *l))
                .collect();
            gens.extend(mine.iter().cloned());
            per_member.push(mine);
        }
        let commuting = per_member.iter().enumerate().all(|(x, gx)| {
            per_member[x + 1..]
                .iter()
                .all(|gy| gx.iter().all(|(p, _)| gy.iter().all(|(r, _)| p.compose(r) == r.compose(p))))
        });
        if commuting && product == gv.order() {
            if members.len() == 2 {
                for (_, l) in &per_member[0] {
                    for (_, m) in &per_member[1] {
                        relators.push(vec![(*l, 1), (*m, 1), (*l, -1), (*m, -1)]);
                    }
                }
            }
        } else {
            let (_, rels) = cayley_words(gv, &gens)?;
            relators.extend(rels);
        }
    }
    Ok(Presentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reduce() {
        let w = concat(&vec![(0, 1), (1, 2)], &vec![(1, -2), (0, 2)]);
        assert_eq!(w, vec![(0, 3)]);
        assert_eq!(invert(&vec![(0, 1), (1, -1)]), vec![(1, 1), (0, -1)]);
    }

    #[test]
    fn betti_of_a_square() {
        let mut s = Scwol::new(vec![0, 0, 1, 2], vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        s.add_edge(0, 2);
        s.add_edge(1, 2);
        s.add_edge(0, 3);
        s.add_edge(1, 3);
        assert_eq!(first_betti_number(&s).unwrap(), 1);
        assert_eq!(component_count(&s), 1);
    }
}
