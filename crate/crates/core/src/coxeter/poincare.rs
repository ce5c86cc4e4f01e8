use std::collections::{HashMap, VecDeque};

use super::spherical::{component_type, coxeter_components, is_spherical};
use super::{realising_cartan, subset_elements, subset_label, CoxeterMatrix, Subset};
use crate::error::{Error, Result};

/// Components larger than this are expanded from their degrees instead of enumerated.
const BFS_ELEMENT_CAP: usize = 1_000_000;

/// Integer polynomial in `q`, coefficients low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut c = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            for (j, &y) in o.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Poly(c)
    }

    pub fn eval(&self, q: u64) -> Result<u128> {
        let mut acc: u128 = 0;
        for &c in self.0.iter().rev() {
            acc = acc.checked_mul(q as u128).and_then(|a| a.checked_add(c as u128)).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".into(),
                (1, c) => format!("{c}q"),
                (k, 1) => format!("q^{k}"),
                (k, c) => format!("{c}q^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Length generating function of a connected finite component, by breadth-first
/// search over the orbit of a regular weight.
fn component_bfs(m: &CoxeterMatrix, comp: Subset) -> Option<Poly> {
    let v = subset_elements(comp);
    let a = realising_cartan(m);
    let k = v.len();
    let start = vec![1i64; k];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut counts = vec![1u64];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let len = seen[&x];
        for s in 0..k {
            if x[s] <= 0 {
                continue;
            }
            // s_s(x) = x - x_s * alpha_s, alpha_s in the weight basis
            let y: Vec<i64> = (0..k).map(|t| x[t] - x[s] * a[v[s]][v[t]]).collect();
            if !seen.contains_key(&y) {
                if seen.len() >= BFS_ELEMENT_CAP {
                    return None;
                }
                if counts.len() <= len + 1 {
                    counts.push(0);
                }
                counts[len + 1] += 1;
                seen.insert(y.clone(), len + 1);
                queue.push_back(y);
            }
        }
    }
    Some(Poly(counts))
}

fn degrees(name: &str) -> Vec<u32> {
    let (family, rank) = name.split_at(1);
    let k: u32 = rank.trim_start_matches("2(").trim_end_matches(')').parse().unwrap_or(0);
    match family {
        "A" => (2..=k + 1).collect(),
        "B" => (1..=k).map(|i| 2 * i).collect(),
        "D" => (1..k).map(|i| 2 * i).chain([k]).collect(),
        "E" => match k {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        "F" => vec![2, 6, 8, 12],
        "G" => vec![2, 6],
        _ => vec![2, k],
    }
}

/// `prod_i (1 + q + ... + q^{d_i - 1})` over the degrees of the component type.
pub(crate) fn degree_product(name: &str) -> Poly {
    degrees(name).into_iter().fold(Poly::one(), |acc, d| acc.mul(&Poly(vec![1; d as usize])))
}

/// `W_J(q) = sum_{w in W_J} q^{l(w)}`.
pub fn poincare_polynomial(m: &CoxeterMatrix, s: Subset) -> Result<Poly> {
    if !is_spherical(m, s) {
        return Err(Error::Invalid(format!("{} is not spherical", subset_label(s))));
    }
    let mut acc = Poly::one();
    for comp in coxeter_components(m, s) {
        let p = match component_bfs(m, comp) {
            Some(p) => p,
            None => degree_product(&component_type(m, comp).expect("spherical component")),
        };
        acc = acc.mul(&p);
    }
    Ok(acc)
}

/// `W_J(q) / W_J'(q)` for spherical `J' <= J`; an error if the division is not exact.
pub fn index_ratio(m: &CoxeterMatrix, big: Subset, small: Subset, q: u64) -> Result<u128> {
    if small & big != small {
        return Err(Error::Invalid("not a subset".into()));
    }
    let num = poincare_polynomial(m, big)?.eval(q)?;
    let den = poincare_polynomial(m, small)?.eval(q)?;
    if num % den != 0 {
        return Err(Error::Internal(format!("W_J({q}) not divisible by W_J'({q})")));
    }
    Ok(num / den)
}
