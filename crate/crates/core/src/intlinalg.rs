//! Exact integer linear algebra by unimodular row and column reduction.

use crate::error::{Error, Result};

/// Diagonal reduction `U A V = diag(d_1, .., d_r, 0, ..)` with `U`, `V` unimodular.
/// The row operations are also applied to the optional right-hand side.
struct Reduction {
    diag: Vec<i64>,
    rhs: Option<Vec<i64>>,
}

fn sub_mul(x: i64, q: i64, y: i64) -> Result<i64> {
    q.checked_mul(y).and_then(|p| x.checked_sub(p)).ok_or(Error::Overflow)
}

fn reduce(mut m: Vec<Vec<i64>>, mut rhs: Option<Vec<i64>>) -> Result<Reduction> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                    best = Some((x.abs(), i, j));
                    if x.abs() == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((1, _, _))) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap(t, pi);
        if let Some(b) = rhs.as_mut() {
            b.swap(t, pi);
        }
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(p);
                    if q != 0 {
                        for j in t..cols {
                            m[i][j] = sub_mul(m[i][j], q, m[t][j])?;
                        }
                        if let Some(b) = rhs.as_mut() {
                            b[i] = sub_mul(b[i], q, b[t])?;
                        }
                    }
                    if m[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(p);
                    if q != 0 {
                        for row in m.iter_mut().skip(t) {
                            row[j] = sub_mul(row[j], q, row[t])?;
                        }
                    }
                    if m[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
            // a smaller remainder exists in row or column t: move it to the pivot
            let mut best = (p.abs(), t, t);
            for i in t + 1..rows {
                if m[i][t] != 0 && m[i][t].abs() < best.0 {
                    best = (m[i][t].abs(), i, t);
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 && m[t][j].abs() < best.0 {
                    best = (m[t][j].abs(), t, j);
                }
            }
            let (_, bi, bj) = best;
            if bi != t {
                m.swap(t, bi);
                if let Some(b) = rhs.as_mut() {
                    b.swap(t, bi);
                }
            }
            if bj != t {
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        diag.push(m[t][t]);
        t += 1;
    }
    Ok(Reduction { diag, rhs })
}

/// Rank over the rationals of an integer matrix given by rows.
pub fn rank(m: &[Vec<i64>]) -> Result<usize> {
    Ok(reduce(m.to_vec(), None)?.diag.len())
}

/// Whether `b` lies in the integer span of the columns of `m`.
pub fn in_integer_column_span(m: &[Vec<i64>], b: &[i64]) -> Result<bool> {
    if m.len() != b.len() {
        return Err(Error::Invalid("right-hand side has the wrong length".into()));
    }
    let red = reduce(m.to_vec(), Some(b.to_vec()))?;
    let rhs = red.rhs.unwrap();
    let r = red.diag.len();
    Ok(red.diag.iter().zip(&rhs).all(|(&d, &x)| x % d == 0) && rhs[r..].iter().all(|&x| x == 0))
}

/// Nonzero invariant factors of an integer matrix (diagonal entries of the
/// Smith normal form), in divisibility order.
pub fn invariant_factors(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let d: Vec<i64> = reduce(m.to_vec(), None)?.diag.iter().map(|x| x.abs()).collect();
    // the diagonal form has the same group Z^r / D; normalise it to Smith form
    let mut primes_powers: std::collections::BTreeMap<i64, Vec<u32>> = Default::default();
    let mut ones = 0;
    for &x in &d {
        if x == 1 {
            ones += 1;
            continue;
        }
        let mut x = x;
        let mut p = 2;
        while p * p <= x {
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            if e > 0 {
                primes_powers.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if x > 1 {
            primes_powers.entry(x).or_default().push(1);
        }
    }
    let k = d.len() - ones;
    let mut out = vec![1i64; k];
    for (p, mut es) in primes_powers {
        es.sort_unstable();
        let off = k - es.len();
        for (idx, e) in es.into_iter().enumerate() {
            out[off + idx] *= p.pow(e);
        }
    }
    let mut all = vec![1i64; ones];
    all.extend(out);
    Ok(all)
}
