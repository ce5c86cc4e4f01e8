//! Generalised Cartan matrices, their Coxeter data, and finiteness tests.

mod poincare;
mod spherical;

pub use poincare::{index_ratio, poincare_polynomial, Poly};
pub use spherical::{
    component_type, coxeter_components, free_product_decomposition, is_spherical, nerve_edges, spherical_subsets,
    FreeProduct, SphericalLattice,
};

use crate::error::{Error, GcmError, Result};

/// Subsets of the index set `{0, .., n-1}` as bitmasks.
pub type Subset = u32;

pub fn subset_elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn subset_from(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// 1-based display, `{}` for the empty set.
pub fn subset_label(s: Subset) -> String {
    let parts: Vec<String> = subset_elements(s).iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// A validated generalised Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gcm {
    n: usize,
    a: Vec<i64>,
}

impl Gcm {
    pub fn new(rows: Vec<Vec<i64>>) -> std::result::Result<Self, GcmError> {
        let n = rows.len();
        if n == 0 {
            return Err(GcmError::Empty);
        }
        if n > 32 {
            return Err(GcmError::RankTooLarge(n));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GcmError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for i in 0..n {
            if rows[i][i] != 2 {
                return Err(GcmError::Diagonal { i, value: rows[i][i] });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && rows[i][j] > 0 {
                    return Err(GcmError::PositiveOffDiagonal { i, j, value: rows[i][j] });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(GcmError::ZeroAsymmetry { i, j });
                }
            }
        }
        Ok(Gcm { n, a: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn full_set(&self) -> Subset {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let mut m = vec![1; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    m[i * self.n + j] = match self.entry(i, j) * self.entry(j, i) {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => INFINITY,
                    };
                }
            }
        }
        CoxeterMatrix { n: self.n, m }
    }

    /// Pairs `(i, j)`, `i < j`, with `a_ij a_ji >= 4` but `|a_ij| < 2` or `|a_ji| < 2`.
    pub fn km_condition(&self) -> KmCondition {
        let mut witnesses = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let (x, y) = (self.entry(i, j), self.entry(j, i));
                if x * y >= 4 && (x.abs() < 2 || y.abs() < 2) {
                    witnesses.push((i, j));
                }
            }
        }
        KmCondition { holds: witnesses.is_empty(), witnesses }
    }

    /// `a_ij a_ji` is 0 or at least 4 for every pair.
    pub fn is_right_angled_type(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                i == j || {
                    let x = self.entry(i, j) * self.entry(j, i);
                    x == 0 || x >= 4
                }
            })
        })
    }
}

pub fn parse_gcm(text: &str) -> Result<Gcm> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| Error::Invalid(format!("bad matrix entry `{s}`"))))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Gcm::new(rows)?)
}

pub fn format_gcm(a: &Gcm) -> String {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmCondition {
    pub holds: bool,
    pub witnesses: Vec<(usize, usize)>,
}

pub const INFINITY: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<u32>,
}

impl CoxeterMatrix {
    /// Entries use [`INFINITY`] for `m = oo`; off-diagonal values must lie in `{2,3,4,6,oo}`.
    pub fn from_entries(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 32 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("Coxeter matrix must be square of size 1..=32".into()));
        }
        for i in 0..n {
            if rows[i][i] != 1 {
                return Err(Error::Invalid(format!("m[{0}][{0}] must be 1", i + 1)));
            }
            for j in 0..n {
                if i != j {
                    if rows[i][j] != rows[j][i] {
                        return Err(Error::Invalid("Coxeter matrix must be symmetric".into()));
                    }
                    if ![2, 3, 4, 6, INFINITY].contains(&rows[i][j]) {
                        return Err(Error::Invalid(format!("unsupported label m[{}][{}]", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(CoxeterMatrix { n, m: rows.into_iter().flatten().collect() })
    }

    /// All off-diagonal entries equal to `m`.
    pub fn uniform(n: usize, m: u32) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { 1 } else { m }).collect()).collect();
        CoxeterMatrix::from_entries(rows).expect("valid uniform matrix")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.n + j]
    }

    pub fn is_infinite(&self, i: usize, j: usize) -> bool {
        self.m(i, j) == INFINITY
    }

    pub fn full_set(&self) -> Subset {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn is_right_angled(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || matches!(self.m(i, j), 2 | INFINITY)))
    }

    pub fn is_weyl_infinite(&self) -> bool {
        !is_spherical(self, self.full_set())
    }
}

/// A Cartan matrix realising the given Coxeter matrix (used for the reflection representation).
pub(crate) fn realising_cartan(m: &CoxeterMatrix) -> Vec<Vec<i64>> {
    let n = m.n();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in i + 1..n {
            let (x, y) = match m.m(i, j) {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                _ => (-2, -2),
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    a
}
