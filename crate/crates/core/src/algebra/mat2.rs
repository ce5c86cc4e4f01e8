use super::field::{FieldCtx, Fq};

/// A 2x2 matrix over `F_q` with nonzero determinant.
///
/// Acts on column vectors; on `P^1(F_q)` through `[x:y] -> [ax+by : cx+dy]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
    det: Fq,
}

impl Mat2 {
    /// `None` if the determinant vanishes.
    pub fn new(f: &FieldCtx, a: Fq, b: Fq, c: Fq, d: Fq) -> Option<Self> {
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        (det != 0).then_some(Mat2 { a, b, c, d, det })
    }

    pub fn identity() -> Self {
        Mat2 { a: 1, b: 0, c: 0, d: 1, det: 1 }
    }

    pub fn diag(f: &FieldCtx, x: Fq, y: Fq) -> Option<Self> {
        Self::new(f, x, 0, 0, y)
    }

    pub fn det(&self) -> Fq {
        self.det
    }

    pub fn mul(&self, f: &FieldCtx, o: &Mat2) -> Mat2 {
        let a = f.add(f.mul(self.a, o.a), f.mul(self.b, o.c));
        let b = f.add(f.mul(self.a, o.b), f.mul(self.b, o.d));
        let c = f.add(f.mul(self.c, o.a), f.mul(self.d, o.c));
        let d = f.add(f.mul(self.c, o.b), f.mul(self.d, o.d));
        Mat2 { a, b, c, d, det: f.mul(self.det, o.det) }
    }

    pub fn inv(&self, f: &FieldCtx) -> Mat2 {
        let di = f.inv(self.det).expect("invertible");
        Mat2 {
            a: f.mul(self.d, di),
            b: f.neg(f.mul(self.b, di)),
            c: f.neg(f.mul(self.c, di)),
            d: f.mul(self.a, di),
            det: di,
        }
    }

    pub fn conj(&self, f: &FieldCtx, by: &Mat2) -> Mat2 {
        by.mul(f, self).mul(f, &by.inv(f))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Scalar matrices act trivially on the projective line.
    pub fn is_scalar(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d
    }

    pub fn apply_vec(&self, f: &FieldCtx, v: (Fq, Fq)) -> (Fq, Fq) {
        (f.add(f.mul(self.a, v.0), f.mul(self.b, v.1)), f.add(f.mul(self.c, v.0), f.mul(self.d, v.1)))
    }

    /// Action on the point with index `idx` of [`proj_line`].
    pub fn apply_point(&self, f: &FieldCtx, idx: usize) -> usize {
        point_index(f, self.apply_vec(f, point_coords(f, idx)))
    }

    pub fn order(&self, f: &FieldCtx) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(f, self);
            k += 1;
        }
        k
    }

    /// Elements of `SL_2(q)` in lexicographic order of `(a, b, c, d)` codes.
    pub fn sl2_elements(f: &FieldCtx) -> impl Iterator<Item = Mat2> + '_ {
        let q = f.q();
        (0..q).flat_map(move |a| {
            (0..q).flat_map(move |b| {
                (0..q).flat_map(move |c| (0..q).filter_map(move |d| Mat2::new(f, a, b, c, d).filter(|m| m.det == 1)))
            })
        })
    }
}

/// Points of `P^1(F_q)`: `[x:1]` for `x` in code order, then `[1:0]`.
/// Index 0 is the base point `[0:1]`.
pub fn proj_line(f: &FieldCtx) -> Vec<(Fq, Fq)> {
    let mut pts: Vec<(Fq, Fq)> = f.elements().map(|x| (x, 1)).collect();
    pts.push((1, 0));
    pts
}

pub fn point_coords(f: &FieldCtx, idx: usize) -> (Fq, Fq) {
    if idx == f.q() as usize {
        (1, 0)
    } else {
        (idx as Fq, 1)
    }
}

/// Index of the projective point spanned by a nonzero vector.
pub fn point_index(f: &FieldCtx, v: (Fq, Fq)) -> usize {
    if v.1 == 0 {
        debug_assert!(v.0 != 0);
        f.q() as usize
    } else {
        f.mul(v.0, f.inv(v.1).unwrap()) as usize
    }
}

/// Index of a nonzero vector among the `q^2 - 1` nonzero vectors of `F_q^2`.
pub fn vector_index(f: &FieldCtx, v: (Fq, Fq)) -> usize {
    (v.0 as usize + v.1 as usize * f.q() as usize) - 1
}

pub fn vector_from_index(f: &FieldCtx, idx: usize) -> (Fq, Fq) {
    let k = idx + 1;
    ((k % f.q() as usize) as Fq, (k / f.q() as usize) as Fq)
}
