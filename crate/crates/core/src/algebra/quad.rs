use super::field::{prime_factors, FieldCtx, Fq};
use super::mat2::Mat2;

/// `F_{q^2} = F_q[y]/(y^2 + c1 y + c0)`, elements `a + b*y` stored as `(a, b)`.
#[derive(Debug, Clone)]
pub struct QuadExt {
    c0: Fq,
    c1: Fq,
}

impl QuadExt {
    /// The least irreducible `y^2 + c1 y + c0`, comparing `c0` first.
    pub fn new(f: &FieldCtx) -> Self {
        for c0 in 1..f.q() {
            for c1 in 0..f.q() {
                let has_root = f.elements().any(|y| f.add(f.add(f.mul(y, y), f.mul(c1, y)), c0) == 0);
                if !has_root {
                    return QuadExt { c0, c1 };
                }
            }
        }
        unreachable!("every finite field has an irreducible quadratic")
    }

    pub fn modulus(&self) -> (Fq, Fq) {
        (self.c0, self.c1)
    }

    pub fn mul(&self, f: &FieldCtx, x: (Fq, Fq), y: (Fq, Fq)) -> (Fq, Fq) {
        let bd = f.mul(x.1, y.1);
        let a = f.sub(f.mul(x.0, y.0), f.mul(bd, self.c0));
        let b = f.sub(f.add(f.mul(x.0, y.1), f.mul(x.1, y.0)), f.mul(bd, self.c1));
        (a, b)
    }

    pub fn pow(&self, f: &FieldCtx, x: (Fq, Fq), mut e: u64) -> (Fq, Fq) {
        let mut acc = (1, 0);
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(f, acc, base);
            }
            base = self.mul(f, base, base);
            e >>= 1;
        }
        acc
    }

    /// `N(a + b y) = a^2 - c1 ab + c0 b^2`.
    pub fn norm(&self, f: &FieldCtx, x: (Fq, Fq)) -> Fq {
        let (a, b) = x;
        f.add(f.sub(f.mul(a, a), f.mul(self.c1, f.mul(a, b))), f.mul(self.c0, f.mul(b, b)))
    }

    /// Matrix of multiplication by `x` in the basis `{1, y}`.
    pub fn mult_matrix(&self, f: &FieldCtx, x: (Fq, Fq)) -> Mat2 {
        let (a, b) = x;
        Mat2::new(f, a, f.neg(f.mul(b, self.c0)), b, f.sub(a, f.mul(b, self.c1))).expect("nonzero element")
    }

    /// Matrix of the Frobenius `x -> x^q` in the basis `{1, y}` (determinant `-1`).
    pub fn conjugation_matrix(&self, f: &FieldCtx) -> Mat2 {
        Mat2::new(f, 1, f.neg(self.c1), 0, f.neg(1)).unwrap()
    }

    /// Least element (by code `a + b q`) generating the multiplicative group.
    pub fn generator(&self, f: &FieldCtx) -> (Fq, Fq) {
        let q = f.q() as u64;
        let order = q * q - 1;
        let factors = prime_factors(order);
        for code in 1..q * q {
            let x = ((code % q) as Fq, (code / q) as Fq);
            if factors.iter().all(|&r| self.pow(f, x, order / r) != (1, 0)) {
                return x;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    /// Least element of norm `value`.
    pub fn element_of_norm(&self, f: &FieldCtx, value: Fq) -> (Fq, Fq) {
        let q = f.q();
        (0..q)
            .flat_map(|b| (0..q).map(move |a| (a, b)))
            .find(|&x| self.norm(f, x) == value)
            .expect("the norm is surjective")
    }
}
