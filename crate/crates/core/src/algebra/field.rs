//! Exact arithmetic in `F_{p^h}`.
//!
//! An element is stored as its integer code `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`,
//! where `c_k` are the coefficients of its residue modulo the field modulus.
//! The "fixed enumeration" of the field used everywhere else in the crate is
//! the order of these codes.

use crate::error::{Error, Result};

/// Field element code.
pub type Fq = u32;

/// Default upper bound on `q`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over `F_p`, coefficients low degree first.
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|k| {
                let x = *a.get(k).unwrap_or(&0);
                let y = *b.get(k).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn inv_mod(x: u32, p: u32) -> u32 {
        // p prime: x^(p-2)
        let mut r = 1u64;
        let mut b = x as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo `m` (`m` nonzero).
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - dm;
            for (k, &mk) in m.iter().enumerate() {
                let sub = c * mk as u64 % p as u64;
                r[shift + k] = ((r[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&result, m, p)
    }

    pub fn eval(a: &[u32], x: u32, p: u32) -> u32 {
        a.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
    }
}

/// Irreducibility of a monic polynomial of degree `h` over `F_p` (Rabin's test,
/// preceded by a root check).
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let h = f.len() - 1;
    if h == 1 {
        return true;
    }
    if (0..p).any(|x| poly::eval(f, x, p) == 0) {
        return false;
    }
    if h <= 3 {
        return true;
    }
    let x = vec![0u32, 1];
    let frob = |k: usize| -> Vec<u32> {
        let mut r = x.clone();
        for _ in 0..k {
            r = poly::pow_mod(&r, p as u64, f, p);
        }
        r
    };
    let full = poly::sub(&frob(h), &x, p);
    if !poly::rem(&full, f, p).is_empty() {
        return false;
    }
    for r in prime_factors(h as u64) {
        let k = h / r as usize;
        let g = poly::gcd(f, &poly::sub(&frob(k), &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The finite field `F_q`, `q = p^h`, with log/antilog tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fq,
    exp: Vec<Fq>,
    log: Vec<u32>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(p: u64, h: u32) -> Result<Self> {
        Self::with_bound(p, h, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u64, h: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(h).filter(|&q| q <= bound as u128);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, h, bound }),
        };
        let p = p as u32;
        let modulus = smallest_irreducible(p, h as usize);
        let mut ctx = FieldCtx { p, h, q, modulus, generator: 0, exp: Vec::new(), log: Vec::new() };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let primes = prime_factors(order);
        let g = (1..self.q)
            .find(|&g| primes.iter().all(|&r| self.slow_pow(g, order / r) != 1 || order == 1))
            .expect("multiplicative group is cyclic");
        self.generator = g;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut x = 1;
        for k in 0..order as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn to_poly(&self, x: Fq) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.h as usize);
        let mut x = x;
        for _ in 0..self.h {
            out.push(x % self.p);
            x /= self.p;
        }
        poly::trim(out)
    }

    fn poly_value(&self, a: &[u32]) -> Fq {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, x: Fq, y: Fq) -> Fq {
        let r = poly::mul_mod(&self.to_poly(x), &self.to_poly(y), &self.modulus, self.p);
        self.poly_value(&r)
    }

    fn slow_pow(&self, x: Fq, e: u64) -> Fq {
        let r = poly::pow_mod(&self.to_poly(x), e, &self.modulus, self.p);
        self.poly_value(&r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low degree first (length `h + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least (by code) generator of `F_q^*`.
    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q
    }

    pub fn zero(&self) -> Fq {
        0
    }

    pub fn one(&self) -> Fq {
        1
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        if self.p == 2 {
            return x ^ y;
        }
        if self.h == 1 {
            return (x + y) % self.p;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.h {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, x: Fq) -> Fq {
        if self.p == 2 {
            return x;
        }
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.h {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if x == 0 || y == 0 {
            return 0;
        }
        let k = (self.log[x as usize] as u64 + self.log[y as usize] as u64) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: Fq) -> Option<Fq> {
        if x == 0 {
            return None;
        }
        let l = self.log[x as usize];
        let k = if l == 0 { 0 } else { self.q - 1 - l };
        Some(self.exp[k as usize])
    }

    /// `x^e` for any integer `e`; negative powers of zero panic.
    pub fn pow(&self, x: Fq, e: i64) -> Fq {
        if x == 0 {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.q as i64 - 1;
        let k = (self.log[x as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    /// Discrete logarithm to the stored generator.
    pub fn log(&self, x: Fq) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fq) -> u64 {
        let n = self.q as u64 - 1;
        let l = self.log[x as usize] as u64;
        n / gcd(n, l)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as u32
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lexicographically least monic irreducible polynomial of degree `h`,
/// comparing coefficients from the constant term upwards.
fn smallest_irreducible(p: u32, h: usize) -> Vec<u32> {
    let total = (p as u64).pow(h as u32);
    for code in 0..total {
        // most significant digit = constant coefficient
        let mut coeffs = vec![0u32; h + 1];
        let mut c = code;
        for k in (0..h).rev() {
            coeffs[k] = (c % p as u64) as u32;
            c /= p as u64;
        }
        coeffs[h] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
