use std::collections::BTreeMap;

use crate::algebra::{FieldCtx, Fq};

/// Points and lines of a projective space over `F_q`, with the flags they form.
#[derive(Debug, Clone)]
pub struct FlagGeometry {
    /// Normalised representatives (first nonzero coordinate 1), in code order.
    pub points: Vec<Vec<Fq>>,
    /// Each line as the sorted indices of its points.
    pub lines: Vec<Vec<usize>>,
    /// `(point, line)` pairs with the point on the line, sorted.
    pub flags: Vec<(usize, usize)>,
}

/// The form `x1 y2 - x2 y1 + x3 y4 - x4 y3`.
pub fn symplectic_form(f: &FieldCtx, x: &[Fq], y: &[Fq]) -> Fq {
    let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
    let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
    f.add(a, b)
}

fn normalise(f: &FieldCtx, v: &[Fq]) -> Option<Vec<Fq>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let s = f.inv(lead)?;
    Some(v.iter().map(|&x| f.mul(s, x)).collect())
}

/// A bilinear form on coordinate vectors.
pub type Form = fn(&FieldCtx, &[Fq], &[Fq]) -> Fq;

/// Flags of `PG(dim - 1, q)`; with a form, only lines on which the form
/// vanishes identically are kept.
pub fn flag_geometry(f: &FieldCtx, dim: usize, form: Option<Form>) -> FlagGeometry {
    let q = f.q() as usize;
    let mut points = Vec::new();
    let mut index: BTreeMap<Vec<Fq>, usize> = BTreeMap::new();
    for code in 1..q.pow(dim as u32) {
        let mut c = code;
        let v: Vec<Fq> = (0..dim)
            .map(|_| {
                let x = (c % q) as Fq;
                c /= q;
                x
            })
            .collect();
        if normalise(f, &v).as_deref() == Some(&v[..]) {
            index.insert(v.clone(), points.len());
            points.push(v);
        }
    }
    let mut line_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut lines = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if let Some(form) = form {
                if form(f, &points[a], &points[b]) != 0 {
                    continue;
                }
            }
            let mut on: Vec<usize> = vec![a];
            for t in f.elements() {
                let w: Vec<Fq> = points[b].iter().zip(&points[a]).map(|(&y, &x)| f.add(y, f.mul(t, x))).collect();
                on.push(index[&normalise(f, &w).expect("distinct points span a line")]);
            }
            on.sort_unstable();
            on.dedup();
            if !line_of.contains_key(&on) {
                line_of.insert(on.clone(), lines.len());
                lines.push(on);
            }
        }
    }
    let mut flags: Vec<(usize, usize)> =
        lines.iter().enumerate().flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l))).collect();
    flags.sort_unstable();
    FlagGeometry { points, lines, flags }
}
