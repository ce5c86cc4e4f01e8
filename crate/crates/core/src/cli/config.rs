use std::str::FromStr;

use crate::algebra::DEFAULT_ORDER_CAP;
use crate::constructions::{ConstructionKind, ConstructionRequest, DEFAULT_BUDGET};
use crate::coxeter::{format_gcm, parse_gcm, subset_elements, subset_from, Gcm, Subset};
use crate::error::{Error, Result};

/// A run configuration: flat `key = value` lines, `#` comments.
///
/// If the text contains a `[config]` section (as in an emitted report), only
/// that section is read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub construction: ConstructionKind,
    pub cartan: Gcm,
    pub p: u64,
    pub h: u32,
    pub faces: Option<usize>,
    pub genus: Option<u64>,
    pub partition: Option<Vec<Subset>>,
    pub budget: u64,
    pub cap: usize,
}

const KEYS: [&str; 9] = ["construction", "cartan", "p", "h", "F", "genus", "partition", "budget", "cap"];

fn section_lines(text: &str) -> Vec<(usize, &str)> {
    let all: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let Some(start) = all.iter().position(|(_, l)| l.trim() == "[config]") else {
        return all;
    };
    all[start + 1..].iter().take_while(|(_, l)| !l.trim().starts_with('[')).copied().collect()
}

fn number<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Invalid(format!("line {line}: `{key}` expects an integer, got `{v}`")))
}

/// `"1,2;3"` (one-based, factors separated by `;`).
pub fn parse_partition(s: &str) -> Result<Vec<Subset>> {
    s.split(';')
        .map(|part| {
            let elems = part
                .split(',')
                .map(|x| match x.trim().parse::<usize>() {
                    Ok(k) if (1..=32).contains(&k) => Ok(k - 1),
                    _ => Err(Error::Invalid(format!("bad generator `{}` in partition", x.trim()))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(subset_from(&elems))
        })
        .collect()
}

pub fn format_partition(p: &[Subset]) -> String {
    p.iter()
        .map(|&s| subset_elements(s).iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values: Vec<Option<(usize, String)>> = vec![None; KEYS.len()];
        for (line, raw) in section_lines(text) {
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            let k = KEYS
                .iter()
                .position(|&x| x == key)
                .ok_or_else(|| Error::Invalid(format!("line {line}: unknown key `{key}`")))?;
            if values[k].is_some() {
                return Err(Error::Invalid(format!("line {line}: duplicate key `{key}`")));
            }
            values[k] = Some((line, value.to_string()));
        }
        let get = |k: usize| values[k].as_ref().map(|(l, v)| (*l, v.as_str()));
        let required = |k: usize| get(k).ok_or_else(|| Error::Invalid(format!("missing key `{}`", KEYS[k])));
        let (l, v) = required(0)?;
        let construction = v.parse().map_err(|e: Error| Error::Invalid(format!("line {l}: {e}")))?;
        let (l, v) = required(1)?;
        let cartan = parse_gcm(v).map_err(|e| Error::Invalid(format!("line {l}: {e}")))?;
        let (l, v) = required(2)?;
        let p = number(l, "p", v)?;
        let h = get(3).map(|(l, v)| number(l, "h", v)).transpose()?.unwrap_or(1);
        let faces = get(4).map(|(l, v)| number(l, "F", v)).transpose()?;
        let genus = get(5).map(|(l, v)| number(l, "genus", v)).transpose()?;
        let partition = get(6)
            .map(|(l, v)| parse_partition(v).map_err(|e| Error::Invalid(format!("line {l}: {e}"))))
            .transpose()?;
        let budget = get(7).map(|(l, v)| number(l, "budget", v)).transpose()?.unwrap_or(DEFAULT_BUDGET);
        let cap = get(8).map(|(l, v)| number(l, "cap", v)).transpose()?.unwrap_or(DEFAULT_ORDER_CAP);
        Ok(RunConfig { construction, cartan, p, h, faces, genus, partition, budget, cap })
    }

    /// Lines `key = value` in fixed order; parsing them gives back `self`.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("construction".to_string(), self.construction.to_string()),
            ("cartan".to_string(), format_gcm(&self.cartan)),
            ("p".to_string(), self.p.to_string()),
            ("h".to_string(), self.h.to_string()),
        ];
        if let Some(f) = self.faces {
            out.push(("F".into(), f.to_string()));
        }
        if let Some(g) = self.genus {
            out.push(("genus".into(), g.to_string()));
        }
        if let Some(p) = &self.partition {
            out.push(("partition".into(), format_partition(p)));
        }
        out.push(("budget".into(), self.budget.to_string()));
        out.push(("cap".into(), self.cap.to_string()));
        out
    }

    pub fn request(&self) -> ConstructionRequest {
        let mut r = ConstructionRequest::new(self.construction, self.cartan.clone(), self.p, self.h);
        r.faces = self.faces;
        r.genus = self.genus;
        r.partition = self.partition.clone();
        r.budget = self.budget;
        r.cap = self.cap;
        r
    }
}
