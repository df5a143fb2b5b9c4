use super::fmt_coeff;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Ordinary polynomial in several variables with nonnegative integer
/// exponents. Used for interpolation grids where several composition
/// counters vary at once.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Scalar) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = Self::zero(self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (e, t) in &self.terms {
            out.add_term(e.clone(), t * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Largest exponent of the variable at `idx` across all terms.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::IndexOutOfRange {
                index: point.len(),
                len: self.vars.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in exps.iter().zip(point) {
                term = &term * &v.pow(*e as i64)?;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut parts = vec![fmt_coeff(c)];
                for (v, e) in self.vars.iter().zip(exps) {
                    if *e != 0 {
                        parts.push(format!("{v}^{e}"));
                    }
                }
                parts.join("*")
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
