use super::{fmt_coeff, fmt_exp2, pow_half};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in one variable over half-integer exponents.
/// Keys are doubled exponents; values are never zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    var: String,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(var: &str) -> Self {
        LaurentPoly {
            var: var.to_string(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var: &str, c: Scalar) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, Scalar::one())
    }

    /// `c * var^(e2/2)`.
    pub fn monomial(var: &str, e2: i64, c: Scalar) -> Self {
        let mut p = Self::zero(var);
        p.add_term(e2, c);
        p
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `var^(e2/2)`.
    pub fn coeff(&self, e2: i64) -> Scalar {
        self.terms.get(&e2).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Doubled exponent bounds, `None` for the zero polynomial.
    pub fn min_exp2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp2(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer (doubled keys all even).
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn add_term(&mut self, e2: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e2).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e2);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.var);
        }
        let mut out = Self::zero(&self.var);
        for (e, t) in &self.terms {
            out.add_term(*e, t * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = Self::zero(&self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = Self::one(&self.var);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Shift every exponent by `e2/2` (multiply by a monomial).
    pub fn shift(&self, e2: i64) -> LaurentPoly {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + e2, c.clone())).collect(),
        }
    }

    /// Formal derivative of the given order.
    pub fn derivative(&self, order: u32) -> LaurentPoly {
        let mut cur = self.clone();
        for _ in 0..order {
            let mut next = Self::zero(&cur.var);
            for (e2, c) in &cur.terms {
                if *e2 == 0 {
                    continue;
                }
                // d/dt t^(e2/2) = (e2/2) t^(e2/2 - 1)
                next.add_term(e2 - 2, c * &Scalar::ratio(*e2, 2));
            }
            cur = next;
        }
        cur
    }

    pub fn evaluate(&self, value: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (e2, c) in &self.terms {
            acc = &acc + &(c * &pow_half(value, *e2, &self.var)?);
        }
        Ok(acc)
    }

    /// Rename the variable without touching coefficients.
    pub fn rename(&self, var: &str) -> LaurentPoly {
        LaurentPoly {
            var: var.to_string(),
            terms: self.terms.clone(),
        }
    }

    /// Substitute `var -> value` checking the variable name, for symmetry
    /// with the two-variable form.
    pub fn evaluate_named(&self, var: &str, value: &Scalar) -> Result<Scalar> {
        if var != self.var {
            return Err(Error::UnknownVariable(var.to_string()));
        }
        self.evaluate(value)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(e2, c)| {
                if *e2 == 0 {
                    fmt_coeff(c)
                } else {
                    format!("{}*{}^{}", fmt_coeff(c), self.var, fmt_exp2(*e2))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero("t");
        for (e2, c) in terms {
            p.add_term(*e2, Scalar::int(*c));
        }
        p
    }

    #[test]
    fn arithmetic_normalizes_zeros() {
        let p = poly(&[(2, 1), (0, 3)]);
        let q = poly(&[(2, -1)]);
        let sum = p.add(&q);
        assert_eq!(sum, poly(&[(0, 3)]));
        assert_eq!(p.sub(&p), LaurentPoly::zero("t"));
    }

    #[test]
    fn multiplication_of_laurent_terms() {
        // (t - t^-1)^2 = t^2 - 2 + t^-2
        let p = poly(&[(2, 1), (-2, -1)]);
        assert_eq!(p.mul(&p), poly(&[(4, 1), (0, -2), (-4, 1)]));
    }

    #[test]
    fn derivative_of_laurent_terms() {
        // d/dt (t^2 + 3t^-1) = 2t - 3t^-2
        let p = poly(&[(4, 1), (-2, 3)]);
        assert_eq!(p.derivative(1), poly(&[(2, 2), (-4, -3)]));
        // Half-integer exponent: d/dt t^{1/2} = (1/2) t^{-1/2}
        let h = LaurentPoly::monomial("t", 1, Scalar::one());
        assert_eq!(
            h.derivative(1),
            LaurentPoly::monomial("t", -1, Scalar::ratio(1, 2))
        );
    }

    #[test]
    fn derivative_order_composes() {
        let p = poly(&[(6, 2), (-2, 5), (0, 7)]);
        assert_eq!(p.derivative(3), p.derivative(1).derivative(1).derivative(1));
    }

    #[test]
    fn evaluation_with_poles() {
        let p = poly(&[(-2, 1)]);
        assert_eq!(
            p.evaluate(&Scalar::zero()),
            Err(Error::PoleAtZero("t".into()))
        );
        assert_eq!(p.evaluate(&Scalar::int(4)).unwrap(), Scalar::ratio(1, 4));
    }

    #[test]
    fn canonical_display() {
        let mut p = LaurentPoly::zero("t");
        p.add_term(-8, Scalar::int(-1));
        p.add_term(-6, Scalar::int(1));
        p.add_term(-2, Scalar::int(1));
        assert_eq!(p.to_string(), "-1*t^-4 + 1*t^-3 + 1*t^-1");
        assert_eq!(LaurentPoly::zero("t").to_string(), "0");
        let half = LaurentPoly::monomial("t", 1, Scalar::int(2));
        assert_eq!(half.to_string(), "2*t^1/2");
    }
}
