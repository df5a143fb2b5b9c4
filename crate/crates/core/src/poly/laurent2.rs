use super::{fmt_coeff, fmt_exp2, pow_half, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in two variables over half-integer exponents.
/// Keys are doubled exponent pairs ordered lexicographically, which is also
/// the canonical print order.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly2 {
    vars: [String; 2],
    terms: BTreeMap<(i64, i64), Scalar>,
}

/// Substitution target for one variable of a [`LaurentPoly2`].
#[derive(Debug, Clone)]
pub enum SubstRule {
    /// `var -> target^(e2/2)`; `e2 = 2` is the identity renaming.
    Var { e2: i64 },
    /// `var -> c`.
    Constant(Scalar),
    /// `var -> target^{1/2} - target^{-1/2}`.
    SqrtDiff,
}

impl LaurentPoly2 {
    pub fn zero(v0: &str, v1: &str) -> Self {
        LaurentPoly2 {
            vars: [v0.to_string(), v1.to_string()],
            terms: BTreeMap::new(),
        }
    }

    pub fn one(v0: &str, v1: &str) -> Self {
        Self::monomial(v0, v1, 0, 0, Scalar::one())
    }

    /// `c * v0^(e0/2) * v1^(e1/2)`.
    pub fn monomial(v0: &str, v1: &str, e0: i64, e1: i64, c: Scalar) -> Self {
        let mut p = Self::zero(v0, v1);
        p.add_term(e0, e1, c);
        p
    }

    pub fn var_names(&self) -> (&str, &str) {
        (&self.vars[0], &self.vars[1])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e0: i64, e1: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e0, e1)).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(e0, e1));
        }
    }

    pub fn add(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for ((e0, e1), c) in &other.terms {
            out.add_term(*e0, *e1, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly2 {
        LaurentPoly2 {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly2 {
        if c.is_zero() {
            return Self::zero(&self.vars[0], &self.vars[1]);
        }
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for ((e0, e1), t) in &self.terms {
            out.add_term(*e0, *e1, t * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for ((a0, a1), c1) in &self.terms {
            for ((b0, b1), c2) in &other.terms {
                out.add_term(a0 + b0, a1 + b1, c1 * c2);
            }
        }
        out
    }

    /// Multiply in place by `c * v0^(e0/2) * v1^(e1/2)`.
    pub fn mul_monomial(&self, e0: i64, e1: i64, c: &Scalar) -> LaurentPoly2 {
        if c.is_zero() {
            return Self::zero(&self.vars[0], &self.vars[1]);
        }
        let mut out = Self::zero(&self.vars[0], &self.vars[1]);
        for ((a0, a1), t) in &self.terms {
            out.add_term(a0 + e0, a1 + e1, t * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly2 {
        let mut out = Self::one(&self.vars[0], &self.vars[1]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    fn var_index(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// Formal partial derivative of the given order in one variable.
    pub fn derivative(&self, var: &str, order: u32) -> Result<LaurentPoly2> {
        let idx = self.var_index(var)?;
        let mut cur = self.clone();
        for _ in 0..order {
            let mut next = Self::zero(&cur.vars[0], &cur.vars[1]);
            for ((e0, e1), c) in &cur.terms {
                let e = if idx == 0 { *e0 } else { *e1 };
                if e == 0 {
                    continue;
                }
                let coeff = c * &Scalar::ratio(e, 2);
                if idx == 0 {
                    next.add_term(e0 - 2, *e1, coeff);
                } else {
                    next.add_term(*e0, e1 - 2, coeff);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn evaluate(&self, v0: &Scalar, v1: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for ((e0, e1), c) in &self.terms {
            let f0 = pow_half(v0, *e0, &self.vars[0])?;
            let f1 = pow_half(v1, *e1, &self.vars[1])?;
            acc = &acc + &(&(c * &f0) * &f1);
        }
        Ok(acc)
    }

    /// Coefficient of `v1^(e1/2)` as a polynomial in the first variable.
    pub fn coeff_of_second(&self, e1: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.vars[0]);
        for ((a0, a1), c) in &self.terms {
            if *a1 == e1 {
                out.add_term(*a0, c.clone());
            }
        }
        out
    }

    /// Doubled-exponent bounds of the second variable.
    pub fn second_exp_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|(_, e1)| *e1);
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for e in it {
            lo = lo.min(e);
            hi = hi.max(e);
        }
        Some((lo, hi))
    }

    /// True when every exponent of both variables is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|(e0, e1)| e0 % 2 == 0 && e1 % 2 == 0)
    }

    /// True when every coefficient is an exact rational integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Substitute both variables, producing a one-variable polynomial in
    /// `target`. Rules follow the variable order of the polynomial.
    pub fn substitute(&self, rules: [&SubstRule; 2], target: &str) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(target);
        for ((e0, e1), c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (idx, (rule, e2)) in rules.iter().zip([*e0, *e1]).enumerate() {
                let factor = apply_rule(rule, e2, &self.vars[idx], target)?;
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

fn apply_rule(rule: &SubstRule, e2: i64, var: &str, target: &str) -> Result<LaurentPoly> {
    match rule {
        SubstRule::Var { e2: m } => {
            // var^(e2/2) -> target^(m*e2/4); doubled exponent m*e2/2.
            let num = m
                .checked_mul(e2)
                .ok_or_else(|| Error::UnsupportedExponent(var.to_string()))?;
            if num % 2 != 0 {
                return Err(Error::UnsupportedExponent(format!(
                    "{var}^{} under half-power substitution",
                    fmt_exp2(e2)
                )));
            }
            Ok(LaurentPoly::monomial(target, num / 2, Scalar::one()))
        }
        SubstRule::Constant(c) => Ok(LaurentPoly::constant(target, pow_half(c, e2, var)?)),
        SubstRule::SqrtDiff => {
            if e2 % 2 != 0 || e2 < 0 {
                return Err(Error::UnsupportedExponent(format!(
                    "{var}^{} cannot expand through target^(1/2) - target^(-1/2)",
                    fmt_exp2(e2)
                )));
            }
            let base = {
                let mut p = LaurentPoly::zero(target);
                p.add_term(1, Scalar::one());
                p.add_term(-1, Scalar::int(-1));
                p
            };
            Ok(base.pow((e2 / 2) as u32))
        }
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|((e0, e1), c)| {
                let mut parts = vec![fmt_coeff(c)];
                if *e0 != 0 {
                    parts.push(format!("{}^{}", self.vars[0], fmt_exp2(*e0)));
                }
                if *e1 != 0 {
                    parts.push(format!("{}^{}", self.vars[1], fmt_exp2(*e1)));
                }
                parts.join("*")
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The two-variable polynomial -a^-4 + 2a^-2 + a^-2 z^2.
    fn sample() -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero("a", "z");
        p.add_term(-8, 0, Scalar::int(-1));
        p.add_term(-4, 0, Scalar::int(2));
        p.add_term(-4, 4, Scalar::int(1));
        p
    }

    #[test]
    fn canonical_display_matches_lex_order() {
        assert_eq!(sample().to_string(), "-1*a^-4 + 2*a^-2 + 1*a^-2*z^2");
    }

    #[test]
    fn partial_derivatives() {
        let p = sample();
        // d/da: 4a^-5 - 4a^-3 - 2a^-3 z^2
        let da = p.derivative("a", 1).unwrap();
        let mut expect = LaurentPoly2::zero("a", "z");
        expect.add_term(-10, 0, Scalar::int(4));
        expect.add_term(-6, 0, Scalar::int(-4));
        expect.add_term(-6, 4, Scalar::int(-2));
        assert_eq!(da, expect);
        // d2/dz2 at any point is the constant 2a^-2.
        let dzz = p.derivative("z", 2).unwrap();
        assert_eq!(
            dzz,
            LaurentPoly2::monomial("a", "z", -4, 0, Scalar::int(2))
        );
        assert!(p.derivative("q", 1).is_err());
    }

    #[test]
    fn evaluate_and_poles() {
        let p = sample();
        // p(1, 0) = -1 + 2 = 1
        assert_eq!(
            p.evaluate(&Scalar::one(), &Scalar::zero()).unwrap(),
            Scalar::one()
        );
        // p(2, 0) = -1/16 + 2/4 = 7/16
        assert_eq!(
            p.evaluate(&Scalar::int(2), &Scalar::zero()).unwrap(),
            Scalar::ratio(7, 16)
        );
        assert_eq!(
            p.evaluate(&Scalar::zero(), &Scalar::zero()),
            Err(Error::PoleAtZero("a".into()))
        );
    }

    #[test]
    fn substitute_to_jones_form() {
        // a -> t, z -> t^{1/2} - t^{-1/2} turns the sample into
        // -t^-4 + t^-3 + t^-1.
        let p = sample();
        let j = p
            .substitute([&SubstRule::Var { e2: 2 }, &SubstRule::SqrtDiff], "t")
            .unwrap();
        let mut expect = LaurentPoly::zero("t");
        expect.add_term(-8, Scalar::int(-1));
        expect.add_term(-6, Scalar::int(1));
        expect.add_term(-2, Scalar::int(1));
        assert_eq!(j, expect);
    }

    #[test]
    fn substitute_constant_first_var() {
        // a -> 1, z -> z gives the Conway-style specialization 1 + z^2.
        let p = sample();
        let c = p
            .substitute(
                [&SubstRule::Constant(Scalar::one()), &SubstRule::Var { e2: 2 }],
                "z",
            )
            .unwrap();
        let mut expect = LaurentPoly::zero("z");
        expect.add_term(0, Scalar::one());
        expect.add_term(4, Scalar::one());
        assert_eq!(c, expect);
    }

    #[test]
    fn coeff_extraction() {
        let p = sample();
        let z0 = p.coeff_of_second(0);
        let mut expect = LaurentPoly::zero("a");
        expect.add_term(-8, Scalar::int(-1));
        expect.add_term(-4, Scalar::int(2));
        assert_eq!(z0, expect);
        let z2 = p.coeff_of_second(4);
        assert_eq!(z2, LaurentPoly::monomial("a", -4, Scalar::one()));
    }

    #[test]
    fn lattice_checks() {
        let p = sample();
        assert!(p.has_integer_exponents());
        assert!(p.has_integer_coefficients());
        let mut q = p.clone();
        q.add_term(1, 0, Scalar::one());
        assert!(!q.has_integer_exponents());
    }
}
