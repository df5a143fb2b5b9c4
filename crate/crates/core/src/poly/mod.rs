//! Exact polynomial algebra.
//!
//! Exponents live on the half-integer lattice: every stored exponent is an
//! `i64` holding *twice* the mathematical exponent, so `t^{1/2}` is key `1`
//! and `t^{-2}` is key `-4`. Integer-exponent polynomials simply keep all
//! keys even. Coefficient maps never store zeros.

mod interp;
mod laurent;
mod laurent2;
mod multi;

pub use interp::{finite_diff_degree, interp_grid, interp_multigrid, series_compose, DegreeFit};
pub use laurent::LaurentPoly;
pub use laurent2::{LaurentPoly2, SubstRule};
pub use multi::MultiPoly;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `value^(e2/2)` where `e2` is a doubled exponent. `var` names the
/// variable for pole reporting.
pub(crate) fn pow_half(value: &Scalar, e2: i64, var: &str) -> Result<Scalar> {
    if value.is_zero() {
        if e2 < 0 {
            return Err(Error::PoleAtZero(var.to_string()));
        }
        if e2 == 0 {
            return Ok(Scalar::one());
        }
        return Ok(Scalar::zero());
    }
    let whole = e2.div_euclid(2);
    let rem = e2.rem_euclid(2);
    let mut out = value.pow(whole)?;
    if rem == 1 {
        out = &out * &value.sqrt_principal()?;
    }
    Ok(out)
}

/// Render a doubled exponent: even values print as integers, odd values as
/// halves (`3/2`, `-1/2`).
pub(crate) fn fmt_exp2(e2: i64) -> String {
    if e2 % 2 == 0 {
        format!("{}", e2 / 2)
    } else {
        format!("{e2}/2")
    }
}

/// Coefficient rendering for term display: sums and differences get
/// parenthesized so `c*x^2` stays unambiguous.
pub(crate) fn fmt_coeff(c: &Scalar) -> String {
    let body = c.to_string();
    let needs_parens = body[1..].contains('+') || body[1..].contains('-');
    if needs_parens {
        format!("({body})")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_half_integer_and_half_cases() {
        let four = Scalar::int(4);
        assert_eq!(pow_half(&four, 4, "t").unwrap(), Scalar::int(16));
        assert_eq!(pow_half(&four, -2, "t").unwrap(), Scalar::ratio(1, 4));
        assert_eq!(pow_half(&four, 1, "t").unwrap(), Scalar::int(2));
        // 4^(-1/2) = 1/2
        assert_eq!(pow_half(&four, -1, "t").unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn pow_half_pole_and_zero() {
        let zero = Scalar::zero();
        assert_eq!(
            pow_half(&zero, -2, "t"),
            Err(Error::PoleAtZero("t".into()))
        );
        assert_eq!(pow_half(&zero, 2, "t").unwrap(), Scalar::zero());
        assert_eq!(pow_half(&zero, 0, "t").unwrap(), Scalar::one());
    }
}
