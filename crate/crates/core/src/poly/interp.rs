use super::{LaurentPoly, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of checking a value sequence against a polynomial degree bound.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum DegreeFit {
    /// The sequence agrees with a polynomial of exactly this degree.
    FitsDegree(usize),
    /// No polynomial of degree at most the requested bound fits.
    Exceeds,
}

/// Unique polynomial of degree < values.len() through the points
/// (0, values[0]), (1, values[1]), ... via Newton forward differences.
pub fn interp_grid(var: &str, values: &[Scalar]) -> Result<LaurentPoly> {
    if values.is_empty() {
        return Err(Error::TooFewValues { got: 0, need: 1 });
    }
    let mut poly = LaurentPoly::zero(var);
    // basis = binom(x, k), built incrementally.
    let mut basis = LaurentPoly::constant(var, Scalar::one());
    let mut row: Vec<Scalar> = values.to_vec();
    for k in 0..values.len() {
        poly = poly.add(&basis.scale(&row[0]));
        if k + 1 == values.len() {
            break;
        }
        // next difference row
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        // binom(x, k+1) = binom(x, k) * (x - k) / (k + 1)
        let mut lin = LaurentPoly::zero(var);
        lin.add_term(2, Scalar::ratio(1, (k + 1) as i64));
        lin.add_term(0, Scalar::ratio(-(k as i64), (k + 1) as i64));
        basis = basis.mul(&lin);
    }
    Ok(poly)
}

/// Forward differences of order `k + 1` vanish exactly when consecutive
/// samples of a degree-k polynomial are fed in. Returns the least degree
/// within `bound` whose higher differences all vanish (within `eps` relative
/// to the largest sample for approximate data), or `Exceeds`.
pub fn finite_diff_degree(values: &[Scalar], bound: usize, eps: f64) -> Result<DegreeFit> {
    if values.len() < bound + 2 {
        return Err(Error::TooFewValues {
            got: values.len(),
            need: bound + 2,
        });
    }
    let scale = values
        .iter()
        .map(|v| {
            let c = v.to_complex();
            c.norm()
        })
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let mut row: Vec<Scalar> = values.to_vec();
    for degree in 0..=bound {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        if row.iter().all(|d| d.is_zero_within(eps * scale)) {
            return Ok(DegreeFit::FitsDegree(degree));
        }
    }
    Ok(DegreeFit::Exceeds)
}

/// Interpolate values sampled on the full integer grid {0..=n}^k, row-major
/// with the first variable slowest. Produces the unique polynomial of degree
/// at most n in each variable.
pub fn interp_multigrid(vars: &[String], n: usize, values: &[Scalar]) -> Result<MultiPoly> {
    let expected = (n + 1).pow(vars.len() as u32);
    if values.len() != expected {
        return Err(Error::IncompleteGrid {
            expected,
            got: values.len(),
        });
    }
    if vars.is_empty() {
        return Ok(MultiPoly::constant(vec![], values[0].clone()));
    }
    if vars.len() == 1 {
        let uni = interp_grid(&vars[0], values)?;
        let mut out = MultiPoly::zero(vars.to_vec());
        for (e2, c) in uni.terms() {
            debug_assert!(e2 >= 0 && e2 % 2 == 0);
            out.add_term(vec![(e2 / 2) as u32], c.clone());
        }
        return Ok(out);
    }
    // Recurse on the trailing variables for each value of the first.
    let block = expected / (n + 1);
    let inner: Vec<MultiPoly> = values
        .chunks(block)
        .map(|chunk| interp_multigrid(&vars[1..], n, chunk))
        .collect::<Result<_>>()?;
    // For every monomial of the inner polynomials, interpolate its
    // coefficient sequence along the first variable.
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for p in &inner {
        for (e, _) in p.terms() {
            if !monomials.iter().any(|m| m == e) {
                monomials.push(e.to_vec());
            }
        }
    }
    let mut out = MultiPoly::zero(vars.to_vec());
    for mono in monomials {
        let seq: Vec<Scalar> = inner
            .iter()
            .map(|p| {
                p.terms()
                    .find(|(e, _)| *e == mono.as_slice())
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Scalar::zero)
            })
            .collect();
        let uni = interp_grid(&vars[0], &seq)?;
        for (e2, c) in uni.terms() {
            debug_assert!(e2 >= 0 && e2 % 2 == 0);
            let mut exps = vec![(e2 / 2) as u32];
            exps.extend_from_slice(&mono);
            out.add_term(exps, c.clone());
        }
    }
    Ok(out)
}

/// First `order + 1` Taylor coefficients at 0 of `f(g(x))`, where `g` is
/// given by its own Taylor coefficients at 0. Uses
/// f(g) = sum_k f^(k)(g(0))/k! * (g - g(0))^k, which truncates because
/// g - g(0) has no constant term.
pub fn series_compose(f: &LaurentPoly, g_coeffs: &[Scalar], order: usize) -> Result<Vec<Scalar>> {
    if g_coeffs.is_empty() {
        return Err(Error::TooFewValues { got: 0, need: 1 });
    }
    let g0 = g_coeffs[0].clone();
    // (g - g0) as a truncated series.
    let mut shifted: Vec<Scalar> = g_coeffs.iter().take(order + 1).cloned().collect();
    shifted.resize(order + 1, Scalar::zero());
    shifted[0] = Scalar::zero();

    let mut out = vec![Scalar::zero(); order + 1];
    let mut power = {
        // (g - g0)^0 = 1
        let mut p = vec![Scalar::zero(); order + 1];
        p[0] = Scalar::one();
        p
    };
    let mut deriv = f.clone();
    let mut factorial = Scalar::one();
    for k in 0..=order {
        if k > 0 {
            deriv = deriv.derivative(1);
            factorial = &factorial * &Scalar::int(k as i64);
            power = series_mul(&power, &shifted, order);
        }
        let fk = deriv.evaluate(&g0)?;
        let c = fk.div(&factorial)?;
        for (o, p) in out.iter_mut().zip(&power) {
            *o = &*o + &(&c * p);
        }
    }
    Ok(out)
}

fn series_mul(a: &[Scalar], b: &[Scalar], order: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); order + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|v| Scalar::int(*v)).collect()
    }

    #[test]
    fn grid_interpolation_recovers_quadratic() {
        // x^2 - 3x + 2 at 0..4
        let p = interp_grid("x", &ints(&[2, 0, 0, 2, 6])).unwrap();
        let mut expect = LaurentPoly::zero("x");
        expect.add_term(4, Scalar::one());
        expect.add_term(2, Scalar::int(-3));
        expect.add_term(0, Scalar::int(2));
        assert_eq!(p, expect);
    }

    #[test]
    fn degree_detection() {
        // Linear sequence fits degree 1 inside any bound >= 1.
        let vals = ints(&[5, 8, 11, 14, 17]);
        assert_eq!(
            finite_diff_degree(&vals, 2, 1e-12).unwrap(),
            DegreeFit::FitsDegree(1)
        );
        // Geometric growth exceeds every polynomial bound it is tested at.
        let geo = ints(&[1, 2, 4, 8, 16, 32]);
        assert_eq!(
            finite_diff_degree(&geo, 3, 1e-12).unwrap(),
            DegreeFit::Exceeds
        );
        assert!(matches!(
            finite_diff_degree(&geo, 5, 1e-12),
            Err(Error::TooFewValues { .. })
        ));
    }

    #[test]
    fn multigrid_two_vars() {
        // f(x0, x1) = x0 * x1 + 2 on {0,1,2}^2, x0 slowest.
        let mut values = Vec::new();
        for x0 in 0..=2_i64 {
            for x1 in 0..=2_i64 {
                values.push(Scalar::int(x0 * x1 + 2));
            }
        }
        let vars = vec!["x0".to_string(), "x1".to_string()];
        let p = interp_multigrid(&vars, 2, &values).unwrap();
        assert_eq!(p.to_string(), "2 + 1*x0^1*x1^1");
        assert_eq!(
            p.evaluate(&[Scalar::int(5), Scalar::int(7)]).unwrap(),
            Scalar::int(37)
        );
    }

    #[test]
    fn compose_polynomial_with_series() {
        // f(t) = t^2, g(x) = 1 + x: (1 + x)^2 = 1 + 2x + x^2.
        let f = LaurentPoly::monomial("t", 4, Scalar::one());
        let g = ints(&[1, 1]);
        let coeffs = series_compose(&f, &g, 3).unwrap();
        assert_eq!(coeffs, ints(&[1, 2, 1, 0]));
    }

    #[test]
    fn compose_with_pole_reports_error() {
        let f = LaurentPoly::monomial("t", -2, Scalar::one());
        assert!(series_compose(&f, &[Scalar::zero(), Scalar::one()], 2).is_err());
    }
}
