use super::Scenario;
use crate::error::{Error, Result};
use crate::hilbert::{expected_h_vector, shifted_polynomial, HilbertPoly, SeriesRational};

/// Shift `t` with `(I^n)* = I^n + m^{n+t}` for the covering theorem, if any.
pub fn predicted_shift(s: &Scenario) -> Result<u32> {
    if s.is_minimal_prime_case() {
        return Err(Error::NoRoute(
            "the closure filtration of the characteristic two quartic is not I-admissible".into(),
        ));
    }
    if s.v() >= 2 && s.is_degree_p_plus_1() {
        return Ok(1);
    }
    if s.fpure_colon_applies() || s.strong_vanishing_applies() {
        return Ok(s.d() as u32 - 1);
    }
    Err(Error::NoRoute(format!("no theorem covers (p, r, v) = ({})", s.label())))
}

/// The tight Hilbert polynomial predicted in closed form.
pub fn predicted_polynomial(s: &Scenario) -> Result<HilbertPoly> {
    let t = predicted_shift(s)?;
    Ok(shifted_polynomial(s.r(), t, s.d()))
}

/// Numerator of the Hilbert series of `gr` for `I_n = I^n + m^{n+t}`.
pub fn predicted_h_vector(r: u32, t: u32) -> Vec<i64> {
    if r >= t + 2 {
        expected_h_vector(r, t)
    } else {
        vec![1; r as usize]
    }
}

/// `ℓ(R/(I^n)*)` for `n = 1..=n_max`, read off the predicted Hilbert series
/// (exact for every `n`, not only beyond the postulation number).
pub fn predicted_lengths(s: &Scenario, n_max: u32) -> Result<Vec<u64>> {
    let t = predicted_shift(s)?;
    let series = SeriesRational {
        numerator: predicted_h_vector(s.r(), t),
        denominator_exp: s.d(),
    };
    let mut acc = 0i64;
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 0..n_max as usize {
        acc += series.coefficient(n);
        out.push(acc as u64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::build_scenario;

    #[test]
    fn quartic_predictions() {
        let s = build_scenario(5, 4, 4).unwrap();
        assert_eq!(predicted_polynomial(&s).unwrap().coeffs(), &[4, 1, 0, 0]);
        assert_eq!(predicted_lengths(&s, 5).unwrap(), vec![3, 13, 34, 70, 125]);
        let s = build_scenario(3, 4, 4).unwrap();
        assert_eq!(predicted_polynomial(&s).unwrap().coeffs(), &[4, 3, 1, 0]);
        assert_eq!(predicted_lengths(&s, 5).unwrap(), vec![2, 9, 25, 54, 100]);
        assert!(predicted_polynomial(&build_scenario(2, 4, 4).unwrap()).is_err());
    }

    #[test]
    fn two_dimensional_warm_up() {
        let s = build_scenario(7, 3, 3).unwrap();
        assert_eq!(predicted_polynomial(&s).unwrap().coeffs(), &[3, 1, 0]);
        // r C(n+1,2) - C(r-1,2) n + C(r-1,3)
        let s = build_scenario(7, 6, 3).unwrap();
        let p = predicted_polynomial(&s).unwrap();
        for n in 1..8i64 {
            assert_eq!(p.eval(n), 6 * (n * (n + 1) / 2) as i128 - 10 * n as i128 + 10);
        }
    }
}
