use std::collections::BTreeMap;

use rayon::prelude::*;

use super::dims::artinian_length;
use super::poly::{binomial, fit_hilbert_polynomial, HilbertPoly, SeriesRational};
use crate::error::{Error, Result};
use crate::frobenius::shifted_closure;
use crate::groebner::Ideal;
use crate::polyring::Polynomial;
use crate::scenarios::{tight_closure_powers, Scenario};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    /// `I_n = I^n`
    Adic,
    /// `I_n = I^n + m^{n+t}`
    Shifted { t: u32 },
    /// `I_n = (I^n)*`, dispatched by closure route
    Tight,
}

/// A descending filtration `{I_n}` of the scenario ring with `I_0 = R`.
#[derive(Clone, Debug)]
pub struct FiltrationSpec {
    scenario: Scenario,
    base: Ideal,
    kind: FiltrationKind,
}

impl FiltrationSpec {
    pub fn adic(scenario: &Scenario, base: Ideal) -> Self {
        FiltrationSpec {
            scenario: scenario.clone(),
            base,
            kind: FiltrationKind::Adic,
        }
    }

    pub fn shifted(scenario: &Scenario, t: u32) -> Self {
        FiltrationSpec {
            scenario: scenario.clone(),
            base: scenario.hsop(),
            kind: FiltrationKind::Shifted { t },
        }
    }

    pub fn tight(scenario: &Scenario) -> Self {
        FiltrationSpec {
            scenario: scenario.clone(),
            base: scenario.hsop(),
            kind: FiltrationKind::Tight,
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn kind(&self) -> &FiltrationKind {
        &self.kind
    }
}

/// Materializes `I_n`.
pub fn filtration_member(f: &FiltrationSpec, n: u32) -> Result<Ideal> {
    let s = &f.scenario;
    let ctx = s.context();
    if n == 0 {
        return ctx.ideal(vec![Polynomial::one(s.ring())]);
    }
    match f.kind {
        FiltrationKind::Adic => ctx.power(&f.base, n),
        FiltrationKind::Shifted { t } => shifted_closure(s, n, t),
        FiltrationKind::Tight => Ok(tight_closure_powers(s, n)?.closure),
    }
}

/// `ℓ(R/I_n)` for each `n` in the range, computed in parallel.
pub fn lengths(f: &FiltrationSpec, ns: impl IntoIterator<Item = u32>) -> Result<BTreeMap<u32, u64>> {
    let ns: Vec<u32> = ns.into_iter().collect();
    let out: Result<Vec<(u32, u64)>> = ns
        .par_iter()
        .map(|&n| Ok((n, artinian_length(&filtration_member(f, n)?)?)))
        .collect();
    Ok(out?.into_iter().collect())
}

/// `ℓ(R/I_n)` for `n = 1..=n_max`.
pub fn hilbert_function(f: &FiltrationSpec, n_max: u32) -> Result<Vec<u64>> {
    Ok(lengths(f, 1..=n_max)?.into_values().collect())
}

/// Default fit window `r + d ..= r + 2d + 3`.
pub fn default_window(r: u32, d: usize) -> (u32, u32) {
    let d = d as u32;
    (r + d, r + 2 * d + 3)
}

/// Fits the filtration's Hilbert polynomial on the window `[lo, hi]`.
pub fn fit_filtration(f: &FiltrationSpec, window: (u32, u32)) -> Result<HilbertPoly> {
    let ls = lengths(f, window.0..=window.1)?;
    let samples: Vec<(i64, i64)> = ls.iter().map(|(n, l)| (*n as i64, *l as i64)).collect();
    fit_hilbert_polynomial(&samples, f.scenario.d())
}

/// The Hilbert series of `gr_F(R)`, assembled from `ℓ(I_n / I_{n+1})` for
/// enough `n` to expose the numerator. For shifted filtrations the numerator
/// must be `(t+1, 1, ..., 1)` with `r-t-1` trailing ones.
pub fn filtration_series(f: &FiltrationSpec, d: usize) -> Result<SeriesRational> {
    let s = &f.scenario;
    let terms = s.r() as usize + d + 2;
    let ls = lengths(f, 1..=terms as u32)?;
    let mut h = vec![0i64];
    h.extend(ls.values().map(|l| *l as i64));
    let graded: Vec<i64> = h.windows(2).map(|w| w[1] - w[0]).collect();
    let series = SeriesRational::from_coefficients(&graded, d);
    if let FiltrationKind::Shifted { t } = f.kind {
        let r = s.r();
        if r < t + 2 {
            return Err(Error::Domain(format!(
                "series check needs r >= t + 2, got r = {r}, t = {t}"
            )));
        }
        let expected = expected_h_vector(r, t);
        if series.numerator != expected {
            return Err(Error::Verification(format!(
                "h-vector {:?} differs from {:?}",
                series.numerator, expected
            )));
        }
    }
    Ok(series)
}

/// `(t+1, 1, ..., 1)` with `r - t - 1` ones.
pub fn expected_h_vector(r: u32, t: u32) -> Vec<i64> {
    let mut h = vec![t as i64 + 1];
    h.extend(std::iter::repeat_n(1, (r - t - 1) as usize));
    h
}

/// Per-`n` outcome of `I ∩ I_n = I I_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValabregaVallaReport {
    pub checks: Vec<(u32, bool)>,
}

impl ValabregaVallaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn summary(&self) -> String {
        let n_max = self.checks.last().map_or(0, |(n, _)| *n);
        if self.all_pass() {
            format!("Valabrega-Valla equalities hold for n <= {n_max}")
        } else {
            let bad: Vec<String> = self
                .checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(n, _)| n.to_string())
                .collect();
            format!("Valabrega-Valla equality fails at n = {}", bad.join(", "))
        }
    }
}

/// Checks `I ∩ I_n = I I_{n-1}` for `n = 1..=n_max` by ideal equality.
pub fn valabrega_valla_check(f: &FiltrationSpec, n_max: u32) -> Result<ValabregaVallaReport> {
    let ctx = f.scenario.context();
    let checks: Result<Vec<(u32, bool)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let lhs = ctx.intersection(&f.base, &filtration_member(f, n)?)?;
            let rhs = ctx.product(&f.base, &filtration_member(f, n - 1)?)?;
            Ok((n, ctx.equals(&lhs, &rhs)?))
        })
        .collect();
    Ok(ValabregaVallaReport { checks: checks? })
}

/// Least `m` with `J I_n = I_{n+1}` for all `m <= n < n_max`, or `None` if
/// the equality fails at `n_max - 1`. Stability past `n_max` is not proved.
pub fn reduction_number(f: &FiltrationSpec, j: &Ideal, n_max: u32) -> Result<Option<u32>> {
    let ctx = f.scenario.context();
    let eq: Result<Vec<bool>> = (0..n_max)
        .into_par_iter()
        .map(|n| {
            let lhs = ctx.product(j, &filtration_member(f, n)?)?;
            ctx.equals(&lhs, &filtration_member(f, n + 1)?)
        })
        .collect();
    let eq = eq?;
    let mut m = None;
    for n in (0..n_max).rev() {
        if eq[n as usize] {
            m = Some(n);
        } else {
            break;
        }
    }
    Ok(m)
}

/// Shifted-filtration analytics for `K[X_1..X_{d+1}]/(sum X_i^r)` with
/// `I_n = I^n + m^{n+t}`.
#[derive(Clone, Debug)]
pub struct ShiftedFiltrationReport {
    pub p: u32,
    pub r: u32,
    pub t: u32,
    pub d: usize,
    pub fitted: HilbertPoly,
    pub expected: HilbertPoly,
    pub postulation: Option<i64>,
    pub expected_postulation: i64,
    pub reduction: Option<u32>,
    pub expected_reduction: u32,
    pub series: Option<SeriesRational>,
    pub valabrega_valla: ValabregaVallaReport,
    pub assertions: Vec<(String, bool)>,
}

impl ShiftedFiltrationReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|(_, ok)| *ok)
    }
}

/// Coefficients predicted for the shifted filtration: `e_0 = r` and
/// `e_j = C(r-t, j+1)` for `1 <= j <= r-t-1`, zero beyond.
pub fn shifted_polynomial(r: u32, t: u32, d: usize) -> HilbertPoly {
    let mut coeffs = vec![r as i64];
    for j in 1..=d as u32 {
        let c = if r >= t + 2 && j < r - t {
            binomial((r - t) as i64, j + 1) as i64
        } else {
            0
        };
        coeffs.push(c);
    }
    HilbertPoly::new(coeffs)
}

/// Fits the polynomial, postulation number, reduction number, h-vector and
/// Valabrega-Valla equalities of the shifted filtration and compares each
/// against its closed form.
pub fn binomial_coefficients_check(p: u32, r: u32, t: u32, d: usize, vv_max: u32) -> Result<ShiftedFiltrationReport> {
    let s = Scenario::new(p, r, d + 1)?;
    let f = FiltrationSpec::shifted(&s, t);
    let (lo, hi) = default_window(r, d);
    let red_max = (r - t.min(r) + 1).max(2);
    let top = hi.max(red_max);
    let ls = lengths(&f, 1..=top)?;
    let samples: Vec<(i64, i64)> = (lo..=hi).map(|n| (n as i64, ls[&n] as i64)).collect();
    let fitted = fit_hilbert_polynomial(&samples, d)?;
    let expected = shifted_polynomial(r, t, d);
    let observed: BTreeMap<i64, i64> = ls.iter().map(|(n, l)| (*n as i64, *l as i64)).collect();
    let postulation = fitted.postulation_number(&observed);
    let expected_postulation = r as i64 - t as i64 - d as i64 - 1;
    let reduction = reduction_number(&f, &s.hsop(), red_max)?;
    let expected_reduction = if r >= t + 2 { r - t - 1 } else { 0 };
    let series = if r >= t + 2 {
        filtration_series(&f, d).ok()
    } else {
        None
    };
    let vv = valabrega_valla_check(&f, vv_max)?;
    let mut assertions = vec![
        ("coefficients".to_string(), fitted == expected),
        (
            "postulation number".to_string(),
            r < t + 2 || postulation == Some(expected_postulation),
        ),
        ("reduction number".to_string(), reduction == Some(expected_reduction)),
        ("valabrega-valla".to_string(), vv.all_pass()),
    ];
    if r >= t + 2 {
        assertions.push(("h-vector".to_string(), series.is_some()));
    }
    Ok(ShiftedFiltrationReport {
        p,
        r,
        t,
        d,
        fitted,
        expected,
        postulation,
        expected_postulation,
        reduction,
        expected_reduction,
        series,
        valabrega_valla: vv,
        assertions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::build_scenario;

    #[test]
    fn members() {
        let s = build_scenario(5, 4, 4).unwrap();
        let shifted = FiltrationSpec::shifted(&s, 2);
        assert!(filtration_member(&shifted, 0)
            .unwrap()
            .contains(&Polynomial::one(s.ring()))
            .unwrap());
        let adic = FiltrationSpec::adic(&s, s.hsop());
        assert_eq!(artinian_length(&filtration_member(&adic, 1).unwrap()).unwrap(), 4);
        let m = FiltrationSpec::adic(&s, s.maximal());
        assert_eq!(hilbert_function(&m, 1).unwrap(), vec![1]);
    }

    #[test]
    fn quartic_tight_lengths() {
        let s = build_scenario(3, 4, 4).unwrap();
        assert_eq!(hilbert_function(&FiltrationSpec::tight(&s), 3).unwrap(), vec![2, 9, 25]);
    }

    #[test]
    fn h_vector_of_truncated_line() {
        let s = Scenario::new(101, 4, 1).unwrap();
        let series = filtration_series(&FiltrationSpec::shifted(&s, 1), 0).unwrap();
        assert_eq!(series.numerator, vec![2, 1, 1]);
    }

    #[test]
    fn shortest_h_vector() {
        let s = Scenario::new(101, 4, 3).unwrap();
        let series = filtration_series(&FiltrationSpec::shifted(&s, 2), 2).unwrap();
        assert_eq!(series.numerator, vec![3, 1]);
    }

    #[test]
    fn reduction_number_of_maximal_ideal() {
        let s = build_scenario(5, 4, 4).unwrap();
        let m_adic = FiltrationSpec::adic(&s, s.maximal());
        assert_eq!(reduction_number(&m_adic, &s.hsop(), 5).unwrap(), Some(3));
        let i_adic = FiltrationSpec::adic(&s, s.hsop());
        assert_eq!(reduction_number(&i_adic, &s.hsop(), 3).unwrap(), Some(0));
    }

    #[test]
    fn small_shifted_check() {
        let rep = binomial_coefficients_check(101, 4, 1, 2, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.assertions);
        assert_eq!(rep.fitted.coeffs(), &[4, 3, 1]);
    }
}
