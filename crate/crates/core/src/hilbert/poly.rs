use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `C(x, k)` for any integer `x` (the binomial polynomial evaluated at `x`).
pub fn binomial(x: i64, k: u32) -> i128 {
    let mut c: i128 = 1;
    for i in 0..k as i128 {
        c = c * (x as i128 - i) / (i + 1);
    }
    c
}

/// A numerical polynomial of degree `d` in the basis
/// `P(n) = sum_i (-1)^i e_i C(n + d - 1 - i, d - i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertPoly {
    coeffs: Vec<i64>,
}

impl HilbertPoly {
    /// Coefficients `e_0, ..., e_d`.
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a Hilbert polynomial has at least e_0");
        HilbertPoly { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn e(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, n: i64) -> i128 {
        let d = self.dim() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * *e as i128 * binomial(n + d - 1 - i as i64, (d - i as i64) as u32)
            })
            .sum()
    }

    /// Largest `n` with `H(n) != P(n)`, where `H(n) = 0` for `n <= 0` and is
    /// read from `observed` (which must cover `1..=max`) above that.
    pub fn postulation_number(&self, observed: &BTreeMap<i64, i64>) -> Option<i64> {
        let top = observed.keys().next_back().copied().unwrap_or(0);
        let bottom = -(self.dim() as i64) - 2;
        (bottom..=top).rev().find(|&n| {
            let h = if n <= 0 {
                0
            } else {
                observed.get(&n).copied().unwrap_or(0)
            };
            h as i128 != self.eval(n)
        })
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim() as i64;
        for (i, e) in self.coeffs.iter().enumerate() {
            let negative = (i % 2 == 1) != (*e < 0);
            let k = d - i as i64;
            let top = d - 1 - i as i64;
            let term = match top {
                _ if k == 0 => e.abs().to_string(),
                0 => format!("{}*C(n,{k})", e.abs()),
                t if t > 0 => format!("{}*C(n+{t},{k})", e.abs()),
                t => format!("{}*C(n{t},{k})", e.abs()),
            };
            if i == 0 {
                write!(f, "{}{term}", if negative { "-" } else { "" })?;
            } else {
                write!(f, " {} {term}", if negative { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

type Q = Ratio<i128>;

fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let factor = a[row][col] / a[col][col];
                let (pivot_row, target) = if row < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[row])
                } else {
                    let (lo, hi) = a.split_at_mut(row);
                    (&lo[col], &mut hi[0])
                };
                for (t, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                    *t -= factor * p;
                }
                let sub = factor * b[col];
                b[row] -= sub;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Fits a degree-`d` Hilbert polynomial to consecutive samples `(n, H(n))`.
/// The first `d + 1` samples determine the coefficients; every further
/// sample (at least three) must agree.
pub fn fit_hilbert_polynomial(values: &[(i64, i64)], d: usize) -> Result<HilbertPoly> {
    if values.len() < d + 4 {
        return Err(Error::Fit(format!(
            "need at least {} samples, got {}",
            d + 4,
            values.len()
        )));
    }
    if values.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Fit("samples must be at consecutive n".into()));
    }
    let di = d as i64;
    let rows: Vec<Vec<Q>> = values[..=d]
        .iter()
        .map(|(n, _)| {
            (0..=d)
                .map(|i| {
                    let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
                    Q::from_integer(sign * binomial(n + di - 1 - i as i64, (d - i) as u32))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Q> = values[..=d].iter().map(|(_, h)| Q::from_integer(*h as i128)).collect();
    let sol = solve(rows, rhs).ok_or_else(|| Error::Fit("singular binomial system".into()))?;
    let start = values[0].0;
    let advice = format!("raise the window start {start} past the postulation number");
    let mut coeffs = Vec::with_capacity(d + 1);
    for x in &sol {
        if !x.is_integer() {
            return Err(Error::Fit(format!("non-integral coefficient {x}; {advice}")));
        }
        let v = i64::try_from(x.to_integer()).map_err(|_| Error::Overflow("Hilbert coefficient".into()))?;
        coeffs.push(v);
    }
    let poly = HilbertPoly::new(coeffs);
    for (n, h) in &values[d + 1..] {
        if poly.eval(*n) != *h as i128 {
            return Err(Error::Fit(format!(
                "held-out sample n = {n}: observed {h}, fitted {}; {advice}",
                poly.eval(*n)
            )));
        }
    }
    Ok(poly)
}

/// `h(λ) / (1 - λ)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRational {
    pub numerator: Vec<i64>,
    pub denominator_exp: usize,
}

impl SeriesRational {
    /// `h(1)`, the multiplicity.
    pub fn e0(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// Coefficient of `λ^n` in the expansion.
    pub fn coefficient(&self, n: usize) -> i64 {
        let d = self.denominator_exp;
        self.numerator
            .iter()
            .enumerate()
            .take_while(|(i, _)| *i <= n)
            .map(|(i, h)| {
                let k = (n - i) as i64;
                let c = if d == 0 {
                    i128::from(k == 0)
                } else {
                    binomial(k + d as i64 - 1, d as u32 - 1)
                };
                *h as i128 * c
            })
            .sum::<i128>() as i64
    }

    /// Multiplies a truncated series by `(1 - λ)^d` and drops trailing zeros.
    pub fn from_coefficients(series: &[i64], d: usize) -> Self {
        let mut h = series.to_vec();
        for _ in 0..d {
            for i in (1..h.len()).rev() {
                h[i] -= h[i - 1];
            }
        }
        while h.len() > 1 && *h.last().unwrap() == 0 {
            h.pop();
        }
        SeriesRational {
            numerator: h,
            denominator_exp: d,
        }
    }
}
