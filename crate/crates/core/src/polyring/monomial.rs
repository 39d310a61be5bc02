use smallvec::SmallVec;
use std::fmt;

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// A power product with dense exponent storage and a cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Weighted degree; `weights` must have the monomial's arity.
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
            degree: self.degree * e,
        }
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable occurring, if this is a pure power `x_i^k` with `k > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn with_extra_vars(&self, extra_front: usize) -> Monomial {
        let mut exps: Exps = SmallVec::from_elem(0, extra_front);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub(crate) fn drop_front_vars(&self, count: usize) -> Monomial {
        Monomial::from_exps(&self.exps[count..])
    }

    /// Renders with the given variable names, `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (e, name) in self.exps.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of total degree `degree` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(Monomial::from_exps(current));
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e;
            rec(pos + 1, left - e, current, out);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut current, &mut out);
    out
}
