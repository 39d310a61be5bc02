use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::Polynomial;
use crate::scenarios::Scenario;

/// Where a closure formula comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    StrongVanishing,
    ResolutionShift,
    FPureColon,
    CharPDegP1,
    MinimalPrime,
    ColonComputed,
}

impl Route {
    pub fn tag(&self) -> &'static str {
        match self {
            Route::StrongVanishing => "strong-vanishing",
            Route::ResolutionShift => "resolution-shift",
            Route::FPureColon => "f-pure-colon",
            Route::CharPDegP1 => "char-p-deg-p+1",
            Route::MinimalPrime => "minimal-prime",
            Route::ColonComputed => "colon-computed",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The tight closure of `I^n` as produced by one route.
#[derive(Clone, Debug)]
pub struct ClosureDescription {
    pub n: u32,
    pub base: Ideal,
    pub closure: Ideal,
    pub route: Route,
    /// `t` when the closure has the form `I^n + m^{n+t}`.
    pub shift: Option<u32>,
    /// False when `{(I^n)*}` is not an I-admissible filtration.
    pub admissible: bool,
    pub formula: String,
}

impl ClosureDescription {
    /// Every generator of the base lies in the closure.
    pub fn contains_base(&self) -> Result<bool> {
        self.base.is_subset_of(&self.closure)
    }
}

/// Test elements `x_i^{r-1}`, scalar multiples of the partials of the relation.
#[derive(Clone, Debug)]
pub struct TestElementSet {
    pub elements: Vec<Polynomial>,
    pub justification: String,
    /// False when the scenario lies outside the cases with a published
    /// test-element statement; results then count as evidence only.
    pub established: bool,
}

impl TestElementSet {
    /// Proxy for lying outside every minimal prime: each element is nonzero
    /// modulo the relation and modulo each coordinate hyperplane it avoids.
    pub fn check(&self, s: &Scenario) -> Result<bool> {
        let ctx = s.context();
        for c in &self.elements {
            if ctx.ideal(Vec::new())?.contains(c)? {
                return Ok(false);
            }
            for j in 0..s.v() {
                let involves = c.terms().iter().any(|(m, _)| m.exps()[j] > 0);
                if !involves && ctx.ideal(vec![s.var(j)])?.contains(c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn test_elements(s: &Scenario) -> Result<TestElementSet> {
    if s.p_divides_r() {
        return Err(Error::UnsupportedScenario(format!(
            "p = {} divides r = {}: no test elements available",
            s.p(),
            s.r()
        )));
    }
    let elements = (0..s.v()).map(|i| s.var(i).pow(s.r() as u64 - 1)).collect();
    let established = s.is_degree_p_plus_1() || s.fpure_colon_applies() || (s.r(), s.v()) == (4, 4);
    Ok(TestElementSet {
        elements,
        justification: "partial derivatives of the relation (isolated singularity)".into(),
        established,
    })
}

/// `I^n` as written in formulas, with `I^1` shown as `I`.
pub(crate) fn power_label(n: u32) -> String {
    if n == 1 {
        "I".into()
    } else {
        format!("I^{n}")
    }
}

fn not_applicable(what: &str, s: &Scenario) -> Error {
    Error::FormulaNotApplicable(format!("{what} does not apply to (p, r, v) = ({})", s.label()))
}

/// `I^n + m^{n+t}` in R, with `I^0 = R`.
pub fn shifted_closure(s: &Scenario, n: u32, t: u32) -> Result<Ideal> {
    let ctx = s.context();
    let power = ctx.power(&s.hsop(), n)?;
    if n == 0 {
        return Ok(power);
    }
    ctx.sum(&power, &ctx.maximal_power(n + t)?)
}

fn shifted_description(s: &Scenario, n: u32, t: u32, route: Route) -> Result<ClosureDescription> {
    if n == 0 {
        return Err(Error::Domain("closure of I^0 is the unit ideal".into()));
    }
    Ok(ClosureDescription {
        n,
        base: s.context().power(&s.hsop(), n)?,
        closure: shifted_closure(s, n, t)?,
        route,
        shift: Some(t),
        admissible: true,
        formula: format!("{} + m^{}", power_label(n), n + t),
    })
}

/// `(y_1..y_d)* = (y_1..y_d) + m^A` with `A` the sum of the degrees.
pub fn strong_vanishing_closure(hsop: &[Polynomial], s: &Scenario) -> Result<ClosureDescription> {
    if !s.strong_vanishing_applies() {
        return Err(not_applicable("strong vanishing", s));
    }
    if hsop.len() != s.d() {
        return Err(Error::Domain(format!(
            "expected {} parameters, got {}",
            s.d(),
            hsop.len()
        )));
    }
    let mut a = 0;
    for y in hsop {
        if y.is_zero() || !y.is_homogeneous() {
            return Err(Error::Domain(format!("parameter {y} is not homogeneous")));
        }
        a += y.degree().unwrap_or(0);
    }
    let ctx = s.context();
    let base = ctx.ideal(hsop.to_vec())?;
    let closure = ctx.sum(&base, &ctx.maximal_power(a)?)?;
    Ok(ClosureDescription {
        n: 1,
        base,
        closure,
        route: Route::StrongVanishing,
        shift: Some(a.saturating_sub(1)),
        admissible: true,
        formula: format!("I + m^{a}"),
    })
}

/// `(I^n)* = I^n + m^{n+d-1}` from strong vanishing and the linear resolution of `I^n`.
pub fn power_closure_shift(s: &Scenario, n: u32) -> Result<ClosureDescription> {
    if !s.strong_vanishing_applies() {
        return Err(not_applicable("strong vanishing", s));
    }
    shifted_description(s, n, s.d() as u32 - 1, Route::ResolutionShift)
}

/// F-pure with `r = v`: `I* = I : m`, and `(I^n)* = I^{n-1} I*`.
pub fn fpure_power_closure(s: &Scenario, n: u32) -> Result<ClosureDescription> {
    if !s.fpure_colon_applies() {
        return Err(not_applicable("the F-pure colon formula", s));
    }
    if n == 0 {
        return Err(Error::Domain("closure of I^0 is the unit ideal".into()));
    }
    let ctx = s.context();
    let i = s.hsop();
    let star = ctx.colon_ideal(&i, &s.maximal())?;
    let closure = if n == 1 {
        star
    } else {
        ctx.product(&ctx.power(&i, n - 1)?, &star)?
    };
    let t = s.d() as u32 - 1;
    let matches_shift = closure.equals(&shifted_closure(s, n, t)?)?;
    let (shift, formula) = if matches_shift {
        (Some(t), format!("{} + m^{}", power_label(n), n + t))
    } else {
        (None, format!("I^{} (I : m)", n - 1))
    };
    Ok(ClosureDescription {
        n,
        base: ctx.power(&i, n)?,
        closure,
        route: Route::FPureColon,
        shift,
        admissible: true,
        formula,
    })
}

/// `r = p + 1`: `(I^n)* = I^n + m^{n+1}`.
pub fn charp_degp1_closure(s: &Scenario, n: u32) -> Result<ClosureDescription> {
    if !s.is_degree_p_plus_1() || s.v() < 2 {
        return Err(not_applicable("the degree p+1 formula", s));
    }
    shifted_description(s, n, 1, Route::CharPDegP1)
}

/// Characteristic two quartic: the relation is `(x+y+z+w)^4` and
/// `(I^n)* = I^n + (x+y+z+w)`.
pub fn minimal_prime_closure(s: &Scenario, n: u32) -> Result<ClosureDescription> {
    if !s.is_minimal_prime_case() {
        return Err(not_applicable("the minimal prime formula", s));
    }
    if n == 0 {
        return Err(Error::Domain("closure of I^0 is the unit ideal".into()));
    }
    let ctx = s.context();
    let ell = (0..s.v()).fold(Polynomial::zero(s.ring()), |acc, i| &acc + &s.var(i));
    let base = ctx.power(&s.hsop(), n)?;
    let closure = ctx.sum(&base, &ctx.ideal(vec![ell])?)?;
    Ok(ClosureDescription {
        n,
        base,
        closure,
        route: Route::MinimalPrime,
        shift: None,
        admissible: false,
        formula: format!("{} + (x1 + ... + x{})", power_label(n), s.v()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::build_scenario;

    #[test]
    fn test_element_supply() {
        let s = build_scenario(5, 4, 4).unwrap();
        let t = test_elements(&s).unwrap();
        assert_eq!(t.elements.len(), 4);
        assert!(t.elements.iter().all(|c| c.degree() == Some(3)));
        assert!(t.check(&s).unwrap());
        let s = build_scenario(2, 4, 4).unwrap();
        assert!(matches!(test_elements(&s), Err(Error::UnsupportedScenario(_))));
    }

    #[test]
    fn minimal_prime_gives_maximal_ideal() {
        let s = build_scenario(2, 4, 4).unwrap();
        let c = minimal_prime_closure(&s, 1).unwrap();
        assert!(c.closure.equals(&s.maximal()).unwrap());
        assert!(c.closure.contains(&s.var(3)).unwrap());
        assert!(!c.admissible);
    }

    #[test]
    fn fpure_colon_quartic() {
        let s = build_scenario(5, 4, 4).unwrap();
        let c = fpure_power_closure(&s, 1).unwrap();
        let mut gens: Vec<Polynomial> = (0..3).map(|i| s.var(i)).collect();
        gens.push(s.var(3).pow(3));
        assert!(c.closure.equals(&s.context().ideal(gens).unwrap()).unwrap());
        assert_eq!(c.shift, Some(2));
        assert!(c.contains_base().unwrap());
    }

    #[test]
    fn gates() {
        let s = build_scenario(3, 4, 4).unwrap();
        let hsop: Vec<Polynomial> = (0..3).map(|i| s.var(i)).collect();
        assert!(matches!(
            strong_vanishing_closure(&hsop, &s),
            Err(Error::FormulaNotApplicable(_))
        ));
        assert!(fpure_power_closure(&s, 1).is_err());
        assert!(minimal_prime_closure(&s, 1).is_err());
        assert_eq!(charp_degp1_closure(&s, 3).unwrap().formula, "I^3 + m^4");
    }

    #[test]
    fn shift_at_one_matches_strong_vanishing() {
        let s = build_scenario(7, 4, 4).unwrap();
        let hsop: Vec<Polynomial> = (0..3).map(|i| s.var(i)).collect();
        let sv = strong_vanishing_closure(&hsop, &s).unwrap();
        let shift = power_closure_shift(&s, 1).unwrap();
        assert!(sv.closure.equals(&shift.closure).unwrap());
    }
}
