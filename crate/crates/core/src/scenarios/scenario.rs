use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal, QuotientContext};
use crate::polyring::{is_prime, MonomialOrder, Polynomial, PrimeField, Ring, RingRef};

/// The diagonal hypersurface `F_p[X1..Xv]/(X1^r + ... + Xv^r)` with the
/// linear parameter ideal `I = (x1..x_{v-1})`.
///
/// The ring carries grevlex with `Xv` ranked highest, so the relation has
/// leading term `Xv^r` and Frobenius powers of monomial ideals in the other
/// variables stay Gröbner bases after adding it.
#[derive(Clone, Debug)]
pub struct Scenario {
    p: u32,
    r: u32,
    v: usize,
    ctx: QuotientContext,
}

impl Scenario {
    pub fn new(p: u32, r: u32, v: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if v < 1 || r < 2 {
            return Err(Error::Domain(format!("need v >= 1 and r >= 2, got v={v}, r={r}")));
        }
        let field = PrimeField::new(p)?;
        let names: Vec<String> = (1..=v).map(|i| format!("X{i}")).collect();
        let mut ranking = vec![v - 1];
        ranking.extend(0..v - 1);
        let ring = Ring::with_order(field, names, MonomialOrder::grevlex_ranked(ranking)?)?;
        let f = (0..v).fold(Polynomial::zero(&ring), |acc, i| {
            &acc + &Polynomial::var(&ring, i).pow(r as u64)
        });
        let ctx = QuotientContext::new(f)?;
        Ok(Scenario { p, r, v, ctx })
    }

    /// Applies a computation budget to every ideal built from this scenario.
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.ctx = self.ctx.with_budget(budget);
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Krull dimension `d = v - 1`.
    pub fn d(&self) -> usize {
        self.v - 1
    }

    pub fn ring(&self) -> &RingRef {
        self.ctx.ring()
    }

    pub fn context(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn relation(&self) -> &Polynomial {
        self.ctx.relation()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.ring(), i)
    }

    /// The parameter ideal `(x1, ..., x_d)` of R.
    pub fn hsop(&self) -> Ideal {
        self.ctx
            .ideal((0..self.d()).map(|i| self.var(i)).collect())
            .expect("same ring")
    }

    pub fn maximal(&self) -> Ideal {
        self.ctx.maximal_ideal().expect("same ring")
    }

    /// Fedder's criterion for the diagonal relation: `p ≡ 1 (mod r)` and at
    /// least `r` variables, so that `f^{p-1}` has a term outside `m^{[p]}`.
    pub fn is_f_pure(&self) -> bool {
        self.p % self.r == 1 && self.v >= self.r as usize
    }

    pub fn p_divides_r(&self) -> bool {
        self.r.is_multiple_of(self.p)
    }

    pub fn is_degree_p_plus_1(&self) -> bool {
        self.r == self.p + 1
    }

    /// Strong vanishing bound for a linear parameter ideal: `p ∤ r` and
    /// `p > (d-1) r - d`.
    pub fn strong_vanishing_applies(&self) -> bool {
        let d = self.d() as i64;
        !self.p_divides_r() && (self.p as i64) > (d - 1) * self.r as i64 - d
    }

    /// F-pure with as many variables as the degree of the relation.
    pub fn fpure_colon_applies(&self) -> bool {
        self.is_f_pure() && self.r as usize == self.v
    }

    pub fn is_minimal_prime_case(&self) -> bool {
        (self.p, self.r, self.v) == (2, 4, 4)
    }

    /// Some closure route covers `(p, r, v)`.
    pub fn is_covered(&self) -> bool {
        self.v >= 2
            && (self.is_minimal_prime_case()
                || self.is_degree_p_plus_1()
                || self.fpure_colon_applies()
                || self.strong_vanishing_applies())
    }

    /// `p | r` outside the characteristic two quartic.
    pub fn is_evidence_only(&self) -> bool {
        self.p_divides_r() && !self.is_minimal_prime_case()
    }

    pub fn label(&self) -> String {
        format!("{},{},{}", self.p, self.r, self.v)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[X1..X{}]/(sum Xi^{})", self.p, self.v, self.r)
    }
}

/// Builds a scenario with at least two variables.
pub fn build_scenario(p: u32, r: u32, v: usize) -> Result<Scenario> {
    if v < 2 {
        return Err(Error::Domain(format!("need at least two variables, got {v}")));
    }
    Scenario::new(p, r, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let s = build_scenario(5, 4, 4).unwrap();
        assert!(s.is_f_pure() && s.fpure_colon_applies());
        assert!(!build_scenario(5, 4, 3).unwrap().is_f_pure());
        assert!(build_scenario(5, 4, 5).unwrap().is_f_pure());
        assert!(!s.strong_vanishing_applies());
        let s = build_scenario(3, 4, 4).unwrap();
        assert!(s.is_degree_p_plus_1() && !s.strong_vanishing_applies());
        let s = build_scenario(2, 4, 4).unwrap();
        assert!(s.p_divides_r() && s.is_minimal_prime_case() && !s.is_evidence_only());
        assert!(build_scenario(7, 4, 4).unwrap().strong_vanishing_applies());
        assert!(build_scenario(2, 6, 4).unwrap().is_evidence_only());
        assert!(build_scenario(4, 4, 4).is_err());
    }

    #[test]
    fn relation_leads_with_last_variable() {
        let s = build_scenario(5, 4, 4).unwrap();
        let lead = s.relation().leading_monomial(s.ring().order()).unwrap();
        assert_eq!(lead.exps(), &[0, 0, 0, 4]);
    }
}
