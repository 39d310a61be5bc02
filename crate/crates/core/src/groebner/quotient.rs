use super::engine::Budget;
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, same_ring, Polynomial, RingRef};

/// A hypersurface ring `T/(f)`. Ideals of the quotient are represented by
/// ambient ideals that contain `f`.
#[derive(Clone, Debug)]
pub struct QuotientContext {
    ring: RingRef,
    relation: Polynomial,
    budget: Budget,
}

impl QuotientContext {
    pub fn new(relation: Polynomial) -> Result<Self> {
        if relation.is_zero() || !relation.is_homogeneous() {
            return Err(Error::Domain(format!(
                "relation {relation} must be a nonzero homogeneous polynomial"
            )));
        }
        Ok(QuotientContext {
            ring: relation.ring().clone(),
            relation,
            budget: Budget::default(),
        })
    }

    /// Budget applied to every ideal created through this context.
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relation(&self) -> &Polynomial {
        &self.relation
    }

    /// The ideal generated by `gens` together with the relation.
    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut all = gens;
        all.push(self.relation.clone());
        Ok(Ideal::new(&self.ring, all)?.with_budget(self.budget))
    }

    /// Generators of a representative other than the relation itself.
    pub fn lifted_gens(&self, i: &Ideal) -> Vec<Polynomial> {
        i.gens().iter().filter(|g| **g != self.relation).cloned().collect()
    }

    fn rewrap(&self, like: &Ideal, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(self.ideal(gens)?.with_budget(*like.budget()))
    }

    fn bare(&self, like: &Ideal, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, gens)?.with_budget(*like.budget()))
    }

    fn check(&self, i: &Ideal) -> Result<()> {
        if !same_ring(i.ring(), &self.ring) {
            return Err(Error::Structural("ideal from a different ring".into()));
        }
        Ok(())
    }

    pub fn sum(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.check(a)?;
        self.check(b)?;
        let mut gens = self.lifted_gens(a);
        gens.extend(self.lifted_gens(b));
        self.rewrap(a, gens)
    }

    pub fn product(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.check(a)?;
        self.check(b)?;
        let x = self.bare(a, self.lifted_gens(a))?;
        let y = self.bare(b, self.lifted_gens(b))?;
        let prod = x.product(&y)?;
        self.rewrap(a, prod.gens().to_vec())
    }

    /// `I^n` in the quotient; `I^0 = (1)`.
    pub fn power(&self, i: &Ideal, n: u32) -> Result<Ideal> {
        self.check(i)?;
        let base = self.bare(i, self.lifted_gens(i))?;
        self.rewrap(i, base.power(n).gens().to_vec())
    }

    pub fn intersection(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        a.intersection(b)
    }

    pub fn colon(&self, i: &Ideal, g: &Polynomial) -> Result<Ideal> {
        i.colon(g)
    }

    pub fn colon_ideal(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        let j = self.bare(j, self.lifted_gens(j))?;
        i.colon_ideal(&j)
    }

    pub fn contains(&self, i: &Ideal, f: &Polynomial) -> Result<bool> {
        i.contains(f)
    }

    pub fn equals(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        a.equals(b)
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal_ideal(&self) -> Result<Ideal> {
        self.ideal((0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect())
    }

    /// `m^k` (plus the relation), generated by all monomials of degree `k`.
    pub fn maximal_power(&self, k: u32) -> Result<Ideal> {
        let gens = monomials_of_degree(self.ring.nvars(), k)
            .into_iter()
            .map(|m| Polynomial::monomial(&self.ring, m, 1))
            .collect();
        self.ideal(gens)
    }
}
