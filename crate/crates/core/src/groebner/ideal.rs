use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::engine::{buchberger_with, divide, normal_form, Budget, GroebnerOptions};
use crate::error::{Error, Result};
use crate::polyring::{same_ring, Monomial, MonomialOrder, OrderKind, Polynomial, PrimeField, Ring, RingRef};

type BasisSlot = Arc<OnceLock<Result<Arc<Vec<Polynomial>>>>>;
type BasisCache = Arc<Mutex<HashMap<(MonomialOrder, Option<u32>), BasisSlot>>>;

/// A finitely generated ideal with lazily computed, cached reduced Gröbner
/// bases (one per order and optional degree cap).
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    budget: Budget,
    cache: BasisCache,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::Structural("generator from a different ring".into()));
            }
        }
        Ok(Self::from_gens_unchecked(ring, gens, Budget::default()))
    }

    fn from_gens_unchecked(ring: &RingRef, gens: Vec<Polynomial>, budget: Budget) -> Self {
        let mut seen = HashSet::new();
        let gens: Vec<Polynomial> = gens
            .into_iter()
            .filter(|g| !g.is_zero() && seen.insert(g.clone()))
            .collect();
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ideal {
            ring: ring.clone(),
            gens,
            homogeneous,
            budget,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// Derived ideal over the same ring inheriting this ideal's budget.
    fn derive(&self, gens: Vec<Polynomial>) -> Ideal {
        Self::from_gens_unchecked(&self.ring, gens, self.budget)
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_gens_unchecked(ring, vec![Polynomial::one(ring)], Budget::default())
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::from_gens_unchecked(ring, Vec::new(), Budget::default())
    }

    /// Ideal generated by the given variables.
    pub fn variables(ring: &RingRef, indices: &[usize]) -> Self {
        Self::from_gens_unchecked(
            ring,
            indices.iter().map(|&i| Polynomial::var(ring, i)).collect(),
            Budget::default(),
        )
    }

    pub fn from_monomials(ring: &RingRef, monos: impl IntoIterator<Item = Monomial>) -> Self {
        Self::from_gens_unchecked(
            ring,
            monos.into_iter().map(|m| Polynomial::monomial(ring, m, 1)).collect(),
            Budget::default(),
        )
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self.cache = Arc::new(Mutex::new(HashMap::new()));
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn options(&self, cap: Option<u32>) -> GroebnerOptions {
        GroebnerOptions {
            budget: self.budget,
            degree_cap: cap,
            grading: None,
        }
    }

    fn cached(&self, order: &MonomialOrder, cap: Option<u32>) -> Result<Arc<Vec<Polynomial>>> {
        let slot = {
            let mut cache = self.cache.lock().expect("basis cache poisoned");
            cache.entry((order.clone(), cap)).or_default().clone()
        };
        slot.get_or_init(|| buchberger_with(&self.gens, order, &self.options(cap)).map(Arc::new))
            .clone()
    }

    pub(crate) fn seed_basis(&self, order: &MonomialOrder, basis: Vec<Polynomial>) {
        let slot: BasisSlot = Arc::new(OnceLock::new());
        let _ = slot.set(Ok(Arc::new(basis)));
        self.cache
            .lock()
            .expect("basis cache poisoned")
            .insert((order.clone(), None), slot);
    }

    /// Reduced Gröbner basis under `order` (computed once, then cached).
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        self.cached(order, None)
    }

    /// Reduced Gröbner basis under the ring's canonical order.
    pub fn basis(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.groebner_basis(self.ring.order())
    }

    /// Basis correct in all degrees `<= cap`. Falls back to the full basis
    /// for inhomogeneous ideals.
    pub fn truncated_basis(&self, order: &MonomialOrder, cap: u32) -> Result<Arc<Vec<Polynomial>>> {
        if !self.homogeneous {
            return self.groebner_basis(order);
        }
        self.cached(order, Some(cap))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let gb = self.basis()?;
        Ok(normal_form(f, &gb, self.ring.order()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.contains_under(f, self.ring.order())
    }

    pub fn contains_under(&self, f: &Polynomial, order: &MonomialOrder) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::Structural("polynomial from a different ring".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.contains(f) {
            return Ok(true);
        }
        let gb = self.groebner_basis(order)?;
        Ok(normal_form(f, &gb, order).is_zero())
    }

    /// Minimal generators of the initial ideal under `order`.
    pub fn leading_monomials(&self, order: &MonomialOrder) -> Result<Vec<Monomial>> {
        let gb = self.groebner_basis(order)?;
        Ok(gb.iter().filter_map(|g| g.leading_monomial(order)).collect())
    }

    pub fn initial_ideal(&self, order: &MonomialOrder) -> Result<Ideal> {
        let monos = self.leading_monomials(order)?;
        Ok(self.derive(
            monos
                .into_iter()
                .map(|m| Polynomial::monomial(&self.ring, m, 1))
                .collect(),
        ))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Structural("ideals over different rings".into()))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derive(gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        Ok(self.derive(prune(products(&self.gens, &other.gens))))
    }

    /// `I^n` with `I^0 = (1)`.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = vec![Polynomial::one(&self.ring)];
        for _ in 0..n {
            acc = prune(products(&acc, &self.gens));
        }
        self.derive(acc)
    }

    /// `I ∩ J` by eliminating an auxiliary variable `t` from `t*I + (1-t)*J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(self.derive(Vec::new()));
        }
        let n = self.ring.nvars();
        let mut names = vec!["_t".to_string()];
        names.extend(self.ring.vars().iter().cloned());
        let base_ranking: Vec<usize> = match self.ring.order().kind() {
            OrderKind::Grevlex => self.ring.order().ranking().to_vec(),
            OrderKind::Block { .. } => (0..n).collect(),
        };
        let mut ranking = vec![0];
        ranking.extend(base_ranking.iter().map(|i| i + 1));
        let order = MonomialOrder::block(ranking, 1)?;
        let big = Ring::with_order(self.ring.field(), names, order.clone())?;
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &lift(g, &big));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &lift(g, &big));
        }
        let mut grading = vec![1u32; n + 1];
        grading[0] = 0;
        let options = GroebnerOptions {
            budget: self.budget,
            degree_cap: None,
            grading: Some(grading),
        };
        let gb = buchberger_with(&gens, &order, &options)?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[0] == 0))
            .map(|g| drop_front(g, &self.ring))
            .collect();
        let result = self.derive(kept.clone());
        // the eliminated part is already a reduced basis for the induced grevlex
        if let Ok(induced) = MonomialOrder::grevlex_ranked(base_ranking) {
            if &induced == self.ring.order() {
                let mut sorted = kept;
                sorted.sort_by(|a, b| {
                    let ka = induced.key(&a.leading_monomial(&induced).unwrap());
                    let kb = induced.key(&b.leading_monomial(&induced).unwrap());
                    kb.cmp(&ka)
                });
                result.seed_basis(&induced, sorted);
            }
        }
        Ok(result)
    }

    /// `(I : g) = (1/g) (I ∩ (g))`.
    pub fn colon(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::Domain("colon by the zero polynomial".into()));
        }
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::Structural("polynomial from a different ring".into()));
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget));
        }
        let principal = self.derive(vec![g.clone()]);
        let meet = self.intersection(&principal)?;
        let order = self.ring.order();
        let mut quotients = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            let div = divide(h, std::slice::from_ref(g), order);
            if !div.remainder.is_zero() {
                return Err(Error::Verification(format!(
                    "{g} does not divide intersection generator {h}"
                )));
            }
            quotients.push(div.quotients[0].clone());
        }
        Ok(self.derive(quotients))
    }

    /// `(I : J)` as the intersection of `(I : g)` over the generators of `J`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon(g)?;
            if c.gens.iter().any(|h| h.is_one()) {
                continue;
            }
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_budget(self.budget)))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals: reduced bases under the canonical order coincide.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let a = self.basis()?;
        let b = other.basis()?;
        Ok(a == b)
    }

    /// Renders the generators with the ring's variable names.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.render())
    }
}

fn products(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Drops duplicates and monomial generators divisible by another monomial generator.
fn prune(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let unique: Vec<Polynomial> = gens
        .into_iter()
        .filter(|g| !g.is_zero() && seen.insert(g.clone()))
        .collect();
    let mut monos: Vec<Monomial> = unique
        .iter()
        .filter(|g| g.is_monomial())
        .map(|g| g.terms()[0].0.clone())
        .collect();
    monos.sort_by_key(|m| m.degree());
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in monos {
        if !minimal.iter().any(|k| k.divides(&m)) {
            minimal.push(m);
        }
    }
    let minimal: HashSet<Monomial> = minimal.into_iter().collect();
    unique
        .into_iter()
        .filter(|g| !g.is_monomial() || minimal.contains(&g.terms()[0].0))
        .collect()
}

fn lift(g: &Polynomial, big: &RingRef) -> Polynomial {
    Polynomial::from_terms(big, g.terms().iter().map(|(m, c)| (m.with_extra_vars(1), *c)).collect())
}

fn drop_front(g: &Polynomial, small: &RingRef) -> Polynomial {
    Polynomial::from_terms(
        small,
        g.terms().iter().map(|(m, c)| (m.drop_front_vars(1), *c)).collect(),
    )
}

/// Convenience for tests and examples: ring over F_p with the given names.
pub fn ring_with(p: u32, names: &[&str]) -> Result<RingRef> {
    Ok(Ring::new(
        PrimeField::new(p)?,
        names.iter().map(|s| s.to_string()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (RingRef, Polynomial, Polynomial, Polynomial) {
        let r = ring_with(32003, &["X", "Y", "Z"]).unwrap();
        let (x, y, z) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        (r, x, y, z)
    }

    #[test]
    fn products_and_powers() {
        let (r, x, y, _) = setup();
        let ix = Ideal::new(&r, vec![x.clone()]).unwrap();
        let iy = Ideal::new(&r, vec![y.clone()]).unwrap();
        assert_eq!(ix.product(&iy).unwrap().gens(), &[&x * &y]);
        let m = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(m.power(2).gens().len(), 3);
        assert!(m.power(0).gens()[0].is_one());
    }

    #[test]
    fn intersection_of_principal_monomials() {
        let (r, x, y, _) = setup();
        let ix = Ideal::new(&r, vec![x.clone()]).unwrap();
        let iy = Ideal::new(&r, vec![y.clone()]).unwrap();
        let meet = ix.intersection(&iy).unwrap();
        assert!(meet.equals(&Ideal::new(&r, vec![&x * &y]).unwrap()).unwrap());
        assert!(ix.intersection(&ix).unwrap().equals(&ix).unwrap());
    }

    #[test]
    fn colon_examples() {
        let (r, x, _, z) = setup();
        let i = Ideal::new(&r, vec![x.pow(2)]).unwrap();
        assert!(i
            .colon(&x)
            .unwrap()
            .equals(&Ideal::new(&r, vec![x.clone()]).unwrap())
            .unwrap());
        let j = Ideal::new(&r, vec![&x * &z, z.pow(3)]).unwrap();
        assert!(j.colon(&Polynomial::one(&r)).unwrap().equals(&j).unwrap());
        assert!(i.colon(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn equality_ignores_redundant_generators() {
        let (r, x, y, _) = setup();
        let a = Ideal::new(&r, vec![x.clone(), x.pow(2)]).unwrap();
        let b = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        assert!(!c.equals(&b).unwrap());
    }

    #[test]
    fn inhomogeneous_colon() {
        let (r, x, y, _) = setup();
        // (x^2 - y) : (x - 1) where the colon is not trivial
        let g = &x - &Polynomial::one(&r);
        let i = Ideal::new(&r, vec![&(&x * &x) - &y, &y - &Polynomial::one(&r)]).unwrap();
        let c = i.colon(&g).unwrap();
        // (x^2 - 1, y - 1) : (x - 1) = (x + 1, y - 1)
        let expect = Ideal::new(&r, vec![&x + &Polynomial::one(&r), &y - &Polynomial::one(&r)]).unwrap();
        assert!(c.equals(&expect).unwrap());
    }
}
