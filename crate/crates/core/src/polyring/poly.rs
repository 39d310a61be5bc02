use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Immutable ring descriptor shared by every polynomial over it: the field,
/// the ordered variable names and a canonical order used for storage,
/// printing and as the default for ideal computations.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: PrimeField, vars: Vec<String>) -> RingRef {
        let order = MonomialOrder::grevlex(vars.len());
        Arc::new(Ring { field, vars, order })
    }

    pub fn with_order(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<RingRef> {
        if order.nvars() != vars.len() {
            return Err(Error::Structural(format!(
                "order over {} variables for a ring with {}",
                order.nvars(),
                vars.len()
            )));
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// Variables `prefix1 .. prefixN`.
    pub fn numbered(field: PrimeField, prefix: &str, n: usize) -> RingRef {
        Ring::new(field, (1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

/// Multivariate polynomial over F_p. Terms are kept sorted in descending
/// order under the ring's canonical order; coefficients are never zero.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), 1)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged,
    /// coefficients reduced, zeros dropped.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = c % field.characteristic();
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ring.order();
        terms.sort_by_cached_key(|(m, _)| std::cmp::Reverse(order.key(m)));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: `terms` already merged, nonzero and sorted.
    pub(crate) fn from_sorted_unchecked(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn is_homogeneous_wrt(&self, weights: &[u32]) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.weighted_degree(weights);
                self.terms.iter().all(|(t, _)| t.weighted_degree(weights) == d)
            }
        }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, u32)> {
        if order == self.ring.order() {
            return self.terms.first().map(|(m, c)| (m, *c));
        }
        self.terms
            .iter()
            .max_by_key(|(m, _)| order.key(m))
            .map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(order).map(|(m, _)| m.clone())
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| *c).unwrap_or(0)
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(same_ring(&self.ring, &other.ring), "polynomials over different rings");
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::Structural("ring context mismatch".into()));
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::Structural("ring context mismatch".into()));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // order is multiplicative, so sortedness survives
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(*a, c))).collect(),
        }
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let p = self.ring.characteristic() as u64;
        // p-th powers are Frobenius twists
        let mut base = self.clone();
        while e > 1 && e.is_multiple_of(p) {
            base = base.frobenius(p);
            e /= p;
        }
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Raises every term to the `q`-th power. For `q` a power of the
    /// characteristic this is exactly `self^q`.
    pub fn frobenius(&self, q: u64) -> Polynomial {
        let field = self.ring.field();
        let q32 = u32::try_from(q).expect("Frobenius exponent fits in u32");
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(q32), field.pow(*c, q))).collect(),
        }
    }

    /// Substitutes polynomials for the variables (`images[i]` for variable `i`).
    pub fn substitute(&self, images: &[Polynomial], target: &RingRef) -> Polynomial {
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c as i64);
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    t = &t * &images[i].pow(*e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-homes the polynomial in a ring with identical variables but a
    /// different storage order.
    pub fn in_ring(&self, ring: &RingRef) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let field = self.ring.field();
        let order = self.ring.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.key(&a[i].0).cmp(&order.key(&b[j].0)) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial::from_sorted_unchecked(&self.ring, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &(-other)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = field.add(*slot, field.mul(*ca, *cb));
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = field.signed(*c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                f.write_str(&m.render(&self.ring.vars))?;
            } else {
                write!(f, "{abs}*{}", m.render(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
