//! Frobenius powers, test elements, closure formulas for powers of the
//! parameter ideal, and finite-`q` evidence for and against membership in a
//! tight closure.

mod closure;
mod evidence;

pub(crate) use closure::power_label;
pub use closure::{
    charp_degp1_closure, fpure_power_closure, minimal_prime_closure, power_closure_shift, shifted_closure,
    strong_vanishing_closure, test_elements, ClosureDescription, Route, TestElementSet,
};
pub use evidence::{
    evidence_grid, exclusion_certificate, inclusion_evidence, search_exclusion, ExclusionCertificate, ExclusionOutcome,
    InclusionCheck, InclusionEvidence,
};

use crate::error::{Error, Result};
use crate::groebner::{normal_form, Ideal, QuotientContext};
use crate::polyring::{MonomialOrder, Polynomial};

/// `q = p^e`, kept together with its factorisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobeniusExponent {
    p: u32,
    e: u32,
    q: u64,
}

impl FrobeniusExponent {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let q = (p as u64)
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or_else(|| Error::Overflow(format!("{p}^{e} does not fit in 32 bits")))?;
        Ok(FrobeniusExponent { p, e, q })
    }

    /// Accepts `q` only if it is a power of `p`.
    pub fn from_q(p: u32, q: u64) -> Result<Self> {
        let mut e = 0;
        let mut acc = 1u64;
        while acc < q {
            acc *= p as u64;
            e += 1;
        }
        if acc != q {
            return Err(Error::Domain(format!("{q} is not a power of {p}")));
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// `I^[q]`. In a quotient context the relation is kept as is rather than raised.
pub fn frobenius_power(i: &Ideal, q: &FrobeniusExponent, ctx: Option<&QuotientContext>) -> Result<Ideal> {
    let ring = i.ring();
    if q.p() != ring.characteristic() {
        return Err(Error::Domain(format!(
            "Frobenius exponent {} is a power of {}, ring has characteristic {}",
            q.q(),
            q.p(),
            ring.characteristic()
        )));
    }
    let gens = match ctx {
        Some(ctx) => ctx.lifted_gens(i),
        None => i.gens().to_vec(),
    };
    let max_exp = gens
        .iter()
        .flat_map(|g| g.terms().iter().flat_map(|(m, _)| m.exps().iter().copied()))
        .max()
        .unwrap_or(0);
    if (max_exp as u64) * q.q() > u32::MAX as u64 {
        return Err(Error::Overflow(format!("exponent {max_exp} times {} overflows", q.q())));
    }
    let raised: Vec<Polynomial> = gens.iter().map(|g| g.frobenius(q.q())).collect();
    let out = match ctx {
        Some(ctx) => ctx.ideal(raised)?,
        None => Ideal::new(ring, raised)?,
    };
    Ok(out.with_budget(*i.budget()))
}

/// Normal form of `u^k` modulo a Gröbner basis, computed digit by digit in
/// base `p` so that intermediate results stay reduced.
pub fn power_mod(u: &Polynomial, k: u64, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = u.ring();
    let p = ring.characteristic() as u64;
    let mut acc = normal_form(&Polynomial::one(ring), basis, order);
    let mut cur = normal_form(u, basis, order);
    let mut k = k;
    while k > 0 {
        let digit = k % p;
        for _ in 0..digit {
            acc = normal_form(&(&acc * &cur), basis, order);
        }
        k /= p;
        if k > 0 {
            cur = normal_form(&cur.frobenius(p), basis, order);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ring_with;

    #[test]
    fn exponent_bookkeeping() {
        let q = FrobeniusExponent::new(3, 3).unwrap();
        assert_eq!(q.q(), 27);
        assert_eq!(FrobeniusExponent::from_q(3, 27).unwrap(), q);
        assert!(FrobeniusExponent::from_q(3, 12).is_err());
        assert!(FrobeniusExponent::new(2, 40).is_err());
    }

    #[test]
    fn frobenius_of_variables() {
        let r = ring_with(2, &["X", "Y"]).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let i = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        let j = frobenius_power(&i, &FrobeniusExponent::new(2, 2).unwrap(), None).unwrap();
        assert_eq!(j.gens(), &[x.pow(4), y.pow(4)]);
        let same = frobenius_power(&i, &FrobeniusExponent::new(2, 0).unwrap(), None).unwrap();
        assert!(same.equals(&i).unwrap());
        assert!(frobenius_power(&i, &FrobeniusExponent::new(3, 1).unwrap(), None).is_err());
    }

    #[test]
    fn power_mod_matches_direct_reduction() {
        let r = ring_with(3, &["X", "Y"]).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let basis = crate::groebner::buchberger(&[&x.pow(4) - &y, y.pow(7)], r.order()).unwrap();
        let u = &x + &y;
        for k in [0u64, 1, 5, 9, 14] {
            let direct = normal_form(&u.pow(k), &basis, r.order());
            assert_eq!(power_mod(&u, k, &basis, r.order()), direct, "k = {k}");
        }
    }
}
