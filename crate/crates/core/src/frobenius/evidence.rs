use rayon::prelude::*;

use super::{frobenius_power, power_mod, FrobeniusExponent, TestElementSet};
use crate::error::Result;
use crate::groebner::{normal_form, Ideal, QuotientContext};
use crate::polyring::{MonomialOrder, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionCheck {
    pub q: u64,
    pub passed: bool,
}

/// Outcome of testing `c * u^q ∈ I^[q]` for finitely many `q`. Passing every
/// check is corroboration only; tight closure quantifies over all large `q`.
#[derive(Clone, Debug)]
pub struct InclusionEvidence {
    pub element: Polynomial,
    pub multiplier: Polynomial,
    pub checks: Vec<InclusionCheck>,
}

impl InclusionEvidence {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn verdict(&self) -> &'static str {
        if self.consistent() {
            "consistent-with-membership (finite evidence, not a proof)"
        } else {
            "membership refuted at some q"
        }
    }
}

/// A nonzero normal form of `c * u^q` modulo a Gröbner basis of `I^[q]`.
/// With `c` a test element this proves `u ∉ I*`.
#[derive(Clone, Debug)]
pub struct ExclusionCertificate {
    pub element: Polynomial,
    pub multiplier: Polynomial,
    pub q: u64,
    pub witness: Polynomial,
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub enum ExclusionOutcome {
    Certificate(ExclusionCertificate),
    NoCertificateAtQ { q: u64 },
}

struct FrobeniusBasis {
    q: u64,
    basis: Vec<Polynomial>,
}

fn frobenius_basis(i: &Ideal, q: u64, ctx: Option<&QuotientContext>) -> Result<FrobeniusBasis> {
    let p = i.ring().characteristic();
    let j = frobenius_power(i, &FrobeniusExponent::from_q(p, q)?, ctx)?;
    Ok(FrobeniusBasis {
        q,
        basis: j.basis()?.to_vec(),
    })
}

fn reduced_product(u: &Polynomial, c: &Polynomial, fb: &FrobeniusBasis, order: &MonomialOrder) -> Polynomial {
    let uq = power_mod(u, fb.q, &fb.basis, order);
    normal_form(&(c * &uq), &fb.basis, order)
}

/// Tests `c * u^q ∈ I^[q]` for every `q` in `q_list` (each a power of `p`).
pub fn inclusion_evidence(
    u: &Polynomial,
    i: &Ideal,
    c: &Polynomial,
    q_list: &[u64],
    ctx: Option<&QuotientContext>,
) -> Result<InclusionEvidence> {
    let order = i.ring().order().clone();
    let mut checks = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let fb = frobenius_basis(i, q, ctx)?;
        checks.push(InclusionCheck {
            q,
            passed: reduced_product(u, c, &fb, &order).is_zero(),
        });
    }
    Ok(InclusionEvidence {
        element: u.clone(),
        multiplier: c.clone(),
        checks,
    })
}

/// Inclusion evidence for every (element, multiplier) pair, computed in
/// parallel. The result is ordered by element, then multiplier.
pub fn evidence_grid(
    elements: &[Polynomial],
    i: &Ideal,
    multipliers: &[Polynomial],
    q_list: &[u64],
    ctx: Option<&QuotientContext>,
) -> Result<Vec<InclusionEvidence>> {
    let order = i.ring().order().clone();
    let bases: Vec<FrobeniusBasis> = q_list
        .iter()
        .map(|&q| frobenius_basis(i, q, ctx))
        .collect::<Result<_>>()?;
    let pairs: Vec<(&Polynomial, &Polynomial)> = elements
        .iter()
        .flat_map(|u| multipliers.iter().map(move |c| (u, c)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|(u, c)| InclusionEvidence {
            element: (*u).clone(),
            multiplier: (*c).clone(),
            checks: bases
                .iter()
                .map(|fb| InclusionCheck {
                    q: fb.q,
                    passed: reduced_product(u, c, fb, &order).is_zero(),
                })
                .collect(),
        })
        .collect())
}

/// Checks `c * u^q ∉ I^[q]` at a single `q`.
pub fn exclusion_certificate(
    u: &Polynomial,
    i: &Ideal,
    c: &Polynomial,
    q: u64,
    ctx: Option<&QuotientContext>,
) -> Result<ExclusionOutcome> {
    let order = i.ring().order().clone();
    let fb = frobenius_basis(i, q, ctx)?;
    let witness = reduced_product(u, c, &fb, &order);
    if witness.is_zero() {
        return Ok(ExclusionOutcome::NoCertificateAtQ { q });
    }
    Ok(ExclusionOutcome::Certificate(ExclusionCertificate {
        element: u.clone(),
        multiplier: c.clone(),
        q,
        witness,
        order,
        basis: fb.basis,
    }))
}

/// Tries `q = p, p^2, ..., p^max_e` and each test element in turn, returning
/// the first certificate found.
pub fn search_exclusion(
    u: &Polynomial,
    i: &Ideal,
    tests: &TestElementSet,
    max_e: u32,
    ctx: Option<&QuotientContext>,
) -> Result<Option<ExclusionCertificate>> {
    let p = i.ring().characteristic();
    for e in 1..=max_e {
        let q = FrobeniusExponent::new(p, e)?.q();
        let order = i.ring().order().clone();
        let fb = frobenius_basis(i, q, ctx)?;
        for c in &tests.elements {
            let witness = reduced_product(u, c, &fb, &order);
            if !witness.is_zero() {
                return Ok(Some(ExclusionCertificate {
                    element: u.clone(),
                    multiplier: c.clone(),
                    q,
                    witness,
                    order,
                    basis: fb.basis,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ring_with;

    #[test]
    fn literal_members_pass() {
        let r = ring_with(3, &["X", "Y"]).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let i = Ideal::new(&r, vec![x.clone()]).unwrap();
        let ev = inclusion_evidence(&(&x * &y), &i, &y, &[3, 9], None).unwrap();
        assert!(ev.consistent());
    }

    #[test]
    fn unit_is_excluded_from_proper_ideal() {
        let r = ring_with(5, &["X"]).unwrap();
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let i = Ideal::new(&r, vec![x]).unwrap();
        match exclusion_certificate(&one, &i, &one, 5, None).unwrap() {
            ExclusionOutcome::Certificate(c) => assert!(c.witness.is_one()),
            ExclusionOutcome::NoCertificateAtQ { .. } => panic!("expected a certificate"),
        }
    }
}
