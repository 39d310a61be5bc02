use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::Monomial;

/// Number of standard monomials in each degree `0..=max_deg`, given the
/// minimal generators of an initial ideal. Stops early after a zero.
fn count_standard(leads: &[Monomial], nvars: usize, max_deg: u32) -> Vec<u64> {
    let gens: HashSet<&Monomial> = leads.iter().collect();
    let mut dims = Vec::with_capacity(max_deg as usize + 1);
    let one = Monomial::one(nvars);
    if gens.contains(&one) {
        dims.push(0);
        return dims;
    }
    let mut layer: Vec<Monomial> = vec![one];
    dims.push(1);
    for _ in 1..=max_deg {
        let prev: HashSet<&Monomial> = layer.iter().collect();
        let mut next = Vec::new();
        for s in &layer {
            // generate each monomial once: only multiply at or after the last variable used
            let last = s.exps().iter().rposition(|e| *e > 0).unwrap_or(0);
            for i in last..nvars {
                let c = s.mul(&Monomial::var(nvars, i, 1));
                let all_faces = (0..nvars).filter(|&j| c.exps()[j] > 0).all(|j| {
                    let mut e = c.exps().to_vec();
                    e[j] -= 1;
                    prev.contains(&Monomial::from_exps(&e))
                });
                if all_faces && !gens.contains(&c) {
                    next.push(c);
                }
            }
        }
        dims.push(next.len() as u64);
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    dims
}

fn require_homogeneous(j: &Ideal) -> Result<()> {
    if j.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::Domain("graded dimensions need a homogeneous ideal".into()))
    }
}

fn leads_up_to(j: &Ideal, cap: u32) -> Result<Vec<Monomial>> {
    let order = j.ring().order();
    let basis = j.truncated_basis(order, cap)?;
    Ok(basis
        .iter()
        .filter_map(|g| g.leading_monomial(order))
        .filter(|m| m.degree() <= cap)
        .collect())
}

/// `dim (T/J)_k` for `k = 0..=max_deg` (shorter if it reaches zero first).
pub fn graded_dimensions(j: &Ideal, max_deg: u32) -> Result<Vec<u64>> {
    require_homogeneous(j)?;
    let leads = leads_up_to(j, max_deg)?;
    Ok(count_standard(&leads, j.ring().nvars(), max_deg))
}

/// `dim (T/J)_deg`, the number of standard monomials of degree `deg`.
pub fn graded_dimension(j: &Ideal, deg: u32) -> Result<u64> {
    Ok(graded_dimensions(j, deg)?.get(deg as usize).copied().unwrap_or(0))
}

/// Total dimension of `T/J`, which must be finite.
pub fn artinian_length(j: &Ideal) -> Result<u64> {
    require_homogeneous(j)?;
    let nvars = j.ring().nvars();
    let mut cap = j.gens().iter().filter_map(|g| g.degree()).max().unwrap_or(0).max(1);
    loop {
        let leads = leads_up_to(j, cap)?;
        let dims = count_standard(&leads, nvars, cap);
        if dims.last() == Some(&0) {
            return Ok(dims.iter().sum());
        }
        let pure = |leads: &[Monomial]| -> Vec<Option<u32>> {
            let mut best = vec![None; nvars];
            for m in leads {
                if let Some(i) = m.pure_power_of() {
                    best[i] = Some(best[i].map_or(m.degree(), |b: u32| b.min(m.degree())));
                }
            }
            best
        };
        let mut powers = pure(&leads);
        if powers.iter().any(|p| p.is_none()) {
            let order = j.ring().order();
            let full: Vec<Monomial> = j
                .groebner_basis(order)?
                .iter()
                .filter_map(|g| g.leading_monomial(order))
                .collect();
            powers = pure(&full);
            if let Some(i) = powers.iter().position(|p| p.is_none()) {
                return Err(Error::NonArtinian {
                    variable: j.ring().vars()[i].clone(),
                });
            }
        }
        // every monomial of degree sum(a_i - 1) + 1 is divisible by some x_i^{a_i}
        let bound = powers.iter().map(|p| p.unwrap() - 1).sum::<u32>() + 1;
        if bound <= cap {
            return Err(Error::Verification("standard monomials beyond the socle bound".into()));
        }
        cap = bound;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ring_with;
    use crate::polyring::Polynomial;

    #[test]
    fn counts_in_polynomial_ring() {
        let r = ring_with(7, &["X", "Y", "Z"]).unwrap();
        let zero = Ideal::zero(&r);
        assert_eq!(graded_dimensions(&zero, 4).unwrap(), vec![1, 3, 6, 10, 15]);
        assert_eq!(graded_dimension(&Ideal::unit(&r), 3).unwrap(), 0);
    }

    #[test]
    fn complete_intersection_length() {
        let r = ring_with(7, &["X", "Y"]).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let j = Ideal::new(&r, vec![&x.pow(2) + &y.pow(2), &x * &y]).unwrap();
        assert_eq!(artinian_length(&j).unwrap(), 4);
        let m = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        assert_eq!(artinian_length(&m).unwrap(), 1);
    }

    #[test]
    fn non_artinian_names_variable() {
        let r = ring_with(7, &["X", "Y", "Z"]).unwrap();
        let j = Ideal::new(&r, vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1).pow(3)]).unwrap();
        assert_eq!(artinian_length(&j), Err(Error::NonArtinian { variable: "Z".into() }));
    }
}
