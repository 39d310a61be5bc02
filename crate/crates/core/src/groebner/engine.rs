//! Buchberger's algorithm with the Gebauer–Möller pair update and normal
//! strategy, plus division with remainder.
//!
//! Internally polynomials carry the order key of every term so that the
//! working sets can be kept in `BTreeMap`s keyed by order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, OrderKey, Polynomial, PrimeField, RingRef};

/// Resource caps. Exceeding either aborts with [`Error::Budget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    pub max_pair_reductions: u64,
    /// Largest degree of an S-polynomial that may be reduced.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pair_reductions: 1_000_000,
            max_degree: 200,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroebnerOptions {
    pub budget: Budget,
    /// Only honored for input homogeneous w.r.t. the grading: the returned
    /// basis is then a Gröbner basis in all degrees `<= cap`.
    pub degree_cap: Option<u32>,
    /// Weights defining the grading; all ones when absent.
    pub grading: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: OrderKey,
    pub mono: Monomial,
    pub coeff: u32,
}

/// Polynomial with terms sorted descending by order key.
#[derive(Clone, Debug)]
pub(crate) struct KeyedPoly {
    pub terms: Vec<Term>,
}

fn add_keys(a: &OrderKey, b: &OrderKey) -> OrderKey {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, e) in m.exps().iter().enumerate() {
        if *e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

impl KeyedPoly {
    pub fn from_poly(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = f
            .terms()
            .iter()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: m.clone(),
                coeff: *c,
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        KeyedPoly { terms }
    }

    pub fn to_poly(&self, ring: &RingRef) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.mono.clone(), t.coeff)).collect())
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self, field: &PrimeField) {
        if let Some(t) = self.terms.first() {
            if t.coeff != 1 {
                let inv = field.inv(t.coeff).expect("nonzero");
                for t in &mut self.terms {
                    t.coeff = field.mul(t.coeff, inv);
                }
            }
        }
    }
}

/// Basis element as seen by the reducer.
struct Reducer<'a> {
    poly: &'a KeyedPoly,
    mask: u64,
}

type WorkSet = BTreeMap<OrderKey, (Monomial, u32)>;

fn workset_from(f: &KeyedPoly) -> WorkSet {
    f.terms
        .iter()
        .map(|t| (t.key.clone(), (t.mono.clone(), t.coeff)))
        .collect()
}

/// Subtracts `c * mu * g` (skipping g's leading term, which is known to cancel).
fn subtract_multiple(ws: &mut WorkSet, g: &KeyedPoly, mu: &Monomial, mu_key: &OrderKey, c: u32, field: &PrimeField) {
    for t in &g.terms[1..] {
        let key = add_keys(&t.key, mu_key);
        let delta = field.mul(c, t.coeff);
        match ws.get_mut(&key) {
            Some(slot) => {
                slot.1 = field.sub(slot.1, delta);
                if slot.1 == 0 {
                    ws.remove(&key);
                }
            }
            None => {
                ws.insert(key, (t.mono.mul(mu), field.neg(delta)));
            }
        }
    }
}

fn find_reducer(reducers: &[Reducer<'_>], m: &Monomial) -> Option<usize> {
    let mask = divmask(m);
    reducers
        .iter()
        .position(|r| r.mask & !mask == 0 && r.poly.lead().mono.divides(m))
}

/// Full reduction of `f`; every term of the result is irreducible. When
/// `quotients` is given, records `c*mu` for each step against reducer `i`.
fn reduce_full(
    f: &KeyedPoly,
    reducers: &[Reducer<'_>],
    order: &MonomialOrder,
    field: &PrimeField,
    mut quotients: Option<&mut Vec<HashMap<Monomial, u32>>>,
) -> KeyedPoly {
    let mut ws = workset_from(f);
    let mut rem = Vec::new();
    while let Some((key, (mono, coeff))) = ws.pop_last() {
        match find_reducer(reducers, &mono) {
            Some(i) => {
                let g = reducers[i].poly;
                let lead = g.lead();
                let mu = lead.mono.divide_into(&mono).expect("divides");
                let c = field.mul(coeff, field.inv(lead.coeff).expect("nonzero"));
                let mu_key = order.key(&mu);
                subtract_multiple(&mut ws, g, &mu, &mu_key, c, field);
                if let Some(q) = quotients.as_deref_mut() {
                    let slot = q[i].entry(mu).or_insert(0);
                    *slot = field.add(*slot, c);
                }
            }
            None => rem.push(Term { key, mono, coeff }),
        }
    }
    KeyedPoly { terms: rem }
}

/// Result of dividing `f` by a list: `f = sum(quotients[i] * basis[i]) + remainder`.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division. The reducer for each term is the first basis
/// element (in list order) whose leading monomial divides it.
pub fn divide(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Division {
    let ring = f.ring().clone();
    let field = ring.field();
    let keyed: Vec<KeyedPoly> = basis.iter().map(|g| KeyedPoly::from_poly(g, order)).collect();
    let reducers: Vec<Reducer<'_>> = keyed
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Reducer {
            poly: g,
            mask: divmask(&g.lead().mono),
        })
        .collect();
    // map filtered reducer index back to basis index
    let index_map: Vec<usize> = keyed
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, _)| i)
        .collect();
    let mut q = vec![HashMap::new(); reducers.len()];
    let rem = reduce_full(&KeyedPoly::from_poly(f, order), &reducers, order, &field, Some(&mut q));
    let mut quotients = vec![Polynomial::zero(&ring); basis.len()];
    for (ri, terms) in q.into_iter().enumerate() {
        quotients[index_map[ri]] = Polynomial::from_terms(&ring, terms.into_iter().collect());
    }
    Division {
        quotients,
        remainder: rem.to_poly(&ring),
    }
}

/// Remainder of `f` on division by `basis`. Unique when `basis` is a
/// Gröbner basis for `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let field = f.ring().field();
    let keyed: Vec<KeyedPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| KeyedPoly::from_poly(g, order))
        .collect();
    let reducers: Vec<Reducer<'_>> = keyed
        .iter()
        .map(|g| Reducer {
            poly: g,
            mask: divmask(&g.lead().mono),
        })
        .collect();
    reduce_full(&KeyedPoly::from_poly(f, order), &reducers, order, &field, None).to_poly(f.ring())
}

/// S-polynomial `lcm/LT(f) * f - lcm/LT(g) * g` with monic scaling.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let field = f.ring().field();
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.divide_into(&l).unwrap(), field.inv(cf).unwrap());
    let b = g.mul_term(&mg.divide_into(&l).unwrap(), field.inv(cg).unwrap());
    &a - &b
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let nonzero: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    for i in 0..nonzero.len() {
        for j in (i + 1)..nonzero.len() {
            let s = s_polynomial(nonzero[i], nonzero[j], order);
            if !normal_form(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Work item in the degree-ordered queue.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    /// Input generator, by index.
    Gen(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct QueueEntry {
    degree: u32,
    lcm_key: OrderKey,
    item: Item,
}

struct Element {
    poly: KeyedPoly,
    lead: Monomial,
    mask: u64,
    active: bool,
    is_monomial: bool,
}

/// Reduced Gröbner basis of `gens` under `order` with default options.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    buchberger_with(gens, order, &GroebnerOptions::default())
}

pub fn buchberger_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    options: &GroebnerOptions,
) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if order.nvars() != ring.nvars() {
        return Err(Error::Structural(format!(
            "order over {} variables for ring with {}",
            order.nvars(),
            ring.nvars()
        )));
    }
    let field = ring.field();
    let grading = options.grading.clone().unwrap_or_else(|| vec![1; ring.nvars()]);
    let homogeneous = gens.iter().all(|g| g.is_homogeneous_wrt(&grading));
    let cap = if homogeneous { options.degree_cap } else { None };

    // canonical input order: ascending leading term, ties by full term list
    let mut inputs: Vec<KeyedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut k = KeyedPoly::from_poly(g, order);
            k.make_monic(&field);
            k
        })
        .collect();
    inputs.sort_by(|a, b| {
        let ka: Vec<&OrderKey> = a.terms.iter().map(|t| &t.key).collect();
        let kb: Vec<&OrderKey> = b.terms.iter().map(|t| &t.key).collect();
        ka.cmp(&kb)
    });
    inputs.dedup_by(|a, b| {
        a.terms.len() == b.terms.len()
            && a.terms
                .iter()
                .zip(&b.terms)
                .all(|(x, y)| x.key == y.key && x.coeff == y.coeff)
    });

    let degree_of = |m: &Monomial| -> u32 {
        if homogeneous {
            m.weighted_degree(&grading)
        } else {
            m.degree()
        }
    };

    let mut queue: BTreeSet<QueueEntry> = BTreeSet::new();
    for (i, g) in inputs.iter().enumerate() {
        let lead = &g.lead().mono;
        let degree = if homogeneous {
            lead.weighted_degree(&grading)
        } else {
            g.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
        };
        queue.insert(QueueEntry {
            degree,
            lcm_key: g.lead().key.clone(),
            item: Item::Gen(i),
        });
    }

    let mut basis: Vec<Element> = Vec::new();
    let mut pairs_lcm: HashMap<(usize, usize), Monomial> = HashMap::new();
    let mut reductions: u64 = 0;

    while let Some(entry) = queue.pop_first() {
        if let Some(cap) = cap {
            if entry.degree > cap {
                break;
            }
        }
        let candidate = match entry.item {
            Item::Gen(i) => inputs[i].clone(),
            Item::Pair(i, j) => {
                pairs_lcm.remove(&(i, j));
                reductions += 1;
                if reductions > options.budget.max_pair_reductions {
                    return Err(Error::Budget(format!(
                        "more than {} pair reductions",
                        options.budget.max_pair_reductions
                    )));
                }
                if entry.degree > options.budget.max_degree {
                    return Err(Error::Budget(format!(
                        "S-polynomial of degree {} exceeds the cap {}",
                        entry.degree, options.budget.max_degree
                    )));
                }
                spoly_keyed(&basis[i].poly, &basis[j].poly, order, &field)
            }
        };
        if candidate.is_zero() {
            continue;
        }
        let reducers: Vec<Reducer<'_>> = basis
            .iter()
            .filter(|e| e.active)
            .map(|e| Reducer {
                poly: &e.poly,
                mask: e.mask,
            })
            .collect();
        let mut h = reduce_full(&candidate, &reducers, order, &field, None);
        if h.is_zero() {
            continue;
        }
        h.make_monic(&field);
        insert_element(&mut basis, &mut queue, &mut pairs_lcm, h, order, &degree_of);
    }

    // reduced basis from active elements
    let active: Vec<KeyedPoly> = basis.iter().filter(|e| e.active).map(|e| e.poly.clone()).collect();
    let mut reduced = Vec::with_capacity(active.len());
    for (i, g) in active.iter().enumerate() {
        let others: Vec<Reducer<'_>> = active
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| Reducer {
                poly: p,
                mask: divmask(&p.lead().mono),
            })
            .collect();
        let tail = KeyedPoly {
            terms: g.terms[1..].to_vec(),
        };
        let mut r = reduce_full(&tail, &others, order, &field, None);
        r.terms.insert(0, g.terms[0].clone());
        reduced.push(r);
    }
    reduced.sort_by(|a, b| b.lead().key.cmp(&a.lead().key));
    Ok(reduced.iter().map(|g| g.to_poly(&ring)).collect())
}

fn spoly_keyed(f: &KeyedPoly, g: &KeyedPoly, order: &MonomialOrder, field: &PrimeField) -> KeyedPoly {
    // both monic
    let l = f.lead().mono.lcm(&g.lead().mono);
    let mf = f.lead().mono.divide_into(&l).unwrap();
    let mg = g.lead().mono.divide_into(&l).unwrap();
    let kf = order.key(&mf);
    let kg = order.key(&mg);
    let mut ws: WorkSet = BTreeMap::new();
    for t in &f.terms[1..] {
        ws.insert(add_keys(&t.key, &kf), (t.mono.mul(&mf), t.coeff));
    }
    subtract_multiple(&mut ws, g, &mg, &kg, 1, field);
    KeyedPoly {
        terms: ws
            .into_iter()
            .rev()
            .map(|(key, (mono, coeff))| Term { key, mono, coeff })
            .collect(),
    }
}

fn insert_element(
    basis: &mut Vec<Element>,
    queue: &mut BTreeSet<QueueEntry>,
    pairs_lcm: &mut HashMap<(usize, usize), Monomial>,
    h: KeyedPoly,
    order: &MonomialOrder,
    degree_of: &dyn Fn(&Monomial) -> u32,
) {
    let h_lead = h.lead().mono.clone();
    let h_mono = h.terms.len() == 1;
    let new_index = basis.len();

    // new pairs with the chain criterion applied among themselves
    let active: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].active).collect();
    let lcms: Vec<Monomial> = active.iter().map(|&i| basis[i].lead.lcm(&h_lead)).collect();
    let mut new_pairs = Vec::new();
    for (a, &g1) in active.iter().enumerate() {
        let e1 = &basis[g1];
        if h_mono && e1.is_monomial {
            continue;
        }
        if e1.lead.is_coprime(&h_lead) {
            continue;
        }
        let l1 = &lcms[a];
        let l1_mask = divmask(l1);
        let mut redundant = false;
        for (b, &g2) in active.iter().enumerate() {
            if b == a {
                continue;
            }
            let e2 = &basis[g2];
            if e2.mask & !l1_mask != 0 || !e2.lead.divides(l1) {
                continue;
            }
            let l2 = &lcms[b];
            if l2 != l1 {
                redundant = true;
                break;
            }
            // equal lcm: a coprime partner covers the group, otherwise keep the first
            if e2.lead.is_coprime(&h_lead) || b < a {
                redundant = true;
                break;
            }
        }
        if !redundant {
            new_pairs.push((g1, l1.clone()));
        }
    }

    // drop old pairs whose lcm is covered by the new leading term
    let h_mask = divmask(&h_lead);
    let stale: Vec<(usize, usize)> = pairs_lcm
        .iter()
        .filter(|((i, j), l)| {
            h_mask & !divmask(l) == 0
                && h_lead.divides(l)
                && &basis[*i].lead.lcm(&h_lead) != *l
                && &basis[*j].lead.lcm(&h_lead) != *l
        })
        .map(|(k, _)| *k)
        .collect();
    for (i, j) in stale {
        let l = pairs_lcm.remove(&(i, j)).unwrap();
        queue.remove(&QueueEntry {
            degree: degree_of(&l),
            lcm_key: order.key(&l),
            item: Item::Pair(i, j),
        });
    }

    for &g in &active {
        if h_lead.divides(&basis[g].lead) {
            basis[g].active = false;
        }
    }

    basis.push(Element {
        mask: h_mask,
        lead: h_lead,
        is_monomial: h_mono,
        poly: h,
        active: true,
    });

    for (g, l) in new_pairs {
        queue.insert(QueueEntry {
            degree: degree_of(&l),
            lcm_key: order.key(&l),
            item: Item::Pair(g, new_index),
        });
        pairs_lcm.insert((g, new_index), l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    fn ring(p: u32, names: &[&str]) -> RingRef {
        Ring::new(
            PrimeField::new(p).unwrap(),
            names.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn x(r: &RingRef, i: usize, e: u64) -> Polynomial {
        Polynomial::var(r, i).pow(e)
    }

    #[test]
    fn membership_of_multiple() {
        let r = ring(7, &["X"]);
        let nf = normal_form(&x(&r, 0, 2), &[x(&r, 0, 1)], r.order());
        assert!(nf.is_zero());
    }

    #[test]
    fn two_binomials_close_under_s_pairs() {
        let r = ring(101, &["X", "Y"]);
        let gens = vec![&x(&r, 0, 2) - &x(&r, 1, 1), &x(&r, 1, 2) - &x(&r, 0, 1)];
        let gb = buchberger(&gens, r.order()).unwrap();
        assert!(is_groebner_basis(&gb, r.order()));
        for g in &gens {
            assert!(normal_form(g, &gb, r.order()).is_zero());
        }
        for g in &gb {
            assert_eq!(g.leading_term(r.order()).unwrap().1, 1);
        }
    }

    #[test]
    fn division_certificate_reconstructs_input() {
        let r = ring(5, &["X", "Y", "Z"]);
        let f = &(&x(&r, 0, 3) + &(&x(&r, 1, 2) * &x(&r, 2, 1))) + &Polynomial::constant(&r, 2);
        let basis = vec![&x(&r, 0, 1) - &x(&r, 1, 1), &x(&r, 1, 2) - &x(&r, 2, 1)];
        let div = divide(&f, &basis, r.order());
        let mut recon = div.remainder.clone();
        for (q, g) in div.quotients.iter().zip(&basis) {
            recon = &recon + &(q * g);
        }
        assert_eq!(recon, f);
    }

    #[test]
    fn degree_budget_is_an_error() {
        let r = ring(101, &["X", "Y"]);
        let gens = vec![
            &x(&r, 0, 2) - &x(&r, 1, 1),
            &(&x(&r, 0, 1) * &x(&r, 1, 1)) - &Polynomial::one(&r),
        ];
        let options = GroebnerOptions {
            budget: Budget {
                max_pair_reductions: 1,
                max_degree: 200,
            },
            ..Default::default()
        };
        assert!(matches!(
            buchberger_with(&gens, r.order(), &options),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn truncation_keeps_low_degrees() {
        let r = ring(32003, &["X", "Y", "Z"]);
        let gens = vec![
            &(&x(&r, 0, 2) * &x(&r, 1, 1)) - &x(&r, 2, 3),
            &(&x(&r, 0, 1) * &x(&r, 2, 1)) - &x(&r, 1, 2),
        ];
        let full = buchberger(&gens, r.order()).unwrap();
        let cut = buchberger_with(
            &gens,
            r.order(),
            &GroebnerOptions {
                degree_cap: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        let low: Vec<&Polynomial> = full.iter().filter(|g| g.degree().unwrap() <= 3).collect();
        assert_eq!(low.len(), cut.len());
    }
}
