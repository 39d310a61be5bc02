//! Monomial orders: graded reverse lexicographic with an arbitrary variable
//! ranking, and two-block elimination orders built from grevlex blocks.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sort key of a monomial under a fixed order. Lexicographic comparison of
/// keys agrees with the order, and keys are additive: `key(ab) = key(a) + key(b)`.
pub type OrderKey = SmallVec<[i32; 12]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    /// The first `split` variables of the ranking form the eliminated block.
    Block {
        split: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

fn check_permutation(ranking: &[usize]) -> Result<()> {
    let mut seen = vec![false; ranking.len()];
    for &r in ranking {
        if r >= ranking.len() || seen[r] {
            return Err(Error::Structural(format!("ranking {ranking:?} is not a permutation")));
        }
        seen[r] = true;
    }
    Ok(())
}

impl MonomialOrder {
    /// Grevlex with `x_0 > x_1 > ... > x_{n-1}`.
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            ranking: (0..nvars).collect(),
        }
    }

    /// Grevlex where `ranking[0]` is the greatest variable.
    pub fn grevlex_ranked(ranking: Vec<usize>) -> Result<Self> {
        check_permutation(&ranking)?;
        Ok(MonomialOrder {
            kind: OrderKind::Grevlex,
            ranking,
        })
    }

    /// Elimination order: grevlex on the first `split` ranked variables, ties
    /// broken by grevlex on the remaining ones.
    pub fn block(ranking: Vec<usize>, split: usize) -> Result<Self> {
        check_permutation(&ranking)?;
        if split > ranking.len() {
            return Err(Error::Structural(format!(
                "block split {split} exceeds {} variables",
                ranking.len()
            )));
        }
        Ok(MonomialOrder {
            kind: OrderKind::Block { split },
            ranking,
        })
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exps();
        let mut key = OrderKey::new();
        match self.kind {
            OrderKind::Grevlex => push_grevlex(&mut key, e, &self.ranking),
            OrderKind::Block { split } => {
                push_grevlex(&mut key, e, &self.ranking[..split]);
                push_grevlex(&mut key, e, &self.ranking[split..]);
            }
        }
        key
    }

    /// Compares two monomials; fails on arity mismatch.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::Structural(format!(
                "order over {} variables applied to monomials of arity {} and {}",
                self.nvars(),
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.key(a).cmp(&self.key(b)))
    }

    /// Renders as `grevlex:3,0,1,2` (or `block2:...`), the syntax the CLI accepts.
    pub fn spec_string(&self) -> String {
        let ranks: Vec<String> = self.ranking.iter().map(|r| r.to_string()).collect();
        match self.kind {
            OrderKind::Grevlex => format!("grevlex:{}", ranks.join(",")),
            OrderKind::Block { split } => format!("block{split}:{}", ranks.join(",")),
        }
    }
}

fn push_grevlex(key: &mut OrderKey, e: &[u32], ranking: &[usize]) {
    key.push(ranking.iter().map(|&i| e[i] as i32).sum());
    for &i in ranking.iter().rev() {
        key.push(-(e[i] as i32));
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_tie_break() {
        // X > Y > Z: Y^2 > XZ
        let o = MonomialOrder::grevlex(3);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn ranked_grevlex_puts_w_first() {
        // variables (x, y, z, w) ranked w > x > y > z
        let o = MonomialOrder::grevlex_ranked(vec![3, 0, 1, 2]).unwrap();
        let terms = [m(&[4, 0, 0, 0]), m(&[0, 4, 0, 0]), m(&[0, 0, 4, 0]), m(&[0, 0, 0, 4])];
        let lead = terms.iter().max_by_key(|t| o.key(t)).unwrap();
        assert_eq!(lead, &m(&[0, 0, 0, 4]));
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::block(vec![0, 1, 2], 1).unwrap();
        // s * z beats y^5
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 5, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn arity_mismatch_is_structural() {
        let o = MonomialOrder::grevlex(2);
        assert!(matches!(o.compare(&m(&[1]), &m(&[0, 1])), Err(Error::Structural(_))));
        assert!(MonomialOrder::grevlex_ranked(vec![0, 0]).is_err());
    }

    #[test]
    fn keys_are_additive() {
        let o = MonomialOrder::block(vec![2, 0, 1], 2).unwrap();
        let a = m(&[1, 3, 2]);
        let b = m(&[0, 2, 5]);
        let sum: OrderKey = o.key(&a).iter().zip(o.key(&b).iter()).map(|(x, y)| x + y).collect();
        assert_eq!(o.key(&a.mul(&b)), sum);
    }
}
