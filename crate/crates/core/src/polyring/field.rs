//! Arithmetic in the prime field F_p with single-word residues.

use crate::error::{Error, Result};

/// The prime field F_p. Elements are `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Fails unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Domain(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p as u64) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::Domain("inversion of zero".into()));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.pow(3, 6), 1);
    }

    #[test]
    fn rejects_composites_and_zero_inverse() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        let f = PrimeField::new(13).unwrap();
        assert!(matches!(f.inv(0), Err(Error::Domain(_))));
    }

    #[test]
    fn additive_inverse_everywhere() {
        let f = PrimeField::new(31).unwrap();
        for a in 0..31 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.add(a, f.sub(0, a)), 0);
        }
    }

    #[test]
    fn large_exponents() {
        let f = PrimeField::new(13).unwrap();
        // exponents up to p^4
        assert_eq!(f.pow(5, 13u64.pow(4)), 5);
        assert_eq!(f.from_i64(-1), 12);
        assert_eq!(f.signed(12), -1);
    }
}
