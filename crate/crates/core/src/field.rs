//! Arithmetic in the prime field `F_p`.
//!
//! Elements are plain `u32` values kept in `[0, p)`. The modulus travels with
//! every matrix instead of living in a global, so different fields can coexist
//! in one process (handy for `F_2` cross-checks).

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps every product of two residues inside `u64`
/// with room to spare.
pub const MAX_MODULUS: u32 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::F3
    }
}

impl PrimeField {
    pub const F2: PrimeField = PrimeField { p: 2 };
    pub const F3: PrimeField = PrimeField { p: 3 };

    pub fn new(p: u32) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Maps any integer onto its residue.
    #[inline]
    pub fn element(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        v < self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + (self.p - b) as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^i` as a residue.
    #[inline]
    pub fn sign(self, i: usize) -> u32 {
        if i.is_multiple_of(2) {
            1 % self.p
        } else {
            self.p - 1
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert_eq!(PrimeField::new(5).unwrap().modulus(), 5);
    }

    #[test]
    fn inverses_exist_for_nonzero() {
        for p in [2u32, 3, 5, 7, 13, 65_521] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p.min(500) {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn residues_of_negative_integers() {
        let f = PrimeField::F3;
        assert_eq!(f.element(-1), 2);
        assert_eq!(f.element(-4), 2);
        assert_eq!(f.sign(1), 2);
        assert_eq!(PrimeField::F2.sign(1), 1);
    }
}
