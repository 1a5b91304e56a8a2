//! Prime fields and the scalar interface shared by the matrix routines.

use super::rat::Rat;
use std::fmt;

/// Interface needed by exact Gaussian elimination. Elements carry their own
/// field data (a prime-field scalar knows its modulus), so zero/one are
/// derived from an existing element.
pub trait ScalarField: Clone + PartialEq + Eq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
}

/// A scalar of the prime field `F_q`, stored as a canonical representative
/// in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Fp::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Fp::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mod_inv(a: u64, m: u64) -> u64 {
    // extended Euclid; panics on non-invertible input
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    assert!(r0 == 1, "element {a} not invertible mod {m}");
    s0.rem_euclid(m as i128) as u64
}

impl ScalarField for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::one(self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        Fp {
            value: mod_inv(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl ScalarField for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

/// True for the primes this artifact accepts as `q`. Prime powers that are
/// not prime are rejected; genuine extension fields are out of scope.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 5, 7] {
            for a in 0..q {
                let x = Fp::new(a as i64, q);
                assert_eq!(x.add(&x.neg()), Fp::zero(q));
                if a != 0 {
                    assert_eq!(x.mul(&x.inv()), Fp::one(q));
                }
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
    }
}
