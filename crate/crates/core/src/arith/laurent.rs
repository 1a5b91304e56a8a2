//! Laurent polynomials in `x` with coefficients in `Q(v)`.

use super::ratfun::RatFunc;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Q(v)[x, x^-1]`, the coordinate ring of a one-dimensional
/// torus. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, RatFunc>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::term(RatFunc::one(), 0)
    }

    /// `c * x^k`.
    pub fn term(c: RatFunc, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> RatFunc {
        self.terms.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &RatFunc)> {
        self.terms.iter()
    }

    /// True when the element is a constant (only the `x^0` term).
    pub fn constant_part(&self) -> Option<&RatFunc> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&0),
            _ => None,
        }
    }

    fn insert(&mut self, k: i64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            None => {
                self.terms.insert(k, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(k, sum);
                }
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (*k, a * c))
                .collect(),
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.insert(i + j, a * b);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let x = Laurent::term(RatFunc::one(), 1);
        let xinv = Laurent::term(RatFunc::one(), -1);
        assert_eq!(&x * &xinv, Laurent::one());
        assert!((&x - &x).is_zero());
        let two_x = &x + &x;
        assert_eq!(two_x.coeff(1), RatFunc::from_int(2));
    }
}
