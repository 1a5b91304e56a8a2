//! Rational functions in the variable `v`, where `v^2 = q`.
//!
//! Relation coefficients are rational functions of `q` and are represented
//! here through the substitution `q = v^2`; the torus character genuinely
//! needs odd powers of `v`, which is why the field is `Q(v)` rather than
//! `Q(q)`.

use super::poly::QPoly;
use super::rat::Rat;
use crate::error::{HallError, Result};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced fraction of polynomials in `v`. The denominator is monic and
/// nonzero and shares no common factor with the numerator, so equal values
/// have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lead = den.leading().recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_int(n))
    }

    /// The variable `v` itself.
    pub fn v() -> Self {
        Self::from_poly(QPoly::monomial(Rat::one(), 1))
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::from_poly(QPoly::monomial(Rat::one(), 2))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::q().pow(k)
    }

    /// A polynomial in `q` given by its coefficients, lowest degree first.
    pub fn poly_in_q(coeffs: &[i64]) -> Self {
        let p = QPoly::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect());
        Self::from_poly(p.inflate())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return RatFunc::one();
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Whether the reduced form only involves even powers of `v`, i.e. the
    /// value is a rational function of `q`.
    pub fn is_function_of_q(&self) -> bool {
        // clear odd powers from the denominator first
        let (de, dv) = self.den.split_parity();
        let conj = &de.inflate() - &(&QPoly::monomial(Rat::one(), 1) * &dv.inflate());
        let num = &self.num * &conj;
        let (_, odd) = num.split_parity();
        odd.is_zero()
    }

    /// Exact evaluation at `v = sqrt(q)` for elements of the `q`-subfield.
    pub fn eval_at_q(&self, q: u64) -> Result<Rat> {
        let (de, dv) = self.den.split_parity();
        let conj = &de.inflate() - &(&QPoly::monomial(Rat::one(), 1) * &dv.inflate());
        let num = &self.num * &conj;
        let den = &self.den * &conj;
        let (num_e, num_o) = num.split_parity();
        if !num_o.is_zero() {
            return Err(HallError::OddPowerResidue);
        }
        let (den_e, den_o) = den.split_parity();
        debug_assert!(den_o.is_zero());
        let qr = Rat::from_int(q as i64);
        let dval = den_e.eval(&qr);
        assert!(!dval.is_zero(), "denominator vanishes at q = {q}");
        Ok(&num_e.eval(&qr) / &dval)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_simple() {
        // q / (q - 1) at q = 2 is 2
        let f = &RatFunc::q() / &(&RatFunc::q() - &RatFunc::one());
        assert_eq!(f.eval_at_q(2).unwrap(), Rat::from_int(2));
        assert_eq!(RatFunc::one().eval_at_q(7).unwrap(), Rat::one());
    }

    #[test]
    fn odd_power_detected() {
        assert_eq!(RatFunc::v().eval_at_q(2), Err(HallError::OddPowerResidue));
        assert!(!RatFunc::v().is_function_of_q());
        // v^2 / v = v is odd even though written as a fraction
        let f = &RatFunc::q() / &RatFunc::v();
        assert_eq!(f.eval_at_q(3), Err(HallError::OddPowerResidue));
    }

    #[test]
    fn odd_denominator_clears() {
        // (v^3) / v = q is a function of q despite odd pieces
        let f = &RatFunc::from_poly(QPoly::monomial(Rat::one(), 3)) / &RatFunc::v();
        assert_eq!(f.eval_at_q(5).unwrap(), Rat::from_int(5));
        assert!(f.is_function_of_q());
    }

    #[test]
    fn canonical_reduction() {
        // (q^2 - 1) / (q - 1) = q + 1
        let f = &(&RatFunc::q_pow(2) - &RatFunc::one()) / &(&RatFunc::q() - &RatFunc::one());
        assert_eq!(f, RatFunc::poly_in_q(&[1, 1]));
    }

    #[test]
    fn q_pow_negative() {
        assert_eq!(RatFunc::q_pow(-2).eval_at_q(2).unwrap(), Rat::from_frac(1, 4));
    }
}
