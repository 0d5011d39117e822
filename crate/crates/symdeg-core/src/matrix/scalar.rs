//! Exact scalars of the form `a + b·√r` with `a, b, r` rational. The plain
//! rationals are the case `r = 0` (so `b` stays zero throughout); `r` is
//! always chosen square-free-enough, i.e. never a perfect square, so that
//! `a + b√r = 0` iff `a = b = 0`.

use num::traits::{One, Signed, Zero};
use num::{BigInt, BigRational};
use std::fmt;

/// Coefficient field tag of a matrix or point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Rational,
    /// The rationals with one adjoined square root of `r` (positive, not a
    /// perfect square).
    Sqrt(BigRational),
}

impl Field {
    pub fn radicand(&self) -> BigRational {
        match self {
            Field::Rational => BigRational::zero(),
            Field::Sqrt(r) => r.clone(),
        }
    }

    /// Whether values over `self` can be reinterpreted over `other`.
    pub fn extends_to(&self, other: &Field) -> bool {
        match (self, other) {
            (Field::Rational, _) => true,
            (Field::Sqrt(a), Field::Sqrt(b)) => a == b,
            (Field::Sqrt(_), Field::Rational) => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    pub a: BigRational,
    pub b: BigRational,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}√r", self.a, self.b)
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar {
            a: BigRational::from_integer(BigInt::from(v)),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
        }
    }

    /// `b·√r` itself.
    pub fn root_times(b: BigRational) -> Self {
        Scalar {
            a: BigRational::zero(),
            b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn mul(&self, o: &Scalar, r: &BigRational) -> Scalar {
        Scalar {
            a: &self.a * &o.a + &(&self.b * &o.b) * r,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn inv(&self, r: &BigRational) -> Scalar {
        let norm = &self.a * &self.a - &(&self.b * &self.b) * r;
        assert!(!norm.is_zero(), "inverse of zero (or r was a perfect square)");
        Scalar {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }

    pub fn div(&self, o: &Scalar, r: &BigRational) -> Scalar {
        self.mul(&o.inv(r), r)
    }
}

/// Exact square root of a nonnegative rational, when it is one.
pub fn sqrt_exact(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_over_an_extension() {
        let r = rat(2, 1); // adjoin √2
        let x = Scalar {
            a: rat(1, 1),
            b: rat(1, 1),
        }; // 1 + √2
        let y = x.mul(&x, &r); // 3 + 2√2
        assert_eq!(y.a, rat(3, 1));
        assert_eq!(y.b, rat(2, 1));
        let inv = x.inv(&r); // -1 + √2
        assert_eq!(x.mul(&inv, &r), Scalar::one());
    }

    #[test]
    fn rational_case_keeps_b_zero() {
        let r = BigRational::zero();
        let x = Scalar::from_int(3);
        let y = Scalar::from_int(-7);
        assert!(x.mul(&y, &r).is_rational());
        assert!(x.div(&y, &r).is_rational());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-4, 1)), None);
        assert_eq!(sqrt_exact(&rat(0, 1)), Some(rat(0, 1)));
    }
}
