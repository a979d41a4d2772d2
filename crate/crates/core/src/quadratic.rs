//! Arithmetic in a quadratic extension `Q(sqrt d)`.
//!
//! Elements carry their radicand; the rational constants produced by
//! `zero()`/`one()` have none and adopt the radicand of whatever they are
//! combined with. Mixing two different radicands is a logic error and panics.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Field;
use crate::Rational;

#[derive(Clone)]
pub struct Quadratic {
    pub re: Rational,
    pub im: Rational,
    radicand: Option<Rational>,
}

impl Quadratic {
    pub fn rational(q: Rational) -> Self {
        Self {
            re: q,
            im: Rational::zero(),
            radicand: None,
        }
    }

    /// `re + im * sqrt(d)`; `d` should not be a rational square.
    pub fn new(re: Rational, im: Rational, d: Rational) -> Self {
        Self {
            re,
            im,
            radicand: Some(d),
        }
    }

    /// The generator `sqrt(d)`.
    pub fn sqrt(d: Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.radicand.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// `x * conj(x)`, a rational.
    pub fn norm(&self) -> Rational {
        let d = self.radicand.clone().unwrap_or_else(Rational::zero);
        &self.re * &self.re - &self.im * &self.im * d
    }

    fn merge(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic extensions");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for Quadratic {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Debug for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            Some(d) if !self.im.is_zero() => write!(f, "{} + {}*sqrt({})", self.re, self.im, d),
            _ => write!(f, "{}", self.re),
        }
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for Quadratic {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            radicand: Self::merge(&self.radicand, &rhs.radicand),
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for Quadratic {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Quadratic {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
            radicand: self.radicand,
        }
    }
}

impl Mul for Quadratic {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let radicand = Self::merge(&self.radicand, &rhs.radicand);
        let d = radicand.clone().unwrap_or_else(Rational::zero);
        Self {
            re: &self.re * &rhs.re + &self.im * &rhs.im * d,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
            radicand,
        }
    }
}

impl Div for Quadratic {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in quadratic extension");
        let prod = self * rhs.conjugate();
        Self {
            re: prod.re / &n,
            im: prod.im / &n,
            radicand: prod.radicand,
        }
    }
}

impl Field for Quadratic {}
