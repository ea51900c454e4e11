//! Coefficient scalars for cohomology classes: univariate polynomials in
//! the formal degree symbol `d`, over exact rationals.
//!
//! The embedding degree enters the Chern-class relations linearly, so in
//! practice these polynomials stay at degree <= 1; the type supports any
//! degree regardless.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = num_rational::BigRational;

/// Polynomial in the formal symbol `d`, coefficients in ascending degree.
/// Canonical form: the vector is empty for zero, and the last stored
/// coefficient is nonzero otherwise.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ScalarPoly {
    coeffs: Vec<Rational>,
}

impl ScalarPoly {
    pub fn zero() -> ScalarPoly {
        ScalarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> ScalarPoly {
        ScalarPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> ScalarPoly {
        let mut p = ScalarPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_int(v: i64) -> ScalarPoly {
        ScalarPoly::constant(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> ScalarPoly {
        ScalarPoly::constant(Rational::from_integer(v))
    }

    /// Exact rational `num/den`.
    pub fn fraction(num: i64, den: i64) -> ScalarPoly {
        ScalarPoly::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The formal symbol `d` itself.
    pub fn degree_symbol() -> ScalarPoly {
        ScalarPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> ScalarPoly {
        let mut p = ScalarPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `d^k` (zero when out of range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn scale(&self, by: &Rational) -> ScalarPoly {
        if by.is_zero() {
            return ScalarPoly::zero();
        }
        ScalarPoly {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        ScalarPoly::from_coeffs(coeffs)
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        ScalarPoly::from_coeffs(coeffs)
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        if self.is_zero() || rhs.is_zero() {
            return ScalarPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ScalarPoly::from_coeffs(coeffs)
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: ScalarPoly) -> ScalarPoly {
        &self + &rhs
    }
}

impl Sub for ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: ScalarPoly) -> ScalarPoly {
        &self - &rhs
    }
}

impl Mul for ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: ScalarPoly) -> ScalarPoly {
        &self * &rhs
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                write_rational(f, &mag)?;
                if k > 0 {
                    write!(f, " ")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "d")?,
                _ => write!(f, "d^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = ScalarPoly::from_coeffs(vec![Rational::one(), Rational::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert!(ScalarPoly::from_int(0).is_zero());
    }

    #[test]
    fn ring_ops() {
        let d = ScalarPoly::degree_symbol();
        let c16 = ScalarPoly::from_int(16);
        let p = &c16 - &d; // 16 - d
        assert_eq!(p.coeff(0), Rational::from_integer(16.into()));
        assert_eq!(p.coeff(1), Rational::from_integer((-1).into()));
        let sq = &p * &p; // 256 - 32 d + d^2
        assert_eq!(sq.coeff(1), Rational::from_integer((-32).into()));
        assert_eq!(sq.coeff(2), Rational::one());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_matches_horner() {
        let d = ScalarPoly::degree_symbol();
        let p = &(&d * &d) + &ScalarPoly::from_int(3); // d^2 + 3
        let at = Rational::from_integer(5.into());
        assert_eq!(p.eval(&at), Rational::from_integer(28.into()));
    }

    #[test]
    fn display_format() {
        let d = ScalarPoly::degree_symbol();
        let p = &ScalarPoly::from_int(16) - &d;
        assert_eq!(p.to_string(), "16 - d");
        assert_eq!(ScalarPoly::fraction(-5, 3).to_string(), "-5/3");
        assert_eq!(ScalarPoly::zero().to_string(), "0");
        assert_eq!(d.to_string(), "d");
    }
}
