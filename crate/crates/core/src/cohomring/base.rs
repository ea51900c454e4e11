//! Truncated cohomology classes of the base surface.
//!
//! The model is the free commutative algebra on two degree-1 generators
//! `e1`, `g1` and two degree-2 generators `e2`, `g2`, truncated above
//! degree 2 (the surface dimension). Eight monomials survive; the
//! generators satisfy no relations beyond the truncation, which is exactly
//! what coefficient comparison on the bundle side requires.

use super::scalar::{Rational, ScalarPoly};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The eight basis monomials in degrees 0, 1, 1, 2, 2, 2, 2, 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum BaseMonomial {
    One,
    E1,
    Gamma1,
    E1E1,
    E1Gamma1,
    Gamma1Gamma1,
    E2,
    Gamma2,
}

pub const BASE_MONOMIALS: [BaseMonomial; 8] = [
    BaseMonomial::One,
    BaseMonomial::E1,
    BaseMonomial::Gamma1,
    BaseMonomial::E1E1,
    BaseMonomial::E1Gamma1,
    BaseMonomial::Gamma1Gamma1,
    BaseMonomial::E2,
    BaseMonomial::Gamma2,
];

impl BaseMonomial {
    pub fn index(self) -> usize {
        BASE_MONOMIALS.iter().position(|&m| m == self).unwrap()
    }

    pub fn degree(self) -> u32 {
        match self {
            BaseMonomial::One => 0,
            BaseMonomial::E1 | BaseMonomial::Gamma1 => 1,
            _ => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BaseMonomial::One => "1",
            BaseMonomial::E1 => "e1",
            BaseMonomial::Gamma1 => "g1",
            BaseMonomial::E1E1 => "e1^2",
            BaseMonomial::E1Gamma1 => "e1*g1",
            BaseMonomial::Gamma1Gamma1 => "g1^2",
            BaseMonomial::E2 => "e2",
            BaseMonomial::Gamma2 => "g2",
        }
    }

    /// Product of two monomials; `None` when the result lands above the
    /// surface truncation degree.
    pub fn product(self, rhs: BaseMonomial) -> Option<BaseMonomial> {
        use BaseMonomial::*;
        match (self, rhs) {
            (One, m) | (m, One) => Some(m),
            (E1, E1) => Some(E1E1),
            (E1, Gamma1) | (Gamma1, E1) => Some(E1Gamma1),
            (Gamma1, Gamma1) => Some(Gamma1Gamma1),
            _ => None,
        }
    }
}

/// A class of the truncated surface ring: one scalar per basis monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseClass {
    coeffs: [ScalarPoly; 8],
}

impl BaseClass {
    pub fn zero() -> BaseClass {
        BaseClass {
            coeffs: std::array::from_fn(|_| ScalarPoly::zero()),
        }
    }

    pub fn one() -> BaseClass {
        BaseClass::generator(BaseMonomial::One)
    }

    pub fn generator(m: BaseMonomial) -> BaseClass {
        BaseClass::monomial(m, ScalarPoly::one())
    }

    pub fn monomial(m: BaseMonomial, coeff: ScalarPoly) -> BaseClass {
        let mut out = BaseClass::zero();
        out.coeffs[m.index()] = coeff;
        out
    }

    pub fn coeff(&self, m: BaseMonomial) -> &ScalarPoly {
        &self.coeffs[m.index()]
    }

    pub fn set_coeff(&mut self, m: BaseMonomial, value: ScalarPoly) {
        self.coeffs[m.index()] = value;
    }

    pub fn add_to(&mut self, m: BaseMonomial, value: &ScalarPoly) {
        self.coeffs[m.index()] = &self.coeffs[m.index()] + value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ScalarPoly::is_zero)
    }

    /// Largest degree with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<u32> {
        BASE_MONOMIALS
            .iter()
            .filter(|m| !self.coeff(**m).is_zero())
            .map(|m| m.degree())
            .max()
    }

    /// True when every nonzero coefficient sits in the one given degree.
    pub fn is_pure_degree(&self, degree: u32) -> bool {
        BASE_MONOMIALS
            .iter()
            .all(|m| m.degree() == degree || self.coeff(*m).is_zero())
    }

    /// The part of the class in one degree.
    pub fn degree_part(&self, degree: u32) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            if m.degree() == degree {
                out.coeffs[m.index()] = self.coeff(m).clone();
            }
        }
        out
    }

    /// Drop every monomial above the given degree.
    pub fn truncated(&self, max_degree: u32) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            if m.degree() <= max_degree {
                out.coeffs[m.index()] = self.coeff(m).clone();
            }
        }
        out
    }

    pub fn scale(&self, by: &ScalarPoly) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            out.coeffs[m.index()] = self.coeff(m) * by;
        }
        out
    }

    pub fn scale_rat(&self, by: &Rational) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            out.coeffs[m.index()] = self.coeff(m).scale(by);
        }
        out
    }
}

impl Add for &BaseClass {
    type Output = BaseClass;
    fn add(self, rhs: &BaseClass) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            out.coeffs[m.index()] = self.coeff(m) + rhs.coeff(m);
        }
        out
    }
}

impl Sub for &BaseClass {
    type Output = BaseClass;
    fn sub(self, rhs: &BaseClass) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            out.coeffs[m.index()] = self.coeff(m) - rhs.coeff(m);
        }
        out
    }
}

impl Mul for &BaseClass {
    type Output = BaseClass;
    fn mul(self, rhs: &BaseClass) -> BaseClass {
        let mut out = BaseClass::zero();
        for a in BASE_MONOMIALS {
            let ca = self.coeff(a);
            if ca.is_zero() {
                continue;
            }
            for b in BASE_MONOMIALS {
                let cb = rhs.coeff(b);
                if cb.is_zero() {
                    continue;
                }
                if let Some(m) = a.product(b) {
                    let prod = ca * cb;
                    out.add_to(m, &prod);
                }
            }
        }
        out
    }
}

impl Neg for &BaseClass {
    type Output = BaseClass;
    fn neg(self) -> BaseClass {
        let mut out = BaseClass::zero();
        for m in BASE_MONOMIALS {
            out.coeffs[m.index()] = -self.coeff(m);
        }
        out
    }
}

impl Add for BaseClass {
    type Output = BaseClass;
    fn add(self, rhs: BaseClass) -> BaseClass {
        &self + &rhs
    }
}

impl Sub for BaseClass {
    type Output = BaseClass;
    fn sub(self, rhs: BaseClass) -> BaseClass {
        &self - &rhs
    }
}

impl Mul for BaseClass {
    type Output = BaseClass;
    fn mul(self, rhs: BaseClass) -> BaseClass {
        &self * &rhs
    }
}

impl Neg for BaseClass {
    type Output = BaseClass;
    fn neg(self) -> BaseClass {
        -&self
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in BASE_MONOMIALS {
            let c = self.coeff(m);
            if c.is_zero() {
                continue;
            }
            let (negative, body) = term_text(c, m.symbol(), m == BaseMonomial::One);
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Render `coeff * symbol` as (sign, magnitude text). Constant coefficients
/// fold their sign into the separator; genuine polynomials stay in parens.
pub(crate) fn term_text(coeff: &ScalarPoly, symbol: &str, is_unit: bool) -> (bool, String) {
    use num_traits::{One as _, Signed as _};
    if coeff.degree() == Some(0) {
        let r = coeff.coeff(0);
        let negative = r.is_negative();
        let mag = r.abs();
        let mag_text = if mag.denom().is_one() {
            mag.numer().to_string()
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        let body = if is_unit {
            mag_text
        } else if mag.is_one() {
            symbol.to_string()
        } else {
            format!("{mag_text} {symbol}")
        };
        (negative, body)
    } else if is_unit {
        (false, format!("({coeff})"))
    } else {
        (false, format!("({coeff}) {symbol}"))
    }
}
