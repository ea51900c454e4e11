//! Exact-rational polynomials in the three enumeration variables `q`, `d`
//! and `e2`. Used to state the eliminated divisor constraint once, verify
//! it as a polynomial identity, and re-check every integer solution the
//! solver produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Q,
    D,
    E2,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Q => 0,
            Var::D => 1,
            Var::E2 => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::D => "d",
            Var::E2 => "e2",
        }
    }
}

const VARS: [Var; 3] = [Var::Q, Var::D, Var::E2];

/// Sparse polynomial over `q, d, e2`; canonical form stores monomials in
/// sorted exponent order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 3], BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0, 0, 0], c);
        }
        MultiPoly { terms }
    }

    pub fn int(v: i64) -> MultiPoly {
        MultiPoly::constant(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn var(v: Var) -> MultiPoly {
        let mut exps = [0u32; 3];
        exps[v.slot()] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigRational)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at integer arguments.
    pub fn eval_int(&self, q: &BigInt, d: &BigInt, e2: &BigInt) -> BigRational {
        let at = [q, d, e2];
        let mut acc = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (slot, e) in exps.iter().enumerate() {
                for _ in 0..*e {
                    term *= BigRational::from_integer(at[slot].clone());
                }
            }
            acc += term;
        }
        acc
    }

    fn insert(&mut self, exps: [u32; 3], c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (exps, c) in &rhs.terms {
            out.insert(*exps, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (exps, c) in &rhs.terms {
            out.insert(*exps, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.insert(exps, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            let negative = c.is_negative();
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
            let mag = c.abs();
            let is_constant_term = exps.iter().all(|&e| e == 0);
            if !mag.is_one() || is_constant_term {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if !is_constant_term {
                    write!(f, " ")?;
                }
            }
            let mut first_var = true;
            for v in VARS {
                let e = exps[v.slot()];
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, " ")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "{}", v.symbol())?;
                } else {
                    write!(f, "{}^{}", v.symbol(), e)?;
                }
            }
        }
        Ok(())
    }
}
