//! Classes in the truncated cohomology ring of the projective bundle.
//!
//! A class is a finite sum `sum_k h^k * (base class)` where `h` is the
//! hyperplane class of the bundle. Two truncations apply during every
//! product: base degree above 2 dies (surface), and total complex degree
//! above `n` dies (the bundle dimension). On top of that the ring carries
//! the single fiber relation `h^(n-1) = h^(n-2) e1 - h^(n-3) e2`, applied
//! lazily by [`BundleClass::reduce_h`].

use super::base::{BaseClass, BaseMonomial, BASE_MONOMIALS};
use super::scalar::{Rational, ScalarPoly};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct BundleClass {
    n: u32,
    /// `parts[k]` is the base-class coefficient of `h^k`; always `n + 1`
    /// slots so total degree `n` fits before reduction.
    parts: Vec<BaseClass>,
    reduced: bool,
}

impl PartialEq for BundleClass {
    fn eq(&self, other: &Self) -> bool {
        // the `reduced` flag is bookkeeping, not part of the value
        self.n == other.n && self.parts == other.parts
    }
}

impl Eq for BundleClass {}

impl BundleClass {
    pub fn zero(n: u32) -> BundleClass {
        assert!(n >= 3, "bundle dimension must be at least 3");
        BundleClass {
            n,
            parts: vec![BaseClass::zero(); n as usize + 1],
            reduced: false,
        }
    }

    pub fn one(n: u32) -> BundleClass {
        BundleClass::from_base(n, BaseClass::one())
    }

    /// `h^k`, for `k <= n`.
    pub fn h_pow(n: u32, k: u32) -> BundleClass {
        assert!(k <= n, "h^{k} exceeds the total degree bound {n}");
        let mut out = BundleClass::zero(n);
        out.parts[k as usize] = BaseClass::one();
        out
    }

    /// A pulled-back base class, sitting at `h^0`.
    pub fn from_base(n: u32, base: BaseClass) -> BundleClass {
        let mut out = BundleClass::zero(n);
        out.parts[0] = base;
        out
    }

    pub fn generator(n: u32, m: BaseMonomial) -> BundleClass {
        BundleClass::from_base(n, BaseClass::generator(m))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn part(&self, h_exp: u32) -> &BaseClass {
        &self.parts[h_exp as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BaseClass::is_zero)
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn scale_rat(&self, by: &Rational) -> BundleClass {
        BundleClass {
            n: self.n,
            parts: self.parts.iter().map(|p| p.scale_rat(by)).collect(),
            reduced: self.reduced,
        }
    }

    pub fn scale_scalar(&self, by: &ScalarPoly) -> BundleClass {
        BundleClass {
            n: self.n,
            parts: self.parts.iter().map(|p| p.scale(by)).collect(),
            reduced: self.reduced,
        }
    }

    /// The homogeneous part of total complex degree `k`.
    pub fn component(&self, k: u32) -> BundleClass {
        assert!(k <= self.n, "degree {k} out of range for dimension {}", self.n);
        let mut out = BundleClass::zero(self.n);
        for h_exp in 0..=k.min(self.n) {
            let base_deg = k - h_exp;
            if base_deg <= 2 {
                out.parts[h_exp as usize] = self.parts[h_exp as usize].degree_part(base_deg);
            }
        }
        out
    }

    /// Rewrite every `h^m` with `m >= n-1` through the fiber relation
    /// `h^m = h^(m-1) e1 - h^(m-2) e2`, truncating as usual. Idempotent.
    pub fn reduce_h(&self) -> BundleClass {
        let n = self.n as usize;
        let mut parts = self.parts.clone();
        let e1 = BaseClass::generator(BaseMonomial::E1);
        let e2 = BaseClass::generator(BaseMonomial::E2);
        for m in [n, n - 1] {
            if parts[m].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut parts[m], BaseClass::zero());
            let down1 = (&c * &e1).truncated(max_base_degree(n, m - 1));
            parts[m - 1] = &parts[m - 1] + &down1;
            let down2 = (&c * &e2).truncated(max_base_degree(n, m - 2));
            parts[m - 2] = &parts[m - 2] - &down2;
        }
        BundleClass {
            n: self.n,
            parts,
            reduced: true,
        }
    }
}

fn max_base_degree(n: usize, h_exp: usize) -> u32 {
    (n - h_exp).min(2) as u32
}

impl Add for &BundleClass {
    type Output = BundleClass;
    fn add(self, rhs: &BundleClass) -> BundleClass {
        assert_eq!(self.n, rhs.n, "mismatched bundle dimensions");
        BundleClass {
            n: self.n,
            parts: self
                .parts
                .iter()
                .zip(&rhs.parts)
                .map(|(a, b)| a + b)
                .collect(),
            reduced: false,
        }
    }
}

impl Sub for &BundleClass {
    type Output = BundleClass;
    fn sub(self, rhs: &BundleClass) -> BundleClass {
        assert_eq!(self.n, rhs.n, "mismatched bundle dimensions");
        BundleClass {
            n: self.n,
            parts: self
                .parts
                .iter()
                .zip(&rhs.parts)
                .map(|(a, b)| a - b)
                .collect(),
            reduced: false,
        }
    }
}

impl Mul for &BundleClass {
    type Output = BundleClass;
    fn mul(self, rhs: &BundleClass) -> BundleClass {
        assert_eq!(self.n, rhs.n, "mismatched bundle dimensions");
        let n = self.n as usize;
        let mut parts = vec![BaseClass::zero(); n + 1];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.parts.iter().enumerate() {
                if i + j > n || b.is_zero() {
                    continue;
                }
                let prod = (a * b).truncated(max_base_degree(n, i + j));
                if !prod.is_zero() {
                    parts[i + j] = &parts[i + j] + &prod;
                }
            }
        }
        BundleClass {
            n: self.n,
            parts,
            reduced: false,
        }
    }
}

impl Neg for &BundleClass {
    type Output = BundleClass;
    fn neg(self) -> BundleClass {
        BundleClass {
            n: self.n,
            parts: self.parts.iter().map(|p| -p).collect(),
            reduced: self.reduced,
        }
    }
}

impl Add for BundleClass {
    type Output = BundleClass;
    fn add(self, rhs: BundleClass) -> BundleClass {
        &self + &rhs
    }
}

impl Sub for BundleClass {
    type Output = BundleClass;
    fn sub(self, rhs: BundleClass) -> BundleClass {
        &self - &rhs
    }
}

impl Mul for BundleClass {
    type Output = BundleClass;
    fn mul(self, rhs: BundleClass) -> BundleClass {
        &self * &rhs
    }
}

impl Neg for BundleClass {
    type Output = BundleClass;
    fn neg(self) -> BundleClass {
        -&self
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, part) in self.parts.iter().enumerate() {
            for m in BASE_MONOMIALS {
                let c = part.coeff(m);
                if c.is_zero() {
                    continue;
                }
                let trivial_mono = m == BaseMonomial::One;
                let symbol = if k == 0 {
                    m.symbol().to_string()
                } else {
                    let h = if k == 1 { "h".to_string() } else { format!("h^{k}") };
                    if trivial_mono {
                        h
                    } else {
                        format!("{h} {}", m.symbol())
                    }
                };
                let (negative, body) =
                    super::base::term_text(c, &symbol, trivial_mono && k == 0);
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
        }
        Ok(())
    }
}
