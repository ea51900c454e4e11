//! Exact symbolic engine for the truncated cohomology ring of a projective
//! bundle over a surface.
//!
//! The bundle has dimension `n` and fiber dimension `n - 3 + 1`; its rank-
//! `(n-1)` defining bundle has Chern classes `e1`, `e2` (nothing higher on
//! a surface) and the surface tangent bundle has classes `g1`, `g2`. The
//! central computation is the total Chern class of the normal bundle of the
//! minimally embedded scroll,
//!
//! ```text
//! c(N) = (1 + h)^(2n) * s(E(-H)) * s(Omega_S),
//! ```
//!
//! whose degree `n-1` and `n` components produce the relations extracted by
//! the `relations` module.

mod base;
mod bundle;
mod scalar;

pub use base::{BaseClass, BaseMonomial, BASE_MONOMIALS};
pub use bundle::BundleClass;
pub use scalar::{Rational, ScalarPoly};

use crate::arith::{binomial, gen_binomial};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Segre classes `s0, s1, s2` of a bundle with Chern classes `c1, c2` on a
/// surface: the inverse of the total Chern class of the dual.
///
/// The result is checked on the spot by multiplying back against
/// `1 - c1 + c2` and demanding the truncated identity.
pub fn segre_from_chern(c1: &BaseClass, c2: &BaseClass) -> [BaseClass; 3] {
    assert!(c1.is_pure_degree(1), "c1 must be a pure degree-1 class");
    assert!(c2.is_pure_degree(2), "c2 must be a pure degree-2 class");
    let s0 = BaseClass::one();
    let s1 = c1.clone();
    let s2 = &(c1 * c1) - c2;
    let dual_total = &(&BaseClass::one() - c1) + c2;
    let total = &(&s0 + &s1) + &s2;
    assert_eq!(
        &total * &dual_total,
        BaseClass::one(),
        "Segre inversion check failed"
    );
    [s0, s1, s2]
}

/// Segre class of a twist: `s_i(E(L)) = sum_j C(r-1+i, j) s_(i-j)(E) l^j`
/// for a rank-`r` bundle and a line bundle with first Chern class `l`.
///
/// `segre` lists `s_0(E), s_1(E), ...`; entries past the end are zero.
pub fn segre_of_twist(i: u32, r: u32, segre: &[BundleClass], ell: &BundleClass) -> BundleClass {
    assert!(r >= 1, "twist formula needs a bundle of positive rank");
    let n = ell.n();
    let mut acc = BundleClass::zero(n);
    let mut ell_pow = BundleClass::one(n);
    for j in 0..=i {
        let idx = (i - j) as usize;
        if idx < segre.len() && !segre[idx].is_zero() {
            let coeff = BigRational::from_integer(binomial(u64::from(r - 1 + i), u64::from(j)));
            acc = &acc + &(&segre[idx] * &ell_pow).scale_rat(&coeff);
        }
        if j < i {
            ell_pow = &ell_pow * ell;
        }
    }
    acc
}

/// `(1 + h)^(2n)` truncated at total degree `n`: the restricted total Chern
/// class of the ambient tangent bundle.
pub fn ambient_tangent_class(n: u32) -> BundleClass {
    let mut acc = BundleClass::zero(n);
    for k in 0..=n {
        let coeff = BigRational::from_integer(binomial(u64::from(2 * n), u64::from(k)));
        acc = &acc + &BundleClass::h_pow(n, k).scale_rat(&coeff);
    }
    acc
}

/// Total Segre class of `E(-H)` pulled back to the bundle, truncated at
/// total degree `n`.
pub fn twisted_segre_class(n: u32) -> BundleClass {
    assert!(n >= 3);
    let e1 = BaseClass::generator(BaseMonomial::E1);
    let e2 = BaseClass::generator(BaseMonomial::E2);
    let segre_base = segre_from_chern(&e1, &e2);
    let segre: Vec<BundleClass> = segre_base
        .into_iter()
        .map(|s| BundleClass::from_base(n, s))
        .collect();
    let neg_h = -&BundleClass::h_pow(n, 1);
    let mut acc = BundleClass::zero(n);
    for i in 0..=n {
        acc = &acc + &segre_of_twist(i, n - 1, &segre, &neg_h);
    }
    acc
}

/// Total Segre class of the surface cotangent bundle,
/// `1 - g1 + (g1^2 - g2)`, pulled back to the bundle.
pub fn cotangent_segre_class(n: u32) -> BundleClass {
    let g1 = BaseClass::generator(BaseMonomial::Gamma1);
    let g1g1 = BaseClass::generator(BaseMonomial::Gamma1Gamma1);
    let g2 = BaseClass::generator(BaseMonomial::Gamma2);
    BundleClass::from_base(n, &(&BaseClass::one() - &g1) + &(&g1g1 - &g2))
}

/// Total Chern class of the normal bundle of the embedded scroll,
/// unreduced. Its degree-0 part is 1; its degree `n-1` and `n` parts carry
/// the numerical constraints on `e1, e2, g1, g2`.
pub fn normal_total_class(n: u32) -> BundleClass {
    assert!(n >= 3, "the scroll must have dimension at least 3");
    let product = &ambient_tangent_class(n) * &twisted_segre_class(n);
    &product * &cotangent_segre_class(n)
}

/// The alternating convolution identity behind the closed form of the
/// twisted Segre expansion:
/// `sum_(a+b=c) C(m-1+a, a) (-1)^a C(p, b) = C(p-m, c)`.
pub fn check_binomial_identity(m: u64, p: u64, c: u64) -> bool {
    let mut lhs = BigInt::from(0);
    for a in 0..=c {
        let b = c - a;
        let term = gen_binomial(&BigInt::from(m - 1 + a), a) * binomial(p, b);
        if a % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = gen_binomial(&(BigInt::from(p) - BigInt::from(m)), c);
    lhs == rhs
}
