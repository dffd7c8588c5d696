//! Exact arbitrary-precision rational verification of the non-congruence
//! identities: the reciprocal-binomial identity, the fractional-binomial
//! product identities, and the S_n/T_n polynomial recurrences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::sums::Family;

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// `binom(a, k)` for rational `a` by the falling-factorial product
/// `prod_{j<k} (a - j) / k!`.
pub fn rational_binomial(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..k {
        acc *= a - rat(j as i64);
        acc /= rat(j as i64 + 1);
    }
    acc
}

/// `binom(n, k)` as an exact integer-valued rational; zero outside `[0, n]`.
pub fn integer_binomial(n: i64, k: u64) -> BigRational {
    rational_binomial(&rat(n), k)
}

/// Checks `sum_{k=0}^{n-1} 1/binom(n-1,k)^2
///   = (2n^2/(n+1)) sum_{k=1}^{n} 1/(k binom(2n+1-k, n-k))`
/// exactly, returning both sides.
pub fn check_swz_identity(n: u64) -> (bool, BigRational, BigRational) {
    assert!(n >= 1);
    let mut lhs = BigRational::zero();
    for k in 0..n {
        let b = integer_binomial(n as i64 - 1, k);
        lhs += (&b * &b).recip();
    }
    let mut rhs = BigRational::zero();
    for k in 1..=n {
        let b = integer_binomial((2 * n + 1 - k) as i64, n - k);
        rhs += (rat(k as i64) * b).recip();
    }
    rhs *= rat(2 * n as i64 * n as i64) / rat(n as i64 + 1);
    (lhs == rhs, lhs, rhs)
}

/// The fractional arguments whose binomial product generates a family:
/// `binom(a,k) binom(-1-a,k)` equals the family summand.
pub fn family_fractional_args(family: Family) -> (BigRational, BigRational) {
    let (n1, n2, d) = match family {
        Family::CentralSquared => (-1, -1, 2),
        Family::TwoThree => (-1, -2, 3),
        Family::FourTwo => (-1, -3, 4),
        Family::SixThree => (-1, -5, 6),
    };
    (
        BigRational::new(BigInt::from(n1), BigInt::from(d)),
        BigRational::new(BigInt::from(n2), BigInt::from(d)),
    )
}

/// Exact rational value of one family summand at index `k` (no weight).
pub fn family_term_exact(family: Family, k: u64) -> BigRational {
    let [(m1, r1), (m2, r2)] = family.binomial_args(k);
    let num = integer_binomial(m1 as i64, r1) * integer_binomial(m2 as i64, r2);
    num / BigRational::from(BigInt::from(family.base())).pow(k as i32)
}

/// Verifies `binom(a,k) binom(-1-a,k)` equals the family summand as exact
/// rationals for every `k <= k_max`.
pub fn check_fractional_binomial(family: Family, k_max: u64) -> bool {
    let (a, b) = family_fractional_args(family);
    debug_assert_eq!(&b, &(-rat(1) - &a));
    (0..=k_max).all(|k| {
        rational_binomial(&a, k) * rational_binomial(&b, k) == family_term_exact(family, k)
    })
}

/// Dense polynomial with exact rational coefficients, degree-indexed, no
/// trailing zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = RatPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `c0 + c1 x` from integer coefficients.
    pub fn linear(c0: i64, c1: i64) -> Self {
        let mut p = RatPoly {
            coeffs: vec![rat(c0), rat(c1)],
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = RatPoly { coeffs };
        p.normalize();
        p
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        let mut p = RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.normalize();
        p
    }

    /// Composition with the shift `x -> x + c`.
    pub fn shift(&self, c: i64) -> RatPoly {
        let mut acc = RatPoly::zero();
        // Horner in the shifted variable
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&RatPoly::linear(c, 1));
            acc = acc.add(&RatPoly::constant(a.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }
}

/// `binom(x + c, k)` as a polynomial in `x` for integer shift `c`.
pub fn binomial_poly(c: i64, k: u64) -> RatPoly {
    let mut acc = RatPoly::constant(BigRational::one());
    for j in 0..k {
        acc = acc.mul(&RatPoly::linear(c - j as i64, 1));
        acc = acc.scale(&rat(j as i64 + 1).recip());
    }
    acc
}

/// `binom(e1 x + c1, k) binom(e2 x + c2, k)` where `e` is 1 or -1.
fn binomial_pair_poly(sign1: i64, c1: i64, sign2: i64, c2: i64, k: u64) -> RatPoly {
    let factor = |sign: i64, c: i64, k: u64| {
        // binom(sign x + c, k) = prod_{j<k} (sign x + c - j)/(j+1)
        let mut acc = RatPoly::constant(BigRational::one());
        for j in 0..k {
            acc = acc.mul(&RatPoly::linear(c - j as i64, sign));
            acc = acc.scale(&rat(j as i64 + 1).recip());
        }
        acc
    };
    factor(sign1, c1, k).mul(&factor(sign2, c2, k))
}

/// `S_n(x) = sum_{k<=n} binom(x,k) binom(-1-x,k)` (degree 2n) and
/// `T_n(x) = sum_{k<=n} binom(x,k) binom(-1-x,k) (1+2x)/(1+2k)`
/// (degree 2n+1), as exact polynomials.
pub fn build_s_t(n: u64) -> (RatPoly, RatPoly) {
    let mut s = RatPoly::zero();
    let mut t = RatPoly::zero();
    let one_plus_2x = RatPoly::linear(1, 2);
    for k in 0..=n {
        let prod = binomial_pair_poly(1, 0, -1, -1, k);
        s = s.add(&prod);
        let weighted = prod
            .mul(&one_plus_2x)
            .scale(&rat(1 + 2 * k as i64).recip());
        t = t.add(&weighted);
    }
    (s, t)
}

/// Verifies both recurrences coefficientwise:
/// `S_n(x) + S_n(x+1) = 2 binom(x,n) binom(-2-x,n)` and
/// `T_n(x) - T_n(x-1) = 2 binom(x-1,n) binom(-x-1,n)`.
pub fn check_recurrences(n: u64) -> bool {
    let (s, t) = build_s_t(n);
    let two = rat(2);

    let s_lhs = s.add(&s.shift(1));
    let s_rhs = binomial_pair_poly(1, 0, -1, -2, n).scale(&two);
    if s_lhs != s_rhs {
        return false;
    }

    let t_lhs = t.sub(&t.shift(-1));
    let t_rhs = binomial_pair_poly(1, -1, -1, -1, n).scale(&two);
    t_lhs == t_rhs
}
