//! Residue arithmetic modulo a fixed positive modulus, typically a prime
//! power `p^K` below `2^63`. Products go through `u128` so no modulus in
//! that range can overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An integer class modulo an explicit modulus.
///
/// The invariant `0 <= value < modulus` holds after every operation.
/// Binary operations on residues with different moduli are usage errors
/// and panic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    /// Builds a residue from a possibly negative integer.
    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Residue::new(v as u64, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check_same(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(self, other: Residue) -> Residue {
        self.check_same(other);
        let s = self.value as u128 + other.value as u128;
        Residue::new((s % self.modulus as u128) as u64, self.modulus)
    }

    pub fn sub(self, other: Residue) -> Residue {
        self.check_same(other);
        let m = self.modulus as u128;
        let s = (self.value as u128 + m - other.value as u128) % m;
        Residue::new(s as u64, self.modulus)
    }

    pub fn mul(self, other: Residue) -> Residue {
        self.check_same(other);
        let s = self.value as u128 * other.value as u128 % self.modulus as u128;
        Residue::new(s as u64, self.modulus)
    }

    pub fn neg(self) -> Residue {
        Residue::new(self.modulus - self.value % self.modulus, self.modulus)
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue::new(1 % self.modulus, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, or `None` when `gcd(value, modulus) > 1`.
    pub fn checked_inv(self) -> Option<Residue> {
        let (g, x) = ext_gcd(self.value as i128, self.modulus as i128);
        if g != 1 {
            return None;
        }
        let m = self.modulus as i128;
        Some(Residue::new(((x % m + m) % m) as u64, self.modulus))
    }

    /// Multiplicative inverse. A non-invertible input means a p-divisible
    /// denominator reached the residue layer, which is a logic error
    /// upstream, so this panics.
    pub fn inv(self) -> Residue {
        self.checked_inv().unwrap_or_else(|| {
            panic!(
                "{} is not invertible mod {}: p-divisible denominator reached the residue layer",
                self.value, self.modulus
            )
        })
    }
}

/// Extended Euclid: returns `(gcd(a, m), x)` with `a*x ≡ gcd (mod m)`.
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, m);
    let (mut x0, mut x1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    (r0, x0)
}

pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    Residue::new(base, modulus).pow(exp).value()
}

/// `num * den^{-1} mod modulus`; negative inputs are normalized into
/// `[0, modulus)`.
pub fn rational_residue(num: i64, den: i64, modulus: u64) -> Residue {
    let d = Residue::from_i64(den, modulus);
    Residue::from_i64(num, modulus).mul(d.inv())
}

/// Batch inversion: inverts every element of `units` mod `modulus` with a
/// single extended-Euclid call (Montgomery's trick). All inputs must be
/// invertible.
pub fn inv_many(units: &mut [u64], modulus: u64) {
    let m = modulus as u128;
    let n = units.len();
    if n == 0 {
        return;
    }
    let mut prefix = vec![0u64; n];
    let mut acc = 1u64;
    for (i, &u) in units.iter().enumerate() {
        prefix[i] = acc;
        acc = (acc as u128 * u as u128 % m) as u64;
    }
    let mut inv_acc = Residue::new(acc, modulus).inv().value();
    for i in (0..n).rev() {
        let u = units[i];
        units[i] = (inv_acc as u128 * prefix[i] as u128 % m) as u64;
        inv_acc = (inv_acc as u128 * u as u128 % m) as u64;
    }
}

/// The least nonnegative residue `<a>_p` of a p-integral rational, together
/// with `t = (a - r)/p` so that `r + p*t = a` exactly.
pub fn least_nonneg_residue(a: &BigRational, p: u64) -> (u64, BigRational) {
    let pb = BigInt::from(p);
    let den = a.denom();
    assert!(
        !den.is_multiple_of(&pb),
        "p divides the denominator of {}",
        a
    );
    let r = if a.is_zero() {
        0u64
    } else {
        let dinv = big_mod_inv(den, &pb);
        let num_mod = a.numer().mod_floor(&pb);
        (num_mod * dinv).mod_floor(&pb).to_u64().unwrap()
    };
    let t = (a - BigRational::from(BigInt::from(r))) / BigRational::from(BigInt::from(p));
    (r, t)
}

/// Inverse of `a` modulo `m` over big integers. Panics when not coprime.
pub fn big_mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "{} is not invertible mod {}", a, m);
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn res(v: u64, m: u64) -> Residue {
        Residue::new(v, m)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(res(3, 7).add(res(5, 7)), res(1, 7));
        assert_eq!(res(94, 125).mul(res(4, 125)), res(1, 125));
        assert_eq!(res(0, 25).sub(res(11, 25)), res(14, 25));
    }

    #[test]
    #[should_panic(expected = "modulus mismatch")]
    fn mixed_moduli_panic() {
        let _ = res(1, 7).add(res(1, 11));
    }

    #[test]
    fn inverses() {
        assert_eq!(res(3, 125).inv(), res(42, 125));
        assert_eq!(res(16, 125).inv(), res(86, 125));
        assert_eq!(res(1, 997).inv(), res(1, 997));
        assert!(res(5, 125).checked_inv().is_none());
    }

    #[test]
    fn rational_residues() {
        assert_eq!(rational_residue(1, 4, 125), res(94, 125));
        assert_eq!(rational_residue(9, 64, 125), res(6, 125));
        assert_eq!(rational_residue(0, 7, 125), res(0, 125));
        // negative inputs normalize
        assert_eq!(rational_residue(-1, 1, 25), res(24, 25));
    }

    #[test]
    fn least_nonneg() {
        let a = BigRational::new(BigInt::from(-1), BigInt::from(3));
        let (r, t) = least_nonneg_residue(&a, 7);
        assert_eq!(r, 2);
        assert_eq!(t, BigRational::new(BigInt::from(-1), BigInt::from(3)));

        let (r, t) = least_nonneg_residue(&a, 5);
        assert_eq!(r, 3);
        assert_eq!(t, BigRational::new(BigInt::from(-2), BigInt::from(3)));

        let (r, t) = least_nonneg_residue(&BigRational::zero(), 11);
        assert_eq!(r, 0);
        assert!(t.is_zero());
    }

    #[test]
    fn batch_inversion() {
        let m = 343u64;
        let mut xs = vec![1, 2, 3, 5, 100, 342];
        let expected: Vec<u64> = xs.iter().map(|&x| res(x, m).inv().value()).collect();
        inv_many(&mut xs, m);
        assert_eq!(xs, expected);
    }

    proptest! {
        #[test]
        fn inv_is_involutive(v in 1u64..3125, ) {
            let m = 3125u64; // 5^5
            if v % 5 != 0 {
                let a = res(v, m);
                prop_assert_eq!(a.inv().inv(), a);
                prop_assert_eq!(a.mul(a.inv()), res(1, m));
            }
        }

        #[test]
        fn rational_residue_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            let m = 2401u64; // 7^4
            if d % 7 != 0 {
                let r = rational_residue(n, d, m);
                prop_assert_eq!(r.mul(Residue::from_i64(d, m)), Residue::from_i64(n, m));
            }
        }

        #[test]
        fn least_nonneg_reconstructs(n in -500i64..500, d in 1i64..500) {
            let p = 13u64;
            if d % 13 != 0 {
                let a = BigRational::new(BigInt::from(n), BigInt::from(d));
                let (r, t) = least_nonneg_residue(&a, p);
                prop_assert!(r < p);
                let back = BigRational::from(BigInt::from(r))
                    + BigRational::from(BigInt::from(p)) * t;
                prop_assert_eq!(back, a);
            }
        }
    }
}
