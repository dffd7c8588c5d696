//! Special sequences mod prime powers: Euler numbers and polynomials,
//! harmonic numbers, Fermat quotients and the Jacobi symbol.

use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::modring::{inv_many, Residue};

/// Exact Euler numbers E_0..=E_n via the defining recurrence
/// `E_0 = 1, E_n = -sum_{k=1}^{n/2} binom(n, 2k) E_{n-2k}` (odd-index
/// values vanish). Values grow superexponentially, so they are computed
/// once and cached process-wide.
fn with_exact_euler<R>(n_max: usize, f: impl FnOnce(&[BigInt]) -> R) -> R {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigInt::from(1)]));
    let mut values = cache.lock().unwrap();
    while values.len() <= n_max {
        let n = values.len();
        if n % 2 == 1 {
            values.push(BigInt::zero());
            continue;
        }
        // binom(n, 2k) maintained multiplicatively along the row
        let mut binom = BigInt::from(1);
        let mut sum = BigInt::zero();
        for k in 1..=n / 2 {
            let t = (2 * k - 1) as u64;
            binom = binom * BigInt::from((n as u64 - t + 1) * (n as u64 - t))
                / BigInt::from(t * (t + 1));
            sum += &binom * &values[n - 2 * k];
        }
        values.push(-sum);
    }
    f(&values)
}

/// Exact Euler numbers `E_0..=E_{n_max}` as big integers.
pub fn euler_numbers_exact(n_max: usize) -> Vec<BigInt> {
    with_exact_euler(n_max, |v| v[..=n_max].to_vec())
}

/// Euler numbers reduced modulo `m`.
pub struct EulerTable {
    modulus: u64,
    values: Vec<u64>,
}

impl EulerTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, n: usize) -> Residue {
        Residue::new(self.values[n], self.modulus)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn euler_numbers(n_max: usize, modulus: u64) -> EulerTable {
    let m = BigInt::from(modulus);
    let values = with_exact_euler(n_max, |v| {
        v[..=n_max]
            .iter()
            .map(|e| e.mod_floor(&m).to_u64().unwrap())
            .collect()
    });
    EulerTable { modulus, values }
}

/// `E_n mod m` for a single index.
pub fn euler_number_mod(n: usize, modulus: u64) -> Residue {
    let m = BigInt::from(modulus);
    let v = with_exact_euler(n, |v| v[n].mod_floor(&m).to_u64().unwrap());
    Residue::new(v, modulus)
}

/// Euler polynomial `E_n(x) mod p` through the expansion
/// `E_n(x) = sum_k binom(n,k) (E_k / 2^k) (x - 1/2)^{n-k}`. Needs `n < p`
/// so the binomial coefficients reduce safely.
pub fn euler_polynomial_eval(n: usize, x: Residue, p: u64) -> Residue {
    assert_eq!(x.modulus(), p);
    assert!((n as u64) < p, "degree must be below p");
    let euler = euler_numbers(n, p);
    let half = Residue::new(2, p).inv();
    let y = x.sub(half);

    let mut acc = Residue::new(0, p);
    let mut binom = Residue::new(1, p);
    let mut half_pow = Residue::new(1, p);
    // y^{n-k} built from a power table
    let mut y_pows = vec![Residue::new(1, p); n + 1];
    for i in 1..=n {
        y_pows[i] = y_pows[i - 1].mul(y);
    }
    for k in 0..=n {
        let term = binom.mul(euler.get(k)).mul(half_pow).mul(y_pows[n - k]);
        acc = acc.add(term);
        if k < n {
            let num = Residue::new((n - k) as u64, p);
            let den = Residue::new((k + 1) as u64, p).inv();
            binom = binom.mul(num).mul(den);
            half_pow = half_pow.mul(half);
        }
    }
    acc
}

/// Harmonic number `H_n = sum_{0<k<=n} 1/k` mod `m`. Every `k <= n` must be
/// invertible mod `m`.
pub fn harmonic(n: u64, modulus: u64) -> Residue {
    let mut units: Vec<u64> = (1..=n).collect();
    inv_many(&mut units, modulus);
    let mut acc = Residue::new(0, modulus);
    for u in units {
        acc = acc.add(Residue::new(u, modulus));
    }
    acc
}

/// Fermat quotient `q_p(a) = (a^{p-1} - 1)/p mod p`.
pub fn fermat_quotient(a: i64, p: u64) -> Residue {
    assert!(a % p as i64 != 0, "p divides a");
    let p2 = p * p;
    let base = Residue::from_i64(a, p2);
    let x = base.pow(p - 1).value();
    // x ≡ 1 (mod p) by Fermat, so the division is exact
    debug_assert_eq!(x % p, 1);
    Residue::new((x - 1) / p, p)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs odd n");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn euler_numbers_small() {
        let exact = euler_numbers_exact(10);
        assert_eq!(exact[0], BigInt::from(1));
        assert_eq!(exact[1], BigInt::from(0));
        assert_eq!(exact[2], BigInt::from(-1));
        assert_eq!(exact[4], BigInt::from(5));
        assert_eq!(exact[6], BigInt::from(-61));
        assert_eq!(exact[8], BigInt::from(1385));
        assert_eq!(exact[10], BigInt::from(-50521));

        let t = euler_numbers(6, 125);
        assert_eq!(t.get(2), Residue::from_i64(-1, 125));
        assert_eq!(t.get(6), Residue::from_i64(-61, 125));
        for n in [1, 3, 5] {
            assert!(t.get(n).is_zero());
        }
    }

    /// Independent rational oracle: E_n is the unique degree-n polynomial
    /// with E_n(x) + E_n(x+1) = 2 x^n; solve the triangular system for its
    /// coefficients.
    fn euler_poly_coeffs(n: usize) -> Vec<BigRational> {
        let binom = |i: usize, j: usize| -> BigInt {
            let mut b = BigInt::from(1);
            for t in 0..j {
                b = b * BigInt::from((i - t) as u64) / BigInt::from((t + 1) as u64);
            }
            b
        };
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::from(BigInt::from(1));
        for j in (0..n).rev() {
            let mut s = BigRational::zero();
            for i in j + 1..=n {
                s += &c[i] * BigRational::from(binom(i, j));
            }
            c[j] = -s / BigRational::from(BigInt::from(2));
        }
        c
    }

    fn eval_rational_mod(coeffs: &[BigRational], x: &BigRational, p: u64) -> Residue {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let pb = BigInt::from(p);
        let inv = crate::modring::big_mod_inv(acc.denom(), &pb);
        let v = (acc.numer().mod_floor(&pb) * inv).mod_floor(&pb);
        Residue::new(v.to_u64().unwrap(), p)
    }

    #[test]
    fn euler_polynomial_values() {
        // E_1(x) = x - 1/2, so E_1(0) = -1/2 ≡ 3 (mod 7)
        assert_eq!(euler_polynomial_eval(1, Residue::new(0, 7), 7).value(), 3);
        // E_2(x) = x^2 - x, so E_2(1) = 0
        assert_eq!(euler_polynomial_eval(2, Residue::new(1, 7), 7).value(), 0);
        // only the k = n term survives at x = 1/2
        for (n, p) in [(4usize, 13u64), (6, 11), (8, 17)] {
            let half = Residue::new(2, p).inv();
            let lhs = euler_polynomial_eval(n, half, p);
            let rhs = euler_number_mod(n, p).mul(Residue::new(2, p).pow(n as u64).inv());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_polynomial_matches_rational_oracle() {
        for n in 0..=10usize {
            let coeffs = euler_poly_coeffs(n);
            for p in [11u64, 13, 17, 23, 37, 47] {
                if n as u64 >= p {
                    continue;
                }
                for x in 0..p.min(8) {
                    let xr = BigRational::from(BigInt::from(x));
                    let want = eval_rational_mod(&coeffs, &xr, p);
                    let got = euler_polynomial_eval(n, Residue::new(x, p), p);
                    assert_eq!(got, want, "n={} p={} x={}", n, p, x);
                }
            }
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(3, 49).value(), 10);
        assert_eq!(harmonic(0, 49).value(), 0);
        for p in [5u64, 7, 11, 13, 101] {
            assert!(harmonic(p - 1, p).is_zero(), "Wolstenholme pairing at p={}", p);
        }
    }

    #[test]
    fn harmonic_reflection() {
        // H_{p-k} ≡ H_{k-1} (mod p)
        for p in crate::primes::primes_in(5, 200) {
            for k in 1..p {
                assert_eq!(harmonic(p - k, p), harmonic(k - 1, p));
            }
        }
    }

    #[test]
    fn lehmer_congruences() {
        for p in crate::primes::primes_in(5, 300) {
            let q2 = fermat_quotient(2, p);
            let q3 = fermat_quotient(3, p);
            let minus2 = Residue::from_i64(-2, p);
            let minus3 = Residue::from_i64(-3, p);
            let minus32 = crate::modring::rational_residue(-3, 2, p);
            assert_eq!(harmonic(p / 2, p), minus2.mul(q2));
            assert_eq!(harmonic(p / 4, p), minus3.mul(q2));
            assert_eq!(harmonic(p / 3, p), minus32.mul(q3));
            assert_eq!(harmonic(p / 6, p), minus2.mul(q2).add(minus32.mul(q3)));
        }
    }

    #[test]
    fn harmonic_two_thirds_step() {
        for p in crate::primes::primes_in(5, 300) {
            assert_eq!(harmonic(2 * p / 3, p), harmonic(p / 3, p));
        }
    }

    #[test]
    fn fermat_quotients() {
        assert_eq!(fermat_quotient(2, 7).value(), 2);
        assert_eq!(fermat_quotient(3, 5).value(), 1);
        for p in [5u64, 7, 11, 97] {
            assert_eq!(fermat_quotient(1, p).value(), 0);
        }
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(-1, 5), 1);
        assert_eq!(jacobi(5, 3), -1);
        assert_eq!(jacobi(-1, 343), -1);
        assert_eq!(jacobi(0, 9), 0);
        assert_eq!(jacobi(2, 15), 1);
    }

    proptest! {
        #[test]
        fn jacobi_multiplicative(a in -200i64..200, b in -200i64..200,
                                 m in 0u64..50, n in 0u64..50) {
            let (m, n) = (2 * m + 1, 2 * n + 1);
            prop_assert_eq!(jacobi(a * b, n), jacobi(a, n) * jacobi(b, n));
            prop_assert_eq!(jacobi(a, m * n), jacobi(a, m) * jacobi(a, n));
        }
    }
}
