//! Valuation-tracked p-adic arithmetic: factorials split as
//! `n! = p^ord * unit` with the unit kept mod `p^K`, binomials built from
//! that decomposition, Kummer carry counts and Lucas digit products.

use crate::modring::Residue;

/// A nonzero p-adic number known to finite precision (`unit` mod `p^prec`),
/// or the distinguished exact zero. Exact zero is its own variant rather
/// than a sentinel valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    prec: u32,
    pk: u64,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    Unit { v: i64, u: u64 },
}

fn pk_of(p: u64, prec: u32) -> u64 {
    let mut m = 1u64;
    for _ in 0..prec {
        m = m.checked_mul(p).expect("p^K overflows u64");
    }
    m
}

impl Padic {
    pub fn zero(p: u64, prec: u32) -> Self {
        Padic {
            p,
            prec,
            pk: pk_of(p, prec),
            repr: Repr::Zero,
        }
    }

    /// `p^v * u` with `p` not dividing `u`.
    pub fn new(v: i64, u: u64, p: u64, prec: u32) -> Self {
        let pk = pk_of(p, prec);
        let u = u % pk;
        assert!(u % p != 0, "unit {} is divisible by p = {}", u, p);
        Padic {
            p,
            prec,
            pk,
            repr: Repr::Unit { v, u },
        }
    }

    /// A p-adic unit (valuation 0).
    pub fn unit(u: u64, p: u64, prec: u32) -> Self {
        Padic::new(0, u, p, prec)
    }

    /// Decomposes an ordinary integer.
    pub fn from_integer(n: u64, p: u64, prec: u32) -> Self {
        if n == 0 {
            return Padic::zero(p, prec);
        }
        let (v, rest) = strip_p(n, p);
        Padic::new(v as i64, rest, p, prec)
    }

    pub fn is_zero(self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// Valuation of a nonzero value; panics on exact zero.
    pub fn valuation(self) -> i64 {
        match self.repr {
            Repr::Zero => panic!("valuation of exact zero"),
            Repr::Unit { v, .. } => v,
        }
    }

    /// The unit part mod `p^prec`; panics on exact zero.
    pub fn unit_part(self) -> u64 {
        match self.repr {
            Repr::Zero => panic!("unit part of exact zero"),
            Repr::Unit { u, .. } => u,
        }
    }

    pub fn prime(self) -> u64 {
        self.p
    }

    pub fn precision(self) -> u32 {
        self.prec
    }

    fn check_same(self, other: Padic) {
        assert!(
            self.p == other.p && self.prec == other.prec,
            "p-adic context mismatch: ({}, {}) vs ({}, {})",
            self.p,
            self.prec,
            other.p,
            other.prec
        );
    }

    pub fn mul(self, other: Padic) -> Padic {
        self.check_same(other);
        match (self.repr, other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Padic::zero(self.p, self.prec),
            (Repr::Unit { v: v1, u: u1 }, Repr::Unit { v: v2, u: u2 }) => Padic {
                repr: Repr::Unit {
                    v: v1 + v2,
                    u: (u1 as u128 * u2 as u128 % self.pk as u128) as u64,
                },
                ..self
            },
        }
    }

    pub fn div(self, other: Padic) -> Padic {
        self.check_same(other);
        let Repr::Unit { v: v2, u: u2 } = other.repr else {
            panic!("p-adic division by exact zero")
        };
        match self.repr {
            Repr::Zero => Padic::zero(self.p, self.prec),
            Repr::Unit { v: v1, u: u1 } => {
                let inv = Residue::new(u2, self.pk).inv().value();
                Padic {
                    repr: Repr::Unit {
                        v: v1 - v2,
                        u: (u1 as u128 * inv as u128 % self.pk as u128) as u64,
                    },
                    ..self
                }
            }
        }
    }

    /// Reduces to a residue mod `p^k_target`. Defined only for valuation
    /// `>= 0` (a genuinely non-integral value here is an upstream logic
    /// error) with enough known precision.
    pub fn to_residue(self, k_target: u32) -> Residue {
        let m = pk_of(self.p, k_target);
        match self.repr {
            Repr::Zero => Residue::new(0, m),
            Repr::Unit { v, u } => {
                assert!(v >= 0, "to_residue on negative valuation {}", v);
                if v as u32 >= k_target {
                    return Residue::new(0, m);
                }
                assert!(
                    v as u32 + self.prec >= k_target,
                    "insufficient precision: v = {}, prec = {}, target = {}",
                    v,
                    self.prec,
                    k_target
                );
                let pv = pk_of(self.p, v as u32);
                Residue::new((pv as u128 * u as u128 % m as u128) as u64, m)
            }
        }
    }
}

/// Removes all factors of `p`, returning `(ord_p(n), n / p^ord)`.
pub fn strip_p(mut n: u64, p: u64) -> (u32, u64) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Legendre's formula: `ord_p(n!) = sum_j floor(n / p^j)`.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v
}

pub fn binomial_valuation(n: u64, r: u64, p: u64) -> u64 {
    assert!(r <= n);
    factorial_valuation(n, p) - factorial_valuation(r, p) - factorial_valuation(n - r, p)
}

/// `n! = p^v * u` with `u` mod `p^prec`, computed by the level recursion
/// `unit(n) = prod_{i<=n, p∤i} i * unit(floor(n/p))` in O(n) time and O(1)
/// space. For many factorials against one `(p, prec)` use
/// [`FactorialTable`] instead.
pub fn factorial_decomp(n: u64, p: u64, prec: u32) -> Padic {
    let pk = pk_of(p, prec);
    let mut u: u64 = 1;
    let mut m = n;
    while m > 0 {
        let mut block: u128 = 1;
        for i in 1..=m {
            if i % p != 0 {
                block = block * i as u128 % pk as u128;
                // keep the loop in u128 only at the multiply
            }
        }
        u = (u as u128 * block % pk as u128) as u64;
        m /= p;
    }
    Padic::new(factorial_valuation(n, p) as i64, u, p, prec)
}

/// `binom(n, r)` as a p-adic decomposition; exact zero when `r` is outside
/// `[0, n]`. Valuation is always nonnegative (Kummer).
pub fn binomial_padic(n: u64, r: i64, p: u64, prec: u32) -> Padic {
    if r < 0 || r as u64 > n {
        return Padic::zero(p, prec);
    }
    let r = r as u64;
    factorial_decomp(n, p, prec)
        .div(factorial_decomp(r, p, prec))
        .div(factorial_decomp(n - r, p, prec))
}

/// Number of carries when adding `m` and `n` in base `p`; by Kummer's
/// theorem this is `ord_p binom(m+n, m)`.
pub fn kummer_carries(mut m: u64, mut n: u64, p: u64) -> u32 {
    let mut carries = 0;
    let mut carry = 0u64;
    while m > 0 || n > 0 || carry > 0 {
        let s = m % p + n % p + carry;
        carry = if s >= p { 1 } else { 0 };
        carries += carry as u32;
        m /= p;
        n /= p;
    }
    carries
}

/// `binom(m, n) mod p` via Lucas' theorem: the product of digitwise
/// binomials in base `p`.
pub fn lucas_binomial(mut m: u64, mut n: u64, p: u64) -> Residue {
    // factorials mod p for digit binomials
    let mut fact = vec![1u64; p as usize];
    for i in 1..p as usize {
        fact[i] = (fact[i - 1] as u128 * i as u128 % p as u128) as u64;
    }
    let mut acc = Residue::new(1, p);
    while m > 0 || n > 0 {
        let (dm, dn) = (m % p, n % p);
        if dn > dm {
            return Residue::new(0, p);
        }
        let num = Residue::new(fact[dm as usize], p);
        let den = Residue::new(fact[dn as usize], p)
            .mul(Residue::new(fact[(dm - dn) as usize], p));
        acc = acc.mul(num).mul(den.inv());
        m /= p;
        n /= p;
    }
    acc
}

/// `binom(x, n) = x(x-1)...(x-n+1)/n!` at a residue argument `x` mod `p^K`.
/// Requires `n < p` so that `n!` is invertible.
pub fn generalized_binomial(x: Residue, n: u64, p: u64) -> Residue {
    assert!(n < p, "generalized binomial needs n < p (n = {}, p = {})", n, p);
    let m = x.modulus();
    let mut num = Residue::new(1, m);
    let mut fact = Residue::new(1, m);
    for j in 0..n {
        num = num.mul(x.sub(Residue::new(j % m, m)));
        fact = fact.mul(Residue::new((j + 1) % m, m));
    }
    num.mul(fact.inv())
}

/// Prefix tables of factorial decompositions for one `(p, prec)`:
/// `val[n] = ord_p(n!)` and `unit[n] = (n! / p^val[n]) mod p^prec`.
/// Makes every binomial O(1) lookups plus one inversion.
pub struct FactorialTable {
    p: u64,
    prec: u32,
    pk: u64,
    val: Vec<u32>,
    unit: Vec<u64>,
}

impl FactorialTable {
    pub fn new(p: u64, prec: u32, n_max: u64) -> Self {
        let pk = pk_of(p, prec);
        let n = n_max as usize + 1;
        let mut val = vec![0u32; n];
        let mut unit = vec![1u64; n];
        for i in 1..n {
            let (vi, ui) = strip_p(i as u64, p);
            val[i] = val[i - 1] + vi;
            unit[i] = (unit[i - 1] as u128 * ui as u128 % pk as u128) as u64;
        }
        FactorialTable { p, prec, pk, val, unit }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.pk
    }

    pub fn len(&self) -> u64 {
        self.val.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn factorial(&self, n: u64) -> Padic {
        Padic::new(self.val[n as usize] as i64, self.unit[n as usize], self.p, self.prec)
    }

    pub fn binomial(&self, n: u64, r: i64) -> Padic {
        match self.binomial_parts(n, r) {
            None => Padic::zero(self.p, self.prec),
            Some((v, num, den)) => {
                let inv = Residue::new(den, self.pk).inv().value();
                Padic::new(v, (num as u128 * inv as u128 % self.pk as u128) as u64, self.p, self.prec)
            }
        }
    }

    /// Raw pieces of `binom(n, r) = p^v * num/den` with `num`, `den` units
    /// mod `p^prec`. `None` when the binomial is exactly zero. Callers that
    /// evaluate many terms combine these and batch-invert the denominators.
    pub fn binomial_parts(&self, n: u64, r: i64) -> Option<(i64, u64, u64)> {
        if r < 0 || r as u64 > n {
            return None;
        }
        let (n, r) = (n as usize, r as usize);
        let v = self.val[n] as i64 - self.val[r] as i64 - self.val[n - r] as i64;
        let den = self.unit[r] as u128 * self.unit[n - r] as u128 % self.pk as u128;
        Some((v, self.unit[n], den as u64))
    }
}
