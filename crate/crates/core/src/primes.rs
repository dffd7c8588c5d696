//! Prime enumeration for sweeps.

/// All primes in `[lo, hi]`, ascending, via a sieve of Eratosthenes.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            if i as u64 >= lo {
                out.push(i as u64);
            }
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}
