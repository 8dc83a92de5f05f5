//! Factorization and the discriminant set `𝒟_ℛ`.

/// Prime factorization as `(p, e)` pairs, ascending, by trial division.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest-prime-factor table on `0..=n`.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(n: usize) -> SpfSieve {
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Factorization of `n ≤ limit`, ascending.
    pub fn factorize(&self, mut n: usize) -> Vec<(u128, u32)> {
        let mut out: Vec<(u128, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p as u128 => *e += 1,
                _ => out.push((p as u128, 1)),
            }
        }
        out
    }
}

/// Product of two factorizations.
pub fn merge_factors(a: &[(u128, u32)], b: &[(u128, u32)]) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 <= b[j].0);
        let (p, e) = if take_a { a[i] } else { b[j] };
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => out.push((p, e)),
        }
    }
    out
}

/// Membership in `𝒟_ℛ` from a factorization: `2^α D′` with `α ∈ {0, 2, 3}`, every odd prime
/// `≡ 1 (mod 4)`, and not a square. Returns `(λ, ν)` with `λ` the number of distinct odd
/// primes and `ν = 2^{λ−1}` if `8 ∤ d`, else `2^λ`.
pub fn d_r_class(factors: &[(u128, u32)]) -> Option<(u32, u64)> {
    let mut alpha = 0;
    let mut lambda = 0u32;
    let mut square = true;
    for &(p, e) in factors {
        if e % 2 == 1 {
            square = false;
        }
        if p == 2 {
            alpha = e;
        } else if p % 4 == 1 {
            lambda += 1;
        } else {
            return None;
        }
    }
    if square || !matches!(alpha, 0 | 2 | 3) {
        return None;
    }
    let nu = if alpha == 3 { 1u64 << lambda } else { 1u64 << (lambda - 1) };
    Some((lambda, nu))
}

pub fn is_in_d_r(d: u128) -> bool {
    d > 1 && d_r_class(&factorize(d)).is_some()
}
