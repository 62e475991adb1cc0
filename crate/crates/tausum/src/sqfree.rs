//! Divisor counts restricted to squarefree integers.
//!
//! The indicator-weighted count `mu^2(n) * tau(n)` is the Dirichlet
//! convolution of `tau` with a multiplicative weight `h` supported on
//! powerful numbers: `h(p^2) = -3`, `h(p^3) = 2`, and `h(p^k) = 0` for
//! `k = 1` or `k >= 4`. On prime powers the convolution telescopes:
//! at `p` it gives `tau(p) = 2`, at `p^2` it gives `3 - 3 = 0`, at `p^3`
//! it gives `4 - 6 + 2 = 0`, and at `p^k` it gives
//! `(k+1) - 3(k-1) + 2(k-2) = 0`. Summing,
//!
//! `T(x) = sum_{n<=x, squarefree} tau(n) = sum_{m powerful} h(m) * D(x/m)`,
//!
//! which turns a squarefree-restricted question into `O(sqrt(x))` ordinary
//! divisor sums, most of them tiny. Over a short window `(n, n+M]` almost
//! every term has `floor((n+M)/m) = floor(n/m)` and drops out.
//!
//! The point of the window form is the parity bridge: for `n >= 1`,
//! `T(n+M) - T(n) = 2 * #{primes in (n, n+M]} (mod 4)`, because a squarefree
//! number has `tau = 2^omega`, so only primes (`omega = 1`) contribute a
//! nonzero residue mod 4 once the `1` term is out of the window. That single
//! bit per window is what drives the prime search in [`crate::primes`].

use crate::dsum::{dsum_interval_with, Method, Tuning};
use crate::primes::sieve_primes;
use crate::{Error, MAX_INPUT};

/// One term of the powerful-number support: the modulus `m` and the weight
/// `h(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerfulCoefficient {
    pub m: u64,
    pub h: i64,
}

/// The squarefree divisor-count summatory `T(x)` with its cost counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqfreeTauSum {
    pub x: u64,
    pub value: i128,
    /// Powerful moduli enumerated (the support actually walked).
    pub terms: u64,
    /// Arithmetic performed on the terms and inside the divisor sums. The
    /// prime sieve backing the enumeration is not metered.
    pub work: u64,
}

/// Depth-first walk of `{m <= x : m powerful, h(m) != 0}`: products of
/// distinct primes raised to the 2nd or 3rd power. Each call reports
/// `(m, h(m))`; `m = 1` comes first, the rest arrive in DFS order, not
/// sorted. Returning `false` from the visitor stops the walk.
///
/// The walk needs primes up to `sqrt(x)`, so it sieves that far; the support
/// has about `2.2 * sqrt(x)` elements, which bounds any caller's appetite in
/// practice well before the documented `x <= 10^18` cap does.
pub fn visit_powerful(x: u64, visit: &mut dyn FnMut(u64, i64) -> bool) {
    if x == 0 || !visit(1, 1) || x < 4 {
        return;
    }
    let primes = sieve_primes(crate::exactmath::isqrt(x as i128) as u64);
    dfs(&primes, 0, x, 1, 1, visit);
}

fn dfs(
    primes: &[u64],
    start: usize,
    x: u64,
    cur: u64,
    hval: i64,
    visit: &mut dyn FnMut(u64, i64) -> bool,
) -> bool {
    let budget = x / cur;
    for (offset, &p) in primes[start..].iter().enumerate() {
        if p > budget / p {
            break;
        }
        let next = start + offset + 1;
        let cur2 = cur * p * p;
        if !visit(cur2, hval * -3) || !dfs(primes, next, x, cur2, hval * -3, visit) {
            return false;
        }
        if p <= budget / p / p {
            let cur3 = cur2 * p;
            if !visit(cur3, hval * 2) || !dfs(primes, next, x, cur3, hval * 2, visit) {
                return false;
            }
        }
    }
    true
}

/// The support up to `x`, materialized and sorted by modulus.
pub fn enumerate_powerful(x: u64) -> Result<Vec<PowerfulCoefficient>, Error> {
    if x > MAX_INPUT {
        return Err(Error::Range { what: "enumerate_powerful", limit: MAX_INPUT, got: x });
    }
    let mut out = Vec::new();
    visit_powerful(x, &mut |m, h| {
        out.push(PowerfulCoefficient { m, h });
        true
    });
    out.sort_by_key(|t| t.m);
    Ok(out)
}

/// `h(m)` evaluated directly by trial factorization. Zero unless every prime
/// in `m` appears squared or cubed. Meant for spot checks and certificates,
/// not bulk use.
pub fn h_coefficient(m: u64) -> i64 {
    assert!(m >= 1, "h_coefficient: argument must be positive");
    let mut rest = m;
    let mut h = 1i64;
    let mut p = 2u64;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            match e {
                2 => h *= -3,
                3 => h *= 2,
                _ => return 0,
            }
        }
        p += 1;
    }
    if rest > 1 {
        // A single leftover prime factor has exponent 1.
        return 0;
    }
    h
}

/// `T(x) = sum_{n<=x, squarefree} tau(n)`, exactly, via the powerful-number
/// reduction. `method` selects the divisor-sum engine for the inner `D`
/// evaluations.
pub fn squarefree_tau_sum(x: u64, method: Method) -> Result<SqfreeTauSum, Error> {
    squarefree_tau_sum_with(x, method, &Tuning::default())
}

pub fn squarefree_tau_sum_with(
    x: u64,
    method: Method,
    tun: &Tuning,
) -> Result<SqfreeTauSum, Error> {
    if x > MAX_INPUT {
        return Err(Error::Range { what: "squarefree_tau_sum", limit: MAX_INPUT, got: x });
    }
    let mut value = 0i128;
    let mut terms = 0u64;
    let mut work = 4u64;
    let mut failed: Option<Error> = None;
    visit_powerful(x, &mut |m, h| {
        terms += 1;
        match crate::dsum::compute_with(x / m, method, tun) {
            Ok(part) => {
                value += (h as i128) * part.value;
                work += part.work + 3;
                true
            }
            Err(e) => {
                failed = Some(e);
                false
            }
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    Ok(SqfreeTauSum { x, value, terms, work })
}

/// `sum_{n < k <= n+m_len, squarefree} tau(k) (mod 4)`, for `n >= 1`.
///
/// Most powerful moduli satisfy `floor((n+m_len)/m) = floor(n/m)` and
/// contribute nothing; the remainder each cost one interval divisor sum.
pub fn interval_sqfree_tau_mod4(n: u64, m_len: u64) -> Result<u8, Error> {
    interval_mod4_counted(n, m_len, Method::Fast, &Tuning::default()).map(|(mod4, _, _)| mod4)
}

pub(crate) fn interval_mod4_counted(
    n: u64,
    m_len: u64,
    method: Method,
    tun: &Tuning,
) -> Result<(u8, u64, u64), Error> {
    if n == 0 {
        return Err(Error::Range { what: "interval_sqfree_tau_mod4: n must be >= 1", limit: MAX_INPUT, got: 0 });
    }
    if m_len == 0 {
        return Err(Error::Range { what: "interval_sqfree_tau_mod4: empty window", limit: MAX_INPUT, got: 0 });
    }
    let hi = n
        .checked_add(m_len)
        .filter(|&v| v <= MAX_INPUT)
        .ok_or(Error::Range { what: "interval_sqfree_tau_mod4: n + m_len", limit: MAX_INPUT, got: u64::MAX })?;
    let mut value = 0i128;
    let mut terms = 0u64;
    let mut work = 4u64;
    let mut failed: Option<Error> = None;
    visit_powerful(hi, &mut |m, h| {
        terms += 1;
        let lo_q = n / m;
        let hi_q = hi / m;
        work += 3;
        if lo_q == hi_q {
            return true;
        }
        match dsum_interval_with(lo_q, hi_q, method, tun) {
            Ok(part) => {
                value += (h as i128) * part.value;
                work += part.work + 2;
                true
            }
            Err(e) => {
                failed = Some(e);
                false
            }
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    Ok((value.rem_euclid(4) as u8, terms, work))
}
