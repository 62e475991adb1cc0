//! Primality, prime counting, and deterministic prime finding.
//!
//! The centerpiece is [`find_prime`]: given `n`, produce a prime in
//! `(n, 2n]` using only *parity* information about prime counts. A window
//! `(a, a+M]` is asked one question — "is the number of primes in you odd or
//! even?" — answered without finding any prime, through the mod-4 value of
//! the squarefree divisor-count sum ([`crate::sqfree`]). Bisecting on that
//! bit isolates a single prime in about `log2(n)` questions, and the answer
//! is then certified by a direct primality test. When the full interval
//! `(n, 2n]` holds an even number of primes the parity bit is blind to all
//! of them and the search reports [`Error::EvenCount`] instead of guessing.

use crate::sqfree::interval_mod4_counted;
use crate::{Error, MAX_INPUT, SIEVE_MAX};

/// Bit `i` set means `2i + 1` is composite (entry 0, the number 1, is left
/// unset and must be special-cased by callers).
fn odd_composite_bits(limit: u64) -> Vec<u64> {
    let n_odds = limit.div_ceil(2) as usize;
    let mut bits = vec![0u64; n_odds.div_ceil(64).max(1)];
    let mut d = 3u64;
    while d * d <= limit {
        let idx = (d / 2) as usize;
        if bits[idx / 64] & (1 << (idx % 64)) == 0 {
            let mut m = d * d;
            while m <= limit {
                let j = (m / 2) as usize;
                bits[j / 64] |= 1 << (j % 64);
                m += 2 * d;
            }
        }
        d += 2;
    }
    bits
}

/// All primes `<= limit`, ascending.
pub(crate) fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let bits = odd_composite_bits(limit);
    let mut primes = vec![2u64];
    let mut p = 3u64;
    while p <= limit {
        let idx = (p / 2) as usize;
        if bits[idx / 64] & (1 << (idx % 64)) == 0 {
            primes.push(p);
        }
        p += 2;
    }
    primes
}

/// `pi(limit)`: the number of primes `<= limit`, by sieve. Capped at 10^8.
pub fn pi_sieve(limit: u64) -> Result<u64, Error> {
    if limit > SIEVE_MAX {
        return Err(Error::Range { what: "pi_sieve", limit: SIEVE_MAX, got: limit });
    }
    if limit < 2 {
        return Ok(0);
    }
    let bits = odd_composite_bits(limit);
    let mut count = 1u64; // the prime 2
    let mut p = 3u64;
    while p <= limit {
        let idx = (p / 2) as usize;
        if bits[idx / 64] & (1 << (idx % 64)) == 0 {
            count += 1;
        }
        p += 2;
    }
    Ok(count)
}

const TRIAL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

// Seven Miller-Rabin witnesses (Jim Sinclair) that are jointly correct for
// every modulus below 2^64; see miller-rabin.appspot.com for the
// verification record.
const MR_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod_counted(mut base: u64, mut exp: u64, n: u64, work: &mut u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
            *work += 2;
        }
        base = mulmod(base, base, n);
        *work += 2;
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for the full `u64` range: trial division by the
/// primes below 100, then strong-pseudoprime tests against the fixed witness
/// set above. No probabilistic behavior anywhere.
pub fn is_prime(n: u64) -> bool {
    is_prime_counted(n).0
}

pub(crate) fn is_prime_counted(n: u64) -> (bool, u64) {
    let mut work = 0u64;
    if n < 2 {
        return (false, work);
    }
    for &p in &TRIAL_PRIMES {
        work += 1;
        if n.is_multiple_of(p) {
            return (n == p, work);
        }
    }
    if n < 100 * 100 {
        // No factor below 100 and below 100^2: prime.
        return (true, work);
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    for &a in &MR_WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod_counted(a, d, n, &mut work);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut witness = true;
        for _ in 1..s {
            x = mulmod(x, x, n);
            work += 2;
            if x == n - 1 {
                witness = false;
                break;
            }
        }
        if witness {
            return (false, work);
        }
    }
    (true, work)
}

/// How an interval's prime-count parity gets computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityMethod {
    /// Squarefree divisor sums over segmented models. The default.
    Fast,
    /// Same identity, inner divisor sums by the plain hyperbola fold.
    Hyperbola,
    /// Sieve the window and literally count. Independent of the identity;
    /// exists as a cross-check and only handles windows up to 10^8.
    Sieve,
}

impl std::str::FromStr for ParityMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<ParityMethod, String> {
        match s {
            "fast" => Ok(ParityMethod::Fast),
            "hyperbola" => Ok(ParityMethod::Hyperbola),
            "sieve" => Ok(ParityMethod::Sieve),
            other => Err(format!("unknown parity method '{other}' (fast|hyperbola|sieve)")),
        }
    }
}

/// Parity of `#{primes in (n, n+m_len]}`, plus the mod-4 residue it was read
/// from and the usual cost counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityResult {
    pub n: u64,
    pub m_len: u64,
    /// `2 * #primes mod 4`: always 0 or 2 when the arithmetic is sound.
    pub mod4: u8,
    /// 1 if the window holds an odd number of primes.
    pub parity: u8,
    /// Powerful moduli visited (zero for the sieve method).
    pub terms: u64,
    pub work: u64,
}

/// Decide whether `(n, n+m_len]` contains an odd number of primes, for
/// `n >= 1`, without exhibiting any prime. An odd mod-4 residue cannot arise
/// from the identity and reports [`Error::ParityInconsistent`].
pub fn prime_parity_interval(
    n: u64,
    m_len: u64,
    method: ParityMethod,
) -> Result<ParityResult, Error> {
    prime_parity_interval_with(n, m_len, method, &crate::dsum::Tuning::default())
}

pub fn prime_parity_interval_with(
    n: u64,
    m_len: u64,
    method: ParityMethod,
    tun: &crate::dsum::Tuning,
) -> Result<ParityResult, Error> {
    match method {
        ParityMethod::Fast => parity_via_mod4(n, m_len, crate::dsum::Method::Fast, tun),
        ParityMethod::Hyperbola => parity_via_mod4(n, m_len, crate::dsum::Method::Hyperbola, tun),
        ParityMethod::Sieve => parity_via_sieve(n, m_len),
    }
}

fn parity_via_mod4(
    n: u64,
    m_len: u64,
    inner: crate::dsum::Method,
    tun: &crate::dsum::Tuning,
) -> Result<ParityResult, Error> {
    let (mod4, terms, work) = interval_mod4_counted(n, m_len, inner, tun)?;
    if mod4 % 2 != 0 {
        return Err(Error::ParityInconsistent { mod4 });
    }
    Ok(ParityResult { n, m_len, mod4, parity: mod4 / 2, terms, work })
}

fn parity_via_sieve(n: u64, m_len: u64) -> Result<ParityResult, Error> {
    if n == 0 || m_len == 0 {
        return Err(Error::Range { what: "prime_parity_interval: empty window", limit: MAX_INPUT, got: 0 });
    }
    if m_len > SIEVE_MAX {
        return Err(Error::Range { what: "prime_parity_interval: sieve window", limit: SIEVE_MAX, got: m_len });
    }
    let hi = n
        .checked_add(m_len)
        .filter(|&v| v <= MAX_INPUT)
        .ok_or(Error::Range { what: "prime_parity_interval: n + m_len", limit: MAX_INPUT, got: u64::MAX })?;
    let (count, work) = count_primes_in_window(n, hi);
    let parity = (count % 2) as u8;
    Ok(ParityResult { n, m_len, mod4: 2 * parity, parity, terms: 0, work })
}

/// Primes in `(lo, hi]` by windowed sieve against base primes `<= sqrt(hi)`.
fn count_primes_in_window(lo: u64, hi: u64) -> (u64, u64) {
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len]; // slot k = lo + 1 + k
    let mut work = 0u64;
    for p in sieve_primes(crate::exactmath::isqrt(hi as i128) as u64) {
        let first = (lo / p + 1).max(2) * p; // smallest multiple > lo with cofactor >= 2
        let mut m = first.max(p * p); // p itself, if in range, is prime
        work += 4;
        while m <= hi {
            composite[(m - lo - 1) as usize] = true;
            m += p;
            work += 1;
        }
    }
    let mut count = 0u64;
    for (k, &c) in composite.iter().enumerate() {
        work += 1;
        let value = lo + 1 + k as u64;
        if !c && value >= 2 {
            count += 1;
        }
    }
    (count, work)
}

/// One bisection step as recorded in a [`PrimeSearch`] trail: the parity
/// question "does `(lo, hi]` hold an odd number of primes?" and its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStep {
    pub lo: u64,
    pub hi: u64,
    pub odd: bool,
}

/// A completed prime search: the certified prime, the number of parity
/// questions asked, the accumulated work, and the full question trail.
#[derive(Debug, Clone)]
pub struct PrimeSearch {
    pub n: u64,
    pub prime: u64,
    pub queries: u64,
    pub work: u64,
    pub trail: Vec<SearchStep>,
}

/// A deterministic prime in `(n, 2n]`, or [`Error::EvenCount`] when that
/// interval holds an even number of primes (parity alone cannot see them).
pub fn find_prime(n: u64) -> Result<u64, Error> {
    find_prime_detailed(n, ParityMethod::Fast).map(|s| s.prime)
}

/// [`find_prime`] with the method pinned and the bisection trail kept.
///
/// Invariant: every interval on the trail holds an odd number of primes —
/// so it is nonempty, and narrowing it to one integer exhibits a prime. Each
/// round asks about the lower half `(lo, mid]`; odd keeps it, even moves to
/// `(mid, hi]`. At most `1 + ceil(log2(n))` questions. The final candidate is
/// checked with [`is_prime`]; failure (impossible unless the arithmetic
/// upstream is broken) is surfaced as [`Error::Verification`], never masked.
pub fn find_prime_detailed(n: u64, method: ParityMethod) -> Result<PrimeSearch, Error> {
    find_prime_with(n, method, &crate::dsum::Tuning::default())
}

pub fn find_prime_with(
    n: u64,
    method: ParityMethod,
    tun: &crate::dsum::Tuning,
) -> Result<PrimeSearch, Error> {
    if n == 0 {
        return Err(Error::Range { what: "find_prime: n must be >= 1", limit: MAX_INPUT / 2, got: 0 });
    }
    if n > MAX_INPUT / 2 {
        return Err(Error::Range { what: "find_prime", limit: MAX_INPUT / 2, got: n });
    }
    let mut trail = Vec::new();
    let mut queries = 0u64;
    let mut work = 0u64;

    let whole = prime_parity_interval_with(n, n, method, tun)?;
    queries += 1;
    work += whole.work;
    trail.push(SearchStep { lo: n, hi: 2 * n, odd: whole.parity == 1 });
    if whole.parity == 0 {
        return Err(Error::EvenCount { n });
    }

    let (mut lo, mut hi) = (n, 2 * n);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let left = prime_parity_interval_with(lo, mid - lo, method, tun)?;
        queries += 1;
        work += left.work;
        let odd = left.parity == 1;
        trail.push(SearchStep { lo, hi: mid, odd });
        if odd {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let candidate = hi;
    let (ok, verify_work) = is_prime_counted(candidate);
    work += verify_work;
    if !ok {
        return Err(Error::Verification { candidate });
    }
    Ok(PrimeSearch { n, prime: candidate, queries, work, trail })
}
