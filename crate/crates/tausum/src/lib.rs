//! Exact divisor-sum machinery and a deterministic prime finder built on it.
//!
//! The centerpiece is `D(N) = sum_{n <= N} tau(n)`, the number of lattice
//! points under the hyperbola `x*y = N`, computed three ways: a naive loop, the
//! classical `O(sqrt(N))` hyperbola fold, and a segmented method that models
//! `floor(N/d)` by rational lines on short intervals and only inspects the few
//! points where the model could be wrong, bringing the work down to roughly
//! `N^(1/3)`. All three agree bit-for-bit; there is no floating point anywhere
//! in a value path.
//!
//! On top of `D` sit two derived quantities:
//!
//! * the squarefree-restricted sum `T(x) = sum mu^2(n) tau(n)`, obtained from
//!   `D` by a convolution over powerful numbers ([`sqfree`]), and
//! * the parity of the prime count in an interval, read off `T mod 4`
//!   ([`primes`]), which powers a bisection that pins down a prime in
//!   `(N, 2N]` with about `log2(N)` parity evaluations and certifies the
//!   result with a deterministic Miller-Rabin check.
//!
//! ```
//! use tausum::dsum::{dsum_fast, dsum_hyperbola};
//!
//! let fast = dsum_fast(1_000_000).unwrap();
//! let slow = dsum_hyperbola(1_000_000).unwrap();
//! assert_eq!(fast.value, slow.value);
//! assert_eq!(fast.value, 13_970_034);
//! ```
//!
//! # Examples
//!
//! Each major capability has a runnable walkthrough:
//!
//! * `cargo run --release --example divisor_sum` - the three methods side by
//!   side, with work counters.
//! * `cargo run --release --example segment_anatomy` - one segment dissected:
//!   slope, certified error band, corrected points.
//! * `cargo run --release --example squarefree_parity` - from tau sums to
//!   prime-count parity via the mod-4 identity.
//! * `cargo run --release --example find_prime` - the parity bisection,
//!   step by step.
//! * `cargo run --release --example work_scaling` - measured work exponents
//!   for the fast and hyperbola methods.
//!
//! The `tausum` binary exposes the same operations as subcommands (`dsum`,
//! `dsum-interval`, `sqfree-tau`, `prime-parity`, `find-prime`, `bench`,
//! `selftest`); see [`cli`].

pub mod cli;
pub mod dsum;
pub mod exactmath;
pub mod primes;
pub mod sqfree;

pub use dsum::{dsum_fast, dsum_hyperbola, dsum_interval, tau_naive_sum, Method, SummatoryResult};
pub use exactmath::{best_rational, floor_sum, icbrt, isqrt, CFApprox, Rational, WideInt};
pub use primes::{find_prime, is_prime, pi_sieve, prime_parity_interval, ParityMethod};
pub use sqfree::{enumerate_powerful, interval_sqfree_tau_mod4, squarefree_tau_sum};

/// Largest `n` accepted by the sublinear divisor-sum operations.
pub const MAX_INPUT: u64 = 1_000_000_000_000_000_000;

/// Largest `n` for the naive reference loop.
pub const NAIVE_MAX: u64 = 100_000_000;

/// Largest `x` for sieve-backed oracles.
pub const SIEVE_MAX: u64 = 100_000_000;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input exceeded its documented cap.
    Range { what: &'static str, limit: u64, got: u64 },
    /// A tuning constant was outside its valid range.
    Tuning(&'static str),
    /// An intermediate value would not fit in a `WideInt`.
    Overflow,
    /// The interval `(n, 2n]` contains an even number of primes, so the
    /// parity bisection has nothing to grab onto.
    EvenCount { n: u64 },
    /// The bisection terminated on a candidate that failed the primality
    /// check; indicates an internal inconsistency.
    Verification { candidate: u64 },
    /// The squarefree tau sum over an interval came out odd mod 4, which the
    /// underlying identity rules out; indicates an internal inconsistency.
    ParityInconsistent { mod4: u8 },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Range { what, limit, got } => {
                write!(f, "{what}: input {got} exceeds the supported limit {limit}")
            }
            Error::Tuning(msg) => write!(f, "invalid tuning: {msg}"),
            Error::Overflow => write!(f, "intermediate value exceeds 128-bit range"),
            Error::EvenCount { n } => {
                write!(f, "even prime count in ({n},{}]", 2 * n)
            }
            Error::Verification { candidate } => {
                write!(f, "bisection result {candidate} failed primality verification")
            }
            Error::ParityInconsistent { mod4 } => {
                write!(f, "interval tau sum is {mod4} mod 4; expected an even residue")
            }
        }
    }
}

impl std::error::Error for Error {}
