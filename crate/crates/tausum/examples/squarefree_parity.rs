//! From squarefree divisor counts to prime parity without finding primes.
//!
//! A squarefree number with omega distinct prime factors has tau = 2^omega,
//! so mod 4 everything with two or more factors vanishes and a window sum
//! T(n+M) - T(n) reads 2 * (number of primes in the window). One exact
//! divisor-sum identity answers "odd or even?" blind.
//!
//! ```text
//! cargo run --release --example squarefree_parity
//! ```

use tausum::dsum::Method;
use tausum::primes::{prime_parity_interval, ParityMethod};
use tausum::sqfree::{enumerate_powerful, squarefree_tau_sum};

fn main() {
    // The reduction rests on a weight supported on powerful numbers.
    let support = enumerate_powerful(100).unwrap();
    println!("powerful moduli up to 100 with their weights h:");
    for t in &support {
        print!("  {}:{}", t.m, t.h);
    }
    println!("\n({} terms; about 2.2*sqrt(x) of them exist below x)\n", support.len());

    // T(x) = sum of tau over squarefree n <= x, exactly.
    for x in [10u64, 100, 10_000, 1_000_000, 100_000_000] {
        let t = squarefree_tau_sum(x, Method::Fast).unwrap();
        println!(
            "T({x:>9}) = {:>12}   [{} powerful terms, work {}]",
            t.value, t.terms, t.work
        );
    }

    // Windows: the mod-4 bit is the parity of the prime count.
    println!();
    for (n, m) in [(10u64, 10u64), (16, 16), (1_000_000, 1_000), (1_000_000_000, 4_096)] {
        let p = prime_parity_interval(n, m, ParityMethod::Fast).unwrap();
        println!(
            "({n}, {}] holds an {} number of primes   [mod4 residue {}, work {}]",
            n + m,
            if p.parity == 1 { "odd " } else { "even" },
            p.mod4,
            p.work
        );
    }

    // Cross-check one window against a literal sieve count.
    let blind = prime_parity_interval(1_000_000, 1_000, ParityMethod::Fast).unwrap();
    let sieved = prime_parity_interval(1_000_000, 1_000, ParityMethod::Sieve).unwrap();
    assert_eq!(blind.parity, sieved.parity);
    println!("\nblind parity over (10^6, 10^6+1000] agrees with the sieve: {}", blind.parity);
}
