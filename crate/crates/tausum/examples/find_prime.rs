//! Find a prime in (n, 2n] deterministically, by asking only "does this
//! window hold an odd number of primes?" and bisecting on the answer.
//!
//! ```text
//! cargo run --release --example find_prime
//! ```

use tausum::primes::{find_prime, find_prime_detailed, ParityMethod};
use tausum::Error;

fn main() {
    // Watch the whole search at n = 16. The interval (16, 32] holds five
    // primes; parity alone funnels the search to exactly one of them.
    let search = find_prime_detailed(16, ParityMethod::Fast).unwrap();
    println!("searching (16, 32]:");
    for step in &search.trail {
        println!(
            "  ({:>2}, {:>2}] prime count odd? {}",
            step.lo,
            step.hi,
            if step.odd { "yes -> keep" } else { "no  -> other half" }
        );
    }
    println!("found {} after {} parity queries\n", search.prime, search.queries);

    // Not every n works: (10, 20] holds four primes, and parity cannot see
    // an even number of anything. The search refuses rather than guess.
    match find_prime(10) {
        Err(Error::EvenCount { n }) => println!("n = {n}: even prime count, no answer possible"),
        other => panic!("expected the even-count refusal, got {other:?}"),
    }

    // Larger targets: the query count stays logarithmic.
    println!();
    for n in [1_000u64, 1_000_000, 1_000_000_000, 123_456_789_012] {
        match find_prime_detailed(n, ParityMethod::Fast) {
            Ok(s) => println!(
                "n = {n:>13}: prime {:>13}  [{} queries, work {}]",
                s.prime, s.queries, s.work
            ),
            Err(Error::EvenCount { .. }) => {
                println!("n = {n:>13}: even count in (n, 2n], provably no parity route")
            }
            Err(e) => panic!("{e}"),
        }
    }
}
