//! Compute the divisor summatory function three ways and watch them agree.
//!
//! ```text
//! cargo run --release --example divisor_sum
//! ```

use tausum::dsum::{dsum_fast, dsum_hyperbola, tau_naive_sum};

fn main() {
    // D(n) counts pairs (d, e) with d*e <= n. Three routes, one integer.
    println!("{:>14} {:>18} {:>12} {:>12} {:>12}", "n", "D(n)", "naive work", "hyp work", "fast work");
    for n in [10u64, 1_000, 100_000, 10_000_000] {
        let naive = tau_naive_sum(n).unwrap();
        let hyp = dsum_hyperbola(n).unwrap();
        let fast = dsum_fast(n).unwrap();
        assert_eq!(naive.value, hyp.value);
        assert_eq!(naive.value, fast.value);
        println!(
            "{:>14} {:>18} {:>12} {:>12} {:>12}",
            n, fast.value, naive.work, hyp.work, fast.work
        );
    }

    // Past the naive cap, the hyperbola fold is the reference.
    println!();
    for n in [1_000_000_000u64, 1_000_000_000_000] {
        let hyp = dsum_hyperbola(n).unwrap();
        let fast = dsum_fast(n).unwrap();
        assert_eq!(hyp.value, fast.value);
        println!(
            "D({n}) = {}  (hyperbola work {}, fast work {} across {} segments, {} corrected points)",
            fast.value, hyp.work, fast.work, fast.segments, fast.corrections
        );
    }

    // Interval form: tau summed over (10^9, 10^9 + 10^6].
    let window = tausum::dsum::dsum_interval(1_000_000_000, 1_001_000_000, tausum::dsum::Method::Fast).unwrap();
    println!("\nsum of tau over (10^9, 10^9+10^6] = {}", window.value);
}
