//! Measure how the work counters grow with n and fit the exponents.
//!
//! The counters tally 128-bit arithmetic operations, not wall time, so the
//! numbers below are exactly reproducible on any machine and any thread
//! count. The segmented method should fit near n^(1/3) plus log factors;
//! the hyperbola fold is the n^(1/2) control.
//!
//! ```text
//! cargo run --release --example work_scaling
//! ```

use tausum::dsum::{dsum_fast, dsum_hyperbola};

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn main() {
    println!(
        "{:>16} {:>14} {:>12} {:>12} {:>14}",
        "n", "fast work", "segments", "corrections", "hyperbola work"
    );
    let mut fast_pts = Vec::new();
    let mut hyp_pts = Vec::new();
    for e in 6..=12u32 {
        let n = 10u64.pow(e);
        let fast = dsum_fast(n).unwrap();
        let hyp = dsum_hyperbola(n).unwrap();
        assert_eq!(fast.value, hyp.value);
        println!(
            "{:>16} {:>14} {:>12} {:>12} {:>14}",
            n, fast.work, fast.segments, fast.corrections, hyp.work
        );
        fast_pts.push(((n as f64).log10(), (fast.work as f64).log10()));
        hyp_pts.push(((n as f64).log10(), (hyp.work as f64).log10()));
    }

    let fast_slope = fit_slope(&fast_pts);
    let hyp_slope = fit_slope(&hyp_pts);
    println!("\nfitted exponents over the grid above:");
    println!("  fast      work ~ n^{fast_slope:.4}");
    println!("  hyperbola work ~ n^{hyp_slope:.4}");
    assert!(fast_slope < hyp_slope, "the segmented method must scale strictly better");
}
