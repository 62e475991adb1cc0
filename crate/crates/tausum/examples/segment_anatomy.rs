//! Dissect one segment of the fast divisor sum: the rational line that
//! stands in for n/d, the certified error band around it, and the handful
//! of indices that need exact fixing.
//!
//! ```text
//! cargo run --release --example segment_anatomy
//! ```

use tausum::dsum::{make_segment, segment_sum};

fn main() {
    let n: u64 = 1_000_000_000_000;
    let d0: u64 = 49_999;
    let seg = make_segment(n, d0, 100);

    println!("segment for n = {n}, starting at d0 = {d0}");
    println!("  length          {}", seg.len);
    println!("  slope           {}/{} (approximates n/d0^2)", seg.slope.a, seg.slope.q);
    println!("  slope err bound {}", seg.slope.err_bound);
    println!("  intercept       {} (exactly n/d0)", seg.intercept);
    println!("  eta             {} (certified |n/d - model| bound)", seg.eta);

    // The model in integer form: floor((B - A*i) / Q) with one common
    // denominator Q = q * d0.
    let a_num = seg.slope.a as i128 * d0 as i128;
    let b_num = n as i128 * seg.slope.q as i128;
    let q1 = seg.slope.q as i128 * d0 as i128;

    println!("\n  i      n/(d0+i)   model(i)  agree?");
    let mut disagreements = 0;
    for i in 0..seg.len as i128 {
        let truth = n as i128 / (d0 as i128 + i);
        let model = (b_num - a_num * i).div_euclid(q1);
        if truth != model {
            disagreements += 1;
        }
        if i < 4 || i >= seg.len as i128 - 2 || truth != model {
            let mark = if truth == model { "yes" } else { "NO <- corrected" };
            println!("  {i:<5} {truth:>11} {model:>10}  {mark}");
        } else if i == 4 {
            println!("  ...");
        }
    }

    let (value, corrections) = segment_sum(&seg);
    let brute: i128 = (0..seg.len as i128).map(|i| n as i128 / (d0 as i128 + i)).sum();
    println!("\nsegment sum  = {value} (brute force {brute})");
    println!("corrections  = {corrections} candidates verified exactly");
    println!("disagreements actually present = {disagreements}");
    assert_eq!(value, brute);
    assert!(corrections as i128 >= disagreements);

    // The same machinery under pressure: a segment where the curvature of
    // n/d forces the certified length down from the requested hint.
    let tight = make_segment(1_000_000, 950, 1_000_000);
    println!(
        "\nfor n = 10^6 at d0 = 950, a hint of 10^6 certifies only {} points (eta = {})",
        tight.len, tight.eta
    );
}
