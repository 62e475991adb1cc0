//! Command-line front end. All the arithmetic lives in the library; this
//! module parses arguments, shapes output, and maps failures onto stable
//! exit codes:
//!
//! * `0` success
//! * `2` usage errors: bad flags, out-of-range inputs, invalid tuning
//! * `3` the target interval `(n, 2n]` holds an even number of primes
//! * `4` verification failures: a candidate that is not prime, an
//!   arithmetically impossible parity residue, or internal overflow
//! * `5` the fitted work exponent exceeds its gate in `bench --fit`
//!
//! With `--json`, every result is one JSON object per line on stdout;
//! diagnostics go to stderr either way.

use crate::dsum::{self, Method, Tuning};
use crate::exactmath::Rational;
use crate::primes::{self, ParityMethod};
use crate::sqfree;
use crate::Error;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::time::Instant;

/// Largest admissible fitted exponent per method: the segmented method must
/// come in clearly under `n^(1/2)`, the hyperbola under linear.
fn slope_gate(method: Method) -> f64 {
    match method {
        Method::Fast => 0.45,
        Method::Hyperbola => 0.60,
        Method::Naive => 1.10,
    }
}

#[derive(Parser)]
#[command(
    name = "tausum",
    version,
    about = "Exact divisor sums in ~n^(1/3) work, squarefree parity, deterministic prime finding",
    max_term_width = 100
)]
struct Cli {
    /// Emit one JSON record per line instead of prose
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (0 picks the runtime default)
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    threads: usize,

    /// Tuning override, repeatable: len=1/2, cap=4, eta=1/4, cut=2
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    tune: Vec<String>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// D(n): the number of divisor pairs (d, e) with d*e <= n
    Dsum {
        n: u64,
        #[arg(long, default_value = "fast", value_parser = parse_method)]
        method: Method,
    },
    /// Sum of tau over the half-open interval (n_lo, n_hi]
    DsumInterval {
        n_lo: u64,
        n_hi: u64,
        #[arg(long, default_value = "fast", value_parser = parse_method)]
        method: Method,
    },
    /// T(x): sum of tau over the squarefree integers up to x
    SqfreeTau {
        x: u64,
        #[arg(long, default_value = "fast", value_parser = parse_method)]
        method: Method,
    },
    /// Parity of the prime count in (n, n+m_len], computed blind
    PrimeParity {
        n: u64,
        m_len: u64,
        #[arg(long, default_value = "fast", value_parser = parse_parity_method)]
        method: ParityMethod,
    },
    /// A certified prime in (n, 2n] found by parity bisection
    FindPrime {
        n: u64,
        #[arg(long, default_value = "fast", value_parser = parse_parity_method)]
        method: ParityMethod,
    },
    /// Measure work-counter growth across decades of n
    Bench {
        /// Smallest decade exponent (n starts at 10^min_exp)
        #[arg(long, default_value_t = 6)]
        min_exp: u32,
        /// Largest decade exponent
        #[arg(long, default_value_t = 10)]
        max_exp: u32,
        /// Sample points per decade, spread deterministically
        #[arg(long, default_value_t = 3)]
        samples: u32,
        /// Fit log10(work) against log10(n) and gate the slope
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value = "fast", value_parser = parse_method)]
        method: Method,
    },
    /// Run the built-in consistency battery
    Selftest,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_parity_method(s: &str) -> Result<ParityMethod, String> {
    s.parse()
}

#[derive(Serialize)]
struct DsumRecord {
    n: u64,
    method: &'static str,
    value: i128,
    work: u64,
    segments: u64,
    corrections: u64,
}

#[derive(Serialize)]
struct SqfreeRecord {
    x: u64,
    method: &'static str,
    value: i128,
    terms: u64,
    work: u64,
}

#[derive(Serialize)]
struct ParityRecord {
    n: u64,
    m_len: u64,
    mod4: u8,
    parity: u8,
    terms: u64,
    work: u64,
}

#[derive(Serialize)]
struct PrimeRecord {
    n: u64,
    prime: u64,
    queries: u64,
    work: u64,
}

#[derive(Serialize)]
struct BenchRecord {
    kind: &'static str,
    n: u64,
    method: &'static str,
    value: i128,
    work: u64,
    segments: u64,
    corrections: u64,
    wall_ns: u128,
}

#[derive(Serialize)]
struct ExponentFit {
    kind: &'static str,
    method: &'static str,
    slope: f64,
    intercept: f64,
    r2: f64,
    points: usize,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Range { .. } | Error::Tuning(_) => 2,
        Error::EvenCount { .. } => 3,
        Error::Verification { .. } | Error::ParityInconsistent { .. } | Error::Overflow => 4,
    }
}

fn parse_ratio(v: &str) -> Option<(i128, i128)> {
    match v.split_once('/') {
        Some((a, b)) => Some((a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => Some((v.trim().parse().ok()?, 1)),
    }
}

fn parse_tuning(pairs: &[String]) -> Result<Tuning, Error> {
    let mut tun = Tuning::default();
    for pair in pairs {
        let (key, value) = pair
            .split_once('=')
            .ok_or(Error::Tuning("expected KEY=VALUE, like --tune len=1/2"))?;
        let (num, den) = parse_ratio(value)
            .ok_or(Error::Tuning("tuning values are integers or fractions like 1/4"))?;
        match key.trim() {
            "len" => {
                tun.len_num = num;
                tun.len_den = den;
            }
            "cap" => {
                if den != 1 {
                    return Err(Error::Tuning("cap must be an integer"));
                }
                tun.cap_mult = num;
            }
            "eta" => {
                if num <= 0 || den <= 0 {
                    return Err(Error::Tuning("eta must be a positive fraction"));
                }
                tun.eta_max = Rational::new(num, den);
            }
            "cut" => {
                if den != 1 {
                    return Err(Error::Tuning("cut must be an integer"));
                }
                tun.cut_mult = num;
            }
            _ => return Err(Error::Tuning("unknown tuning key (len, cap, eta, cut)")),
        }
    }
    tun.validate()?;
    Ok(tun)
}

/// Parse `std::env::args`, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let tun = match parse_tuning(&cli.tune) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let outcome = if cli.threads > 0 {
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        };
        pool.install(|| dispatch(&cli.cmd, cli.json, &tun))
    } else {
        dispatch(&cli.cmd, cli.json, &tun)
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit<T: Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("record serialization"));
}

fn dispatch(cmd: &Cmd, json: bool, tun: &Tuning) -> Result<i32, Error> {
    match *cmd {
        Cmd::Dsum { n, method } => {
            let r = dsum::compute_with(n, method, tun)?;
            if json {
                emit(&DsumRecord {
                    n,
                    method: method.name(),
                    value: r.value,
                    work: r.work,
                    segments: r.segments,
                    corrections: r.corrections,
                });
            } else {
                println!(
                    "D({n}) = {}  [{}, work {}, segments {}, corrections {}]",
                    r.value,
                    method.name(),
                    r.work,
                    r.segments,
                    r.corrections
                );
            }
            Ok(0)
        }
        Cmd::DsumInterval { n_lo, n_hi, method } => {
            let r = dsum::dsum_interval_with(n_lo, n_hi, method, tun)?;
            if json {
                emit(&DsumRecord {
                    n: n_hi,
                    method: method.name(),
                    value: r.value,
                    work: r.work,
                    segments: r.segments,
                    corrections: r.corrections,
                });
            } else {
                println!(
                    "D({n_hi}) - D({n_lo}) = {}  [{}, work {}]",
                    r.value,
                    method.name(),
                    r.work
                );
            }
            Ok(0)
        }
        Cmd::SqfreeTau { x, method } => {
            let r = sqfree::squarefree_tau_sum_with(x, method, tun)?;
            if json {
                emit(&SqfreeRecord {
                    x,
                    method: method.name(),
                    value: r.value,
                    terms: r.terms,
                    work: r.work,
                });
            } else {
                println!(
                    "T({x}) = {}  [{}, {} powerful terms, work {}]",
                    r.value,
                    method.name(),
                    r.terms,
                    r.work
                );
            }
            Ok(0)
        }
        Cmd::PrimeParity { n, m_len, method } => {
            let r = primes::prime_parity_interval_with(n, m_len, method, tun)?;
            if json {
                emit(&ParityRecord {
                    n,
                    m_len,
                    mod4: r.mod4,
                    parity: r.parity,
                    terms: r.terms,
                    work: r.work,
                });
            } else {
                let flavor = if r.parity == 1 { "odd" } else { "even" };
                println!(
                    "({n}, {}] holds an {flavor} number of primes  [mod4 {}, {} terms, work {}]",
                    n + m_len,
                    r.mod4,
                    r.terms,
                    r.work
                );
            }
            Ok(0)
        }
        Cmd::FindPrime { n, method } => {
            let s = primes::find_prime_with(n, method, tun)?;
            if json {
                emit(&PrimeRecord { n, prime: s.prime, queries: s.queries, work: s.work });
            } else {
                println!("{}", s.prime);
            }
            Ok(0)
        }
        Cmd::Bench { min_exp, max_exp, samples, fit, method } => {
            bench(min_exp, max_exp, samples, fit, method, json, tun)
        }
        Cmd::Selftest => selftest(json),
    }
}

fn bench(
    min_exp: u32,
    max_exp: u32,
    samples: u32,
    fit: bool,
    method: Method,
    json: bool,
    tun: &Tuning,
) -> Result<i32, Error> {
    if !(1..=18).contains(&min_exp) || max_exp > 18 || min_exp > max_exp {
        return Err(Error::Tuning("bench exponents must satisfy 1 <= min <= max <= 18"));
    }
    if !(1..=64).contains(&samples) {
        return Err(Error::Tuning("bench samples must lie in 1..=64"));
    }
    let mut points: Vec<(f64, f64)> = Vec::new();
    for exp in min_exp..=max_exp {
        let decade = 10u64.pow(exp);
        for j in 0..samples {
            // Deterministic spread across the decade: n = decade * (1 + 9j/samples).
            let n = decade + (9 * (decade as u128) * j as u128 / samples as u128) as u64;
            let started = Instant::now();
            let r = dsum::compute_with(n, method, tun)?;
            let wall_ns = started.elapsed().as_nanos();
            points.push(((n as f64).log10(), (r.work.max(1) as f64).log10()));
            if json {
                emit(&BenchRecord {
                    kind: "bench",
                    n,
                    method: method.name(),
                    value: r.value,
                    work: r.work,
                    segments: r.segments,
                    corrections: r.corrections,
                    wall_ns,
                });
            } else {
                println!(
                    "n={n} method={} value={} work={} segments={} corrections={} wall={:.3}ms",
                    method.name(),
                    r.value,
                    r.work,
                    r.segments,
                    r.corrections,
                    wall_ns as f64 / 1e6
                );
            }
        }
    }
    if !fit {
        return Ok(0);
    }
    let mut xs: Vec<u64> = points.iter().map(|p| p.0.to_bits()).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() < 4 {
        return Err(Error::Tuning("fitting needs at least 4 distinct sample sizes"));
    }
    let (slope, intercept, r2) = least_squares(&points);
    if json {
        emit(&ExponentFit {
            kind: "fit",
            method: method.name(),
            slope,
            intercept,
            r2,
            points: points.len(),
        });
    } else {
        println!(
            "fit: work ~ n^{slope:.4}  [{} points, intercept {intercept:.3}, r2 {r2:.5}]",
            points.len()
        );
    }
    let gate = slope_gate(method);
    if slope > gate {
        eprintln!(
            "error: fitted work exponent {slope:.4} exceeds the {gate:.2} gate for method {}",
            method.name()
        );
        return Ok(5);
    }
    Ok(0)
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| {
            let e = p.1 - (slope * p.0 + intercept);
            e * e
        })
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (slope, intercept, r2)
}

fn selftest(json: bool) -> Result<i32, Error> {
    let mut failures = 0u32;
    let mut check = |label: &str, ok: bool| {
        if json {
            println!("{{\"kind\":\"selftest\",\"check\":\"{label}\",\"ok\":{ok}}}");
        } else {
            println!("{}  {label}", if ok { "ok  " } else { "FAIL" });
        }
        if !ok {
            failures += 1;
        }
    };

    check("naive D(1000) = 7069", dsum::tau_naive_sum(1000).map(|r| r.value) == Ok(7069));
    check(
        "hyperbola D(10^6) = 13970034",
        dsum::dsum_hyperbola(1_000_000).map(|r| r.value) == Ok(13_970_034),
    );
    check(
        "fast D(10^6) matches",
        dsum::dsum_fast(1_000_000).map(|r| r.value) == Ok(13_970_034),
    );
    check(
        "fast and hyperbola agree at 10^9",
        dsum::dsum_fast(1_000_000_000).map(|r| r.value).ok()
            == dsum::dsum_hyperbola(1_000_000_000).map(|r| r.value).ok(),
    );
    check(
        "T(100) = 211",
        sqfree::squarefree_tau_sum(100, Method::Fast).map(|r| r.value) == Ok(211),
    );
    check(
        "squarefree window (16,32] is 2 mod 4",
        sqfree::interval_sqfree_tau_mod4(16, 16) == Ok(2),
    );
    check(
        "(10,20] prime count is even",
        primes::prime_parity_interval(10, 10, ParityMethod::Fast).map(|r| r.parity) == Ok(0),
    );
    check(
        "parity identity matches direct sieve on (1000,1128]",
        primes::prime_parity_interval(1000, 128, ParityMethod::Fast).map(|r| r.parity).ok()
            == primes::prime_parity_interval(1000, 128, ParityMethod::Sieve)
                .map(|r| r.parity)
                .ok(),
    );
    check("find_prime(1) = 2", primes::find_prime(1) == Ok(2));
    check("find_prime(16) = 23", primes::find_prime(16) == Ok(23));
    check(
        "find_prime(10) reports the even count",
        matches!(primes::find_prime(10), Err(Error::EvenCount { n: 10 })),
    );
    check("pi(10^6) = 78498", primes::pi_sieve(1_000_000) == Ok(78_498));
    check("3215031751 is composite", !primes::is_prime(3_215_031_751));
    check("2^61 - 1 is prime", primes::is_prime((1u64 << 61) - 1));

    if failures == 0 {
        if !json {
            println!("selftest passed");
        }
        Ok(0)
    } else {
        eprintln!("error: {failures} selftest check(s) failed");
        Ok(4)
    }
}
