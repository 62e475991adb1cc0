//! Exact integer and rational arithmetic: the substrate everything else sits on.
//!
//! All quantities live in `WideInt` (signed 128-bit). Inputs to the public
//! divisor-sum operations are capped at 10^18, which leaves every intermediate
//! here far below the 2^127 magnitude limit; the few places where a compound
//! product could conceivably overflow use checked arithmetic and either report
//! [`Error::Overflow`] or panic with a message rather than wrap.

use crate::Error;

/// Signed integer with magnitude below 2^127. Arithmetic on these values is
/// exact or signals overflow; it never wraps silently.
pub type WideInt = i128;

/// Floor of the square root: the unique `r >= 0` with `r^2 <= n < (r+1)^2`.
///
/// Integer Newton iteration; exact over the whole nonnegative `WideInt` range.
pub fn isqrt(n: WideInt) -> WideInt {
    assert!(n >= 0, "isqrt: negative argument");
    let n = n as u128;
    if n < 2 {
        return n as i128;
    }
    // Start above the root, descend; the iteration is monotone once above.
    let mut x = 1u128 << ((128 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x as i128;
        }
        x = y;
    }
}

/// Floor of the cube root: the unique `r >= 0` with `r^3 <= n < (r+1)^3`.
pub fn icbrt(n: WideInt) -> WideInt {
    assert!(n >= 0, "icbrt: negative argument");
    let n = n as u128;
    // cbrt(2^127) < 5_541_191_377_757, so mid^3 below never overflows u128.
    let (mut lo, mut hi) = (0u128, 5_541_191_377_757u128);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid * mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo as i128
}

/// `sum_{i=0}^{n-1} floor((a*i + b) / q)` in `O(log max(|a|, q))` arithmetic
/// steps, by the Euclidean exchange argument. `q >= 1`; `a`, `b` may be
/// negative (handled by index reversal and a constant shift).
pub fn floor_sum(n: WideInt, a: WideInt, b: WideInt, q: WideInt) -> Result<WideInt, Error> {
    floor_sum_counted(n, a, b, q).map(|(v, _)| v)
}

/// As [`floor_sum`], also reporting the number of arithmetic operations spent.
pub(crate) fn floor_sum_counted(
    n: WideInt,
    a: WideInt,
    b: WideInt,
    q: WideInt,
) -> Result<(WideInt, u64), Error> {
    assert!(n >= 0, "floor_sum: n must be nonnegative");
    assert!(q >= 1, "floor_sum: q must be positive");
    if n == 0 {
        return Ok((0, 1));
    }
    let mut work = 2u64;
    let (mut a, mut b) = (a, b);
    let mut acc: i128 = 0;
    if a < 0 {
        // Reverse the index: sum over i of (a*i+b) equals sum over j=n-1-i
        // of (|a|*j + b + a*(n-1)).
        b = b
            .checked_add(a.checked_mul(n - 1).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        a = -a;
        work += 2;
    }
    if b < 0 {
        // Shift b into [0, q); each term moves by the same integer s.
        let s = b.div_euclid(q);
        acc = s.checked_mul(n).ok_or(Error::Overflow)?;
        b -= s * q;
        work += 3;
    }
    let (mut n, mut q) = (n, q);
    loop {
        if a >= q {
            // Split off the integer part of the slope.
            let tri = n.checked_mul(n - 1).ok_or(Error::Overflow)? / 2;
            acc = acc
                .checked_add(tri.checked_mul(a / q).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
            a %= q;
        }
        if b >= q {
            acc = acc
                .checked_add(n.checked_mul(b / q).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
            b %= q;
        }
        work += 8;
        // Largest attained numerator; everything below q contributes 0.
        let m = a.checked_mul(n).ok_or(Error::Overflow)?.checked_add(b).ok_or(Error::Overflow)?;
        if m < q {
            return Ok((acc, work));
        }
        // Transpose the lattice-point count and continue on the remainder.
        n = m / q;
        b = m % q;
        std::mem::swap(&mut a, &mut q);
    }
}

pub(crate) fn gcd_counted(mut a: i128, mut b: i128) -> (i128, u64) {
    let mut steps = 1u64;
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
        steps += 1;
    }
    (a, steps)
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    gcd_counted(a, b).0
}

/// Inverse of `a` modulo `m` (`m >= 1`, `gcd(a, m) = 1`), plus the step count.
/// For `m = 1` the inverse is 0.
pub(crate) fn mod_inverse_counted(a: i128, m: i128) -> (i128, u64) {
    debug_assert!(m >= 1);
    if m == 1 {
        return (0, 1);
    }
    // Extended Euclid, tracking only the coefficient of a.
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    let mut steps = 1u64;
    while r != 0 {
        let k = old_r / r;
        (old_r, r) = (r, old_r - k * r);
        (old_s, s) = (s, old_s - k * s);
        steps += 2;
    }
    debug_assert!(old_r == 1, "mod_inverse: arguments not coprime");
    (old_s.rem_euclid(m), steps)
}

/// Reduced fraction with `WideInt` parts. `den >= 1` and `gcd(num, den) = 1`
/// always hold. Arithmetic is exact; on overflow it panics rather than wraps
/// (the checked_* methods report `None` instead).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Rational {
        assert!(den != 0, "Rational: zero denominator");
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub fn zero() -> Rational {
        Rational { num: 0, den: 1 }
    }

    pub fn from_int(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn abs(&self) -> Rational {
        Rational { num: self.num.abs(), den: self.den }
    }

    pub fn checked_add(&self, rhs: &Rational) -> Option<Rational> {
        let num = self
            .num
            .checked_mul(rhs.den)?
            .checked_add(rhs.num.checked_mul(self.den)?)?;
        let den = self.den.checked_mul(rhs.den)?;
        Some(Rational::new(num, den))
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Option<Rational> {
        self.checked_add(&Rational { num: rhs.num.checked_neg()?, den: rhs.den })
    }

    pub fn checked_mul(&self, rhs: &Rational) -> Option<Rational> {
        // Cross-reduce first to keep the products small.
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = (self.num / g1).checked_mul(rhs.num / g2)?;
        let den = (self.den / g2).checked_mul(rhs.den / g1)?;
        Some(Rational::new(num, den))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.num == 0 {
            return None;
        }
        self.checked_mul(&Rational::new(rhs.den, rhs.num))
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(&rhs).expect("Rational add overflow")
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.checked_sub(&rhs).expect("Rational sub overflow")
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.checked_mul(&rhs).expect("Rational mul overflow")
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self.checked_div(&rhs).expect("Rational div overflow or zero divisor")
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> std::cmp::Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        let lhs = self.num.checked_mul(other.den).expect("Rational cmp overflow");
        let rhs = other.num.checked_mul(self.den).expect("Rational cmp overflow");
        lhs.cmp(&rhs)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A rational approximation `a/q` to some target, with `q` below a caller
/// chosen cap and `err_bound` the exact distance `|target - a/q|`. Produced by
/// [`best_rational`], which guarantees the Dirichlet quality
/// `q * Q * err_bound <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CFApprox {
    pub a: i128,
    pub q: i128,
    pub err_bound: Rational,
}

/// Best usable rational approximation `a/q` to `beta` with `q <= q_max`,
/// taken from the continued-fraction convergents of `beta`.
///
/// The last convergent with denominator within the cap satisfies
/// `|beta - a/q| <= 1/(q * q_next) < 1/(q * q_max)` whenever the expansion
/// continues past the cap, and is exact when it does not; either way
/// `q * q_max * |beta - a/q| <= 1`. The procedure is integer-only and fully
/// deterministic, so equal-error ties always resolve the same way (toward the
/// earlier convergent: smaller denominator, then smaller numerator).
pub fn best_rational(beta: Rational, q_max: i128) -> CFApprox {
    best_rational_counted(beta, q_max).0
}

pub(crate) fn best_rational_counted(beta: Rational, q_max: i128) -> (CFApprox, u64) {
    assert!(q_max >= 1, "best_rational: q_max must be positive");
    let mut work = 4u64;
    let a0 = beta.num().div_euclid(beta.den());
    let (mut p_prev, mut q_prev) = (1i128, 0i128);
    let (mut p_cur, mut q_cur) = (a0, 1i128);
    // Euclid on (den, num - a0*den) yields the partial quotients.
    let mut x = beta.den();
    let mut r = beta.num() - a0 * beta.den();
    while r != 0 {
        let k = x / r;
        work += 6;
        // Convergent recurrence; an overflowing denominator is necessarily
        // past the cap, so stopping there is correct.
        let q_next = match k.checked_mul(q_cur).and_then(|v| v.checked_add(q_prev)) {
            Some(v) if v <= q_max => v,
            _ => break,
        };
        let p_next = k
            .checked_mul(p_cur)
            .and_then(|v| v.checked_add(p_prev))
            .expect("best_rational: numerator overflow");
        (p_prev, q_prev) = (p_cur, q_cur);
        (p_cur, q_cur) = (p_next, q_next);
        let r_next = x - k * r;
        x = r;
        r = r_next;
    }
    let err = (beta - Rational::new(p_cur, q_cur)).abs();
    work += 6;
    (CFApprox { a: p_cur, q: q_cur, err_bound: err }, work)
}
