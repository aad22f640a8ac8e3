//! Spectra of the distance-`j` binary Hamming graphs `H(n, j)`.
//!
//! The eigenvalue attached to a character of weight `w` is `K_j(w)` with
//! multiplicity `C(n, w)`. Smallest eigenvalues are always found by an exact
//! scan over `w`; known closed forms are cross-checked against the scan, never
//! trusted on their own.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::combinatorics::{binomial, factorial, BinomialTable};
use crate::krawtchouk::{fibonacci_f_closed, krawtchouk_with_table, root_interval, scaled_coefficients};
use crate::{Error, Result};

/// Largest `n` the brute-force character oracle accepts unless overridden.
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Above this `j` the bound evaluators switch to log-space arithmetic.
pub const LOG_SPACE_THRESHOLD: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueRecord {
    pub w: usize,
    pub value: BigInt,
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingMinResult {
    pub lambda_min: BigInt,
    /// Smallest `w` attaining the minimum.
    pub argmin_w: usize,
    /// `true` when found by exhaustive scan, `false` when read off a closed form.
    pub scanned: bool,
}

fn check_j(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::range("j", format!("need 1 <= j <= n, got n = {n}, j = {j}")));
    }
    Ok(())
}

/// One record per weight `w = 0..=n`.
pub fn spectrum(n: usize, j: usize) -> Result<Vec<EigenvalueRecord>> {
    check_j(n, j)?;
    let table = BinomialTable::new(n);
    Ok((0..=n)
        .map(|w| EigenvalueRecord {
            w,
            value: krawtchouk_with_table(&table, n, j, w),
            multiplicity: table.get(n, w as i64).clone(),
        })
        .collect())
}

/// What the known closed forms predict for `lambda_min(H(n, j))`, if any
/// applies: odd `j`, even `j >= n/2`, or `j = 2`.
pub fn closed_form_min(n: usize, j: usize) -> Option<(BigInt, &'static str)> {
    let k = |x: usize| crate::krawtchouk::krawtchouk_eval(n, j, x).ok();
    if j % 2 == 1 {
        return Some((-binomial(n as i64, j as i64), "odd j: K_j(n) = -C(n,j)"));
    }
    if 2 * j > n {
        return k(1).map(|v| (v, "even j > n/2: K_j(1)"));
    }
    if 2 * j == n {
        return k(2).map(|v| (v, "even j = n/2: K_j(2)"));
    }
    if j == 2 {
        return Some((BigInt::from(-((n / 2) as i64)), "j = 2: -floor(n/2)"));
    }
    None
}

/// Exact `lambda_min(H(n, j))` by scanning every `w`, cross-checked against
/// [`closed_form_min`] where one applies.
pub fn lambda_min_exact(n: usize, j: usize) -> Result<HammingMinResult> {
    check_j(n, j)?;
    let table = BinomialTable::new(n);
    let mut best: Option<(BigInt, usize)> = None;
    for w in 0..=n {
        let v = krawtchouk_with_table(&table, n, j, w);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, w));
        }
    }
    let (lambda_min, argmin_w) = best.expect("w ranges over a non-empty set");
    if let Some((expected, label)) = closed_form_min(n, j) {
        if expected != lambda_min {
            return Err(Error::Inconsistent(format!(
                "H({n},{j}): scan gives {lambda_min}, {label} gives {expected}"
            )));
        }
    }
    Ok(HammingMinResult {
        lambda_min,
        argmin_w,
        scanned: true,
    })
}

/// `j = 4`: the continuous envelope `-n^2/4 + 3n/4 - 2/3` together with
/// `min(K_4(floor x0), K_4(ceil x0))`, `x0 = (n - sqrt(3n - 4)) / 2`.
pub fn lambda_min_j4_closed(n: usize) -> Result<(f64, HammingMinResult)> {
    if n < 9 {
        return Err(Error::range("n", format!("need n >= 9 for j = 4 < n/2, got {n}")));
    }
    let nf = n as f64;
    let envelope = -nf * nf / 4.0 + 3.0 * nf / 4.0 - 2.0 / 3.0;
    let x0 = (nf - (3.0 * nf - 4.0).sqrt()) / 2.0;
    let table = BinomialTable::new(n);
    let lo = x0.floor() as usize;
    let hi = x0.ceil() as usize;
    let v_lo = krawtchouk_with_table(&table, n, 4, lo);
    let v_hi = krawtchouk_with_table(&table, n, 4, hi);
    let (lambda_min, argmin_w) = if v_hi < v_lo { (v_hi, hi) } else { (v_lo, lo) };
    Ok((
        envelope,
        HammingMinResult {
            lambda_min,
            argmin_w,
            scanned: false,
        },
    ))
}

/// Brute-force `sum_{wt(v) = j} (-1)^{w . v}` with the representative
/// `w = 1^w 0^{n-w}`.
pub fn char_sum_oracle(n: usize, j: usize, w: usize) -> Result<BigInt> {
    char_sum_oracle_with_cap(n, j, w, DEFAULT_ORACLE_CAP)
}

pub fn char_sum_oracle_with_cap(n: usize, j: usize, w: usize, cap: usize) -> Result<BigInt> {
    if w > n {
        return Err(Error::range("w", format!("w = {w} not in [0, {n}]")));
    }
    let rep: Vec<bool> = (0..n).map(|i| i < w).collect();
    char_sum_oracle_at(&rep, j, cap)
}

/// Same sum against an arbitrary representative vector.
pub fn char_sum_oracle_at(w_vec: &[bool], j: usize, cap: usize) -> Result<BigInt> {
    let n = w_vec.len();
    if n > cap || n > 63 {
        return Err(Error::OracleCap { n, cap: cap.min(63) });
    }
    if j > n {
        return Err(Error::range("j", format!("j = {j} not in [0, {n}]")));
    }
    let w_mask: u64 = w_vec
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |m, (i, _)| m | (1 << i));
    let mut acc: i64 = 0;
    for v in WeightMasks::new(n, j) {
        if (v & w_mask).count_ones() % 2 == 0 {
            acc += 1;
        } else {
            acc -= 1;
        }
    }
    Ok(BigInt::from(acc))
}

/// All `n`-bit masks of popcount `j`, in increasing order (Gosper's hack).
struct WeightMasks {
    next: Option<u64>,
    limit: u64,
}

impl WeightMasks {
    fn new(n: usize, j: usize) -> Self {
        let first = if j == 0 { 0 } else { (1u64 << j) - 1 };
        Self {
            next: Some(first),
            limit: 1u64 << n,
        }
    }
}

impl Iterator for WeightMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next.take()?;
        if cur >= self.limit {
            return None;
        }
        if cur != 0 {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// `log2 |x|` for big integers without overflowing `f64`.
pub(crate) fn big_log2(x: &BigInt) -> f64 {
    let x = x.abs();
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top: BigInt = &x >> shift;
    top.to_f64().expect("64-bit value").log2() + shift as f64
}

fn log2_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp2()).sum::<f64>().log2()
}

fn log2_factorial(j: usize) -> f64 {
    (2..=j).map(|k| (k as f64).log2()).sum()
}

/// `log2` of [`lb_bound_fixed_j`].
pub fn lb_bound_fixed_j_log2(n: usize, j: usize) -> Result<f64> {
    let (_, r1) = root_interval(n, j)?;
    let m = scaled_coefficients(n, j)?;
    let log_fact = log2_factorial(j);
    let lr = r1.log2();
    let terms: Vec<f64> = (0..=j / 2)
        .map(|k| big_log2(&m[2 * k]) - log_fact + (j - 2 * k) as f64 * lr)
        .collect();
    Ok(log2_sum(&terms))
}

/// `sum_{k=0}^{j/2} |L_{2k}(j)| r1^{j-2k}`: an upper bound on `|q_j(x)|`
/// over the root interval, hence on `|lambda_min(H(n, j))|`.
pub fn lb_bound_fixed_j(n: usize, j: usize) -> Result<f64> {
    if j > LOG_SPACE_THRESHOLD {
        return lb_bound_fixed_j_log2(n, j).map(f64::exp2);
    }
    let (_, r1) = root_interval(n, j)?;
    let m = scaled_coefficients(n, j)?;
    let fact = factorial(j).to_f64().expect("j! fits in f64 for j <= 40");
    Ok((0..=j / 2)
        .map(|k| m[2 * k].abs().to_f64().expect("finite") / fact * r1.powi((j - 2 * k) as i32))
        .sum())
}

/// `j = alpha n` rounded to the nearest even integer.
pub fn even_j_for(n: usize, alpha: f64) -> usize {
    ((alpha * n as f64 / 2.0).round() as usize) * 2
}

/// `log2` of [`lb_bound_theta`].
pub fn lb_bound_theta_log2(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0 / 3.0) {
        return Err(Error::range("alpha", format!("need 0 < alpha < 1/3, got {alpha}")));
    }
    let j = even_j_for(n, alpha);
    if j == 0 {
        return Err(Error::range("alpha", format!("alpha n = {} rounds to j = 0", alpha * n as f64)));
    }
    // The coefficient estimate needs the realised ratio j/n below 1/3 as well.
    let a = j as f64 / n as f64;
    if a >= 1.0 / 3.0 {
        return Err(Error::range(
            "alpha",
            format!("rounded j = {j} gives j/n = {a} >= 1/3 at n = {n}"),
        ));
    }
    let c = (a * (1.0 - a)).sqrt();
    let log_fib = if j <= LOG_SPACE_THRESHOLD {
        fibonacci_f_closed(j, 0.25).log2()
    } else {
        let s = 2f64.sqrt();
        let ratio = ((1.0 - s) / (1.0 + s)).abs().powi(j as i32 + 1);
        let sign = if (j + 1) % 2 == 0 { -1.0 } else { 1.0 };
        (j + 1) as f64 * ((1.0 + s) / 2.0).log2() - s.log2() + (1.0 - sign * ratio).log2()
    };
    Ok(j as f64 * (2.0 * c * n as f64).log2() - log2_factorial(j) + log_fib)
}

/// `(2 C n)^j / j! * ((1 + sqrt 2)^{j+1} - (1 - sqrt 2)^{j+1}) / (2^{j+1} sqrt 2)`
/// with `C = sqrt(a (1 - a))`, `a = j / n`, and `j` the even rounding of `alpha n`.
pub fn lb_bound_theta(n: usize, alpha: f64) -> Result<f64> {
    lb_bound_theta_log2(n, alpha).map(f64::exp2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krawtchouk::krawtchouk_eval;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn spectrum_n8_j4() {
        let spec = spectrum(8, 4).unwrap();
        let values: Vec<_> = spec.iter().map(|r| r.value.clone()).collect();
        let expected: Vec<_> = [70, 0, -10, 0, 6, 0, -10, 0, 70].iter().map(|&v| big(v)).collect();
        assert_eq!(values, expected);
        let trace: BigInt = spec.iter().map(|r| &r.multiplicity * &r.value).sum();
        assert!(trace.is_zero());
    }

    #[test]
    fn spectrum_j_equals_n() {
        for n in 1..10 {
            for r in spectrum(n, n).unwrap() {
                assert_eq!(r.value, big(if r.w % 2 == 0 { 1 } else { -1 }));
            }
        }
    }

    #[test]
    fn spectrum_record_invariants() {
        for n in 1..=20usize {
            for j in 1..=n {
                let spec = spectrum(n, j).unwrap();
                assert_eq!(spec.len(), n + 1);
                let mass: BigInt = spec.iter().map(|r| r.multiplicity.clone()).sum();
                assert_eq!(mass, big(2).pow(n as u32));
                let trace: BigInt = spec.iter().map(|r| &r.multiplicity * &r.value).sum();
                assert!(trace.is_zero());
            }
        }
    }

    #[test]
    fn range_errors() {
        assert!(spectrum(5, 0).is_err());
        assert!(spectrum(5, 6).is_err());
        assert!(lambda_min_exact(5, 0).is_err());
        assert!(lambda_min_j4_closed(8).is_err());
    }

    #[test]
    fn lambda_min_examples() {
        assert_eq!(
            lambda_min_exact(6, 2).unwrap(),
            HammingMinResult { lambda_min: big(-3), argmin_w: 3, scanned: true }
        );
        let r = lambda_min_exact(8, 4).unwrap();
        assert_eq!((r.lambda_min, r.argmin_w), (big(-10), 2));
        let r = lambda_min_exact(9, 3).unwrap();
        assert_eq!((r.lambda_min, r.argmin_w), (big(-84), 9));
    }

    #[test]
    fn argmin_is_smallest_attaining_w() {
        for n in 1..=24usize {
            for j in 1..=n {
                let r = lambda_min_exact(n, j).unwrap();
                assert_eq!(krawtchouk_eval(n, j, r.argmin_w).unwrap(), r.lambda_min);
                for w in 0..r.argmin_w {
                    assert!(krawtchouk_eval(n, j, w).unwrap() > r.lambda_min);
                }
            }
        }
    }

    #[test]
    fn odd_j_regime() {
        for n in 1..=28usize {
            for j in (1..=n).step_by(2) {
                let r = lambda_min_exact(n, j).unwrap();
                assert_eq!(r.lambda_min, -binomial(n as i64, j as i64));
                assert_eq!(krawtchouk_eval(n, j, r.argmin_w).unwrap(), r.lambda_min);
                if j < n {
                    assert_eq!(r.argmin_w, n);
                }
            }
        }
    }

    #[test]
    fn j4_closed_form() {
        let (env, _) = lambda_min_j4_closed(20).unwrap();
        assert!((env - (-100.0 + 15.0 - 2.0 / 3.0)).abs() < 1e-12);
        let (_, r) = lambda_min_j4_closed(9).unwrap();
        let k2 = krawtchouk_eval(9, 4, 2).unwrap();
        let k3 = krawtchouk_eval(9, 4, 3).unwrap();
        assert_eq!(r.lambda_min, k2.min(k3));
        assert!(!r.scanned);
        for n in 9..=40 {
            let (env, r) = lambda_min_j4_closed(n).unwrap();
            let exact = lambda_min_exact(n, 4).unwrap();
            assert_eq!(r.lambda_min, exact.lambda_min, "n={n}");
            assert!(exact.lambda_min.to_f64().unwrap() >= env, "n={n}");
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(char_sum_oracle(4, 2, 1).unwrap(), big(0));
        assert_eq!(char_sum_oracle(8, 4, 2).unwrap(), big(-10));
        for n in 0..=10 {
            for j in 0..=n {
                assert_eq!(char_sum_oracle(n, j, 0).unwrap(), binomial(n as i64, j as i64));
            }
        }
        assert!(matches!(char_sum_oracle(17, 2, 1), Err(Error::OracleCap { .. })));
        assert!(char_sum_oracle_with_cap(17, 2, 1, 20).is_ok());
    }

    #[test]
    fn oracle_is_independent_of_representative() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for n in 1..=12usize {
            for w in 0..=n {
                let mut rep: Vec<bool> = (0..n).map(|i| i < w).collect();
                rep.shuffle(&mut rng);
                for j in 0..=n {
                    assert_eq!(
                        char_sum_oracle_at(&rep, j, DEFAULT_ORACLE_CAP).unwrap(),
                        char_sum_oracle(n, j, w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn weight_masks_count() {
        for n in 0..=12 {
            for j in 0..=n {
                let masks: Vec<u64> = WeightMasks::new(n, j).collect();
                assert_eq!(big(masks.len() as i64), binomial(n as i64, j as i64));
                assert!(masks.iter().all(|m| m.count_ones() as usize == j));
            }
        }
    }

    #[test]
    fn fixed_j_bound_basics() {
        let b = lb_bound_fixed_j(100, 4).unwrap();
        assert!(b > 0.0 && b < binomial(100, 4).to_f64().unwrap());
        assert!(lb_bound_fixed_j(8, 4).is_err());
        let log = lb_bound_fixed_j_log2(100, 4).unwrap();
        assert!((log.exp2() - b).abs() < 1e-9 * b);
    }

    #[test]
    fn fixed_j_bound_scaling() {
        let ratio = |n: usize| lb_bound_fixed_j(n, 4).unwrap() / (n as f64).powi(2);
        let (a, b) = (ratio(10_000), ratio(100_000));
        assert!(((a - b) / b).abs() < 0.1, "{a} vs {b}");
    }

    #[test]
    fn fixed_j_log_space_agrees_with_direct() {
        for j in (4..=40).step_by(2) {
            let n = 3 * j;
            let direct = lb_bound_fixed_j(n, j).unwrap();
            let log = lb_bound_fixed_j_log2(n, j).unwrap();
            assert!((direct.log2() - log).abs() < 1e-9, "j={j}");
        }
        assert!(lb_bound_fixed_j(200, 60).unwrap().is_finite());
    }

    #[test]
    fn theta_bound_rate() {
        let alpha: f64 = 0.1;
        let rate = lb_bound_theta_log2(1000, alpha).unwrap() / 1000.0;
        let k = std::f64::consts::E * (1.0 + 2f64.sqrt()) * ((1.0 - alpha) / alpha).sqrt();
        assert!((rate - alpha * k.log2()).abs() < 0.02, "rate {rate}");
    }

    #[test]
    fn theta_bound_monotone_in_j() {
        let n = 60;
        let values: Vec<f64> = (2..=18)
            .step_by(2)
            .map(|j| lb_bound_theta(n, j as f64 / n as f64).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "{values:?}");
    }

    #[test]
    fn theta_bound_errors() {
        assert!(lb_bound_theta(30, 0.34).is_err());
        assert!(lb_bound_theta(30, 0.0).is_err());
        assert!(lb_bound_theta(10, 0.01).is_err());
        assert!(lb_bound_theta(10, 0.3).is_err());
        assert_eq!(even_j_for(24, 1.0 / 6.0), 4);
    }

    #[test]
    fn theta_log_branches_agree() {
        // Both Fibonacci evaluations should coincide at the threshold.
        for j in [38usize, 40, 42, 44] {
            let n = 4 * j;
            let v = lb_bound_theta_log2(n, j as f64 / n as f64).unwrap();
            let s = 2f64.sqrt();
            let c = (0.25f64 * 0.75).sqrt();
            let direct = j as f64 * (2.0 * c * n as f64).log2() - log2_factorial(j)
                + (((1.0 + s) / 2.0).powi(j as i32 + 1) - ((1.0 - s) / 2.0).powi(j as i32 + 1)).log2()
                - s.log2();
            assert!((v - direct).abs() < 1e-9, "j={j}");
        }
    }

    #[test]
    fn big_log2_large_values() {
        let x = BigInt::from(3u8).pow(2000);
        assert!((big_log2(&x) - 2000.0 * 3f64.log2()).abs() < 1e-6);
        assert_eq!(big_log2(&BigInt::zero()), f64::NEG_INFINITY);
    }
}
