//! Bounds on the quantum chromatic number `chi_q` of `H(n, j)` and `G(r, s)`.
//!
//! Lower bounds come from the spectral inequality `chi_q >= 1 - lambda_max / lambda_min`,
//! evaluated in exact rational arithmetic. Upper bounds are the known closed
//! forms for `H(n, j)` and the `n = 2(r + s)` bound for `G(r, s)`.

use std::f64::consts::{E, SQRT_2};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::combinatorics::{binary_entropy, binomial};
use crate::hamming_spectrum::{lambda_min_exact, lb_bound_fixed_j, lb_bound_theta};
use crate::z4_spectrum::{lambda_min_scan, valency};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphId {
    Hamming { n: usize, j: usize },
    Z4 { r: usize, s: usize },
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphId::Hamming { n, j } => write!(f, "H({n},{j})"),
            GraphId::Z4 { r, s } => write!(f, "G({r},{s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub graph_id: GraphId,
    pub lambda_max: BigInt,
    pub lambda_min: BigInt,
    /// `ceil(1 - lambda_max / lambda_min)`.
    pub spectral_lb: BigInt,
    pub upper_bounds: Vec<(String, f64)>,
    /// `1 + lambda_max / B` for each analytic bound `B >= |lambda_min|`.
    pub asymptotic_lbs: Vec<(String, f64)>,
    /// Some upper bound equals `spectral_lb`, which pins `chi_q`.
    pub equality: bool,
    pub notes: Vec<String>,
}

/// `ceil(1 - lambda_max / lambda_min)`; needs `lambda_min < 0 < lambda_max`.
pub fn spectral_lower_bound(lambda_max: &BigInt, lambda_min: &BigInt) -> Result<BigInt> {
    if !(lambda_min.is_negative() && lambda_max.is_positive()) {
        return Err(Error::Domain(format!(
            "spectral bound needs lambda_min < 0 < lambda_max, got ({lambda_max}, {lambda_min})"
        )));
    }
    let ratio = BigRational::new(lambda_max.clone(), lambda_min.clone());
    Ok((BigRational::from_integer(BigInt::from(1)) - ratio).ceil().to_integer())
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2 has a divisor");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// `n = 2^t` with `t >= 3`, or `n = 3 (mod 4)` a prime power: the lengths
/// where `chi_q(H(n, 2)) <= n + 1` is known.
pub fn j2_family(n: usize) -> bool {
    (n >= 8 && n.is_power_of_two()) || (n % 4 == 3 && is_prime_power(n))
}

/// Known upper bounds on `chi_q(H(n, j))` for even `j`, one entry per branch
/// that applies. The exponential branch is reported as its rate
/// `h(1/2 - sqrt(a (1 - a)))`, `a = j / n`, i.e. `log2` of the bound per
/// coordinate with the `o(n)` term dropped.
pub fn hamming_chiq_ub(n: usize, j: usize) -> Result<Vec<(String, f64)>> {
    if j == 0 || j > n || j % 2 == 1 {
        return Err(Error::range("j", format!("need even 1 <= j <= n = {n}, got {j}")));
    }
    let mut out = Vec::new();
    let (nf, jf) = (n as f64, j as f64);
    if 2 * j >= n {
        out.push(("2j".to_string(), 2.0 * jf));
    }
    if 2 * j < n && nf / 2.0 - nf.sqrt() / 2.0 < jf {
        out.push(("2C(n,2)".to_string(), nf * (nf - 1.0)));
    }
    if 2 * j < n {
        let a = jf / nf;
        out.push(("exp_rate_log2".to_string(), binary_entropy(0.5 - (a * (1.0 - a)).sqrt())?));
    }
    if j == 2 && j2_family(n) {
        out.push(("n+1".to_string(), nf + 1.0));
    }
    Ok(out)
}

/// Spectral lower bound on `chi_q(H(n, j))` from the exact `lambda_min`,
/// with the analytic bounds attached when `j` is even and `4 <= j < n / 2`.
pub fn hamming_chiq_lb(n: usize, j: usize) -> Result<BoundReport> {
    if j == 0 || j > n {
        return Err(Error::range("j", format!("need 1 <= j <= n = {n}, got {j}")));
    }
    let lambda_max = binomial(n as i64, j as i64);
    let min = lambda_min_exact(n, j)?;
    let spectral_lb = spectral_lower_bound(&lambda_max, &min.lambda_min)?;
    let mut notes = vec![format!("lambda_min attained at weight {}", min.argmin_w)];
    let mut asymptotic_lbs = Vec::new();
    if j % 2 == 1 {
        notes.push("odd j: bipartite, lambda_min = -lambda_max".to_string());
    }
    if j % 2 == 0 && j >= 4 && 2 * j < n {
        let d = lambda_max.to_f64().unwrap_or(f64::INFINITY);
        asymptotic_lbs.push(("fixed_j".to_string(), 1.0 + d / lb_bound_fixed_j(n, j)?));
        if 3 * j < n {
            let theta = lb_bound_theta(n, j as f64 / n as f64)?;
            asymptotic_lbs.push(("theta".to_string(), 1.0 + d / theta));
        }
    }
    let upper_bounds = if j % 2 == 0 {
        hamming_chiq_ub(n, j)?
    } else {
        vec![("bipartite".to_string(), 2.0)]
    };
    if j % 2 == 0 && 2 * j > n {
        let known = 2.0 * j as f64 / (2 * j - n) as f64;
        notes.push(format!("known lower bound 2j/(2j-n) = {known}"));
    }
    let equality = meets(&spectral_lb, &upper_bounds);
    Ok(BoundReport {
        graph_id: GraphId::Hamming { n, j },
        lambda_max,
        lambda_min: min.lambda_min,
        spectral_lb,
        upper_bounds,
        asymptotic_lbs,
        equality,
        notes,
    })
}

fn meets(lb: &BigInt, upper: &[(String, f64)]) -> bool {
    let lb = lb.to_f64().unwrap_or(f64::INFINITY);
    upper
        .iter()
        .filter(|(name, _)| !name.starts_with("exp_rate"))
        .any(|(_, v)| *v == lb)
}

/// Spectral lower bound on `chi_q(G(r, s))` from an exhaustive scan, against
/// the upper bound `n = 2(r + s)`.
pub fn z4_chiq(r: usize, s: usize) -> Result<BoundReport> {
    let n = 2 * (r + s);
    if n < 4 {
        return Err(Error::range("(r, s)", format!("need n = 2(r+s) >= 4, got {n}")));
    }
    let lambda_max = valency(r, s);
    let scan = lambda_min_scan(r, s)?;
    let spectral_lb = spectral_lower_bound(&lambda_max, &scan.lambda_min)?;
    let upper_bounds = vec![("n".to_string(), n as f64)];
    let equality = meets(&spectral_lb, &upper_bounds);
    let mut notes = vec![format!(
        "lambda_min attained at {}",
        scan.argmin_types.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    )];
    if scan.matches_formula {
        notes.push("lambda_min = -C(n; r,s,r,s)/(n-1)".to_string());
    }
    Ok(BoundReport {
        graph_id: GraphId::Z4 { r, s },
        lambda_max,
        lambda_min: scan.lambda_min,
        spectral_lb,
        upper_bounds,
        asymptotic_lbs: Vec::new(),
        equality,
        notes,
    })
}

/// `e (1 + sqrt 2)`, about 6.563.
pub fn growth_constant() -> f64 {
    E * (1.0 + SQRT_2)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("need 0 < alpha < 1/2, got {alpha}")))
    }
}

/// `2^{h(a)} / (e (1 + sqrt 2) sqrt(a (1 - a)))^a`, the base of the lower bound
/// as tabulated.
pub fn l_tabulated(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let base = growth_constant() * (alpha * (1.0 - alpha)).sqrt();
    Ok(binary_entropy(alpha)?.exp2() / base.powf(alpha))
}

/// `2^{h(a)} / (e (1 + sqrt 2) sqrt((1 - a) / a))^a`; exceeds 1 exactly when
/// [`region_alpha_holds`].
pub fn l_rate(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let base = growth_constant() * ((1.0 - alpha) / alpha).sqrt();
    Ok(binary_entropy(alpha)?.exp2() / base.powf(alpha))
}

/// `2^{h(1/2 - sqrt(a (1 - a)))}`.
pub fn u(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(binary_entropy(0.5 - (alpha * (1.0 - alpha)).sqrt())?.exp2())
}

/// `a log2(e (1 + sqrt 2) sqrt((1 - a) / a)) < h(a)`.
pub fn region_alpha_holds(alpha: f64) -> Result<bool> {
    check_alpha(alpha)?;
    let lhs = alpha * (growth_constant() * ((1.0 - alpha) / alpha).sqrt()).log2();
    Ok(lhs < binary_entropy(alpha)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuRow {
    pub alpha: f64,
    pub l: f64,
    pub u: f64,
    pub l_rate: f64,
}

/// Round to 3 decimals, ties to even.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round_ties_even() / 1000.0
}

/// `0.01, 0.02, ..., 0.17`.
pub fn default_alphas() -> Vec<f64> {
    (1..=17).map(|k| k as f64 / 100.0).collect()
}

/// Unrounded `(alpha, l, u)` rows; render with [`round3`].
pub fn lu_table(alphas: &[f64]) -> Result<Vec<LuRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            Ok(LuRow {
                alpha,
                l: l_tabulated(alpha)?,
                u: u(alpha)?,
                l_rate: l_rate(alpha)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn spectral_examples() {
        assert_eq!(spectral_lower_bound(&big(70), &big(-10)).unwrap(), big(8));
        assert_eq!(spectral_lower_bound(&big(207_900), &big(-18_900)).unwrap(), big(12));
        assert_eq!(spectral_lower_bound(&big(5), &big(-5)).unwrap(), big(2));
        assert_eq!(spectral_lower_bound(&big(10), &big(-3)).unwrap(), big(5));
        assert!(spectral_lower_bound(&big(10), &big(3)).is_err());
        assert!(spectral_lower_bound(&big(-1), &big(-3)).is_err());
        assert!(spectral_lower_bound(&big(1), &big(0)).is_err());
    }

    proptest! {
        #[test]
        fn spectral_monotone(d in 1i64..10_000, m in 1i64..10_000, extra in 0i64..10_000) {
            let a = spectral_lower_bound(&big(d), &big(-m)).unwrap();
            let b = spectral_lower_bound(&big(d), &big(-m - extra)).unwrap();
            prop_assert!(b <= a);
            prop_assert!(b >= big(2) || m + extra > d);
        }
    }

    #[test]
    fn hamming_lb_examples() {
        let rep = hamming_chiq_lb(8, 4).unwrap();
        assert_eq!(rep.spectral_lb, big(8));
        assert_eq!(rep.lambda_min, big(-10));
        assert!(rep.equality);
        for n in 3..=14 {
            for j in (1..=n).step_by(2) {
                let rep = hamming_chiq_lb(n, j).unwrap();
                assert_eq!(rep.spectral_lb, big(2), "n={n} j={j}");
            }
        }
        for t in 1..=3usize {
            let n = 4 * t;
            assert_eq!(hamming_chiq_lb(n, n / 2).unwrap().spectral_lb, big(n as i64));
        }
        assert!(hamming_chiq_lb(5, 0).is_err());
        assert!(hamming_chiq_lb(5, 6).is_err());
    }

    #[test]
    fn hamming_lb_attaches_asymptotics() {
        let rep = hamming_chiq_lb(24, 4).unwrap();
        let names: Vec<_> = rep.asymptotic_lbs.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(names, ["fixed_j", "theta"]);
        let exact = rep.spectral_lb.to_f64().unwrap();
        for (_, v) in &rep.asymptotic_lbs {
            assert!(*v <= exact, "{v} > {exact}");
        }
        assert!(hamming_chiq_lb(8, 4).unwrap().asymptotic_lbs.is_empty());
        assert!(hamming_chiq_lb(12, 2).unwrap().asymptotic_lbs.is_empty());
    }

    #[test]
    fn hamming_ub_examples() {
        let ub = hamming_chiq_ub(20, 12).unwrap();
        assert!(ub.contains(&("2j".to_string(), 24.0)));
        let ub = hamming_chiq_ub(16, 2).unwrap();
        assert!(ub.contains(&("n+1".to_string(), 17.0)));
        let ub = hamming_chiq_ub(100, 30).unwrap();
        let rate = ub.iter().find(|(k, _)| k == "exp_rate_log2").unwrap().1;
        assert!((rate - 0.250_22).abs() < 1e-4, "{rate}");
        // 45 < j < 50 at n = 100.
        let ub = hamming_chiq_ub(100, 48).unwrap();
        assert!(ub.iter().any(|(k, v)| k == "2C(n,2)" && *v == 9900.0));
        assert!(!hamming_chiq_ub(100, 44).unwrap().iter().any(|(k, _)| k == "2C(n,2)"));
        assert!(hamming_chiq_ub(10, 3).is_err());
    }

    #[test]
    fn j2_family_members() {
        let members: Vec<usize> = (1..=40).filter(|&n| j2_family(n)).collect();
        assert_eq!(members, [3, 7, 8, 11, 16, 19, 23, 27, 31, 32]);
        assert!(!j2_family(4));
    }

    #[test]
    fn z4_examples() {
        let rep = z4_chiq(4, 2).unwrap();
        assert_eq!(rep.spectral_lb, big(12));
        assert_eq!(rep.upper_bounds, [("n".to_string(), 12.0)]);
        assert!(rep.equality);
        let rep = z4_chiq(2, 2).unwrap();
        assert_eq!(rep.upper_bounds[0].1, 8.0);
        assert!(rep.spectral_lb <= big(8) && rep.spectral_lb >= big(2));
        assert_eq!(z4_chiq(1, 1).unwrap().upper_bounds[0].1, 4.0);
        assert!(z4_chiq(1, 0).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = lu_table(&[0.01, 0.05, 0.17]).unwrap();
        let want = [(1.062, 1.961), (1.198, 1.813), (1.353, 1.456)];
        for (row, (l, u)) in rows.iter().zip(want) {
            assert!((round3(row.l) - l).abs() <= 1e-3 + 1e-12, "{row:?}");
            assert!((round3(row.u) - u).abs() <= 1e-3 + 1e-12, "{row:?}");
        }
        assert!(lu_table(&[0.5]).is_err());
        assert!(lu_table(&[0.0]).is_err());
    }

    #[test]
    fn lower_base_below_upper_base() {
        for row in lu_table(&default_alphas()).unwrap() {
            assert!(row.l < row.u, "{row:?}");
        }
    }

    #[test]
    fn region_examples() {
        assert!(region_alpha_holds(0.17).unwrap());
        assert!(!region_alpha_holds(0.185).unwrap());
        assert!(region_alpha_holds(0.01).unwrap());
        assert!(region_alpha_holds(0.6).is_err());
    }

    #[test]
    fn region_matches_rate_base() {
        for k in 1..300 {
            let a = k as f64 / 1000.0;
            if a >= 0.5 {
                break;
            }
            assert_eq!(l_rate(a).unwrap() > 1.0, region_alpha_holds(a).unwrap(), "alpha={a}");
        }
    }

    #[test]
    fn rounding_ties_to_even() {
        assert_eq!(round3(1.0625), 1.062);
        assert_eq!(round3(1.1875), 1.188);
        assert!((growth_constant() - 6.563).abs() < 5e-4);
    }
}
