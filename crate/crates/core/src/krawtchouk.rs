//! Binary Krawtchouk polynomials and the distance polynomials `q_j` of the
//! hypercube `H(n, 1)`.
//!
//! `q_j` is defined by the three-term recursion
//! `x q_j(x) = c_{j+1} q_{j+1}(x) + b_{j-1} q_{j-1}(x)`, `q_0 = 1`, `q_1 = x`,
//! with the hypercube intersection numbers `c_i = i`, `b_i = n - i`. It
//! satisfies `q_j(n - 2x) = K_j(x)`. Its coefficients also have a closed
//! form as a signed sum over 2-separated index sets, which is implemented
//! here independently of the recursion so the two can be compared.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{binomial, factorial, BinomialTable};
use crate::{Error, Result};

/// Intersection numbers of the hypercube `H(n, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionNumbers {
    pub n: usize,
}

impl IntersectionNumbers {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn c(&self, i: usize) -> i64 {
        i as i64
    }

    pub fn a(&self, _i: usize) -> i64 {
        0
    }

    pub fn b(&self, i: usize) -> i64 {
        self.n as i64 - i as i64
    }
}

fn check_unit_range(what: &'static str, v: usize, n: usize) -> Result<()> {
    if v > n {
        return Err(Error::range(what, format!("{what} = {v} not in [0, {n}]")));
    }
    Ok(())
}

/// `K_j(x) = sum_i (-1)^i C(x, i) C(n - x, j - i)`.
pub fn krawtchouk_eval(n: usize, j: usize, x: usize) -> Result<BigInt> {
    check_unit_range("j", j, n)?;
    check_unit_range("x", x, n)?;
    let (n, j, x) = (n as i64, j as i64, x as i64);
    let mut acc = BigInt::zero();
    for i in 0..=j {
        let term = binomial(x, i) * binomial(n - x, j - i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Same sum as [`krawtchouk_eval`], reading binomials from a prebuilt table.
/// Arguments are not range-checked.
pub(crate) fn krawtchouk_with_table(table: &BinomialTable, n: usize, j: usize, x: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=j {
        let term = table.get(x, i as i64) * table.get(n - x, j as i64 - i as i64);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Univariate polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

/// `q_0, ..., q_{j_max}` from the three-term recursion.
pub fn q_polys_by_recursion(n: usize, j_max: usize) -> Result<Vec<ExactPoly>> {
    check_unit_range("j_max", j_max, n)?;
    let inter = IntersectionNumbers::new(n);
    let mut polys = vec![ExactPoly::constant(BigRational::one())];
    if j_max >= 1 {
        polys.push(ExactPoly::x());
    }
    for j in 1..j_max {
        // c_{j+1} q_{j+1} = x q_j - b_{j-1} q_{j-1}
        let b = BigRational::from_integer(BigInt::from(inter.b(j - 1)));
        let c = BigRational::from_integer(BigInt::from(inter.c(j + 1)));
        let rhs = polys[j].shift_up().sub(&polys[j - 1].scale(&b));
        polys.push(rhs.scale(&c.recip()));
    }
    Ok(polys)
}

/// `M_i(j) = j! L_i(j)` for `i = 0..=j`, via the integer coefficient recursion
/// `M_i(j+1) = M_i(j) - b_{j-1} c_j M_{i-2}(j-1)`.
pub fn scaled_coefficients(n: usize, j: usize) -> Result<Vec<BigInt>> {
    check_unit_range("j", j, n)?;
    let inter = IntersectionNumbers::new(n);
    // rows[m][i] = M_i(m)
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if j == 0 {
        return Ok(prev);
    }
    let mut cur: Vec<BigInt> = vec![BigInt::one(), BigInt::zero()];
    for m in 1..j {
        let factor = BigInt::from(inter.b(m - 1) * inter.c(m));
        let next: Vec<BigInt> = (0..=m + 1)
            .map(|i| {
                let mut v = cur.get(i).cloned().unwrap_or_else(BigInt::zero);
                if i >= 2 {
                    if let Some(p) = prev.get(i - 2) {
                        v -= &factor * p;
                    }
                }
                v
            })
            .collect();
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Streams the 2-separated `k`-subsets of `{0, ..., j-2}` in lexicographic order.
pub fn two_separated_sets(k: usize, j: usize) -> TwoSeparatedSets {
    TwoSeparatedSets::new(k, j)
}

#[derive(Debug, Clone)]
pub struct TwoSeparatedSets {
    k: usize,
    top: i64,
    current: Option<Vec<usize>>,
}

impl TwoSeparatedSets {
    fn new(k: usize, j: usize) -> Self {
        let top = j as i64 - 2;
        // Smallest member is {0, 2, ..., 2(k-1)}, which must fit under `top`.
        let current = if k == 0 {
            Some(Vec::new())
        } else if 2 * (k as i64 - 1) <= top {
            Some((0..k).map(|i| 2 * i).collect())
        } else {
            None
        };
        Self { k, top, current }
    }

    fn max_at(&self, idx: usize) -> i64 {
        self.top - 2 * (self.k - 1 - idx) as i64
    }
}

impl Iterator for TwoSeparatedSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        let mut advanced = false;
        for idx in (0..self.k).rev() {
            if (succ[idx] as i64) < self.max_at(idx) {
                succ[idx] += 1;
                for m in idx + 1..self.k {
                    succ[m] = succ[m - 1] + 2;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(succ);
        }
        Some(out)
    }
}

/// `R(I) = prod_{i in I} (n - i)(i + 1)`.
pub fn r_weight(n: usize, set: &[usize]) -> BigInt {
    set.iter()
        .map(|&i| BigInt::from((n as i64 - i as i64) * (i as i64 + 1)))
        .product()
}

/// `M_i(j) = j! L_i(j)` from the 2-separated closed form: zero for odd `i`,
/// otherwise `(-1)^{i/2}` times the sum of `R(I)` over 2-separated
/// `(i/2)`-subsets `I` of `[0, j-2]`.
pub fn scaled_coeff_closed_form(n: usize, j: usize, i: usize) -> Result<BigInt> {
    check_unit_range("j", j, n)?;
    if i > j {
        return Err(Error::range("i", format!("i = {i} exceeds j = {j}")));
    }
    if i % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let k = i / 2;
    let weights: Vec<BigInt> = (0..j.saturating_sub(1))
        .map(|u| BigInt::from((n as i64 - u as i64) * (u as i64 + 1)))
        .collect();
    let total = separated_sum(&weights, 0, k, &BigInt::one());
    Ok(if k % 2 == 0 { total } else { -total })
}

// Choose-skip recursion: either take `start` (and jump to start + 2) or move on.
// `prefix` carries the product of the weights chosen so far.
fn separated_sum(weights: &[BigInt], start: usize, remaining: usize, prefix: &BigInt) -> BigInt {
    if remaining == 0 {
        return prefix.clone();
    }
    // Need `remaining` picks with gaps of 2 starting at or after `start`.
    let last_allowed = weights.len() as i64 - 1 - 2 * (remaining as i64 - 1);
    let mut acc = BigInt::zero();
    let mut u = start as i64;
    while u <= last_allowed {
        let p = prefix * &weights[u as usize];
        acc += separated_sum(weights, u as usize + 2, remaining - 1, &p);
        u += 1;
    }
    acc
}

/// `L_i(j)`, the coefficient of `x^{j-i}` in `q_j`, from the closed form.
pub fn q_coeff_closed_form(n: usize, j: usize, i: usize) -> Result<BigRational> {
    let m = scaled_coeff_closed_form(n, j, i)?;
    Ok(BigRational::new(m, factorial(j)))
}

fn check_even_below_half(n: usize, j: usize) -> Result<()> {
    if j < 4 || j % 2 == 1 || 2 * j >= n {
        return Err(Error::range(
            "j",
            format!("need even j with 4 <= j < n/2, got n = {n}, j = {j}"),
        ));
    }
    Ok(())
}

/// `r1 = sqrt((j-1)(n-j+2)) + sqrt((j-2)(n-j+3))` and `r0 = -r1`: an
/// interval containing every root of `q_j`, for even `4 <= j < n/2`.
pub fn root_interval(n: usize, j: usize) -> Result<(f64, f64)> {
    check_even_below_half(n, j)?;
    let (n, j) = (n as f64, j as f64);
    let r1 = ((j - 1.0) * (n - j + 2.0)).sqrt() + ((j - 2.0) * (n - j + 3.0)).sqrt();
    Ok((-r1, r1))
}

/// Diagnostic bracket `[lo, hi]` around the largest root of `q_j`, found by
/// scanning `q_j(n - 2w) = K_j(w)` for the first `w` with `K_j(w) <= 0`.
pub fn largest_root_bracket(n: usize, j: usize) -> Result<(i64, i64)> {
    check_unit_range("j", j, n)?;
    if j == 0 {
        return Err(Error::range("j", "q_0 has no roots"));
    }
    let table = BinomialTable::new(n);
    for w in 0..=n {
        if !krawtchouk_with_table(&table, n, j, w).is_positive() {
            let x = n as i64 - 2 * w as i64;
            return Ok((x, x + 2));
        }
    }
    Err(Error::Domain(format!("no sign change of q_{j} on the integer grid")))
}

/// `f_n(x) = sum_{k <= n/2} C(n - k, k) x^k`, exactly.
pub fn fibonacci_f(n: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for k in 0..=n / 2 {
        acc += &power * BigRational::from_integer(binomial((n - k) as i64, k as i64));
        power *= x;
    }
    acc
}

/// `f_n(x) = ((1 + s)^{n+1} - (1 - s)^{n+1}) / (2^{n+1} s)` with `s = sqrt(1 + 4x)`.
pub fn fibonacci_f_closed(n: usize, x: f64) -> f64 {
    let s = (1.0 + 4.0 * x).sqrt();
    let e = (n + 1) as i32;
    // Divide inside the powers so large n does not overflow early.
    (((1.0 + s) / 2.0).powi(e) - ((1.0 - s) / 2.0).powi(e)) / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk_eval(6, 2, 3).unwrap(), BigInt::from(-3));
        assert_eq!(krawtchouk_eval(8, 4, 2).unwrap(), BigInt::from(-10));
        for n in 0..12 {
            for j in 0..=n {
                assert_eq!(krawtchouk_eval(n, j, 0).unwrap(), binomial(n as i64, j as i64));
            }
        }
    }

    #[test]
    fn krawtchouk_range_errors() {
        assert!(matches!(krawtchouk_eval(5, 6, 0), Err(Error::Range { .. })));
        assert!(matches!(krawtchouk_eval(5, 2, 6), Err(Error::Range { .. })));
    }

    #[test]
    fn intersection_numbers_sum_to_valency() {
        let inter = IntersectionNumbers::new(17);
        for i in 0..=17 {
            assert_eq!(inter.c(i) + inter.a(i) + inter.b(i), 17);
        }
    }

    #[test]
    fn low_degree_q_polys() {
        let qs = q_polys_by_recursion(12, 4).unwrap();
        assert_eq!(qs[0], ExactPoly::constant(BigRational::one()));
        assert_eq!(qs[1], ExactPoly::x());
        // (x^2 - n) / 2
        assert_eq!(qs[2].coeffs(), &[rat(-12, 2), rat(0, 1), rat(1, 2)]);
        // (x^4 - 64 x^2 + 360) / 24
        assert_eq!(
            qs[4].coeffs(),
            &[rat(360, 24), rat(0, 1), rat(-64, 24), rat(0, 1), rat(1, 24)]
        );
        for (j, q) in qs.iter().enumerate() {
            assert_eq!(q.degree(), Some(j));
        }
    }

    #[test]
    fn two_separated_examples() {
        let sets: Vec<_> = two_separated_sets(2, 4).collect();
        assert_eq!(sets, vec![vec![0, 2]]);
        let sets: Vec<_> = two_separated_sets(1, 4).collect();
        assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);
        for j in 0..6 {
            let sets: Vec<_> = two_separated_sets(0, j).collect();
            assert_eq!(sets, vec![Vec::<usize>::new()]);
        }
        assert_eq!(two_separated_sets(3, 5).count(), 0);
    }

    #[test]
    fn two_separated_counts_and_shape() {
        for j in 0..=30usize {
            for k in 0..=j / 2 {
                let mut count = 0usize;
                let mut last: Option<Vec<usize>> = None;
                for set in two_separated_sets(k, j) {
                    assert_eq!(set.len(), k);
                    assert!(set.windows(2).all(|w| w[1] >= w[0] + 2));
                    assert!(set.iter().all(|&u| (u as i64) <= j as i64 - 2));
                    if let Some(prev) = &last {
                        assert!(prev < &set);
                    }
                    last = Some(set);
                    count += 1;
                }
                assert_eq!(BigInt::from(count), binomial((j - k) as i64, k as i64), "j={j} k={k}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        for j in 1..=10 {
            assert!(q_coeff_closed_form(20, j, 1).unwrap().is_zero());
            assert_eq!(q_coeff_closed_form(20, j, 0).unwrap(), rat(1, 1) / BigRational::from_integer(factorial(j)));
        }
        assert_eq!(scaled_coeff_closed_form(9, 2, 2).unwrap(), BigInt::from(-9));
        assert_eq!(q_coeff_closed_form(12, 4, 2).unwrap(), rat(-8, 3));
        assert!(q_coeff_closed_form(12, 4, 5).is_err());
    }

    #[test]
    fn closed_form_matches_enumerated_sum() {
        // The DFS sum and the explicit set stream must agree.
        for n in [15usize, 22] {
            for j in 0..=12 {
                for i in (0..=j).step_by(2) {
                    let k = i / 2;
                    let s: BigInt = two_separated_sets(k, j).map(|set| r_weight(n, &set)).sum();
                    let signed = if k % 2 == 0 { s } else { -s };
                    assert_eq!(scaled_coeff_closed_form(n, j, i).unwrap(), signed);
                }
            }
        }
    }

    #[test]
    fn top_coefficient_closed_form() {
        // M_j(j) = (-1)^{j/2} prod_{k < j/2} b_{2k} c_{2k+1} for even j.
        let n = 21usize;
        let inter = IntersectionNumbers::new(n);
        for j in (2..=20).step_by(2) {
            let prod: BigInt = (0..j / 2)
                .map(|k| BigInt::from(inter.b(2 * k) * inter.c(2 * k + 1)))
                .product();
            let expected = if (j / 2) % 2 == 0 { prod } else { -prod };
            assert_eq!(scaled_coeff_closed_form(n, j, j).unwrap(), expected);
        }
    }

    #[test]
    fn integer_recursion_matches_rational_recursion() {
        for n in [7usize, 16, 25] {
            let qs = q_polys_by_recursion(n, n).unwrap();
            for (j, q) in qs.iter().enumerate() {
                let m = scaled_coefficients(n, j).unwrap();
                let fj = BigRational::from_integer(factorial(j));
                for i in 0..=j {
                    assert_eq!(BigRational::from_integer(m[i].clone()), q.coeff(j - i) * &fj);
                }
            }
        }
    }

    #[test]
    fn root_interval_examples() {
        let (r0, r1) = root_interval(100, 4).unwrap();
        assert!((r1 - (294f64.sqrt() + 198f64.sqrt())).abs() < 1e-12);
        assert!((r1 - 31.2177).abs() < 1e-4);
        assert_eq!(r0, -r1);
        let (_, r1) = root_interval(20, 4).unwrap();
        assert!((r1 - 13.513).abs() < 1e-3);
        assert!(root_interval(8, 4).is_err());
        assert!(root_interval(20, 5).is_err());
        assert!(root_interval(20, 2).is_err());
    }

    #[test]
    fn true_largest_root_lies_inside_interval() {
        for n in 9..=40usize {
            for j in (4..n).step_by(2).filter(|&j| 2 * j < n) {
                let (_, r1) = root_interval(n, j).unwrap();
                let (lo, _) = largest_root_bracket(n, j).unwrap();
                assert!((lo as f64) <= r1, "n={n} j={j} lo={lo} r1={r1}");
            }
        }
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_f(1, &rat(7, 3)), rat(1, 1));
        assert_eq!(fibonacci_f(2, &rat(1, 1)), rat(2, 1));
        assert!((fibonacci_f_closed(2, 1.0) - 2.0).abs() < 1e-12);
        assert_eq!(fibonacci_f(4, &rat(1, 4)), rat(29, 16));
        assert!((fibonacci_f_closed(4, 0.25) - 29.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_at_one_is_fibonacci_numbers() {
        // f_n(1) = F_{n+1} with F_1 = F_2 = 1.
        let (mut a, mut b) = (BigInt::one(), BigInt::one());
        for n in 0..=60usize {
            let exact = fibonacci_f(n, &rat(1, 1));
            assert_eq!(exact, BigRational::from_integer(a.clone()), "n={n}");
            let closed = fibonacci_f_closed(n, 1.0);
            let exact_f = a.to_f64().unwrap();
            assert!(((closed - exact_f) / exact_f).abs() < 1e-9, "n={n}");
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
    }

    #[test]
    fn fibonacci_closed_form_quarter() {
        let quarter = rat(1, 4);
        for n in 0..=80usize {
            let exact = fibonacci_f(n, &quarter).to_f64().unwrap();
            let closed = fibonacci_f_closed(n, 0.25);
            assert!(((closed - exact) / exact).abs() < 1e-9, "n={n}");
        }
    }

    proptest! {
        #[test]
        fn symmetry(n in 0usize..=30, x in 0usize..=30, j in 0usize..=30) {
            prop_assume!(x <= n && j <= n);
            let lhs = krawtchouk_eval(n, j, x).unwrap();
            let rhs = krawtchouk_eval(n, j, n - x).unwrap();
            prop_assert_eq!(lhs, if j % 2 == 0 { rhs } else { -rhs });
        }

        #[test]
        fn duality(n in 0usize..=30, i in 0usize..=30, j in 0usize..=30) {
            prop_assume!(i <= n && j <= n);
            let lhs = binomial(n as i64, i as i64) * krawtchouk_eval(n, j, i).unwrap();
            let rhs = binomial(n as i64, j as i64) * krawtchouk_eval(n, i, j).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn q_at_integers_is_integer(n in 1usize..=20, w in 0usize..=20) {
            prop_assume!(w <= n);
            let qs = q_polys_by_recursion(n, n).unwrap();
            for q in &qs {
                prop_assert!(q.eval_int(n as i64 - 2 * w as i64).is_integer());
            }
        }

        #[test]
        fn eval_f64_tracks_exact(n in 4usize..=20, x in -20i64..=20) {
            let qs = q_polys_by_recursion(n, n).unwrap();
            let q = &qs[n / 2];
            let exact = q.eval_int(x).to_f64().unwrap();
            let approx = q.eval_f64(x as f64);
            prop_assert!((exact - approx).abs() <= 1e-9 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn orthogonality_against_trivial_character() {
        for n in 1..=20usize {
            for j in 1..=n {
                let s: BigInt = (0..=n)
                    .map(|w| binomial(n as i64, w as i64) * krawtchouk_eval(n, j, w).unwrap())
                    .sum();
                assert!(s.is_zero(), "n={n} j={j}");
            }
        }
    }
}
