//! Spectrum of `G(r, s) = Cay(Z_4^n, (r, s, r, s))`, `n = 2(r + s)`.
//!
//! For `v` of type `t`,
//!
//! ```text
//! lambda(t) = C(n; r,s,r,s) / C(n; t) * P[t],
//! P = ((x+z)^2 - (y+w)^2)^r ((x-z)^2 + (y-w)^2)^s,
//! ```
//!
//! where `P[t]` is the coefficient of `x^{t0} y^{t1} z^{t2} w^{t3}`. The value is
//! invariant under `t0 <-> t2` and `t1 <-> t3`, and the cyclic shift
//! `(t0,t1,t2,t3) -> (t3,t0,t1,t2)` multiplies it by `(-1)^r`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::combinatorics::{enumerate_types, multinomial, multinomial_of, BinomialTable, TypeVector};
use crate::gaussian::GaussianInt;
use crate::krawtchouk::krawtchouk_eval;
use crate::{Error, Result};

/// Largest `n` the brute-force character oracle accepts unless overridden.
pub const DEFAULT_ORACLE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z4EigenvalueRecord {
    pub t: TypeVector,
    pub value: BigInt,
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z4MinResult {
    pub lambda_min: BigInt,
    /// Canonical representatives attaining the minimum, sorted.
    pub argmin_types: Vec<TypeVector>,
    /// `lambda_min == -C(n; r,s,r,s) / (n - 1)`.
    pub matches_formula: bool,
}

fn length(r: usize, s: usize) -> Result<usize> {
    if r == 0 && s == 0 {
        return Err(Error::range("(r, s)", "r and s cannot both be 0"));
    }
    Ok(2 * (r + s))
}

fn check_type(r: usize, s: usize, t: &TypeVector) -> Result<usize> {
    let n = length(r, s)?;
    if t.p() != 4 || t.n() != n {
        return Err(Error::InvalidType(format!(
            "type {t} must be over Z_4 with length 2(r+s) = {n}"
        )));
    }
    Ok(n)
}

/// `C(n; r, s, r, s)`, the valency of `G(r, s)`.
pub fn valency(r: usize, s: usize) -> BigInt {
    multinomial_of(&[r, s, r, s])
}

// (u+v)^plus (u-v)^minus [u^{plus+minus-k} v^k]
fn bivariate(table: &BinomialTable, plus: usize, minus: usize, k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=k.min(minus) {
        let term = table.get(minus, i as i64) * table.get(plus, (k - i) as i64);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn generating_coeff_with(table: &BinomialTable, r: usize, s: usize, t: &[usize]) -> BigInt {
    let (t0, t2, t3) = (t[0], t[2], t[3]);
    if (t0 + t2) % 2 == 1 {
        return BigInt::zero();
    }
    let half = (t0 + t2) / 2;
    let mut acc = BigInt::zero();
    // Take (x+z)^{2a} (y+w)^{2(r-a)} from the first factor and
    // (x-z)^{2b} (y-w)^{2(s-b)} from the second, with a + b = half.
    for a in half.saturating_sub(s)..=half.min(r) {
        let b = half - a;
        let xz = bivariate(table, 2 * a, 2 * b, t2);
        if xz.is_zero() {
            continue;
        }
        let yw = bivariate(table, 2 * (r - a), 2 * (s - b), t3);
        let term = table.get(r, a as i64) * table.get(s, b as i64) * xz * yw;
        if (r - a) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `P[t]` for `P = ((x+z)^2 - (y+w)^2)^r ((x-z)^2 + (y-w)^2)^s`.
pub fn generating_coeff(r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    let n = check_type(r, s, t)?;
    Ok(generating_coeff_with(&BinomialTable::new(n), r, s, t.parts()))
}

fn eigenvalue_with(table: &BinomialTable, r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    let numerator = valency(r, s) * generating_coeff_with(table, r, s, t.parts());
    let (q, rem) = numerator.div_rem(&multinomial(t));
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!(
            "eigenvalue of G({r},{s}) at {t} is not an integer"
        )));
    }
    Ok(q)
}

/// Exact eigenvalue `lambda(t)` of `G(r, s)`.
pub fn eigenvalue_by_type(r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    let n = check_type(r, s, t)?;
    eigenvalue_with(&BinomialTable::new(n), r, s, t)
}

/// Every eigenvalue of `G(r, s)` indexed by type, in lexicographic type order.
pub fn spectrum(r: usize, s: usize) -> Result<Vec<Z4EigenvalueRecord>> {
    let n = length(r, s)?;
    let table = BinomialTable::new(n);
    enumerate_types(4, n)
        .map(|t| {
            Ok(Z4EigenvalueRecord {
                value: eigenvalue_with(&table, r, s, &t)?,
                multiplicity: multinomial(&t),
                t,
            })
        })
        .collect()
}

/// Counts `|S(v, a)|` for `a = 0..4`, where `S` is the set of vectors of type
/// `(r, s, r, s)`, by walking `S` position by position.
pub fn s_dot_histogram(r: usize, s: usize, v: &[usize], cap: usize) -> Result<[u64; 4]> {
    let n = length(r, s)?;
    if v.len() != n || v.iter().any(|&x| x > 3) {
        return Err(Error::InvalidType(format!("need a Z_4 vector of length {n}")));
    }
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let mut hist = [0u64; 4];
    let mut remaining = [r, s, r, s];
    walk(v, 0, 0, &mut remaining, &mut hist);
    Ok(hist)
}

fn walk(v: &[usize], pos: usize, residue: usize, remaining: &mut [usize; 4], hist: &mut [u64; 4]) {
    if pos == v.len() {
        hist[residue] += 1;
        return;
    }
    for sym in 0..4 {
        if remaining[sym] == 0 {
            continue;
        }
        remaining[sym] -= 1;
        walk(v, pos + 1, (residue + sym * v[pos]) % 4, remaining, hist);
        remaining[sym] += 1;
    }
}

/// `sum_{b in S} i^{v . b}` by enumeration of `S`; the imaginary part must vanish.
pub fn eigenvalue_bruteforce(r: usize, s: usize, v: &[usize]) -> Result<BigInt> {
    eigenvalue_bruteforce_with_cap(r, s, v, DEFAULT_ORACLE_CAP)
}

pub fn eigenvalue_bruteforce_with_cap(r: usize, s: usize, v: &[usize], cap: usize) -> Result<BigInt> {
    let hist = s_dot_histogram(r, s, v, cap)?;
    let mut acc = GaussianInt::zero();
    for (a, &count) in hist.iter().enumerate() {
        acc += &(&GaussianInt::i_pow(a) * &BigInt::from(count));
    }
    if !acc.is_real() {
        return Err(Error::NonReal(format!("character sum {acc} for v = {v:?}")));
    }
    Ok(acc.re)
}

fn swap02(t: [usize; 4]) -> [usize; 4] {
    [t[2], t[1], t[0], t[3]]
}

fn swap13(t: [usize; 4]) -> [usize; 4] {
    [t[0], t[3], t[2], t[1]]
}

/// `(t0, t1, t2, t3) -> (t3, t0, t1, t2)`, the type of `v + 1`.
pub fn cyclic_shift(t: &TypeVector) -> TypeVector {
    let p = t.parts();
    TypeVector::new(vec![p[3], p[0], p[1], p[2]]).expect("four parts")
}

/// Lexicographically smallest type in the symmetry orbit of `t`: the two
/// swaps always, plus the cyclic shift when `r` is even.
pub fn canonical_type(r: usize, t: &TypeVector) -> TypeVector {
    let p = t.parts();
    let start = [p[0], p[1], p[2], p[3]];
    let mut seen = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(cur) = frontier.pop() {
        let mut images = vec![swap02(cur), swap13(cur)];
        if r % 2 == 0 {
            images.push([cur[3], cur[0], cur[1], cur[2]]);
        }
        for img in images {
            if seen.insert(img) {
                frontier.push(img);
            }
        }
    }
    let best = *seen.iter().next().expect("orbit contains t");
    TypeVector::new(best.to_vec()).expect("four parts")
}

/// Exact `lambda_min(G(r, s))` over all types, scanning one canonical
/// representative per symmetry orbit in parallel.
pub fn lambda_min_scan(r: usize, s: usize) -> Result<Z4MinResult> {
    let n = length(r, s)?;
    let table = BinomialTable::new(n);
    let reps: Vec<TypeVector> = enumerate_types(4, n)
        .filter(|t| canonical_type(r, t) == *t)
        .collect();
    let values: Vec<(TypeVector, BigInt)> = reps
        .into_par_iter()
        .map(|t| eigenvalue_with(&table, r, s, &t).map(|v| (t, v)))
        .collect::<Result<_>>()?;
    let lambda_min = values
        .iter()
        .map(|(_, v)| v)
        .min()
        .cloned()
        .expect("at least one type");
    let mut argmin_types: Vec<TypeVector> = values
        .into_iter()
        .filter(|(_, v)| *v == lambda_min)
        .map(|(t, _)| t)
        .collect();
    argmin_types.sort();
    let matches_formula = formula_value(r, s).is_some_and(|f| f == lambda_min);
    Ok(Z4MinResult {
        lambda_min,
        argmin_types,
        matches_formula,
    })
}

fn formula_value(r: usize, s: usize) -> Option<BigInt> {
    let n = 2 * (r + s);
    if n < 2 {
        return None;
    }
    let (q, rem) = valency(r, s).div_rem(&BigInt::from(n - 1));
    rem.is_zero().then_some(-q)
}

/// `lambda(0, 1, n-2, 1) = -C(n; r,s,r,s) / (n - 1)`.
pub fn smallest_ev_formula(r: usize, s: usize) -> Result<BigInt> {
    let n = length(r, s)?;
    if n < 3 {
        return Err(Error::range("n", format!("need n = 2(r+s) >= 3, got {n}")));
    }
    formula_value(r, s).ok_or_else(|| {
        Error::InexactDivision(format!("C({n}; {r},{s},{r},{s}) not divisible by {}", n - 1))
    })
}

/// `lambda(0, t1, 0, t3) = (-1)^r C(n; r,s,r,s) / C(n, 2s) * K_{2s}(t3)`.
pub fn boundary_eigenvalue(r: usize, s: usize, t1: usize, t3: usize) -> Result<BigInt> {
    let n = length(r, s)?;
    if t1 + t3 != n {
        return Err(Error::range("(t1, t3)", format!("t1 + t3 = {} != n = {n}", t1 + t3)));
    }
    let k = krawtchouk_eval(n, 2 * s, t3)?;
    let numerator = valency(r, s) * k;
    let (q, rem) = numerator.div_rem(&crate::combinatorics::binomial(n as i64, 2 * s as i64));
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!(
            "boundary eigenvalue of G({r},{s}) at (0,{t1},0,{t3})"
        )));
    }
    Ok(if r % 2 == 0 { q } else { -q })
}

/// Eigenvalue of a type with `t0 + t2 = 0` or `t1 + t3 = 0`, through
/// [`boundary_eigenvalue`] (and the cyclic shift for the second family).
pub fn boundary_type_eigenvalue(r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    let n = check_type(r, s, t)?;
    let p = t.parts();
    if p[0] + p[2] == 0 {
        return boundary_eigenvalue(r, s, p[1], p[3]);
    }
    if p[1] + p[3] == 0 {
        // (t0, 0, t2, 0) shifts to (0, t0, 0, t2) at the cost of (-1)^r.
        let v = boundary_eigenvalue(r, s, p[0], p[2])?;
        return Ok(if r % 2 == 0 { v } else { -v });
    }
    Err(Error::InvalidType(format!("{t} is not a boundary type for n = {n}")))
}

/// Minimum of [`boundary_type_eigenvalue`] over every boundary type.
pub fn boundary_min(r: usize, s: usize) -> Result<BigInt> {
    let n = length(r, s)?;
    let mut best: Option<BigInt> = None;
    for a in 0..=n {
        for parts in [vec![0, a, 0, n - a], vec![a, 0, n - a, 0]] {
            let v = boundary_type_eigenvalue(r, s, &TypeVector::new(parts)?)?;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    Ok(best.expect("n >= 2 gives boundary types"))
}

/// `min(smallest_ev_formula, boundary_min)`, which equals `lambda_min` once
/// every interior type obeys `|lambda(t)| <= C(n; r,s,r,s) / (n - 1)`.
pub fn structural_min(r: usize, s: usize) -> Result<BigInt> {
    let formula = smallest_ev_formula(r, s)?;
    Ok(formula.min(boundary_min(r, s)?))
}

/// Checks `(n - 1) |lambda(t)| <= C(n; r,s,r,s)` for every type with
/// `t0 + t2 != 0` and `t1 + t3 != 0`. Requires `n >= 10`.
pub fn interior_bound_check(r: usize, s: usize) -> Result<bool> {
    let n = length(r, s)?;
    if n < 10 {
        return Err(Error::range("n", format!("interior bound needs n >= 10, got {n}")));
    }
    let table = BinomialTable::new(n);
    let bound = valency(r, s);
    let scale = BigInt::from(n - 1);
    let interior: Vec<TypeVector> = enumerate_types(4, n)
        .filter(|t| {
            let p = t.parts();
            p[0] + p[2] != 0 && p[1] + p[3] != 0
        })
        .collect();
    let results: Vec<bool> = interior
        .par_iter()
        .map(|t| eigenvalue_with(&table, r, s, t).map(|v| v.abs() * &scale <= bound))
        .collect::<Result<_>>()?;
    Ok(results.into_iter().all(|ok| ok))
}
