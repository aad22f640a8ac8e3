//! Complete weight enumerators of single-generator codes over `Z_p`, their
//! MacWilliams transforms, and the orthogonal-vector counts behind the
//! eigenvalues of `G(r, s)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, enumerate_types, multinomial, multinomial_of, TypeVector};
use crate::gaussian::GaussianInt;
use crate::z4_spectrum::generating_coeff;
use crate::{Error, Result};

/// Sparse polynomial in `x_0, ..., x_{p-1}`, homogeneous of degree `n`,
/// keyed by exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    p: usize,
    n: usize,
    terms: BTreeMap<Vec<usize>, GaussianInt>,
}

impl WeightEnumerator {
    pub fn new(p: usize, n: usize) -> Self {
        Self {
            p,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c` to the coefficient of `x^t`, dropping the term if it cancels.
    pub fn add_term(&mut self, t: &TypeVector, c: &GaussianInt) {
        assert_eq!(t.p(), self.p, "exponent arity mismatch");
        assert_eq!(t.n(), self.n, "exponent degree mismatch");
        self.add_raw(t.parts().to_vec(), c);
    }

    fn add_raw(&mut self, exps: Vec<usize>, c: &GaussianInt) {
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c.clone());
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Coefficient `A[t]`.
    pub fn coeff(&self, t: &TypeVector) -> GaussianInt {
        self.terms.get(t.parts()).cloned().unwrap_or_else(GaussianInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (TypeVector, &GaussianInt)> {
        self.terms
            .iter()
            .map(|(k, v)| (TypeVector::new(k.clone()).expect("p >= 2"), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, which is `|C|` for a code enumerator.
    pub fn total_mass(&self) -> GaussianInt {
        self.terms.values().fold(GaussianInt::zero(), |acc, c| &acc + c)
    }

    /// True when every coefficient is a non-negative rational integer.
    pub fn is_counting(&self) -> bool {
        self.terms.values().all(|c| c.is_real() && !c.re.is_negative())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.p, self.n + other.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_raw(e, &(ca * cb));
            }
        }
        out
    }

    fn one(p: usize) -> Self {
        let mut out = Self::new(p, 0);
        out.terms.insert(vec![0; p], GaussianInt::one());
        out
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (var, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{var}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

fn check_alphabet(p: usize, t: &TypeVector) -> Result<()> {
    if !(2..=4).contains(&p) {
        return Err(Error::InvalidType(format!("alphabet size {p} not in {{2, 3, 4}}")));
    }
    if t.p() != p {
        return Err(Error::InvalidType(format!("type {t} is not over Z_{p}")));
    }
    Ok(())
}

/// Additive order of a vector of type `t` in `Z_p^n`, i.e. `|<v>_p|`.
pub fn code_size(p: usize, t: &TypeVector) -> usize {
    let g = t
        .parts()
        .iter()
        .enumerate()
        .filter(|&(m, &count)| m > 0 && count > 0)
        .fold(p, |g, (m, _)| g.gcd(&m));
    p / g
}

/// Type of `a v` given the type of `v`: `wt_k(a v) = sum_{a m = k mod p} t_m`.
pub fn scaled_type(p: usize, t: &TypeVector, a: usize) -> TypeVector {
    let mut parts = vec![0; p];
    for (m, &count) in t.parts().iter().enumerate() {
        parts[(a * m) % p] += count;
    }
    TypeVector::new(parts).expect("p >= 2")
}

/// Enumerator of the code `<v>_p = { a v : a in Z_p }` for `v` of type `t`.
pub fn cwe_single_generator(p: usize, t: &TypeVector) -> Result<WeightEnumerator> {
    check_alphabet(p, t)?;
    let mut out = WeightEnumerator::new(p, t.n());
    // a v for a < order are the distinct codewords.
    for a in 0..code_size(p, t) {
        out.add_term(&scaled_type(p, t, a), &GaussianInt::one());
    }
    Ok(out)
}

// Coefficient of x_k in the i-th substituted linear form, zeta_p^{ik}.
fn character_coeff(p: usize, i: usize, k: usize) -> GaussianInt {
    GaussianInt::i_pow((4 / p) * i * k)
}

/// MacWilliams transform for `p` in `{2, 4}`:
/// `A_dual(x) = A(L_0(x), ..., L_{p-1}(x)) / |C|`, `L_i = sum_k zeta_p^{ik} x_k`.
pub fn macwilliams(p: usize, a: &WeightEnumerator, code_size: &BigInt) -> Result<WeightEnumerator> {
    if p != 2 && p != 4 {
        return Err(Error::Domain(format!("MacWilliams transform implemented for p = 2, 4; got {p}")));
    }
    if a.p != p {
        return Err(Error::InvalidType(format!("enumerator over Z_{} passed with p = {p}", a.p)));
    }
    if !code_size.is_positive() {
        return Err(Error::Domain(format!("code size must be positive, got {code_size}")));
    }
    let forms: Vec<WeightEnumerator> = (0..p)
        .map(|i| {
            let mut l = WeightEnumerator::new(p, 1);
            for k in 0..p {
                let mut e = vec![0; p];
                e[k] = 1;
                l.add_raw(e, &character_coeff(p, i, k));
            }
            l
        })
        .collect();
    // Powers L_i^e, built once per (i, e) that occurs.
    let mut powers: HashMap<(usize, usize), WeightEnumerator> = HashMap::new();
    let mut power = |i: usize, e: usize| -> WeightEnumerator {
        if let Some(v) = powers.get(&(i, e)) {
            return v.clone();
        }
        let mut acc = WeightEnumerator::one(p);
        for _ in 0..e {
            acc = acc.mul(&forms[i]);
        }
        powers.insert((i, e), acc.clone());
        acc
    };

    let mut image = WeightEnumerator::new(p, a.n);
    for (exps, c) in &a.terms {
        let mut term = WeightEnumerator::one(p);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&power(i, e));
            }
        }
        for (e, tc) in &term.terms {
            image.add_raw(e.clone(), &(c * tc));
        }
    }

    let mut out = WeightEnumerator::new(p, a.n);
    for (e, c) in image.terms {
        let q = c.div_exact(code_size).ok_or_else(|| {
            Error::InexactDivision(format!("coefficient {c} of {e:?} not divisible by {code_size}"))
        })?;
        if !q.is_real() {
            return Err(Error::NonReal(format!("coefficient {q} of {e:?}")));
        }
        if q.re.is_negative() {
            return Err(Error::Domain(format!("negative coefficient {q} of {e:?}")));
        }
        out.terms.insert(e, q);
    }
    Ok(out)
}

/// `A_{s-perp}[t]`: the number of vectors of type `t` orthogonal (mod `p`) to
/// a fixed vector of type `s`.
///
/// Counted by distributing, for each symbol `m` of the fixed vector, its
/// `s_m` positions among the symbols of `t`, i.e. by summing over `p x p`
/// contingency tables with margins `s` and `t` whose weighted trace
/// `sum m k N[m][k]` vanishes mod `p`.
pub fn dual_coeff(p: usize, s: &TypeVector, t: &TypeVector) -> Result<BigInt> {
    check_alphabet(p, s)?;
    check_alphabet(p, t)?;
    if s.n() != t.n() {
        return Err(Error::InvalidType(format!("types {s} and {t} have different lengths")));
    }
    // state: (columns still to fill, running residue) -> weighted count
    let mut states: HashMap<(Vec<usize>, usize), BigInt> = HashMap::new();
    states.insert((t.parts().to_vec(), 0), BigInt::one());
    for (m, &row_total) in s.parts().iter().enumerate() {
        let mut next: HashMap<(Vec<usize>, usize), BigInt> = HashMap::new();
        for ((remaining, residue), count) in &states {
            for row in enumerate_types(p, row_total) {
                let row = row.parts();
                if row.iter().zip(remaining).any(|(r, left)| r > left) {
                    continue;
                }
                let rest: Vec<usize> = remaining.iter().zip(row).map(|(left, r)| left - r).collect();
                let shift: usize = row.iter().enumerate().map(|(k, &r)| m * k * r).sum();
                let key = (rest, (residue + shift) % p);
                *next.entry(key).or_insert_with(BigInt::zero) += count * multinomial_of(row);
            }
        }
        states = next;
    }
    Ok(states
        .get(&(vec![0; p], 0))
        .cloned()
        .unwrap_or_else(BigInt::zero))
}

fn check_z4_support(r: usize, s: usize, t: &TypeVector) -> Result<usize> {
    let n = 2 * (r + s);
    if t.p() != 4 || t.n() != n {
        return Err(Error::InvalidType(format!(
            "type {t} must be over Z_4 with length 2(r+s) = {n}"
        )));
    }
    Ok(n)
}

/// `beta(v) = |S(v,0)| + |S(v,2)|` via the binary dual enumerator:
/// `C(n; r,s,r,s) / C(n, a) * (1/2 (x+y)^n + 1/2 (x+y)^{2r} (x-y)^{2s})[a, b]`
/// with `a = t_0 + t_2`, `b = t_1 + t_3`.
pub fn beta(r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    let n = check_z4_support(r, s, t)?;
    let a = t.get(0) + t.get(2);
    let b = t.get(1) + t.get(3);
    // (x+y)^{2r} (x-y)^{2s} [x^a y^b]: pick i copies of -y from the second factor.
    let g: BigInt = (0..=b.min(2 * s))
        .map(|i| {
            let term = binomial(2 * s as i64, i as i64) * binomial(2 * r as i64, (b - i) as i64);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let numerator = multinomial_of(&[r, s, r, s]) * (binomial(n as i64, b as i64) + g);
    let denominator = BigInt::from(2) * binomial(n as i64, a as i64);
    exact_quotient(numerator, &denominator, "beta")
}

/// `|S(v,0)|` from the three-term dual enumerator of the `(r,s,r,s)` code.
pub fn s0_count(r: usize, s: usize, t: &TypeVector) -> Result<BigInt> {
    check_z4_support(r, s, t)?;
    let full = multinomial(t);
    let kernel = generating_coeff(r, s, t)?;
    let mixed = mixed_power_coeff(2 * r, 2 * s, t);
    let numerator = multinomial_of(&[r, s, r, s]) * (&full + BigInt::from(2) * kernel + mixed);
    let denominator = BigInt::from(4) * full;
    exact_quotient(numerator, &denominator, "|S(v,0)|")
}

// (x+y+z+w)^{e1} (x-y+z-w)^{e2} [t]: split t = a + b with |a| = e1, |b| = e2,
// the second factor contributing a sign for each y or w it supplies.
fn mixed_power_coeff(e1: usize, e2: usize, t: &TypeVector) -> BigInt {
    let t = t.parts();
    let mut acc = BigInt::zero();
    for a in enumerate_types(4, e1) {
        let a = a.parts();
        if a.iter().zip(t).any(|(x, y)| x > y) {
            continue;
        }
        let b: Vec<usize> = t.iter().zip(a).map(|(y, x)| y - x).collect();
        debug_assert_eq!(b.iter().sum::<usize>(), e2);
        let term = multinomial_of(a) * multinomial_of(&b);
        if (b[1] + b[3]) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn exact_quotient(numerator: BigInt, denominator: &BigInt, what: &str) -> Result<BigInt> {
    let (q, rem) = numerator.div_rem(denominator);
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: {numerator} / {denominator}")));
    }
    Ok(q)
}

/// Enumerates every vector of `Z_p^n` (as little-endian digit vectors).
pub(crate) fn all_vectors(p: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for slot in v.iter_mut() {
            *slot = (idx % p as u64) as usize;
            idx /= p as u64;
        }
        v
    })
}

fn dot(p: usize, a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<usize>() % p
}

/// Largest `n` for which the `Z_p^n` enumeration oracles run by default.
pub const DEFAULT_DUAL_ORACLE_CAP: usize = 10;

/// Enumerator of the dual of `<v>_p` by walking all of `Z_p^n`.
pub fn dual_enumerator_bruteforce(p: usize, t: &TypeVector, cap: usize) -> Result<WeightEnumerator> {
    check_alphabet(p, t)?;
    let n = t.n();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let v = t.representative();
    let mut out = WeightEnumerator::new(p, n);
    for w in all_vectors(p, n) {
        if dot(p, &v, &w) == 0 {
            out.add_term(&TypeVector::of_vector(p, &w)?, &GaussianInt::one());
        }
    }
    Ok(out)
}

/// `A_{s-perp}[t]` by walking all of `Z_p^n`.
pub fn dual_coeff_bruteforce(p: usize, s: &TypeVector, t: &TypeVector, cap: usize) -> Result<BigInt> {
    check_alphabet(p, s)?;
    check_alphabet(p, t)?;
    let n = s.n();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    let v = s.representative();
    let count = all_vectors(p, n)
        .filter(|w| TypeVector::of_vector(p, w).map(|tw| &tw == t).unwrap_or(false))
        .filter(|w| dot(p, &v, w) == 0)
        .count();
    Ok(BigInt::from(count))
}
