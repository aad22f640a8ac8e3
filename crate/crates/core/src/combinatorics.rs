//! Exact counting primitives and type-vector enumeration.
//!
//! A *type* of a vector `v` over `Z_p` is the tuple of symbol occurrence
//! counts `(wt_0(v), ..., wt_{p-1}(v))`. Everything downstream is indexed by
//! types, so this module is the common floor of the crate.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Default number of cached factorials.
pub const DEFAULT_FACTORIAL_CACHE_CAP: usize = 256;

static FACTORIAL_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_FACTORIAL_CACHE_CAP);
static FACTORIALS: LazyLock<RwLock<Vec<BigInt>>> =
    LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

/// Changes the number of factorials kept in the shared cache. Values past
/// the cap are still computed, just not retained.
pub fn set_factorial_cache_cap(cap: usize) {
    FACTORIAL_CAP.store(cap, Ordering::Relaxed);
    let mut table = FACTORIALS.write().unwrap_or_else(|e| e.into_inner());
    table.truncate(cap.max(1));
}

pub fn factorial_cache_cap() -> usize {
    FACTORIAL_CAP.load(Ordering::Relaxed)
}

/// `n!`, served from the shared cache when `n` is under the cap.
pub fn factorial(n: usize) -> BigInt {
    {
        let table = FACTORIALS.read().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = table.get(n) {
            return f.clone();
        }
    }
    let cap = factorial_cache_cap();
    if n < cap {
        let mut table = FACTORIALS.write().unwrap_or_else(|e| e.into_inner());
        while table.len() <= n {
            let k = table.len();
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        return table[n].clone();
    }
    // Past the cap: extend from the largest cached value without storing.
    let (start, mut acc) = {
        let table = FACTORIALS.read().unwrap_or_else(|e| e.into_inner());
        let last = table.len() - 1;
        (last, table[last].clone())
    };
    for k in start + 1..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Rows `0..=n` of Pascal's triangle, for inner loops that need many
/// binomials of bounded size.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigInt::one()]);
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            row.push(BigInt::one());
            for k in 1..m {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`; zero for `k` outside `[0, n]`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: i64) -> &BigInt {
        static ZERO: LazyLock<BigInt> = LazyLock::new(BigInt::zero);
        if k < 0 || k as usize > n {
            return &ZERO;
        }
        &self.rows[n][k as usize]
    }
}

/// Non-negative ordered partition of `n` into `p` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector {
    parts: Vec<usize>,
}

impl TypeVector {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidType(format!(
                "alphabet size must be at least 2, got {}",
                parts.len()
            )));
        }
        Ok(Self { parts })
    }

    /// The type of a concrete vector over `Z_p`.
    pub fn of_vector(p: usize, v: &[usize]) -> Result<Self> {
        let mut parts = vec![0; p];
        for &x in v {
            if x >= p {
                return Err(Error::InvalidType(format!("symbol {x} not in Z_{p}")));
            }
            parts[x] += 1;
        }
        Self::new(parts)
    }

    pub fn p(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn get(&self, k: usize) -> usize {
        self.parts[k]
    }

    /// The representative vector `0^{t_0} 1^{t_1} ... (p-1)^{t_{p-1}}`.
    pub fn representative(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(sym, &count)| std::iter::repeat_n(sym, count))
            .collect()
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// `n! / (t_0! ... t_{p-1}!)`, the number of vectors of type `t`.
pub fn multinomial(t: &TypeVector) -> BigInt {
    multinomial_of(t.parts())
}

pub fn multinomial_of(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    let mut denom = BigInt::one();
    for &k in parts {
        denom *= factorial(k);
    }
    factorial(n) / denom
}

/// Lazily enumerates every type of length `n` over `Z_p` in lexicographic order.
pub fn enumerate_types(p: usize, n: usize) -> TypeIter {
    TypeIter::new(p, n)
}

#[derive(Debug, Clone)]
pub struct TypeIter {
    next: Option<Vec<usize>>,
}

impl TypeIter {
    pub fn new(p: usize, n: usize) -> Self {
        assert!(p >= 2, "alphabet size must be at least 2");
        let mut first = vec![0; p];
        first[p - 1] = n;
        Self { next: Some(first) }
    }
}

impl Iterator for TypeIter {
    type Item = TypeVector;

    fn next(&mut self) -> Option<TypeVector> {
        let current = self.next.take()?;
        let p = current.len();
        // Bump the last position whose tail still has mass, then move the
        // remaining mass to the final slot.
        let mut tail = current[p - 1];
        let mut successor = None;
        for i in (0..p - 1).rev() {
            if tail > 0 {
                let mut s = current.clone();
                s[i] += 1;
                for slot in s.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                s[p - 1] = tail - 1;
                successor = Some(s);
                break;
            }
            tail += current[i];
        }
        self.next = successor;
        Some(TypeVector { parts: current })
    }
}

/// `h(x) = -x log2 x - (1-x) log2 (1-x)` with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy needs 0 <= x <= 1, got {x}")));
    }
    let term = |y: f64| if y == 0.0 { 0.0 } else { -y * y.log2() };
    Ok(term(x) + term(1.0 - x))
}
