//! a-, b- and c-strings, partitions of one into powers of 1/2, and the
//! counting identities that tie them to `H^m(SL2, L(2^m))` at `p = 2`.
//!
//! The two counting routines, [`count_c_strings`] and [`partitions_of_unity`],
//! are deliberately independent dynamic programmes so that each checks the
//! other.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::engine::DimCount;
use crate::error::{Error, Result};

/// A list of summing choices whose last entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AString {
    entries: Vec<u32>,
}

impl AString {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        match entries.last() {
            Some(&last) if last > 0 => Ok(AString { entries }),
            _ => Err(Error::InvalidArgument(format!(
                "a-string must be non-empty with a positive final entry: {entries:?}"
            ))),
        }
    }

    /// Drops trailing zeros of an `(a, n)`-string.
    pub fn from_padded(padded: &[u32]) -> Result<Self> {
        let len = padded.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1);
        AString::new(padded[..len].to_vec())
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// The `(a, n)` form: zero padded on the right to length `n`.
    pub fn padded(&self, n: usize) -> Option<Vec<u32>> {
        if n < self.entries.len() {
            return None;
        }
        let mut v = self.entries.clone();
        v.resize(n, 0);
        Some(v)
    }
}

/// Certificate `b_1..b_n` for a non-trivial `(a, n)`-string of `L(2^n)`.
///
/// Entries satisfy `2 b_i ≥ b_{i-1}` for `i < n` (with `b_0 = 0`),
/// `b_{n-1} + b_n = 1` and `Σ_{i<n} b_i = m - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BString {
    entries: Vec<u32>,
    degree: u32,
}

impl BString {
    pub fn new(entries: Vec<u32>, degree: u32) -> Result<Self> {
        let b = BString { entries, degree };
        if b.is_valid() {
            Ok(b)
        } else {
            Err(Error::InvalidArgument(format!(
                "not a b-string of degree {degree}: {:?}",
                b.entries
            )))
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn is_valid(&self) -> bool {
        let n = self.entries.len();
        if n == 0 || self.degree == 0 {
            return false;
        }
        let b = |i: usize| if i == 0 { 0 } else { self.entries[i - 1] };
        let descent = (1..n).all(|i| 2 * b(i) >= b(i - 1));
        let closes = b(n - 1) + b(n) == 1;
        let sum: u32 = (1..n).map(b).sum();
        descent && closes && sum == self.degree - 1
    }

    /// `a_i = 2 b_i - b_{i-1}` for `i < n`, `a_n = b_n`.
    pub fn padded_a_string(&self) -> Vec<u32> {
        let n = self.entries.len();
        let mut prev = 0;
        let mut a = Vec::with_capacity(n);
        for (i, &b) in self.entries.iter().enumerate() {
            if i + 1 == n {
                a.push(b);
            } else {
                a.push(2 * b - prev);
            }
            prev = b;
        }
        a
    }

    pub fn a_string(&self) -> AString {
        AString::from_padded(&self.padded_a_string()).expect("b-strings recover a non-trivial a-string")
    }
}

/// Streams every b-string of degree `m` and length `n` in lexicographic order.
#[derive(Debug)]
pub struct BStrings {
    m: u32,
    n: usize,
    stack: Vec<(Vec<u32>, u32)>,
}

impl BStrings {
    pub fn new(m: u32, n: usize) -> Self {
        let stack = if m == 0 || n == 0 { Vec::new() } else { vec![(Vec::new(), m - 1)] };
        BStrings { m, n, stack }
    }
}

impl Iterator for BStrings {
    type Item = BString;

    fn next(&mut self) -> Option<BString> {
        // prefix holds b_1..b_k for k < n; `remaining` is what Σ_{i<n} b_i still needs
        while let Some((prefix, remaining)) = self.stack.pop() {
            if prefix.len() + 1 == self.n {
                let last = prefix.last().copied().unwrap_or(0);
                if remaining == 0 && last <= 1 {
                    let mut entries = prefix;
                    entries.push(1 - last);
                    return Some(BString { entries, degree: self.m });
                }
                continue;
            }
            let prev = prefix.last().copied().unwrap_or(0);
            let lo = prev.div_ceil(2);
            for v in (lo..=remaining).rev() {
                let mut next = prefix.clone();
                next.push(v);
                self.stack.push((next, remaining - v));
            }
        }
        None
    }
}

/// Default bound for enumerations.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

pub fn enumerate_b_strings(m: u32, n: usize, cap: usize) -> Result<Vec<BString>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("b-strings need m >= 1 and n >= 1".into()));
    }
    let mut out = Vec::new();
    for b in BStrings::new(m, n) {
        if out.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        out.push(b);
    }
    Ok(out)
}

/// `c_1 = 1`, `c_i ≤ 2 c_{i-1}`, `Σ c_i = k` for a string of length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CString {
    entries: Vec<u32>,
}

impl CString {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let c = CString { entries };
        if c.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidArgument(format!("not a c-string: {:?}", c.entries)))
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_valid(&self) -> bool {
        let e = &self.entries;
        e.first() == Some(&1)
            && e.windows(2).all(|w| w[1] <= 2 * w[0])
            && e.iter().map(|&c| c as u64).sum::<u64>() == e.len() as u64
    }
}

/// Number of c-strings of length `k`.
///
/// Layered over positions; a layer maps `(last value, remaining sum)` to the
/// number of completions, and each layer is filled with prefix sums so the
/// whole count is `O(k^3)` big-integer additions.
pub fn count_c_strings(k: u32) -> DimCount {
    if k == 0 {
        return DimCount::zero();
    }
    let k = k as usize;
    // ways[v][s]: completions of the remaining positions after a value v with s left to place
    let mut ways = vec![vec![DimCount::zero(); k + 1]; k + 1];
    for row in ways.iter_mut() {
        row[0] = DimCount::one();
    }
    for _ in 1..k {
        let mut next = vec![vec![DimCount::zero(); k + 1]; k + 1];
        for s in 0..=k {
            // prefix[t] = Σ_{c ≤ t} ways[c][s - c]
            let mut prefix = Vec::with_capacity(s + 1);
            let mut acc = DimCount::zero();
            for c in 0..=s {
                acc += &ways[c][s - c];
                prefix.push(acc.clone());
            }
            for (v, row) in next.iter_mut().enumerate() {
                row[s] = prefix[(2 * v).min(s)].clone();
            }
        }
        ways = next;
    }
    ways[1][k - 1].clone()
}

/// Number of multisets of `m` powers of 1/2 summing to one.
///
/// Parts are placed level by level. With `slots` open units of size `2^-j`,
/// choose how many become parts at this level; the rest each split into two
/// units of the next level.
pub fn partitions_of_unity(m: u32) -> DimCount {
    let m = m as usize;
    // count[r][s]: ways to fill s open slots with exactly r parts; zero when s > r
    let mut count = vec![vec![BigUint::zero(); m + 1]; m + 1];
    count[0][0] = BigUint::one();
    for r in 1..=m {
        for s in (1..=r).rev() {
            let mut total = BigUint::zero();
            for t in 0..=s {
                let (rr, ss) = (r - t, 2 * (s - t));
                if ss <= rr {
                    total += &count[rr][ss];
                }
            }
            count[r][s] = total;
        }
    }
    if m == 0 {
        return BigUint::zero();
    }
    count[m][1].clone()
}

/// Expands `1, 2^t, 0^t` by splitting any subset of the 2s into `1, 1` and
/// dropping one trailing zero per split.
pub fn doubling_family(t: u32) -> BTreeSet<CString> {
    let t = t as usize;
    (0u64..1 << t)
        .map(|mask| {
            let mut entries = Vec::with_capacity(2 * t + 1);
            entries.push(1);
            for i in 0..t {
                if mask >> i & 1 == 1 {
                    entries.extend([1, 1]);
                } else {
                    entries.push(2);
                }
            }
            entries.resize(2 * t + 1, 0);
            CString { entries }
        })
        .collect()
}

/// `Fib(1) = Fib(2) = 1`.
pub fn fibonacci(n: u32) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub k: u32,
    pub count: DimCount,
    pub upper: DimCount,
    pub lower: DimCount,
    /// `count(k + 1) / count(k)`, approximate.
    pub ratio: f64,
}

impl GrowthRow {
    pub fn holds(&self) -> bool {
        self.lower <= self.count && self.count <= self.upper
    }
}

#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(GrowthRow::holds)
    }
}

/// Checks `Fib(k-1) ≤ count_c_strings(k) ≤ 2^{k-1}` for `k = 4..=k_max`.
pub fn growth_bounds(k_max: u32) -> Result<GrowthReport> {
    if k_max < 4 {
        return Err(Error::InvalidArgument(format!("growth bounds need k_max >= 4, got {k_max}")));
    }
    let counts: Vec<DimCount> = (0..=k_max + 1).map(count_c_strings).collect();
    let rows = (4..=k_max)
        .map(|k| {
            let count = counts[k as usize].clone();
            let next = &counts[k as usize + 1];
            GrowthRow {
                k,
                upper: BigUint::one() << (k - 1),
                lower: fibonacci(k - 1),
                ratio: ratio(next, &count),
                count,
            }
        })
        .collect();
    Ok(GrowthReport { rows })
}

pub fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY)
}
