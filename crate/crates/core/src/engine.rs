//! Memoized evaluation of `dim Ext^q(Δ(λ), L(μ))` for SL2.
//!
//! Each step splits `λ = p b + c` and `μ = μ0 + p μ'` and consults
//! [`digit_case`] on `(c, μ0)`:
//!
//! * same digit: `Σ_{n even, 0≤n≤q} Ext^{q-n}(Δ(b+n), L(μ'))`
//! * mirror digit: the same sum over odd `n`
//! * Steinberg digit: `Ext^q(Δ(b), L(μ'))`
//! * otherwise the group vanishes by linkage.
//!
//! In characteristic two the same and mirror cases coincide and the sum runs
//! over every `n`. Degree zero is always the Hom leaf (one iff `λ = μ`), and
//! `Ext^q(Δ(λ), k)` vanishes for `q > 0`. The simple weight strictly decreases
//! at every step, so evaluation terminates after at most `log_p μ` layers.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::weights::{digit_case, split_simple, Characteristic, DigitCase, Weight};

/// Arbitrary-precision dimension.
pub type DimCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtQuery {
    pub q: u32,
    pub weyl: Weight,
    pub simple: Weight,
    pub p: Characteristic,
}

impl ExtQuery {
    pub fn new(q: u32, weyl: impl Into<Weight>, simple: impl Into<Weight>, p: Characteristic) -> Self {
        ExtQuery {
            q,
            weyl: weyl.into(),
            simple: simple.into(),
            p,
        }
    }
}

/// Storage for solved queries. Entries are never overwritten with a
/// different value: the recursion is deterministic.
pub trait Memo {
    fn lookup(&self, query: &ExtQuery) -> Option<DimCount>;
    fn store(&mut self, query: ExtQuery, value: DimCount);
}

#[derive(Debug, Default, Clone)]
pub struct MemoStore {
    map: HashMap<ExtQuery, DimCount>,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl Memo for MemoStore {
    fn lookup(&self, query: &ExtQuery) -> Option<DimCount> {
        self.map.get(query).cloned()
    }

    fn store(&mut self, query: ExtQuery, value: DimCount) {
        self.map.entry(query).or_insert(value);
    }
}

/// A memo that several threads may fill at once. Inserts are first-writer
/// wins, which is sound because every writer computes the same value.
#[derive(Debug, Default)]
pub struct SharedMemoStore {
    map: RwLock<HashMap<ExtQuery, DimCount>>,
}

impl SharedMemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.read().is_empty()
    }
}

impl Memo for &SharedMemoStore {
    fn lookup(&self, query: &ExtQuery) -> Option<DimCount> {
        self.map.read().get(query).cloned()
    }

    fn store(&mut self, query: ExtQuery, value: DimCount) {
        self.map.write().entry(query).or_insert(value);
    }
}

enum Step {
    Value(DimCount),
    Sum(Vec<ExtQuery>),
}

fn expand(query: &ExtQuery) -> Step {
    let ExtQuery { q, weyl, simple, p } = query;
    if *q == 0 {
        return Step::Value(if weyl == simple { DimCount::one() } else { DimCount::zero() });
    }
    if simple.is_zero() {
        return Step::Value(DimCount::zero());
    }
    let (b, c) = weyl.div_rem_digit(*p);
    let (mu0, mu_rest) = split_simple(simple, *p);
    let case = digit_case(c, mu0, *p).expect("digits are reduced mod p");
    let child = |n: u32| ExtQuery {
        q: q - n,
        weyl: b.plus(n),
        simple: mu_rest.clone(),
        p: *p,
    };
    match case {
        DigitCase::NoMatch => Step::Value(DimCount::zero()),
        DigitCase::SteinbergDigit => Step::Sum(vec![child(0)]),
        DigitCase::SameDigit(_) if p.get() == 2 => Step::Sum((0..=*q).map(child).collect()),
        DigitCase::SameDigit(_) => Step::Sum((0..=*q).step_by(2).map(child).collect()),
        DigitCase::MirrorDigit(_) => Step::Sum((1..=*q).step_by(2).map(child).collect()),
    }
}

/// `dim Ext^q(Δ(λ), L(μ))`, evaluated with an explicit work stack.
pub fn ext_dim<M: Memo>(query: &ExtQuery, memo: &mut M) -> DimCount {
    if let Some(v) = memo.lookup(query) {
        return v;
    }
    let mut stack = vec![query.clone()];
    while let Some(top) = stack.last() {
        if memo.lookup(top).is_some() {
            stack.pop();
            continue;
        }
        match expand(top) {
            Step::Value(v) => {
                let top = stack.pop().unwrap();
                memo.store(top, v);
            }
            Step::Sum(children) => {
                let mut total = DimCount::zero();
                let mut missing = Vec::new();
                for child in children {
                    match memo.lookup(&child) {
                        Some(v) => total += v,
                        None => missing.push(child),
                    }
                }
                if missing.is_empty() {
                    let top = stack.pop().unwrap();
                    memo.store(top, total);
                } else {
                    stack.extend(missing);
                }
            }
        }
    }
    memo.lookup(query).expect("root solved")
}

/// One row of a dimension table: degree, simple weight, dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: u32,
    pub weight: Weight,
    pub dim: DimCount,
}

/// An engine bound to one characteristic, owning its memo.
#[derive(Debug, Clone)]
pub struct ExtEngine {
    p: Characteristic,
    memo: MemoStore,
}

impl ExtEngine {
    pub fn new(p: Characteristic) -> Self {
        ExtEngine {
            p,
            memo: MemoStore::new(),
        }
    }

    pub fn characteristic(&self) -> Characteristic {
        self.p
    }

    pub fn memo(&self) -> &MemoStore {
        &self.memo
    }

    pub fn ext_dim(&mut self, q: u32, weyl: &Weight, simple: &Weight) -> DimCount {
        let query = ExtQuery {
            q,
            weyl: weyl.clone(),
            simple: simple.clone(),
            p: self.p,
        };
        ext_dim(&query, &mut self.memo)
    }

    /// `dim H^m(G, L(μ)) = dim Ext^m(Δ(0), L(μ))`.
    pub fn cohomology_dim(&mut self, m: u32, simple: &Weight) -> DimCount {
        self.ext_dim(m, &Weight::zero(), simple)
    }

    /// Entry `r` is `dim H^m(G, L(2^r))` for `r = 0..=r_max` (`p = 2`).
    pub fn stability_profile(&mut self, m: u32, r_max: u32) -> Result<Vec<DimCount>> {
        self.require_two("stability_profile")?;
        if r_max < m {
            return Err(Error::InvalidArgument(format!(
                "stability profile needs r_max >= m, got r_max = {r_max}, m = {m}"
            )));
        }
        Ok((0..=r_max)
            .map(|r| self.cohomology_dim(m, &Weight::power_of_two(r)))
            .collect())
    }

    fn require_two(&self, op: &str) -> Result<()> {
        if self.p.get() == 2 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{op} is defined for p = 2 only")))
        }
    }
}

/// `dim H^m(G, L(μ))` with a throwaway memo.
pub fn cohomology_dim(m: u32, simple: &Weight, p: Characteristic) -> DimCount {
    ExtEngine::new(p).cohomology_dim(m, simple)
}

/// Rows `m = 1..=m_max` of `dim H^m(SL2, L(2^m))` in characteristic two.
pub fn table_self_twist(m_max: u32) -> Vec<TableRow> {
    let mut engine = ExtEngine::new(Characteristic::TWO);
    (1..=m_max)
        .map(|m| {
            let weight = Weight::power_of_two(m);
            let dim = engine.cohomology_dim(m, &weight);
            TableRow { m, weight, dim }
        })
        .collect()
}

/// Rows `m = m_min..=m_max` of `dim H^m(SL2, L(r 2^{m-2}))` in characteristic two.
pub fn table_r_twist(r: u64, m_min: u32, m_max: u32) -> Result<Vec<TableRow>> {
    if r % 2 == 0 {
        return Err(Error::InvalidArgument(format!("multiplier r must be odd, got {r}")));
    }
    if m_min < 2 {
        return Err(Error::InvalidArgument(format!(
            "r-twist rows start at m >= 2, got {m_min}"
        )));
    }
    let mut engine = ExtEngine::new(Characteristic::TWO);
    Ok((m_min..=m_max)
        .map(|m| {
            let weight = Weight::scaled_power(r, Characteristic::TWO, m - 2);
            let dim = engine.cohomology_dim(m, &weight);
            TableRow { m, weight, dim }
        })
        .collect())
}

/// An SL3 weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl3Weight {
    pub a1: Weight,
    pub a2: Weight,
}

impl Sl3Weight {
    pub fn new(a1: impl Into<Weight>, a2: impl Into<Weight>) -> Self {
        Sl3Weight {
            a1: a1.into(),
            a2: a2.into(),
        }
    }
}

/// Reduces `Ext^q_{SL3}(Δ(λ), L(μ))` with `μ - λ ∈ Zβ`, `β = (-1, 2)`, to
/// `Ext^q_{SL2}(Δ(2⟨λ,β∨⟩), L(2⟨μ,β∨⟩))`.
pub fn wall_reduce_sl3(
    weyl: &Sl3Weight,
    simple: &Sl3Weight,
    q: u32,
    p: Characteristic,
    memo: &mut impl Memo,
) -> Result<DimCount> {
    // (c1 - a1, c2 - a2) = t (-1, 2) for some integer t  <=>  2 a1 + a2 = 2 c1 + c2
    let lhs = weyl.a1.as_biguint() * 2u32 + weyl.a2.as_biguint();
    let rhs = simple.a1.as_biguint() * 2u32 + simple.a2.as_biguint();
    if lhs != rhs {
        return Err(Error::NotRootMultiple);
    }
    let query = ExtQuery {
        q,
        weyl: Weight::new(weyl.a2.as_biguint() * 2u32),
        simple: Weight::new(simple.a2.as_biguint() * 2u32),
        p,
    };
    Ok(ext_dim(&query, memo))
}
