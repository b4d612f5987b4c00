//! Exhaustive, non-memoized expansion of `H^m(G, L(μ))` in characteristic two.
//!
//! Every root-to-leaf path through the expansion tree is materialised. A path
//! records the `n` chosen at each summing step as its a-string; forced
//! Steinberg steps add nothing to the string. Paths are pruned with
//! [`LeafStatus::Failed`] when the weights are not linked or when they reach
//! `Ext^q(Δ(r), k)` with `q > 0`. Because nothing is shared between paths the
//! cost is exponential in `m`, which is why every entry point takes a cap.

use crate::error::{Error, Result};
use crate::strings::AString;
use crate::weights::{Characteristic, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafStatus {
    Failed,
    TrivialLeaf,
    NontrivialLeaf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTrace {
    /// The `n` chosen at each summing step, in order. For failed paths this is
    /// the prefix walked before pruning.
    pub choices: Vec<u32>,
    pub status: LeafStatus,
    /// Terminal `(Weyl, simple)` pair of the `Ext^0` leaf, absent on failure.
    pub leaf: Option<(Weight, Weight)>,
}

impl LeafTrace {
    pub fn is_nontrivial(&self) -> bool {
        self.status == LeafStatus::NontrivialLeaf
    }

    /// The canonical a-string; `None` for failed paths.
    pub fn a_string(&self) -> Option<AString> {
        match self.status {
            LeafStatus::Failed => None,
            _ => AString::new(self.choices.clone()).ok(),
        }
    }
}

/// Default bound on the number of paths an expansion may produce.
pub const DEFAULT_TRACE_CAP: usize = 1_000_000;

struct Frame {
    q: u32,
    weyl: Weight,
    simple: Weight,
    entries: Vec<u32>,
}

enum Reduced {
    Failed,
    /// Both weights even, ready for a summing step.
    Even { half_weyl: Weight, half_simple: Weight },
}

/// Applies forced Steinberg steps until the weights are both even, or reports
/// failure. Requires `q > 0`.
fn reduce(mut weyl: Weight, mut simple: Weight) -> Reduced {
    let two = Characteristic::TWO;
    loop {
        if simple.is_zero() {
            return Reduced::Failed;
        }
        let (wb, wd) = weyl.div_rem_digit(two);
        let (sb, sd) = simple.div_rem_digit(two);
        match (wd, sd) {
            (0, 0) => {
                return Reduced::Even {
                    half_weyl: wb,
                    half_simple: sb,
                }
            }
            (1, 1) => {
                weyl = wb;
                simple = sb;
            }
            _ => return Reduced::Failed,
        }
    }
}

fn leaf(entries: Vec<u32>, weyl: Weight, simple: Weight) -> LeafTrace {
    let status = if weyl == simple {
        LeafStatus::NontrivialLeaf
    } else {
        LeafStatus::TrivialLeaf
    };
    LeafTrace {
        choices: entries,
        status,
        leaf: Some((weyl, simple)),
    }
}

fn failed(entries: Vec<u32>) -> LeafTrace {
    LeafTrace {
        choices: entries,
        status: LeafStatus::Failed,
        leaf: None,
    }
}

/// Every expansion path of `Ext^m(Δ(0), L(μ))`, in depth-first order with
/// smaller `n` first.
pub fn expand_trace(m: u32, simple: &Weight, cap: usize) -> Result<Vec<LeafTrace>> {
    if m == 0 {
        return Err(Error::InvalidArgument("trace expansion needs m >= 1".into()));
    }
    let mut out = Vec::new();
    let mut stack = vec![Frame {
        q: m,
        weyl: Weight::zero(),
        simple: simple.clone(),
        entries: Vec::new(),
    }];
    while let Some(Frame { q, weyl, simple, entries }) = stack.pop() {
        if q == 0 {
            push_capped(&mut out, leaf(entries, weyl, simple), cap)?;
            continue;
        }
        match reduce(weyl, simple) {
            Reduced::Failed => push_capped(&mut out, failed(entries), cap)?,
            Reduced::Even { half_weyl, half_simple } => {
                for n in (0..=q).rev() {
                    let mut next = entries.clone();
                    next.push(n);
                    stack.push(Frame {
                        q: q - n,
                        weyl: half_weyl.plus(n),
                        simple: half_simple.clone(),
                        entries: next,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn push_capped(out: &mut Vec<LeafTrace>, t: LeafTrace, cap: usize) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::CapExceeded { cap });
    }
    out.push(t);
    Ok(())
}

/// Number of non-trivial paths, i.e. `dim H^m(G, L(μ))` counted the slow way.
pub fn count_nontrivial(m: u32, simple: &Weight, cap: usize) -> Result<usize> {
    Ok(expand_trace(m, simple, cap)?
        .iter()
        .filter(|t| t.is_nontrivial())
        .count())
}

/// Follows a single prescribed list of summing choices through the expansion
/// of `Ext^m(Δ(0), L(μ))`.
///
/// Returns `Failed` when the list does not describe a path that terminates
/// exactly at degree zero on its last entry.
pub fn follow_a_string(m: u32, simple: &Weight, entries: &[u32]) -> LeafStatus {
    if entries.iter().map(|&a| a as u64).sum::<u64>() != m as u64 || entries.last() == Some(&0) {
        return LeafStatus::Failed;
    }
    let mut q = m;
    let mut weyl = Weight::zero();
    let mut simple = simple.clone();
    for &a in entries {
        match reduce(weyl, simple) {
            Reduced::Failed => return LeafStatus::Failed,
            Reduced::Even { half_weyl, half_simple } => {
                q -= a;
                weyl = half_weyl.plus(a);
                simple = half_simple;
            }
        }
    }
    debug_assert_eq!(q, 0);
    if weyl == simple {
        LeafStatus::NontrivialLeaf
    } else {
        LeafStatus::TrivialLeaf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings_with(traces: &[LeafTrace], status: LeafStatus) -> Vec<Vec<u32>> {
        traces
            .iter()
            .filter(|t| t.status == status)
            .map(|t| t.choices.clone())
            .collect()
    }

    #[test]
    fn worked_example_m6_mu24() {
        let traces = expand_trace(6, &Weight::from(24u64), DEFAULT_TRACE_CAP).unwrap();
        let nontrivial = strings_with(&traces, LeafStatus::NontrivialLeaf);
        let trivial = strings_with(&traces, LeafStatus::TrivialLeaf);
        assert!(nontrivial.contains(&vec![4, 0, 2]));
        assert!(trivial.contains(&vec![4, 2]));
        assert!(traces
            .iter()
            .all(|t| t.choices != [3, 3] && t.choices != [3, 2, 1]));
        assert_eq!(nontrivial.len(), 3);
        assert_eq!(
            traces.iter().find(|t| t.choices == [4, 0, 2]).unwrap().leaf,
            Some((Weight::from(3u64), Weight::from(3u64)))
        );
    }

    #[test]
    fn follow_single_strings() {
        let mu = Weight::from(24u64);
        assert_eq!(follow_a_string(6, &mu, &[4, 0, 2]), LeafStatus::NontrivialLeaf);
        assert_eq!(follow_a_string(6, &mu, &[4, 2]), LeafStatus::TrivialLeaf);
        assert_eq!(follow_a_string(6, &mu, &[3, 3]), LeafStatus::Failed);
        assert_eq!(follow_a_string(6, &mu, &[3, 2, 1]), LeafStatus::Failed);
        assert_eq!(follow_a_string(6, &mu, &[4, 2, 0]), LeafStatus::Failed);
    }

    #[test]
    fn leaves_sum_to_degree() {
        for mu in [24u64, 48, 64, 96, 100] {
            for t in expand_trace(7, &Weight::from(mu), DEFAULT_TRACE_CAP).unwrap() {
                if t.status != LeafStatus::Failed {
                    let a = t.a_string().unwrap();
                    assert_eq!(a.degree(), 7);
                    assert_eq!(a.entries(), &t.choices[..]);
                }
            }
        }
    }

    #[test]
    fn odd_and_zero_weights_fail_immediately() {
        let t = expand_trace(3, &Weight::from(5u64), 10).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].status, LeafStatus::Failed);
        assert!(t[0].choices.is_empty());
        assert!(t[0].a_string().is_none());
        let t = expand_trace(3, &Weight::zero(), 10).unwrap();
        assert_eq!(t[0].status, LeafStatus::Failed);
    }

    #[test]
    fn cap_is_enforced() {
        let err = expand_trace(8, &Weight::power_of_two(8), 5).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 5 });
        assert!(expand_trace(0, &Weight::from(2u64), 5).is_err());
    }
}
