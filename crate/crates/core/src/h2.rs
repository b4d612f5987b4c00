//! Second cohomology of simple SL2-modules for `p > 3`.
//!
//! `H^2(G, L(μ))` is one-dimensional exactly when `μ` is a Frobenius twist of
//! one of `2p`, `2p^2 - 2p - 2` or `(2p - 2)(1 + p^e)` with `e > 1`, and zero
//! otherwise. The self-Ext of the tower `V_n = L(1) ⊗ L(1)^[1] ⊗ ... ⊗ L(1)^[n]`
//! is then read off by splitting `V_n ⊗ V_n*` into simple summands.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::engine::{DimCount, ExtEngine};
use crate::error::{Error, Result};
use crate::weights::{subset_tensor_weight, Characteristic, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H2Reason {
    /// Untwisted weight `2p`.
    TwoP,
    /// Untwisted weight `2p^2 - 2p - 2`.
    TwoPSqMinus,
    /// Untwisted weight `2p - 2 + (2p - 2) p^e`, `e > 1`.
    TwoPMinus2Family(u32),
    NotInList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct H2Witness {
    pub nonzero: bool,
    pub reason: H2Reason,
    /// Frobenius twist applied to the listed weight.
    pub twist: u32,
}

impl H2Witness {
    fn zero() -> Self {
        H2Witness {
            nonzero: false,
            reason: H2Reason::NotInList,
            twist: 0,
        }
    }

    fn hit(reason: H2Reason, twist: u32) -> Self {
        H2Witness {
            nonzero: true,
            reason,
            twist,
        }
    }
}

fn require_large(op: &'static str, p: Characteristic) -> Result<()> {
    if p.get() > 3 {
        Ok(())
    } else {
        Err(Error::CharacteristicTooSmall { op, p: p.get() })
    }
}

/// Returns `e` when `x = p^e`.
fn log_exact(mut x: BigUint, p: &BigUint) -> Option<u32> {
    let mut e = 0;
    if x.is_zero() {
        return None;
    }
    while (&x % p).is_zero() {
        x /= p;
        e += 1;
    }
    x.is_one().then_some(e)
}

pub fn h2_dim(mu: &Weight, p: Characteristic) -> Result<(DimCount, H2Witness)> {
    require_large("h2_dim", p)?;
    let witness = classify(mu, p);
    let dim = if witness.nonzero { DimCount::one() } else { DimCount::zero() };
    Ok((dim, witness))
}

fn classify(mu: &Weight, p: Characteristic) -> H2Witness {
    if mu.is_zero() {
        return H2Witness::zero();
    }
    let pb = BigUint::from(p.get());
    let mut core = mu.as_biguint().clone();
    let mut v = 0u32;
    while (&core % &pb).is_zero() {
        core /= &pb;
        v += 1;
    }
    // 2p is the only listed weight divisible by p; the other two are ≡ -2 mod p.
    if core == BigUint::from(2u32) && v >= 1 {
        return H2Witness::hit(H2Reason::TwoP, v - 1);
    }
    let pp = p.get() as u64;
    if core == BigUint::from(2 * pp * pp - 2 * pp - 2) {
        return H2Witness::hit(H2Reason::TwoPSqMinus, v);
    }
    let step = BigUint::from(2 * pp - 2);
    if (&core % &step).is_zero() {
        let quotient = &core / &step;
        if quotient > BigUint::one() {
            if let Some(e) = log_exact(quotient - 1u32, &pb) {
                if e > 1 {
                    return H2Witness::hit(H2Reason::TwoPMinus2Family(e), v);
                }
            }
        }
    }
    H2Witness::zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerSpec {
    n: u32,
    p: Characteristic,
}

/// Largest tower whose `2^{n+1}` summands are expanded explicitly.
pub const MAX_TOWER: u32 = 20;

impl TowerSpec {
    pub fn new(n: u32, p: Characteristic) -> Result<Self> {
        require_large("ext2_self_tower", p)?;
        if n > MAX_TOWER {
            return Err(Error::TowerTooTall(n));
        }
        Ok(TowerSpec { n, p })
    }

    pub fn height(&self) -> u32 {
        self.n
    }

    pub fn characteristic(&self) -> Characteristic {
        self.p
    }
}

#[derive(Debug, Clone)]
pub struct TowerSummand {
    pub twists: Vec<u32>,
    pub weight: Weight,
    pub dim: DimCount,
    pub witness: H2Witness,
}

/// The simple summands `⊗_{i∈S} L(2)^[i]` of `V_n ⊗ V_n*` with their `H^2`.
pub fn tower_summands(spec: TowerSpec) -> Vec<TowerSummand> {
    let layers = spec.n + 1;
    (0u64..1 << layers)
        .map(|mask| {
            let twists: Vec<u32> = (0..layers).filter(|i| mask >> i & 1 == 1).collect();
            let weight = subset_tensor_weight(twists.iter().copied(), spec.p);
            let (dim, witness) = h2_dim(&weight, spec.p).expect("p checked by TowerSpec");
            TowerSummand {
                twists,
                weight,
                dim,
                witness,
            }
        })
        .collect()
}

/// `dim Ext^2(V_n, V_n) = dim H^2(V_n ⊗ V_n*)`.
pub fn ext2_self_tower(spec: TowerSpec) -> DimCount {
    tower_summands(spec).into_iter().map(|s| s.dim).sum()
}

/// Weights `μ ≤ μ_max` where the classification and `Ext^2(Δ(0), L(μ))`
/// computed by the recursion disagree.
pub fn h2_cross_check(p: Characteristic, mu_max: u64) -> Result<Vec<Weight>> {
    require_large("h2_cross_check", p)?;
    let mut engine = ExtEngine::new(p);
    let mut bad = Vec::new();
    for mu in 0..=mu_max {
        let w = Weight::from(mu);
        let (closed, _) = h2_dim(&w, p)?;
        if closed != engine.cohomology_dim(2, &w) {
            bad.push(w);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Characteristic {
        Characteristic::new(v).unwrap()
    }

    fn h2(mu: u64, pv: u32) -> (u32, H2Witness) {
        let (d, w) = h2_dim(&Weight::from(mu), p(pv)).unwrap();
        (u32::try_from(d).unwrap(), w)
    }

    #[test]
    fn listed_weights() {
        assert_eq!(h2(10, 5), (1, H2Witness::hit(H2Reason::TwoP, 0)));
        assert_eq!(h2(38, 5), (1, H2Witness::hit(H2Reason::TwoPSqMinus, 0)));
        assert_eq!(h2(50, 5), (1, H2Witness::hit(H2Reason::TwoP, 1)));
        assert_eq!(h2(208, 5), (1, H2Witness::hit(H2Reason::TwoPMinus2Family(2), 0)));
        assert_eq!(h2(48, 5).0, 0);
        assert_eq!(h2(11, 5), (0, H2Witness::zero()));
        assert_eq!(h2(2, 5).0, 0);
        assert_eq!(h2(0, 7).0, 0);
        assert_eq!(h2(38 * 125, 5), (1, H2Witness::hit(H2Reason::TwoPSqMinus, 3)));
    }

    #[test]
    fn rejects_small_p() {
        for pv in [2, 3] {
            assert!(matches!(
                h2_dim(&Weight::from(4u64), p(pv)),
                Err(Error::CharacteristicTooSmall { .. })
            ));
            assert!(TowerSpec::new(1, p(pv)).is_err());
            assert!(h2_cross_check(p(pv), 10).is_err());
        }
        assert_eq!(TowerSpec::new(21, p(5)), Err(Error::TowerTooTall(21)));
    }

    #[test]
    fn twist_invariant() {
        for pv in [5u32, 7] {
            // L(2) itself is not listed but its twist L(2p) is
            assert_eq!((h2(2, pv).0, h2(2 * pv as u64, pv).0), (0, 1));
            for mu in (0..=10_000u64).filter(|&mu| mu != 2) {
                let (a, wa) = h2(mu, pv);
                let (b, wb) = h2(mu * pv as u64, pv);
                assert_eq!(a, b, "mu={mu}");
                if mu > 0 && a == 1 {
                    assert_eq!(wb.twist, wa.twist + 1);
                }
            }
        }
    }

    #[test]
    fn tower_small() {
        let t = |n, pv| ext2_self_tower(TowerSpec::new(n, p(pv)).unwrap());
        assert_eq!(t(1, 5), 1u32.into());
        assert_eq!(t(4, 7), 4u32.into());
        assert_eq!(t(0, 5), 0u32.into());
    }

    #[test]
    fn only_positive_singletons_contribute() {
        for pv in [5u32, 7, 11] {
            for s in tower_summands(TowerSpec::new(8, p(pv)).unwrap()) {
                let expected = s.twists.len() == 1 && s.twists[0] > 0;
                assert_eq!(s.witness.nonzero, expected, "{:?}", s.twists);
                if expected {
                    assert_eq!(s.witness.reason, H2Reason::TwoP);
                    assert_eq!(s.witness.twist, s.twists[0] - 1);
                }
            }
        }
    }

    #[test]
    fn cross_check_small() {
        assert!(h2_cross_check(p(5), 9).unwrap().is_empty());
        assert!(h2_cross_check(p(5), 500).unwrap().is_empty());
        assert!(h2_cross_check(p(7), 2000).unwrap().is_empty());
    }
}
