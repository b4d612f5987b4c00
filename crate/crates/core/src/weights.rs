//! Dominant-weight arithmetic for SL2.
//!
//! Dominant weights are identified with non-negative integers. Everything the
//! recursions need is expressed through base-p digits: Steinberg's tensor
//! product theorem factors `L(w)` as `L(d0) ⊗ L(d1)^[1] ⊗ ...` over the digits
//! of `w`, and the recursion step only ever inspects the lowest digit of the
//! Weyl and simple highest weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic(u32);

impl Characteristic {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Characteristic(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic two, the case the self-twist tables live in.
    pub const TWO: Characteristic = Characteristic(2);

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A dominant weight of SL2, of unbounded size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Weight(BigUint);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigUint::zero())
    }

    pub fn new(value: BigUint) -> Self {
        Weight(value)
    }

    /// `2^k`, the highest weight of `L(1)^[k]` in characteristic two.
    pub fn power_of_two(k: u32) -> Self {
        Weight(BigUint::one() << k)
    }

    /// `mult * p^k`.
    pub fn scaled_power(mult: u64, p: Characteristic, k: u32) -> Self {
        Weight(BigUint::from(mult) * BigUint::from(p.get()).pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `self + n`.
    pub fn plus(&self, n: u32) -> Weight {
        Weight(&self.0 + n)
    }

    /// The Frobenius twist: multiplies the weight by p.
    pub fn twist(&self, p: Characteristic) -> Weight {
        Weight(&self.0 * p.get())
    }

    /// Splits `self = p * quotient + digit` with `digit` restricted.
    pub fn div_rem_digit(&self, p: Characteristic) -> (Weight, u32) {
        let p_big = BigUint::from(p.get());
        let digit = (&self.0 % &p_big).to_u32().expect("remainder below p");
        (Weight(&self.0 / p_big), digit)
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight(BigUint::from(v))
    }
}

impl From<u32> for Weight {
    fn from(v: u32) -> Self {
        Weight(BigUint::from(v))
    }
}

impl From<BigUint> for Weight {
    fn from(v: BigUint) -> Self {
        Weight(v)
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.0.to_str_radix(10)
    }
}

impl TryFrom<String> for Weight {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidArgument(format!("not a non-negative integer: {s:?}")));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(Weight)
            .ok_or_else(|| Error::InvalidArgument(format!("not a non-negative integer: {s:?}")))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical base-p digits of a weight, least significant first.
///
/// The sequence never ends in a zero digit, so the zero weight has no digits
/// and the length is the number of Frobenius layers the weight occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    digits: Vec<u32>,
    p: Characteristic,
}

impl DigitExpansion {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn characteristic(&self) -> Characteristic {
        self.p
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Reassembles `Σ digits[i] p^i`.
    pub fn weight(&self) -> Weight {
        let p = BigUint::from(self.p.get());
        let value = self
            .digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &p + d);
        Weight(value)
    }
}

pub fn p_adic_digits(w: &Weight, p: Characteristic) -> DigitExpansion {
    let mut digits = Vec::new();
    let mut rest = w.clone();
    while !rest.is_zero() {
        let (q, d) = rest.div_rem_digit(p);
        digits.push(d);
        rest = q;
    }
    DigitExpansion { digits, p }
}

/// Restricted digits `d0..dn` with `L(w) ≅ L(d0) ⊗ L(d1)^[1] ⊗ ... ⊗ L(dn)^[n]`.
pub fn steinberg_factors(w: &Weight, p: Characteristic) -> Vec<u32> {
    p_adic_digits(w, p).digits
}

/// `μ = μ0 + p μ'`, so that `L(μ) ≅ L(μ0) ⊗ L(μ')^[1]`.
pub fn split_simple(mu: &Weight, p: Characteristic) -> (u32, Weight) {
    let (rest, digit) = mu.div_rem_digit(p);
    (digit, rest)
}

/// Which recursion applies to a pair of lowest digits.
///
/// For `p = 2` the pair `(0, 0)` is reported as `SameDigit(0)`; it is both the
/// same and the mirror case there, and the engine sums over every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitCase {
    /// Weyl and simple digits both equal `i ≤ p - 2`: sum over even `n`.
    SameDigit(u32),
    /// Weyl digit `i ≤ p - 2`, simple digit `p - 2 - i`: sum over odd `n`.
    MirrorDigit(u32),
    /// Both digits are `p - 1`: the Steinberg factor peels off.
    SteinbergDigit,
    /// Not linked; the Ext group vanishes.
    NoMatch,
}

pub fn digit_case(weyl_digit: u32, simple_digit: u32, p: Characteristic) -> Result<DigitCase> {
    let pv = p.get();
    for d in [weyl_digit, simple_digit] {
        if d >= pv {
            return Err(Error::DigitOutOfRange { digit: d, p: pv });
        }
    }
    let case = if weyl_digit == pv - 1 {
        if simple_digit == pv - 1 {
            DigitCase::SteinbergDigit
        } else {
            DigitCase::NoMatch
        }
    } else if simple_digit == weyl_digit {
        DigitCase::SameDigit(weyl_digit)
    } else if simple_digit == pv - 2 - weyl_digit {
        DigitCase::MirrorDigit(weyl_digit)
    } else {
        DigitCase::NoMatch
    };
    Ok(case)
}

/// Highest weight of `⊗_{i ∈ S} L(2)^[i]`, i.e. `Σ_{i∈S} 2 p^i`.
pub fn subset_tensor_weight<I>(twists: I, p: Characteristic) -> Weight
where
    I: IntoIterator<Item = u32>,
{
    let pv = BigUint::from(p.get());
    let total = twists
        .into_iter()
        .fold(BigUint::zero(), |acc, i| acc + BigUint::from(2u32) * pv.pow(i));
    Weight(total)
}
