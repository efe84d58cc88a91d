//! Canonical decomposition of `1 <= m <= n` into distinct proper divisors of
//! an even perfect number.
//!
//! Writing `m = k * M_p + r` with `1 <= r <= M_p`, the residue `r` is spelled
//! in binary over the powers of two `1, 2, ..., 2^(p-1)` and the block index
//! `k < 2^(p-1)` in binary over `M_p, 2 M_p, ..., 2^(p-2) M_p`. In mask form
//! this is simply `r | (k << p)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mersenne::PerfectNumber;

/// A set of proper divisors of the perfect number with exponent `owner_p`.
///
/// Bit `i` for `i < p` denotes `2^i`; bit `p + j` for `j <= p - 2` denotes
/// `2^j * M_p`. No bit at or above `2p - 1` is ever set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorSubset {
    owner_p: u32,
    mask: BigUint,
}

impl DivisorSubset {
    /// Wraps a raw mask, rejecting bits outside the `2p - 1` divisor positions.
    pub fn from_mask(owner_p: u32, mask: BigUint) -> Result<Self> {
        if owner_p < 2 {
            return Err(Error::Domain(format!("exponent p must be at least 2, got {owner_p}")));
        }
        let width = 2 * owner_p as u64 - 1;
        if mask.bits() > width {
            return Err(Error::Domain(format!(
                "mask {mask:#x} has bits beyond width {width}"
            )));
        }
        Ok(Self { owner_p, mask })
    }

    pub fn empty(owner_p: u32) -> Self {
        Self {
            owner_p,
            mask: BigUint::zero(),
        }
    }

    pub fn owner_p(&self) -> u32 {
        self.owner_p
    }

    pub fn mask(&self) -> &BigUint {
        &self.mask
    }

    pub fn width(&self) -> usize {
        2 * self.owner_p as usize - 1
    }

    pub fn contains_bit(&self, bit: usize) -> bool {
        self.mask.bit(bit as u64)
    }

    /// Set bit positions, ascending.
    pub fn bits(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width()).filter(move |&b| self.contains_bit(b))
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_zero()
    }

    /// Lowercase hex of the mask, zero-padded to `ceil((2p - 1) / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.width().div_ceil(4);
        format!("{:0>digits$}", self.mask.to_str_radix(16))
    }

    /// The denoted divisors in increasing order.
    ///
    /// Panics if `pn` belongs to a different exponent.
    pub fn divisors(&self, pn: &PerfectNumber) -> Vec<BigUint> {
        assert_eq!(self.owner_p, pn.p(), "subset used with a foreign perfect number");
        self.bits()
            .map(|b| pn.divisor_at_bit(b).expect("bit within width"))
            .collect()
    }
}

impl fmt::Display for DivisorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", self.to_hex())
    }
}

/// The canonical split `m = k * M_p + r` together with its divisor subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub m: BigUint,
    pub k: BigUint,
    pub r: BigUint,
    pub subset: DivisorSubset,
}

fn check_target(m: &BigUint, pn: &PerfectNumber) -> Result<()> {
    if m.is_zero() || m > pn.n() {
        return Err(Error::OutOfRange {
            m: m.clone(),
            n: pn.n().clone(),
        });
    }
    Ok(())
}

/// Splits `m` into `(k, r)` with `k = floor((m - 1) / M_p)` and `1 <= r <= M_p`.
pub fn split_k_r(m: &BigUint, pn: &PerfectNumber) -> Result<(BigUint, BigUint)> {
    check_target(m, pn)?;
    let m_p = pn.mersenne_prime();
    let (k, rem) = (m - 1u32).div_rem(m_p);
    Ok((k, rem + 1u32))
}

/// Canonical decomposition of `m` as a sum of distinct proper divisors of `pn`.
pub fn decompose(m: &BigUint, pn: &PerfectNumber) -> Result<Decomposition> {
    let (k, r) = split_k_r(m, pn)?;
    // r <= 2^p - 1 fills at most the low p bits and k < 2^(p-1) the rest
    let mask = &r | (&k << pn.p());
    let subset = DivisorSubset::from_mask(pn.p(), mask)?;
    Ok(Decomposition {
        m: m.clone(),
        k,
        r,
        subset,
    })
}

/// Sum of the divisors denoted by `subset`; the empty subset sums to 0.
pub fn subset_value(subset: &DivisorSubset, pn: &PerfectNumber) -> Result<BigUint> {
    if subset.owner_p() != pn.p() {
        return Err(Error::Domain(format!(
            "subset belongs to p = {} but the perfect number has p = {}",
            subset.owner_p(),
            pn.p()
        )));
    }
    let p = u64::from(pn.p());
    let low_mask = (BigUint::one() << p) - 1u32;
    // low bits spell a number directly, high bits spell a multiple of M_p
    let low = subset.mask() & &low_mask;
    let high = subset.mask() >> p;
    Ok(low + high * pn.mersenne_prime())
}
