//! Counting every representation of `m` as a sum of distinct proper divisors.
//!
//! [`RepresentationCounter`] answers by direct search over divisor subsets and
//! never consults [`predict_count`], so the two can be compared as independent
//! routes. Small exponents are enumerated outright; mid-sized ones use a
//! meet-in-the-middle split of the bit positions.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::decompose::{decompose, Decomposition, DivisorSubset};
use crate::error::{Error, Result};
use crate::mersenne::PerfectNumber;

/// Largest `p` whose full `2^(2p-1)` subset space is enumerated directly.
pub const EXHAUSTIVE_MAX_P: u32 = 7;
/// Default largest `p` for which counting is attempted at all.
pub const DEFAULT_COUNT_CEILING: u32 = 13;
/// Upper bound accepted for a configured ceiling. Subset sums and masks are
/// kept in `u64` and each meet-in-the-middle side holds `2^p` entries.
pub const SEARCH_HARD_LIMIT: u32 = 19;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    MeetInTheMiddle,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::MeetInTheMiddle => "meet_in_the_middle",
        }
    }
}

/// Outcome of counting the representations of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub m: BigUint,
    pub count: u64,
    /// Present when enumeration was requested; ascending by mask.
    pub subsets: Option<Vec<DivisorSubset>>,
}

#[derive(Debug, Clone)]
enum Tables {
    /// `sums[mask]` is the value of `mask`.
    Exhaustive { sums: Vec<u64> },
    /// `low` covers bits `[0, split)` sorted by `(sum, mask)`; `high` covers
    /// the remaining bits with masks already shifted into place.
    Split {
        low: Vec<(u64, u64)>,
        high: Vec<(u64, u64)>,
    },
}

/// Precomputed subset-sum tables for one perfect number.
#[derive(Debug, Clone)]
pub struct RepresentationCounter {
    p: u32,
    n: u64,
    tables: Tables,
}

/// All `(sum, mask)` pairs over `values`, masks shifted left by `offset`.
fn partial_sums(values: &[u64], offset: usize) -> Vec<(u64, u64)> {
    let mut sums = vec![0u64; 1 << values.len()];
    for mask in 1..sums.len() {
        let low_bit = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + values[low_bit];
    }
    sums.into_iter()
        .enumerate()
        .map(|(mask, s)| (s, (mask as u64) << offset))
        .collect()
}

impl RepresentationCounter {
    /// Builds tables for `pn` with the default ceiling.
    pub fn new(pn: &PerfectNumber) -> Result<Self> {
        Self::with_ceiling(pn, DEFAULT_COUNT_CEILING)
    }

    pub fn with_ceiling(pn: &PerfectNumber, ceiling: u32) -> Result<Self> {
        if ceiling > SEARCH_HARD_LIMIT {
            return Err(Error::Capability {
                what: format!("count ceiling p = {ceiling}"),
                ceiling: format!("p = {SEARCH_HARD_LIMIT}"),
            });
        }
        let p = pn.p();
        if p > ceiling {
            return Err(Error::Capability {
                what: format!("representation counting for p = {p}"),
                ceiling: format!("p = {ceiling}"),
            });
        }
        let values: Vec<u64> = (0..pn.divisor_count())
            .map(|b| pn.divisor_at_bit(b).and_then(|d| d.to_u64()).expect("fits below hard limit"))
            .collect();
        let n = pn.n().to_u64().expect("fits below hard limit");

        let tables = if p <= EXHAUSTIVE_MAX_P {
            let sums = partial_sums(&values, 0).into_iter().map(|(s, _)| s).collect();
            Tables::Exhaustive { sums }
        } else {
            let split = values.len() / 2;
            let mut low = partial_sums(&values[..split], 0);
            low.sort_unstable();
            let high = partial_sums(&values[split..], split);
            Tables::Split { low, high }
        };
        Ok(Self { p, n, tables })
    }

    pub fn strategy(&self) -> Strategy {
        match self.tables {
            Tables::Exhaustive { .. } => Strategy::Exhaustive,
            Tables::Split { .. } => Strategy::MeetInTheMiddle,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn target(&self, m: &BigUint) -> Result<u64> {
        match m.to_u64() {
            Some(v) if (1..=self.n).contains(&v) => Ok(v),
            _ => Err(Error::OutOfRange {
                m: m.clone(),
                n: BigUint::from(self.n),
            }),
        }
    }

    /// Raw masks (ascending) of every subset whose value is `m`.
    fn matching_masks(&self, m: u64) -> Vec<u64> {
        match &self.tables {
            Tables::Exhaustive { sums } => sums
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s == m)
                .map(|(mask, _)| mask as u64)
                .collect(),
            Tables::Split { low, high } => {
                let mut out = Vec::new();
                for &(hs, hm) in high.iter().filter(|(hs, _)| *hs <= m) {
                    let want = m - hs;
                    let start = low.partition_point(|&(s, _)| s < want);
                    out.extend(
                        low[start..]
                            .iter()
                            .take_while(|&&(s, _)| s == want)
                            .map(|&(_, lm)| hm | lm),
                    );
                }
                out.sort_unstable();
                out
            }
        }
    }

    fn count_value(&self, m: u64) -> u64 {
        match &self.tables {
            Tables::Exhaustive { sums } => sums.iter().filter(|&&s| s == m).count() as u64,
            Tables::Split { low, high } => high
                .iter()
                .filter(|(hs, _)| *hs <= m)
                .map(|&(hs, _)| {
                    let want = m - hs;
                    let start = low.partition_point(|&(s, _)| s < want);
                    let end = low.partition_point(|&(s, _)| s <= want);
                    (end - start) as u64
                })
                .sum(),
        }
    }

    /// Counts the subsets with value exactly `m`, listing them when asked.
    pub fn count(&self, m: &BigUint, enumerate: bool) -> Result<RepReport> {
        let target = self.target(m)?;
        let (count, subsets) = if enumerate {
            let masks = self.matching_masks(target);
            let subsets = masks
                .into_iter()
                .map(|mask| DivisorSubset::from_mask(self.p, BigUint::from(mask)))
                .collect::<Result<Vec<_>>>()?;
            (subsets.len() as u64, Some(subsets))
        } else {
            (self.count_value(target), None)
        };
        Ok(RepReport {
            m: m.clone(),
            count,
            subsets,
        })
    }

    /// Number of subsets (the empty one included) whose value lies in `[lo, hi]`.
    pub fn count_in_range(&self, lo: u64, hi: u64) -> u64 {
        if lo > hi {
            return 0;
        }
        match &self.tables {
            Tables::Exhaustive { sums } => sums.iter().filter(|s| (lo..=hi).contains(*s)).count() as u64,
            Tables::Split { low, high } => high
                .iter()
                .filter(|(hs, _)| *hs <= hi)
                .map(|&(hs, _)| {
                    let from = low.partition_point(|&(s, _)| s + hs < lo);
                    let to = low.partition_point(|&(s, _)| s + hs <= hi);
                    (to - from) as u64
                })
                .sum(),
        }
    }

    /// `counts[m]` for every `0 <= m <= n`; only available with exhaustive tables.
    pub fn histogram(&self) -> Option<Vec<u64>> {
        match &self.tables {
            Tables::Exhaustive { sums } => {
                let mut counts = vec![0u64; self.n as usize + 1];
                for &s in sums {
                    counts[s as usize] += 1;
                }
                Some(counts)
            }
            Tables::Split { .. } => None,
        }
    }
}

/// Counts representations of `m` with the default search ceiling.
pub fn count_representations(m: &BigUint, pn: &PerfectNumber, enumerate: bool) -> Result<RepReport> {
    RepresentationCounter::new(pn)?.count(m, enumerate)
}

fn check_target(m: &BigUint, pn: &PerfectNumber) -> Result<()> {
    if *m < BigUint::one() || m > pn.n() {
        return Err(Error::OutOfRange {
            m: m.clone(),
            n: pn.n().clone(),
        });
    }
    Ok(())
}

/// Closed-form multiplicity: 2 for a multiple of `M_p` strictly below `n`, else 1.
pub fn predict_count(m: &BigUint, pn: &PerfectNumber) -> Result<u64> {
    check_target(m, pn)?;
    let multiple = (m % pn.mersenne_prime()).is_zero();
    Ok(if multiple && m != pn.n() { 2 } else { 1 })
}

/// The non-canonical representation of a proper multiple of `M_p` below `n`.
///
/// The canonical form of `m = (k + 1) M_p` spells `r = M_p` with every power
/// of two; the alternate drops them all and spells `k + 1` over the `M_p`
/// block instead.
pub fn alternate_representation(d: &Decomposition, pn: &PerfectNumber) -> Result<DivisorSubset> {
    if d.subset.owner_p() != pn.p() {
        return Err(Error::Domain(format!(
            "decomposition belongs to p = {} but the perfect number has p = {}",
            d.subset.owner_p(),
            pn.p()
        )));
    }
    let canonical = decompose(&d.m, pn)?;
    if canonical != *d {
        return Err(Error::Domain(format!(
            "decomposition of {} is not the canonical one",
            d.m
        )));
    }
    if d.r != *pn.mersenne_prime() || d.m == *pn.n() {
        return Err(Error::Domain(format!(
            "{} is not a proper multiple of M_p = {} below n = {}",
            d.m,
            pn.mersenne_prime(),
            pn.n()
        )));
    }
    DivisorSubset::from_mask(pn.p(), (&d.k + 1u32) << pn.p())
}

/// Number of nonempty subsets of the proper divisors, `2^(2p-1) - 1`.
pub fn total_subsets(pn: &PerfectNumber) -> BigUint {
    (BigUint::one() << pn.divisor_count()) - 1u32
}

/// Whether `2^(2p-1) - 1 - n = 2^(p-1) - 1` holds for `pn`.
pub fn verify_counting_identity(pn: &PerfectNumber) -> bool {
    let total = total_subsets(pn);
    let rhs = (BigUint::one() << (pn.p() - 1)) - 1u32;
    total >= *pn.n() && total - pn.n() == rhs
}
