//! Does every `1 <= m <= n` arise as a sum of distinct proper divisors of `n`?
//!
//! Even perfect numbers always do, but so do other integers (20 is the
//! smallest even non-perfect example). The check runs a bit-parallel
//! subset-sum reachability table over `[0, min(n, sigma(n) - n)]`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::mersenne::sigma;

/// Default largest `n` accepted by the reachability check.
pub const DEFAULT_PAN_CEILING: u64 = 10_000_000;

const NOT_REACHED: u16 = u16::MAX;

/// Whether `sigma(n) = 2n`.
pub fn is_perfect(n: &BigUint) -> Result<bool> {
    Ok(sigma(n)? == n * 2u32)
}

/// Proper divisors of `n` in increasing order; empty for `n = 1`.
pub fn proper_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            let q = n / d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.pop();
    small
}

/// Result of checking one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanReport {
    pub n: u64,
    pub is_panrepresentable: bool,
    pub is_perfect: bool,
    /// Smallest unreachable `m` in `[1, n]`, when there is one.
    pub first_gap: Option<u64>,
    /// A representation of `first_gap - 1` on failure, or of `n` on success.
    pub witness: Option<Vec<u64>>,
}

/// Subset sums of the proper divisors of `n`, clamped to `[0, limit]`.
#[derive(Debug, Clone)]
pub struct Reachability {
    n: u64,
    limit: u64,
    divisors: Vec<u64>,
    words: Vec<u64>,
    // index of the first divisor whose round reached each sum
    first: Vec<u16>,
}

impl Reachability {
    fn build(n: u64) -> Result<Self> {
        let divisors = proper_divisors(n);
        if divisors.len() >= NOT_REACHED as usize {
            return Err(Error::Capability {
                what: format!("{} proper divisors of {n}", divisors.len()),
                ceiling: format!("{}", NOT_REACHED - 1),
            });
        }
        let aliquot: u64 = divisors.iter().sum();
        let limit = n.min(aliquot);
        let len = limit as usize + 1;
        let mut words = vec![0u64; len.div_ceil(64)];
        let mut first = vec![NOT_REACHED; len];
        words[0] = 1;
        first[0] = 0;

        let tail_mask = match len % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        };
        let mut shifted = vec![0u64; words.len()];
        for (idx, &d) in divisors.iter().enumerate() {
            if d > limit {
                break;
            }
            let (word_shift, bit_shift) = ((d / 64) as usize, (d % 64) as u32);
            for (w, out) in shifted.iter_mut().enumerate() {
                *out = if w < word_shift {
                    0
                } else {
                    let src = w - word_shift;
                    let mut v = words[src] << bit_shift;
                    if bit_shift > 0 && src > 0 {
                        v |= words[src - 1] >> (64 - bit_shift);
                    }
                    v
                };
            }
            if let Some(last) = shifted.last_mut() {
                *last &= tail_mask;
            }
            for (w, word) in words.iter_mut().enumerate() {
                let mut fresh = shifted[w] & !*word;
                *word |= fresh;
                while fresh != 0 {
                    let bit = fresh.trailing_zeros() as usize;
                    first[w * 64 + bit] = idx as u16;
                    fresh &= fresh - 1;
                }
            }
        }
        Ok(Self {
            n,
            limit,
            divisors,
            words,
            first,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest sum tracked, `min(n, sigma(n) - n)`.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn is_reachable(&self, s: u64) -> bool {
        s <= self.limit && (self.words[(s / 64) as usize] >> (s % 64)) & 1 == 1
    }

    /// Reachable sums in `[0, limit]`, ascending.
    pub fn sums(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.limit).filter(move |&s| self.is_reachable(s))
    }

    /// Smallest `m` in `[1, n]` that no subset reaches.
    pub fn first_gap(&self) -> Option<u64> {
        for (w, &word) in self.words.iter().enumerate() {
            let missing = !word;
            if missing != 0 {
                let s = w as u64 * 64 + missing.trailing_zeros() as u64;
                return (s <= self.n).then_some(s);
            }
        }
        (self.limit < self.n).then_some(self.limit + 1)
    }

    /// Distinct proper divisors summing to `m`, ascending, or `None`.
    pub fn witness(&self, m: u64) -> Option<Vec<u64>> {
        if !self.is_reachable(m) {
            return None;
        }
        let mut out = Vec::new();
        let mut s = m;
        while s > 0 {
            let d = self.divisors[self.first[s as usize] as usize];
            out.push(d);
            s -= d;
        }
        out.reverse();
        Some(out)
    }
}

/// Reachability checks bounded by a configurable ceiling on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PanChecker {
    ceiling: u64,
}

impl Default for PanChecker {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_PAN_CEILING,
        }
    }
}

impl PanChecker {
    pub fn new(ceiling: u64) -> Self {
        Self { ceiling }
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    pub fn reachability(&self, n: u64) -> Result<Reachability> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if n > self.ceiling {
            return Err(Error::Capability {
                what: format!("n = {n}"),
                ceiling: self.ceiling.to_string(),
            });
        }
        Reachability::build(n)
    }

    pub fn check(&self, n: u64) -> Result<PanReport> {
        let table = self.reachability(n)?;
        let perfect = is_perfect(&BigUint::from(n))?;
        let first_gap = table.first_gap();
        if perfect && n.is_multiple_of(2) && first_gap.is_some() {
            return Err(Error::Domain(format!(
                "even perfect number {n} failed the reachability check"
            )));
        }
        let witness = match first_gap {
            Some(1) => None,
            Some(gap) => table.witness(gap - 1),
            None => table.witness(n),
        };
        Ok(PanReport {
            n,
            is_panrepresentable: first_gap.is_none(),
            is_perfect: perfect,
            first_gap,
            witness,
        })
    }

    pub fn represent(&self, m: u64, n: u64) -> Result<Option<Vec<u64>>> {
        let table = self.reachability(n)?;
        if m == 0 || m > n {
            return Err(Error::OutOfRange {
                m: m.into(),
                n: n.into(),
            });
        }
        Ok(table.witness(m))
    }
}

/// [`PanChecker::check`] with the default ceiling.
pub fn check_panrepresentable(n: u64) -> Result<PanReport> {
    PanChecker::default().check(n)
}

/// [`PanChecker::represent`] with the default ceiling.
pub fn represent(m: u64, n: u64) -> Result<Option<Vec<u64>>> {
    PanChecker::default().represent(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_sums(n: u64) -> Vec<u64> {
        let divs = proper_divisors(n);
        let mut seen = vec![false; n as usize + 1];
        for mask in 0u32..(1 << divs.len()) {
            let s: u64 = (0..divs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| divs[i])
                .sum();
            if s <= n {
                seen[s as usize] = true;
            }
        }
        (0..=n).filter(|&s| seen[s as usize]).collect()
    }

    fn assert_witness(w: &[u64], m: u64, n: u64) {
        assert_eq!(w.iter().sum::<u64>(), m, "witness {w:?} for m = {m}, n = {n}");
        assert!(w.windows(2).all(|p| p[0] < p[1]), "repeated divisor in {w:?}");
        assert!(w.iter().all(|&d| d < n && n.is_multiple_of(d)), "non-divisor in {w:?}");
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(proper_divisors(1), Vec::<u64>::new());
        assert_eq!(proper_divisors(7), vec![1]);
        assert_eq!(proper_divisors(20), vec![1, 2, 4, 5, 10]);
        assert_eq!(proper_divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18]);
    }

    #[test]
    fn perfect_predicate() {
        assert!(is_perfect(&6u32.into()).unwrap());
        assert!(is_perfect(&8128u32.into()).unwrap());
        assert!(!is_perfect(&20u32.into()).unwrap());
        assert!(!is_perfect(&1u32.into()).unwrap());
        assert!(is_perfect(&0u32.into()).is_err());
    }

    #[test]
    fn check_examples() {
        let r = check_panrepresentable(20).unwrap();
        assert!(r.is_panrepresentable && !r.is_perfect);
        assert_eq!(r.first_gap, None);

        let r = check_panrepresentable(6).unwrap();
        assert!(r.is_panrepresentable && r.is_perfect);

        let r = check_panrepresentable(10).unwrap();
        assert!(!r.is_panrepresentable);
        assert_eq!(r.first_gap, Some(4));
        assert_witness(r.witness.as_ref().unwrap(), 3, 10);

        assert!(check_panrepresentable(28).unwrap().is_panrepresentable);
    }

    #[test]
    fn degenerate_inputs() {
        let one = check_panrepresentable(1).unwrap();
        assert_eq!(one.first_gap, Some(1));
        assert_eq!(one.witness, None);
        assert!(!one.is_perfect);

        let two = check_panrepresentable(2).unwrap();
        assert_eq!(two.first_gap, Some(2));
        for prime in [3u64, 5, 97, 7919] {
            assert_eq!(check_panrepresentable(prime).unwrap().first_gap, Some(2));
        }
        assert!(matches!(check_panrepresentable(0), Err(Error::Domain(_))));
        assert!(matches!(
            PanChecker::new(100).check(101),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn represent_examples() {
        assert_witness(&represent(19, 20).unwrap().unwrap(), 19, 20);
        assert_eq!(represent(4, 10).unwrap(), None);
        assert_eq!(represent(1, 20).unwrap(), Some(vec![1]));
        assert!(matches!(represent(0, 20), Err(Error::OutOfRange { .. })));
        assert!(matches!(represent(21, 20), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn even_perfect_numbers_pass() {
        let checker = PanChecker::new(40_000_000);
        for n in [6u64, 28, 496, 8128, 33_550_336] {
            let r = checker.check(n).unwrap();
            assert!(r.is_panrepresentable && r.is_perfect, "n = {n}");
            assert_witness(r.witness.as_ref().unwrap(), n, n);
        }
    }

    #[test]
    fn witnesses_sound_up_to_1000() {
        let checker = PanChecker::default();
        for n in 1..=1000u64 {
            let table = checker.reachability(n).unwrap();
            for m in 1..=n {
                match table.witness(m) {
                    Some(w) => assert_witness(&w, m, n),
                    None => assert!(!table.is_reachable(m)),
                }
            }
        }
    }

    #[test]
    fn dp_matches_enumeration_up_to_200() {
        for n in 1..=200u64 {
            let table = PanChecker::default().reachability(n).unwrap();
            let dp: Vec<u64> = table.sums().collect();
            assert_eq!(dp, brute_force_sums(n), "n = {n}");
        }
    }

    #[test]
    fn word_boundaries() {
        // limits straddling multiples of 64
        for n in [63u64, 64, 65, 127, 128, 129, 192, 4096] {
            let table = PanChecker::default().reachability(n).unwrap();
            let dp: Vec<u64> = table.sums().collect();
            assert_eq!(dp, brute_force_sums(n), "n = {n}");
        }
    }
}
