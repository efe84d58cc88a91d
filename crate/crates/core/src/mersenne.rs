//! Mersenne exponents, even perfect numbers and the divisor-sum function.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduces `x` modulo `2^p - 1` using `2^p = 1 (mod 2^p - 1)`.
fn reduce_mersenne(mut x: BigUint, p: u32, modulus: &BigUint) -> BigUint {
    while x > *modulus {
        x = (&x & modulus) + (&x >> p);
    }
    if x == *modulus {
        BigUint::zero()
    } else {
        x
    }
}

fn is_small_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    (2u32..)
        .take_while(|d| d.saturating_mul(*d) <= p)
        .all(|d| !p.is_multiple_of(d))
}

/// Decides whether `2^p - 1` is prime.
///
/// A composite exponent always yields a composite `2^p - 1`, so those are
/// rejected up front; odd prime exponents run the recurrence
/// `s <- s^2 - 2 (mod 2^p - 1)` from `s = 4` for `p - 2` steps.
pub fn lucas_lehmer(p: u32) -> Result<bool> {
    if p < 2 {
        return Err(Error::Domain(format!("exponent p must be at least 2, got {p}")));
    }
    if p == 2 {
        return Ok(true);
    }
    if !is_small_prime(p) {
        return Ok(false);
    }
    let modulus = (BigUint::one() << p) - 1u32;
    let two = BigUint::from(2u32);
    let mut s = BigUint::from(4u32);
    for _ in 0..p - 2 {
        // add the modulus first so the subtraction never underflows
        s = reduce_mersenne(&s * &s + &modulus - &two, p, &modulus);
    }
    Ok(s.is_zero())
}

/// All Mersenne exponents `2 <= p <= max_p`, ascending.
pub fn mersenne_exponents(max_p: u32) -> Result<Vec<u32>> {
    if max_p < 2 {
        return Err(Error::Domain(format!("max_p must be at least 2, got {max_p}")));
    }
    let mut out = Vec::new();
    for p in 2..=max_p {
        if lucas_lehmer(p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Sum of all divisors of `n`, `n` included, by trial division up to `sqrt(n)`.
///
/// Deliberately ignores any closed form: it is the independent check that
/// constructed perfect numbers satisfy `sigma(n) = 2n`.
pub fn sigma(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::Domain("sigma is undefined for 0".into()));
    }
    match n.to_u64() {
        Some(small) => Ok(BigUint::from(sigma_u64(small))),
        None => Ok(sigma_big(n)),
    }
}

fn sigma_big(n: &BigUint) -> BigUint {
    let mut total = BigUint::zero();
    let mut d = BigUint::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                total += &q;
            }
            total += &d;
        }
        d += 1u32;
    }
    total
}

pub(crate) fn sigma_u64(n: u64) -> u128 {
    let mut total = 0u128;
    let mut d = 1u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            let q = n / d;
            total += d as u128;
            if q != d {
                total += q as u128;
            }
        }
        d += 1;
    }
    total
}

/// A validated exponent `p` with `M_p = 2^p - 1` prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MersenneExponent {
    p: u32,
    m_p: BigUint,
}

impl MersenneExponent {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("exponent p must be at least 2, got {p}")));
        }
        if !lucas_lehmer(p)? {
            return Err(Error::NotMersenne { p });
        }
        Ok(Self {
            p,
            m_p: (BigUint::one() << p) - 1u32,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The Mersenne prime `2^p - 1`.
    pub fn mersenne_prime(&self) -> &BigUint {
        &self.m_p
    }
}

/// An even perfect number `n = 2^(p-1) * M_p` together with its proper divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectNumber {
    exponent: MersenneExponent,
    n: BigUint,
    proper_divisors: Vec<BigUint>,
}

impl PerfectNumber {
    /// Builds the perfect number for Mersenne exponent `p`, re-checking primality.
    pub fn new(p: u32) -> Result<Self> {
        let exponent = MersenneExponent::new(p)?;
        let m_p = exponent.mersenne_prime();
        let n = m_p << (p - 1);

        let powers = (0..p).map(|i| BigUint::one() << i);
        let prime_multiples = (0..p - 1).map(|j| m_p << j);
        let proper_divisors: Vec<BigUint> = powers.chain(prime_multiples).collect();

        let pn = Self {
            exponent,
            n,
            proper_divisors,
        };
        pn.check_invariants()?;
        Ok(pn)
    }

    fn check_invariants(&self) -> Result<()> {
        let p = self.p() as usize;
        let broken = |what: &str| {
            Err(Error::Domain(format!(
                "internal invariant violated for p = {p}: {what}"
            )))
        };
        if self.proper_divisors.len() != 2 * p - 1 {
            return broken("wrong number of proper divisors");
        }
        if !self.proper_divisors.windows(2).all(|w| w[0] < w[1]) {
            return broken("proper divisors not strictly increasing");
        }
        if self.proper_divisors.iter().any(|d| !(&self.n % d).is_zero()) {
            return broken("listed value does not divide n");
        }
        let total: BigUint = self.proper_divisors.iter().sum();
        if total != self.n {
            return broken("proper divisors do not sum to n");
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.exponent.p
    }

    pub fn exponent(&self) -> &MersenneExponent {
        &self.exponent
    }

    pub fn mersenne_prime(&self) -> &BigUint {
        &self.exponent.m_p
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// Proper divisors in strictly increasing order.
    pub fn proper_divisors(&self) -> &[BigUint] {
        &self.proper_divisors
    }

    /// Number of proper divisors, `2p - 1`. Also the width of a divisor bitmask.
    pub fn divisor_count(&self) -> usize {
        2 * self.p() as usize - 1
    }

    /// Divisor denoted by `bit` in the canonical mask order: bit `i < p` is
    /// `2^i`, bit `p + j` is `2^j * M_p`.
    pub fn divisor_at_bit(&self, bit: usize) -> Option<BigUint> {
        let p = self.p() as usize;
        if bit < p {
            Some(BigUint::one() << bit)
        } else if bit < 2 * p - 1 {
            Some(self.mersenne_prime() << (bit - p))
        } else {
            None
        }
    }
}

impl fmt::Display for PerfectNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p = {})", self.n, self.p())
    }
}

/// Alias of [`PerfectNumber::new`].
pub fn make_perfect(p: u32) -> Result<PerfectNumber> {
    PerfectNumber::new(p)
}
