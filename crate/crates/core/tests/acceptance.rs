//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and then asserts.
//!
//! Run with `cargo test -p perfect-sums --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use perfect_sums::practical::PanChecker;
use perfect_sums::{
    check_panrepresentable, count_representations, decompose, lucas_lehmer, make_perfect,
    mersenne_exponents, predict_count, total_subsets, verify_counting_identity, PerfectNumber,
};

fn report(id: &str, name: &str, failures: &[String], elapsed: Duration, budget: Duration) {
    let within = elapsed <= budget;
    let ok = failures.is_empty() && within;
    println!(
        "[{}] {id} {name} ({:.2?}, budget {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    for f in failures.iter().take(10) {
        println!("      {f}");
    }
    assert!(failures.is_empty(), "{id} failed: {} problem(s)", failures.len());
    assert!(within, "{id} exceeded its runtime budget: {elapsed:?} > {budget:?}");
}

fn trial_division_prime(v: u64) -> bool {
    v >= 2 && (2..).take_while(|d| d * d <= v).all(|d| !v.is_multiple_of(d))
}

fn small_primes(max: u32) -> Vec<u32> {
    (2..=max).filter(|&p| trial_division_prime(p as u64)).collect()
}

/// Divisors listed by a decomposition must be distinct proper divisors summing to `m`.
fn check_representation(pn: &PerfectNumber, m: &BigUint, failures: &mut Vec<String>) {
    let d = match decompose(m, pn) {
        Ok(d) => d,
        Err(e) => {
            failures.push(format!("p = {}, m = {m}: {e}", pn.p()));
            return;
        }
    };
    let parts = d.subset.divisors(pn);
    let distinct = parts.windows(2).all(|w| w[0] < w[1]);
    let proper = parts
        .iter()
        .all(|x| x < pn.n() && (pn.n() % x) == BigUint::default());
    let total: BigUint = parts.iter().sum();
    if !distinct || !proper || &total != m {
        failures.push(format!("p = {}, m = {m}: got {parts:?}", pn.p()));
    }
}

/// Value of every subset of `divisors`, indexed by mask.
fn brute_force_histogram(divisors: &[u64], n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize + 1];
    for mask in 1u64..(1 << divisors.len()) {
        let s: u64 = (0..divisors.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| divisors[i])
            .sum();
        counts[s as usize] += 1;
    }
    counts
}

#[test]
fn ac1_exhaustive_decomposition() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [2u32, 3, 5, 7] {
        let pn = make_perfect(p).unwrap();
        let n = pn.n().to_u64().unwrap();
        for m in 1..=n {
            check_representation(&pn, &BigUint::from(m), &mut failures);
        }
    }
    let six = make_perfect(2).unwrap();
    for (m, expected) in [(4u32, vec![1u32, 3]), (5, vec![2, 3]), (6, vec![1, 2, 3])] {
        let got = decompose(&BigUint::from(m), &six).unwrap().subset.divisors(&six);
        let expected: Vec<BigUint> = expected.into_iter().map(BigUint::from).collect();
        if got != expected {
            failures.push(format!("n = 6, m = {m}: got {got:?}"));
        }
    }
    report(
        "AC1",
        "every m <= n decomposes for p in {2,3,5,7}; n = 6 examples exact",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn ac2_sampled_decomposition() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    for p in [13u32, 17, 19, 31] {
        let pn = make_perfect(p).unwrap();
        for _ in 0..100_000 {
            let m = rng.gen_biguint_below(pn.n()) + 1u32;
            check_representation(&pn, &m, &mut failures);
        }
    }
    report(
        "AC2",
        "10^5 random m per p in {13,17,19,31} round-trip",
        &failures,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn ac3_count_matches_prediction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [2u32, 3, 5] {
        let pn = make_perfect(p).unwrap();
        let n = pn.n().to_u64().unwrap();
        let m_p = (1u64 << p) - 1;
        let divisors: Vec<u64> = pn.proper_divisors().iter().map(|d| d.to_u64().unwrap()).collect();
        let oracle = brute_force_histogram(&divisors, n);
        for m in 1..=n {
            let big_m = BigUint::from(m);
            let counted = count_representations(&big_m, &pn, false).unwrap().count;
            let predicted = predict_count(&big_m, &pn).unwrap();
            let expected = if m % m_p == 0 && m < n { 2 } else { 1 };
            if counted != predicted || counted != oracle[m as usize] || counted != expected {
                failures.push(format!(
                    "p = {p}, m = {m}: counted {counted}, predicted {predicted}, oracle {}",
                    oracle[m as usize]
                ));
            }
        }
    }
    report(
        "AC3",
        "counted representations equal the closed form for p in {2,3,5}",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn ac4_mass_conservation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (p, expected) in [(2u32, 7u64), (3, 31), (5, 511)] {
        let pn = make_perfect(p).unwrap();
        let n = pn.n().to_u64().unwrap();
        let total: u64 = (1..=n)
            .map(|m| count_representations(&BigUint::from(m), &pn, false).unwrap().count)
            .sum();
        if total != expected || total_subsets(&pn) != BigUint::from(expected) {
            failures.push(format!("p = {p}: sum of counts {total}, expected {expected}"));
        }
    }
    report(
        "AC4",
        "sum of counts equals 2^(2p-1) - 1 for p in {2,3,5}",
        &failures,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn ac5_counting_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let exponents = mersenne_exponents(31).unwrap();
    for &p in &exponents {
        let pn = make_perfect(p).unwrap();
        let n = pn.n().to_u128().unwrap();
        let lhs = (1u128 << (2 * p - 1)) - 1 - n;
        let rhs = (1u128 << (p - 1)) - 1;
        if !verify_counting_identity(&pn) || lhs != rhs {
            failures.push(format!("p = {p}: {lhs} != {rhs}"));
        }
    }
    if exponents.len() != 8 {
        failures.push(format!("expected 8 exponents up to 31, got {exponents:?}"));
    }
    report(
        "AC5",
        "2^(2p-1) - 1 - n = 2^(p-1) - 1 for every Mersenne exponent p <= 31",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn ac6_converse_counterexample() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let twenty = check_panrepresentable(20).unwrap();
    if !twenty.is_panrepresentable || twenty.is_perfect {
        failures.push(format!("n = 20: {twenty:?}"));
    }
    for n in [6u64, 28] {
        let r = check_panrepresentable(n).unwrap();
        if !r.is_panrepresentable || !r.is_perfect {
            failures.push(format!("n = {n}: {r:?}"));
        }
    }
    let ten = check_panrepresentable(10).unwrap();
    if ten.first_gap != Some(4) || ten.is_panrepresentable {
        failures.push(format!("n = 10: {ten:?}"));
    }
    report(
        "AC6",
        "20 is panrepresentable but not perfect; 6 and 28 are both; 10 fails at 4",
        &failures,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn ac7_lucas_lehmer() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut accepted = Vec::new();
    for p in small_primes(31) {
        let ll = lucas_lehmer(p).unwrap();
        let oracle = trial_division_prime((1u64 << p) - 1);
        if ll != oracle {
            failures.push(format!("p = {p}: lucas_lehmer {ll}, trial division {oracle}"));
        }
        if ll {
            accepted.push(p);
        }
    }
    if accepted != [2, 3, 5, 7, 13, 17, 19, 31] {
        failures.push(format!("accepted {accepted:?}"));
    }
    report(
        "AC7",
        "Lucas-Lehmer agrees with trial division for prime p <= 31",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn ac8_dp_matches_enumeration() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let checker = PanChecker::default();
    for n in 1..=200u64 {
        let divisors: Vec<u64> = (1..n).filter(|d| n % d == 0).collect();
        let mut oracle = vec![false; n as usize + 1];
        oracle[0] = true;
        for (m, &c) in brute_force_histogram(&divisors, n.max(divisors.iter().sum()))
            .iter()
            .enumerate()
            .take(n as usize + 1)
        {
            if c > 0 {
                oracle[m] = true;
            }
        }
        let expected: Vec<u64> = (0..=n).filter(|&m| oracle[m as usize]).collect();
        let table = checker.reachability(n).unwrap();
        let got: Vec<u64> = table.sums().collect();
        if got != expected {
            failures.push(format!("n = {n}: DP {got:?} vs enumeration {expected:?}"));
        }
    }
    report(
        "AC8",
        "reachable sums from the DP equal brute-force enumeration for n <= 200",
        &failures,
        start.elapsed(),
        Duration::from_secs(5),
    );
}
