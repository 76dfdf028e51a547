//! Cyclotomic cosets modulo `n` and the defining-set pair `(T, T^c)` for the
//! quaternary family, together with the structural checks that back the
//! dimension and distance claims.
//!
//! `T` is built from 4-cyclotomic cosets and `T^c` from its base-4 digit
//! description; [`verify_partition`] compares the two deliberately disjoint
//! code paths, so the partition checks are a genuine oracle rather than a
//! tautology.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The orbit of `s` under multiplication by `b` modulo `n`, sorted.
pub fn coset_of(n: u64, b: u64, s: u64) -> Vec<u64> {
    let s = s % n;
    let mut coset = vec![s];
    let mut x = (s * (b % n)) % n;
    while x != s {
        coset.push(x);
        x = (x * (b % n)) % n;
    }
    coset.sort_unstable();
    coset
}

/// The complete partition of `ℤ_n` into `b`-cyclotomic cosets.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    n: u64,
    multiplier: u64,
    cosets: Vec<Vec<u64>>,
    leaders: Vec<u64>,
}

pub fn coset_system(n: u64, b: u64) -> Result<CosetSystem> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if gcd(n, b) != 1 {
        return Err(Error::InvalidArgument(format!(
            "gcd({n}, {b}) must be 1 for cosets to partition"
        )));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    let mut leaders = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let coset = coset_of(n, b, s);
        for &x in &coset {
            seen[x as usize] = true;
        }
        leaders.push(s);
        cosets.push(coset);
    }
    Ok(CosetSystem {
        n,
        multiplier: b,
        cosets,
        leaders,
    })
}

impl CosetSystem {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    /// Cosets in leader order; each coset sorted ascending.
    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    /// Sorted coset leaders (each coset's minimum).
    pub fn leaders(&self) -> &[u64] {
        &self.leaders
    }

    /// The full coset containing `s`.
    pub fn coset_containing(&self, s: u64) -> &[u64] {
        let s = s % self.n;
        self.cosets
            .iter()
            .find(|c| c.binary_search(&s).is_ok())
            .expect("cosets cover Z_n")
    }
}

/// `n = 4^h + 1` for the tower exponent `h`.
pub fn family_length(h: u32) -> u64 {
    4u64.pow(h) + 1
}

/// `δ = (4^h − 1)/3 = 4^{h−1} + … + 4 + 1`.
pub fn delta(h: u32) -> u64 {
    (4u64.pow(h) - 1) / 3
}

/// `T = ⋃_{i=0}^{q/4} C_i^{(4)}` modulo `n = 4^h + 1`, sorted.
pub fn build_t(h: u32) -> Vec<u64> {
    let n = family_length(h);
    let mut member = vec![false; n as usize];
    for i in 0..=4u64.pow(h.saturating_sub(1)) {
        for x in coset_of(n, 4, i) {
            member[x as usize] = true;
        }
    }
    (0..n).filter(|&x| member[x as usize]).collect()
}

/// `T^c = {Σ a_i 4^i : a_0 ∈ {2,3}, a_i ∈ {1,2} for i ≥ 1}`, sorted.
pub fn build_tc(h: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << h);
    let mut stack = vec![(0u32, 0u64)];
    while let Some((i, acc)) = stack.pop() {
        if i == h {
            out.push(acc);
            continue;
        }
        let digits: [u64; 2] = if i == 0 { [2, 3] } else { [1, 2] };
        for d in digits {
            stack.push((i + 1, acc + d * 4u64.pow(i)));
        }
    }
    out.sort_unstable();
    out
}

/// One named check of the partition/structure report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    /// Offending element when the check fails.
    pub counterexample: Option<u64>,
}

/// Result of [`verify_partition`]: per-lemma pass/fail with counterexamples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionReport {
    pub h: u32,
    pub n: u64,
    pub t_len: u64,
    pub tc_len: u64,
    pub checks: Vec<LemmaCheck>,
}

impl PartitionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Recompute `T` (from cosets) and `T^c` (from digits) and test the claimed
/// structure: partition, cardinality, min/max, coset closure, the membership
/// ranges, the reflection symmetry of `T`, and `E = {n − i : i ∈ T^c} = T^c`.
/// Failures are data, not errors.
pub fn verify_partition(h: u32) -> PartitionReport {
    let n = family_length(h);
    let t = build_t(h);
    let tc = build_tc(h);
    let in_t = membership(n, &t);
    let in_tc = membership(n, &tc);
    let d = delta(h);
    let mut checks = Vec::new();

    checks.push(check(
        "disjoint: T ∩ T^c = ∅",
        (0..n).find(|&x| in_t[x as usize] && in_tc[x as usize]),
    ));
    checks.push(check(
        "covering: T ∪ T^c = Z_n",
        (0..n).find(|&x| !in_t[x as usize] && !in_tc[x as usize]),
    ));
    checks.push(LemmaCheck {
        name: format!("|T^c| = 2^h = {}", 1u64 << h),
        passed: tc.len() as u64 == 1 << h,
        counterexample: None,
    });
    checks.push(LemmaCheck {
        name: format!("min(T^c) = (2^{} + 2)/3", 2 * h),
        passed: tc.first() == Some(&((4u64.pow(h) + 2) / 3)),
        counterexample: tc.first().copied(),
    });
    checks.push(LemmaCheck {
        name: format!("max(T^c) = (2^{} + 1)/3", 2 * h + 1),
        passed: tc.last() == Some(&((2 * 4u64.pow(h) + 1) / 3)),
        counterexample: tc.last().copied(),
    });
    checks.push(check(
        "T^c closed under multiplication by 4",
        tc.iter().map(|&x| (4 * x) % n).find(|&y| !in_tc[y as usize]),
    ));
    checks.push(check(
        "prefix: {0..δ} ⊆ T",
        (0..=d).find(|&x| !in_t[x as usize]),
    ));
    checks.push(check(
        "suffix: {n−δ..n−1} ⊆ T",
        (n - d..n).find(|&x| !in_t[x as usize]),
    ));
    checks.push(check(
        "midrange: {4^{h−1}+1..δ} ⊆ T",
        (4u64.pow(h.saturating_sub(1)) + 1..=d).find(|&x| !in_t[x as usize]),
    ));
    checks.push(check(
        "reflection: i ∈ T ⇔ n−i ∈ T",
        (1..n).find(|&x| in_t[x as usize] != in_t[(n - x) as usize]),
    ));
    checks.push(check(
        "E = {n − i : i ∈ T^c} equals T^c",
        tc.iter().map(|&x| n - x).find(|&y| !in_tc[y as usize]),
    ));

    PartitionReport {
        h,
        n,
        t_len: t.len() as u64,
        tc_len: tc.len() as u64,
        checks,
    }
}

fn check(name: &str, counterexample: Option<u64>) -> LemmaCheck {
    LemmaCheck {
        name: name.to_string(),
        passed: counterexample.is_none(),
        counterexample,
    }
}

fn membership(n: u64, set: &[u64]) -> Vec<bool> {
    let mut mask = vec![false; n as usize];
    for &x in set {
        mask[x as usize] = true;
    }
    mask
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_mod_17_base_4() {
        let sys = coset_system(17, 4).unwrap();
        assert_eq!(
            sys.cosets(),
            &[
                vec![0],
                vec![1, 4, 13, 16],
                vec![2, 8, 9, 15],
                vec![3, 5, 12, 14],
                vec![6, 7, 10, 11],
            ]
        );
        assert_eq!(sys.leaders(), &[0, 1, 2, 3, 6]);
    }

    #[test]
    fn cosets_mod_5_base_4() {
        let sys = coset_system(5, 4).unwrap();
        assert_eq!(sys.cosets(), &[vec![0], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn cosets_mod_q_plus_1_base_q_pair_up() {
        // {0}, {1, q}, …, {q/2, (q+2)/2}
        let q = 16u64;
        let sys = coset_system(q + 1, q).unwrap();
        assert_eq!(sys.cosets()[0], vec![0]);
        for i in 1..=q / 2 {
            assert_eq!(sys.cosets()[i as usize], vec![i, q + 1 - i]);
        }
    }

    #[test]
    fn coset_partition_properties() {
        for (n, b) in [(17u64, 4u64), (65, 4), (257, 4), (17, 16), (9, 8)] {
            let sys = coset_system(n, b).unwrap();
            let total: usize = sys.cosets().iter().map(|c| c.len()).sum();
            assert_eq!(total, n as usize);
            for c in sys.cosets() {
                for &x in c {
                    assert!(c.binary_search(&((x * b) % n)).is_ok(), "closure under ×{b}");
                }
                assert_eq!(c.first(), c.iter().min());
            }
        }
        assert!(coset_system(10, 4).is_err());
    }

    #[test]
    fn t_small_cases() {
        assert_eq!(build_t(1), vec![0, 1, 4]);
        let t2 = build_t(2);
        let expected: Vec<u64> = (0..17).filter(|x| ![6, 7, 10, 11].contains(x)).collect();
        assert_eq!(t2, expected);
        assert_eq!(t2.len(), 13);
        assert_eq!(build_t(3).len(), 65 - 8);
    }

    #[test]
    fn tc_small_cases() {
        assert_eq!(build_tc(1), vec![2, 3]);
        assert_eq!(build_tc(2), vec![6, 7, 10, 11]);
        // single coset C_6 mod 17
        assert_eq!(build_tc(2), coset_of(17, 4, 6));
        assert_eq!(build_tc(3), vec![22, 23, 26, 27, 38, 39, 42, 43]);
        assert_eq!(build_tc(3).first(), Some(&22));
        assert_eq!(build_tc(3).last(), Some(&43));
    }

    #[test]
    fn partition_report_h1_through_h8() {
        for h in 1..=8 {
            let report = verify_partition(h);
            assert!(
                report.all_passed(),
                "h={h}: {:?}",
                report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
            assert_eq!(report.tc_len, 1 << h);
            assert_eq!(report.t_len + report.tc_len, report.n);
        }
    }

    #[test]
    fn t_symmetry_direct_scan() {
        for h in 1..=4 {
            let n = family_length(h);
            let t = build_t(h);
            let in_t = membership(n, &t);
            for i in 1..n {
                assert_eq!(in_t[i as usize], in_t[(n - i) as usize], "h={h} i={i}");
            }
        }
    }
}
