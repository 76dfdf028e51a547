//! Support designs of linear codes: extraction of fixed-weight codeword
//! supports, exact verification of the t-design property by incidence
//! counting, and the Assmus-Mattson pre-screen.
//!
//! Incidence counting uses a flat counter array indexed by the combinatorial
//! rank of each t-subset; work is parallelized over blocks with per-worker
//! counters merged by addition, so verdicts are schedule-independent.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::weights::{self, WeightDistribution};
use crate::{Error, Result};

/// Blocks of one fixed weight class, deduplicated and sorted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportDesign {
    /// Number of points (the code length).
    pub v: usize,
    /// Block size (the codeword weight).
    pub k: usize,
    /// Sorted, deduplicated point sets.
    pub blocks: Vec<Vec<u16>>,
    /// Number of codewords of weight k (before support dedup).
    pub codewords: u64,
}

/// Outcome of a t-design check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignVerdict {
    pub t: usize,
    /// The common incidence count, when the block set is a t-design.
    pub lambda: Option<u64>,
    /// A t-subset with a deviant incidence count otherwise.
    pub counterexample: Option<Vec<u16>>,
}

impl DesignVerdict {
    pub fn is_design(&self) -> bool {
        self.lambda.is_some()
    }
}

/// Extract the support design of all weight-`k` codewords. Requires the
/// codebook to fit the enumeration budget and the length to be at most 128.
pub fn supports(code: &LinearCode, k: usize, budget: u64) -> Result<SupportDesign> {
    if k > code.n() {
        return Err(Error::InvalidArgument(format!(
            "weight {k} exceeds the length {}",
            code.n()
        )));
    }
    let (mut per_weight, counts) = if code.field().degree() == 2 && code.n() <= 64 {
        let (masks, counts) = weights::collect_supports_u64(code, k, budget)?;
        (
            masks
                .into_iter()
                .map(|v| v.into_iter().map(|m| m as u128).collect::<Vec<u128>>())
                .collect::<Vec<_>>(),
            counts,
        )
    } else {
        weights::collect_supports_u128(code, k, budget)?
    };
    let masks = per_weight.swap_remove(k);
    Ok(SupportDesign {
        v: code.n(),
        k,
        blocks: masks.iter().map(|&m| mask_points(m)).collect(),
        codewords: counts[k],
    })
}

fn mask_points(mask: u128) -> Vec<u16> {
    (0..128).filter(|&j| (mask >> j) & 1 == 1).collect()
}

/// The complete design: every k-subset of `{0..v-1}`.
pub fn complete_design(v: usize, k: usize) -> SupportDesign {
    let mut blocks = Vec::new();
    let mut current: Vec<u16> = (0..k as u16).collect();
    loop {
        blocks.push(current.clone());
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return SupportDesign {
                    v,
                    k,
                    blocks,
                    codewords: 0,
                };
            }
            i -= 1;
            if current[i] < (v - k + i) as u16 {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact t-design verification by incidence counting over all blocks.
pub fn verify_design(design: &SupportDesign, t: usize) -> Result<DesignVerdict> {
    if t == 0 || t > design.k || design.k > design.v {
        return Err(Error::InvalidArgument(format!(
            "need 0 < t <= k <= v, got t={t} k={} v={}",
            design.k, design.v
        )));
    }
    Ok(incidence_verdict(
        design.v,
        t,
        design.blocks.par_iter().map(|b| b.as_slice()),
    ))
}

/// As [`verify_design`], but over bit masks (the large-sweep path).
pub(crate) fn verify_design_from_masks(v: usize, t: usize, masks: &[u128]) -> DesignVerdict {
    incidence_verdict(
        v,
        t,
        masks.par_iter().map(|&m| mask_points(m)),
    )
}

fn incidence_verdict<'a, B, I>(v: usize, t: usize, blocks: I) -> DesignVerdict
where
    B: AsPoints + Send,
    I: ParallelIterator<Item = B>,
{
    // rank({a_0 < … < a_{t-1}}) = Σ C(a_i, i+1), the combinatorial number system
    let binom = small_binomials(v, t);
    let n_subsets = binom[t][v] as usize;
    let counters = blocks
        .fold(
            || vec![0u64; n_subsets],
            |mut counters, block| {
                let pts = block.as_points();
                count_subsets(&mut counters, pts, t, &binom);
                counters
            },
        )
        .reduce(
            || vec![0u64; n_subsets],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let lambda = counters[0];
    match counters.iter().position(|&c| c != lambda) {
        None => DesignVerdict {
            t,
            lambda: Some(lambda),
            counterexample: None,
        },
        Some(rank) => DesignVerdict {
            t,
            lambda: None,
            counterexample: Some(unrank_subset(rank as u64, t, &binom)),
        },
    }
}

trait AsPoints {
    fn as_points(&self) -> &[u16];
}
impl AsPoints for &[u16] {
    fn as_points(&self) -> &[u16] {
        self
    }
}
impl AsPoints for Vec<u16> {
    fn as_points(&self) -> &[u16] {
        self
    }
}

/// binom[j][x] = C(x, j) for j <= t, x <= v (fits u64 for the sizes here).
fn small_binomials(v: usize, t: usize) -> Vec<Vec<u64>> {
    let mut binom = vec![vec![0u64; v + 1]; t + 1];
    binom[0] = vec![1; v + 1];
    for j in 1..=t {
        for x in 1..=v {
            binom[j][x] = binom[j][x - 1] + binom[j - 1][x - 1];
        }
    }
    binom
}

fn count_subsets(counters: &mut [u64], pts: &[u16], t: usize, binom: &[Vec<u64>]) {
    match t {
        1 => {
            for &a in pts {
                counters[a as usize] += 1;
            }
        }
        2 => {
            for (i, &b) in pts.iter().enumerate() {
                let cb = binom[2][b as usize];
                for &a in &pts[..i] {
                    counters[(cb + a as u64) as usize] += 1;
                }
            }
        }
        3 => {
            for (i, &c) in pts.iter().enumerate() {
                let cc = binom[3][c as usize];
                for (j, &b) in pts[..i].iter().enumerate() {
                    let cb = cc + binom[2][b as usize];
                    for &a in &pts[..j] {
                        counters[(cb + a as u64) as usize] += 1;
                    }
                }
            }
        }
        _ => {
            let mut chosen = vec![0u16; t];
            subsets_rec(counters, pts, t, binom, &mut chosen, 0, 0);
        }
    }
}

fn subsets_rec(
    counters: &mut [u64],
    pts: &[u16],
    t: usize,
    binom: &[Vec<u64>],
    chosen: &mut [u16],
    depth: usize,
    start: usize,
) {
    if depth == t {
        let rank: u64 = chosen
            .iter()
            .enumerate()
            .map(|(i, &a)| binom[i + 1][a as usize])
            .sum();
        counters[rank as usize] += 1;
        return;
    }
    for i in start..=pts.len() - (t - depth) {
        chosen[depth] = pts[i];
        subsets_rec(counters, pts, t, binom, chosen, depth + 1, i + 1);
    }
}

fn unrank_subset(mut rank: u64, t: usize, binom: &[Vec<u64>]) -> Vec<u16> {
    let mut out = vec![0u16; t];
    for i in (0..t).rev() {
        // largest a with C(a, i+1) <= rank
        let mut a = i;
        while binom[i + 1][a + 1] <= rank {
            a += 1;
        }
        out[i] = a as u16;
        rank -= binom[i + 1][a];
    }
    out
}

/// The defining relation `b·C(k,t) = λ·C(v,t)`, checked exactly.
pub fn design_identity_holds(v: usize, k: usize, t: usize, b: u64, lambda: u64) -> bool {
    let binom = weights::binomial_table(v);
    BigUint::from(b) * &binom[k][t] == BigUint::from(lambda) * &binom[v][t]
}

/// One weight class of a design sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntry {
    pub k: usize,
    pub codewords: u64,
    pub blocks: u64,
    pub verdict: DesignVerdict,
    /// Whether `b·C(k,t) = λ·C(v,t)` holds for the verdict's λ.
    pub identity_ok: bool,
}

/// Verify the t-design property of every weight class `1 <= k <= max_weight`
/// with a nonzero count, enumerating the codebook once. Quaternary only.
pub fn design_sweep(
    code: &LinearCode,
    t: usize,
    max_weight: usize,
    budget: u64,
) -> Result<Vec<SweepEntry>> {
    let v = code.n();
    let entries: Vec<(usize, Vec<u128>, u64)> = if code.field().degree() == 2 && v <= 64 {
        let (masks, counts) = weights::collect_supports_u64(code, max_weight, budget)?;
        masks
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, m)| {
                let wide = m.into_iter().map(|x| x as u128).collect();
                (k, wide, counts[k])
            })
            .collect()
    } else {
        let (masks, counts) = weights::collect_supports_u128(code, max_weight, budget)?;
        masks
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, m)| (k, m, counts[k]))
            .collect()
    };
    let mut out = Vec::new();
    for (k, masks, codewords) in entries {
        let blocks = masks.len() as u64;
        let verdict = verify_design_from_masks(v, t, &masks);
        let identity_ok = verdict
            .lambda
            .map(|l| design_identity_holds(v, k, t, blocks, l))
            .unwrap_or(false);
        out.push(SweepEntry {
            k,
            codewords,
            blocks,
            verdict,
            identity_ok,
        });
    }
    Ok(out)
}

/// Assmus-Mattson screening report for strength `t`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmReport {
    pub t: usize,
    pub d: usize,
    pub d_dual: usize,
    /// Largest w <= v with w - floor((w+q-2)/(q-1)) < d.
    pub w: usize,
    pub w_dual: usize,
    /// Number of i in 1..=v-t with a nonzero dual count.
    pub s: usize,
    /// Whether t < d (the theorem's precondition).
    pub applicable: bool,
    /// Whether s <= d - t; if so the theorem certifies the designs below.
    pub condition_holds: bool,
    /// Primal weights certified by the theorem (A_i != 0, d <= i <= w).
    pub certified_weights: Vec<usize>,
    /// Dual weights certified (A_i^⊥ != 0, d^⊥ <= i <= min(v-t, w^⊥)).
    pub certified_dual_weights: Vec<usize>,
}

/// Evaluate the Assmus-Mattson condition from the primal and dual weight
/// distributions. A negative report does not refute the design property.
pub fn assmus_mattson(
    dist: &WeightDistribution,
    dual_dist: &WeightDistribution,
    t: usize,
) -> Result<AmReport> {
    if dist.n != dual_dist.n || dist.field_size != dual_dist.field_size {
        return Err(Error::InvalidArgument(
            "primal and dual distributions must match in length and field".into(),
        ));
    }
    let v = dist.n;
    let q = dist.field_size as usize;
    let d = dist
        .min_weight()
        .ok_or_else(|| Error::InvalidArgument("zero code has no designs".into()))?;
    let d_dual = dual_dist
        .min_weight()
        .ok_or_else(|| Error::InvalidArgument("full code's dual is zero".into()))?;
    let largest_w = |dd: usize| {
        (0..=v)
            .filter(|&w| w - (w + q - 2) / (q - 1) < dd)
            .next_back()
            .unwrap_or(0)
    };
    let w = largest_w(d);
    let w_dual = largest_w(d_dual);
    let applicable = t < d;
    let s = (1..=v.saturating_sub(t))
        .filter(|&i| !dual_dist.counts[i].is_zero())
        .count();
    let condition_holds = applicable && s <= d - t;
    let (certified_weights, certified_dual_weights) = if condition_holds {
        (
            (d..=w).filter(|&i| !dist.counts[i].is_zero()).collect(),
            (d_dual..=w_dual.min(v - t))
                .filter(|&i| !dual_dist.counts[i].is_zero())
                .collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(AmReport {
        t,
        d,
        d_dual,
        w,
        w_dual,
        s,
        applicable,
        condition_holds,
        certified_weights,
        certified_dual_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CyclicCode;
    use crate::cyclotomic;
    use crate::field::Field;

    fn quaternary_subcode(h: u32) -> LinearCode {
        let base = Field::get(2).unwrap();
        let t: Vec<usize> = cyclotomic::build_t(h).iter().map(|&x| x as usize).collect();
        CyclicCode::from_defining_set(&base, cyclotomic::family_length(h) as usize, &t)
            .unwrap()
            .to_linear()
    }

    #[test]
    fn h2_minimum_weight_design() {
        let design = supports(&quaternary_subcode(2), 12, 1 << 24).unwrap();
        assert_eq!(design.codewords, 204);
        assert_eq!(design.blocks.len(), 68);
        let verdict = verify_design(&design, 3).unwrap();
        assert_eq!(verdict.lambda, Some(22));
        assert!(design_identity_holds(17, 12, 3, 68, 22));
    }

    #[test]
    fn h3_minimum_weight_design() {
        let design = supports(&quaternary_subcode(3), 44, 1 << 24).unwrap();
        assert_eq!(design.codewords, 18720);
        assert_eq!(design.blocks.len(), 6240);
        let verdict = verify_design(&design, 3).unwrap();
        assert_eq!(verdict.lambda, Some(1892));
        assert!(design_identity_holds(65, 44, 3, 6240, 1892));
    }

    #[test]
    fn empty_weight_class() {
        let design = supports(&quaternary_subcode(2), 5, 1 << 24).unwrap();
        assert_eq!(design.codewords, 0);
        assert!(design.blocks.is_empty());
    }

    #[test]
    fn complete_design_lambda() {
        // every t-subset of a complete design lies in C(v-t, k-t) blocks
        let design = complete_design(7, 3);
        assert_eq!(design.blocks.len(), 35);
        for t in 1..=3 {
            let verdict = verify_design(&design, t).unwrap();
            let binom = small_binomials(7, 3);
            let expected = {
                // C(7-t, 3-t)
                let mut b = vec![vec![0u64; 8]; 4];
                b[0] = vec![1; 8];
                for j in 1..4 {
                    for x in 1..8 {
                        b[j][x] = b[j][x - 1] + b[j - 1][x - 1];
                    }
                }
                b[3 - t][7 - t]
            };
            assert_eq!(verdict.lambda, Some(expected), "t={t}");
            drop(binom);
        }
    }

    #[test]
    fn counterexample_for_non_design() {
        let blocks = vec![vec![0u16, 1, 2], vec![0, 1, 3]];
        let design = SupportDesign {
            v: 4,
            k: 3,
            blocks,
            codewords: 2,
        };
        let verdict = verify_design(&design, 2).unwrap();
        assert_eq!(verdict.lambda, None);
        let ce = verdict.counterexample.unwrap();
        assert_eq!(ce.len(), 2);
        // {0,1} lies in two blocks while {0,2} lies in one
        assert!(ce == vec![0, 2] || ce == vec![0, 1]);
    }

    #[test]
    fn unrank_is_inverse_of_rank() {
        let binom = small_binomials(20, 3);
        let mut rank = 0u64;
        for c in 2..20u16 {
            for b in 1..c {
                for a in 0..b {
                    assert_eq!(unrank_subset(rank, 3, &binom), vec![a, b, c]);
                    rank += 1;
                }
            }
        }
    }

    #[test]
    fn h3_other_weight_classes() {
        let code = quaternary_subcode(3);
        for (k, expected_blocks, expected_lambda) in
            [(48usize, 5460u64, 2162u64), (52, 10080, 5100)]
        {
            let design = supports(&code, k, 1 << 24).unwrap();
            assert_eq!(design.blocks.len() as u64, expected_blocks);
            let verdict = verify_design(&design, 3).unwrap();
            assert_eq!(verdict.lambda, Some(expected_lambda), "k={k}");
            assert!(design_identity_holds(
                65,
                k,
                3,
                expected_blocks,
                expected_lambda
            ));
        }
    }

    #[test]
    fn sweep_matches_per_weight_extraction() {
        let code = quaternary_subcode(2);
        let entries = design_sweep(&code, 3, 15, 1 << 24).unwrap();
        assert_eq!(entries.len(), 1); // only k = 12 below 16
        assert_eq!(entries[0].k, 12);
        assert_eq!(entries[0].blocks, 68);
        assert_eq!(entries[0].verdict.lambda, Some(22));
        assert!(entries[0].identity_ok);
    }

    #[test]
    fn assmus_mattson_h3_fails_yet_design_exists() {
        let code = quaternary_subcode(3);
        let dist = weights::weight_distribution(&code, 1 << 24).unwrap();
        let dual = weights::macwilliams(&dist).unwrap();
        let report = assmus_mattson(&dist, &dual, 3).unwrap();
        assert!(report.applicable);
        assert_eq!(report.s, 58); // frozen from the dual distribution oracle
        assert!(!report.condition_holds); // s > d - t = 41
                                          // …but the design exists (verified above)
    }

    #[test]
    fn assmus_mattson_h2_report_values() {
        let code = quaternary_subcode(2);
        let dist = weights::weight_distribution(&code, 1 << 24).unwrap();
        let dual = weights::macwilliams(&dist).unwrap();
        let report = assmus_mattson(&dist, &dual, 3).unwrap();
        assert_eq!((report.d, report.d_dual), (12, 4));
        assert_eq!(report.s, 11);
        assert!(!report.condition_holds);
        // t >= d: not applicable
        let na = assmus_mattson(&dist, &dual, 12).unwrap();
        assert!(!na.applicable);
        assert!(!na.condition_holds);
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn identity_binds_lambda_and_block_count(v in 6usize..12, k in 3usize..6) {
                prop_assume!(k < v);
                let design = complete_design(v, k);
                let verdict = verify_design(&design, 3).unwrap();
                let lambda = verdict.lambda.unwrap();
                prop_assert!(design_identity_holds(v, k, 3, design.blocks.len() as u64, lambda));
            }
        }
    }
}
