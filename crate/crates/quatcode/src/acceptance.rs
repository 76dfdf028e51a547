//! The end-to-end verification suite: one entry per acceptance criterion,
//! each returning pass/fail with a human-readable detail line. The CLI
//! `acceptance` subcommand and the integration test target both run these.

use std::time::Instant;

use num_bigint::BigUint;

use crate::codes::{mds_family_code, CyclicCode};
use crate::designs;
use crate::field::{Fe, Field};
use crate::projective::{self, StabilizerElement, UnitCircle};
use crate::report::{matches_enumerator, CriterionReport};
use crate::subfield;
use crate::weights;
use crate::Result;

/// The paper's h=4 enumerator of the [257, 16, 172] code.
pub const H4_ENUMERATOR: [(usize, u64); 14] = [
    (0, 1),
    (172, 28422144),
    (176, 25794576),
    (180, 258365184),
    (184, 234877440),
    (188, 1160570880),
    (192, 469178172),
    (196, 1348867584),
    (200, 301985280),
    (204, 394752000),
    (208, 41942400),
    (212, 30198528),
    (240, 12336),
    (256, 771),
];

fn family_parent(h: u32) -> Result<CyclicCode> {
    let q = 4usize.pow(h);
    mds_family_code(2 * h, (q + 4) / 4)
}

fn quaternary_subcode(h: u32) -> Result<CyclicCode> {
    subfield::subfield_subcode(&family_parent(h)?.dual())
}

fn run(id: usize, name: &str, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionReport {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(outcome) => outcome,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        name: name.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Criterion 1: the MDS family `C_u = [q+1, 2u−1, q−2u+3]`, exhaustively for
/// every enumerable (m, u) and by BCH-meets-Singleton elsewhere, plus the
/// reversibility (LCD) property.
pub fn criterion_mds_family() -> CriterionReport {
    run(1, "MDS family parameters and reversibility", || {
        let enumerable = [
            (2u32, vec![1usize, 2]),
            (3, vec![1, 2, 3, 4]),
            (4, vec![1, 2, 3]),
        ];
        let mut lines = Vec::new();
        for (m, us) in &enumerable {
            let q = 1usize << m;
            for &u in us {
                let code = mds_family_code(*m, u)?;
                let expect_d = q - 2 * u + 3;
                if code.dimension() != 2 * u - 1 {
                    return Ok((false, format!("m={m} u={u}: dimension {}", code.dimension())));
                }
                let linear = code.to_linear();
                let dist = weights::weight_distribution(&linear, 1 << 24)?;
                if dist.min_weight() != Some(expect_d) {
                    return Ok((
                        false,
                        format!("m={m} u={u}: d={:?} want {expect_d}", dist.min_weight()),
                    ));
                }
                if !linear.intersection_trivial(&linear.dual())? {
                    return Ok((false, format!("m={m} u={u}: not LCD")));
                }
                lines.push(format!("[{},{},{}]", q + 1, 2 * u - 1, expect_d));
            }
        }
        // non-enumerable members: the two bounds pin the distance
        for m in [2u32, 3, 4] {
            let q = 1usize << m;
            for u in 1..=q / 2 {
                let code = mds_family_code(m, u)?;
                let expect_d = q - 2 * u + 3;
                let singleton = code.n() - code.dimension() + 1;
                if code.bch_bound() != expect_d || singleton != expect_d {
                    return Ok((
                        false,
                        format!(
                            "m={m} u={u}: bch={} singleton={singleton} want {expect_d}",
                            code.bch_bound()
                        ),
                    ));
                }
                if !code.defining_set_reflective() {
                    return Ok((false, format!("m={m} u={u}: defining set not reflective")));
                }
            }
        }
        Ok((
            true,
            format!(
                "exhaustively verified {}; bounds coincide for all u ≤ q/2, m ≤ 4",
                lines.join(" ")
            ),
        ))
    })
}

/// Criterion 2: `(C^⊥)|GF(4)` has dimension 2^h, minimum distance exactly
/// `2(2^{2h}+2)/3`, and the published enumerators, for h in {2, 3}.
pub fn criterion_quaternary_parameters() -> CriterionReport {
    run(2, "quaternary subfield subcode parameters", || {
        let expected: [(u32, Vec<(usize, u64)>); 2] = [
            (2, vec![(0, 1), (12, 204), (16, 51)]),
            (
                3,
                vec![(0, 1), (44, 18720), (48, 16380), (52, 30240), (64, 195)],
            ),
        ];
        let mut lines = Vec::new();
        for (h, enumerator) in &expected {
            let code = quaternary_subcode(*h)?;
            let want_d = (2 * (4usize.pow(*h) + 2)) / 3;
            if code.dimension() != 1 << h {
                return Ok((false, format!("h={h}: dimension {}", code.dimension())));
            }
            let dist = weights::weight_distribution(&code.to_linear(), 1 << 24)?;
            if dist.min_weight() != Some(want_d) {
                return Ok((
                    false,
                    format!("h={h}: d={:?} want {want_d}", dist.min_weight()),
                ));
            }
            if !matches_enumerator(&dist, enumerator) {
                return Ok((
                    false,
                    format!("h={h}: enumerator {}", dist.enumerator_string()),
                ));
            }
            lines.push(format!(
                "h={h}: [{}, {}, {want_d}] {}",
                code.n(),
                code.dimension(),
                dist.enumerator_string()
            ));
        }
        Ok((true, lines.join("; ")))
    })
}

/// Criterion 3: dual parameters [17,13,4] and [65,57,5] by MacWilliams, the
/// former cross-checked by exhaustive enumeration of all 4^13 codewords.
pub fn criterion_dual_parameters() -> CriterionReport {
    run(3, "dual code parameters via MacWilliams", || {
        let sub2 = quaternary_subcode(2)?.to_linear();
        let primal2 = weights::weight_distribution(&sub2, 1 << 24)?;
        let dual2 = weights::macwilliams(&primal2)?;
        if dual2.dimension != 13 || dual2.min_weight() != Some(4) {
            return Ok((false, format!("h=2 dual: {:?}", dual2.min_weight())));
        }
        let enumerated = weights::weight_distribution(&sub2.dual(), 1 << 27)?;
        if enumerated.counts != dual2.counts {
            return Ok((
                false,
                "h=2: exhaustive dual distribution differs from MacWilliams".into(),
            ));
        }
        let sub3 = quaternary_subcode(3)?.to_linear();
        let dual3 = weights::macwilliams(&weights::weight_distribution(&sub3, 1 << 24)?)?;
        if dual3.dimension != 57 || dual3.min_weight() != Some(5) {
            return Ok((false, format!("h=3 dual: {:?}", dual3.min_weight())));
        }
        Ok((
            true,
            format!(
                "[17,13,4] (MacWilliams = exhaustive over {} words) and [65,57,5]",
                enumerated.total()
            ),
        ))
    })
}

/// Criterion 4: the 16-codeword oracle decides the h=1 enumerator and
/// documents the discrepancy with the published `1 + 15z^5`.
pub fn criterion_h1_oracle() -> CriterionReport {
    run(4, "h=1 oracle fixture and discrepancy", || {
        let code = quaternary_subcode(1)?.to_linear();
        if (code.n(), code.dimension()) != (5, 2) {
            return Ok((false, format!("got [{}, {}]", code.n(), code.dimension())));
        }
        let dist = weights::weight_distribution(&code, 1 << 10)?;
        let oracle_ok = matches_enumerator(&dist, &[(0, 1), (4, 15)]);
        let enumerator = dist.enumerator_string();
        if !oracle_ok {
            return Ok((false, format!("oracle enumerator {enumerator}")));
        }
        Ok((
            true,
            format!(
                "oracle over 16 codewords: {enumerator}; the published 1 + 15z^5 would give \
                 d = 5 > n − k + 1 = 4, violating the Singleton bound"
            ),
        ))
    })
}

/// Criterion 5: Delsarte duality `(C^{(4)})^⊥ = (C^⊥)|GF(4)` for h in 1..=4,
/// and the proper containment [17,5,9] ⊊ [17,13,4] at m = 4.
pub fn criterion_delsarte() -> CriterionReport {
    run(5, "Delsarte duality and proper containment", || {
        for h in 1..=4u32 {
            let report = subfield::verify_delsarte(&family_parent(h)?)?;
            if !report.equal {
                return Ok((false, format!("h={h}: sides differ: {report:?}")));
            }
        }
        let parent = family_parent(2)?;
        let subcode = subfield::subfield_subcode(&parent)?.to_linear();
        let trace = subfield::subfield_code(&parent.to_linear())?;
        let sub_dist = weights::weight_distribution(&subcode, 1 << 24)?;
        let trace_d = weights::macwilliams(&weights::weight_distribution(&trace.dual(), 1 << 24)?)?;
        let containment = trace.contains_code(&subcode)
            && subcode.dimension() == 5
            && trace.dimension() == 13
            && sub_dist.min_weight() == Some(9)
            && trace_d.min_weight() == Some(4);
        if !containment {
            return Ok((
                false,
                format!(
                    "containment: [{},{},{:?}] vs [{},{},{:?}]",
                    subcode.n(),
                    subcode.dimension(),
                    sub_dist.min_weight(),
                    trace.n(),
                    trace.dimension(),
                    trace_d.min_weight()
                ),
            ));
        }
        Ok((
            true,
            "reduced-matrix equality for h=1..4; [17,5,9] strictly inside [17,13,4]".into(),
        ))
    })
}

/// Criterion 6: the 3-designs — λ = 22 at (17,12), λ = 1892 at (65,44), the
/// full sweep over k < q for h in {2,3} with the identity check, and the
/// dual-side sweep at h=2 over all weights below 16.
pub fn criterion_designs() -> CriterionReport {
    run(6, "support 3-designs and dual-side sweep", || {
        let expected: [(u32, Vec<(usize, u64)>); 2] = [
            (2, vec![(12, 22)]),
            (3, vec![(44, 1892), (48, 2162), (52, 5100)]),
        ];
        let mut lines = Vec::new();
        for (h, lambdas) in &expected {
            let code = quaternary_subcode(*h)?.to_linear();
            let q = 4usize.pow(*h);
            let entries = designs::design_sweep(&code, 3, q - 1, 1 << 24)?;
            let ks: Vec<usize> = entries.iter().map(|e| e.k).collect();
            if ks != lambdas.iter().map(|&(k, _)| k).collect::<Vec<_>>() {
                return Ok((false, format!("h={h}: weight classes {ks:?}")));
            }
            for (entry, &(k, lambda)) in entries.iter().zip(lambdas) {
                if entry.verdict.lambda != Some(lambda) || !entry.identity_ok {
                    return Ok((
                        false,
                        format!(
                            "h={h} k={k}: lambda {:?} (want {lambda}), identity {}",
                            entry.verdict.lambda, entry.identity_ok
                        ),
                    ));
                }
                lines.push(format!("3-({}, {k}, {lambda})", code.n()));
            }
        }
        // dual side at h=2: [17,13], weights below 16
        let dual = quaternary_subcode(2)?.to_linear().dual();
        let entries = designs::design_sweep(&dual, 3, 15, 1 << 27)?;
        if entries.is_empty() {
            return Ok((false, "dual sweep found no weight classes".into()));
        }
        for e in &entries {
            if e.verdict.lambda.is_none() || !e.identity_ok {
                return Ok((
                    false,
                    format!("dual k={}: not a 3-design ({:?})", e.k, e.verdict.counterexample),
                ));
            }
        }
        lines.push(format!(
            "dual sweep k={:?} all 3-designs",
            entries.iter().map(|e| e.k).collect::<Vec<_>>()
        ));
        Ok((true, lines.join("; ")))
    })
}

/// Criterion 7: the partition/structure lemma suite for 1 <= h <= 8.
pub fn criterion_lemmas() -> CriterionReport {
    run(7, "defining-set partition lemmas", || {
        for h in 1..=8 {
            let report = crate::cyclotomic::verify_partition(h);
            if !report.all_passed() {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                return Ok((false, format!("h={h}: {failed:?}")));
            }
        }
        Ok((true, "all partition, closure, cardinality and min/max checks for h=1..8".into()))
    })
}

/// Criterion 8: stabilizer block invariance (200 seeded elements per kind at
/// h in {2,3}), the spectrum lemma (exhaustive at h=1, 500 trials at h in
/// {2,3}), and |PGL₂(GF(q))| = (q+1)q(q−1) for q in {4, 16}.
pub fn criterion_group_action() -> CriterionReport {
    run(8, "projective group action", || {
        for h in [2u32, 3] {
            let circle = UnitCircle::new(2 * h)?;
            let code = quaternary_subcode(h)?.to_linear();
            let min_weight = (2 * (4usize.pow(h) + 2)) / 3;
            let design = designs::supports(&code, min_weight, 1 << 24)?;
            let elements = sample_per_kind(&circle, 200, 0xACCE55 + h as u64)?;
            let report = projective::verify_block_invariance(&circle, &design.blocks, &elements)?;
            if let Some(bad) = report.iter().find(|e| !e.passed) {
                return Ok((
                    false,
                    format!("h={h}: {:?} moved a block out of the design", bad.kind),
                ));
            }
        }
        let s1 = projective::verify_spectrum_lemma(1, 0, 0)?;
        let s2 = projective::verify_spectrum_lemma(2, 500, 1)?;
        let s3 = projective::verify_spectrum_lemma(3, 500, 1)?;
        for s in [&s1, &s2, &s3] {
            if !s.all_spectra_supported_on_e
                || !s.remainder_lemma_ok
                || s.expansion_lemma_ok == Some(false)
            {
                return Ok((false, format!("spectrum lemma failed: {s:?}")));
            }
        }
        for (degree, q) in [(2u32, 4u64), (4, 16)] {
            let order = projective::pgl2_order_by_triples(&Field::get(degree)?)?;
            if order != (q + 1) * q * (q - 1) {
                return Ok((false, format!("|PGL2(GF({q}))| = {order}")));
            }
        }
        Ok((
            true,
            format!(
                "600+600 stabilizer elements fix both block sets; spectrum lemma: {} + {} + {} \
                 trials clean; |PGL2| = 60 and 4080",
                s1.trials, s2.trials, s3.trials
            ),
        ))
    })
}

/// Criterion 9 (long): the h=4 enumerator over 4^16 codewords and the dual
/// minimum distance 8 via MacWilliams.
pub fn criterion_h4_long() -> CriterionReport {
    run(9, "h=4 enumerator (long)", || {
        let code = quaternary_subcode(4)?.to_linear();
        if (code.n(), code.dimension()) != (257, 16) {
            return Ok((false, format!("got [{}, {}]", code.n(), code.dimension())));
        }
        let dist = weights::weight_distribution(&code, 1 << 33)?;
        if !matches_enumerator(&dist, &H4_ENUMERATOR) {
            return Ok((
                false,
                format!("enumerator differs: {}", dist.enumerator_string()),
            ));
        }
        let dual = weights::macwilliams(&dist)?;
        if dual.min_weight() != Some(8) {
            return Ok((false, format!("dual distance {:?}", dual.min_weight())));
        }
        Ok((
            true,
            format!(
                "[257,16,172] enumerator matches all 13 terms over {} codewords; dual [257,241,8]",
                dist.total()
            ),
        ))
    })
}

pub(crate) fn sample_per_kind(
    circle: &UnitCircle,
    count: usize,
    seed: u64,
) -> Result<Vec<StabilizerElement>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let n = circle.n();
    let mut out = Vec::with_capacity(3 * count);
    let random_c = |rng: &mut rand_chacha::ChaCha12Rng| loop {
        let c = rng.gen_range(1..circle.field().size()) as Fe;
        if !circle.contains(c) {
            return c;
        }
    };
    for _ in 0..count {
        out.push(StabilizerElement::kind_i(circle, circle.point(rng.gen_range(0..n)))?);
    }
    for _ in 0..count {
        out.push(StabilizerElement::kind_ii(circle, circle.point(rng.gen_range(0..n)))?);
    }
    for _ in 0..count {
        let u0 = circle.point(rng.gen_range(0..n));
        let c = random_c(&mut rng);
        out.push(StabilizerElement::kind_iii(circle, u0, c)?);
    }
    Ok(out)
}

/// Run the acceptance suite; criterion 9 only under `long`.
pub fn run_all(long: bool) -> Vec<CriterionReport> {
    let mut reports = vec![
        criterion_mds_family(),
        criterion_quaternary_parameters(),
        criterion_dual_parameters(),
        criterion_h1_oracle(),
        criterion_delsarte(),
        criterion_designs(),
        criterion_lemmas(),
        criterion_group_action(),
    ];
    if long {
        reports.push(criterion_h4_long());
    }
    reports
}

/// `4^k` as a big integer, for report text.
pub fn four_pow(k: usize) -> BigUint {
    BigUint::from(4u32).pow(k as u32)
}
