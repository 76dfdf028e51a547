//! JSON report types shared by the library and the CLI. Counts are emitted
//! as exact decimal strings because dual distributions overflow both u64 and
//! the 2^53 window of JSON numbers.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::codes::CodeDescriptor;
use crate::cyclotomic::PartitionReport;
use crate::designs::{AmReport, SweepEntry};
use crate::field::Fe;
use crate::projective::{InvarianceEntry, SpectrumReport};
use crate::subfield::DelsarteReport;
use crate::weights::{MinDistance, Provenance, WeightDistribution};

pub mod biguint_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let strings: Vec<String> = Vec::deserialize(d)?;
        strings
            .into_iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serializable form of a weight distribution with provenance and timing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionReport {
    pub n: usize,
    pub field_size: u64,
    pub dimension: usize,
    #[serde(with = "biguint_vec")]
    pub counts: Vec<BigUint>,
    pub enumerator: String,
    pub min_distance: Option<usize>,
    pub provenance: Provenance,
    pub elapsed_ms: u128,
}

impl From<&WeightDistribution> for DistributionReport {
    fn from(d: &WeightDistribution) -> Self {
        DistributionReport {
            n: d.n,
            field_size: d.field_size,
            dimension: d.dimension,
            counts: d.counts.clone(),
            enumerator: d.enumerator_string(),
            min_distance: d.min_weight(),
            provenance: d.provenance,
            elapsed_ms: d.elapsed.as_millis(),
        }
    }
}

impl DistributionReport {
    pub fn to_distribution(&self) -> WeightDistribution {
        WeightDistribution {
            n: self.n,
            field_size: self.field_size,
            dimension: self.dimension,
            counts: self.counts.clone(),
            provenance: self.provenance,
            elapsed: std::time::Duration::from_millis(self.elapsed_ms as u64),
        }
    }
}

/// `quatcode build` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildReport {
    pub m: u32,
    pub u: usize,
    pub code: CodeDescriptor,
    pub n: usize,
    pub dimension: usize,
    pub bch_bound: usize,
    pub singleton_bound: usize,
    pub min_distance: MinDistance,
    pub mds: bool,
    /// `C ∩ C^⊥ = {0}` by the stacked-rank computation.
    pub reversible: bool,
    /// The defining set is fixed by i ↦ n − i.
    pub defining_set_reflective: bool,
}

/// `quatcode quaternary` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuaternaryReport {
    pub h: u32,
    pub q: u64,
    pub n: usize,
    pub subcode: CodeDescriptor,
    pub subcode_params: (usize, usize, Option<usize>),
    pub subcode_distribution: Option<DistributionReport>,
    pub dual_params: (usize, usize, Option<usize>),
    pub dual_distribution: Option<DistributionReport>,
    /// Reason a distribution was not computed (budget gating).
    pub skipped: Option<String>,
    pub delsarte: DelsarteReport,
    /// BCH bound on the subcode versus its exact minimum distance.
    pub bch_bound: usize,
    pub bch_bound_tight: Option<bool>,
    /// Set when the computed enumerator disagrees with a published value.
    pub discrepancy: Option<String>,
}

/// `quatcode designs` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignsReport {
    pub h: u32,
    pub v: usize,
    pub t: usize,
    pub code_params: (usize, usize),
    pub entries: Vec<SweepEntry>,
    pub assmus_mattson: AmReport,
    /// Blocks of the minimum-weight design, included under --emit-blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<u16>>>,
}

/// `quatcode lemmas` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmasReport {
    pub reports: Vec<PartitionReport>,
}

/// `quatcode group` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupReport {
    pub h: u32,
    pub seed: u64,
    pub elements_per_kind: usize,
    pub invariance: Vec<InvarianceEntry>,
    pub all_invariant: bool,
    pub spectrum: SpectrumReport,
    /// |PGL₂(GF(q))| by triple enumeration, with the expected value.
    pub pgl2_order: Option<(u64, u64)>,
}

/// One acceptance criterion outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

/// `quatcode acceptance` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub long: bool,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

/// Design export per the external interface: blocks optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignExport {
    pub v: usize,
    pub k: usize,
    pub t: usize,
    pub lambda: Option<u64>,
    pub b: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<u16>>>,
}

/// `weight,count` CSV for a design sweep table.
pub fn sweep_to_csv(entries: &[SweepEntry]) -> String {
    let mut out = String::from("k,codewords,blocks,lambda,identity_ok\n");
    for e in entries {
        let lambda = e
            .verdict
            .lambda
            .map(|l| l.to_string())
            .unwrap_or_else(|| "none".into());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            e.k, e.codewords, e.blocks, lambda, e.identity_ok
        ));
    }
    out
}

/// Pretty JSON with a trailing newline, the canonical output format.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// True when a distribution report matches a frozen enumerator exactly.
pub fn matches_enumerator(dist: &WeightDistribution, expected: &[(usize, u64)]) -> bool {
    let mut reference = vec![BigUint::zero(); dist.n + 1];
    for &(w, c) in expected {
        reference[w] = BigUint::from(c);
    }
    dist.counts == reference
}

/// Element parameters serialized for reproducibility checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementParams {
    pub kind: String,
    pub u0: Fe,
    pub c: Option<Fe>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_counts_round_trip_as_decimal_strings() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let report = DistributionReport {
            n: 1,
            field_size: 4,
            dimension: 1,
            counts: vec![BigUint::from(1u32), big.clone()],
            enumerator: String::new(),
            min_distance: Some(1),
            provenance: Provenance::Macwilliams,
            elapsed_ms: 0,
        };
        let json = to_json_pretty(&report);
        assert!(json.contains("\"123456789012345678901234567890\""));
        let parsed: DistributionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.counts[1], big);
    }
}
