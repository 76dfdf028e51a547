//! Quaternary subfield subcodes `C|_{GF(4)}`, subfield (trace) codes
//! `C^{(4)}`, and the Delsarte duality tying them together.
//!
//! Three construction routes are kept deliberately independent so they can
//! cross-check each other: defining sets (cyclotomic closure), brute-force
//! component filtering, and trace spanning.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{CodeDescriptor, CyclicCode, LinearCode};
use crate::cyclotomic;
use crate::field::{Fe, Field};
use crate::weights::gray_digits;
use crate::{Error, Result};

fn require_gf4_subfield(field: &Arc<Field>) -> Result<()> {
    if field.degree() % 2 != 0 {
        return Err(Error::InvalidTower(format!(
            "GF(4) is not a subfield of GF(2^{})",
            field.degree()
        )));
    }
    Ok(())
}

/// The subfield subcode `parent|_{GF(4)}` by the defining-set route: the
/// result is cyclic over GF(4) with zeros on the 4-cyclotomic closure of the
/// parent's zeros.
pub fn subfield_subcode(parent: &CyclicCode) -> Result<CyclicCode> {
    require_gf4_subfield(parent.field())?;
    let n = parent.n();
    let mut closure: Vec<usize> = parent
        .defining_set()
        .iter()
        .flat_map(|&i| {
            cyclotomic::coset_of(n as u64, 4, i as u64)
                .into_iter()
                .map(|x| x as usize)
        })
        .collect();
    closure.sort_unstable();
    closure.dedup();
    CyclicCode::from_defining_set(&Field::get(2)?, n, &closure)
}

/// The subfield subcode by brute force: enumerate the parent codebook and
/// keep the words whose components all lie in the embedded GF(4).
pub fn subfield_subcode_filtered(parent: &LinearCode, budget: u64) -> Result<LinearCode> {
    require_gf4_subfield(parent.field())?;
    let f = parent.field();
    let gf4 = Field::get(2)?;
    let q = f.size();
    let k = parent.dimension();
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total.checked_mul(q).filter(|&t| t <= budget).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "parent codebook of {q}^{k} words exceeds the budget of {budget}"
            ))
        })?;
    }
    let mut rows = Vec::new();
    for counter in 0..total {
        let digits = gray_digits(counter, k, q);
        let mut word = vec![0; parent.n()];
        for (r, &d) in digits.iter().enumerate() {
            if d != 0 {
                for (j, w) in word.iter_mut().enumerate() {
                    *w ^= f.mul(d as Fe, parent.generator().get(r, j));
                }
            }
        }
        if word.iter().all(|&c| f.pow(c, 4) == c) {
            let projected: Vec<Fe> = word
                .iter()
                .map(|&c| f.project_to(&gf4, c).expect("checked component"))
                .collect();
            rows.push(projected);
        }
    }
    Ok(LinearCode::from_generators(gf4, rows, parent.n()))
}

/// The canonical GF(4)-basis of the parent field: powers of the primitive
/// element, `{1, g, …, g^{h−1}}` for `h = [GF(q) : GF(4)]`.
pub fn power_basis(field: &Arc<Field>) -> Result<Vec<Fe>> {
    require_gf4_subfield(field)?;
    let h = field.degree() / 2;
    Ok((0..h as u64).map(|i| field.pow(field.alpha(), i)).collect())
}

/// The subfield (trace) code `C^{(4)} = Tr_{q/4}(C)`: the GF(4)-span of the
/// componentwise traces of all GF(4)-scalar multiples of the parent's
/// generators, realized through a basis of GF(q) over GF(4).
pub fn subfield_code(parent: &LinearCode) -> Result<LinearCode> {
    let basis = power_basis(parent.field())?;
    subfield_code_with_basis(parent, &basis)
}

/// As [`subfield_code`], over a caller-supplied GF(4)-basis of the parent
/// field. The resulting code must not depend on the choice.
pub fn subfield_code_with_basis(parent: &LinearCode, basis: &[Fe]) -> Result<LinearCode> {
    require_gf4_subfield(parent.field())?;
    let f = parent.field();
    let gf4 = Field::get(2)?;
    let h = (f.degree() / 2) as usize;
    if basis.len() != h || !gf4_linearly_independent(f, basis) {
        return Err(Error::InvalidArgument(format!(
            "need {h} GF(4)-linearly independent elements"
        )));
    }
    let mut rows = Vec::with_capacity(parent.dimension() * h);
    for r in 0..parent.dimension() {
        for &gamma in basis {
            let row: Vec<Fe> = (0..parent.n())
                .map(|j| {
                    let scaled = f.mul(gamma, parent.generator().get(r, j));
                    f.trace_to(&gf4, scaled).expect("GF(4) is a subfield")
                })
                .collect();
            rows.push(row);
        }
    }
    Ok(LinearCode::from_generators(gf4, rows, parent.n()))
}

fn gf4_linearly_independent(field: &Arc<Field>, basis: &[Fe]) -> bool {
    let gf4 = Field::get(2).expect("GF(4)");
    let mut seen = std::collections::HashSet::with_capacity(1 << (2 * basis.len()));
    let mut combos = vec![0u8; basis.len()];
    loop {
        let mut acc: Fe = 0;
        for (i, &c) in combos.iter().enumerate() {
            let scalar = field
                .embed_from(&gf4, c as Fe)
                .expect("GF(4) embeds in the parent field");
            acc ^= field.mul(scalar, basis[i]);
        }
        if !seen.insert(acc) {
            return false;
        }
        // odometer over GF(4)^h
        let mut i = 0;
        loop {
            if i == combos.len() {
                return true;
            }
            combos[i] += 1;
            if combos[i] < 4 {
                break;
            }
            combos[i] = 0;
            i += 1;
        }
    }
}

/// One coordinate of the trace-representation word
/// `(Σ_i Tr_{q²/4}(a_i β^{ij}))_j`, with `coeffs = [(i, a_i)]` living in the
/// splitting field `big` and β its canonical primitive n-th root of unity.
pub fn trace_representation_eval(
    coeffs: &[(usize, Fe)],
    big: &Arc<Field>,
    n: usize,
    j: usize,
) -> Result<Fe> {
    let gf4 = Field::get(2)?;
    let beta = big.nth_root(n as u64)?;
    let mut acc: Fe = 0;
    for &(i, a) in coeffs {
        let term = big.mul(a, big.pow(beta, (i * j % n) as u64));
        acc ^= big.trace_to(&gf4, term)?;
    }
    Ok(acc)
}

/// The full trace-representation word over `j = 0..n-1`.
pub fn trace_representation_word(
    coeffs: &[(usize, Fe)],
    big: &Arc<Field>,
    n: usize,
) -> Result<Vec<Fe>> {
    (0..n)
        .map(|j| trace_representation_eval(coeffs, big, n, j))
        .collect()
}

/// Result of checking `(C^{(4)})^⊥ = (C^⊥)|_{GF(4)}` on a parent code, with
/// both sides reduced to canonical generator matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DelsarteReport {
    pub equal: bool,
    /// `(n, k)` of the trace code C^(4).
    pub trace_code: (usize, usize),
    /// `(n, k)` of the subfield subcode of the dual.
    pub dual_subcode: (usize, usize),
    /// A codeword in one side but not the other, when unequal.
    pub witness: Option<Vec<Fe>>,
}

/// Verify the Delsarte identity `(C^{(4)})^⊥ = (C^⊥)|_{GF(4)}` for a cyclic
/// parent: the left side comes from the trace-spanning route, the right side
/// from the defining-set route. The two sides share no construction code.
pub fn verify_delsarte(parent: &CyclicCode) -> Result<DelsarteReport> {
    let trace_code = subfield_code(&parent.to_linear())?;
    let dual_subcode = subfield_subcode(&parent.dual())?.to_linear();
    let lhs = trace_code.dual();
    let equal = lhs == dual_subcode;
    let witness = if equal {
        None
    } else {
        let in_lhs_not_rhs = (0..lhs.dimension())
            .map(|r| lhs.generator().row(r).to_vec())
            .find(|w| !dual_subcode.contains(w));
        in_lhs_not_rhs.or_else(|| {
            (0..dual_subcode.dimension())
                .map(|r| dual_subcode.generator().row(r).to_vec())
                .find(|w| !lhs.contains(w))
        })
    };
    Ok(DelsarteReport {
        equal,
        trace_code: (trace_code.n(), trace_code.dimension()),
        dual_subcode: (dual_subcode.n(), dual_subcode.dimension()),
        witness,
    })
}

/// Construction route of a derived quaternary code, recorded in descriptors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    DefiningSet,
    ComponentFilter,
    TraceSpanning,
}

/// Descriptor of a derived code with its derivation annotation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivedDescriptor {
    #[serde(flatten)]
    pub code: CodeDescriptor,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Derivation {
    pub parent: CodeDescriptor,
    pub route: Route,
}
