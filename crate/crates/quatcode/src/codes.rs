//! Cyclic, BCH, and generic linear codes: the reversible MDS family `C_u`,
//! generator/check polynomials, generator matrices in reduced form, duals,
//! and the BCH bound.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic;
use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::poly::{self, Poly};
use crate::{Error, Result};

/// A cyclic code of length `n`, identified by its generator polynomial and
/// the exponent set of its zeros among the powers of the canonical primitive
/// n-th root of unity.
#[derive(Clone)]
pub struct CyclicCode {
    field: Arc<Field>,
    n: usize,
    generator: Poly,
    defining_set: Vec<usize>,
}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CyclicCode[{}, {}] over {:?}",
            self.n,
            self.dimension(),
            self.field
        )
    }
}

/// Degree of the splitting field GF(2^d) of `xⁿ − 1` over `base`
/// (d = base degree times the order of |base| modulo n).
pub fn splitting_degree(base: &Arc<Field>, n: usize) -> Result<u32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "length {n} must be odd and positive"
        )));
    }
    let n = n as u64;
    let b = base.size() % n;
    let mut x = b;
    let mut ord = 1u32;
    while x != 1 {
        x = (x * b) % n;
        ord += 1;
        if ord as u64 > n {
            return Err(Error::InvalidArgument(format!(
                "gcd({}, {n}) must be 1",
                base.size()
            )));
        }
    }
    Ok(base.degree() * ord)
}

impl CyclicCode {
    /// Build the cyclic code over `base` whose zeros are exactly
    /// `{β^i : i ∈ defining_set}`. The set must be a union of
    /// |base|-cyclotomic cosets mod n.
    pub fn from_defining_set(
        base: &Arc<Field>,
        n: usize,
        defining_set: &[usize],
    ) -> Result<CyclicCode> {
        let big = Field::get(splitting_degree(base, n)?)?;
        let mut set: Vec<usize> = defining_set.iter().map(|&i| i % n).collect();
        set.sort_unstable();
        set.dedup();
        let member = {
            let mut v = vec![false; n];
            for &i in &set {
                v[i] = true;
            }
            v
        };
        for &i in &set {
            let next = (i * base.size() as usize) % n;
            if !member[next] {
                return Err(Error::InvalidArgument(format!(
                    "defining set is not closed under multiplication by {}: {i} -> {next}",
                    base.size()
                )));
            }
        }
        let mut generator = Poly::one(Arc::clone(base));
        let mut covered = vec![false; n];
        for &i in &set {
            if covered[i] {
                continue;
            }
            for &j in &cyclotomic::coset_of(n as u64, base.size(), i as u64) {
                covered[j as usize] = true;
            }
            generator = generator.mul(&poly::minimal_polynomial(i, n, base, &big)?)?;
        }
        debug_assert!(generator
            .divides(&Poly::xn_minus_1(Arc::clone(base), n))
            .unwrap());
        Ok(CyclicCode {
            field: Arc::clone(base),
            n,
            generator,
            defining_set: set,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// Sorted exponents i with g(β^i) = 0.
    pub fn defining_set(&self) -> &[usize] {
        &self.defining_set
    }

    pub fn dimension(&self) -> usize {
        self.n - self.generator.degree().expect("generator is nonzero")
    }

    /// `h(x) = (xⁿ − 1)/g(x)`.
    pub fn check_polynomial(&self) -> Poly {
        let (q, r) = Poly::xn_minus_1(Arc::clone(&self.field), self.n)
            .divmod(&self.generator)
            .expect("generator divides x^n - 1");
        debug_assert!(r.is_zero());
        q
    }

    /// The dual code, via the reflected complement of the defining set.
    pub fn dual(&self) -> CyclicCode {
        let member = {
            let mut v = vec![false; self.n];
            for &i in &self.defining_set {
                v[i] = true;
            }
            v
        };
        let dual_set: Vec<usize> = (0..self.n)
            .filter(|&i| !member[i])
            .map(|i| (self.n - i) % self.n)
            .collect();
        CyclicCode::from_defining_set(&self.field, self.n, &dual_set)
            .expect("dual defining set is coset-closed")
    }

    /// One more than the longest circular run of consecutive exponents in
    /// the defining set.
    pub fn bch_bound(&self) -> usize {
        bch_bound_of_set(self.n, &self.defining_set)
    }

    /// The code as a row space: cyclic shifts of the generator coefficients,
    /// reduced to canonical form.
    pub fn to_linear(&self) -> LinearCode {
        let k = self.dimension();
        let mut rows = Vec::with_capacity(k);
        for shift in 0..k {
            let mut row = vec![0; self.n];
            for (i, &c) in self.generator.coeffs().iter().enumerate() {
                row[(shift + i) % self.n] = c;
            }
            rows.push(row);
        }
        LinearCode::from_generators(Arc::clone(&self.field), rows, self.n)
    }

    /// Whether the defining set is fixed by `i ↦ n − i` (the paper's
    /// "reversible" criterion on zeros).
    pub fn defining_set_reflective(&self) -> bool {
        let member = {
            let mut v = vec![false; self.n];
            for &i in &self.defining_set {
                v[i] = true;
            }
            v
        };
        self.defining_set
            .iter()
            .all(|&i| member[(self.n - i) % self.n])
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            field_degree: self.field.degree(),
            n: self.n,
            generator_coeffs: self.generator.coeffs().to_vec(),
            defining_set: self.defining_set.clone(),
        }
    }

    pub fn from_descriptor(d: &CodeDescriptor) -> Result<CyclicCode> {
        let base = Field::get(d.field_degree)?;
        let code = CyclicCode::from_defining_set(&base, d.n, &d.defining_set)?;
        if code.generator.coeffs() != d.generator_coeffs.as_slice() {
            return Err(Error::InvalidArgument(
                "generator coefficients do not match the defining set".into(),
            ));
        }
        Ok(code)
    }
}

/// Longest circular consecutive run inside `set ⊆ Z_n`, plus one.
pub fn bch_bound_of_set(n: usize, set: &[usize]) -> usize {
    if set.is_empty() {
        return 1;
    }
    if set.len() == n {
        return n + 1;
    }
    let member = {
        let mut v = vec![false; n];
        for &i in set {
            v[i] = true;
        }
        v
    };
    let mut best = 0;
    let mut run = 0;
    // doubling the scan handles the wrap-around run
    for i in 0..2 * n {
        if member[i % n] {
            run += 1;
            best = best.max(run.min(n));
        } else {
            run = 0;
        }
    }
    best + 1
}

/// The BCH code over `base` of length `n` and designed distance `delta`,
/// with zeros `β^offset, …, β^{offset+delta−2}` and their conjugates.
pub fn bch_code(base: &Arc<Field>, n: usize, delta: usize, offset: i64) -> Result<CyclicCode> {
    if delta < 2 || delta > n {
        return Err(Error::InvalidArgument(format!(
            "designed distance must satisfy 2 <= delta <= n, got {delta}"
        )));
    }
    let set: Vec<usize> = (0..=delta as i64 - 2)
        .map(|j| (offset + j).rem_euclid(n as i64) as usize)
        .flat_map(|i| {
            cyclotomic::coset_of(n as u64, base.size(), i as u64)
                .into_iter()
                .map(|x| x as usize)
        })
        .collect();
    CyclicCode::from_defining_set(base, n, &set)
}

/// The reversible MDS family member: `C_u` of length `q + 1` over
/// `GF(q = 2^m)`, generated by `𝕄_{β^u}(x) ⋯ 𝕄_{β^{q/2}}(x)` with
/// parameters `[q+1, 2u−1, q−2u+3]`.
pub fn mds_family_code(m: u32, u: usize) -> Result<CyclicCode> {
    if m == 0 || m > 8 {
        return Err(Error::InvalidArgument(format!(
            "field exponent m must be in 1..=8, got {m}"
        )));
    }
    let q = 1usize << m;
    if u < 1 || u > q / 2 {
        return Err(Error::InvalidArgument(format!(
            "index u must satisfy 1 <= u <= q/2 = {}, got {u}",
            q / 2
        )));
    }
    let base = Field::get(m)?;
    let n = q + 1;
    let set: Vec<usize> = (u..=n - u).collect();
    CyclicCode::from_defining_set(&base, n, &set)
}

/// A linear code held as a canonical (reduced row echelon) generator matrix
/// with no zero rows. Codes are equal exactly when their reduced matrices
/// are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    n: usize,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LinearCode[{}, {}] over {:?}",
            self.n,
            self.dimension(),
            self.gen.field()
        )
    }
}

impl LinearCode {
    pub fn from_generators(field: Arc<Field>, rows: Vec<Vec<Fe>>, n: usize) -> LinearCode {
        let m = Matrix::from_rows(field, rows).expect("rectangular generator rows");
        assert!(m.rows() == 0 || m.cols() == n);
        LinearCode {
            gen: m.row_space_basis(),
            n,
        }
    }

    pub fn zero_code(field: Arc<Field>, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::zero(field, 0, n),
            n,
        }
    }

    pub fn full_space(field: Arc<Field>, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::identity(field, n),
            n,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn dual(&self) -> LinearCode {
        let mut ns = self.gen.nullspace();
        if self.gen.rows() == 0 {
            ns = Matrix::identity(Arc::clone(self.gen.field()), self.n);
        }
        LinearCode { gen: ns, n: self.n }
    }

    pub fn contains(&self, word: &[Fe]) -> bool {
        self.gen.contains_in_rowspace(word)
    }

    /// All rows of `other` lie in this code's row space.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        (0..other.gen.rows()).all(|r| self.contains(other.gen.row(r)))
    }

    /// `C ∩ other = {0}`, decided by the rank of the stacked generators.
    pub fn intersection_trivial(&self, other: &LinearCode) -> Result<bool> {
        let stacked = self.gen.stacked(&other.gen)?;
        Ok(stacked.rank() == self.dimension() + other.dimension())
    }

    /// Encode a message of length k.
    pub fn encode(&self, message: &[Fe]) -> Vec<Fe> {
        assert_eq!(message.len(), self.dimension());
        let f = self.gen.field();
        let mut word = vec![0; self.n];
        for (i, &m) in message.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (j, w) in word.iter_mut().enumerate() {
                *w ^= f.mul(m, self.gen.get(i, j));
            }
        }
        word
    }
}

/// JSON-serializable description of a cyclic code. Field elements are the
/// little-endian coefficient bit-vectors packed as integers; round-tripping
/// through this descriptor is bit-exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field_degree: u32,
    pub n: usize,
    pub generator_coeffs: Vec<Fe>,
    pub defining_set: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrow_sense_bch_over_gf4_n5() {
        let base = Field::get(2).unwrap();
        let code = bch_code(&base, 5, 2, 1).unwrap();
        // single minimal polynomial with coset {1, 4}
        assert_eq!(code.defining_set(), &[1, 4]);
        assert_eq!(code.dimension(), 3);
        assert_eq!(code.generator().degree(), Some(2));
    }

    #[test]
    fn bch_offset_shift_by_n_is_identity() {
        let base = Field::get(2).unwrap();
        let a = bch_code(&base, 17, 4, 1).unwrap();
        let b = bch_code(&base, 17, 4, 1 + 17).unwrap();
        assert_eq!(a.defining_set(), b.defining_set());
        assert_eq!(a.generator(), b.generator());
    }

    #[test]
    fn bch_window_reproduces_mds_member() {
        // roots β^2 … β^15 over GF(16), n = 17, equals C_2
        let base = Field::get(4).unwrap();
        let bch = bch_code(&base, 17, 15, 2).unwrap();
        let c2 = mds_family_code(4, 2).unwrap();
        assert_eq!(bch.generator(), c2.generator());
        assert_eq!(bch.defining_set(), c2.defining_set());
    }

    #[test]
    fn mds_family_shape() {
        for (m, u, n, k, d) in [
            (2u32, 1usize, 5usize, 1usize, 5usize),
            (2, 2, 5, 3, 3),
            (3, 2, 9, 3, 6),
            (4, 5, 17, 9, 9),
        ] {
            let c = mds_family_code(m, u).unwrap();
            assert_eq!(c.n(), n);
            assert_eq!(c.dimension(), k);
            assert_eq!(c.bch_bound(), d, "m={m} u={u}");
            // Singleton bound value agrees with the BCH bound for this family
            assert_eq!(n - k + 1, d);
            assert!(c.defining_set_reflective());
        }
        assert!(mds_family_code(4, 0).is_err());
        assert!(mds_family_code(4, 9).is_err());
    }

    #[test]
    fn mds_check_polynomial_is_product_of_low_minimals() {
        let q = 16usize;
        let base = Field::get(4).unwrap();
        let big = Field::get(8).unwrap();
        for u in [2usize, 5] {
            let code = mds_family_code(4, u).unwrap();
            let mut h = Poly::one(Arc::clone(&base));
            for i in 0..u {
                if i == 0 || !cyclotomic::coset_of((q + 1) as u64, q as u64, i as u64)
                    .iter()
                    .any(|&j| (j as usize) < i)
                {
                    h = h
                        .mul(&poly::minimal_polynomial(i, q + 1, &base, &big).unwrap())
                        .unwrap();
                }
            }
            assert_eq!(code.check_polynomial(), h, "u={u}");
        }
    }

    #[test]
    fn dual_of_cyclic_matches_nullspace_dual() {
        let base = Field::get(2).unwrap();
        let t: Vec<usize> = cyclotomic::build_t(2).iter().map(|&x| x as usize).collect();
        let sub = CyclicCode::from_defining_set(&base, 17, &t).unwrap();
        assert_eq!(sub.dimension(), 4);
        let dual_cyclic = sub.dual();
        assert_eq!(dual_cyclic.dimension(), 13);
        let dual_linear = sub.to_linear().dual();
        assert_eq!(dual_cyclic.to_linear(), dual_linear);
        // dual defining set of the dual returns the original
        assert_eq!(dual_cyclic.dual().defining_set(), sub.defining_set());
    }

    #[test]
    fn dual_is_an_involution_on_linear_codes() {
        let code = mds_family_code(3, 2).unwrap().to_linear();
        assert_eq!(code.dual().dual(), code);
        assert!(code
            .generator()
            .times_transpose(code.dual().generator())
            .unwrap()
            .is_zero());
        assert_eq!(code.dual().dimension(), 9 - 3);
    }

    #[test]
    fn mds_members_are_lcd_for_q8() {
        for u in 1..=4usize {
            let c = mds_family_code(3, u).unwrap().to_linear();
            assert!(c.intersection_trivial(&c.dual()).unwrap(), "u={u}");
        }
    }

    #[test]
    fn cyclic_shift_closure() {
        let code = mds_family_code(3, 3).unwrap();
        let lin = code.to_linear();
        let f = lin.field();
        // a few deterministic codewords: rows and row combinations
        let mut words: Vec<Vec<Fe>> = (0..lin.dimension())
            .map(|i| lin.generator().row(i).to_vec())
            .collect();
        let combo: Vec<Fe> = (0..lin.n())
            .map(|j| {
                let mut acc = 0;
                for i in 0..lin.dimension() {
                    acc ^= f.mul((i as Fe % 7) + 1, lin.generator().get(i, j));
                }
                acc
            })
            .collect();
        words.push(combo);
        for w in words {
            let mut shifted = w.clone();
            shifted.rotate_right(1);
            assert!(lin.contains(&shifted));
        }
    }

    #[test]
    fn bch_bound_edge_cases() {
        assert_eq!(bch_bound_of_set(17, &[]), 1);
        assert_eq!(bch_bound_of_set(5, &[0, 1, 2, 3, 4]), 6);
        // run 12..16,0..5 of length 11 in T for h = 2
        let t: Vec<usize> = cyclotomic::build_t(2).iter().map(|&x| x as usize).collect();
        assert_eq!(bch_bound_of_set(17, &t), 12);
    }

    #[test]
    fn defining_set_must_be_coset_closed() {
        let base = Field::get(2).unwrap();
        assert!(CyclicCode::from_defining_set(&base, 17, &[1]).is_err());
        assert!(CyclicCode::from_defining_set(&base, 17, &[1, 4, 13, 16]).is_ok());
    }

    #[test]
    fn descriptor_round_trip_is_bit_exact() {
        let code = mds_family_code(4, 5).unwrap();
        let descriptor = code.descriptor();
        let json = serde_json::to_string(&descriptor).unwrap();
        let parsed: CodeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, descriptor);
        let back = CyclicCode::from_descriptor(&parsed).unwrap();
        assert_eq!(back.generator(), code.generator());
        assert_eq!(back.defining_set(), code.defining_set());
    }

    #[test]
    fn zero_and_full_codes() {
        let f = Field::get(2).unwrap();
        let zero = LinearCode::zero_code(Arc::clone(&f), 5);
        assert_eq!(zero.dimension(), 0);
        let full = zero.dual();
        assert_eq!(full.dimension(), 5);
        assert_eq!(full, LinearCode::full_space(Arc::clone(&f), 5));
        assert_eq!(full.dual().dimension(), 0);
    }
}
