//! Exact weight distributions, minimum distances, and the MacWilliams
//! transform.
//!
//! Exhaustive enumeration walks the message space in a base-q modular Gray
//! sequence, so each step adds a single scaled generator row. Quaternary
//! codes additionally use a two-bit-plane packing where the Hamming weight
//! is `popcount(lo | hi)`. Enumeration is chunked over message-counter
//! intervals and merged by integer addition, so results are identical for
//! any thread count.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::field::{Fe, Field};
use crate::{Error, Result};

/// How a distribution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exhaustive,
    Macwilliams,
}

/// Exact weight distribution `A_0..A_n` of an `[n, k]` code over a field of
/// `field_size` elements.
#[derive(Debug, Clone)]
pub struct WeightDistribution {
    pub n: usize,
    pub field_size: u64,
    pub dimension: usize,
    pub counts: Vec<BigUint>,
    pub provenance: Provenance,
    pub elapsed: Duration,
}

impl WeightDistribution {
    /// Smallest positive weight with a nonzero count (the minimum distance),
    /// or `None` for the zero code.
    pub fn min_weight(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.counts[i].is_zero())
    }

    /// Total number of codewords; must equal `field_size^dimension`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// The enumerator as a compact string, e.g. `1 + 204z^12 + 51z^16`.
    pub fn enumerator_string(&self) -> String {
        let terms: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                _ => format!("{c}z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// `weight,count` CSV lines for the nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!("{i},{c}\n"));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Modular Gray traversal of the message space
// ---------------------------------------------------------------------------

/// Digits of the base-q modular Gray code word for `counter`: successive
/// counters differ in exactly one digit, which steps by +1 mod q.
pub(crate) fn gray_digits(counter: u64, k: usize, q: u64) -> Vec<u8> {
    let bits = q.trailing_zeros();
    let mask = q - 1;
    (0..k)
        .map(|i| {
            let b_i = (counter >> (bits * i as u32)) & mask;
            let b_next = (counter >> (bits * (i + 1) as u32)) & mask;
            ((b_i + q - b_next) & mask) as u8
        })
        .collect()
}

/// Index of the digit that changes when stepping `counter -> counter + 1`:
/// the number of trailing (q−1)-digits of `counter` in base q.
#[inline]
fn changed_digit(counter: u64, q: u64) -> usize {
    let bits = q.trailing_zeros();
    let mask = q - 1;
    let mut t = 0;
    let mut c = counter;
    while c & mask == mask {
        t += 1;
        c >>= bits;
    }
    t
}

// ---------------------------------------------------------------------------
// Generic enumeration kernel (any field size)
// ---------------------------------------------------------------------------

struct GenericKernel {
    /// scaled[r][s] = s * row_r, for every scalar s.
    scaled: Vec<Vec<Vec<Fe>>>,
    /// delta[d] = el(d) xor el(d + 1 mod q)
    delta: Vec<Fe>,
    n: usize,
    k: usize,
    q: u64,
}

impl GenericKernel {
    fn new(code: &LinearCode) -> GenericKernel {
        let f = code.field();
        let q = f.size();
        let k = code.dimension();
        let n = code.n();
        let scaled = (0..k)
            .map(|r| {
                (0..q as Fe)
                    .map(|s| {
                        (0..n)
                            .map(|j| f.mul(s, code.generator().get(r, j)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let delta = (0..q as Fe).map(|d| d ^ ((d + 1) % q as Fe)).collect();
        GenericKernel { scaled, delta, n, k, q }
    }

    fn codeword_at(&self, counter: u64) -> (Vec<Fe>, Vec<u8>) {
        let digits = gray_digits(counter, self.k, self.q);
        let mut word = vec![0; self.n];
        for (r, &d) in digits.iter().enumerate() {
            if d != 0 {
                for (j, w) in word.iter_mut().enumerate() {
                    *w ^= self.scaled[r][d as usize][j];
                }
            }
        }
        (word, digits)
    }

    fn weight_of(word: &[Fe]) -> usize {
        word.iter().filter(|&&x| x != 0).count()
    }

    /// Tally weights over the counter interval [lo, hi).
    fn run(&self, lo: u64, hi: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        if lo >= hi {
            return counts;
        }
        let (mut word, mut digits) = self.codeword_at(lo);
        counts[Self::weight_of(&word)] += 1;
        for c in lo..hi - 1 {
            let t = changed_digit(c, self.q);
            let d = digits[t];
            let delta = self.delta[d as usize];
            for (j, w) in word.iter_mut().enumerate() {
                *w ^= self.scaled[t][delta as usize][j];
            }
            digits[t] = ((d as u64 + 1) & (self.q - 1)) as u8;
            counts[Self::weight_of(&word)] += 1;
        }
        counts
    }
}

// ---------------------------------------------------------------------------
// Bit-planed quaternary kernel
// ---------------------------------------------------------------------------

/// GF(4) words as two bit planes: value = lo + 2·hi under the fixed modulus
/// x² + x + 1, so ×2 maps (lo,hi) to (hi, lo^hi) and ×3 to (lo^hi, lo).
#[derive(Clone, Copy)]
struct Planes<const W: usize> {
    lo: [u64; W],
    hi: [u64; W],
}

impl<const W: usize> Planes<W> {
    fn zero() -> Self {
        Planes { lo: [0; W], hi: [0; W] }
    }

    fn xor(&mut self, other: &Planes<W>) {
        for i in 0..W {
            self.lo[i] ^= other.lo[i];
            self.hi[i] ^= other.hi[i];
        }
    }

    fn weight(&self) -> u32 {
        (0..W).map(|i| (self.lo[i] | self.hi[i]).count_ones()).sum()
    }

    fn scaled(&self, s: u8) -> Planes<W> {
        let mut out = *self;
        match s {
            0 => out = Planes::zero(),
            1 => {}
            2 => {
                for i in 0..W {
                    out.lo[i] = self.hi[i];
                    out.hi[i] = self.lo[i] ^ self.hi[i];
                }
            }
            3 => {
                for i in 0..W {
                    out.lo[i] = self.lo[i] ^ self.hi[i];
                    out.hi[i] = self.lo[i];
                }
            }
            _ => unreachable!(),
        }
        out
    }
}

struct QuaternaryKernel<const W: usize> {
    /// rows[r][s] = s * row_r for s in 0..4
    rows: Vec<[Planes<W>; 4]>,
    k: usize,
    n: usize,
}

impl<const W: usize> QuaternaryKernel<W> {
    fn new(code: &LinearCode) -> QuaternaryKernel<W> {
        assert_eq!(code.field().degree(), 2);
        assert!(code.n() <= 64 * W);
        let k = code.dimension();
        let rows = (0..k)
            .map(|r| {
                let mut base = Planes::<W>::zero();
                for j in 0..code.n() {
                    let v = code.generator().get(r, j);
                    base.lo[j / 64] |= ((v & 1) as u64) << (j % 64);
                    base.hi[j / 64] |= (((v >> 1) & 1) as u64) << (j % 64);
                }
                [base.scaled(0), base, base.scaled(2), base.scaled(3)]
            })
            .collect();
        QuaternaryKernel { rows, k, n: code.n() }
    }

    fn state_at(&self, counter: u64) -> (Planes<W>, Vec<u8>) {
        let digits = gray_digits(counter, self.k, 4);
        let mut word = Planes::zero();
        for (r, &d) in digits.iter().enumerate() {
            word.xor(&self.rows[r][d as usize]);
        }
        (word, digits)
    }

    /// Walk [lo, hi), invoking `sink` with (counter, planes, weight).
    fn walk(&self, lo: u64, hi: u64, mut sink: impl FnMut(u64, &Planes<W>, u32)) {
        if lo >= hi {
            return;
        }
        let (mut word, mut digits) = self.state_at(lo);
        sink(lo, &word, word.weight());
        for c in lo..hi - 1 {
            let t = (c.trailing_ones() >> 1) as usize;
            let d = digits[t];
            // delta = el(d) ^ el(d+1 mod 4) is 1 for even d, 3 for odd
            let delta = if d & 1 == 0 { 1 } else { 3 };
            word.xor(&self.rows[t][delta]);
            digits[t] = (d + 1) & 3;
            sink(c + 1, &word, word.weight());
        }
    }

    fn run(&self, lo: u64, hi: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        self.walk(lo, hi, |_, _, w| counts[w as usize] += 1);
        counts
    }
}

fn parallel_chunks(total: u64) -> Vec<(u64, u64)> {
    let workers = rayon::current_num_threads().max(1) as u64;
    let chunks = (workers * 8).min(total.max(1));
    let step = total.div_ceil(chunks);
    (0..chunks)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

fn merge_counts(a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Exhaustive weight distribution of a code with at most `budget` codewords.
pub fn weight_distribution(code: &LinearCode, budget: u64) -> Result<WeightDistribution> {
    let start = Instant::now();
    let q = code.field().size();
    let k = code.dimension();
    let total = checked_codebook_size(q, k, budget)?;
    let counts_u64 = if k == 0 {
        let mut c = vec![0u64; code.n() + 1];
        c[0] = 1;
        c
    } else {
        enumerate_counts(code, total)
    };
    let counts = counts_u64.into_iter().map(BigUint::from).collect();
    let dist = WeightDistribution {
        n: code.n(),
        field_size: q,
        dimension: k,
        counts,
        provenance: Provenance::Exhaustive,
        elapsed: start.elapsed(),
    };
    debug_assert_eq!(dist.total(), BigUint::from(q).pow(k as u32));
    Ok(dist)
}

fn checked_codebook_size(q: u64, k: usize, budget: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total.checked_mul(q).filter(|&t| t <= budget).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "codebook of {q}^{k} words exceeds the budget of {budget}"
            ))
        })?;
    }
    Ok(total)
}

fn enumerate_counts(code: &LinearCode, total: u64) -> Vec<u64> {
    let chunks = parallel_chunks(total);
    if code.field().degree() == 2 {
        match code.n().div_ceil(64) {
            1 => {
                let kernel = QuaternaryKernel::<1>::new(code);
                chunks
                    .into_par_iter()
                    .map(|(lo, hi)| kernel.run(lo, hi))
                    .reduce(|| vec![0; code.n() + 1], merge_counts)
            }
            2 => {
                let kernel = QuaternaryKernel::<2>::new(code);
                chunks
                    .into_par_iter()
                    .map(|(lo, hi)| kernel.run(lo, hi))
                    .reduce(|| vec![0; code.n() + 1], merge_counts)
            }
            _ => {
                let kernel = QuaternaryKernel::<5>::new(code);
                chunks
                    .into_par_iter()
                    .map(|(lo, hi)| kernel.run(lo, hi))
                    .reduce(|| vec![0; code.n() + 1], merge_counts)
            }
        }
    } else {
        let kernel = GenericKernel::new(code);
        chunks
            .into_par_iter()
            .map(|(lo, hi)| kernel.run(lo, hi))
            .reduce(|| vec![0; code.n() + 1], merge_counts)
    }
}

/// Collect the distinct supports (as bit masks) of codewords with weight in
/// `1..=max_weight`, for quaternary codes of length at most 64. Only the
/// scalar-canonical representative of each codeword (first nonzero symbol
/// equal to 1) is collected — every support has one — and the final lists
/// are sorted and deduplicated, so coincidental collisions are also merged.
/// Returns per-weight mask lists plus the full per-weight codeword counts.
pub fn collect_supports_u64(
    code: &LinearCode,
    max_weight: usize,
    budget: u64,
) -> Result<(Vec<Vec<u64>>, Vec<u64>)> {
    if code.field().degree() != 2 || code.n() > 64 {
        return Err(Error::InvalidArgument(
            "support sweep requires a quaternary code of length <= 64".into(),
        ));
    }
    let q = code.field().size();
    let total = checked_codebook_size(q, code.dimension(), budget)?;
    let kernel = QuaternaryKernel::<1>::new(code);
    let chunks = parallel_chunks(total);
    let (mut per_weight, counts) = chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut masks: Vec<Vec<u64>> = vec![Vec::new(); max_weight + 1];
            let mut counts = vec![0u64; code.n() + 1];
            kernel.walk(lo, hi, |_, planes, w| {
                counts[w as usize] += 1;
                let w = w as usize;
                if w == 0 || w > max_weight {
                    return;
                }
                let mask = planes.lo[0] | planes.hi[0];
                let first = mask.trailing_zeros();
                let canonical =
                    (planes.lo[0] >> first) & 1 == 1 && (planes.hi[0] >> first) & 1 == 0;
                if canonical {
                    masks[w].push(mask);
                }
            });
            (masks, counts)
        })
        .reduce(
            || (vec![Vec::new(); max_weight + 1], vec![0u64; code.n() + 1]),
            |(mut am, ac), (bm, bc)| {
                for (a, b) in am.iter_mut().zip(bm) {
                    a.extend(b);
                }
                (am, merge_counts(ac, bc))
            },
        );
    for masks in &mut per_weight {
        masks.par_sort_unstable();
        masks.dedup();
    }
    Ok((per_weight, counts))
}

/// As [`collect_supports_u64`], for codes of length up to 128 over any
/// field. Quaternary codes use the packed kernel; other fields fall back to
/// the generic one.
pub fn collect_supports_u128(
    code: &LinearCode,
    max_weight: usize,
    budget: u64,
) -> Result<(Vec<Vec<u128>>, Vec<u64>)> {
    if code.n() > 128 {
        return Err(Error::InvalidArgument(
            "support collection is limited to length <= 128".into(),
        ));
    }
    let q = code.field().size();
    let total = checked_codebook_size(q, code.dimension(), budget)?;
    let chunks = parallel_chunks(total);
    let empty = || (vec![Vec::new(); max_weight + 1], vec![0u64; code.n() + 1]);
    let merge = |(mut am, ac): (Vec<Vec<u128>>, Vec<u64>), (bm, bc)| {
        for (a, b) in am.iter_mut().zip(bm) {
            a.extend(b);
        }
        (am, merge_counts(ac, bc))
    };
    let (mut per_weight, counts) = if code.field().degree() == 2 {
        let kernel = QuaternaryKernel::<2>::new(code);
        chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut masks: Vec<Vec<u128>> = vec![Vec::new(); max_weight + 1];
                let mut counts = vec![0u64; code.n() + 1];
                kernel.walk(lo, hi, |_, planes, w| {
                    counts[w as usize] += 1;
                    let w = w as usize;
                    if w == 0 || w > max_weight {
                        return;
                    }
                    let lo0 = planes.lo[0] | planes.hi[0];
                    let lo1 = planes.lo[1] | planes.hi[1];
                    let (word, first) = if lo0 != 0 {
                        (0usize, lo0.trailing_zeros())
                    } else {
                        (1, lo1.trailing_zeros())
                    };
                    let canonical = (planes.lo[word] >> first) & 1 == 1
                        && (planes.hi[word] >> first) & 1 == 0;
                    if canonical {
                        masks[w].push(lo0 as u128 | (lo1 as u128) << 64);
                    }
                });
                (masks, counts)
            })
            .reduce(empty, merge)
    } else {
        let kernel = GenericKernel::new(code);
        chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut masks: Vec<Vec<u128>> = vec![Vec::new(); max_weight + 1];
                let mut counts = vec![0u64; code.n() + 1];
                if lo >= hi {
                    return (masks, counts);
                }
                let (mut word, mut digits) = kernel.codeword_at(lo);
                let mut tally = |word: &[Fe]| {
                    let w = GenericKernel::weight_of(word);
                    counts[w] += 1;
                    if w == 0 || w > max_weight {
                        return;
                    }
                    if word.iter().find(|&&c| c != 0) == Some(&1) {
                        let mut mask = 0u128;
                        for (j, &c) in word.iter().enumerate() {
                            if c != 0 {
                                mask |= 1 << j;
                            }
                        }
                        masks[w].push(mask);
                    }
                };
                tally(&word);
                for c in lo..hi - 1 {
                    let t = changed_digit(c, kernel.q);
                    let d = digits[t];
                    let delta = kernel.delta[d as usize];
                    for (j, w) in word.iter_mut().enumerate() {
                        *w ^= kernel.scaled[t][delta as usize][j];
                    }
                    digits[t] = ((d as u64 + 1) & (kernel.q - 1)) as u8;
                    tally(&word);
                }
                (masks, counts)
            })
            .reduce(empty, merge)
    };
    for masks in &mut per_weight {
        masks.par_sort_unstable();
        masks.dedup();
    }
    Ok((per_weight, counts))
}

// ---------------------------------------------------------------------------
// MacWilliams transform
// ---------------------------------------------------------------------------

/// Pascal-triangle table of binomial coefficients up to `n`.
pub(crate) fn binomial_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::zero(); n + 1]; n + 1];
    for i in 0..=n {
        table[i][0] = BigUint::one();
        for j in 1..=i {
            let b = if j < i { table[i - 1][j].clone() } else { BigUint::zero() };
            table[i][j] = table[i - 1][j - 1].clone() + b;
        }
    }
    table
}

/// The dual weight distribution via the MacWilliams identity, in exact
/// big-integer arithmetic:
/// `A'_j = q^{-k} Σ_i A_i K_j(i)` with the Krawtchouk kernel
/// `K_j(i) = Σ_s (−1)^s (q−1)^{j−s} C(i,s) C(n−i, j−s)`.
pub fn macwilliams(dist: &WeightDistribution) -> Result<WeightDistribution> {
    let start = Instant::now();
    let n = dist.n;
    let q = BigInt::from(dist.field_size);
    let qm1 = BigInt::from(dist.field_size - 1);
    let binom = binomial_table(n);
    let c = |a: usize, b: usize| -> BigInt {
        if b > a {
            BigInt::zero()
        } else {
            BigInt::from_biguint(Sign::Plus, binom[a][b].clone())
        }
    };
    let qk = q.pow(dist.dimension as u32);
    let mut counts = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (i, a_i) in dist.counts.iter().enumerate() {
            if a_i.is_zero() {
                continue;
            }
            let mut kraw = BigInt::zero();
            for s in 0..=j {
                let term = qm1.pow((j - s) as u32) * c(i, s) * c(n - i, j - s);
                if s % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            acc += BigInt::from_biguint(Sign::Plus, a_i.clone()) * kraw;
        }
        let (quot, rem) = num_integer::Integer::div_rem(&acc, &qk);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "not a valid weight distribution: A'_{j} is not a nonnegative integer"
            )));
        }
        counts.push(quot.to_biguint().unwrap());
    }
    Ok(WeightDistribution {
        n,
        field_size: dist.field_size,
        dimension: n - dist.dimension,
        counts,
        provenance: Provenance::Macwilliams,
        elapsed: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------
// Minimum distance
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    Exhaustive,
    Macwilliams,
    /// Lower and upper bounds coincide.
    Analytic,
}

/// Outcome of a minimum-distance computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MinDistance {
    Exact { d: usize, method: DistanceMethod },
    Bounds { lower: usize, upper: usize },
}

/// Minimum distance: exhaustively when the codebook fits the budget,
/// through the dual and MacWilliams when the dual fits, and otherwise as a
/// `(lower, upper)` bound pair (`lower_hint` is e.g. a BCH bound; the upper
/// bound is Singleton). A coinciding pair is reported as analytic.
pub fn min_distance(
    code: &LinearCode,
    budget: u64,
    lower_hint: Option<usize>,
) -> Result<MinDistance> {
    let k = code.dimension();
    if k == 0 {
        return Err(Error::InvalidArgument(
            "minimum distance of the zero code is undefined".into(),
        ));
    }
    if checked_codebook_size(code.field().size(), k, budget).is_ok() {
        let dist = weight_distribution(code, budget)?;
        return Ok(MinDistance::Exact {
            d: dist.min_weight().expect("nonzero code"),
            method: DistanceMethod::Exhaustive,
        });
    }
    if checked_codebook_size(code.field().size(), code.n() - k, budget).is_ok() {
        let dual_dist = weight_distribution(&code.dual(), budget)?;
        let dist = macwilliams(&dual_dist)?;
        return Ok(MinDistance::Exact {
            d: dist.min_weight().expect("nonzero code"),
            method: DistanceMethod::Macwilliams,
        });
    }
    let lower = lower_hint.unwrap_or(1);
    let upper = code.n() - k + 1;
    if lower == upper {
        Ok(MinDistance::Exact {
            d: lower,
            method: DistanceMethod::Analytic,
        })
    } else {
        Ok(MinDistance::Bounds { lower, upper })
    }
}

/// Distribution of a zero-dimensional code (A_0 = 1 only).
pub fn zero_code_distribution(field: &Arc<Field>, n: usize) -> WeightDistribution {
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    WeightDistribution {
        n,
        field_size: field.size(),
        dimension: 0,
        counts,
        provenance: Provenance::Exhaustive,
        elapsed: Duration::ZERO,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{mds_family_code, CyclicCode};
    use crate::cyclotomic;

    fn quaternary_subcode(h: u32) -> CyclicCode {
        let base = Field::get(2).unwrap();
        let t: Vec<usize> = cyclotomic::build_t(h).iter().map(|&x| x as usize).collect();
        CyclicCode::from_defining_set(&base, cyclotomic::family_length(h) as usize, &t).unwrap()
    }

    #[test]
    fn zero_code_counts() {
        let f = Field::get(2).unwrap();
        let d = zero_code_distribution(&f, 7);
        assert_eq!(d.counts[0], BigUint::one());
        assert!(d.counts[1..].iter().all(|c| c.is_zero()));
        let z = LinearCode::zero_code(f, 7);
        let dd = weight_distribution(&z, 1 << 10).unwrap();
        assert_eq!(dd.counts, d.counts);
    }

    #[test]
    fn repetition_code_distance() {
        let c = mds_family_code(4, 1).unwrap().to_linear();
        let dist = weight_distribution(&c, 1 << 10).unwrap();
        // all 15 nonzero codewords are scalings of the all-ones word
        assert_eq!(dist.counts[17], BigUint::from(15u32));
        assert_eq!(dist.min_weight(), Some(17));
        match min_distance(&c, 1 << 10, None).unwrap() {
            MinDistance::Exact { d, .. } => assert_eq!(d, 17),
            other => panic!("expected exact distance, got {other:?}"),
        }
    }

    #[test]
    fn paper_h2_enumerator() {
        let code = quaternary_subcode(2).to_linear();
        assert_eq!(code.dimension(), 4);
        let dist = weight_distribution(&code, 1 << 24).unwrap();
        let mut expected = vec![BigUint::zero(); 18];
        expected[0] = 1u32.into();
        expected[12] = 204u32.into();
        expected[16] = 51u32.into();
        assert_eq!(dist.counts, expected);
        assert_eq!(dist.enumerator_string(), "1 + 204z^12 + 51z^16");
    }

    #[test]
    fn paper_h3_enumerator() {
        let code = quaternary_subcode(3).to_linear();
        assert_eq!(code.dimension(), 8);
        let dist = weight_distribution(&code, 1 << 24).unwrap();
        let mut expected = vec![BigUint::zero(); 66];
        expected[0] = 1u32.into();
        expected[44] = 18720u32.into();
        expected[48] = 16380u32.into();
        expected[52] = 30240u32.into();
        expected[64] = 195u32.into();
        assert_eq!(dist.counts, expected);
    }

    #[test]
    fn generic_and_packed_kernels_agree() {
        let code = quaternary_subcode(2).to_linear();
        let total = 1u64 << 8;
        let packed = QuaternaryKernel::<1>::new(&code).run(0, total);
        let generic = GenericKernel::new(&code).run(0, total);
        assert_eq!(packed, generic);
    }

    #[test]
    fn chunked_enumeration_matches_single_threaded() {
        let code = quaternary_subcode(2).to_linear();
        let kernel = QuaternaryKernel::<1>::new(&code);
        let total = 256;
        let whole = kernel.run(0, total);
        let mut merged = vec![0u64; code.n() + 1];
        for (lo, hi) in [(0, 37), (37, 100), (100, 256)] {
            merged = merge_counts(merged, kernel.run(lo, hi));
        }
        assert_eq!(whole, merged);
    }

    #[test]
    fn gray_walk_matches_from_scratch_checkpoints() {
        // [65, 8] quaternary code: the full 4^8 space, checked at random
        // counters against independent from-scratch encodings.
        let code = quaternary_subcode(3).to_linear();
        let kernel = QuaternaryKernel::<2>::new(&code);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let mut checkpoints: Vec<u64> =
            (0..100_000).map(|_| rng.gen_range(0..1u64 << 16)).collect();
        checkpoints.sort_unstable();
        checkpoints.dedup();
        let mut next = 0usize;
        kernel.walk(0, 1 << 16, |c, planes, w| {
            if next < checkpoints.len() && checkpoints[next] == c {
                next += 1;
                let (scratch, _) = kernel.state_at(c);
                assert_eq!(scratch.lo, planes.lo);
                assert_eq!(scratch.hi, planes.hi);
                assert_eq!(scratch.weight(), w);
            }
        });
        assert_eq!(next, checkpoints.len());

        // same property for the generic kernel over GF(8)
        let code8 = mds_family_code(3, 3).unwrap().to_linear();
        let kernel8 = GenericKernel::new(&code8);
        let run_counts = kernel8.run(0, 1 << 10);
        let mut scratch_counts = vec![0u64; code8.n() + 1];
        for c in 0..1 << 10 {
            let (word, _) = kernel8.codeword_at(c);
            scratch_counts[GenericKernel::weight_of(&word)] += 1;
        }
        assert_eq!(run_counts, scratch_counts);
    }

    #[test]
    fn macwilliams_h2_dual_matches_frozen_oracle() {
        let code = quaternary_subcode(2).to_linear();
        let dist = weight_distribution(&code, 1 << 24).unwrap();
        let dual = macwilliams(&dist).unwrap();
        // frozen from an independent MacWilliams evaluation
        let expected: Vec<u64> = vec![
            1, 0, 0, 0, 1020, 6120, 32640, 170544, 622710, 1862520, 4488000, 8582688, 12807324,
            14861400, 12680640, 7632048, 2856561, 504648,
        ];
        let expected: Vec<BigUint> = expected.into_iter().map(BigUint::from).collect();
        assert_eq!(dual.counts, expected);
        assert_eq!(dual.min_weight(), Some(4));
        assert_eq!(dual.dimension, 13);
    }

    #[test]
    fn macwilliams_involution() {
        let code = quaternary_subcode(2).to_linear();
        let dist = weight_distribution(&code, 1 << 24).unwrap();
        let back = macwilliams(&macwilliams(&dist).unwrap()).unwrap();
        assert_eq!(back.counts, dist.counts);
    }

    #[test]
    fn macwilliams_h3_dual_distance() {
        let code = quaternary_subcode(3).to_linear();
        let dual = macwilliams(&weight_distribution(&code, 1 << 24).unwrap()).unwrap();
        assert_eq!(dual.min_weight(), Some(5));
        assert_eq!(dual.counts[5], BigUint::from(13104u32));
        assert_eq!(dual.total(), BigUint::from(4u32).pow(57));
    }

    #[test]
    fn budget_is_enforced() {
        let code = quaternary_subcode(2).to_linear().dual(); // [17, 13]
        match weight_distribution(&code, 1 << 24) {
            Err(Error::ResourceLimit(_)) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn counts_vanish_below_bch_bound() {
        for h in [2u32, 3] {
            let cyclic = quaternary_subcode(h);
            let bound = cyclic.bch_bound();
            let dist = weight_distribution(&cyclic.to_linear(), 1 << 24).unwrap();
            for i in 1..bound {
                assert!(dist.counts[i].is_zero(), "h={h} i={i}");
            }
            assert_eq!(dist.min_weight(), Some(bound));
        }
    }

    #[test]
    fn exhaustive_small_mds_members() {
        // q=8, u=2: [9, 3, 6] over GF(8), all 512 codewords
        let c = mds_family_code(3, 2).unwrap().to_linear();
        let dist = weight_distribution(&c, 1 << 24).unwrap();
        assert_eq!(dist.min_weight(), Some(6));
        assert_eq!(dist.total(), BigUint::from(512u32));
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn distribution_sums_to_codebook_size(rows in proptest::collection::vec(
                proptest::collection::vec(0u32..4, 7), 1..4))
            {
                let f = Field::get(2).unwrap();
                let code = LinearCode::from_generators(f, rows, 7);
                let dist = weight_distribution(&code, 1 << 20).unwrap();
                prop_assert_eq!(dist.total(), BigUint::from(4u32).pow(code.dimension() as u32));
                // MacWilliams round-trip is exact
                let back = macwilliams(&macwilliams(&dist).unwrap()).unwrap();
                prop_assert_eq!(back.counts, dist.counts);
            }
        }
    }
}
