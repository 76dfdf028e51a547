//! Dense univariate polynomials over a tower field, minimal polynomials of
//! roots of unity, and the factorization of `xⁿ − 1` through cyclotomic
//! cosets.

use std::sync::Arc;

use crate::cyclotomic;
use crate::field::{Fe, Field};
use crate::{Error, Result};

/// A polynomial in canonical form: `coeffs[i]` is the coefficient of `x^i`
/// and the last entry is nonzero (the zero polynomial has no entries).
#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.degree() == other.field.degree() && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}*x"),
                _ if c == 1 => format!("x^{i}"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Arc<Field>) -> Poly {
        Poly {
            field,
            coeffs: vec![1],
        }
    }

    pub fn constant(field: Arc<Field>, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `x^n - 1` (equal to `x^n + 1` in characteristic 2).
    pub fn xn_minus_1(field: Arc<Field>, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] = 1;
        Poly { field, coeffs }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field.degree() != other.field.degree() {
            return Err(Error::InvalidArgument(format!(
                "field mismatch: GF(2^{}) vs GF(2^{})",
                self.field.degree(),
                other.field.degree()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Ok(Poly::new(Arc::clone(&self.field), coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(Arc::clone(&self.field)));
        }
        let f = &self.field;
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= f.mul(a, b);
            }
        }
        Ok(Poly::new(Arc::clone(&self.field), coeffs))
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(
            Arc::clone(&self.field),
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InvalidArgument(
                "division by the zero polynomial".into(),
            ));
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((
                Poly::zero(Arc::clone(&self.field)),
                Poly::new(Arc::clone(&self.field), rem),
            ));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] ^= f.mul(q, b);
            }
        }
        rem.truncate(dd);
        Ok((
            Poly::new(Arc::clone(&self.field), quot),
            Poly::new(Arc::clone(&self.field), rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(Arc::clone(&self.field)));
        }
        let g = self.gcd(other)?;
        let (q, r) = self.divmod(&g)?;
        debug_assert!(r.is_zero());
        q.mul(other).map(|p| p.monic())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => self.scale(self.field.inv(lead)),
        }
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Re-express the coefficients in a subfield; every coefficient must lie
    /// in the embedded image of `target`.
    pub fn project_to(&self, target: &Arc<Field>) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.field.project_to(target, c))
            .collect::<Result<Vec<Fe>>>()?;
        Ok(Poly::new(Arc::clone(target), coeffs))
    }

    /// Lift the coefficients into an extension field.
    pub fn embed_into(&self, big: &Arc<Field>) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| big.embed_from(&self.field, c))
            .collect::<Result<Vec<Fe>>>()?;
        Ok(Poly::new(Arc::clone(big), coeffs))
    }
}

/// Minimal polynomial over `base` of `β^s`, where β is the canonical
/// primitive n-th root of unity in `big`. Computed as the product of
/// `(x − β^i)` over the base-cyclotomic coset of `s`, then pushed down to
/// base coordinates after checking every coefficient is Frobenius-fixed.
pub fn minimal_polynomial(
    s: usize,
    n: usize,
    base: &Arc<Field>,
    big: &Arc<Field>,
) -> Result<Poly> {
    if big.degree() % base.degree() != 0 {
        return Err(Error::InvalidTower(format!(
            "GF(2^{}) is not a subfield of GF(2^{})",
            base.degree(),
            big.degree()
        )));
    }
    if n == 0 || (big.size() - 1) % n as u64 != 0 {
        return Err(Error::InvalidArgument(format!(
            "{n} does not divide the multiplicative order of GF(2^{})",
            big.degree()
        )));
    }
    let beta = big.nth_root(n as u64)?;
    let coset = cyclotomic::coset_of(n as u64, base.size(), s as u64);
    let mut product = Poly::one(Arc::clone(big));
    for &i in &coset {
        let root = big.pow(beta, i);
        let factor = Poly::new(Arc::clone(big), vec![root, 1]);
        product = product.mul(&factor)?;
    }
    // Coefficients must land in the base subfield; anything else is an
    // arithmetic bug, not a caller error.
    for &c in product.coeffs() {
        assert!(
            big.pow(c, base.size()) == c,
            "minimal polynomial coefficient {c:#x} escapes GF(2^{})",
            base.degree()
        );
    }
    product.project_to(base)
}

/// Factor `xⁿ − 1` over `base` into distinct monic irreducibles, one per
/// cyclotomic coset leader, in leader order.
pub fn factor_xn_minus_1(n: usize, base: &Arc<Field>, big: &Arc<Field>) -> Result<Vec<Poly>> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "length {n} must be odd in characteristic 2"
        )));
    }
    let system = cyclotomic::coset_system(n as u64, base.size())?;
    system
        .leaders()
        .iter()
        .map(|&s| minimal_polynomial(s as usize, n, base, big))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Arc<Field> {
        Field::get(2).unwrap()
    }

    #[test]
    fn product_in_characteristic_two() {
        // (x - 1)(x + 1) = x^2 + 1 over GF(4)
        let f = gf4();
        let a = Poly::new(Arc::clone(&f), vec![1, 1]);
        let b = a.clone();
        assert_eq!(a.mul(&b).unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn gcd_shares_the_root_one() {
        let f = gf4();
        let x5m1 = Poly::xn_minus_1(Arc::clone(&f), 5);
        let xm1 = Poly::new(Arc::clone(&f), vec![1, 1]);
        assert_eq!(x5m1.gcd(&xm1).unwrap(), xm1);
    }

    #[test]
    fn divmod_contract() {
        let f = gf4();
        let a = Poly::new(Arc::clone(&f), vec![3, 1, 2, 1]);
        let b = Poly::new(Arc::clone(&f), vec![1, 2]);
        let (q, r) = a.divmod(&b).unwrap();
        let back = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
        assert!(a.divmod(&Poly::zero(Arc::clone(&f))).is_err());
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = Poly::one(gf4());
        let b = Poly::one(Field::get(4).unwrap());
        assert!(matches!(a.mul(&b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn minimal_polynomial_s0_is_x_plus_1() {
        let base = gf4();
        let big = Field::get(8).unwrap();
        let m = minimal_polynomial(0, 17, &base, &big).unwrap();
        assert_eq!(m.coeffs(), &[1, 1]);
    }

    #[test]
    fn minimal_polynomial_degree_two_over_gfq() {
        // base GF(q), n = q + 1: minimal polynomial of β^i is
        // (x − β^i)(x − β^{q+1−i}), degree 2, for 1 <= i <= q.
        let base = Field::get(4).unwrap(); // q = 16
        let big = Field::get(8).unwrap();
        let beta = big.nth_root(17).unwrap();
        for i in 1..=16usize {
            let m = minimal_polynomial(i, 17, &base, &big).unwrap();
            assert_eq!(m.degree(), Some(2), "i={i}");
            let lifted = m.embed_into(&big).unwrap();
            assert_eq!(lifted.eval(big.pow(beta, i as u64)), 0);
            assert_eq!(lifted.eval(big.pow(beta, (17 - i) as u64)), 0);
        }
    }

    #[test]
    fn minimal_polynomial_coset_roots_n17() {
        // Oracle: iterate ×4 mod 17 directly.
        let mut coset = vec![6u64];
        loop {
            let next = (coset.last().unwrap() * 4) % 17;
            if next == 6 {
                break;
            }
            coset.push(next);
        }
        coset.sort_unstable();
        assert_eq!(coset, vec![6, 7, 10, 11]);

        let base = gf4();
        let big = Field::get(8).unwrap();
        let m = minimal_polynomial(6, 17, &base, &big).unwrap();
        assert_eq!(m.degree(), Some(4));
        let beta = big.nth_root(17).unwrap();
        let lifted = m.embed_into(&big).unwrap();
        for i in 0..17u64 {
            let is_root = lifted.eval(big.pow(beta, i)) == 0;
            assert_eq!(is_root, coset.contains(&i), "exponent {i}");
        }
    }

    #[test]
    fn lcm_of_two_degree4_minimals() {
        let base = gf4();
        let big = Field::get(8).unwrap();
        let m1 = minimal_polynomial(1, 17, &base, &big).unwrap();
        let m2 = minimal_polynomial(2, 17, &base, &big).unwrap();
        assert_eq!(m1.lcm(&m2).unwrap().degree(), Some(8));
    }

    #[test]
    fn coset_invariance_of_minimal_polynomials() {
        let base = gf4();
        let big = Field::get(8).unwrap();
        for s in [1usize, 2, 3, 6] {
            let m = minimal_polynomial(s, 17, &base, &big).unwrap();
            let shifted = minimal_polynomial((s * 4) % 17, 17, &base, &big).unwrap();
            assert_eq!(m, shifted);
        }
    }

    #[test]
    fn factorizations_over_gf4() {
        let base = gf4();

        let big16 = Field::get(4).unwrap();
        let factors = factor_xn_minus_1(5, &base, &big16).unwrap();
        let mut degs: Vec<usize> = factors.iter().map(|p| p.degree().unwrap()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 2, 2]);

        let big256 = Field::get(8).unwrap();
        let factors = factor_xn_minus_1(17, &base, &big256).unwrap();
        let mut degs: Vec<usize> = factors.iter().map(|p| p.degree().unwrap()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 4, 4, 4, 4]);

        for (n, factors, big) in [(5usize, factor_xn_minus_1(5, &base, &big16).unwrap(), big16),
                                  (17, factor_xn_minus_1(17, &base, &big256).unwrap(), big256)] {
            let mut product = Poly::one(Arc::clone(&base));
            for p in &factors {
                assert!(p.is_monic());
                product = product.mul(p).unwrap();
                // every factor divides x^n - 1
                assert!(p.divides(&Poly::xn_minus_1(Arc::clone(&base), n)).unwrap());
            }
            assert_eq!(product, Poly::xn_minus_1(Arc::clone(&base), n));
            drop(big);
        }
    }

    #[test]
    fn minimal_polynomial_vanishing_set_matches_cosets() {
        // 𝕄_{β^s}(β^i) = 0 iff i is in the coset of s, for n in {5, 17, 65}.
        let base = gf4();
        for (n, big_degree) in [(5usize, 4u32), (17, 8), (65, 12)] {
            let big = Field::get(big_degree).unwrap();
            let beta = big.nth_root(n as u64).unwrap();
            let system = cyclotomic::coset_system(n as u64, 4).unwrap();
            for &s in system.leaders() {
                let coset = cyclotomic::coset_of(n as u64, 4, s);
                let m = minimal_polynomial(s as usize, n, &base, &big).unwrap();
                let lifted = m.embed_into(&big).unwrap();
                for i in 0..n as u64 {
                    assert_eq!(
                        lifted.eval(big.pow(beta, i)) == 0,
                        coset.contains(&i),
                        "n={n} s={s} i={i}"
                    );
                }
            }
        }
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
            proptest::collection::vec(0u32..4, 0..=max_deg + 1)
                .prop_map(|coeffs| Poly::new(Field::get(2).unwrap(), coeffs))
        }

        proptest! {
            #[test]
            fn degree_of_product_adds(a in arb_poly(8), b in arb_poly(8)) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let p = a.mul(&b).unwrap();
                prop_assert_eq!(p.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
            }

            #[test]
            fn divmod_reconstructs(a in arb_poly(10), b in arb_poly(5)) {
                prop_assume!(!b.is_zero());
                let (q, r) = a.divmod(&b).unwrap();
                prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                prop_assert!(r.is_zero() || r.degree().unwrap() < b.degree().unwrap());
            }
        }
    }
}
