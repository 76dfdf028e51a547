//! Binary extension fields `GF(2^k)` and the tower navigation between them.
//!
//! Every field is built over the lexicographically smallest primitive
//! polynomial of its degree, so `x` itself is a primitive element and all
//! outputs are reproducible bit for bit. Elements are `k`-bit coefficient
//! vectors packed little-endian into a [`Fe`]; addition is XOR, and for
//! degrees up to 16 multiplication goes through log/antilog tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::{Error, Result};

/// A field element: little-endian coefficient bits of the residue-class
/// representative. Only meaningful relative to a [`Field`].
pub type Fe = u32;

/// Largest supported extension degree over GF(2).
pub const MAX_DEGREE: u32 = 32;

/// Table-backed multiplication is available up to this degree.
const TABLE_DEGREE: u32 = 16;

// ---------------------------------------------------------------------------
// GF(2)[x] on bit-packed u64 (bit i = coefficient of x^i)
// ---------------------------------------------------------------------------

pub(crate) mod gf2poly {
    /// Degree of a bit-packed polynomial, -1 for zero.
    pub fn deg(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    pub fn rem(mut a: u64, b: u64) -> u64 {
        let db = deg(b);
        assert!(db >= 0, "division by zero polynomial");
        while deg(a) >= db {
            a ^= b << (deg(a) - db);
        }
        a
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }

    /// Product mod `m`; operands must already be reduced mod `m`.
    pub fn mulmod(a: u64, mut b: u64, m: u64) -> u64 {
        let mut shifted = a;
        let mut acc = 0u64;
        let dm = deg(m);
        while b != 0 {
            if b & 1 == 1 {
                acc ^= shifted;
            }
            b >>= 1;
            shifted <<= 1;
            if deg(shifted) >= dm {
                shifted ^= m << (deg(shifted) - dm);
            }
        }
        rem(acc, m)
    }

    pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
        let mut r = rem(1, m);
        a = rem(a, m);
        while e != 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, m);
            }
            a = mulmod(a, a, m);
            e >>= 1;
        }
        r
    }

    fn prime_divisors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Rabin irreducibility test for a monic polynomial of degree k ≥ 1.
    pub fn is_irreducible(p: u64) -> bool {
        let k = deg(p);
        if k < 1 {
            return false;
        }
        let x = 2u64;
        if powmod(x, 1 << k, p) != rem(x, p) {
            return false;
        }
        for d in prime_divisors(k as u64) {
            let t = powmod(x, 1 << (k as u64 / d), p) ^ rem(x, p);
            if gcd(p, t) != 1 {
                return false;
            }
        }
        true
    }

    /// True when `p` is irreducible and `x` generates the full multiplicative
    /// group of GF(2)[x]/(p).
    pub fn is_primitive(p: u64) -> bool {
        if !is_irreducible(p) {
            return false;
        }
        let k = deg(p) as u64;
        let order = (1u64 << k) - 1;
        if powmod(2, order, p) != 1 {
            return false;
        }
        prime_divisors(order)
            .into_iter()
            .all(|r| powmod(2, order / r, p) != 1)
    }

    /// Lexicographically smallest primitive polynomial of degree `k`
    /// (smallest integer encoding among monic degree-k candidates).
    pub fn smallest_primitive(k: u32) -> u64 {
        for low in 0..(1u64 << k) {
            let p = (1u64 << k) | low;
            if is_primitive(p) {
                return p;
            }
        }
        unreachable!("primitive polynomials exist for every degree")
    }
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

/// An extension field `GF(2^k)` with a fixed primitive modulus.
///
/// Obtain instances through [`Field::get`]; fields of equal degree are the
/// same object, so all derived data (codes, matrices) agree on the
/// representation. Immutable after construction and safe to share.
pub struct Field {
    degree: u32,
    modulus: u64,
    size: u64,
    /// exp[i] = x^i for 0 <= i < 2*(size-1); empty above TABLE_DEGREE.
    exp: Vec<Fe>,
    /// log[a] for a != 0; log[0] is a sentinel.
    log: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF(2^{})/<{:#x}>", self.degree, self.modulus)
    }
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();

impl Field {
    /// The field of degree `k` over GF(2), constructed once and cached.
    pub fn get(degree: u32) -> Result<Arc<Field>> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "field degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        let registry = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = registry.lock().unwrap();
        if let Some(f) = map.get(&degree) {
            return Ok(Arc::clone(f));
        }
        let field = Arc::new(Field::build(degree));
        map.insert(degree, Arc::clone(&field));
        Ok(field)
    }

    fn build(degree: u32) -> Field {
        let modulus = gf2poly::smallest_primitive(degree);
        let size = 1u64 << degree;
        let mut field = Field {
            degree,
            modulus,
            size,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if degree <= TABLE_DEGREE {
            let n = (size - 1) as usize;
            let mut exp = Vec::with_capacity(2 * n);
            let mut log = vec![0u32; size as usize];
            let mut cur: Fe = 1;
            for i in 0..n {
                exp.push(cur);
                log[cur as usize] = i as u32;
                cur = field.mul_slow(cur, field.alpha());
            }
            debug_assert_eq!(cur, 1, "x must have order 2^k - 1");
            exp.extend_from_within(0..n);
            field.exp = exp;
            field.log = log;
        }
        field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements, 2^degree.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// The modulus polynomial, bit i = coefficient of x^i.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The canonical primitive element: the residue of x.
    pub fn alpha(&self) -> Fe {
        if self.degree == 1 {
            1
        } else {
            2
        }
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        a ^ b
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        gf2poly::mulmod(a as u64, b as u64, self.modulus) as Fe
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero in {self:?}");
        if self.exp.is_empty() {
            return self.pow(a, self.size - 2);
        }
        self.exp[(self.size - 1) as usize - self.log[a as usize] as usize]
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let e = e % (self.size - 1);
        if !self.exp.is_empty() {
            let idx = (self.log[a as usize] as u64 * e) % (self.size - 1);
            return self.exp[idx as usize];
        }
        gf2poly::powmod(a as u64, e, self.modulus) as Fe
    }

    /// Frobenius automorphism x -> x^2.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> u64 {
        assert!(a != 0, "order of zero");
        let group = self.size - 1;
        if !self.exp.is_empty() {
            let l = self.log[a as usize] as u64;
            return group / gcd_u64(l, group);
        }
        let mut order = group;
        let mut d = 2u64;
        let mut rest = group;
        let mut primes = Vec::new();
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for p in primes {
            while order % p == 0 && self.pow(a, order / p) == 1 {
                order /= p;
            }
        }
        order
    }

    /// Whether `a` lies in the subfield of degree `sub_degree`.
    pub fn in_subfield(&self, a: Fe, sub_degree: u32) -> bool {
        self.degree % sub_degree == 0 && self.pow(a, 1 << sub_degree) == a
    }

    /// A primitive n-th root of unity: alpha^((2^k - 1)/n).
    pub fn nth_root(&self, n: u64) -> Result<Fe> {
        if n == 0 || (self.size - 1) % n != 0 {
            return Err(Error::InvalidArgument(format!(
                "{n} does not divide 2^{} - 1",
                self.degree
            )));
        }
        Ok(self.pow(self.alpha(), (self.size - 1) / n))
    }

    /// `[β⁰, β¹, …, β^{n−1}]` for β a primitive n-th root of unity.
    pub fn unity_roots(&self, n: u64) -> Result<Vec<Fe>> {
        let beta = self.nth_root(n)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut cur: Fe = 1;
        for _ in 0..n {
            out.push(cur);
            cur = self.mul(cur, beta);
        }
        Ok(out)
    }

    /// Embed an element of `small` into this field.
    pub fn embed_from(&self, small: &Arc<Field>, a: Fe) -> Result<Fe> {
        let emb = Embedding::get(small.degree, self.degree)?;
        Ok(emb.embed(a))
    }

    /// Map an element lying in the `target` subfield back to `target`
    /// coordinates.
    pub fn project_to(&self, target: &Arc<Field>, a: Fe) -> Result<Fe> {
        let emb = Embedding::get(target.degree, self.degree)?;
        emb.project(a)
    }

    /// Field trace onto `target`: sum of the conjugates `a^(|target|^i)`.
    pub fn trace_to(&self, target: &Arc<Field>, a: Fe) -> Result<Fe> {
        if self.degree % target.degree != 0 {
            return Err(Error::InvalidTower(format!(
                "degree {} does not divide {}",
                target.degree, self.degree
            )));
        }
        let steps = self.degree / target.degree;
        let mut acc = 0;
        let mut conj = a;
        for _ in 0..steps {
            acc ^= conj;
            for _ in 0..target.degree {
                conj = self.frobenius(conj);
            }
        }
        self.project_to(target, acc)
    }

    /// All elements in deterministic order 0, 1, …, 2^k − 1.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size as Fe
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Subfield embeddings
// ---------------------------------------------------------------------------

/// The canonical ring embedding `GF(2^s) -> GF(2^k)` for `s | k`, realized by
/// sending x to the smallest root of the small modulus inside the big field.
/// Cached per (s, k); holds forward and reverse lookup tables.
pub struct Embedding {
    small_degree: u32,
    big_degree: u32,
    generator_image: Fe,
    fwd: Vec<Fe>,
    rev: HashMap<Fe, Fe>,
}

static EMBEDDINGS: OnceLock<Mutex<HashMap<(u32, u32), Arc<Embedding>>>> = OnceLock::new();

impl Embedding {
    pub fn get(small_degree: u32, big_degree: u32) -> Result<Arc<Embedding>> {
        if small_degree == 0 || big_degree % small_degree != 0 {
            return Err(Error::InvalidTower(format!(
                "GF(2^{small_degree}) is not a subfield of GF(2^{big_degree})"
            )));
        }
        let registry = EMBEDDINGS.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (small_degree, big_degree);
        {
            let map = registry.lock().unwrap();
            if let Some(e) = map.get(&key) {
                return Ok(Arc::clone(e));
            }
        }
        let emb = Arc::new(Embedding::build(small_degree, big_degree)?);
        let mut map = registry.lock().unwrap();
        Ok(Arc::clone(map.entry(key).or_insert(emb)))
    }

    fn build(small_degree: u32, big_degree: u32) -> Result<Embedding> {
        let small = Field::get(small_degree)?;
        let big = Field::get(big_degree)?;

        // Roots of the small modulus live in the unique subfield of order
        // 2^s; scan it for the smallest root.
        let sub_order = small.size() - 1;
        let g = big.pow(big.alpha(), (big.size() - 1) / sub_order);
        let mut candidates: Vec<Fe> = std::iter::successors(Some(1 as Fe), |&c| {
            let next = big.mul(c, g);
            (next != 1).then_some(next)
        })
        .collect();
        candidates.push(0);
        candidates.sort_unstable();

        let eval_small_mod = |z: Fe| -> Fe {
            let mut acc = 0;
            for i in 0..=small_degree {
                if (small.modulus() >> i) & 1 == 1 {
                    acc ^= big.pow(z, i as u64);
                }
            }
            acc
        };
        let root = candidates
            .into_iter()
            .find(|&z| eval_small_mod(z) == 0)
            .expect("small modulus splits in the big field");

        let mut fwd = Vec::with_capacity(small.size() as usize);
        let mut rev = HashMap::with_capacity(small.size() as usize);
        for a in small.elements() {
            let mut image = 0;
            for i in 0..small_degree {
                if (a >> i) & 1 == 1 {
                    image ^= big.pow(root, i as u64);
                }
            }
            fwd.push(image);
            rev.insert(image, a);
        }
        assert_eq!(rev.len(), fwd.len(), "embedding must be injective");

        Ok(Embedding {
            small_degree,
            big_degree,
            generator_image: root,
            fwd,
            rev,
        })
    }

    pub fn small_degree(&self) -> u32 {
        self.small_degree
    }

    pub fn big_degree(&self) -> u32 {
        self.big_degree
    }

    /// Image of the small field's canonical generator.
    pub fn generator_image(&self) -> Fe {
        self.generator_image
    }

    pub fn embed(&self, a: Fe) -> Fe {
        self.fwd[a as usize]
    }

    /// Inverse of [`Embedding::embed`]; errors if `a` is outside the image.
    pub fn project(&self, a: Fe) -> Result<Fe> {
        self.rev.get(&a).copied().ok_or_else(|| {
            Error::InvalidTower(format!(
                "{a:#x} is not in the GF(2^{}) subfield of GF(2^{})",
                self.small_degree, self.big_degree
            ))
        })
    }
}
