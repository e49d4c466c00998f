//! Finite fields `F_{p^n}` with table arithmetic and a compatible tower of
//! embeddings.
//!
//! Elements are encoded as integers: `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! stands for `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` modulo the field's
//! modulus. This encoding also fixes the "lexicographic" order used for
//! every deterministic choice (moduli, roots, embeddings).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// An element of some finite field, in the integer encoding above.
pub type Elem = u32;

/// Largest field order for which exp/log tables are built.
pub const MAX_ORDER: u64 = 1 << 22;

/// Serialized form of a field: `{"p": int, "n": int, "modulus": [int, ...]}`,
/// modulus coefficients low to high. An omitted modulus means the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

struct FieldData {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to a finite field. Cheap to clone; fields with equal modulus
/// compare equal.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.n, self.0.modulus)
    }
}

type FieldKey = (u32, Vec<u32>);

fn field_cache() -> &'static Mutex<HashMap<FieldKey, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldKey, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_cache() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embedding_cache() -> &'static Mutex<HashMap<(u32, Vec<u32>, Vec<u32>), Elem>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, Vec<u32>, Vec<u32>), Elem>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

impl Field {
    /// The field with `p^n` elements and the lexicographically least monic
    /// irreducible modulus of degree `n`. Repeated calls return the same field.
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if (p as u64).checked_pow(n).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge { p, n });
        }
        if let Some(f) = canonical_cache().lock().unwrap().get(&(p, n)) {
            return Ok(f.clone());
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, n)?
        };
        let field = Self::build(p, modulus)?;
        canonical_cache()
            .lock()
            .unwrap()
            .insert((p, n), field.clone());
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1)
    }

    /// A field with an explicitly chosen modulus (low-to-high coefficients,
    /// monic, irreducible over `F_p`).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let n = modulus.len().saturating_sub(1) as u32;
        if n == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(n));
        }
        if (p as u64).checked_pow(n).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge { p, n });
        }
        if n > 1 {
            let base = Field::prime(p)?;
            if !Poly::new(&base, modulus.to_vec()).is_irreducible() {
                return Err(Error::BadModulus(n));
            }
        } else if modulus != [0, 1] {
            // every linear modulus gives the same prime field; keep one encoding
            return Field::prime(p);
        }
        Self::build(p, modulus.to_vec())
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        if d.modulus.is_empty() {
            return Field::new(d.p, d.n);
        }
        let f = Self::with_modulus(d.p, &d.modulus)?;
        if f.n() != d.n {
            return Err(Error::BadModulus(d.n));
        }
        Ok(f)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Field> {
        let key = (p, modulus.clone());
        if let Some(f) = field_cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let n = (modulus.len() - 1) as u32;
        let q = p.pow(n);
        let mut data = FieldData {
            p,
            n,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (q - 1) as u64;
        let primes = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| data.pow_slow(g, order / r) != 1 || order == 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(q as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) {
            exp.push(x);
            log[x as usize] = i;
            x = data.mul_slow(x, generator);
        }
        data.exp = exp;
        data.log = log;
        let field = Field(Arc::new(data));
        field_cache().lock().unwrap().insert(key, field.clone());
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// Number of elements.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            n: self.0.n,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.0.p as i64) as Elem
    }

    /// The element `x` (class of the modulus variable); for prime fields, 0.
    pub fn generator_x(&self) -> Elem {
        if self.0.n == 1 {
            0
        } else {
            self.0.p
        }
    }

    /// Coefficients (low to high, length `n`) of an element.
    pub fn coeffs(&self, mut a: Elem) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        c.iter().rev().fold(0, |acc, &d| acc * self.0.p + (d % self.0.p))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.n == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else if d.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..d.n {
                let s = (a % d.p + b % d.p) % d.p;
                out += s * place;
                place *= d.p;
                a /= d.p;
                b /= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        if d.n == 1 {
            if a == 0 {
                0
            } else {
                d.p - a
            }
        } else if d.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..d.n {
                let c = a % d.p;
                out += ((d.p - c) % d.p) * place;
                place *= d.p;
                a /= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        if d.n == 1 {
            return ((a as u64 * b as u64) % d.p as u64) as Elem;
        }
        let s = d.log[a as usize] as u64 + d.log[b as usize] as u64;
        d.exp[(s % (d.q as u64 - 1)) as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let d = &*self.0;
        let l = d.log[a as usize];
        if l == 0 {
            1
        } else {
            d.exp[(d.q - 1 - l) as usize]
        }
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        let l = (d.log[a as usize] as u128 * e as u128) % (d.q as u128 - 1);
        d.exp[l as usize]
    }

    /// The absolute Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// `a ↦ a^(p^(n-1))`, the inverse of the Frobenius.
    pub fn frobenius_inverse(&self, a: Elem) -> Elem {
        let mut x = a;
        for _ in 1..self.0.n {
            x = self.frobenius(x);
        }
        x
    }

    /// True if `other` is a subfield size of `self` (same characteristic,
    /// degree dividing).
    pub fn contains_degree(&self, other: &Field) -> bool {
        self.0.p == other.0.p && self.0.n % other.0.n == 0
    }

    /// The canonical extension of degree `m` over this field, i.e. the tower
    /// member `F_{p^(n m)}`.
    pub fn extension(&self, m: u32) -> Result<Field> {
        Field::new(self.0.p, self.0.n * m)
    }

    /// The stored embedding of `self` into `large`.
    pub fn embedding_into(&self, large: &Field) -> Result<Embedding> {
        Embedding::new(self, large)
    }
}

impl FieldData {
    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let n = self.n as usize;
        let digits = |mut v: u32| {
            (0..n)
                .map(|_| {
                    let c = (v % self.p) as u64;
                    v /= self.p;
                    c
                })
                .collect::<Vec<u64>>()
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.modulus[i] as u64;
                prod[k - n + i] = (prod[k - n + i] + p * p - c * m % p) % p;
            }
        }
        prod[..n]
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

fn least_irreducible(p: u32, n: u32) -> Result<Vec<u32>> {
    let base = Field::prime(p)?;
    let count = p.pow(n);
    for code in 0..count {
        let mut coeffs = base.coeffs_of_int(code, n);
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if Poly::new(&base, coeffs.clone()).is_irreducible() {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    fn coeffs_of_int(&self, mut code: u32, len: u32) -> Vec<u32> {
        (0..len)
            .map(|_| {
                let c = code % self.0.p;
                code /= self.0.p;
                c
            })
            .collect()
    }
}

/// A field embedding `F_{p^m} → F_{p^n}`, determined by the image of the
/// generator `x` of the source.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if !target.contains_degree(source) {
            return Err(Error::NoEmbedding {
                p: source.p(),
                small: source.n(),
                large: target.n(),
            });
        }
        let alpha = generator_image(source, target)?;
        let mut powers = Vec::with_capacity(source.n() as usize);
        let mut x = 1;
        for _ in 0..source.n() {
            powers.push(x);
            x = target.mul(x, alpha);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        let t = &self.target;
        self.source
            .coeffs(a)
            .into_iter()
            .zip(&self.powers)
            .fold(0, |acc, (c, &pw)| t.add(acc, t.mul(c, pw)))
    }
}

/// Evaluate a polynomial with prime-field coefficients at `alpha` in `field`.
fn eval_prime_poly(field: &Field, coeffs: &[u32], alpha: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, alpha), c))
}

/// Image of the source generator: the least root of the source modulus in
/// the target that is compatible with the embeddings of every intermediate
/// canonical subfield.
fn generator_image(source: &Field, target: &Field) -> Result<Elem> {
    if source.n() == 1 {
        return Ok(0);
    }
    let key = (
        source.p(),
        source.modulus().to_vec(),
        target.modulus().to_vec(),
    );
    if let Some(&a) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(a);
    }
    let mut constraints = Vec::new();
    for d in divisors(source.n()) {
        if d == 1 || d == source.n() {
            continue;
        }
        let mid = Field::new(source.p(), d)?;
        let into_target = Embedding::new(&mid, target)?.apply(mid.generator_x());
        let into_source = Embedding::new(&mid, source)?.apply(mid.generator_x());
        constraints.push((source.coeffs(into_source), into_target));
    }
    let alpha = target
        .elements()
        .filter(|&a| eval_prime_poly(target, source.modulus(), a) == 0)
        .find(|&a| {
            constraints
                .iter()
                .all(|(c, want)| eval_prime_poly(target, c, a) == *want)
        })
        .ok_or(Error::NoEmbedding {
            p: source.p(),
            small: source.n(),
            large: target.n(),
        })?;
    embedding_cache().lock().unwrap().insert(key, alpha);
    Ok(alpha)
}
