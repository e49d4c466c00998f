//! Dense univariate polynomials over a finite field and their factorization
//! (square-free, distinct-degree, then Cantor–Zassenhaus equal-degree
//! splitting with a seeded generator).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Seed of the equal-degree splitting stream used by [`Poly::factor`].
pub const FACTOR_SEED: u64 = 0x7a11_0e5e;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    c: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A factorization `unit * Π f_i^{e_i}` with monic irreducible `f_i`, sorted
/// by degree and then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let field = self
            .factors
            .first()
            .map(|(f, _)| f.field.clone())
            .expect("expand needs at least one factor or a known field");
        self.expand_over(&field)
    }

    pub fn expand_over(&self, field: &Field) -> Poly {
        let mut out = Poly::constant(field, self.unit);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                out = out.mul(f);
            }
        }
        out
    }
}

impl Poly {
    pub fn new(field: &Field, mut c: Vec<Elem>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly {
            field: field.clone(),
            c,
        }
    }

    /// Build from signed integer coefficients (low to high), reduced into the
    /// prime subfield.
    pub fn from_ints(field: &Field, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![1])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    pub fn constant(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![a])
    }

    pub fn monomial(field: &Field, a: Elem, k: usize) -> Poly {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly::new(field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn scale(&self, a: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.c.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg();
        let inv = f.inv(d.lead());
        let mut q = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (i, &b) in d.c.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, b));
            }
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `self^(q^k) mod m` where `q` is the field order.
    pub fn frobenius_pow_mod(&self, k: u32, m: &Poly) -> Poly {
        let q = self.field.q() as u64;
        let mut a = self.rem(m);
        for _ in 0..k {
            a = a.pow_mod(q, m);
        }
        a
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.monic();
        let x = Poly::x(&self.field);
        if x.frobenius_pow_mod(n as u32, &m).sub(&x).rem(&m).is_zero() {
            crate::field::prime_factors(n as u64).into_iter().all(|r| {
                let h = x.frobenius_pow_mod((n as u64 / r) as u32, &m).sub(&x);
                h.gcd(&m).is_one()
            })
        } else {
            false
        }
    }

    /// Roots in the coefficient field, ascending in encoding order.
    pub fn roots(&self) -> Vec<Elem> {
        self.field.elements().filter(|&a| self.eval(a) == 0).collect()
    }

    /// Replace `x` by `x^(1/p)`: only valid when the derivative vanishes.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        Poly::new(
            f,
            self.c
                .iter()
                .step_by(p)
                .map(|&a| f.frobenius_inverse(a))
                .collect(),
        )
    }

    /// Square-free decomposition of a monic polynomial: pairs
    /// `(square-free factor, multiplicity)`.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let d = f.derivative();
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            let p = self.field.p() as usize;
            for (g, e) in c.pth_root().squarefree() {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let f = &self.field;
        let mut rest = self.monic();
        let mut out = Vec::new();
        let x = Poly::x(f);
        let mut h = x.clone();
        let mut d = 1;
        while rest.deg() >= 2 * d {
            h = h.frobenius_pow_mod(1, &rest);
            let g = h.sub(&x).gcd(&rest);
            if !g.is_one() {
                rest = rest.div_exact(&g);
                h = h.rem(&rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.deg() > 0 {
            let k = rest.deg();
            out.push((rest, k));
        }
        out
    }

    /// Split a monic square-free product of irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let f = &self.field;
        loop {
            let a = Poly::new(f, (0..n).map(|_| rng.gen_range(0..f.q())).collect());
            if a.deg() == 0 {
                continue;
            }
            let g = a.gcd(self);
            let g = if !g.is_one() {
                g
            } else {
                let b = if f.p() == 2 {
                    // absolute trace to F_2 of F_{q^d}: sum of a^(2^i), i < n d
                    let k = f.n() as usize * d;
                    let mut t = a.rem(self);
                    let mut acc = t.clone();
                    for _ in 1..k {
                        t = t.mul_mod(&t, self);
                        acc = acc.add(&t);
                    }
                    acc
                } else {
                    // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
                    let mut norm = a.rem(self);
                    let mut t = norm.clone();
                    for _ in 1..d {
                        t = t.frobenius_pow_mod(1, self);
                        norm = norm.mul_mod(&t, self);
                    }
                    norm.pow_mod((f.q() as u64 - 1) / 2, self)
                        .sub(&Poly::one(f))
                };
                b.gcd(self)
            };
            if !g.is_one() && g.deg() < n {
                let h = self.div_exact(&g);
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    pub fn factor(&self) -> Result<Factorization> {
        self.factor_seeded(FACTOR_SEED)
    }

    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (sqf, e) in self.squarefree() {
            for (block, d) in sqf.distinct_degree() {
                for g in block.equal_degree(d, &mut rng) {
                    factors.push((g, e));
                }
            }
        }
        factors.sort_by(|(a, ea), (b, eb)| {
            a.deg()
                .cmp(&b.deg())
                .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
                .then(ea.cmp(eb))
        });
        // merge equal factors arising from different square-free layers
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g, e) in factors {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += e,
                _ => merged.push((g, e)),
            }
        }
        Ok(Factorization {
            unit: self.lead(),
            factors: merged,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    /// All monic polynomials of exact degree d over the prime field.
    fn monic_of_degree(f: &Field, d: usize) -> Vec<Poly> {
        let q = f.q() as usize;
        (0..q.pow(d as u32))
            .map(|mut code| {
                let mut c: Vec<Elem> = (0..d)
                    .map(|_| {
                        let v = (code % q) as Elem;
                        code /= q;
                        v
                    })
                    .collect();
                c.push(1);
                Poly::new(f, c)
            })
            .collect()
    }

    /// Brute-force factorization by trial division with all monic divisors of
    /// degree <= deg/2, smallest first.
    fn brute_factor(f: &Poly) -> Vec<(Poly, usize)> {
        let field = f.field().clone();
        let mut rest = f.monic();
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for d in 1..=rest.deg() {
            for g in monic_of_degree(&field, d) {
                while rest.deg() >= d && rest.rem(&g).is_zero() {
                    rest = rest.div_exact(&g);
                    match out.last_mut() {
                        Some((h, k)) if *h == g => *k += 1,
                        _ => out.push((g.clone(), 1)),
                    }
                }
            }
        }
        out
    }

    #[test]
    fn factor_x2_plus_x() {
        let f = f2();
        let p = Poly::from_ints(&f, &[0, 1, 1]);
        let fac = p.factor().unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f, &[0, 1]), 1), (Poly::from_ints(&f, &[1, 1]), 1)]
        );
    }

    #[test]
    fn factor_x6_minus_1_over_f2_matches_brute_force() {
        let f = f2();
        let p = Poly::from_ints(&f, &[-1, 0, 0, 0, 0, 0, 1]);
        let oracle = brute_factor(&p);
        assert_eq!(
            oracle,
            vec![(Poly::from_ints(&f, &[1, 1]), 2), (Poly::from_ints(&f, &[1, 1, 1]), 2)]
        );
        assert_eq!(p.factor().unwrap().factors, oracle);
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        let f = f2();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        assert!(p.roots().is_empty());
        assert_eq!(p.factor().unwrap().factors, vec![(p.clone(), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(Poly::zero(&f2()).factor().unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn factor_over_extension_field() {
        let f4 = Field::new(2, 2).unwrap();
        let p = Poly::from_ints(&f4, &[1, 1, 1]);
        let fac = p.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        assert_eq!(fac.expand(), p);
    }

    #[test]
    fn pure_pth_power() {
        let f3 = Field::new(3, 1).unwrap();
        // x^3 - 1 = (x - 1)^3
        let p = Poly::from_ints(&f3, &[-1, 0, 0, 1]);
        assert_eq!(p.factor().unwrap().factors, vec![(Poly::from_ints(&f3, &[-1, 1]), 3)]);
        // x^9 + x^3 over F9 exercises the inverse Frobenius on coefficients
        let f9 = Field::new(3, 2).unwrap();
        let q = Poly::from_ints(&f9, &[0, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(q.factor().unwrap().expand(), q);
    }

    #[test]
    fn agrees_with_brute_force_on_all_small_polys() {
        for p in [2u32, 3] {
            let f = Field::new(p, 1).unwrap();
            for d in 1..=5 {
                for g in monic_of_degree(&f, d) {
                    assert_eq!(g.factor().unwrap().factors, brute_factor(&g), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Field::new(5, 1).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1]);
        let b = Poly::from_ints(&f, &[3, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
