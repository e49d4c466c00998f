//! Finite-dimensional commutative algebras given by structure constants.
//!
//! For an algebra `A` over `F_q` the map `a ↦ a^q` is `F_q`-linear, and a
//! high enough iterate of it kills exactly the nilpotent elements while
//! mapping onto the maximal separable subalgebra. Both `nilradical` and
//! `pi0` are read off that single operator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraViolation, Error, Result};
use crate::field::{Elem, Embedding, Field, FieldDescriptor};
use crate::matrix::{vec, Matrix};
use crate::poly::Poly;

/// Coordinates of an algebra element in the chosen basis.
pub type AlgebraElement = Vec<Elem>;

/// A validated commutative, associative, unital algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// `c[i][j][k]` stored at `(i * dim + j) * dim + k`.
    mult: Vec<Elem>,
    unit: Vec<Elem>,
}

/// JSON form: `{"field": {...}, "dim": d, "mult": [[[int,...],...],...], "unit": [int,...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldDescriptor,
    pub dim: usize,
    pub mult: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

/// A subalgebra spanned by the columns of `basis`, with its own structure
/// constants in that basis.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub basis: Matrix,
    pub induced: Algebra,
}

impl Subalgebra {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Ambient coordinates of an element given in subalgebra coordinates.
    pub fn include(&self, v: &[Elem]) -> Vec<Elem> {
        self.basis.apply(v)
    }
}

/// A unital algebra map, stored as a `dim(target) × dim(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: &Algebra, target: &Algebra, matrix: Matrix) -> Result<AlgebraMorphism> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::DimensionMismatch("algebra morphism shape".into()));
        }
        if matrix.apply(&source.unit) != target.unit {
            return Err(Error::NotAMorphism("unit not preserved".into()));
        }
        let cols = matrix.columns();
        for i in 0..source.dim {
            for j in i..source.dim {
                let lhs = matrix.apply(&source.basis_product(i, j));
                let rhs = target.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!("product of b{i}, b{j}")));
                }
            }
        }
        Ok(AlgebraMorphism { matrix })
    }
}

impl Algebra {
    /// Check the axioms on raw structure constants; the report names the
    /// first violated axiom and its witness indices.
    pub fn validate(field: &Field, dim: usize, mult: Vec<Elem>, unit: Vec<Elem>) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::Algebra(AlgebraViolation::ZeroDimensional));
        }
        if mult.len() != dim * dim * dim || unit.len() != dim || mult.iter().chain(&unit).any(|&c| c >= field.q()) {
            return Err(Error::Algebra(AlgebraViolation::Shape));
        }
        let a = Algebra {
            field: field.clone(),
            dim,
            mult,
            unit,
        };
        for i in 0..dim {
            for j in i + 1..dim {
                if a.basis_product(i, j) != a.basis_product(j, i) {
                    return Err(Error::Algebra(AlgebraViolation::Commutativity(i, j)));
                }
            }
        }
        for i in 0..dim {
            if a.mul(&a.unit, &vec::unit(dim, i)) != vec::unit(dim, i) {
                return Err(Error::Algebra(AlgebraViolation::Unit(i)));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = a.basis_product(i, j);
                for l in 0..dim {
                    let left = a.mul(&ij, &vec::unit(dim, l));
                    let right = a.mul(&vec::unit(dim, i), &a.basis_product(j, l));
                    if left != right {
                        return Err(Error::Algebra(AlgebraViolation::Associativity(i, j, l)));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Algebra> {
        let field = Field::from_descriptor(&j.field)?;
        let conv = |v: i64| -> Result<Elem> {
            if v < 0 || v >= field.q() as i64 {
                Err(Error::CoefficientRange { value: v, p: field.p() })
            } else {
                Ok(v as Elem)
            }
        };
        if j.mult.len() != j.dim
            || j.mult.iter().any(|r| r.len() != j.dim || r.iter().any(|c| c.len() != j.dim))
        {
            return Err(Error::Algebra(AlgebraViolation::Shape));
        }
        let mult = j
            .mult
            .iter()
            .flatten()
            .flatten()
            .map(|&v| conv(v))
            .collect::<Result<Vec<_>>>()?;
        let unit = j.unit.iter().map(|&v| conv(v)).collect::<Result<Vec<_>>>()?;
        Algebra::validate(&field, j.dim, mult, unit)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim;
        AlgebraJson {
            field: self.field.descriptor(),
            dim: d,
            mult: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| self.basis_product(i, j).iter().map(|&c| c as i64).collect())
                        .collect()
                })
                .collect(),
            unit: self.unit.iter().map(|&c| c as i64).collect(),
        }
    }

    /// Algebra whose multiplication is given by a `d × d²` matrix (column
    /// `i*d+j` holds `b_i b_j`) and unit vector.
    pub fn from_mult_matrix(mu: &Matrix, unit: &[Elem]) -> Result<Algebra> {
        let d = mu.rows();
        if mu.cols() != d * d {
            return Err(Error::Algebra(AlgebraViolation::Shape));
        }
        let mut mult = Vec::with_capacity(d * d * d);
        for c in 0..d * d {
            mult.extend(mu.column(c));
        }
        Algebra::validate(mu.field(), d, mult, unit.to_vec())
    }

    /// `k^n` with the coordinate idempotents as basis.
    pub fn diagonal(field: &Field, n: usize) -> Algebra {
        let mut mult = vec![0; n * n * n];
        for i in 0..n {
            mult[(i * n + i) * n + i] = 1;
        }
        Algebra {
            field: field.clone(),
            dim: n,
            mult,
            unit: vec![1; n],
        }
    }

    /// `F[x]/(f)` in the monomial basis `1, x, ..., x^(deg f - 1)`.
    pub fn quotient_poly(f: &Poly) -> Result<Algebra> {
        let field = f.field().clone();
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::Algebra(AlgebraViolation::ZeroDimensional));
        }
        let mut mult = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let r = Poly::monomial(&field, 1, i + j).rem(f);
                for k in 0..d {
                    mult[(i * d + j) * d + k] = r.coeff(k);
                }
            }
        }
        Ok(Algebra {
            unit: vec::unit(d, 0),
            field,
            dim: d,
            mult,
        })
    }

    /// Direct product `A × B` (basis of `A` followed by basis of `B`).
    pub fn product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut mult = vec![0; n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    mult[(i * n + j) * n + k] = self.mult[(i * a + j) * a + k];
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    mult[((a + i) * n + a + j) * n + a + k] = other.mult[(i * b + j) * b + k];
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(&other.unit);
        Ok(Algebra {
            field: self.field.clone(),
            dim: n,
            mult,
            unit,
        })
    }

    /// `A ⊗ B`; basis `b_i ⊗ b'_k` at index `i * dim(B) + k`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        let mut mult = vec![0; n * n * n];
        for i in 0..a {
            for j in 0..a {
                for m in 0..a {
                    let x = self.mult[(i * a + j) * a + m];
                    if x == 0 {
                        continue;
                    }
                    for k in 0..b {
                        for l in 0..b {
                            for r in 0..b {
                                let y = other.mult[(k * b + l) * b + r];
                                if y != 0 {
                                    mult[((i * b + k) * n + j * b + l) * n + m * b + r] = f.mul(x, y);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Algebra {
            field: f.clone(),
            dim: n,
            mult,
            unit: vec::kron(f, &self.unit, &other.unit),
        })
    }

    /// Scalar extension along a field embedding.
    pub fn base_change(&self, e: &Embedding) -> Algebra {
        assert!(*e.source() == self.field, "base change source field");
        Algebra {
            field: e.target().clone(),
            dim: self.dim,
            mult: self.mult.iter().map(|&c| e.apply(c)).collect(),
            unit: self.unit.iter().map(|&c| e.apply(c)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn zero(&self) -> AlgebraElement {
        vec![0; self.dim]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> AlgebraElement {
        let d = self.dim;
        self.mult[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> AlgebraElement {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = f.mul(x, y);
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mult[base + k];
                    if c != 0 {
                        *o = f.add(*o, f.mul(xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Elem], mut e: u64) -> AlgebraElement {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The multiplication map `A ⊗ A → A` as a `d × d²` matrix.
    pub fn mult_matrix(&self) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(&self.field, d, d * d);
        for c in 0..d * d {
            for k in 0..d {
                m.set(k, c, self.mult[c * d + k]);
            }
        }
        m
    }

    pub fn unit_matrix(&self) -> Matrix {
        Matrix::column_vector(&self.field, &self.unit)
    }

    /// Multiplication operator `M_a`, with `M_a v = a v`.
    pub fn mult_operator(&self, a: &[Elem]) -> Result<Matrix> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in algebra of dim {}",
                a.len(),
                self.dim
            )));
        }
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.mul(a, &vec::unit(self.dim, j)))
            .collect();
        Ok(Matrix::from_columns(&self.field, self.dim, &cols))
    }

    pub fn trace(&self, a: &[Elem]) -> Elem {
        let m = self.mult_operator(a).expect("element of this algebra");
        (0..self.dim).fold(0, |acc, i| self.field.add(acc, m.get(i, i)))
    }

    /// Gram matrix `G[i][j] = trace(M_{b_i b_j})`.
    pub fn trace_form(&self) -> Matrix {
        let d = self.dim;
        let traces: Vec<Elem> = (0..d).map(|k| self.trace(&vec::unit(d, k))).collect();
        let mut g = Matrix::zeros(&self.field, d, d);
        for i in 0..d {
            for j in 0..d {
                let t = vec::dot(&self.field, &self.basis_product(i, j), &traces);
                g.set(i, j, t);
            }
        }
        g
    }

    /// Separable iff the trace form is nondegenerate.
    pub fn is_separable(&self) -> bool {
        self.trace_form().rank() == self.dim
    }

    /// Matrix of the `F_q`-linear map `a ↦ a^q`.
    pub fn frobenius_matrix(&self) -> Matrix {
        let q = self.field.q() as u64;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.pow(&vec::unit(self.dim, j), q))
            .collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// `a ↦ a^(q^m)` for the least `m` with `q^m >= dim`.
    pub fn stable_frobenius(&self) -> Matrix {
        let f = self.frobenius_matrix();
        let q = self.field.q() as u64;
        let mut reach = q;
        let mut acc = f.clone();
        while reach < self.dim as u64 {
            acc = acc.mul(&f);
            reach *= q;
        }
        acc
    }

    /// Basis of the ideal of nilpotent elements.
    pub fn nilradical(&self) -> Vec<AlgebraElement> {
        self.stable_frobenius().kernel()
    }

    /// The maximal separable subalgebra.
    pub fn pi0(&self) -> Subalgebra {
        let image = self.stable_frobenius().column_space();
        self.subalgebra(&image)
            .expect("image of a ring endomorphism is a unital subalgebra")
    }

    /// The subalgebra spanned by the (independent) vectors in `basis`.
    pub fn subalgebra(&self, basis: &[AlgebraElement]) -> Result<Subalgebra> {
        let f = &self.field;
        let b = Matrix::from_columns(f, self.dim, basis);
        if b.rank() != basis.len() {
            return Err(Error::InvalidInput("subalgebra basis is dependent".into()));
        }
        let r = basis.len();
        let unit = b
            .solve(&self.unit)
            .ok_or_else(|| Error::InvalidInput("span does not contain the unit".into()))?;
        let mut prods = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                prods.push(self.mul(&basis[i], &basis[j]));
            }
        }
        let coords = b
            .solve_matrix(&Matrix::from_columns(f, self.dim, &prods))
            .ok_or_else(|| Error::InvalidInput("span is not closed under products".into()))?;
        let mut mult = Vec::with_capacity(r * r * r);
        for c in 0..r * r {
            mult.extend(coords.column(c));
        }
        let induced = Algebra::validate(f, r, mult, unit)?;
        Ok(Subalgebra { basis: b, induced })
    }

    /// Quotient by the ideal spanned by `ideal` (which must be an ideal).
    /// Returns the quotient algebra and the `dim(A/I) × dim(A)` quotient map.
    pub fn quotient(&self, ideal: &[AlgebraElement]) -> Result<(Algebra, Matrix)> {
        let f = &self.field;
        let d = self.dim;
        let i_mat = Matrix::from_columns(f, d, ideal);
        let ideal: Vec<_> = i_mat.column_space();
        // complete the ideal basis with standard vectors
        let mut full = ideal.clone();
        let mut complement = Vec::new();
        for j in 0..d {
            let mut trial = full.clone();
            trial.push(vec::unit(d, j));
            if Matrix::from_columns(f, d, &trial).rank() == trial.len() {
                full = trial;
                complement.push(vec::unit(d, j));
            }
        }
        let inv = Matrix::from_columns(f, d, &full)
            .inverse()
            .expect("completed basis is invertible");
        let k = ideal.len();
        let quot = inv.submatrix(k..d, 0..d);
        // ideal check: products of ideal vectors with basis land in the ideal
        for v in &ideal {
            for j in 0..d {
                if !quot.apply(&self.mul(v, &vec::unit(d, j))).iter().all(|&c| c == 0) {
                    return Err(Error::InvalidInput("span is not an ideal".into()));
                }
            }
        }
        let r = d - k;
        let mut mult = Vec::with_capacity(r * r * r);
        for i in 0..r {
            for j in 0..r {
                mult.extend(quot.apply(&self.mul(&complement[i], &complement[j])));
            }
        }
        let unit = quot.apply(&self.unit);
        let alg = Algebra::validate(f, r, mult, unit)?;
        Ok((alg, quot))
    }

    /// Minimal polynomial of `a` in the algebra with unit `e` (an idempotent
    /// with `a = e a`).
    pub fn min_poly_in(&self, a: &[Elem], e: &[Elem]) -> Poly {
        let f = &self.field;
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), a);
            let basis = Matrix::from_columns(f, self.dim, &powers);
            if let Some(c) = basis.solve(&next) {
                let mut coeffs: Vec<Elem> = c.iter().map(|&x| f.neg(x)).collect();
                coeffs.push(1);
                return Poly::new(f, coeffs);
            }
            powers.push(next);
        }
    }

    pub fn min_poly(&self, a: &[Elem]) -> Poly {
        self.min_poly_in(a, &self.unit)
    }

    /// `p(a)` with `a^0 = e`.
    pub fn eval_poly_in(&self, p: &Poly, a: &[Elem], e: &[Elem]) -> AlgebraElement {
        let f = &self.field;
        let mut acc = self.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            acc = vec::add(f, &acc, &vec::scale(f, e, c));
        }
        acc
    }

    pub fn is_idempotent(&self, e: &[Elem]) -> bool {
        self.mul(e, e) == e
    }

    /// Number of primitive idempotents over the base field.
    pub fn component_count(&self) -> usize {
        let fr = self.frobenius_matrix();
        fr.sub(&Matrix::identity(&self.field, self.dim)).kernel().len()
    }

    /// Degree over the base of the residue field of `eA` for a primitive
    /// idempotent `e`.
    pub fn residue_degree(&self, e: &[Elem]) -> usize {
        self.mult_operator(e)
            .expect("element of this algebra")
            .mul(&self.stable_frobenius())
            .rank()
    }

    /// Split `e` using the minimal polynomial of `e·c` (CRT idempotents).
    fn split_with(&self, e: &[Elem], c: &[Elem]) -> Vec<AlgebraElement> {
        let a = self.mul(e, c);
        let m = self.min_poly_in(&a, e);
        let fac = m.factor().expect("minimal polynomial is nonzero");
        if fac.factors.len() < 2 {
            return vec![e.to_vec()];
        }
        let f = &self.field;
        fac.factors
            .iter()
            .map(|(g, k)| {
                let mut pi = Poly::one(f);
                for _ in 0..*k {
                    pi = pi.mul(g);
                }
                let qi = m.div_exact(&pi);
                let (_, s, _) = qi.ext_gcd(&pi);
                let u = s.mul(&qi).rem(&m);
                self.eval_poly_in(&u, &a, e)
            })
            .collect()
    }

    /// Primitive idempotents over the base field, sorted by coordinates.
    ///
    /// Candidates are the basis vectors, then pairwise basis products, then
    /// elements drawn from a generator seeded with `seed`.
    pub fn base_primitive_idempotents(&self, seed: u64) -> Vec<AlgebraElement> {
        let target = self.component_count();
        let d = self.dim;
        let mut idem = vec![self.unit.clone()];
        let refine = |idem: &mut Vec<AlgebraElement>, c: &[Elem]| {
            *idem = idem.iter().flat_map(|e| self.split_with(e, c)).collect();
        };
        'done: {
            for i in 0..d {
                if idem.len() == target {
                    break 'done;
                }
                refine(&mut idem, &vec::unit(d, i));
            }
            for i in 0..d {
                for j in i..d {
                    if idem.len() == target {
                        break 'done;
                    }
                    refine(&mut idem, &self.basis_product(i, j));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while idem.len() < target {
                let c: Vec<Elem> = (0..d).map(|_| rng.gen_range(0..self.field.q())).collect();
                refine(&mut idem, &c);
            }
        }
        idem.sort();
        idem
    }

    /// Least common multiple of the residue degrees: the extension degree
    /// over which every primitive idempotent is absolutely primitive.
    pub fn splitting_degree(&self, seed: u64) -> u32 {
        self.base_primitive_idempotents(seed)
            .iter()
            .map(|e| self.residue_degree(e) as u32)
            .fold(1, lcm)
    }

    /// Primitive idempotents, each with a local summand `eA` whose residue
    /// field is the returned field. Without `allow_extension`, a required
    /// extension is reported as [`Error::NeedsExtension`].
    pub fn primitive_idempotents(
        &self,
        allow_extension: bool,
        seed: u64,
    ) -> Result<(Field, Vec<AlgebraElement>)> {
        let m = self.splitting_degree(seed);
        if m == 1 {
            return Ok((self.field.clone(), self.base_primitive_idempotents(seed)));
        }
        if !allow_extension {
            return Err(Error::NeedsExtension(m));
        }
        let (ext, split) = self.split_extension(seed)?;
        Ok((ext.target().clone(), split.base_primitive_idempotents(seed)))
    }

    /// Base change to the minimal tower member splitting all idempotents.
    pub fn split_extension(&self, seed: u64) -> Result<(Embedding, Algebra)> {
        let m = self.splitting_degree(seed);
        let large = self.field.extension(m)?;
        let e = self.field.embedding_into(&large)?;
        let a = self.base_change(&e);
        Ok((e, a))
    }

    /// All algebra morphisms to the base field, sorted by matrix entries.
    pub fn points(&self) -> Vec<AlgebraMorphism> {
        let f = &self.field;
        let fm = self.stable_frobenius();
        let k = Algebra::diagonal(f, 1);
        let mut out: Vec<AlgebraMorphism> = self
            .base_primitive_idempotents(0)
            .into_iter()
            .filter(|e| self.residue_degree(e) == 1)
            .map(|e| {
                let t = e.iter().position(|&c| c != 0).expect("idempotent is nonzero");
                let row: Vec<Elem> = (0..self.dim)
                    .map(|j| {
                        let v = self.mul(&e, &fm.column(j));
                        f.div(v[t], e[t])
                    })
                    .collect();
                AlgebraMorphism::new(self, &k, Matrix::row_vector(f, &row))
                    .expect("residue map of a split local factor")
            })
            .collect();
        out.sort_by(|a, b| a.matrix.data().cmp(b.matrix.data()));
        out
    }

    /// Every idempotent, by exhaustive search over all `q^d` elements.
    /// `None` when `q^d` exceeds `limit`.
    pub fn idempotents_exhaustive(&self, limit: u64) -> Option<Vec<AlgebraElement>> {
        let q = self.field.q() as u64;
        let total = q.checked_pow(self.dim as u32).filter(|&t| t <= limit)?;
        let mut out = Vec::new();
        let mut v = vec![0u32; self.dim];
        for _ in 0..total {
            if self.is_idempotent(&v) {
                out.push(v.clone());
            }
            for c in v.iter_mut() {
                *c += 1;
                if (*c as u64) < q {
                    break;
                }
                *c = 0;
            }
        }
        out.sort();
        Some(out)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn quo(p: u32, c: &[i64]) -> Algebra {
        Algebra::quotient_poly(&Poly::from_ints(&f(p), c)).unwrap()
    }

    /// Exhaustive nilpotent elements (as a set) for tiny algebras.
    fn nilpotents(a: &Algebra) -> Vec<AlgebraElement> {
        let q = a.field().q() as u64;
        let total = q.pow(a.dim() as u32);
        (0..total)
            .map(|mut code| {
                (0..a.dim())
                    .map(|_| {
                        let c = (code % q) as Elem;
                        code /= q;
                        c
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|v| a.pow(v, a.dim() as u64).iter().all(|&c| c == 0))
            .collect()
    }

    #[test]
    fn validation_reports() {
        let two = f(2);
        let dual = quo(2, &[0, 0, 1]);
        assert_eq!(dual.dim(), 2);
        assert!(Algebra::diagonal(&f(3), 3).is_separable());
        let mut mult = dual.mult.clone();
        // b1 * b0 := 0 while b0 * b1 = b1
        mult[(1 * 2 + 0) * 2 + 1] = 0;
        assert_eq!(
            Algebra::validate(&two, 2, mult, vec![1, 0]).unwrap_err(),
            Error::Algebra(AlgebraViolation::Commutativity(0, 1))
        );
        assert_eq!(
            Algebra::validate(&two, 0, vec![], vec![]).unwrap_err(),
            Error::Algebra(AlgebraViolation::ZeroDimensional)
        );
        let d = Algebra::diagonal(&two, 2);
        assert_eq!(
            Algebra::validate(&two, 2, d.mult.clone(), vec![1, 0]).unwrap_err(),
            Error::Algebra(AlgebraViolation::Unit(1))
        );
    }

    #[test]
    fn mult_operator_examples() {
        let a = quo(2, &[0, 0, 1]);
        assert!(a.mult_operator(&[1, 0]).unwrap().is_identity());
        assert_eq!(
            a.mult_operator(&[0, 1]).unwrap(),
            Matrix::from_int_rows(&f(2), &[&[0, 0], &[1, 0]])
        );
        assert!(a.mult_operator(&[1]).is_err());
    }

    #[test]
    fn trace_form_examples() {
        assert!(quo(2, &[0, 0, 1]).trace_form().is_zero());
        assert_eq!(
            quo(2, &[1, 1, 1]).trace_form(),
            Matrix::from_int_rows(&f(2), &[&[0, 1], &[1, 1]])
        );
        assert_eq!(Algebra::diagonal(&f(3), 1).trace_form(), Matrix::identity(&f(3), 1));
        assert!(!quo(2, &[0, 0, 1]).is_separable());
        assert!(quo(2, &[1, 1, 1]).is_separable());
    }

    #[test]
    fn nilradical_matches_exhaustive_search() {
        for (p, c) in [(2, vec![0, 0, 1]), (3, vec![0, 0, 0, 1]), (2, vec![1, 0, 0, 1]), (3, vec![1, 0, 1, 1])] {
            let a = quo(p, &c);
            let rad = a.nilradical();
            let brute = nilpotents(&a);
            assert_eq!(brute.len() as u64, (p as u64).pow(rad.len() as u32));
            let span = Matrix::from_columns(a.field(), a.dim(), &rad);
            for v in brute {
                assert!(span.solve(&v).is_some());
            }
        }
        assert_eq!(quo(2, &[0, 0, 1]).nilradical(), vec![vec![0, 1]]);
        assert_eq!(quo(3, &[0, 0, 0, 1]).nilradical().len(), 2);
        assert!(Algebra::diagonal(&f(5), 3).nilradical().is_empty());
    }

    #[test]
    fn pi0_examples() {
        assert_eq!(quo(2, &[1, 0, 0, 0, 0, 0, 1]).pi0().dim(), 3);
        for p in [2u32, 3, 5] {
            let mut c = vec![0i64; p as usize + 1];
            c[0] = -1;
            c[p as usize] = 1;
            assert_eq!(quo(p, &c).pi0().dim(), 1);
        }
        let sep = quo(5, &[1, 0, 1]);
        let pi = sep.pi0();
        assert_eq!(pi.dim(), 2);
        assert!(pi.induced.is_separable());
        assert_eq!(pi.induced.pi0().dim(), pi.dim());
    }

    #[test]
    fn pi0_of_x6_minus_1_is_the_frobenius_image() {
        // image-of-Frobenius-power oracle: span of all a^8 (8 >= 6)
        let a = quo(2, &[1, 0, 0, 0, 0, 0, 1]);
        let images: Vec<_> = (0..64u32)
            .map(|code| (0..6).map(|i| (code >> i) & 1).collect::<Vec<_>>())
            .map(|v| a.pow(&v, 8))
            .collect();
        let image_dim = Matrix::from_columns(a.field(), 6, &images).rank();
        assert_eq!(image_dim, 3);
        assert!(a.pi0().induced.is_separable());
    }

    #[test]
    fn primitive_idempotent_examples() {
        let (fld, e) = Algebra::diagonal(&f(3), 2).primitive_idempotents(false, 1).unwrap();
        assert_eq!(fld, f(3));
        assert_eq!(e, vec![vec![0, 1], vec![1, 0]]);
        let a = quo(2, &[1, 1, 1]);
        assert_eq!(a.primitive_idempotents(false, 1).unwrap_err(), Error::NeedsExtension(2));
        let (fld, e) = a.primitive_idempotents(true, 1).unwrap();
        assert_eq!(fld.q(), 4);
        assert_eq!(e.len(), 2);
        let (_, split) = a.split_extension(1).unwrap();
        for x in &e {
            assert!(split.is_idempotent(x));
        }
        assert_eq!(split.mul(&e[0], &e[1]), vec![0, 0]);
        assert_eq!(vec::add(&fld, &e[0], &e[1]), split.unit().to_vec());
        let local = quo(2, &[0, 0, 1]);
        assert_eq!(local.primitive_idempotents(false, 1).unwrap().1, vec![vec![1, 0]]);
    }

    #[test]
    fn tensor_examples() {
        let k = Algebra::diagonal(&f(2), 1);
        let a = quo(2, &[0, 0, 1]);
        assert_eq!(a.tensor(&k).unwrap(), a);
        let b = quo(2, &[0, 0, 1]);
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.dim(), 4);
        assert_eq!(nilpotents(&ab).len(), 8);
        assert_eq!(ab.nilradical().len(), 3);
        let d = Algebra::diagonal(&f(3), 2);
        let dd = d.tensor(&d).unwrap();
        assert_eq!(dd.base_primitive_idempotents(0).len(), 4);
        assert!(a.tensor(&Algebra::diagonal(&f(3), 1)).is_err());
    }

    #[test]
    fn points_examples() {
        assert_eq!(Algebra::diagonal(&f(5), 3).points().len(), 3);
        assert!(quo(2, &[1, 1, 1]).points().is_empty());
        let p = quo(2, &[0, 0, 1]).points();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].matrix.data(), &[1, 0]);
    }

    #[test]
    fn points_match_brute_force() {
        for (p, c) in [(3, vec![0, 1, 0, 1]), (5, vec![4, 0, 1]), (2, vec![0, 1, 1, 1]), (3, vec![2, 0, 0, 1])] {
            let a = quo(p, &c);
            let k = Algebra::diagonal(&f(p), 1);
            let mut brute = Vec::new();
            for code in 0..(p as u64).pow(a.dim() as u32) {
                let mut code = code;
                let row: Vec<Elem> = (0..a.dim())
                    .map(|_| {
                        let v = (code % p as u64) as Elem;
                        code /= p as u64;
                        v
                    })
                    .collect();
                if let Ok(m) = AlgebraMorphism::new(&a, &k, Matrix::row_vector(&f(p), &row)) {
                    brute.push(m);
                }
            }
            brute.sort_by(|a, b| a.matrix.data().cmp(b.matrix.data()));
            assert_eq!(a.points(), brute, "p={p} {c:?}");
        }
    }

    #[test]
    fn quotient_by_nilradical_is_separable() {
        let a = quo(3, &[0, 0, 1, 0, 1]); // x^2 (x^2 + 1)
        let (q, map) = a.quotient(&a.nilradical()).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.is_separable());
        assert_eq!(map.shape(), (3, 4));
        AlgebraMorphism::new(&a, &q, map).unwrap();
    }

    #[test]
    fn json_roundtrip() {
        let a = quo(3, &[1, 0, 1]);
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Algebra::from_json(&back).unwrap(), a);
    }
}
