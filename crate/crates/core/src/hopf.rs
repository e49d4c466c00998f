//! Finite-dimensional commutative Hopf algebras given by explicit matrices.
//!
//! Matrix conventions: `Δ` is `d² × d`, `ε` is `1 × d`, `S` is `d × d`;
//! the tensor basis vector `b_i ⊗ b_j` has index `i * d + j`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraJson};
use crate::error::{Error, HopfViolation, Result};
use crate::field::{Elem, Embedding, Field};
use crate::group::{FiniteGroup, GroupHom};
use crate::matrix::{vec, Matrix};
use crate::poly::Poly;

/// Default node budget for the structured morphism search.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: Algebra,
    comult: Matrix,
    counit: Matrix,
    antipode: Matrix,
    /// Set for `constant_hopf(G)`; basis vector `g` is the indicator of `g`.
    origin: Option<FiniteGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    pub comult: Vec<Vec<i64>>,
    pub counit: Vec<Vec<i64>>,
    pub antipode: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfMorphism {
    pub matrix: Matrix,
}

/// Product in `A ⊗ A` where `A` has multiplication matrix `mu` (`d × d²`).
pub(crate) fn tensor_mul(mu: &Matrix, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let f = mu.field();
    let d = mu.rows();
    let mut out = vec![0; d * d];
    for (xi, &xv) in x.iter().enumerate() {
        if xv == 0 {
            continue;
        }
        let (i, k) = (xi / d, xi % d);
        for (yi, &yv) in y.iter().enumerate() {
            if yv == 0 {
                continue;
            }
            let (j, l) = (yi / d, yi % d);
            let c = f.mul(xv, yv);
            let u = mu.column(i * d + j);
            let v = mu.column(k * d + l);
            for (m, &um) in u.iter().enumerate() {
                if um == 0 {
                    continue;
                }
                let cu = f.mul(c, um);
                for (n, &vn) in v.iter().enumerate() {
                    if vn != 0 {
                        out[m * d + n] = f.add(out[m * d + n], f.mul(cu, vn));
                    }
                }
            }
        }
    }
    out
}

/// Bialgebra and Hopf axioms for an associative unital algebra `(mu, eta)`,
/// commutative or not. Returns the first failure.
pub(crate) fn hopf_axioms(
    mu: &Matrix,
    eta: &Matrix,
    delta: &Matrix,
    eps: &Matrix,
    s: &Matrix,
) -> std::result::Result<(), HopfViolation> {
    let f = mu.field();
    let d = mu.rows();
    if mu.shape() != (d, d * d)
        || eta.shape() != (d, 1)
        || delta.shape() != (d * d, d)
        || eps.shape() != (1, d)
        || s.shape() != (d, d)
    {
        return Err(HopfViolation::Shape);
    }
    let id = Matrix::identity(f, d);
    if delta.kron(&id).mul(delta) != id.kron(delta).mul(delta) {
        return Err(HopfViolation::Coassociativity);
    }
    if eps.kron(&id).mul(delta) != id || id.kron(eps).mul(delta) != id {
        return Err(HopfViolation::CounitLaw);
    }
    let one = eta.column(0);
    if delta.apply(&one) != vec::kron(f, &one, &one) || eps.apply(&one) != vec![1] {
        return Err(HopfViolation::BialgebraCompat);
    }
    let cols = delta.columns();
    for i in 0..d {
        for j in 0..d {
            let prod = mu.column(i * d + j);
            if delta.apply(&prod) != tensor_mul(mu, &cols[i], &cols[j]) {
                return Err(HopfViolation::BialgebraCompat);
            }
            if eps.apply(&prod)[0] != f.mul(eps.get(0, i), eps.get(0, j)) {
                return Err(HopfViolation::BialgebraCompat);
            }
        }
    }
    let ee = eta.mul(eps);
    if mu.mul(&s.kron(&id)).mul(delta) != ee || mu.mul(&id.kron(s)).mul(delta) != ee {
        return Err(HopfViolation::AntipodeLaw);
    }
    Ok(())
}

pub(crate) fn matrix_from_json(f: &Field, rows: &[Vec<i64>], shape: (usize, usize)) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Hopf(HopfViolation::Shape));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for &v in rows.iter().flatten() {
        if v < 0 || v >= f.q() as i64 {
            return Err(Error::CoefficientRange { value: v, p: f.p() });
        }
        data.push(v as Elem);
    }
    Ok(Matrix::new(f, shape.0, shape.1, data))
}

pub(crate) fn matrix_to_json(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|c| c as i64).collect())
        .collect()
}

impl HopfAlgebra {
    pub fn new(algebra: Algebra, comult: Matrix, counit: Matrix, antipode: Matrix) -> Result<HopfAlgebra> {
        hopf_axioms(&algebra.mult_matrix(), &algebra.unit_matrix(), &comult, &counit, &antipode)
            .map_err(Error::Hopf)?;
        Ok(HopfAlgebra {
            algebra,
            comult,
            counit,
            antipode,
            origin: None,
        })
    }

    pub fn from_json(j: &HopfJson) -> Result<HopfAlgebra> {
        let a = Algebra::from_json(&j.algebra)?;
        let f = a.field().clone();
        let d = a.dim();
        HopfAlgebra::new(
            a,
            matrix_from_json(&f, &j.comult, (d * d, d))?,
            matrix_from_json(&f, &j.counit, (1, d))?,
            matrix_from_json(&f, &j.antipode, (d, d))?,
        )
    }

    pub fn to_json(&self) -> HopfJson {
        HopfJson {
            algebra: self.algebra.to_json(),
            comult: matrix_to_json(&self.comult),
            counit: matrix_to_json(&self.counit),
            antipode: matrix_to_json(&self.antipode),
        }
    }

    /// Functions `G → k` with pointwise product, `Δ(e_g) = Σ_{ab=g} e_a ⊗ e_b`,
    /// `ε(e_g) = [g = 1]` and `S(e_g) = e_{g⁻¹}`.
    pub fn constant(g: &FiniteGroup, field: &Field) -> HopfAlgebra {
        let n = g.order();
        let algebra = Algebra::diagonal(field, n);
        let mut comult = Matrix::zeros(field, n * n, n);
        for a in 0..n {
            for b in 0..n {
                comult.set(a * n + b, g.mul(a, b), 1);
            }
        }
        let counit = Matrix::row_vector(field, &vec::unit(n, 0));
        let mut antipode = Matrix::zeros(field, n, n);
        for a in 0..n {
            antipode.set(g.inv(a), a, 1);
        }
        let mut h = HopfAlgebra::new(algebra, comult, counit, antipode).expect("constant Hopf algebra");
        h.origin = Some(g.clone());
        h
    }

    /// Coordinate ring of `μ_n`: `F[x]/(xⁿ − 1)` with `Δ(x) = x ⊗ x`.
    pub fn mu(n: usize, field: &Field) -> Result<HopfAlgebra> {
        if n == 0 {
            return Err(Error::InvalidInput("mu_0 is not finite".into()));
        }
        let mut c = vec![0i64; n + 1];
        c[0] = -1;
        c[n] += 1;
        let algebra = Algebra::quotient_poly(&Poly::from_ints(field, &c))?;
        let mut comult = Matrix::zeros(field, n * n, n);
        let mut antipode = Matrix::zeros(field, n, n);
        for i in 0..n {
            comult.set(i * n + i, i, 1);
            antipode.set((n - i) % n, i, 1);
        }
        let counit = Matrix::row_vector(field, &vec![1; n]);
        HopfAlgebra::new(algebra, comult, counit, antipode)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn origin(&self) -> Option<&FiniteGroup> {
        self.origin.as_ref()
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        Matrix::swap(self.field(), d, d).mul(&self.comult) == self.comult
    }

    pub fn base_change(&self, e: &Embedding) -> HopfAlgebra {
        HopfAlgebra {
            algebra: self.algebra.base_change(e),
            comult: self.comult.base_change(e),
            counit: self.counit.base_change(e),
            antipode: self.antipode.base_change(e),
            origin: self.origin.clone(),
        }
    }

    /// Convolution of two points (`1 × d` rows over the field).
    pub fn convolve(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        Matrix::row_vector(f, &vec::kron(f, a, b)).mul(&self.comult).row(0).to_vec()
    }
}

impl HopfMorphism {
    /// Check that `matrix` is a unital algebra map commuting with `Δ`, `ε`
    /// and `S`.
    pub fn new(source: &HopfAlgebra, target: &HopfAlgebra, matrix: Matrix) -> Result<HopfMorphism> {
        crate::algebra::AlgebraMorphism::new(&source.algebra, &target.algebra, matrix.clone())?;
        if matrix.kron(&matrix).mul(&source.comult) != target.comult.mul(&matrix) {
            return Err(Error::NotAMorphism("comultiplication".into()));
        }
        if target.counit.mul(&matrix) != source.counit {
            return Err(Error::NotAMorphism("counit".into()));
        }
        if matrix.mul(&source.antipode) != target.antipode.mul(&matrix) {
            return Err(Error::NotAMorphism("antipode".into()));
        }
        Ok(HopfMorphism { matrix })
    }
}

/// The group algebra `k[G]`: basis `G`, `Δ(g) = g ⊗ g`, `ε(g) = 1`,
/// `S(g) = g⁻¹`. Not commutative in general, so kept apart from
/// [`HopfAlgebra`].
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub group: FiniteGroup,
    pub mult: Matrix,
    pub unit: Matrix,
    pub comult: Matrix,
    pub counit: Matrix,
    pub antipode: Matrix,
}

impl GroupAlgebra {
    pub fn new(g: &FiniteGroup, field: &Field) -> GroupAlgebra {
        let n = g.order();
        let mut mult = Matrix::zeros(field, n, n * n);
        let mut comult = Matrix::zeros(field, n * n, n);
        let mut antipode = Matrix::zeros(field, n, n);
        for a in 0..n {
            for b in 0..n {
                mult.set(g.mul(a, b), a * n + b, 1);
            }
            comult.set(a * n + a, a, 1);
            antipode.set(g.inv(a), a, 1);
        }
        GroupAlgebra {
            group: g.clone(),
            mult,
            unit: Matrix::column_vector(field, &vec::unit(n, 0)),
            comult,
            counit: Matrix::row_vector(field, &vec![1; n]),
            antipode,
        }
    }

    pub fn check(&self) -> std::result::Result<(), HopfViolation> {
        let f = self.mult.field();
        let n = self.group.order();
        let id = Matrix::identity(f, n);
        if self.mult.mul(&self.mult.kron(&id)) != self.mult.mul(&id.kron(&self.mult))
            || self.mult.mul(&self.unit.kron(&id)) != id
            || self.mult.mul(&id.kron(&self.unit)) != id
        {
            return Err(HopfViolation::Shape);
        }
        hopf_axioms(&self.mult, &self.unit, &self.comult, &self.counit, &self.antipode)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.group.order();
        self.mult.mul(&Matrix::swap(self.mult.field(), n, n)) == self.mult
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.group.order();
        Matrix::swap(self.mult.field(), n, n).mul(&self.comult) == self.comult
    }
}

/// The evaluation pairing `⟨g, φ⟩ = φ(g)` between `k[G]` and `k^G`.
#[derive(Clone, Debug)]
pub struct PairingReport {
    /// `gram[g][h] = ⟨g, e_h⟩`.
    pub gram: Matrix,
    pub nondegenerate: bool,
    /// `⟨gh, φ⟩ = ⟨g ⊗ h, Δφ⟩`
    pub product_vs_coproduct: bool,
    /// `⟨Δg, φ ⊗ ψ⟩ = ⟨g, φψ⟩`
    pub coproduct_vs_product: bool,
    /// `⟨1, φ⟩ = ε(φ)` and `ε(g) = ⟨g, 1⟩`
    pub unit_vs_counit: bool,
    /// `⟨Sg, φ⟩ = ⟨g, Sφ⟩`
    pub antipodes: bool,
}

impl PairingReport {
    pub fn holds(&self) -> bool {
        self.nondegenerate
            && self.product_vs_coproduct
            && self.coproduct_vs_product
            && self.unit_vs_counit
            && self.antipodes
    }
}

pub fn pairing(g: &FiniteGroup, field: &Field) -> PairingReport {
    let kg = GroupAlgebra::new(g, field);
    let fun = HopfAlgebra::constant(g, field);
    let n = g.order();
    let mut gram = Matrix::zeros(field, n, n);
    for a in 0..n {
        // e_h(a) = [a = h]
        gram.set(a, a, 1);
    }
    let pair = |x: &[Elem], y: &[Elem]| vec::dot(field, x, &gram.apply(y));
    let pair2 = |x: &[Elem], y: &[Elem]| vec::dot(field, x, &gram.kron(&gram).apply(y));
    let unit = |i| vec::unit(n, i);
    let mut pvc = true;
    let mut cvp = true;
    let mut anti = true;
    for a in 0..n {
        for b in 0..n {
            for h in 0..n {
                let gh = kg.mult.column(a * n + b);
                let lhs = pair(&gh, &unit(h));
                let rhs = pair2(&vec::kron(field, &unit(a), &unit(b)), &fun.comult.column(h));
                pvc &= lhs == rhs;
                let ph = fun.algebra.mul(&unit(b), &unit(h));
                let lhs = pair2(&kg.comult.column(a), &vec::kron(field, &unit(b), &unit(h)));
                cvp &= lhs == pair(&unit(a), &ph);
            }
            anti &= pair(&kg.antipode.column(a), &unit(b)) == pair(&unit(a), &fun.antipode.column(b));
        }
    }
    let uvc = (0..n).all(|h| {
        pair(&kg.unit.column(0), &unit(h)) == fun.counit.get(0, h)
            && pair(&unit(h), fun.algebra.unit()) == kg.counit.get(0, h)
    });
    PairingReport {
        nondegenerate: gram.rank() == n,
        gram,
        product_vs_coproduct: pvc,
        coproduct_vs_product: cvp,
        unit_vs_counit: uvc,
        antipodes: anti,
    }
}

/// Rational points under convolution; `points[0]` is the counit and
/// `points[i]` is group element `i`.
#[derive(Clone, Debug)]
pub struct PointGroup {
    pub group: FiniteGroup,
    pub points: Vec<Vec<Elem>>,
}

impl PointGroup {
    pub fn index_of(&self, row: &[Elem]) -> Option<usize> {
        self.points.iter().position(|p| p == row)
    }
}

pub fn points_group(h: &HopfAlgebra) -> Result<PointGroup> {
    let mut points: Vec<Vec<Elem>> = h
        .algebra
        .points()
        .into_iter()
        .map(|m| m.matrix.row(0).to_vec())
        .collect();
    let eps = h.counit.row(0).to_vec();
    let e = points
        .iter()
        .position(|p| *p == eps)
        .ok_or_else(|| Error::InvalidInput("counit is not among the points".into()))?;
    let c = points.remove(e);
    points.insert(0, c);
    let n = points.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let c = h.convolve(&points[a], &points[b]);
            table[a * n + b] = points
                .iter()
                .position(|p| *p == c)
                .ok_or_else(|| Error::InvalidInput("points not closed under convolution".into()))?;
        }
    }
    Ok(PointGroup {
        group: FiniteGroup::new(n, table)?,
        points,
    })
}

/// The canonical bijection `g ↦ (evaluation at g)` for `k^G`, as a map
/// from `G` to point indices. It is checked to be a group isomorphism.
pub fn recovery_isomorphism(g: &FiniteGroup, pg: &PointGroup) -> Option<GroupHom> {
    let n = g.order();
    let map: Option<Vec<usize>> = (0..n).map(|a| pg.index_of(&vec::unit(n, a))).collect();
    let map = map?;
    (pg.group.order() == n && g.is_hom(&pg.group, &map)).then_some(map)
}

/// π₀ of the underlying algebra with its induced Hopf structure, and the
/// inclusion as a Hopf morphism.
pub fn pi0_hopf(h: &HopfAlgebra) -> Result<(HopfAlgebra, HopfMorphism)> {
    let sub = h.algebra.pi0();
    let p = sub.basis.clone();
    let comult = p
        .kron(&p)
        .solve_matrix(&h.comult.mul(&p))
        .ok_or_else(|| Error::InvalidInput("separable part is not stable under comultiplication".into()))?;
    let antipode = p
        .solve_matrix(&h.antipode.mul(&p))
        .ok_or_else(|| Error::InvalidInput("separable part is not stable under the antipode".into()))?;
    let counit = h.counit.mul(&p);
    let mut small = HopfAlgebra::new(sub.induced, comult, counit, antipode)?;
    if small.dim() == h.dim() {
        small.origin = h.origin.clone();
    }
    let incl = HopfMorphism::new(&small, h, p)?;
    Ok((small, incl))
}

/// `H / (ker ε|π₀)·H` with its Hopf structure and the quotient map.
pub fn identity_component(h: &HopfAlgebra) -> Result<(HopfAlgebra, Matrix)> {
    let f = h.field();
    let d = h.dim();
    let p = h.algebra.pi0().basis;
    let aug: Vec<Vec<Elem>> = h.counit.mul(&p).kernel().iter().map(|c| p.apply(c)).collect();
    let mut gens = Vec::new();
    for v in &aug {
        for j in 0..d {
            gens.push(h.algebra.mul(v, &vec::unit(d, j)));
        }
    }
    let (quot, q) = h.algebra.quotient(&gens)?;
    let r = quot.dim();
    let section_cols: Vec<Vec<Elem>> = (0..r)
        .map(|k| q.solve(&vec::unit(r, k)).expect("quotient map is onto"))
        .collect();
    let s = Matrix::from_columns(f, d, &section_cols);
    let comult = q.kron(&q).mul(&h.comult).mul(&s);
    let counit = h.counit.mul(&s);
    let antipode = q.mul(&h.antipode).mul(&s);
    if comult.mul(&q) != q.kron(&q).mul(&h.comult) || counit.mul(&q) != h.counit || antipode.mul(&q) != q.mul(&h.antipode) {
        return Err(Error::InvalidInput("augmentation ideal of the separable part is not a Hopf ideal".into()));
    }
    Ok((HopfAlgebra::new(quot, comult, counit, antipode)?, q))
}

/// The source of [`hopf_homs`] must be split separable; this records its
/// primitive idempotents matched with its points.
struct SplitSource {
    /// `idem[j]` is the idempotent with `points.points[j](idem[j]) = 1`.
    idem: Vec<Vec<Elem>>,
    points: PointGroup,
}

fn split_source(h: &HopfAlgebra) -> Result<SplitSource> {
    let points = points_group(h)?;
    if points.points.len() != h.dim() {
        return Err(Error::InvalidInput("source Hopf algebra is not split separable".into()));
    }
    let prim = h.algebra.base_primitive_idempotents(0);
    let idem = points
        .points
        .iter()
        .map(|chi| {
            prim.iter()
                .find(|e| vec::dot(h.field(), chi, e) == 1)
                .expect("each point is supported on one idempotent")
                .clone()
        })
        .collect();
    Ok(SplitSource { idem, points })
}

/// All Hopf morphisms `h1 → h2` for split separable `h1`.
///
/// An algebra map from `h1` sends its primitive idempotents to a complete
/// orthogonal family in `h2`, so it is a function `ψ` from the primitive
/// idempotents `g_i` of `h2` to those of `h1`. Compatibility with `Δ` says
/// `ψ(i) = ψ(a)·ψ(b)` whenever `Δ(g_i)(g_a ⊗ g_b) ≠ 0`, and this is pruned
/// during backtracking. `budget` bounds the number of search nodes.
pub fn hopf_homs(h1: &HopfAlgebra, h2: &HopfAlgebra, budget: u128) -> Result<Vec<HopfMorphism>> {
    if h1.field() != h2.field() {
        return Err(Error::FieldMismatch);
    }
    let f = h1.field();
    let src = split_source(h1)?;
    let r = src.idem.len();
    let g = h2.algebra.base_primitive_idempotents(0);
    let s = g.len();
    let tensor = h2.algebra.tensor(&h2.algebra)?;
    let delta_g: Vec<Vec<Elem>> = g.iter().map(|gi| h2.comult.apply(gi)).collect();
    // constraints[k]: (a, b, support) checked once index k is assigned
    let mut constraints: Vec<Vec<(usize, usize, Vec<usize>)>> = vec![Vec::new(); s];
    for a in 0..s {
        for b in 0..s {
            let gab = vec::kron(f, &g[a], &g[b]);
            let support: Vec<usize> = (0..s)
                .filter(|&i| tensor.mul(&delta_g[i], &gab).iter().any(|&c| c != 0))
                .collect();
            let last = support.iter().copied().chain([a, b]).max().expect("nonempty");
            constraints[last].push((a, b, support));
        }
    }
    let counit_idx: Vec<bool> = g.iter().map(|gi| h2.counit.apply(gi)[0] == 1).collect();
    let table = &src.points.group;
    let mut psi = vec![usize::MAX; s];
    let mut found = Vec::new();
    let mut nodes: u128 = 0;
    let naive = (r as u128).checked_pow(s as u32).unwrap_or(u128::MAX);

    fn recurse(
        k: usize,
        psi: &mut Vec<usize>,
        r: usize,
        constraints: &[Vec<(usize, usize, Vec<usize>)>],
        counit_idx: &[bool],
        table: &FiniteGroup,
        found: &mut Vec<Vec<usize>>,
        nodes: &mut u128,
        budget: u128,
    ) -> bool {
        if k == psi.len() {
            found.push(psi.clone());
            return true;
        }
        for j in 0..r {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            if counit_idx[k] && j != 0 {
                continue;
            }
            psi[k] = j;
            let ok = constraints[k]
                .iter()
                .all(|(a, b, sup)| sup.iter().all(|&i| psi[i] == table.mul(psi[*a], psi[*b])));
            if ok && !recurse(k + 1, psi, r, constraints, counit_idx, table, found, nodes, budget) {
                return false;
            }
        }
        psi[k] = usize::MAX;
        true
    }

    if !recurse(0, &mut psi, r, &constraints, &counit_idx, table, &mut found, &mut nodes, budget) {
        return Err(Error::SearchBudgetExceeded { needed: naive, budget });
    }
    let d1 = h1.dim();
    let d2 = h2.dim();
    let mut out = Vec::new();
    for psi in found {
        let images: Vec<Vec<Elem>> = (0..r)
            .map(|j| {
                (0..s)
                    .filter(|&i| psi[i] == j)
                    .fold(vec![0; d2], |acc, i| vec::add(f, &acc, &g[i]))
            })
            .collect();
        let cols: Vec<Vec<Elem>> = (0..d1)
            .map(|k| {
                (0..r).fold(vec![0; d2], |acc, j| {
                    vec::add(f, &acc, &vec::scale(f, &images[j], src.points.points[j][k]))
                })
            })
            .collect();
        let m = Matrix::from_columns(f, d2, &cols);
        if let Ok(hm) = HopfMorphism::new(h1, h2, m) {
            out.push(hm);
        }
    }
    out.sort_by(|a, b| a.matrix.data().cmp(b.matrix.data()));
    Ok(out)
}

/// `k^α : k^{Γ'} → k^Γ`, `e_{γ'} ↦ Σ_{α(γ) = γ'} e_γ`, for `α : Γ → Γ'`.
pub fn constant_map(gamma: &FiniteGroup, gamma2: &FiniteGroup, alpha: &[usize], field: &Field) -> Matrix {
    let mut m = Matrix::zeros(field, gamma.order(), gamma2.order());
    for (g, &a) in alpha.iter().enumerate() {
        m.set(g, a, 1);
    }
    m
}

/// Outcome of comparing `Hopf(k^Γ, H)` with `Hom(π₀ points, Γ)`.
#[derive(Clone, Debug, Serialize)]
pub struct CoreflectionReport {
    pub gamma_order: usize,
    pub hopf_side: usize,
    pub group_side: usize,
    /// Degree of the field extension over which π₀(H) splits.
    pub splitting_degree: u32,
    /// Whether rational points → Frobenius coinvariants of geometric points
    /// is already bijective (always so over a splitting field).
    pub canonical_restriction_bijective: bool,
    /// Index into the Hopf side ↦ the corresponding group homomorphism.
    pub bijection: Vec<(usize, GroupHom)>,
    pub factors_through_pi0: bool,
    pub naturality_checks: usize,
    pub naturality_ok: bool,
    pub holds: bool,
}

/// Data for turning a Hopf map `k^Γ → H` into a group homomorphism.
struct Classifier {
    incl: Matrix,
    geo_points: Vec<Vec<Elem>>,
    embed: Embedding,
    /// geometric point index ↦ coinvariant class
    proj: Vec<usize>,
    /// rational point index ↦ coinvariant class (a group isomorphism)
    theta: Vec<usize>,
}

impl Classifier {
    /// `φ' = ι⁻¹ φ`, then `χ ↦ γ` with `χ(φ'(e_γ)) = 1`, pushed through the
    /// coinvariants and pulled back along `θ`.
    fn classify(&self, phi: &Matrix, gamma_order: usize) -> Option<GroupHom> {
        let inner = self.incl.solve_matrix(phi)?;
        let lf = self.embed.target();
        let inner_l = inner.base_change(&self.embed);
        let geo: Vec<usize> = self
            .geo_points
            .iter()
            .map(|chi| {
                (0..gamma_order)
                    .find(|&c| vec::dot(lf, chi, &inner_l.column(c)) == 1)
                    .expect("points of a constant Hopf algebra")
            })
            .collect();
        let classes = *self.proj.iter().max()? + 1;
        let mut on_class = vec![usize::MAX; classes];
        for (x, &c) in self.proj.iter().enumerate() {
            if on_class[c] == usize::MAX {
                on_class[c] = geo[x];
            } else if on_class[c] != geo[x] {
                return None;
            }
        }
        Some(self.theta.iter().map(|&c| on_class[c]).collect())
    }
}

fn classifier(h: &HopfAlgebra) -> Result<(Classifier, PointGroup, u32, bool)> {
    let (p, incl) = pi0_hopf(h)?;
    let rational = points_group(&p)?;
    let m = p.algebra.splitting_degree(0);
    let (embed, _) = p.algebra.split_extension(0)?;
    let pl = p.base_change(&embed);
    let geo = points_group(&pl)?;
    let lf = embed.target().clone();
    let q = p.field().q() as u64;
    let sigma: Vec<usize> = geo
        .points
        .iter()
        .map(|chi| {
            let s: Vec<Elem> = chi.iter().map(|&c| lf.pow(c, q)).collect();
            geo.index_of(&s).expect("Frobenius permutes geometric points")
        })
        .collect();
    let gens: Vec<usize> = (0..geo.group.order())
        .map(|x| geo.group.mul(geo.group.inv(x), sigma[x]))
        .collect();
    let (coinv, proj) = geo.group.quotient_by_normal_closure(&gens);
    let canonical: Vec<usize> = rational
        .points
        .iter()
        .map(|chi| {
            let lifted: Vec<Elem> = chi.iter().map(|&c| embed.apply(c)).collect();
            proj[geo.index_of(&lifted).expect("rational points are geometric points")]
        })
        .collect();
    let canonical_ok = {
        let mut s = canonical.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == coinv.order() && rational.group.is_hom(&coinv, &canonical)
    };
    let theta = if canonical_ok {
        canonical
    } else {
        rational
            .group
            .find_isomorphism(&coinv)
            .ok_or_else(|| Error::InvalidInput("rational points and Frobenius coinvariants differ".into()))?
    };
    Ok((
        Classifier {
            incl: incl.matrix,
            geo_points: geo.points,
            embed,
            proj,
            theta,
        },
        rational,
        m,
        canonical_ok,
    ))
}

/// Enumerate both sides independently and exhibit the bijection between
/// `Hopf(k^Γ, H)` and group homomorphisms from the points of `π₀(H)` to
/// `Γ`. Naturality is spot-checked along homomorphisms `Γ → Γ'` for `Γ'`
/// in `{Γ, Z/2}`.
pub fn coreflection_check(gamma: &FiniteGroup, h: &HopfAlgebra, budget: u128) -> Result<CoreflectionReport> {
    let f = h.field();
    let kg = HopfAlgebra::constant(gamma, f);
    let left = hopf_homs(&kg, h, budget)?;
    let (cls, rational, m, canonical_ok) = classifier(h)?;
    let right = rational.group.homs(gamma);
    let mut bijection = Vec::new();
    let mut factors = true;
    for (i, phi) in left.iter().enumerate() {
        match cls.classify(&phi.matrix, gamma.order()) {
            Some(hom) => bijection.push((i, hom)),
            None => factors = false,
        }
    }
    let mut images: Vec<&GroupHom> = bijection.iter().map(|(_, h)| h).collect();
    images.sort();
    images.dedup();
    let bijective = factors
        && images.len() == left.len()
        && left.len() == right.len()
        && images.iter().all(|x| right.contains(x));

    let mut checks = 0;
    let mut nat_ok = true;
    for target in [gamma.clone(), FiniteGroup::cyclic(2)] {
        for alpha in gamma.homs(&target).into_iter().take(4) {
            let ka = constant_map(gamma, &target, &alpha, f);
            let kt = HopfAlgebra::constant(&target, f);
            for (i, hom) in &bijection {
                let composed = left[*i].matrix.mul(&ka);
                checks += 1;
                let ok = HopfMorphism::new(&kt, h, composed.clone()).is_ok()
                    && cls.classify(&composed, target.order())
                        == Some(hom.iter().map(|&x| alpha[x]).collect::<Vec<_>>());
                nat_ok &= ok;
            }
        }
    }
    Ok(CoreflectionReport {
        gamma_order: gamma.order(),
        hopf_side: left.len(),
        group_side: right.len(),
        splitting_degree: m,
        canonical_restriction_bijective: canonical_ok,
        bijection,
        factors_through_pi0: factors,
        naturality_checks: checks,
        naturality_ok: nat_ok,
        holds: bijective && nat_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn validate_examples() {
        let h = HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f(5));
        let bad = HopfAlgebra::new(
            h.algebra().clone(),
            h.comult().clone(),
            h.counit().clone(),
            Matrix::zeros(&f(5), 2, 2),
        );
        assert_eq!(bad.unwrap_err(), Error::Hopf(HopfViolation::AntipodeLaw));
        let mut c = h.comult().clone();
        c.set(0, 0, 0);
        let bad = HopfAlgebra::new(h.algebra().clone(), c, h.counit().clone(), h.antipode().clone());
        assert!(matches!(bad.unwrap_err(), Error::Hopf(_)));
        assert_eq!(GroupAlgebra::new(&s3(), &f(7)).check(), Ok(()));
    }

    #[test]
    fn constant_examples() {
        let t = HopfAlgebra::constant(&FiniteGroup::trivial(), &f(3));
        assert_eq!(t.dim(), 1);
        assert!(t.comult().is_identity() && t.antipode().is_identity());
        let z2 = HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f(5));
        // Δ(e0) = e0⊗e0 + e1⊗e1
        assert_eq!(z2.comult().column(0), vec![1, 0, 0, 1]);
        let h = HopfAlgebra::constant(&s3(), &f(7));
        assert_eq!(h.dim(), 6);
        assert!(h.algebra().is_separable());
        assert_eq!(h.algebra().pi0().dim(), 6);
    }

    #[test]
    fn group_algebra_examples() {
        let t = GroupAlgebra::new(&FiniteGroup::trivial(), &f(5));
        assert!(t.mult.is_identity());
        let rep = pairing(&FiniteGroup::cyclic(3), &f(7));
        assert!(rep.gram.is_identity());
        assert!(rep.holds());
        let z2 = GroupAlgebra::new(&FiniteGroup::cyclic(2), &f(3));
        assert!(z2.is_commutative() && z2.is_cocommutative());
        let s = GroupAlgebra::new(&s3(), &f(5));
        assert!(!s.is_commutative() && s.is_cocommutative());
        for (_, g) in FiniteGroup::catalog() {
            assert!(pairing(&g, &f(5)).holds());
        }
    }

    #[test]
    fn points_group_examples() {
        let z2 = points_group(&HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f(5))).unwrap();
        assert_eq!(z2.group.order(), 2);
        let pg = points_group(&HopfAlgebra::constant(&s3(), &f(7))).unwrap();
        assert_eq!(pg.group.order(), 6);
        assert!(!pg.group.is_abelian());
        assert!(recovery_isomorphism(&s3(), &pg).is_some());
        let mu3 = HopfAlgebra::mu(3, &f(2)).unwrap();
        assert_eq!(points_group(&mu3).unwrap().group.order(), 1);
        assert!(points_group(&HopfAlgebra::mu(4, &f(5)).unwrap()).unwrap().group.is_isomorphic(&FiniteGroup::cyclic(4)));
    }

    #[test]
    fn recovery_on_catalog() {
        for (name, g) in FiniteGroup::catalog() {
            let pg = points_group(&HopfAlgebra::constant(&g, &f(3))).unwrap();
            assert!(recovery_isomorphism(&g, &pg).is_some(), "{name}");
        }
    }

    #[test]
    fn pi0_hopf_examples() {
        let h = HopfAlgebra::constant(&FiniteGroup::cyclic(3), &f(2));
        assert_eq!(pi0_hopf(&h).unwrap().0.dim(), 3);
        let (p, incl) = pi0_hopf(&HopfAlgebra::mu(6, &f(2)).unwrap()).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(incl.matrix.shape(), (6, 3));
        let mu3 = HopfAlgebra::mu(3, &f(2)).unwrap();
        assert!(p.algebra().is_separable());
        assert_eq!(points_group(&p).unwrap().group.order(), points_group(&mu3).unwrap().group.order());
        for pr in [2, 3, 5] {
            assert_eq!(pi0_hopf(&HopfAlgebra::mu(pr as usize, &f(pr)).unwrap()).unwrap().0.dim(), 1);
        }
    }

    #[test]
    fn identity_component_examples() {
        let h = HopfAlgebra::constant(&s3(), &f(7));
        assert_eq!(identity_component(&h).unwrap().0.dim(), 1);
        let (c, q) = identity_component(&HopfAlgebra::mu(6, &f(2)).unwrap()).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.algebra().pi0().dim(), 1);
        assert_eq!(q.shape(), (2, 6));
        let mu3 = HopfAlgebra::mu(3, &f(3)).unwrap();
        assert_eq!(identity_component(&mu3).unwrap().0.dim(), 3);
    }

    #[test]
    fn connected_etale_dimensions() {
        for p in [2u32, 3, 5] {
            for n in 1..=8 {
                let h = HopfAlgebra::mu(n, &f(p)).unwrap();
                let a = pi0_hopf(&h).unwrap().0.dim();
                let b = identity_component(&h).unwrap().0.dim();
                assert_eq!(a * b, n, "mu_{n} over F_{p}");
            }
        }
    }

    /// Brute force: all complete orthogonal idempotent families, checked as
    /// Hopf maps.
    fn brute_homs(h1: &HopfAlgebra, h2: &HopfAlgebra) -> usize {
        let idem = h2.algebra().idempotents_exhaustive(1 << 16).unwrap();
        let r = h1.dim();
        let mut count = 0;
        let total = idem.len().pow(r as u32);
        for code in 0..total {
            let cols: Vec<Vec<Elem>> = (0..r).map(|j| idem[code / idem.len().pow(j as u32) % idem.len()].clone()).collect();
            let m = Matrix::from_columns(h1.field(), h2.dim(), &cols);
            if HopfMorphism::new(h1, h2, m).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hopf_homs_examples() {
        let f7 = f(7);
        let kz2 = HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f7);
        let ks3 = HopfAlgebra::constant(&s3(), &f7);
        assert_eq!(hopf_homs(&kz2, &ks3, DEFAULT_BUDGET).unwrap().len(), 2);
        let k = HopfAlgebra::constant(&FiniteGroup::trivial(), &f7);
        assert_eq!(hopf_homs(&ks3, &k, DEFAULT_BUDGET).unwrap().len(), 1);
        let kz3 = HopfAlgebra::constant(&FiniteGroup::cyclic(3), &f7);
        assert_eq!(hopf_homs(&kz3, &kz2, DEFAULT_BUDGET).unwrap().len(), 1);
        assert!(matches!(
            hopf_homs(&kz2, &ks3, 3),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn hopf_homs_match_brute_force() {
        let f3 = f(3);
        let cases = [
            (HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f3), HopfAlgebra::mu(4, &f3).unwrap()),
            (HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f3), HopfAlgebra::mu(6, &f3).unwrap()),
            (HopfAlgebra::constant(&FiniteGroup::cyclic(3), &f3), HopfAlgebra::constant(&FiniteGroup::cyclic(3), &f3)),
            (HopfAlgebra::constant(&FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)), &f3), HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f3)),
            (HopfAlgebra::constant(&FiniteGroup::cyclic(2), &f3), HopfAlgebra::mu(2, &f3).unwrap()),
        ];
        for (h1, h2) in &cases {
            assert_eq!(hopf_homs(h1, h2, DEFAULT_BUDGET).unwrap().len(), brute_homs(h1, h2));
        }
    }

    #[test]
    fn coreflection_examples() {
        let f7 = f(7);
        let rep = coreflection_check(&FiniteGroup::cyclic(2), &HopfAlgebra::constant(&s3(), &f7), DEFAULT_BUDGET).unwrap();
        assert_eq!((rep.hopf_side, rep.group_side), (2, 2));
        assert!(rep.holds);
        for p in [2u32, 3] {
            let h = HopfAlgebra::mu(p as usize, &f(p)).unwrap();
            let rep = coreflection_check(&s3(), &h, DEFAULT_BUDGET).unwrap();
            assert_eq!((rep.hopf_side, rep.group_side), (1, 1));
            assert!(rep.holds);
        }
        let rep = coreflection_check(&FiniteGroup::cyclic(3), &HopfAlgebra::mu(6, &f(2)).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!((rep.hopf_side, rep.group_side), (1, 1));
        assert!(rep.holds);
    }

    #[test]
    fn coreflection_over_non_split_base() {
        // μ4 over F3: rational points {±1}, geometric points Z/4 with
        // Frobenius acting by inversion
        let h = HopfAlgebra::mu(4, &f(3)).unwrap();
        let rep = coreflection_check(&FiniteGroup::cyclic(2), &h, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.splitting_degree, 2);
        assert!(!rep.canonical_restriction_bijective);
        assert_eq!((rep.hopf_side, rep.group_side), (2, 2));
        assert!(rep.holds);
    }

    #[test]
    fn json_roundtrip() {
        let h = HopfAlgebra::mu(3, &f(5)).unwrap();
        let s = serde_json::to_string(&h.to_json()).unwrap();
        let back: HopfJson = serde_json::from_str(&s).unwrap();
        assert_eq!(HopfAlgebra::from_json(&back).unwrap(), h);
    }
}
