//! Commutative separable (special commutative Frobenius) monoids in `Rep(G)`,
//! the linearization of finite G-sets and the spectrum functor back.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{CsepViolation, Error, Result};
use crate::field::Field;
use crate::group::{FiniteGroup, GroupHom};
use crate::gset::{self, EquivariantMap, GSet};
use crate::hopf::{self, matrix_from_json, matrix_to_json, HopfAlgebra};
use crate::matrix::{vec, Matrix};
use crate::rep::{self, Comodule, RepJson, Representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMonoid {
    carrier: Representation,
    mu: Matrix,
    eta: Matrix,
    delta: Matrix,
    eps: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobeniusJson {
    #[serde(flatten)]
    pub carrier: RepJson,
    pub mu: Vec<Vec<i64>>,
    pub eta: Vec<Vec<i64>>,
    pub delta: Vec<Vec<i64>>,
    pub eps: Vec<Vec<i64>>,
}

/// Every axiom in checking order, with the first failure named.
#[derive(Clone, Debug, Serialize)]
pub struct CsepReport {
    pub checks: Vec<(CsepViolation, bool)>,
    pub first_failure: Option<CsepViolation>,
}

impl CsepReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn failed(&self, axiom: CsepViolation) -> bool {
        self.checks.iter().any(|&(a, ok)| a == axiom && !ok)
    }
}

/// Check every axiom as a matrix identity. The Frobenius law is tested as
/// `(μ ⊗ 1)(1 ⊗ δ) = δ μ = (1 ⊗ μ)(δ ⊗ 1)`, composition right to left.
pub fn check_csep(carrier: &Representation, mu: &Matrix, eta: &Matrix, delta: &Matrix, eps: &Matrix) -> CsepReport {
    use CsepViolation::*;
    let f = carrier.field();
    let n = carrier.dim();
    let shape_ok = mu.shape() == (n, n * n)
        && eta.shape() == (n, 1)
        && delta.shape() == (n * n, n)
        && eps.shape() == (1, n)
        && [mu, eta, delta, eps].iter().all(|m| m.field() == f);
    if !shape_ok {
        return CsepReport {
            checks: vec![(Shape, false)],
            first_failure: Some(Shape),
        };
    }
    let i = Matrix::identity(f, n);
    let s = Matrix::swap(f, n, n);
    let rho = |g: usize| carrier.matrix(g);
    let gens = carrier.group().generators();
    let checks = vec![
        (Shape, true),
        (Associativity, mu.mul(&mu.kron(&i)) == mu.mul(&i.kron(mu))),
        (Unit, mu.mul(&eta.kron(&i)) == i && mu.mul(&i.kron(eta)) == i),
        (Commutativity, mu.mul(&s) == *mu),
        (Coassociativity, delta.kron(&i).mul(delta) == i.kron(delta).mul(delta)),
        (Counit, eps.kron(&i).mul(delta) == i && i.kron(eps).mul(delta) == i),
        (Cocommutativity, s.mul(delta) == *delta),
        (Special, mu.mul(delta) == i),
        (Frobenius, {
            let dm = delta.mul(mu);
            mu.kron(&i).mul(&i.kron(delta)) == dm && i.kron(mu).mul(&delta.kron(&i)) == dm
        }),
        (
            Equivariance,
            gens.iter().all(|&g| {
                let r = rho(g);
                let rr = r.kron(r);
                mu.mul(&rr) == r.mul(mu) && r.mul(eta) == *eta && delta.mul(r) == rr.mul(delta) && eps.mul(r) == *eps
            }),
        ),
    ];
    let first_failure = checks.iter().find(|c| !c.1).map(|c| c.0);
    CsepReport { checks, first_failure }
}

impl FrobeniusMonoid {
    pub fn new(carrier: Representation, mu: Matrix, eta: Matrix, delta: Matrix, eps: Matrix) -> Result<FrobeniusMonoid> {
        if let Some(v) = check_csep(&carrier, &mu, &eta, &delta, &eps).first_failure {
            return Err(Error::Csep(v));
        }
        Ok(FrobeniusMonoid {
            carrier,
            mu,
            eta,
            delta,
            eps,
        })
    }

    /// The comonoid dual to `μ` under the trace form, `ε = Tr`. Requires
    /// the trace form to be nondegenerate and `G` to act by automorphisms.
    pub fn from_separable_algebra(carrier: Representation, algebra: &Algebra) -> Result<FrobeniusMonoid> {
        let f = algebra.field();
        let n = algebra.dim();
        if carrier.dim() != n || carrier.field() != f {
            return Err(Error::DimensionMismatch("carrier and algebra".into()));
        }
        let b = algebra.trace_form();
        let binv = b.inverse().ok_or(Error::Csep(CsepViolation::Special))?;
        let mu = algebra.mult_matrix();
        // Casimir Σ_i e_i ⊗ e_i^∨ with e_i^∨ = Σ_j (B⁻¹)_{ji} e_j
        let mut cas = Matrix::zeros(f, n * n, 1);
        for i in 0..n {
            for j in 0..n {
                cas.set(i * n + j, 0, binv.get(j, i));
            }
        }
        let id = Matrix::identity(f, n);
        let delta = id.kron(&mu).mul(&cas.kron(&id));
        let eps = Matrix::row_vector(f, &(0..n).map(|i| algebra.trace(&vec::unit(n, i))).collect::<Vec<_>>());
        let eta = Matrix::column_vector(f, algebra.unit());
        FrobeniusMonoid::new(carrier, mu, eta, delta, eps)
    }

    pub fn from_json(j: &FrobeniusJson) -> Result<FrobeniusMonoid> {
        let carrier = Representation::from_json(&j.carrier)?;
        let f = carrier.field().clone();
        let n = carrier.dim();
        let shape = |e: Error| match e {
            Error::Hopf(_) => Error::Csep(CsepViolation::Shape),
            other => other,
        };
        FrobeniusMonoid::new(
            carrier,
            matrix_from_json(&f, &j.mu, (n, n * n)).map_err(shape)?,
            matrix_from_json(&f, &j.eta, (n, 1)).map_err(shape)?,
            matrix_from_json(&f, &j.delta, (n * n, n)).map_err(shape)?,
            matrix_from_json(&f, &j.eps, (1, n)).map_err(shape)?,
        )
    }

    pub fn to_json(&self) -> FrobeniusJson {
        FrobeniusJson {
            carrier: self.carrier.to_json(),
            mu: matrix_to_json(&self.mu),
            eta: matrix_to_json(&self.eta),
            delta: matrix_to_json(&self.delta),
            eps: matrix_to_json(&self.eps),
        }
    }

    pub fn carrier(&self) -> &Representation {
        &self.carrier
    }

    pub fn field(&self) -> &Field {
        self.carrier.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn eps(&self) -> &Matrix {
        &self.eps
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::from_mult_matrix(&self.mu, &self.eta.column(0)).expect("validated monoid")
    }

    /// Gram matrix of the pairing `ε ∘ μ`.
    pub fn pairing(&self) -> Matrix {
        let n = self.dim();
        let row = self.eps.mul(&self.mu);
        Matrix::new(self.field(), n, n, row.data().to_vec())
    }

    /// Transport along an invertible `p : V → V'`.
    pub fn twist(&self, p: &Matrix) -> Result<FrobeniusMonoid> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidInput("twist is singular".into()))?;
        FrobeniusMonoid::new(
            self.carrier.conjugate(p)?,
            p.mul(&self.mu).mul(&inv.kron(&inv)),
            p.mul(&self.eta),
            p.kron(p).mul(&self.delta).mul(&inv),
            self.eps.mul(&inv),
        )
    }

    pub fn report(&self) -> CsepReport {
        check_csep(&self.carrier, &self.mu, &self.eta, &self.delta, &self.eps)
    }
}

/// `k^X` with the permutation action, pointwise product and `δ(e_x) = e_x ⊗ e_x`.
pub fn linearize(x: &GSet, f: &Field) -> Result<FrobeniusMonoid> {
    let n = x.size();
    if n == 0 {
        return Err(Error::Empty);
    }
    let carrier = Representation::permutation(x.group(), f, n, |g, p| x.act(g, p))?;
    let mut mu = Matrix::zeros(f, n, n * n);
    let mut delta = Matrix::zeros(f, n * n, n);
    for p in 0..n {
        mu.set(p, p * n + p, 1);
        delta.set(p * n + p, p, 1);
    }
    let eta = Matrix::column_vector(f, &vec![1; n]);
    let eps = Matrix::row_vector(f, &vec![1; n]);
    FrobeniusMonoid::new(carrier, mu, eta, delta, eps)
}

/// Primitive idempotents of the carrier algebra with the induced G-set.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub gset: GSet,
    /// Sorted in decreasing coordinate order, so that `e_x` of `k^X` sits at `x`.
    pub idempotents: Vec<AlgebraElement>,
}

impl Spectrum {
    /// Columns are the idempotents.
    pub fn basis(&self, f: &Field) -> Matrix {
        Matrix::from_columns(f, self.idempotents.len(), &self.idempotents)
    }
}

pub fn spectrum(m: &FrobeniusMonoid, seed: u64) -> Result<Spectrum> {
    let a = m.algebra();
    let (_, mut idem) = a.primitive_idempotents(false, seed)?;
    if idem.len() != m.dim() {
        return Err(Error::InvalidInput("carrier algebra is not split separable".into()));
    }
    idem.sort_by(|x, y| y.cmp(x));
    let n = idem.len();
    let g = m.carrier.group();
    let mut action = vec![0; g.order() * n];
    for h in 0..g.order() {
        for (p, e) in idem.iter().enumerate() {
            let img = m.carrier.matrix(h).apply(e);
            action[h * n + p] = idem
                .iter()
                .position(|x| *x == img)
                .ok_or_else(|| Error::Representation("group does not act by algebra automorphisms".into()))?;
        }
    }
    Ok(Spectrum {
        gset: GSet::new(g, n, action)?,
        idempotents: idem,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComonoidMorphism {
    pub source: FrobeniusMonoid,
    pub target: FrobeniusMonoid,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidMorphism {
    pub source: FrobeniusMonoid,
    pub target: FrobeniusMonoid,
    pub matrix: Matrix,
}

fn equivariant(s: &FrobeniusMonoid, t: &FrobeniusMonoid, m: &Matrix) -> bool {
    s.carrier.group() == t.carrier.group()
        && s.carrier
            .group()
            .generators()
            .iter()
            .all(|&g| t.carrier.matrix(g).mul(m) == m.mul(s.carrier.matrix(g)))
}

impl ComonoidMorphism {
    pub fn new(source: &FrobeniusMonoid, target: &FrobeniusMonoid, matrix: Matrix) -> Result<ComonoidMorphism> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch("comonoid morphism shape".into()));
        }
        if !equivariant(source, target, &matrix) {
            return Err(Error::NotAMorphism("not equivariant".into()));
        }
        if matrix.kron(&matrix).mul(&source.delta) != target.delta.mul(&matrix) || target.eps.mul(&matrix) != source.eps {
            return Err(Error::NotAMorphism("does not preserve δ and ε".into()));
        }
        Ok(ComonoidMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &FrobeniusMonoid) -> ComonoidMorphism {
        ComonoidMorphism::new(m, m, Matrix::identity(m.field(), m.dim())).expect("identity")
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &ComonoidMorphism) -> Result<ComonoidMorphism> {
        if self.target != then.source {
            return Err(Error::NotAMorphism("not composable".into()));
        }
        ComonoidMorphism::new(&self.source, &then.target, then.matrix.mul(&self.matrix))
    }

    pub fn is_monoid_morphism(&self) -> bool {
        monoid_laws(&self.source, &self.target, &self.matrix)
    }
}

fn monoid_laws(s: &FrobeniusMonoid, t: &FrobeniusMonoid, m: &Matrix) -> bool {
    m.mul(&s.mu) == t.mu.mul(&m.kron(m)) && m.mul(&s.eta) == t.eta
}

impl MonoidMorphism {
    pub fn new(source: &FrobeniusMonoid, target: &FrobeniusMonoid, matrix: Matrix) -> Result<MonoidMorphism> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch("monoid morphism shape".into()));
        }
        if !equivariant(source, target, &matrix) {
            return Err(Error::NotAMorphism("not equivariant".into()));
        }
        if !monoid_laws(source, target, &matrix) {
            return Err(Error::NotAMorphism("does not preserve μ and η".into()));
        }
        Ok(MonoidMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn compose(&self, then: &MonoidMorphism) -> Result<MonoidMorphism> {
        if self.target != then.source {
            return Err(Error::NotAMorphism("not composable".into()));
        }
        MonoidMorphism::new(&self.source, &then.target, then.matrix.mul(&self.matrix))
    }
}

/// `X ≅ spectrum(linearize(X))`, `x ↦ [e_x]`.
pub fn roundtrip_gset(x: &GSet, f: &Field, seed: u64) -> Result<EquivariantMap> {
    let m = linearize(x, f)?;
    let s = spectrum(&m, seed)?;
    let n = x.size();
    let map = (0..n)
        .map(|p| {
            s.idempotents
                .iter()
                .position(|e| *e == vec::unit(n, p))
                .ok_or_else(|| Error::GSet("basis vector is not a primitive idempotent".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    EquivariantMap::new(x, &s.gset, map)
}

/// `M ≅ linearize(spectrum(M))`, sending each primitive idempotent to its basis vector.
pub fn roundtrip_monoid(m: &FrobeniusMonoid, seed: u64) -> Result<(Spectrum, ComonoidMorphism)> {
    let s = spectrum(m, seed)?;
    let lin = linearize(&s.gset, m.field())?;
    let p = s.basis(m.field()).inverse().expect("primitive idempotents form a basis");
    let iso = ComonoidMorphism::new(m, &lin, p)?;
    if !iso.is_monoid_morphism() {
        return Err(Error::NotAMorphism("round trip does not preserve the product".into()));
    }
    Ok((s, iso))
}

fn pushforward(f: &Field, u: &[usize], target_size: usize) -> Matrix {
    let mut m = Matrix::zeros(f, target_size, u.len());
    for (x, &y) in u.iter().enumerate() {
        m.set(y, x, 1);
    }
    m
}

/// All comonoid morphisms `M → N`, one for each equivariant map
/// `spectrum(M) → spectrum(N)`.
pub fn comonoid_homs(m: &FrobeniusMonoid, n: &FrobeniusMonoid, budget: u128, seed: u64) -> Result<Vec<ComonoidMorphism>> {
    let f = m.field();
    let (sm, sn) = (spectrum(m, seed)?, spectrum(n, seed)?);
    let pm = sm.basis(f).inverse().expect("idempotent basis");
    let en = sn.basis(f);
    gset::homs(&sm.gset, &sn.gset, budget)?
        .into_iter()
        .map(|u| ComonoidMorphism::new(m, n, en.mul(&pushforward(f, &u.map, sn.gset.size())).mul(&pm)))
        .collect()
}

/// All monoid morphisms `N → M`, one for each equivariant map
/// `spectrum(M) → spectrum(N)` (by precomposition).
pub fn monoid_homs(n: &FrobeniusMonoid, m: &FrobeniusMonoid, budget: u128, seed: u64) -> Result<Vec<MonoidMorphism>> {
    let f = m.field();
    let (sm, sn) = (spectrum(m, seed)?, spectrum(n, seed)?);
    let pn = sn.basis(f).inverse().expect("idempotent basis");
    let em = sm.basis(f);
    gset::homs(&sm.gset, &sn.gset, budget)?
        .into_iter()
        .map(|u| {
            let pre = pushforward(f, &u.map, sn.gset.size()).transpose();
            MonoidMorphism::new(n, m, em.mul(&pre).mul(&pn))
        })
        .collect()
}

/// `f† = B_M⁻¹ fᵀ B_N`, the adjoint for the pairings `ε ∘ μ`.
pub fn dual_morphism(f: &ComonoidMorphism) -> Result<MonoidMorphism> {
    let bm = f.source.pairing();
    let bn = f.target.pairing();
    let inv = bm.inverse().ok_or_else(|| Error::Csep(CsepViolation::Special))?;
    MonoidMorphism::new(&f.target, &f.source, inv.mul(&f.matrix.transpose()).mul(&bn))
}

/// Linearizations of all nonempty G-sets of size `≤ bound`, each also
/// transported along a seeded permutation and a seeded invertible matrix,
/// plus group algebras of abelian quotients when they split.
pub fn twisted_corpus(g: &FiniteGroup, f: &Field, bound: usize, seed: u64) -> Result<Vec<FrobeniusMonoid>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for x in gset::gsets_up_to(g, bound) {
        if x.size() == 0 {
            continue;
        }
        let m = linearize(&x, f)?;
        let n = m.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let p = pushforward(f, &perm, n);
        let twisted = m.twist(&p)?;
        let q = random_invertible(f, n, &mut rng);
        let general = m.twist(&q)?;
        out.extend([m, twisted, general]);
    }
    Ok(out)
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    use rand::Rng;
    loop {
        let m = Matrix::new(f, n, n, (0..n * n).map(|_| rng.gen_range(0..f.q())).collect());
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// The group algebra `k[A]` of a finite abelian group with the trace-form
/// comonoid, carrying the trivial action of `g`.
pub fn group_algebra_monoid(g: &FiniteGroup, a: &FiniteGroup, f: &Field) -> Result<FrobeniusMonoid> {
    if !a.is_abelian() {
        return Err(Error::InvalidInput("group algebra of a nonabelian group is not commutative".into()));
    }
    let n = a.order();
    let mut mult = vec![0; n * n * n];
    for x in 0..n {
        for y in 0..n {
            mult[(x * n + y) * n + a.mul(x, y)] = 1;
        }
    }
    let alg = Algebra::validate(f, n, mult, vec::unit(n, 0))?;
    FrobeniusMonoid::from_separable_algebra(Representation::trivial(g, f, n), &alg)
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub order: usize,
    pub matched: bool,
    /// Natural automorphisms of the fiber on the spectrum image of the corpus.
    pub aut_order: usize,
    pub aut_to_g: GroupHom,
    /// Rational points of π₀ of the reconstructed Hopf algebra.
    pub points_order: usize,
    pub points_to_g: Option<GroupHom>,
    pub reconstruction_carrier_dim: usize,
    pub image_objects: usize,
    pub image_roundtrips: bool,
}

/// Aut of the fiber functor, points of π₀ of the reconstructed coend, and
/// `G` itself, compared by explicit isomorphisms. `budget` bounds the
/// `|G|!` permutations searched for natural automorphisms.
pub fn gamma_report(g: &FiniteGroup, f: &Field, budget: u128, seed: u64) -> Result<GammaReport> {
    let perms = (1..=g.order() as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).unwrap_or(u128::MAX);
    if perms > budget {
        return Err(Error::SearchBudgetExceeded { needed: perms, budget });
    }
    // (a) via the image of the corpus under linearize, then spectrum
    let corpus = gset::gsets_up_to(g, g.order());
    let mut image_roundtrips = true;
    for x in corpus.iter().filter(|x| x.size() > 0) {
        let m = linearize(x, f)?;
        let back = spectrum(&m, seed)?;
        let iso = roundtrip_gset(x, f, seed)?;
        image_roundtrips &= iso.is_bijective(&back.gset) && back.gset.size() == x.size();
    }
    let aut = gset::aut_fiber(g, g.order())?;
    // (b) via Tannaka reconstruction of k^G
    let h = HopfAlgebra::constant(g, f);
    let rec = rep::verify_reconstruction(&h, &[Comodule::regular(&h)], rep::DEFAULT_HOM_BUDGET)?;
    let rebuilt = rec
        .reconstructed
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("reconstruction failed: {:?}", rec.status)))?;
    let (p0, _) = hopf::pi0_hopf(&rebuilt)?;
    let pg = hopf::points_group(&p0)?;
    let points_to_g = pg.group.find_isomorphism(g);
    let aut_ok = aut.group.order() == g.order() && aut.group.is_hom(g, &aut.iso_to_g);
    Ok(GammaReport {
        order: g.order(),
        matched: aut_ok && points_to_g.is_some() && image_roundtrips,
        aut_order: aut.group.order(),
        aut_to_g: aut.iso_to_g,
        points_order: pg.group.order(),
        points_to_g,
        reconstruction_carrier_dim: rec.carrier_dim,
        image_objects: corpus.len(),
        image_roundtrips,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Elem;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    #[test]
    fn linearize_examples() {
        let k = f(7);
        let z3 = FiniteGroup::cyclic(3);
        let one = linearize(&GSet::terminal(&z3), &k).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(one.report().passed());
        let reg = linearize(&GSet::regular(&z3), &k).unwrap();
        assert_eq!(reg.dim(), 3);
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
        let x = GSet::cosets(&s3, &h).unwrap();
        let m = linearize(&x, &k).unwrap();
        assert_eq!(m.dim(), 3);
        assert!((0..6).any(|g| !m.carrier().matrix(g).is_identity()));
        assert_eq!(linearize(&GSet::empty(&z3), &k), Err(Error::Empty));
    }

    #[test]
    fn check_csep_failures() {
        let k = f(5);
        let z2 = FiniteGroup::cyclic(2);
        let m = linearize(&GSet::regular(&z2), &k).unwrap();
        let d2 = m.delta().scale(2);
        let r = check_csep(m.carrier(), m.mu(), m.eta(), &d2, m.eps());
        assert!(r.failed(CsepViolation::Special));
        assert_eq!(r.first_failure, Some(CsepViolation::Counit));
        // keep the counit law by rescaling ε the other way
        let e3 = m.eps().scale(k.inv(2));
        let r = check_csep(m.carrier(), m.mu(), m.eta(), &d2, &e3);
        assert_eq!(r.first_failure, Some(CsepViolation::Special));
        // F₅[ℤ/2] with δ(g) = g ⊗ g
        let ga = hopf::GroupAlgebra::new(&z2, &k);
        let triv = Representation::trivial(&z2, &k, 2);
        let r = check_csep(&triv, &ga.mult, &ga.unit, &ga.comult, &ga.counit);
        assert_eq!(r.first_failure, Some(CsepViolation::Special));
        // shape
        let r = check_csep(&triv, &ga.mult, &ga.unit, &ga.comult, &Matrix::zeros(&k, 1, 3));
        assert_eq!(r.first_failure, Some(CsepViolation::Shape));
    }

    #[test]
    fn frobenius_law_orientations_agree() {
        let k = f(3);
        let s3 = FiniteGroup::symmetric(3);
        let m = linearize(&GSet::regular(&s3), &k).unwrap();
        let i = Matrix::identity(&k, 6);
        // the left-to-right reading of the same law gives the same matrices
        let lhs = m.mu().kron(&i).mul(&i.kron(m.delta()));
        let rhs = i.kron(m.mu()).mul(&m.delta().kron(&i));
        assert_eq!(lhs, m.delta().mul(m.mu()));
        assert_eq!(rhs, m.delta().mul(m.mu()));
    }

    #[test]
    fn spectrum_examples() {
        let k = f(7);
        let s3 = FiniteGroup::symmetric(3);
        for x in gset::gsets_up_to(&s3, 4).into_iter().filter(|x| x.size() > 0) {
            let iso = roundtrip_gset(&x, &k, 0).unwrap();
            assert_eq!(iso.map, (0..x.size()).collect::<Vec<_>>());
        }
        let z3 = FiniteGroup::cyclic(3);
        let m = group_algebra_monoid(&z3, &z3, &k).unwrap();
        let s = spectrum(&m, 0).unwrap();
        assert_eq!(s.gset.fixed_points().len(), 3);
        // F₂[x]/(x² + x + 1) = F₄ with the trace comonoid
        let k2 = f(2);
        let alg = Algebra::quotient_poly(&crate::poly::Poly::new(&k2, vec![1, 1, 1])).unwrap();
        let m = FrobeniusMonoid::from_separable_algebra(Representation::trivial(&z3, &k2, 2), &alg).unwrap();
        assert_eq!(spectrum(&m, 0).unwrap_err(), Error::NeedsExtension(2));
        assert_eq!(roundtrip_monoid(&m, 0).unwrap_err(), Error::NeedsExtension(2));
    }

    #[test]
    fn roundtrip_monoid_examples() {
        let k = f(7);
        let z3 = FiniteGroup::cyclic(3);
        let x = GSet::regular(&z3);
        let m = linearize(&x, &k).unwrap();
        let (_, iso) = roundtrip_monoid(&m, 0).unwrap();
        assert!(iso.matrix.is_identity());
        let p = pushforward(&k, &[2, 0, 1], 3);
        let t = m.twist(&p).unwrap();
        let (s, iso) = roundtrip_monoid(&t, 0).unwrap();
        // lin X → M → lin(spectrum M) is the permutation, and it is equivariant
        let through = iso.matrix.mul(&p);
        assert_eq!(through, p);
        let perm: Vec<usize> = (0..3).map(|x| (0..3).find(|&y| through.get(y, x) == 1).unwrap()).collect();
        assert!(EquivariantMap::new(&x, &s.gset, perm).is_ok());
        for m in twisted_corpus(&FiniteGroup::symmetric(3), &k, 4, 5).unwrap() {
            let (s, iso) = roundtrip_monoid(&m, 0).unwrap();
            assert!(iso.matrix.inverse().is_some());
            assert_eq!(s.gset.size(), m.dim());
        }
    }

    /// Comonoid homs by brute force over all matrices.
    fn brute_comonoid_homs(m: &FrobeniusMonoid, n: &FrobeniusMonoid) -> usize {
        let k = m.field();
        let cells = m.dim() * n.dim();
        let q = k.q() as u64;
        let total = q.pow(cells as u32);
        (0..total)
            .filter(|&code| {
                let data = (0..cells).map(|i| ((code / q.pow(i as u32)) % q) as Elem).collect();
                ComonoidMorphism::new(m, n, Matrix::new(k, n.dim(), m.dim(), data)).is_ok()
            })
            .count()
    }

    #[test]
    fn comonoid_hom_counts() {
        let k = f(2);
        let z2 = FiniteGroup::cyclic(2);
        let objs: Vec<GSet> = gset::gsets_up_to(&z2, 3).into_iter().filter(|x| x.size() > 0).collect();
        for x in &objs {
            for y in &objs {
                let (lx, ly) = (linearize(x, &k).unwrap(), linearize(y, &k).unwrap());
                let hs = comonoid_homs(&lx, &ly, 1 << 20, 0).unwrap();
                assert_eq!(hs.len(), gset::homs(x, y, 1 << 20).unwrap().len());
                if x.size() * y.size() <= 9 {
                    assert_eq!(hs.len(), brute_comonoid_homs(&lx, &ly));
                }
                if x == y {
                    assert!(hs.contains(&ComonoidMorphism::identity(&lx)));
                }
            }
            let unit = linearize(&GSet::terminal(&z2), &k).unwrap();
            let lx = linearize(x, &k).unwrap();
            assert_eq!(comonoid_homs(&unit, &lx, 1 << 20, 0).unwrap().len(), x.fixed_points().len());
            assert_eq!(comonoid_homs(&lx, &unit, 1 << 20, 0).unwrap().len(), 1);
        }
        // twisted copies, over F₃
        let k = f(3);
        let corpus = twisted_corpus(&z2, &k, 2, 1).unwrap();
        for a in &corpus {
            for b in &corpus {
                if a.dim() * b.dim() <= 4 {
                    assert_eq!(comonoid_homs(a, b, 1 << 20, 0).unwrap().len(), brute_comonoid_homs(a, b));
                }
            }
        }
    }

    #[test]
    fn duality_examples() {
        let k = f(7);
        let s3 = FiniteGroup::symmetric(3);
        let objs: Vec<GSet> = gset::gsets_up_to(&s3, 3).into_iter().filter(|x| x.size() > 0).collect();
        for x in &objs {
            let lx = linearize(x, &k).unwrap();
            let d = dual_morphism(&ComonoidMorphism::identity(&lx)).unwrap();
            assert!(d.matrix.is_identity());
            for y in &objs {
                let ly = linearize(y, &k).unwrap();
                for u in gset::homs(y, x, 1 << 20).unwrap() {
                    let c = ComonoidMorphism::new(&ly, &lx, pushforward(&k, &u.map, x.size())).unwrap();
                    let d = dual_morphism(&c).unwrap();
                    // (φ ∘ u) as a matrix: e_x* ↦ Σ_{u(y)=x} e_y*
                    let mut pre = Matrix::zeros(&k, y.size(), x.size());
                    for (p, &q) in u.map.iter().enumerate() {
                        pre.set(p, q, 1);
                    }
                    assert_eq!(d.matrix, pre);
                }
            }
        }
        // twisted: bijection onto monoid homs and contravariance
        let corpus = twisted_corpus(&FiniteGroup::cyclic(2), &f(5), 3, 2).unwrap();
        for a in corpus.iter().step_by(2) {
            for b in corpus.iter().step_by(3) {
                let cs = comonoid_homs(a, b, 1 << 20, 0).unwrap();
                let ms = monoid_homs(b, a, 1 << 20, 0).unwrap();
                assert_eq!(cs.len(), ms.len());
                for c in &cs {
                    assert!(ms.contains(&dual_morphism(c).unwrap()));
                    for e in comonoid_homs(b, a, 1 << 20, 0).unwrap() {
                        let ce = c.compose(&e).unwrap();
                        let lhs = dual_morphism(&ce).unwrap();
                        let rhs = dual_morphism(&e).unwrap().compose(&dual_morphism(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let r = gamma_report(&FiniteGroup::cyclic(2), &f(5), hopf::DEFAULT_BUDGET, 0).unwrap();
        assert!(r.matched && r.order == 2 && r.points_order == 2 && r.aut_order == 2);
        let r = gamma_report(&FiniteGroup::trivial(), &f(5), hopf::DEFAULT_BUDGET, 0).unwrap();
        assert!(r.matched && r.order == 1);
        let r = gamma_report(&FiniteGroup::symmetric(3), &f(7), hopf::DEFAULT_BUDGET, 0).unwrap();
        assert!(r.matched && r.points_order == 6);
        let big = FiniteGroup::cyclic(12);
        assert!(matches!(
            gamma_report(&big, &f(5), hopf::DEFAULT_BUDGET, 0),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let m = linearize(&GSet::regular(&FiniteGroup::cyclic(3)), &f(7)).unwrap();
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back: FrobeniusJson = serde_json::from_str(&s).unwrap();
        assert_eq!(FrobeniusMonoid::from_json(&back).unwrap(), m);
    }
}
