//! Representations of finite groups, comodules over finite Hopf algebras,
//! and the coend of the forgetful functor over a finite set of comodules.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldDescriptor};
use crate::group::{FiniteGroup, GroupJson};
use crate::hopf::HopfAlgebra;
use crate::matrix::{vec, Matrix};

/// Default cap on linear unknowns per hom-space computation.
pub const DEFAULT_HOM_BUDGET: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    field: Field,
    dim: usize,
    mats: Vec<Matrix>,
}

/// `{"field": ..., "group": ..., "dim": n, "matrices": {"g": [[...]]}}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub field: FieldDescriptor,
    pub group: GroupJson,
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Representation {
    pub fn new(group: &FiniteGroup, field: &Field, dim: usize, mats: Vec<Matrix>) -> Result<Representation> {
        if mats.len() != group.order() || mats.iter().any(|m| m.shape() != (dim, dim) || m.field() != field) {
            return Err(Error::Representation("one square matrix per group element".into()));
        }
        if !mats[0].is_identity() {
            return Err(Error::Representation("identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if mats[g].mul(&mats[h]) != mats[group.mul(g, h)] {
                    return Err(Error::Representation(format!("ρ({g})ρ({h}) ≠ ρ({g}·{h})")));
                }
            }
        }
        Ok(Representation {
            group: group.clone(),
            field: field.clone(),
            dim,
            mats,
        })
    }

    pub fn from_json(j: &RepJson) -> Result<Representation> {
        let field = Field::from_descriptor(&j.field)?;
        let group = FiniteGroup::from_json(&j.group)?;
        let mats = (0..group.order())
            .map(|g| {
                let rows = j
                    .matrices
                    .get(&g.to_string())
                    .ok_or_else(|| Error::Representation(format!("missing matrix for {g}")))?;
                if rows.len() != j.dim || rows.iter().any(|r| r.len() != j.dim) {
                    return Err(Error::Representation("matrix shape".into()));
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|&v| {
                        if v < 0 || v >= field.q() as i64 {
                            Err(Error::CoefficientRange { value: v, p: field.p() })
                        } else {
                            Ok(v as Elem)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::new(&field, j.dim, j.dim, data))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(&group, &field, j.dim, mats)
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            field: self.field.descriptor(),
            group: self.group.to_json(),
            dim: self.dim,
            matrices: self
                .mats
                .iter()
                .enumerate()
                .map(|(g, m)| {
                    let rows = m.to_rows().into_iter().map(|r| r.into_iter().map(|c| c as i64).collect()).collect();
                    (g.to_string(), rows)
                })
                .collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup, field: &Field, dim: usize) -> Representation {
        let mats = vec![Matrix::identity(field, dim); group.order()];
        Representation::new(group, field, dim, mats).expect("trivial representation")
    }

    /// One-dimensional representation with `ρ(g) = values[g]`.
    pub fn character(group: &FiniteGroup, field: &Field, values: &[Elem]) -> Result<Representation> {
        let mats = values.iter().map(|&v| Matrix::new(field, 1, 1, vec![v])).collect();
        Representation::new(group, field, 1, mats)
    }

    /// `g ↦ −1` on elements outside the subgroup of index two `h`.
    pub fn sign(group: &FiniteGroup, field: &Field, h: &[usize]) -> Result<Representation> {
        let values: Vec<Elem> = (0..group.order())
            .map(|g| if h.contains(&g) { 1 } else { field.neg(1) })
            .collect();
        Representation::character(group, field, &values)
    }

    /// Permutation representation of `G` acting on `0..n` by `act(g, x)`.
    pub fn permutation(group: &FiniteGroup, field: &Field, n: usize, act: impl Fn(usize, usize) -> usize) -> Result<Representation> {
        let mats = (0..group.order())
            .map(|g| {
                let mut m = Matrix::zeros(field, n, n);
                for x in 0..n {
                    m.set(act(g, x), x, 1);
                }
                m
            })
            .collect();
        Representation::new(group, field, n, mats)
    }

    pub fn regular(group: &FiniteGroup, field: &Field) -> Representation {
        Representation::permutation(group, field, group.order(), |g, x| group.mul(g, x)).expect("regular")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    fn compatible(&self, other: &Representation) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Representation("different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        self.compatible(other)?;
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.kron(b)).collect();
        Representation::new(&self.group, &self.field, self.dim * other.dim, mats)
    }

    /// `ρ^∨(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> Representation {
        let mats = (0..self.group.order()).map(|g| self.mats[self.group.inv(g)].transpose()).collect();
        Representation::new(&self.group, &self.field, self.dim, mats).expect("dual representation")
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.compatible(other)?;
        let (a, b) = (self.dim, other.dim);
        let f = &self.field;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                let top = x.hstack(&Matrix::zeros(f, a, b));
                let bottom = Matrix::zeros(f, b, a).hstack(y);
                top.vstack(&bottom)
            })
            .collect();
        Representation::new(&self.group, f, a + b, mats)
    }

    /// Transport along an invertible `p`: `ρ'(g) = p ρ(g) p⁻¹`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Representation> {
        let inv = p.inverse().ok_or_else(|| Error::Representation("change of basis is singular".into()))?;
        let mats = self.mats.iter().map(|m| p.mul(m).mul(&inv)).collect();
        Representation::new(&self.group, &self.field, self.dim, mats)
    }

    /// Traces of all `ρ(g)`.
    pub fn character_table(&self) -> Vec<Elem> {
        self.mats
            .iter()
            .map(|m| (0..self.dim).fold(0, |acc, i| self.field.add(acc, m.get(i, i))))
            .collect()
    }

    /// Evaluation `V^∨ ⊗ V → k`, a `1 × n²` matrix.
    pub fn evaluation(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(&self.field, 1, n * n);
        for i in 0..n {
            m.set(0, i * n + i, 1);
        }
        m
    }

    /// Coevaluation `k → V ⊗ V^∨`, an `n² × 1` matrix.
    pub fn coevaluation(&self) -> Matrix {
        self.evaluation().transpose()
    }

    /// Both triangle identities, and that `ev`, `coev` are intertwiners.
    pub fn check_duality(&self) -> bool {
        let f = &self.field;
        let n = self.dim;
        let id = Matrix::identity(f, n);
        let ev = self.evaluation();
        let coev = self.coevaluation();
        let d = self.dual();
        let tri1 = id.kron(&ev).mul(&coev.kron(&id)) == id;
        let tri2 = ev.kron(&id).mul(&id.kron(&coev)) == id;
        let equivariant = (0..self.group.order()).all(|g| {
            ev.mul(&d.mats[g].kron(&self.mats[g])) == ev && self.mats[g].kron(&d.mats[g]).mul(&coev) == coev
        });
        tri1 && tri2 && equivariant
    }
}

/// Basis of intertwiners `F : V → W` (`dim W × dim V`); only generators
/// of the group contribute equations.
pub fn hom_space(v: &Representation, w: &Representation) -> Result<Vec<Matrix>> {
    v.compatible(w)?;
    let f = &v.field;
    let (n, m) = (v.dim, w.dim);
    let gens = v.group.generators();
    let mut eqs = Matrix::zeros(f, gens.len() * m * n, m * n);
    for (k, &g) in gens.iter().enumerate() {
        let (a_g, b_g) = (&w.mats[g], &v.mats[g]);
        for c in 0..m {
            for j in 0..n {
                let row = (k * m + c) * n + j;
                // (ρ_W(g) F)[c][j] − (F ρ_V(g))[c][j]
                for a in 0..m {
                    let x = a_g.get(c, a);
                    if x != 0 {
                        let col = a * n + j;
                        eqs.set(row, col, f.add(eqs.get(row, col), x));
                    }
                }
                for b in 0..n {
                    let x = b_g.get(b, j);
                    if x != 0 {
                        let col = c * n + b;
                        eqs.set(row, col, f.sub(eqs.get(row, col), x));
                    }
                }
            }
        }
    }
    let basis = if gens.is_empty() {
        (0..m * n).map(|i| vec::unit(m * n, i)).collect()
    } else {
        eqs.kernel()
    };
    Ok(basis.into_iter().map(|x| Matrix::new(f, m, n, x)).collect())
}

/// An isomorphism `V → W` if one is found among the hom-space basis and
/// seeded random combinations of it.
pub fn find_isomorphism(v: &Representation, w: &Representation, seed: u64) -> Result<Option<Matrix>> {
    if v.dim != w.dim {
        return Ok(None);
    }
    let basis = hom_space(v, w)?;
    if v.dim == 0 {
        return Ok(Some(Matrix::zeros(&v.field, 0, 0)));
    }
    for b in &basis {
        if b.inverse().is_some() {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = v.field.q();
    for _ in 0..256 {
        let mut acc = Matrix::zeros(&v.field, w.dim, v.dim);
        for b in &basis {
            acc = acc.add(&b.scale(rng.gen_range(0..q)));
        }
        if acc.inverse().is_some() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

/// One line of [`check_fiber_axioms`].
#[derive(Clone, Debug, Serialize)]
pub struct FiberCheck {
    pub property: String,
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub group_order: usize,
    pub field: FieldDescriptor,
    pub seed: u64,
    pub checks: Vec<FiberCheck>,
}

impl FiberReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
        let m = Matrix::new(f, n, n, data);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Representations built from the trivial, regular, sign and coset
/// permutation representations by sums, tensors, duals and random changes
/// of basis, keeping dimension at most `max_dim`.
pub fn random_rep(g: &FiniteGroup, f: &Field, rng: &mut ChaCha8Rng, max_dim: usize) -> Representation {
    let mut atoms = vec![Representation::trivial(g, f, 1)];
    if g.order() <= max_dim {
        atoms.push(Representation::regular(g, f));
    }
    for h in g.subgroups() {
        let idx = g.order() / h.len();
        if idx == 2 {
            atoms.push(Representation::sign(g, f, &h).expect("index two"));
        }
        if idx > 1 && idx <= max_dim {
            let x = crate::gset::GSet::cosets(g, &h).expect("subgroup");
            atoms.push(Representation::permutation(g, f, x.size(), |a, p| x.act(a, p)).expect("coset action"));
        }
    }
    let pick = |rng: &mut ChaCha8Rng| atoms[rng.gen_range(0..atoms.len())].clone();
    let mut r = pick(rng);
    for _ in 0..rng.gen_range(0..3) {
        let s = pick(rng);
        let next = match rng.gen_range(0..3) {
            0 => r.direct_sum(&s),
            1 => r.tensor(&s),
            _ => Ok(r.dual()),
        }
        .expect("same group");
        if next.dim <= max_dim {
            r = next;
        }
    }
    let p = random_invertible(f, r.dim, rng);
    r.conjugate(&p).expect("invertible")
}

/// Strong monoidality, exactness, faithfulness and `End(1) = k` for the
/// forgetful functor on `budget` seeded random representations.
pub fn check_fiber_axioms(g: &FiniteGroup, f: &Field, budget: usize, seed: u64) -> Result<FiberReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Representation::trivial(g, f, 1);
    let mut w_mono = None;
    let mut w_exact = None;
    let mut w_faith = None;
    for k in 0..budget {
        let a = random_rep(g, f, &mut rng, 6);
        let b = random_rep(g, f, &mut rng, 6);
        let c = random_rep(g, f, &mut rng, 3);
        // ω(A ⊗ B) = ω(A) ⊗ ω(B) on the nose, with trivial associator and
        // unitors, and ⊗ is functorial on intertwiners
        let ab_c = a.tensor(&b)?.tensor(&c)?;
        let a_bc = a.tensor(&b.tensor(&c)?)?;
        let unit_ok = one.tensor(&a)? == a && a.tensor(&one)? == a;
        let functorial = {
            let fa = hom_space(&a, &a)?;
            let fb = hom_space(&b, &b)?;
            let ab = a.tensor(&b)?;
            match (fa.get(rng.gen_range(0..fa.len().max(1))), fb.get(rng.gen_range(0..fb.len().max(1)))) {
                (Some(x), Some(y)) => {
                    let t = x.kron(y);
                    (0..g.order()).all(|h| ab.mats[h].mul(&t) == t.mul(&ab.mats[h]))
                }
                _ => true,
            }
        };
        if w_mono.is_none() && !(ab_c == a_bc && unit_ok && functorial) {
            w_mono = Some(format!("sample {k}: dims {} {} {}", a.dim, b.dim, c.dim));
        }
        // exactness: for an intertwiner φ : A → B, Hom(T, ker φ) and
        // Hom(coker φ, T) computed in Rep agree with the linear-algebra
        // kernel and cokernel conditions
        let hs = hom_space(&a, &b)?;
        if !hs.is_empty() {
            let mut phi = Matrix::zeros(f, b.dim, a.dim);
            for h in &hs {
                phi = phi.add(&h.scale(rng.gen_range(0..f.q())));
            }
            let t = random_rep(g, f, &mut rng, 4);
            if let Err(e) = exactness(&a, &b, &phi, &t) {
                if w_exact.is_none() {
                    w_exact = Some(format!("sample {k}: {e}"));
                }
            }
        }
        // faithful: distinct basis intertwiners stay independent as linear maps
        let independent = hs.is_empty()
            || Matrix::from_columns(f, a.dim * b.dim, &hs.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>()).rank()
                == hs.len();
        if w_faith.is_none() && !independent {
            w_faith = Some(format!("sample {k}"));
        }
    }
    let end1 = hom_space(&one, &one)?.len();
    let line = |p: &str, w: Option<String>, n: usize| FiberCheck {
        property: p.into(),
        passed: w.is_none(),
        samples: n,
        witness: w,
    };
    Ok(FiberReport {
        group_order: g.order(),
        field: f.descriptor(),
        seed,
        checks: vec![
            line("strong monoidal", w_mono, budget),
            line("exact", w_exact, budget),
            line("faithful", w_faith, budget),
            line(
                "End(1) = k",
                (end1 != 1).then(|| format!("dim End(1) = {end1}")),
                1,
            ),
        ],
    })
}

/// The subspace `ker φ` is stable and `Hom(T, ker φ) ≅ {h : T → A, φh = 0}`;
/// dually for the cokernel.
fn exactness(a: &Representation, b: &Representation, phi: &Matrix, t: &Representation) -> std::result::Result<(), String> {
    let f = &a.field;
    let kbasis = phi.kernel();
    let kmat = Matrix::from_columns(f, a.dim, &kbasis);
    let ker_rep = sub_rep(a, &kmat).ok_or("kernel is not a subrepresentation")?;
    let via_rep = hom_space(t, &ker_rep).map_err(|e| e.to_string())?.len();
    let into_a = hom_space(t, a).map_err(|e| e.to_string())?;
    let via_lin = solution_dim(f, &into_a, |h| phi.mul(h));
    if via_rep != via_lin {
        return Err(format!("kernel: {via_rep} vs {via_lin}"));
    }
    // cokernel B / im φ: pick a complement and the induced action
    let img = phi.column_space();
    let (coker_rep, _) = quotient_rep(b, &img).ok_or("image is not a subrepresentation")?;
    let via_rep = hom_space(&coker_rep, t).map_err(|e| e.to_string())?.len();
    let from_b = hom_space(b, t).map_err(|e| e.to_string())?;
    let via_lin = solution_dim(f, &from_b, |h| h.mul(phi));
    if via_rep != via_lin {
        return Err(format!("cokernel: {via_rep} vs {via_lin}"));
    }
    Ok(())
}

/// Dimension of `{Σ c_i h_i : L(Σ c_i h_i) = 0}` for linear `L`.
fn solution_dim(f: &Field, basis: &[Matrix], l: impl Fn(&Matrix) -> Matrix) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Elem>> = basis.iter().map(|h| l(h).data().to_vec()).collect();
    let rows = cols[0].len();
    if rows == 0 {
        return basis.len();
    }
    Matrix::from_columns(f, rows, &cols).kernel().len()
}

/// The representation on the column span of `basis` (which must be stable).
pub fn sub_rep(a: &Representation, basis: &Matrix) -> Option<Representation> {
    let k = basis.cols();
    let mats: Option<Vec<Matrix>> = a
        .mats
        .iter()
        .map(|m| {
            if k == 0 {
                Some(Matrix::zeros(&a.field, 0, 0))
            } else {
                basis.solve_matrix(&m.mul(basis))
            }
        })
        .collect();
    Representation::new(&a.group, &a.field, k, mats?).ok()
}

/// `B / span(img)` with the quotient map.
pub fn quotient_rep(b: &Representation, img: &[Vec<Elem>]) -> Option<(Representation, Matrix)> {
    let f = &b.field;
    let n = b.dim;
    let mut full: Vec<Vec<Elem>> = img.to_vec();
    let mut complement = Vec::new();
    for j in 0..n {
        let mut trial = full.clone();
        trial.push(vec::unit(n, j));
        if Matrix::from_columns(f, n, &trial).rank() == trial.len() {
            full = trial;
            complement.push(j);
        }
    }
    let inv = if n == 0 {
        Matrix::zeros(f, 0, 0)
    } else {
        Matrix::from_columns(f, n, &full).inverse()?
    };
    let k = img.len();
    let q = inv.submatrix(k..n, 0..n);
    let sec = Matrix::from_columns(f, n, &complement.iter().map(|&j| vec::unit(n, j)).collect::<Vec<_>>());
    let mats: Vec<Matrix> = b
        .mats
        .iter()
        .map(|m| if n == k { Matrix::zeros(f, 0, 0) } else { q.mul(m).mul(&sec) })
        .collect();
    // image stable ⇔ q ρ(g) kills the image
    for m in &b.mats {
        for v in img {
            if q.apply(&m.apply(v)).iter().any(|&c| c != 0) {
                return None;
            }
        }
    }
    Some((Representation::new(&b.group, f, n - k, mats).ok()?, q))
}

/// A right comodule `δ : V → V ⊗ H`; basis `e_i ⊗ b_h` at `i * dim H + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    hopf: HopfAlgebra,
    dim: usize,
    coaction: Matrix,
}

impl Comodule {
    pub fn new(hopf: &HopfAlgebra, dim: usize, coaction: Matrix) -> Result<Comodule> {
        let f = hopf.field();
        let d = hopf.dim();
        if coaction.shape() != (dim * d, dim) {
            return Err(Error::Comodule("coaction shape".into()));
        }
        let id = Matrix::identity(f, dim);
        if id.kron(hopf.counit()).mul(&coaction) != id {
            return Err(Error::Comodule("counit law".into()));
        }
        if coaction.kron(&Matrix::identity(f, d)).mul(&coaction) != id.kron(hopf.comult()).mul(&coaction) {
            return Err(Error::Comodule("coassociativity".into()));
        }
        Ok(Comodule {
            hopf: hopf.clone(),
            dim,
            coaction,
        })
    }

    /// `H` over itself via `Δ`.
    pub fn regular(hopf: &HopfAlgebra) -> Comodule {
        Comodule::new(hopf, hopf.dim(), hopf.comult().clone()).expect("regular comodule")
    }

    /// `v ↦ v ⊗ 1`.
    pub fn trivial(hopf: &HopfAlgebra) -> Comodule {
        Comodule::new(hopf, 1, hopf.algebra().unit_matrix()).expect("trivial comodule")
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `δ(v ⊗ w) = v₀ ⊗ w₀ ⊗ v₁w₁`.
    pub fn tensor(&self, other: &Comodule) -> Result<Comodule> {
        if self.hopf != other.hopf {
            return Err(Error::Comodule("different Hopf algebras".into()));
        }
        let h = &self.hopf;
        let f = h.field();
        let d = h.dim();
        let (n, m) = (self.dim, other.dim);
        let mu = h.algebra().mult_matrix();
        let mut c = Matrix::zeros(f, n * m * d, n * m);
        for a in 0..n {
            for b in 0..m {
                let col = a * m + b;
                for i in 0..n {
                    for h1 in 0..d {
                        let x = self.coaction.get(i * d + h1, a);
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            for h2 in 0..d {
                                let y = other.coaction.get(j * d + h2, b);
                                if y == 0 {
                                    continue;
                                }
                                let xy = f.mul(x, y);
                                for hh in 0..d {
                                    let z = mu.get(hh, h1 * d + h2);
                                    if z != 0 {
                                        let row = (i * m + j) * d + hh;
                                        c.set(row, col, f.add(c.get(row, col), f.mul(xy, z)));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Comodule::new(h, n * m, c)
    }
}

/// `v ↦ Σ_g ρ(g)v ⊗ e_g` over `k^G`.
pub fn comodule_from_rep(r: &Representation) -> Comodule {
    let h = HopfAlgebra::constant(&r.group, &r.field);
    let m = r.group.order();
    let n = r.dim;
    let mut c = Matrix::zeros(&r.field, n * m, n);
    for g in 0..m {
        for i in 0..n {
            for j in 0..n {
                c.set(i * m + g, j, r.mats[g].get(i, j));
            }
        }
    }
    Comodule::new(&h, n, c).expect("comodule of a representation")
}

/// Inverse of [`comodule_from_rep`]; needs a constant Hopf algebra.
pub fn rep_from_comodule(c: &Comodule) -> Result<Representation> {
    let g = c
        .hopf
        .origin()
        .ok_or_else(|| Error::Comodule("Hopf algebra is not constant".into()))?
        .clone();
    let m = g.order();
    let n = c.dim;
    let f = c.hopf.field();
    let mats = (0..m)
        .map(|gi| {
            let mut r = Matrix::zeros(f, n, n);
            for i in 0..n {
                for j in 0..n {
                    r.set(i, j, c.coaction.get(i * m + gi, j));
                }
            }
            r
        })
        .collect();
    Representation::new(&g, f, n, mats)
}

/// Basis of comodule maps `V → W` (`dim W × dim V`), i.e. solutions of
/// `(F ⊗ id) δ_V = δ_W F`.
pub fn comodule_homs(v: &Comodule, w: &Comodule, budget: u128) -> Result<Vec<Matrix>> {
    if v.hopf != w.hopf {
        return Err(Error::Comodule("different Hopf algebras".into()));
    }
    let (n, m) = (v.dim, w.dim);
    let unknowns = (n * m) as u128;
    if unknowns > budget {
        return Err(Error::SearchBudgetExceeded { needed: unknowns, budget });
    }
    let f = v.hopf.field();
    if n == 0 || m == 0 {
        return Ok(Vec::new());
    }
    if let Some(g) = v.hopf.origin() {
        if g.order() == v.hopf.dim() {
            // same equations, fewer rows: intertwiners for the generators
            let rv = rep_from_comodule(v)?;
            let rw = rep_from_comodule(w)?;
            return hom_space(&rv, &rw);
        }
    }
    let d = v.hopf.dim();
    let mut eqs = Matrix::zeros(f, m * d * n, m * n);
    for a in 0..m {
        for h in 0..d {
            for j in 0..n {
                let row = (a * d + h) * n + j;
                // ((F ⊗ id) δ_V)[(a,h), j] = Σ_b F[a][b] δ_V[(b,h), j]
                for b in 0..n {
                    let x = v.coaction.get(b * d + h, j);
                    if x != 0 {
                        let col = a * n + b;
                        eqs.set(row, col, f.add(eqs.get(row, col), x));
                    }
                }
                // (δ_W F)[(a,h), j] = Σ_c δ_W[(a,h), c] F[c][j]
                for c in 0..m {
                    let x = w.coaction.get(a * d + h, c);
                    if x != 0 {
                        let col = c * n + j;
                        eqs.set(row, col, f.sub(eqs.get(row, col), x));
                    }
                }
            }
        }
    }
    Ok(eqs.kernel().into_iter().map(|x| Matrix::new(f, m, n, x)).collect())
}

/// The coend `∫^T ω(T) ⊗ ω(T)^∨` over a finite list of comodules.
///
/// Computed in dual form: the dual of the carrier is the space of natural
/// families `(a_T ∈ End ω(T))`, and `Π_T(v ⊗ ξ) = (ξ(a_T^{(j)} v))_j` for a
/// basis `a^{(j)}` of that space.
#[derive(Clone, Debug)]
pub struct CoendPresentation {
    pub hopf: HopfAlgebra,
    pub objects: Vec<Comodule>,
    /// `families[j][t]` is `a_t^{(j)}`.
    pub families: Vec<Vec<Matrix>>,
    /// `projections[t]` is `r × n_t²`, column `i * n_t + l` for `e_i ⊗ e_l^*`.
    pub projections: Vec<Matrix>,
}

impl CoendPresentation {
    pub fn carrier_dim(&self) -> usize {
        self.families.len()
    }

    /// The coequalizer relations for every hom-space basis element between
    /// listed objects: `Π_{T'}(f ⊗ 1) = Π_T(1 ⊗ fᵀ)`.
    pub fn relations_hold(&self, budget: u128) -> Result<bool> {
        let f = self.hopf.field();
        for (s, x) in self.objects.iter().enumerate() {
            for (t, y) in self.objects.iter().enumerate() {
                for m in comodule_homs(x, y, budget)? {
                    let lhs = self.projections[t].mul(&m.kron(&Matrix::identity(f, y.dim)));
                    let rhs = self.projections[s].mul(&Matrix::identity(f, x.dim).kron(&m.transpose()));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Families natural along the given hom bases, solved directly.
/// `constraints` lists `(s, t, f)` with `f : T_s → T_t`.
fn solve_families(f: &Field, dims: &[usize], constraints: &[(usize, usize, Matrix)]) -> Vec<Vec<Matrix>> {
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n * n;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().map(|n| n * n).sum();
    if total == 0 {
        return Vec::new();
    }
    let rows: usize = constraints.iter().map(|(_, t, m)| dims[*t] * m.cols()).sum();
    let mut eqs = Matrix::zeros(f, rows.max(1), total);
    let mut r0 = 0;
    for (s, t, m) in constraints {
        let (ns, nt) = (dims[*s], dims[*t]);
        // (f a_s − a_t f)[c][j]
        for c in 0..nt {
            for j in 0..ns {
                let row = r0 + c * ns + j;
                for b in 0..ns {
                    let x = m.get(c, b);
                    if x != 0 {
                        let col = offsets[*s] + b * ns + j;
                        eqs.set(row, col, f.add(eqs.get(row, col), x));
                    }
                }
                for k in 0..nt {
                    let x = m.get(k, j);
                    if x != 0 {
                        let col = offsets[*t] + c * nt + k;
                        eqs.set(row, col, f.sub(eqs.get(row, col), x));
                    }
                }
            }
        }
        r0 += nt * ns;
    }
    eqs.kernel()
        .into_iter()
        .map(|v| {
            dims.iter()
                .zip(&offsets)
                .map(|(&n, &o)| Matrix::new(f, n, n, v[o..o + n * n].to_vec()))
                .collect()
        })
        .collect()
}

/// Restrict a family basis to the combinations with `constraint(c) = 0`,
/// where each basis family `j` contributes the vector `cols[j]`.
fn restrict_families(f: &Field, families: Vec<Vec<Matrix>>, cols: &[Vec<Elem>]) -> Vec<Vec<Matrix>> {
    if cols.is_empty() || cols[0].is_empty() || cols.iter().all(|c| c.iter().all(|&x| x == 0)) {
        return families;
    }
    let ker = Matrix::from_columns(f, cols[0].len(), cols).kernel();
    ker.iter()
        .map(|c| {
            let t_count = families[0].len();
            (0..t_count)
                .map(|t| {
                    families
                        .iter()
                        .zip(c)
                        .fold(Matrix::zeros(f, families[0][t].rows(), families[0][t].cols()), |acc, (fam, &cj)| {
                            acc.add(&fam[t].scale(cj))
                        })
                })
                .collect()
        })
        .collect()
}

/// Comodules adjoined after the first `base` are handled one at a time:
/// `a_X` is forced by `a_X f = f a_T` along a basis of `Hom(T, X)` when
/// those images span `ω(X)`; otherwise it becomes a fresh unknown.
fn natural_families(objects: &[Comodule], base: usize, budget: u128) -> Result<Vec<Vec<Matrix>>> {
    let h = objects
        .first()
        .map(|c| c.hopf.clone())
        .ok_or(Error::Empty)?;
    let f = h.field().clone();
    let dims: Vec<usize> = objects.iter().map(|c| c.dim).collect();
    let mut cons = Vec::new();
    for s in 0..base {
        for t in 0..base {
            for m in comodule_homs(&objects[s], &objects[t], budget)? {
                cons.push((s, t, m));
            }
        }
    }
    let mut families = solve_families(&f, &dims[..base], &cons);
    for x in base..objects.len() {
        let nx = dims[x];
        let ins: Vec<(usize, Matrix)> = (0..x)
            .map(|t| Ok(comodule_homs(&objects[t], &objects[x], budget)?.into_iter().map(move |m| (t, m))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let spanning = nx == 0
            || (!ins.is_empty() && {
                let mut m = ins[0].1.clone();
                for (_, g) in &ins[1..] {
                    m = m.hstack(g);
                }
                m.rank() == nx
            });
        if !spanning || families.is_empty() {
            // general solve over all objects so far plus X
            let mut cons = Vec::new();
            for s in 0..=x {
                for t in 0..=x {
                    if s < base && t < base {
                        continue;
                    }
                    for m in comodule_homs(&objects[s], &objects[t], budget)? {
                        cons.push((s, t, m));
                    }
                }
            }
            for s in 0..base {
                for t in 0..base {
                    for m in comodule_homs(&objects[s], &objects[t], budget)? {
                        cons.push((s, t, m));
                    }
                }
            }
            families = solve_families(&f, &dims[..=x], &cons);
            continue;
        }
        if nx == 0 {
            for fam in families.iter_mut() {
                fam.push(Matrix::zeros(&f, 0, 0));
            }
            continue;
        }
        let mut m = ins[0].1.clone();
        for (_, g) in &ins[1..] {
            m = m.hstack(g);
        }
        let rhs = |fam: &[Matrix]| -> Matrix {
            let mut r = ins[0].1.mul(&fam[ins[0].0]);
            for (t, g) in &ins[1..] {
                r = r.hstack(&g.mul(&fam[*t]));
            }
            r
        };
        // solvability of a_X M = R(c): R(c) vanishes on ker M
        let kerm = m.kernel();
        if !kerm.is_empty() {
            let cols: Vec<Vec<Elem>> = families
                .iter()
                .map(|fam| {
                    let r = rhs(fam);
                    kerm.iter().flat_map(|k| r.apply(k)).collect()
                })
                .collect();
            families = restrict_families(&f, families, &cols);
        }
        let mt = m.transpose();
        for fam in families.iter_mut() {
            let ax = mt
                .solve_matrix(&rhs(fam).transpose())
                .expect("consistent after restriction")
                .transpose();
            fam.push(ax);
        }
        // residual naturality along Hom(X, T) for earlier T
        let mut cols: Vec<Vec<Elem>> = vec![Vec::new(); families.len()];
        for t in 0..x {
            for g in comodule_homs(&objects[x], &objects[t], budget)? {
                for (j, fam) in families.iter().enumerate() {
                    cols[j].extend(g.mul(&fam[x]).sub(&fam[t].mul(&g)).data());
                }
            }
        }
        families = restrict_families(&f, families, &cols);
    }
    Ok(families)
}

fn projections(objects: &[Comodule], families: &[Vec<Matrix>]) -> Vec<Matrix> {
    objects
        .iter()
        .enumerate()
        .map(|(t, c)| {
            let n = c.dim;
            let f = c.hopf.field();
            let mut p = Matrix::zeros(f, families.len(), n * n);
            for (j, fam) in families.iter().enumerate() {
                for i in 0..n {
                    for l in 0..n {
                        p.set(j, i * n + l, fam[t].get(l, i));
                    }
                }
            }
            p
        })
        .collect()
}

/// The coend over the full subcategory on `s`. Hom-space computations are
/// limited to `hom_budget` unknowns each.
pub fn coend_restricted(h: &HopfAlgebra, s: &[Comodule], hom_budget: u128) -> Result<CoendPresentation> {
    coend_with_adjoined(h, s, &[], hom_budget)
}

fn coend_with_adjoined(h: &HopfAlgebra, s: &[Comodule], extra: &[Comodule], hom_budget: u128) -> Result<CoendPresentation> {
    if s.iter().chain(extra).any(|c| c.hopf != *h) {
        return Err(Error::Comodule("comodule over a different Hopf algebra".into()));
    }
    let objects: Vec<Comodule> = s.iter().chain(extra).cloned().collect();
    let families = if objects.is_empty() {
        Vec::new()
    } else {
        natural_families(&objects, s.len(), hom_budget)?
    };
    let projections = projections(&objects, &families);
    Ok(CoendPresentation {
        hopf: h.clone(),
        objects,
        families,
        projections,
    })
}

/// `can_T(v ⊗ ξ) = (ξ ⊗ id) δ(v)`, a `dim H × n²` matrix.
pub fn can_component(c: &Comodule) -> Matrix {
    let d = c.hopf.dim();
    let n = c.dim;
    let f = c.hopf.field();
    let mut m = Matrix::zeros(f, d, n * n);
    for i in 0..n {
        for l in 0..n {
            for h in 0..d {
                m.set(h, i * n + l, c.coaction.get(l * d + h, i));
            }
        }
    }
    m
}

/// A section of `⊕_T Π_T` over the objects of `s` (the first ones):
/// column `a` lists, per object, the components of a preimage of `c_a`.
fn section(c: &CoendPresentation, count: usize) -> Option<Vec<Vec<Vec<Elem>>>> {
    let f = c.hopf.field();
    let r = c.carrier_dim();
    if r == 0 {
        return Some(Vec::new());
    }
    let mut big = c.projections[0].clone();
    for p in &c.projections[1..count] {
        big = big.hstack(p);
    }
    let sol = big.solve_matrix(&Matrix::identity(f, r))?;
    Some(
        (0..r)
            .map(|a| {
                let col = sol.column(a);
                let mut o = 0;
                (0..count)
                    .map(|t| {
                        let n2 = c.objects[t].dim * c.objects[t].dim;
                        let part = col[o..o + n2].to_vec();
                        o += n2;
                        part
                    })
                    .collect()
            })
            .collect(),
    )
}

/// `K = can ∘ section`, checked to satisfy `K Π_T = can_T` for every object;
/// `None` when the factorization fails.
pub fn canonical_map(c: &CoendPresentation) -> Option<Matrix> {
    let count = c.objects.len();
    let f = c.hopf.field();
    let d = c.hopf.dim();
    let r = c.carrier_dim();
    let sec = section(c, count)?;
    let cols: Vec<Vec<Elem>> = sec
        .iter()
        .map(|parts| {
            parts
                .iter()
                .zip(&c.objects)
                .fold(vec![0; d], |acc, (x, obj)| vec::add(f, &acc, &can_component(obj).apply(x)))
        })
        .collect();
    let k = if r == 0 { Matrix::zeros(f, d, 0) } else { Matrix::from_columns(f, d, &cols) };
    let ok = c
        .objects
        .iter()
        .zip(&c.projections)
        .all(|(obj, p)| k.mul(p) == can_component(obj));
    ok.then_some(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReconstructionStatus {
    Isomorphism,
    /// The canonical map is not onto `H`: `S` does not generate.
    NotGenerating { image_dim: usize },
    /// The canonical map is onto but some structure or factorization check
    /// failed.
    Failure(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub status: ReconstructionStatus,
    pub hopf_dim: usize,
    pub carrier_dim: usize,
    pub adjoined: usize,
    pub relations_hold: bool,
    pub multiplication: bool,
    pub unit: bool,
    pub comultiplication: bool,
    pub counit: bool,
    pub antipode: bool,
    #[serde(skip)]
    pub canonical: Option<Matrix>,
    /// The coend with its transported structure, in the carrier basis.
    #[serde(skip)]
    pub reconstructed: Option<HopfAlgebra>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.status == ReconstructionStatus::Isomorphism
    }
}

/// Reorder `(v ⊗ ξ) ⊗ (w ⊗ η)` into `(v ⊗ w) ⊗ (ξ ⊗ η)`.
fn pair_to_tensor(x: &[Elem], n: usize, y: &[Elem], m: usize, f: &Field) -> Vec<Elem> {
    let nm = n * m;
    let mut out = vec![0; nm * nm];
    for (ix, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let (i, xi) = (ix / n, ix % n);
        for (iy, &b) in y.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let (j, eta) = (iy / m, iy % m);
            let idx = (i * m + j) * nm + xi * m + eta;
            out[idx] = f.add(out[idx], f.mul(a, b));
        }
    }
    out
}

/// Build the coend over `s ∪ {1} ∪ {T ⊗ T' : T, T' ∈ s}`, check that the
/// canonical map is an isomorphism onto `H`, and compare the transported
/// product, unit, coproduct, counit and antipode with those of `H`.
pub fn verify_reconstruction(h: &HopfAlgebra, s: &[Comodule], hom_budget: u128) -> Result<ReconstructionReport> {
    let f = h.field().clone();
    let d = h.dim();
    let mut extra = vec![Comodule::trivial(h)];
    let mut pair_index = BTreeMap::new();
    for (a, x) in s.iter().enumerate() {
        for (b, y) in s.iter().enumerate() {
            pair_index.insert((a, b), s.len() + extra.len());
            extra.push(x.tensor(y)?);
        }
    }
    let unit_index = s.len();
    let c = coend_with_adjoined(h, s, &extra, hom_budget)?;
    let r = c.carrier_dim();
    let mut report = ReconstructionReport {
        status: ReconstructionStatus::Isomorphism,
        hopf_dim: d,
        carrier_dim: r,
        adjoined: extra.len(),
        relations_hold: false,
        multiplication: false,
        unit: false,
        comultiplication: false,
        counit: false,
        antipode: false,
        canonical: None,
        reconstructed: None,
    };
    report.relations_hold = c.relations_hold(hom_budget)?;
    let Some(k) = canonical_map(&c) else {
        report.status = ReconstructionStatus::Failure("canonical map does not factor through the coend".into());
        return Ok(report);
    };
    report.canonical = Some(k.clone());
    let image = k.rank();
    if image < d {
        report.status = ReconstructionStatus::NotGenerating { image_dim: image };
        return Ok(report);
    }
    if k.inverse().is_none() {
        report.status = ReconstructionStatus::Failure(format!("canonical map has kernel (carrier {r}, H {d})"));
        return Ok(report);
    }
    let sec = section(&c, s.len()).expect("projections are onto the carrier");
    // product through the adjoined tensor objects
    let mut mult = Matrix::zeros(&f, r, r * r);
    for a in 0..r {
        for b in 0..r {
            let mut acc = vec![0; r];
            for (t, x) in s.iter().enumerate() {
                for (u, y) in s.iter().enumerate() {
                    let z = pair_to_tensor(&sec[a][t], x.dim, &sec[b][u], y.dim, &f);
                    let p = &c.projections[pair_index[&(t, u)]];
                    acc = vec::add(&f, &acc, &p.apply(&z));
                }
            }
            for (i, v) in acc.into_iter().enumerate() {
                mult.set(i, a * r + b, v);
            }
        }
    }
    let unit = c.projections[unit_index].column(0);
    // Δ[v ⊗ ξ] = Σ_i [e_i ⊗ ξ] ⊗ [v ⊗ e_i^*]; ε[v ⊗ ξ] = ξ(v)
    let mut comult = Matrix::zeros(&f, r * r, r);
    let mut counit = Matrix::zeros(&f, 1, r);
    for a in 0..r {
        let mut acc = vec![0; r * r];
        let mut e = 0;
        for (t, x) in s.iter().enumerate() {
            let n = x.dim;
            let p = &c.projections[t];
            for (idx, &coef) in sec[a][t].iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let (v, xi) = (idx / n, idx % n);
                if v == xi {
                    e = f.add(e, coef);
                }
                for i in 0..n {
                    let left = p.column(i * n + xi);
                    let right = p.column(v * n + i);
                    acc = vec::add(&f, &acc, &vec::scale(&f, &vec::kron(&f, &left, &right), coef));
                }
            }
        }
        for (i, v) in acc.into_iter().enumerate() {
            comult.set(i, a, v);
        }
        counit.set(0, a, e);
    }
    let kk = k.kron(&k);
    report.multiplication = k.mul(&mult) == h.algebra().mult_matrix().mul(&kk);
    report.unit = k.apply(&unit) == h.algebra().unit();
    report.comultiplication = kk.mul(&comult) == h.comult().mul(&k);
    report.counit = h.counit().mul(&k) == counit;
    // antipode: the convolution inverse of the identity, solved linearly
    let id = Matrix::identity(&f, r);
    let target = Matrix::column_vector(&f, &unit).mul(&counit);
    let mut eqs = Matrix::zeros(&f, r * r, r * r);
    for p in 0..r {
        for q in 0..r {
            let mut e = Matrix::zeros(&f, r, r);
            e.set(p, q, 1);
            let img = mult.mul(&e.kron(&id)).mul(&comult);
            for (i, &v) in img.data().iter().enumerate() {
                eqs.set(i, p * r + q, v);
            }
        }
    }
    let antipode = eqs.solve(target.data()).map(|sv| Matrix::new(&f, r, r, sv));
    report.antipode = antipode.as_ref().is_some_and(|sc| k.mul(sc) == h.antipode().mul(&k));
    if !(report.relations_hold
        && report.multiplication
        && report.unit
        && report.comultiplication
        && report.counit
        && report.antipode)
    {
        report.status = ReconstructionStatus::Failure("transported structure differs".into());
        return Ok(report);
    }
    let algebra = crate::algebra::Algebra::from_mult_matrix(&mult, &unit)?;
    report.reconstructed = Some(HopfAlgebra::new(algebra, comult, counit, antipode.expect("antipode solved"))?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn tensor_and_dual_examples() {
        let g = z(2);
        let k = f(5);
        let triv = Representation::trivial(&g, &k, 1);
        let sign = Representation::sign(&g, &k, &[0]).unwrap();
        let reg = Representation::regular(&z(3), &k);
        assert_eq!(triv.tensor(&sign).unwrap(), sign);
        assert_eq!(sign.tensor(&sign).unwrap(), triv);
        let d = reg.dual();
        assert_eq!(d.character_table(), reg.character_table());
        assert!(find_isomorphism(&d, &reg, 0).unwrap().is_some());
        for r in [&triv, &sign, &reg, &d] {
            assert!(r.check_duality());
        }
        assert!(triv.tensor(&reg).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let g = z(2);
        let k = f(5);
        let reg = Representation::regular(&g, &k);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
        let triv = Representation::trivial(&g, &k, 1);
        let sign = Representation::sign(&g, &k, &[0]).unwrap();
        assert!(hom_space(&triv, &sign).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let r = random_rep(&FiniteGroup::symmetric(3), &f(7), &mut rng, 6);
            let basis = hom_space(&r, &r).unwrap();
            let span = Matrix::from_columns(r.field(), r.dim() * r.dim(), &basis.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
            assert!(span.solve(Matrix::identity(r.field(), r.dim()).data()).is_some());
        }
    }

    #[test]
    fn hom_space_matches_all_elements_equations() {
        // generators only vs every group element
        let g = FiniteGroup::symmetric(3);
        let k = f(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = random_rep(&g, &k, &mut rng, 4);
            let b = random_rep(&g, &k, &mut rng, 4);
            let basis = hom_space(&a, &b).unwrap();
            for m in &basis {
                for x in 0..6 {
                    assert_eq!(b.matrix(x).mul(m), m.mul(a.matrix(x)));
                }
            }
            // brute force over all maps for tiny dimensions
            if a.dim() * b.dim() <= 12 {
                let n = a.dim() * b.dim();
                let count = (0..1u32 << n)
                    .filter(|code| {
                        let m = Matrix::new(&k, b.dim(), a.dim(), (0..n).map(|i| code >> i & 1).collect());
                        (0..6).all(|x| b.matrix(x).mul(&m) == m.mul(a.matrix(x)))
                    })
                    .count();
                assert_eq!(count, 1 << basis.len());
            }
        }
    }

    #[test]
    fn fiber_axiom_examples() {
        assert!(check_fiber_axioms(&z(2), &f(5), 20, 1).unwrap().all_passed());
        assert!(check_fiber_axioms(&FiniteGroup::symmetric(3), &f(7), 20, 1).unwrap().all_passed());
        let g = z(3);
        let one = Representation::trivial(&g, &f(3), 1);
        assert_eq!(hom_space(&one, &one).unwrap().len(), 1);
    }

    #[test]
    fn comodule_examples() {
        let k = f(5);
        let g = z(2);
        let c = comodule_from_rep(&Representation::trivial(&g, &k, 1));
        assert_eq!(c.coaction().column(0), vec![1, 1]);
        let sign = comodule_from_rep(&Representation::sign(&g, &k, &[0]).unwrap());
        assert_eq!(sign.coaction().column(0), vec![1, 4]);
        let reg = Representation::regular(&z(3), &k);
        assert_eq!(rep_from_comodule(&comodule_from_rep(&reg)).unwrap(), reg);
        let mu = HopfAlgebra::mu(2, &k).unwrap();
        assert!(rep_from_comodule(&Comodule::regular(&mu)).is_err());
        // comodule maps over k^G are intertwiners
        let h = HopfAlgebra::constant(&FiniteGroup::symmetric(3), &f(7));
        let regc = Comodule::regular(&h);
        assert_eq!(comodule_homs(&regc, &regc, DEFAULT_HOM_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn regular_comodule_is_the_regular_representation_up_to_iso() {
        let g = FiniteGroup::symmetric(3);
        let k = f(5);
        let h = HopfAlgebra::constant(&g, &k);
        let r = rep_from_comodule(&Comodule::regular(&h)).unwrap();
        assert!(find_isomorphism(&r, &Representation::regular(&g, &k), 1).unwrap().is_some());
    }

    /// Primal oracle: ⊕ V_T ⊗ V_T^∨ modulo the span of the relations.
    fn primal_carrier_dim(s: &[Comodule]) -> usize {
        let f = s[0].hopf().field().clone();
        let dims: Vec<usize> = s.iter().map(|c| c.dim()).collect();
        let offsets: Vec<usize> = dims.iter().scan(0, |a, &n| { let o = *a; *a += n * n; Some(o) }).collect();
        let total: usize = dims.iter().map(|n| n * n).sum();
        let mut rels = Vec::new();
        for (a, x) in s.iter().enumerate() {
            for (b, y) in s.iter().enumerate() {
                for m in comodule_homs(x, y, DEFAULT_HOM_BUDGET).unwrap() {
                    for v in 0..x.dim() {
                        for xi in 0..y.dim() {
                            let mut rel = vec![0; total];
                            // (f v) ⊗ ξ in T'
                            for i in 0..y.dim() {
                                let idx = offsets[b] + i * y.dim() + xi;
                                rel[idx] = f.add(rel[idx], m.get(i, v));
                            }
                            // − v ⊗ (fᵀ ξ) in T
                            for l in 0..x.dim() {
                                let idx = offsets[a] + v * x.dim() + l;
                                rel[idx] = f.sub(rel[idx], m.get(xi, l));
                            }
                            rels.push(rel);
                        }
                    }
                }
            }
        }
        if rels.is_empty() {
            return total;
        }
        total - Matrix::from_columns(&f, total, &rels).rank()
    }

    #[test]
    fn coend_examples() {
        let k = f(5);
        let h = HopfAlgebra::constant(&z(2), &k);
        let triv = Comodule::trivial(&h);
        assert_eq!(coend_restricted(&h, &[triv.clone()], DEFAULT_HOM_BUDGET).unwrap().carrier_dim(), 1);
        let reg = Comodule::regular(&h);
        let c = coend_restricted(&h, &[reg.clone()], DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(c.carrier_dim(), 2);
        assert!(c.relations_hold(DEFAULT_HOM_BUDGET).unwrap());
        assert_eq!(coend_restricted(&h, &[], DEFAULT_HOM_BUDGET).unwrap().carrier_dim(), 0);
        assert_eq!(primal_carrier_dim(&[reg.clone()]), 2);
        assert_eq!(primal_carrier_dim(&[triv.clone(), reg.clone()]), 2);
        assert_eq!(coend_restricted(&h, &[triv, reg], DEFAULT_HOM_BUDGET).unwrap().carrier_dim(), 2);
    }

    #[test]
    fn coend_matches_primal_oracle() {
        let k = f(3);
        for h in [
            HopfAlgebra::constant(&z(3), &k),
            HopfAlgebra::mu(3, &k).unwrap(),
            HopfAlgebra::mu(4, &k).unwrap(),
            HopfAlgebra::constant(&z(2), &f(2)),
        ] {
            let reg = Comodule::regular(&h);
            let triv = Comodule::trivial(&h);
            let rr = reg.tensor(&reg).unwrap();
            for s in [vec![reg.clone()], vec![triv.clone()], vec![reg.clone(), triv.clone()], vec![reg.clone(), rr.clone()]] {
                let c = coend_restricted(&h, &s, DEFAULT_HOM_BUDGET).unwrap();
                assert_eq!(c.carrier_dim(), primal_carrier_dim(&s));
                assert!(c.relations_hold(DEFAULT_HOM_BUDGET).unwrap());
            }
            // incremental adjoining agrees with solving everything at once
            let inc = coend_with_adjoined(&h, &[reg.clone()], &[rr.clone(), triv.clone()], DEFAULT_HOM_BUDGET).unwrap();
            let all = coend_restricted(&h, &[reg.clone(), rr.clone(), triv.clone()], DEFAULT_HOM_BUDGET).unwrap();
            assert_eq!(inc.carrier_dim(), all.carrier_dim());
            assert!(inc.relations_hold(DEFAULT_HOM_BUDGET).unwrap());
        }
    }

    #[test]
    fn reconstruction_examples() {
        let h = HopfAlgebra::constant(&z(2), &f(5));
        let rep = verify_reconstruction(&h, &[Comodule::regular(&h)], DEFAULT_HOM_BUDGET).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.carrier_dim, 2);
        let rep = verify_reconstruction(&h, &[Comodule::trivial(&h)], DEFAULT_HOM_BUDGET).unwrap();
        assert_eq!(rep.status, ReconstructionStatus::NotGenerating { image_dim: 1 });
        let k = rep.canonical.unwrap();
        assert_eq!(k.column(0), h.algebra().unit().to_vec());
        let h = HopfAlgebra::constant(&FiniteGroup::symmetric(3), &f(7));
        let rep = verify_reconstruction(&h, &[Comodule::regular(&h)], DEFAULT_HOM_BUDGET).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.carrier_dim, 6);
    }

    #[test]
    fn reconstruction_of_non_constant_hopf_algebras() {
        for (n, p) in [(2, 2), (3, 3), (4, 3), (6, 2)] {
            let h = HopfAlgebra::mu(n, &f(p)).unwrap();
            let rep = verify_reconstruction(&h, &[Comodule::regular(&h)], DEFAULT_HOM_BUDGET).unwrap();
            assert!(rep.passed(), "mu_{n} over F_{p}: {rep:?}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let r = Representation::regular(&z(3), &f(5));
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let back: RepJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Representation::from_json(&back).unwrap(), r);
    }
}
