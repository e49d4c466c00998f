//! Idempotents as a Boolean algebra, and finite Stone duality.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::vec;

/// Exhaustive idempotent search is used up to this many algebra elements.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolElement {
    Idempotent(AlgebraElement),
    /// A subset of a finite point set, as a bitmask.
    Subset(u64),
}

/// A finite Boolean algebra given by operation tables on element indices.
#[derive(Clone, Debug)]
pub struct BooleanAlgebra {
    elements: Vec<BoolElement>,
    meet: Vec<usize>,
    join: Vec<usize>,
    complement: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// A finite (hence discrete) Stone space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoneSpace {
    pub points: usize,
}

/// `B ≅ Clopen(Spec B)`: element index ↦ bitmask of the atoms below it.
#[derive(Clone, Debug)]
pub struct StoneIso {
    /// Element indices of the atoms; bit `i` of a mask refers to `atoms[i]`.
    pub atoms: Vec<usize>,
    pub masks: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BooleanJson {
    Atoms { atoms: usize },
}

impl BooleanAlgebra {
    /// Build from tables, verifying every Boolean axiom exhaustively.
    pub fn new(
        elements: Vec<BoolElement>,
        meet: Vec<usize>,
        join: Vec<usize>,
        complement: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<BooleanAlgebra> {
        let n = elements.len();
        let b = BooleanAlgebra {
            elements,
            meet,
            join,
            complement,
            bottom,
            top,
        };
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidInput(format!("{n} elements is not a power of two")));
        }
        if b.meet.len() != n * n
            || b.join.len() != n * n
            || b.complement.len() != n
            || bottom >= n
            || top >= n
            || b.meet.iter().chain(&b.join).chain(&b.complement).any(|&x| x >= n)
        {
            return Err(Error::InvalidInput("Boolean tables have wrong shape".into()));
        }
        b.check_axioms()?;
        Ok(b)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let fail = |what: &str| Err(Error::InvalidInput(format!("Boolean axiom fails: {what}")));
        for x in 0..n {
            if self.meet(x, self.top) != x || self.join(x, self.bottom) != x {
                return fail("identity");
            }
            let c = self.complement(x);
            if self.meet(x, c) != self.bottom || self.join(x, c) != self.top {
                return fail("complement");
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return fail("commutativity");
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return fail("absorption");
                }
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                        || self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), self.join(x, z))
                    {
                        return fail("distributivity");
                    }
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                        || self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                    {
                        return fail("associativity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(j: &BooleanJson) -> Result<BooleanAlgebra> {
        match j {
            BooleanJson::Atoms { atoms } => clopen_algebra(StoneSpace { points: *atoms }),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[BoolElement] {
        &self.elements
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn complement(&self, x: usize) -> usize {
        self.complement[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    /// Minimal nonzero elements, in index order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| x != self.bottom)
            .filter(|&x| (0..self.len()).all(|y| y == self.bottom || y == x || !self.leq(y, x)))
            .collect()
    }
}

/// All idempotents of `A`, sorted by coordinates.
pub fn idempotents(a: &Algebra, seed: u64) -> Vec<AlgebraElement> {
    if let Some(all) = a.idempotents_exhaustive(EXHAUSTIVE_LIMIT) {
        return all;
    }
    let prim = a.base_primitive_idempotents(seed);
    assert!(prim.len() < 64, "too many primitive idempotents");
    let f = a.field();
    let mut out: Vec<_> = (0..1u64 << prim.len())
        .map(|mask| {
            prim.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(a.zero(), |acc, (_, e)| vec::add(f, &acc, e))
        })
        .collect();
    out.sort();
    out
}

/// The Boolean algebra of idempotents with `x∧y = xy`, `x∨y = x+y−xy`,
/// `¬x = 1−x`.
pub fn idempotent_boolean_algebra(a: &Algebra, seed: u64) -> Result<BooleanAlgebra> {
    let f = a.field();
    let elems = idempotents(a, seed);
    let n = elems.len();
    let index = |v: &AlgebraElement| -> usize {
        elems.binary_search(v).expect("idempotents are closed under Boolean operations")
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let xy = a.mul(&elems[i], &elems[j]);
            meet[i * n + j] = index(&xy);
            join[i * n + j] = index(&vec::sub(f, &vec::add(f, &elems[i], &elems[j]), &xy));
        }
    }
    let complement = elems
        .iter()
        .map(|e| index(&vec::sub(f, a.unit(), e)))
        .collect();
    let bottom = index(&a.zero());
    let top = index(&a.unit().to_vec());
    BooleanAlgebra::new(
        elems.into_iter().map(BoolElement::Idempotent).collect(),
        meet,
        join,
        complement,
        bottom,
        top,
    )
}

pub fn stone_spectrum(b: &BooleanAlgebra) -> StoneSpace {
    StoneSpace {
        points: b.atoms().len(),
    }
}

/// The powerset algebra; element index equals its bitmask.
pub fn clopen_algebra(x: StoneSpace) -> Result<BooleanAlgebra> {
    if x.points > 16 {
        return Err(Error::InvalidInput("powerset too large to tabulate".into()));
    }
    let n = 1usize << x.points;
    let full = n - 1;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            meet[i * n + j] = i & j;
            join[i * n + j] = i | j;
        }
    }
    BooleanAlgebra::new(
        (0..n as u64).map(BoolElement::Subset).collect(),
        meet,
        join,
        (0..n).map(|i| full ^ i).collect(),
        0,
        full,
    )
}

/// Continuous functions `X → k`, i.e. the diagonal algebra `k^X`.
pub fn cont_algebra(x: StoneSpace, field: &Field) -> Result<Algebra> {
    if x.points == 0 {
        return Err(Error::Empty);
    }
    Ok(Algebra::diagonal(field, x.points))
}

/// The canonical isomorphism onto the clopens of the spectrum, checked to
/// be bijective and to preserve meet, join and complement.
pub fn stone_roundtrip(b: &BooleanAlgebra) -> Result<StoneIso> {
    let atoms = b.atoms();
    if atoms.len() >= 64 {
        return Err(Error::InvalidInput("too many atoms".into()));
    }
    let masks: Vec<u64> = (0..b.len())
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| b.leq(a, x))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let mut seen = masks.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != b.len() || b.len() != 1usize << atoms.len() {
        return Err(Error::InvalidInput("atom map is not bijective".into()));
    }
    let full = (1u64 << atoms.len()) - 1;
    for x in 0..b.len() {
        if masks[b.complement(x)] != full ^ masks[x] {
            return Err(Error::NotAMorphism("complement".into()));
        }
        for y in 0..b.len() {
            if masks[b.meet(x, y)] != masks[x] & masks[y] || masks[b.join(x, y)] != masks[x] | masks[y] {
                return Err(Error::NotAMorphism("meet or join".into()));
            }
        }
    }
    Ok(StoneIso { atoms, masks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    #[test]
    fn idempotent_algebra_examples() {
        let b = idempotent_boolean_algebra(&Algebra::diagonal(&f(3), 2), 0).unwrap();
        assert_eq!(b.len(), 4);
        let local = Algebra::quotient_poly(&Poly::from_ints(&f(2), &[0, 0, 1])).unwrap();
        assert_eq!(idempotent_boolean_algebra(&local, 0).unwrap().len(), 2);
        assert_eq!(idempotent_boolean_algebra(&Algebra::diagonal(&f(2), 4), 0).unwrap().len(), 16);
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(stone_spectrum(&clopen_algebra(StoneSpace { points: 1 }).unwrap()).points, 1);
        let b16 = idempotent_boolean_algebra(&Algebra::diagonal(&f(2), 4), 0).unwrap();
        assert_eq!(stone_spectrum(&b16).points, 4);
        let x6 = Algebra::quotient_poly(&Poly::from_ints(&f(2), &[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let b = idempotent_boolean_algebra(&x6, 0).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(stone_spectrum(&b).points, 2);
    }

    #[test]
    fn clopen_examples() {
        assert_eq!(clopen_algebra(StoneSpace { points: 1 }).unwrap().len(), 2);
        assert_eq!(clopen_algebra(StoneSpace { points: 3 }).unwrap().len(), 8);
        let degenerate = clopen_algebra(StoneSpace { points: 0 }).unwrap();
        assert_eq!(degenerate.len(), 1);
        assert_eq!(degenerate.bottom(), degenerate.top());
    }

    #[test]
    fn cont_algebra_examples() {
        assert_eq!(cont_algebra(StoneSpace { points: 1 }, &f(2)).unwrap().dim(), 1);
        let k3 = cont_algebra(StoneSpace { points: 3 }, &f(5)).unwrap();
        assert_eq!(k3.points().len(), 3);
        assert_eq!(k3.pi0().dim(), 3);
        assert_eq!(cont_algebra(StoneSpace { points: 0 }, &f(5)).unwrap_err(), Error::Empty);
        for n in 1..=5 {
            for p in [2, 3] {
                let x = StoneSpace { points: n };
                let a = cont_algebra(x, &f(p)).unwrap();
                assert_eq!(stone_spectrum(&idempotent_boolean_algebra(&a, 0).unwrap()), x);
            }
        }
    }

    #[test]
    fn roundtrip_examples() {
        let two = clopen_algebra(StoneSpace { points: 1 }).unwrap();
        assert_eq!(stone_roundtrip(&two).unwrap().masks, vec![0, 1]);
        let b16 = idempotent_boolean_algebra(&Algebra::diagonal(&f(2), 4), 0).unwrap();
        assert_eq!(stone_roundtrip(&b16).unwrap().atoms.len(), 4);
        let b8 = idempotent_boolean_algebra(&Algebra::diagonal(&f(3), 3), 0).unwrap();
        let iso = stone_roundtrip(&b8).unwrap();
        assert_eq!(iso.atoms.len(), 3);
        for x in 0..8 {
            if let BoolElement::Idempotent(e) = &b8.elements()[x] {
                // atoms of k^3 are the coordinate idempotents
                let expect = e.iter().enumerate().fold(0u64, |m, (i, &c)| m | (c as u64) << (2 - i));
                assert_eq!(iso.masks[x], expect);
            }
        }
    }

    #[test]
    fn structural_enumeration_matches_exhaustive() {
        let a = Algebra::quotient_poly(&Poly::from_ints(&f(3), &[0, 0, 1, 0, 1])).unwrap();
        let prim = a.base_primitive_idempotents(7);
        let mut subset: Vec<_> = (0..1u64 << prim.len())
            .map(|m| {
                prim.iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .fold(a.zero(), |acc, (_, e)| vec::add(a.field(), &acc, e))
            })
            .collect();
        subset.sort();
        assert_eq!(subset, a.idempotents_exhaustive(EXHAUSTIVE_LIMIT).unwrap());
    }

    #[test]
    fn tables_are_rejected_when_not_boolean() {
        // three elements
        let r = BooleanAlgebra::new(
            (0..3).map(BoolElement::Subset).collect(),
            vec![0; 9],
            vec![0; 9],
            vec![0; 3],
            0,
            2,
        );
        assert!(r.is_err());
        // a chain of four is distributive but not complemented
        let mn = |i: usize, j: usize| i.min(j);
        let mx = |i: usize, j: usize| i.max(j);
        let r = BooleanAlgebra::new(
            (0..4).map(BoolElement::Subset).collect(),
            (0..16).map(|k| mn(k / 4, k % 4)).collect(),
            (0..16).map(|k| mx(k / 4, k % 4)).collect(),
            vec![3, 2, 1, 0],
            0,
            3,
        );
        assert!(r.is_err());
    }
}
