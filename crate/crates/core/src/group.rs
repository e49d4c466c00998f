//! Finite groups as Cayley tables, with identity at index 0.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

/// `{"order": m, "table": [[...], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A group homomorphism as the list of images.
pub type GroupHom = Vec<usize>;

impl FiniteGroup {
    /// Validate a Cayley table (`table[a*m+b] = a·b`).
    pub fn new(order: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::Group("table shape".into()));
        }
        let m = order;
        for a in 0..m {
            if table[a] != a || table[a * m] != a {
                return Err(Error::Group("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; m];
        for a in 0..m {
            for b in 0..m {
                if table[a * m + b] == 0 && table[b * m + a] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::Group(format!("element {a} has no inverse")));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    if table[ab * m + c] != table[a * m + table[b * m + c]] {
                        return Err(Error::Group(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, inv })
    }

    pub fn from_json(j: &GroupJson) -> Result<FiniteGroup> {
        if j.table.len() != j.order || j.table.iter().any(|r| r.len() != j.order) {
            return Err(Error::Group("table shape".into()));
        }
        FiniteGroup::new(j.order, j.table.concat())
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order,
            table: self.table.chunks(self.order).map(|r| r.to_vec()).collect(),
        }
    }

    /// Group generated by permutations of `0..n` (elements as images);
    /// the identity permutation gets index 0, the rest are in BFS order.
    pub fn from_permutations(n: usize, gens: &[Vec<usize>]) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
        if gens.iter().any(|g| {
            let mut s = g.clone();
            s.sort_unstable();
            s != (0..n).collect::<Vec<_>>()
        }) {
            return Err(Error::Group("generator is not a permutation".into()));
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..n).map(|i| a[b[i]]).collect() };
        let mut elems: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = compose(&elems[i], g);
                if !elems.contains(&x) {
                    elems.push(x);
                }
            }
            i += 1;
        }
        let m = elems.len();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let ab = compose(&elems[a], &elems[b]);
                table[a * m + b] = elems.iter().position(|x| *x == ab).expect("closed");
            }
        }
        Ok((FiniteGroup::new(m, table)?, elems))
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::new(n, table).expect("cyclic group")
    }

    /// Direct product, element `(a, b)` at index `a * |H| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (self.order, other.order);
        let mn = m * n;
        let mut table = vec![0; mn * mn];
        for x in 0..mn {
            for y in 0..mn {
                table[x * mn + y] = self.mul(x / n, y / n) * n + other.mul(x % n, y % n);
            }
        }
        FiniteGroup::new(mn, table).expect("product group")
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(n.max(1), &gens).expect("symmetric group").0
    }

    /// Symmetries of a regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(n, &[rot, refl]).expect("dihedral group").0
    }

    pub fn quaternion() -> FiniteGroup {
        // elements ±1, ±i, ±j, ±k as (sign, unit) with unit 0..4 = 1, i, j, k
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let idx = |neg: bool, u: usize| u * 2 + neg as usize;
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (s, u) = unit_mul(a / 2, b / 2);
                table[a * 8 + b] = idx(s ^ (a % 2 == 1) ^ (b % 2 == 1), u);
            }
        }
        FiniteGroup::new(8, table).expect("quaternion group")
    }

    /// Every group of order at most 8 up to isomorphism, with a name.
    pub fn catalog() -> Vec<(&'static str, FiniteGroup)> {
        let c = FiniteGroup::cyclic;
        vec![
            ("1", c(1)),
            ("Z2", c(2)),
            ("Z3", c(3)),
            ("Z4", c(4)),
            ("Z2xZ2", c(2).product(&c(2))),
            ("Z5", c(5)),
            ("Z6", c(6)),
            ("S3", FiniteGroup::symmetric(3)),
            ("Z7", c(7)),
            ("Z8", c(8)),
            ("Z4xZ2", c(4).product(&c(2))),
            ("Z2xZ2xZ2", c(2).product(&c(2)).product(&c(2))),
            ("D4", FiniteGroup::dihedral(4)),
            ("Q8", FiniteGroup::quaternion()),
        ]
    }

    pub fn by_name(name: &str) -> Option<FiniteGroup> {
        let lower = name.to_ascii_lowercase();
        let alias = match lower.as_str() {
            "trivial" | "z1" => "1",
            "klein" | "v4" | "z2^2" => "Z2xZ2",
            "z2^3" => "Z2xZ2xZ2",
            "d3" => "S3",
            _ => name,
        };
        FiniteGroup::catalog()
            .into_iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(alias))
            .map(|(_, g)| g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in 1..self.order {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// All subgroups, as sorted element lists, sorted by (size, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::from([vec![0usize]]);
        let mut frontier = vec![vec![0usize]];
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_err() {
                    let mut gens = h.clone();
                    gens.push(g);
                    let k = self.generated(&gens);
                    if found.insert(k.clone()) {
                        frontier.push(k);
                    }
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    pub fn is_hom(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// Extend generator images to a map on all of `self`, if consistent.
    fn extend(&self, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<GroupHom> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let v = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = v;
                    frontier.push(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        self.is_hom(target, &map).then_some(map)
    }

    /// All homomorphisms `self → target`, in lexicographic order of images.
    pub fn homs(&self, target: &FiniteGroup) -> Vec<GroupHom> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        loop {
            let ok = gens
                .iter()
                .zip(&images)
                .all(|(&g, &i)| self.element_order(g) % target.element_order(i) == 0);
            if ok {
                if let Some(m) = self.extend(target, &gens, &images) {
                    out.push(m);
                }
            }
            let mut k = 0;
            loop {
                if k == images.len() {
                    out.sort();
                    out.dedup();
                    return out;
                }
                images[k] += 1;
                if images[k] < target.order {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }

    /// An isomorphism `self → other`, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<GroupHom> {
        if self.order != other.order {
            return None;
        }
        self.homs(other).into_iter().find(|m| {
            let mut s = m.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == self.order
        })
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Quotient by the normal subgroup generated by `gens`, with the
    /// projection map. Cosets are numbered by least representative.
    pub fn quotient_by_normal_closure(&self, gens: &[usize]) -> (FiniteGroup, GroupHom) {
        let mut conj: Vec<usize> = Vec::new();
        for &g in gens {
            for x in 0..self.order {
                conj.push(self.mul(self.mul(x, g), self.inv(x)));
            }
        }
        let n = self.generated(&conj);
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if proj[a] == usize::MAX {
                let id = reps.len();
                reps.push(a);
                for &h in &n {
                    proj[self.mul(a, h)] = id;
                }
            }
        }
        let k = reps.len();
        let mut table = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = proj[self.mul(reps[i], reps[j])];
            }
        }
        (FiniteGroup::new(k, table).expect("quotient by a normal subgroup"), proj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_pairwise_non_isomorphic() {
        let cat = FiniteGroup::catalog();
        assert_eq!(cat.len(), 14);
        for (i, (_, g)) in cat.iter().enumerate() {
            for (_, h) in &cat[i + 1..] {
                assert!(!g.is_isomorphic(h));
            }
        }
        assert!(!FiniteGroup::symmetric(3).is_abelian());
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
    }

    #[test]
    fn hom_counts() {
        let s3 = FiniteGroup::symmetric(3);
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(s3.homs(&z2).len(), 2);
        assert_eq!(z2.homs(&z3).len(), 1);
        assert_eq!(s3.homs(&s3).len(), 10);
        assert_eq!(z3.homs(&s3).len(), 3);
        // brute force over all maps for tiny groups
        for (_, g) in FiniteGroup::catalog().iter().take(5) {
            for (_, h) in FiniteGroup::catalog().iter().take(5) {
                let total = h.order().pow(g.order() as u32);
                let brute = (0..total)
                    .filter(|&code| {
                        let map: Vec<usize> =
                            (0..g.order()).map(|i| code / h.order().pow(i as u32) % h.order()).collect();
                        g.is_hom(h, &map)
                    })
                    .count();
                assert_eq!(g.homs(h).len(), brute);
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).subgroups().len(), 10);
        assert_eq!(FiniteGroup::quaternion().subgroups().len(), 6);
        assert_eq!(FiniteGroup::cyclic(6).subgroups().len(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::new(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::new(0, vec![]).is_err());
        let j = GroupJson {
            order: 2,
            table: vec![vec![0, 1], vec![1, 0]],
        };
        assert_eq!(FiniteGroup::from_json(&j).unwrap(), FiniteGroup::cyclic(2));
    }

    #[test]
    fn abelianization_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let comms: Vec<usize> = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| s3.mul(s3.mul(a, b), s3.mul(s3.inv(a), s3.inv(b))))
            .collect();
        let (q, proj) = s3.quotient_by_normal_closure(&comms);
        assert_eq!(q.order(), 2);
        assert!(s3.is_hom(&q, &proj));
    }
}
