//! Finite G-sets: limits, colimits, orbits, the forgetful fibre functor and
//! its automorphism group.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, GroupJson};

/// Upper bound on the number of tuples a limit may enumerate.
pub const LIMIT_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: FiniteGroup,
    size: usize,
    /// `action[g * size + x] = g·x`
    action: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: GroupJson,
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

/// An equivariant function, as its table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EquivariantMap {
    pub map: Vec<usize>,
}

impl GSet {
    pub fn new(group: &FiniteGroup, size: usize, action: Vec<usize>) -> Result<GSet> {
        let m = group.order();
        if action.len() != m * size || action.iter().any(|&y| y >= size) {
            return Err(Error::GSet("action table shape".into()));
        }
        let x = GSet {
            group: group.clone(),
            size,
            action,
        };
        for p in 0..size {
            if x.act(0, p) != p {
                return Err(Error::GSet(format!("identity moves point {p}")));
            }
        }
        for g in 0..m {
            for h in 0..m {
                for p in 0..size {
                    if x.act(g, x.act(h, p)) != x.act(group.mul(g, h), p) {
                        return Err(Error::GSet(format!("compatibility fails at ({g}, {h}, {p})")));
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn from_json(j: &GSetJson) -> Result<GSet> {
        let g = FiniteGroup::from_json(&j.group)?;
        if j.action.len() != g.order() || j.action.iter().any(|r| r.len() != j.size) {
            return Err(Error::GSet("action table shape".into()));
        }
        GSet::new(&g, j.size, j.action.concat())
    }

    pub fn to_json(&self) -> GSetJson {
        GSetJson {
            group: self.group.to_json(),
            size: self.size,
            action: (0..self.group.order())
                .map(|g| (0..self.size).map(|x| self.act(g, x)).collect())
                .collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup, size: usize) -> GSet {
        let action = (0..group.order()).flat_map(|_| 0..size).collect();
        GSet::new(group, size, action).expect("trivial action")
    }

    pub fn empty(group: &FiniteGroup) -> GSet {
        GSet::trivial(group, 0)
    }

    pub fn terminal(group: &FiniteGroup) -> GSet {
        GSet::trivial(group, 1)
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> GSet {
        let m = group.order();
        let action = (0..m).flat_map(|g| (0..m).map(move |x| (g, x))).map(|(g, x)| group.mul(g, x)).collect();
        GSet::new(group, m, action).expect("regular action")
    }

    /// Left cosets `G/H`, numbered by least representative.
    pub fn cosets(group: &FiniteGroup, subgroup: &[usize]) -> Result<GSet> {
        let m = group.order();
        if group.generated(subgroup).len() != subgroup.len() {
            return Err(Error::GSet("not a subgroup".into()));
        }
        let mut label = vec![usize::MAX; m];
        let mut n = 0;
        for a in 0..m {
            if label[a] == usize::MAX {
                for &h in subgroup {
                    label[group.mul(a, h)] = n;
                }
                n += 1;
            }
        }
        let mut reps = vec![0; n];
        for a in (0..m).rev() {
            reps[label[a]] = a;
        }
        let action = (0..m)
            .flat_map(|g| reps.iter().map(move |&r| (g, r)))
            .map(|(g, r)| label[group.mul(g, r)])
            .collect();
        GSet::new(group, n, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(g, x) == x).collect()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
        set.into_iter().collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbit(0).len() == self.size
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.stabilizer(x).len() == self.group.order()).collect()
    }

    pub fn is_equivariant(&self, target: &GSet, map: &[usize]) -> bool {
        map.len() == self.size
            && map.iter().all(|&y| y < target.size)
            && (0..self.group.order())
                .all(|g| (0..self.size).all(|x| map[self.act(g, x)] == target.act(g, map[x])))
    }

    pub fn coproduct(&self, other: &GSet) -> Result<GSet> {
        same_group(self, other)?;
        let n = self.size + other.size;
        let action = (0..self.group.order())
            .flat_map(|g| {
                (0..self.size)
                    .map(move |x| self.act(g, x))
                    .chain((0..other.size).map(move |y| self.size + other.act(g, y)))
            })
            .collect();
        GSet::new(&self.group, n, action)
    }
}

impl EquivariantMap {
    pub fn new(source: &GSet, target: &GSet, map: Vec<usize>) -> Result<EquivariantMap> {
        same_group(source, target)?;
        if !source.is_equivariant(target, &map) {
            return Err(Error::NotAMorphism("map is not equivariant".into()));
        }
        Ok(EquivariantMap { map })
    }

    pub fn identity(x: &GSet) -> EquivariantMap {
        EquivariantMap { map: (0..x.size).collect() }
    }

    pub fn compose(&self, then: &EquivariantMap) -> EquivariantMap {
        EquivariantMap {
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        }
    }

    pub fn is_bijective(&self, target: &GSet) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len() && self.map.len() == target.size
    }
}

fn same_group(a: &GSet, b: &GSet) -> Result<()> {
    if a.group != b.group {
        return Err(Error::GSet("objects over different groups".into()));
    }
    Ok(())
}

/// The forgetful functor: the underlying set of `X`, which is `0..size`.
pub fn fiber(x: &GSet) -> Vec<usize> {
    (0..x.size).collect()
}

/// A finite diagram: objects, and arrows `(source, target, map)`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub group: FiniteGroup,
    pub objects: Vec<GSet>,
    pub arrows: Vec<(usize, usize, EquivariantMap)>,
}

/// A (co)limit with its legs (`apex → X_i` for limits, `X_i → apex` for
/// colimits).
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: GSet,
    pub legs: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn new(group: &FiniteGroup, objects: Vec<GSet>, arrows: Vec<(usize, usize, Vec<usize>)>) -> Result<Diagram> {
        for x in &objects {
            if x.group != *group {
                return Err(Error::GSet("objects over different groups".into()));
            }
        }
        let arrows = arrows
            .into_iter()
            .map(|(s, t, m)| {
                if s >= objects.len() || t >= objects.len() {
                    return Err(Error::GSet("arrow endpoint out of range".into()));
                }
                Ok((s, t, EquivariantMap::new(&objects[s], &objects[t], m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram {
            group: group.clone(),
            objects,
            arrows,
        })
    }

    pub fn discrete(group: &FiniteGroup, objects: Vec<GSet>) -> Result<Diagram> {
        Diagram::new(group, objects, vec![])
    }

    pub fn parallel(x: &GSet, y: &GSet, f: Vec<usize>, g: Vec<usize>) -> Result<Diagram> {
        Diagram::new(&x.group, vec![x.clone(), y.clone()], vec![(0, 1, f), (0, 1, g)])
    }

    /// `X → Z ← Y` with `Z` at index 2.
    pub fn cospan(x: &GSet, y: &GSet, z: &GSet, f: Vec<usize>, g: Vec<usize>) -> Result<Diagram> {
        Diagram::new(&x.group, vec![x.clone(), y.clone(), z.clone()], vec![(0, 2, f), (1, 2, g)])
    }

    /// `X ← Z → Y` with `Z` at index 2.
    pub fn span(x: &GSet, y: &GSet, z: &GSet, f: Vec<usize>, g: Vec<usize>) -> Result<Diagram> {
        Diagram::new(&x.group, vec![x.clone(), y.clone(), z.clone()], vec![(2, 0, f), (2, 1, g)])
    }

    /// Compatible tuples `(x_i)`, i.e. the limit of the underlying sets,
    /// in lexicographic order.
    pub fn compatible_tuples(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.objects.len();
        // arrows checked once both endpoints are assigned
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, (s, t, _)) in self.arrows.iter().enumerate() {
            checks[(*s).max(*t)].push(k);
        }
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(
            d: &Diagram,
            checks: &[Vec<usize>],
            i: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) -> Result<()> {
            if i == cur.len() {
                if out.len() >= LIMIT_CAP {
                    return Err(Error::SearchBudgetExceeded {
                        needed: LIMIT_CAP as u128 + 1,
                        budget: LIMIT_CAP as u128,
                    });
                }
                out.push(cur.clone());
                return Ok(());
            }
            for x in 0..d.objects[i].size {
                cur[i] = x;
                if checks[i].iter().all(|&k| {
                    let (s, t, f) = &d.arrows[k];
                    f.map[cur[*s]] == cur[*t]
                }) {
                    rec(d, checks, i + 1, cur, out)?;
                }
            }
            Ok(())
        }
        rec(self, &checks, 0, &mut cur, &mut out)?;
        Ok(out)
    }
}

pub fn limit(d: &Diagram) -> Result<Cone> {
    let tuples = d.compatible_tuples()?;
    let m = d.group.order();
    let mut action = Vec::with_capacity(m * tuples.len());
    for g in 0..m {
        for t in &tuples {
            let moved: Vec<usize> = t.iter().enumerate().map(|(i, &x)| d.objects[i].act(g, x)).collect();
            action.push(tuples.binary_search(&moved).expect("compatible tuples are stable"));
        }
    }
    let apex = GSet::new(&d.group, tuples.len(), action)?;
    let legs = (0..d.objects.len())
        .map(|i| tuples.iter().map(|t| t[i]).collect())
        .collect();
    Ok(Cone { apex, legs })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Quotient of the disjoint union by the relation `x ~ f(x)` over all
/// arrows; classes are numbered by least element of the union.
pub fn colimit(d: &Diagram) -> Result<Cone> {
    let offsets: Vec<usize> = d
        .objects
        .iter()
        .scan(0, |acc, x| {
            let o = *acc;
            *acc += x.size;
            Some(o)
        })
        .collect();
    let total: usize = d.objects.iter().map(|x| x.size).sum();
    let mut uf = UnionFind((0..total).collect());
    for (s, t, f) in &d.arrows {
        for (x, &y) in f.map.iter().enumerate() {
            uf.union(offsets[*s] + x, offsets[*t] + y);
        }
    }
    let mut class = vec![usize::MAX; total];
    let mut reps = Vec::new();
    for u in 0..total {
        let r = uf.find(u);
        if class[r] == usize::MAX {
            class[r] = reps.len();
            reps.push(u);
        }
        class[u] = class[r];
    }
    let locate = |u: usize| -> (usize, usize) {
        let i = (0..d.objects.len())
            .find(|&j| u < offsets[j] + d.objects[j].size)
            .expect("index in range");
        (i, u - offsets[i])
    };
    let m = d.group.order();
    let mut action = Vec::with_capacity(m * reps.len());
    for g in 0..m {
        for &u in &reps {
            let (i, x) = locate(u);
            action.push(class[offsets[i] + d.objects[i].act(g, x)]);
        }
    }
    let apex = GSet::new(&d.group, reps.len(), action)?;
    let legs = (0..d.objects.len())
        .map(|i| (0..d.objects[i].size).map(|x| class[offsets[i] + x]).collect())
        .collect();
    Ok(Cone { apex, legs })
}

/// Orbit decomposition with the isomorphism `⊔ parts → X`.
#[derive(Clone, Debug)]
pub struct Orbits {
    pub parts: Vec<GSet>,
    /// `embeddings[k][i]` is the point of `X` for point `i` of part `k`.
    pub embeddings: Vec<Vec<usize>>,
}

impl Orbits {
    /// The coproduct of the parts and the map from it to `X`.
    pub fn coproduct_iso(&self) -> Result<(GSet, Vec<usize>)> {
        let g = match self.parts.first() {
            Some(p) => p.group.clone(),
            None => return Err(Error::Empty),
        };
        let mut acc = GSet::empty(&g);
        for p in &self.parts {
            acc = acc.coproduct(p)?;
        }
        Ok((acc, self.embeddings.concat()))
    }
}

pub fn orbits(x: &GSet) -> Orbits {
    let mut seen = vec![false; x.size];
    let mut parts = Vec::new();
    let mut embeddings = Vec::new();
    for p in 0..x.size {
        if seen[p] {
            continue;
        }
        let orb = x.orbit(p);
        for &q in &orb {
            seen[q] = true;
        }
        let action = (0..x.group.order())
            .flat_map(|g| orb.iter().map(move |&q| (g, q)))
            .map(|(g, q)| orb.binary_search(&x.act(g, q)).expect("orbit is stable"))
            .collect();
        parts.push(GSet::new(&x.group, orb.len(), action).expect("restricted action"));
        embeddings.push(orb);
    }
    Orbits { parts, embeddings }
}

/// All equivariant maps `X → Y`. Each orbit representative `x` may go to
/// any `y` whose stabilizer contains that of `x`; the number of candidates
/// is checked against `budget` before enumeration.
pub fn homs(x: &GSet, y: &GSet, budget: u128) -> Result<Vec<EquivariantMap>> {
    same_group(x, y)?;
    let orb = orbits(x);
    let reps: Vec<usize> = orb.embeddings.iter().map(|o| o[0]).collect();
    let choices: Vec<Vec<usize>> = reps
        .iter()
        .map(|&r| {
            let st = x.stabilizer(r);
            (0..y.size).filter(|&c| st.iter().all(|&g| y.act(g, c) == c)).collect()
        })
        .collect();
    let needed = choices
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::SearchBudgetExceeded { needed, budget });
    }
    if needed == 0 {
        return Ok(Vec::new());
    }
    let m = x.group.order();
    let mut out = Vec::new();
    let mut idx = vec![0usize; reps.len()];
    loop {
        let mut map = vec![usize::MAX; x.size];
        for (k, &r) in reps.iter().enumerate() {
            let c = choices[k][idx[k]];
            for g in 0..m {
                map[x.act(g, r)] = y.act(g, c);
            }
        }
        out.push(EquivariantMap { map });
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Subgroups up to conjugacy, one representative each.
pub fn subgroup_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for h in g.subgroups() {
        if seen.contains(&h) {
            continue;
        }
        for x in 0..g.order() {
            let mut c: Vec<usize> = h.iter().map(|&a| g.mul(g.mul(x, a), g.inv(x))).collect();
            c.sort_unstable();
            seen.insert(c);
        }
        out.push(h);
    }
    out
}

/// One G-set per isomorphism class with at most `bound` points (the empty
/// set included), as coproducts of coset spaces.
pub fn gsets_up_to(g: &FiniteGroup, bound: usize) -> Vec<GSet> {
    let transitive: Vec<GSet> = subgroup_classes(g)
        .iter()
        .map(|h| GSet::cosets(g, h).expect("subgroup"))
        .collect();
    let mut out = Vec::new();
    fn rec(t: &[GSet], start: usize, room: usize, acc: GSet, out: &mut Vec<GSet>) {
        out.push(acc.clone());
        for i in start..t.len() {
            if t[i].size <= room {
                let next = acc.coproduct(&t[i]).expect("same group");
                rec(t, i, room - t[i].size, next, out);
            }
        }
    }
    rec(&transitive, 0, bound, GSet::empty(g), &mut out);
    out
}

/// `Aut` of the fibre functor on G-sets of size at most `bound`.
#[derive(Clone, Debug)]
pub struct AutFiber {
    pub group: FiniteGroup,
    /// family index ↦ its value `σ_reg(1)` in `G`; a group isomorphism
    pub iso_to_g: GroupHom,
    /// `families[k][j]` is the permutation on `corpus[j]`
    pub families: Vec<Vec<Vec<usize>>>,
    pub corpus_size: usize,
    pub anchor_candidates: usize,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k % 2 == 0 { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Natural families `σ_X` on all G-sets of size `≤ bound`, found by brute
/// force over permutations of the regular G-set, extended along the maps
/// `g ↦ g·x` and then checked against every equivariant map in the corpus.
pub fn aut_fiber(g: &FiniteGroup, bound: usize) -> Result<AutFiber> {
    if bound < g.order() {
        return Err(Error::InvalidInput(format!(
            "size bound {bound} is below the group order {}",
            g.order()
        )));
    }
    let reg = GSet::regular(g);
    let corpus = gsets_up_to(g, bound);
    let maps: Vec<Vec<(usize, usize, EquivariantMap)>> = (0..corpus.len())
        .map(|i| {
            let mut v = Vec::new();
            for j in 0..corpus.len() {
                for f in homs(&corpus[i], &corpus[j], 1 << 24).expect("small corpus") {
                    v.push((i, j, f));
                }
            }
            v
        })
        .collect();
    let ends = homs(&reg, &reg, u128::MAX)?;
    let anchors: Vec<Vec<usize>> = permutations(g.order())
        .into_iter()
        .filter(|s| ends.iter().all(|f| (0..g.order()).all(|x| s[f.map[x]] == f.map[s[x]])))
        .collect();
    let anchor_candidates = anchors.len();
    let mut families = Vec::new();
    let mut values = Vec::new();
    for s in &anchors {
        // naturality along g ↦ g·x forces σ_X(x) = σ_reg(1)·x
        let fam: Vec<Vec<usize>> = corpus
            .iter()
            .map(|x| (0..x.size).map(|p| x.act(s[0], p)).collect())
            .collect();
        let on_reg: Vec<usize> = (0..g.order()).map(|x| reg.act(s[0], x)).collect();
        let natural = on_reg == *s
            && maps
                .iter()
                .flatten()
                .all(|(i, j, f)| (0..corpus[*i].size).all(|x| f.map[fam[*i][x]] == fam[*j][f.map[x]]));
        if natural {
            families.push(fam);
            values.push(s[0]);
        }
    }
    let n = families.len();
    // families are sorted by anchor permutation, so the identity is first
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let comp: Vec<Vec<usize>> = families[a]
                .iter()
                .zip(&families[b])
                .map(|(fa, fb)| fb.iter().map(|&y| fa[y]).collect())
                .collect();
            table[a * n + b] = families
                .iter()
                .position(|f| *f == comp)
                .ok_or_else(|| Error::GSet("natural families not closed under composition".into()))?;
        }
    }
    let group = FiniteGroup::new(n, table)?;
    let iso_to_g = values;
    if iso_to_g.len() != n || !group.is_hom(g, &iso_to_g) || iso_to_g.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::GSet("automorphism group does not match G".into()));
    }
    Ok(AutFiber {
        group,
        iso_to_g,
        families,
        corpus_size: corpus.len(),
        anchor_candidates,
    })
}

/// One axiom of the Galois-category checklist.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub group_order: usize,
    pub seed: u64,
    pub axioms: Vec<AxiomResult>,
}

impl GaloisReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }
}

fn random_gset(g: &FiniteGroup, transitive: &[GSet], rng: &mut ChaCha8Rng, max: usize) -> GSet {
    let mut x = GSet::empty(g);
    let parts = rng.gen_range(0..=3);
    for _ in 0..parts {
        let t = transitive.choose(rng).expect("nonempty");
        if x.size + t.size <= max {
            x = x.coproduct(t).expect("same group");
        }
    }
    x
}

fn random_map(x: &GSet, y: &GSet, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let hs = homs(x, y, 1 << 16).ok()?;
    hs.choose(rng).map(|f| f.map.clone())
}

/// Cone from `t` over `d` given by one map per object.
fn is_cone(d: &Diagram, legs: &[&EquivariantMap]) -> bool {
    d.arrows
        .iter()
        .all(|(s, tg, f)| legs[*s].map.iter().zip(&legs[*tg].map).all(|(&a, &b)| f.map[a] == b))
}

/// `Hom(T, lim) → Cones(T)` is a bijection.
fn limit_universal(d: &Diagram, lim: &Cone, t: &GSet) -> Result<bool> {
    let per: Vec<Vec<EquivariantMap>> = d.objects.iter().map(|x| homs(t, x, 1 << 16)).collect::<Result<_>>()?;
    let mut cones = BTreeSet::new();
    let mut idx = vec![0usize; per.len()];
    if per.iter().all(|p| !p.is_empty()) {
        loop {
            let legs: Vec<&EquivariantMap> = per.iter().zip(&idx).map(|(p, &i)| &p[i]).collect();
            if is_cone(d, &legs) {
                cones.insert(legs.iter().map(|l| l.map.clone()).collect::<Vec<_>>());
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < per[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let induced: BTreeSet<Vec<Vec<usize>>> = homs(t, &lim.apex, 1 << 16)?
        .iter()
        .map(|h| lim.legs.iter().map(|leg| h.map.iter().map(|&a| leg[a]).collect()).collect())
        .collect();
    let hom_count = homs(t, &lim.apex, 1 << 16)?.len();
    Ok(induced == cones && hom_count == cones.len())
}

/// `Hom(colim, T) → Cocones(T)` is a bijection.
fn colimit_universal(d: &Diagram, col: &Cone, t: &GSet) -> Result<bool> {
    let per: Vec<Vec<EquivariantMap>> = d.objects.iter().map(|x| homs(x, t, 1 << 16)).collect::<Result<_>>()?;
    let mut cocones = BTreeSet::new();
    let mut idx = vec![0usize; per.len()];
    if per.iter().all(|p| !p.is_empty()) {
        loop {
            let legs: Vec<&EquivariantMap> = per.iter().zip(&idx).map(|(p, &i)| &p[i]).collect();
            let ok = d
                .arrows
                .iter()
                .all(|(s, tg, f)| (0..f.map.len()).all(|x| legs[*tg].map[f.map[x]] == legs[*s].map[x]));
            if ok {
                cocones.insert(legs.iter().map(|l| l.map.clone()).collect::<Vec<_>>());
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < per[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let hs = homs(&col.apex, t, 1 << 16)?;
    let induced: BTreeSet<Vec<Vec<usize>>> = hs
        .iter()
        .map(|h| col.legs.iter().map(|leg| leg.iter().map(|&a| h.map[a]).collect()).collect())
        .collect();
    Ok(induced == cocones && hs.len() == cocones.len())
}

/// Set-level limit by filtering the full product, used as an independent
/// check of the tuple enumeration.
fn set_limit_size(d: &Diagram) -> usize {
    let sizes: Vec<usize> = d.objects.iter().map(|x| x.size).collect();
    let total: usize = sizes.iter().product();
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let t: Vec<usize> = sizes
                .iter()
                .map(|&s| {
                    let v = c % s;
                    c /= s;
                    v
                })
                .collect();
            d.arrows.iter().all(|(s, tg, f)| f.map[t[*s]] == t[*tg])
        })
        .count()
}

/// Set-level colimit: connected components of the graph on the disjoint
/// union, by depth-first search.
fn set_colimit_size(d: &Diagram) -> usize {
    let offsets: Vec<usize> = d
        .objects
        .iter()
        .scan(0, |a, x| {
            let o = *a;
            *a += x.size;
            Some(o)
        })
        .collect();
    let total: usize = d.objects.iter().map(|x| x.size).sum();
    let mut adj = vec![Vec::new(); total];
    for (s, t, f) in &d.arrows {
        for (x, &y) in f.map.iter().enumerate() {
            adj[offsets[*s] + x].push(offsets[*t] + y);
            adj[offsets[*t] + y].push(offsets[*s] + x);
        }
    }
    let mut seen = vec![false; total];
    let mut comps = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        comps += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    comps
}

fn random_diagram(
    g: &FiniteGroup,
    transitive: &[GSet],
    rng: &mut ChaCha8Rng,
    kind: usize,
    max: usize,
) -> Option<Diagram> {
    let x = random_gset(g, transitive, rng, max);
    let y = random_gset(g, transitive, rng, max);
    match kind {
        0 => Diagram::discrete(g, vec![x, y]).ok(),
        1 => {
            let f = random_map(&x, &y, rng)?;
            let h = random_map(&x, &y, rng)?;
            Diagram::parallel(&x, &y, f, h).ok()
        }
        2 => {
            let z = random_gset(g, transitive, rng, max);
            let f = random_map(&x, &z, rng)?;
            let h = random_map(&y, &z, rng)?;
            Diagram::cospan(&x, &y, &z, f, h).ok()
        }
        _ => {
            let z = random_gset(g, transitive, rng, max);
            let f = random_map(&z, &x, rng)?;
            let h = random_map(&z, &y, rng)?;
            Diagram::span(&x, &y, &z, f, h).ok()
        }
    }
}

/// Check the Galois-category axioms for finite G-sets with the forgetful
/// functor on `sample_budget` seeded random diagrams per axiom.
pub fn check_galois(g: &FiniteGroup, sample_budget: usize, seed: u64) -> Result<GaloisReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let transitive: Vec<GSet> = subgroup_classes(g).iter().map(|h| GSet::cosets(g, h)).collect::<Result<_>>()?;
    let max = (2 * g.order()).max(4);
    let probe = |rng: &mut ChaCha8Rng| random_gset(g, &transitive, rng, g.order().max(2));

    // GAL1: limits, with the empty diagram (terminal object) first
    let mut fail1 = None;
    let mut n1 = 0;
    let term = limit(&Diagram::discrete(g, vec![])?)?;
    if term.apex.size != 1 {
        fail1 = Some("terminal object is not a point".into());
    }
    while n1 < sample_budget && fail1.is_none() {
        let kind = [0, 1, 2][n1 % 3];
        let Some(d) = random_diagram(g, &transitive, &mut rng, kind, max) else { continue };
        n1 += 1;
        let lim = limit(&d)?;
        let t = probe(&mut rng);
        if !limit_universal(&d, &lim, &t)? {
            fail1 = Some(format!("limit universal property fails (kind {kind}, sizes {:?})", sizes(&d)));
        }
    }

    // GAL2: colimits, with the empty coproduct (initial object) first
    let mut fail2 = None;
    let mut n2 = 0;
    let init = colimit(&Diagram::discrete(g, vec![])?)?;
    if init.apex.size != 0 {
        fail2 = Some("initial object is not empty".into());
    }
    let t0 = probe(&mut rng);
    if homs(&init.apex, &t0, 1 << 16)?.len() != 1 {
        fail2 = Some("empty G-set is not initial".into());
    }
    while n2 < sample_budget && fail2.is_none() {
        let kind = [0, 1, 3][n2 % 3];
        let Some(d) = random_diagram(g, &transitive, &mut rng, kind, max) else { continue };
        n2 += 1;
        let col = colimit(&d)?;
        let t = probe(&mut rng);
        if !colimit_universal(&d, &col, &t)? {
            fail2 = Some(format!("colimit universal property fails (kind {kind}, sizes {:?})", sizes(&d)));
        }
    }

    // GAL3: orbit decomposition into connected objects
    let mut fail3 = None;
    for k in 0..sample_budget {
        let x = random_gset(g, &transitive, &mut rng, 3 * g.order());
        let o = orbits(&x);
        let ok = o.parts.iter().all(|p| p.is_transitive())
            && match o.coproduct_iso() {
                Ok((c, iso)) => EquivariantMap::new(&c, &x, iso.clone()).is_ok() && {
                    let s: BTreeSet<_> = iso.iter().collect();
                    s.len() == x.size
                },
                Err(_) => x.size == 0,
            };
        if !ok {
            fail3 = Some(format!("sample {k}: orbit decomposition of size {}", x.size));
            break;
        }
    }

    // GAL4: the fibre functor preserves finite limits and colimits
    let mut fail4 = None;
    let mut n4 = 0;
    while n4 < sample_budget && fail4.is_none() {
        let kind = n4 % 4;
        let Some(d) = random_diagram(g, &transitive, &mut rng, kind, max) else { continue };
        n4 += 1;
        let lim = limit(&d)?;
        let col = colimit(&d)?;
        if lim.apex.size != set_limit_size(&d) || col.apex.size != set_colimit_size(&d) {
            fail4 = Some(format!("fibre of a (co)limit differs (kind {kind}, sizes {:?})", sizes(&d)));
        }
    }

    // GAL5: bijective equivariant maps are isomorphisms, and non-isomorphic
    // objects of equal size admit no equivariant bijection
    let mut fail5 = None;
    for k in 0..sample_budget {
        let x = random_gset(g, &transitive, &mut rng, max);
        let y = random_gset(g, &transitive, &mut rng, max);
        for f in homs(&x, &y, 1 << 16).unwrap_or_default() {
            if f.is_bijective(&y) {
                let mut inv = vec![0; y.size];
                for (a, &b) in f.map.iter().enumerate() {
                    inv[b] = a;
                }
                if !y.is_equivariant(&x, &inv) {
                    fail5 = Some(format!("sample {k}: bijective map with non-equivariant inverse"));
                }
            }
        }
    }
    if fail5.is_none() && g.order() > 1 {
        let reg = GSet::regular(g);
        let triv = GSet::trivial(g, g.order());
        if homs(&triv, &reg, u128::MAX)?.iter().any(|f| f.is_bijective(&reg))
            || homs(&reg, &triv, u128::MAX)?.iter().any(|f| f.is_bijective(&triv))
        {
            fail5 = Some("regular and trivial G-sets of equal size are related by a bijective map".into());
        }
    }

    let mk = |axiom: &str, fail: Option<String>, samples: usize| AxiomResult {
        axiom: axiom.into(),
        passed: fail.is_none(),
        samples,
        witness: fail,
    };
    Ok(GaloisReport {
        group_order: g.order(),
        seed,
        axioms: vec![
            mk("GAL1", fail1, n1),
            mk("GAL2", fail2, n2),
            mk("GAL3", fail3, sample_budget),
            mk("GAL4", fail4, n4),
            mk("GAL5", fail5, sample_budget),
        ],
    })
}

fn sizes(d: &Diagram) -> Vec<usize> {
    d.objects.iter().map(|x| x.size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn orbit_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(orbits(&GSet::regular(&s3)).parts.len(), 1);
        assert_eq!(orbits(&GSet::trivial(&s3, 3)).parts.len(), 3);
        let x = GSet::new(&z(2), 4, vec![0, 1, 2, 3, 1, 0, 2, 3]).unwrap();
        let sizes: Vec<usize> = orbits(&x).parts.iter().map(|p| p.size()).collect();
        assert_eq!(sizes, vec![2, 1, 1]);
        let (c, iso) = orbits(&x).coproduct_iso().unwrap();
        assert!(EquivariantMap::new(&c, &x, iso).is_ok());
    }

    #[test]
    fn limit_examples() {
        let r = GSet::regular(&z(2));
        let p = limit(&Diagram::discrete(&z(2), vec![r.clone(), r.clone()]).unwrap()).unwrap();
        assert_eq!(p.apex.size(), 4);
        assert_eq!(orbits(&p.apex).parts.len(), 2);
        let id = vec![0, 1];
        let eq = limit(&Diagram::parallel(&r, &r, id.clone(), id.clone()).unwrap()).unwrap();
        assert_eq!(eq.apex.size(), 2);
        let t = limit(&Diagram::discrete(&z(2), vec![]).unwrap()).unwrap();
        assert_eq!(t.apex, GSet::terminal(&z(2)));
        assert!(Diagram::discrete(&z(2), vec![GSet::regular(&z(3))]).is_err());
    }

    #[test]
    fn colimit_examples() {
        let g = z(3);
        let a = GSet::trivial(&g, 2);
        let b = GSet::regular(&g);
        assert_eq!(colimit(&Diagram::discrete(&g, vec![a, b.clone()]).unwrap()).unwrap().apex.size(), 5);
        let id: Vec<usize> = (0..3).collect();
        let c = colimit(&Diagram::parallel(&b, &b, id.clone(), id).unwrap()).unwrap();
        assert_eq!(c.apex.size(), 3);
        let r2 = GSet::regular(&z(2));
        let swapped = colimit(&Diagram::parallel(&r2, &r2, vec![0, 1], vec![1, 0]).unwrap()).unwrap();
        assert_eq!(swapped.apex.size(), 1);
    }

    #[test]
    fn coequalizer_of_two_points_of_a_trivial_set() {
        // maps from a point must land in fixed points, so for the regular
        // Z/2-set there are none; the coequalizer of the two points of a
        // trivial 2-point set is a point
        let g = z(2);
        assert!(homs(&GSet::terminal(&g), &GSet::regular(&g), 100).unwrap().is_empty());
        let t = GSet::trivial(&g, 2);
        let c = colimit(&Diagram::parallel(&GSet::terminal(&g), &t, vec![0], vec![1]).unwrap()).unwrap();
        assert_eq!(c.apex.size(), 1);
    }

    #[test]
    fn fiber_examples() {
        let g = FiniteGroup::symmetric(3);
        let x = GSet::regular(&g);
        let y = GSet::cosets(&g, &g.subgroups()[1]).unwrap();
        assert_eq!(fiber(&x).len(), 6);
        let p = limit(&Diagram::discrete(&g, vec![x.clone(), y.clone()]).unwrap()).unwrap();
        assert_eq!(fiber(&p.apex).len(), x.size() * y.size());
        let f = homs(&x, &y, 1000).unwrap();
        let d = Diagram::parallel(&x, &y, f[0].map.clone(), f[1].map.clone()).unwrap();
        assert_eq!(colimit(&d).unwrap().apex.size(), set_colimit_size(&d));
    }

    #[test]
    fn hom_examples() {
        for (_, g) in FiniteGroup::catalog().into_iter().filter(|(_, g)| g.order() <= 6) {
            let reg = GSet::regular(&g);
            for x in gsets_up_to(&g, 4) {
                let hs = homs(&reg, &x, 1 << 20).unwrap();
                assert_eq!(hs.len(), x.size());
                // evaluation at the identity is a bijection
                let evals: BTreeSet<usize> = hs.iter().map(|h| h.map[0]).collect();
                assert_eq!(evals.len(), x.size());
                assert_eq!(homs(&GSet::terminal(&g), &x, 100).unwrap().len(), x.fixed_points().len());
                assert_eq!(homs(&x, &GSet::terminal(&g), 100).unwrap().len(), 1);
            }
        }
        let g = FiniteGroup::symmetric(3);
        assert!(matches!(
            homs(&GSet::trivial(&g, 6), &GSet::trivial(&g, 6), 10),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn homs_match_brute_force() {
        let g = z(2).product(&z(2));
        let corpus = gsets_up_to(&g, 4);
        for x in corpus.iter().filter(|x| x.size() <= 3) {
            for y in &corpus {
                let total = y.size().pow(x.size() as u32);
                let brute = (0..total)
                    .filter(|&code| {
                        let m: Vec<usize> = (0..x.size()).map(|i| code / y.size().pow(i as u32) % y.size()).collect();
                        x.is_equivariant(y, &m)
                    })
                    .count();
                assert_eq!(homs(x, y, 1 << 20).unwrap().len(), brute);
            }
        }
    }

    #[test]
    fn aut_fiber_examples() {
        let a = aut_fiber(&z(3), 3).unwrap();
        assert_eq!(a.group.order(), 3);
        assert!(a.group.is_isomorphic(&z(3)));
        assert_eq!(aut_fiber(&FiniteGroup::trivial(), 1).unwrap().group.order(), 1);
        let s3 = FiniteGroup::symmetric(3);
        let a = aut_fiber(&s3, 6).unwrap();
        assert_eq!(a.group.order(), 6);
        assert!(!a.group.is_abelian());
        assert!(aut_fiber(&s3, 5).is_err());
    }

    #[test]
    fn galois_examples() {
        assert!(check_galois(&z(3), 50, 1).unwrap().all_passed());
        assert!(check_galois(&FiniteGroup::symmetric(3), 50, 1).unwrap().all_passed());
        let e = GSet::empty(&z(3));
        for x in gsets_up_to(&z(3), 3) {
            assert_eq!(homs(&e, &x, 10).unwrap().len(), 1);
        }
    }

    #[test]
    fn json_roundtrip() {
        let x = GSet::cosets(&FiniteGroup::symmetric(3), &[0, 1]).unwrap();
        let s = serde_json::to_string(&x.to_json()).unwrap();
        let back: GSetJson = serde_json::from_str(&s).unwrap();
        assert_eq!(GSet::from_json(&back).unwrap(), x);
    }
}
