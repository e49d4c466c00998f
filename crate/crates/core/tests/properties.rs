use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tangal::csep;
use tangal::gset::{self, GSet};
use tangal::rep::{self, Representation};
use tangal::suite::random_algebra;
use tangal::{Algebra, Field, FiniteGroup, Matrix, Poly};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((5, 1)), Just((2, 2)), Just((7, 1))]
        .prop_map(|(p, n)| Field::new(p, n).unwrap())
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = (Field, Matrix)> {
    field_strategy().prop_flat_map(move |f| {
        let q = f.q();
        proptest::collection::vec(0..q, rows * cols).prop_map(move |d| (f.clone(), Matrix::new(&f, rows, cols, d)))
    })
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    let groups: Vec<FiniteGroup> = FiniteGroup::catalog().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 6).collect();
    proptest::sample::select(groups)
}

#[test]
fn factorization_round_trip_on_seeded_polynomials() {
    // 1000 seeded polynomials over F2, F3, F5
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    use rand::Rng;
    for k in 0..1000 {
        let p = [2, 3, 5][k % 3];
        let f = Field::new(p, 1).unwrap();
        let deg = rng.gen_range(1..=10);
        let mut c: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        c.push(rng.gen_range(1..p));
        let poly = Poly::new(&f, c);
        let fac = poly.factor().unwrap();
        assert_eq!(fac.expand(), poly, "sample {k}");
        for (g, e) in &fac.factors {
            assert!(g.is_irreducible() && g.lead() == 1 && *e > 0, "sample {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity((f, m) in matrix_strategy(4, 5)) {
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), 5);
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.field(), &f);
    }

    #[test]
    fn solve_returns_solutions((f, m) in matrix_strategy(4, 4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let x: Vec<u32> = (0..4).map(|_| rng.gen_range(0..f.q())).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.apply(&y), b);
        if let Some(inv) = m.inverse() {
            prop_assert!(inv.mul(&m).is_identity());
        }
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::new(5, 1).unwrap();
        let mut r = |a: usize, b: usize| Matrix::new(&f, a, b, (0..a * b).map(|_| rng.gen_range(0..5)).collect());
        let (a, b, c, d) = (r(2, 3), r(3, 2), r(3, 1), r(1, 2));
        prop_assert_eq!(a.kron(&c).mul(&b.kron(&d)), a.mul(&b).kron(&c.mul(&d)));
    }

    #[test]
    fn pi0_is_multiplicative_and_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = random_algebra(&mut rng);
        let b = Algebra::diagonal(a.field(), 2);
        let t = a.tensor(&b).unwrap();
        prop_assert_eq!(t.pi0().dim(), 2 * a.pi0().dim());
        let p = a.pi0();
        prop_assert_eq!(p.induced.pi0().dim(), p.dim());
        prop_assert_eq!(a.component_count(), a.base_primitive_idempotents(seed).len());
    }

    #[test]
    fn nilradical_is_nilpotent_and_quotient_is_separable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = random_algebra(&mut rng);
        let nil = a.nilradical();
        for x in &nil {
            prop_assert!(a.pow(x, a.dim() as u64).iter().all(|&c| c == 0));
        }
        let (q, _) = a.quotient(&nil).unwrap();
        prop_assert!(q.is_separable());
        prop_assert_eq!(q.dim() + nil.len(), a.dim());
    }

    #[test]
    fn orbit_decomposition_is_a_coproduct(g in group_strategy(), seed in any::<u64>()) {
        let objs: Vec<GSet> = gset::gsets_up_to(&g, 5).into_iter().filter(|x| x.size() > 0).collect();
        let x = &objs[(seed as usize) % objs.len()];
        let o = gset::orbits(x);
        let total: usize = o.parts.iter().map(|p| p.size()).sum();
        prop_assert_eq!(total, x.size());
        prop_assert!(o.parts.iter().all(|p| p.is_transitive()));
        let (sum, iso) = o.coproduct_iso().unwrap();
        prop_assert!(sum.is_equivariant(x, &iso));
        prop_assert!(gset::EquivariantMap::new(&sum, x, iso).unwrap().is_bijective(x));
    }

    #[test]
    fn linearizations_are_separable_monoids(g in group_strategy(), seed in any::<u64>()) {
        let f = Field::new(7, 1).unwrap();
        let objs: Vec<GSet> = gset::gsets_up_to(&g, 5).into_iter().filter(|x| x.size() > 0).collect();
        let x = &objs[(seed as usize) % objs.len()];
        let m = csep::linearize(x, &f).unwrap();
        prop_assert!(m.report().passed());
        let (s, iso) = csep::roundtrip_monoid(&m, seed).unwrap();
        prop_assert!(iso.matrix.is_identity());
        prop_assert_eq!(s.gset.size(), x.size());
    }

    #[test]
    fn characters_multiply_and_duals_invert(g in group_strategy(), seed in any::<u64>()) {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rep::random_rep(&g, &f, &mut rng, 4);
        let b = rep::random_rep(&g, &f, &mut rng, 4);
        let t = a.tensor(&b).unwrap();
        let (ca, cb, ct) = (a.character_table(), b.character_table(), t.character_table());
        for i in 0..g.order() {
            prop_assert_eq!(ct[i], f.mul(ca[i], cb[i]));
        }
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert!(a.check_duality());
        let mut p = Matrix::identity(&f, a.dim());
        if a.dim() > 1 {
            p.set(0, a.dim() - 1, 3);
        }
        let c = a.conjugate(&p).unwrap();
        prop_assert_eq!(c.character_table(), ca);
        let iso = rep::find_isomorphism(&a, &c, seed).unwrap().expect("conjugate representations are isomorphic");
        for x in 0..g.order() {
            prop_assert_eq!(c.matrix(x).mul(&iso), iso.mul(a.matrix(x)));
        }
    }

    #[test]
    fn intertwiners_commute_with_every_element(g in group_strategy(), seed in any::<u64>()) {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rep::random_rep(&g, &f, &mut rng, 4);
        let b = Representation::regular(&g, &f);
        for m in rep::hom_space(&a, &b).unwrap() {
            for x in 0..g.order() {
                prop_assert_eq!(b.matrix(x).mul(&m), m.mul(a.matrix(x)));
            }
        }
    }
}
