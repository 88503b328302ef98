//! Randomized identities of the lift calculus, spin structures and the
//! modular symplectic toolkit.

use proptest::prelude::*;

use spincalc::engine::{packed_form, sp_order, transvection_group};
use spincalc::modring::{base_transvection, base_transvection_power, intersection_form};
use spincalc::spin::pack_mod2;
use spincalc::tangent_lift::{pants_boundary, reverse, surgery_sum, zeta, LiftedTransvection};
use spincalc::{BaseClass, LiftedClass, Modulus, Parity, QuadraticForm, SpMatrix, SpinStructure};

#[derive(Debug, Clone)]
struct Setting {
    g: usize,
    r: u32,
    phi: Vec<i64>,
    classes: Vec<(Vec<i64>, i64)>,
}

impl Setting {
    fn m(&self) -> Modulus {
        Modulus::new(self.r).unwrap()
    }

    fn phi(&self) -> SpinStructure {
        SpinStructure::new(self.m(), &self.phi).unwrap()
    }

    fn class(&self, i: usize) -> LiftedClass {
        let (v, w) = &self.classes[i];
        LiftedClass::new(BaseClass::new(self.m(), v).unwrap(), *w)
    }
}

fn setting(
    max_g: usize,
    moduli: std::ops::RangeInclusive<u32>,
    n: usize,
) -> impl Strategy<Value = Setting> {
    (1..=max_g, moduli).prop_flat_map(move |(g, r)| {
        let coord = 0..r as i64;
        let vec = prop::collection::vec(coord.clone(), 2 * g);
        (
            Just(g),
            Just(r),
            vec.clone(),
            prop::collection::vec((vec, coord), n),
        )
            .prop_map(|(g, r, phi, classes)| Setting { g, r, phi, classes })
    })
}

/// A random product of transvections along basis vectors and `aᵢ + aᵢ₊₁`,
/// which generate `Sp(2g, ℤ/r)`.
fn symplectic(g: usize, m: Modulus, word: &[(usize, i64)]) -> SpMatrix {
    let gens: Vec<BaseClass> = (0..2 * g)
        .map(|j| BaseClass::basis(g, m, j))
        .chain((1..g).map(|i| {
            BaseClass::a(g, m, i)
                .add(&BaseClass::a(g, m, i + 1))
                .unwrap()
        }))
        .collect();
    word.iter().fold(SpMatrix::identity(g, m), |acc, &(i, k)| {
        acc.mul(&base_transvection_power(&gens[i % gens.len()], k))
            .unwrap()
    })
}

fn word() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -3i64..=3), 0..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn twist_linearity_lifts(s in setting(4, 2..=8, 2), k in -4i64..=4) {
        let (phi, m) = (s.phi(), s.m());
        let (c, d) = (s.class(0), s.class(1));
        prop_assume!(c.base.is_primitive());
        let t = LiftedTransvection::new(c.clone(), k).unwrap();
        let i = intersection_form(&d.base, &c.base).unwrap();
        let want = m.add(
            phi.evaluate(&d).unwrap(),
            m.mul(m.mul(m.reduce(k), i), phi.evaluate(&c).unwrap()),
        );
        prop_assert_eq!(phi.evaluate(&t.apply(&d).unwrap()).unwrap(), want);
        // inverse, fixed points
        prop_assert_eq!(t.inverse().apply(&t.apply(&d).unwrap()).unwrap(), d.clone());
        prop_assert_eq!(t.apply(&c).unwrap(), c.clone());
        prop_assert_eq!(t.apply(&zeta(s.g, m)).unwrap(), zeta(s.g, m));
        // pulling back the structure is evaluating on the image
        prop_assert_eq!(
            phi.pull_back(&t).unwrap().evaluate(&d).unwrap(),
            phi.evaluate(&t.apply(&d).unwrap()).unwrap()
        );
    }

    #[test]
    fn surgery_pants_and_reversal(s in setting(4, 2..=8, 3)) {
        let (phi, m) = (s.phi(), s.m());
        let ev = |x: &LiftedClass| phi.evaluate(x).unwrap();
        let (a, b, c) = (s.class(0), s.class(1), s.class(2));
        prop_assert_eq!(ev(&zeta(s.g, m)), 1);
        prop_assert_eq!(ev(&surgery_sum(&a, &b).unwrap()), m.add(m.add(ev(&a), ev(&b)), 1));
        let ab_c = surgery_sum(&surgery_sum(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(ev(&ab_c), m.add(m.add(m.add(ev(&a), ev(&b)), ev(&c)), 2));
        let p = pants_boundary(&a, &b).unwrap();
        prop_assert_eq!(m.add(m.add(ev(&p), ev(&a)), ev(&b)), m.neg(1));
        prop_assert_eq!(ev(&reverse(&a)), m.neg(ev(&a)));
        prop_assert_eq!(surgery_sum(&a, &reverse(&a)).unwrap(), zeta(s.g, m));
    }

    #[test]
    fn splitting_translation_preserves_values(s in setting(4, 2..=8, 1), t in prop::collection::vec(-9i64..9, 8)) {
        let t = &t[..2 * s.g];
        let (phi, c) = (s.phi(), s.class(0));
        let moved = phi.translate_splitting(t).unwrap();
        prop_assert_eq!(
            moved.evaluate(&c.translate_splitting(t).unwrap()).unwrap(),
            phi.evaluate(&c).unwrap()
        );
    }

    #[test]
    fn reduction_commutes_with_evaluation(s in setting(4, 2..=8, 1), s_div in 2u32..=8) {
        prop_assume!(s.r % s_div == 0);
        let (phi, c) = (s.phi(), s.class(0));
        let small = phi.reduce(s_div).unwrap();
        let c_small = c.reduce_to(s_div).unwrap();
        prop_assert_eq!(small.evaluate(&c_small).unwrap(), phi.evaluate(&c).unwrap() % s_div);
    }

    /// Pushing a point around a pants curve shifts φ by 2; the m-th power
    /// fixes φ(d̃) first at m = r/2 for even r and m = r for odd r.
    #[test]
    fn point_push_shift(s in setting(4, 2..=9, 0), w in word(), z in 0i64..9) {
        let (phi, m, g) = (s.phi(), s.m(), s.g);
        let mat = symplectic(g, m, &w);
        let v = mat.apply(&BaseClass::a(g, m, 1)).unwrap();
        let d = LiftedClass::new(mat.apply(&BaseClass::b(g, m, 1)).unwrap(), z);
        let c1 = LiftedClass::new(v.clone(), z);
        let c2 = LiftedClass::new(v.neg(), -2 - z);
        prop_assert_eq!(phi.evaluate(&pants_boundary(&c1, &c2).unwrap()).unwrap(), 1);
        prop_assert_eq!(intersection_form(&d.base, &c1.base).unwrap(), m.neg(1));
        prop_assert_eq!(intersection_form(&d.base, &c2.base).unwrap(), 1 % s.r);
        let t1 = LiftedTransvection::new(c1, 1).unwrap();
        let t2 = LiftedTransvection::new(c2, -1).unwrap();
        let start = phi.evaluate(&d).unwrap();
        let mut x = d;
        let mut first = None;
        for k in 1..=s.r {
            x = t1.apply(&t2.apply(&x).unwrap()).unwrap();
            let shift = m.sub(phi.evaluate(&x).unwrap(), start);
            if k == 1 {
                prop_assert_eq!(shift, 2 % s.r);
            }
            if shift == 0 && first.is_none() {
                first = Some(k);
            }
        }
        prop_assert_eq!(first, Some(if s.r % 2 == 0 { s.r / 2 } else { s.r }));
    }

    #[test]
    fn capping_parity(s in setting(5, 2..=2, 0), i in 0usize..5) {
        prop_assume!(s.g >= 2 && i < s.g);
        let phi = s.phi();
        let (x, y) = (phi.values()[2 * i], phi.values()[2 * i + 1]);
        let rest = phi.delete_handle(i).unwrap().arf().unwrap();
        if x == 1 || y == 1 {
            prop_assert_eq!(rest, phi.arf().unwrap());
        } else {
            prop_assert_eq!(rest, phi.arf().unwrap().flip());
        }
    }

    #[test]
    fn arf_is_symplectic_invariant(s in setting(5, 2..=2, 0), w in word()) {
        let q = s.phi().quadratic_form().unwrap();
        let mat = symplectic(s.g, s.m(), &w);
        prop_assert!(mat.is_symplectic());
        let moved = q.compose(&mat);
        prop_assert_eq!(moved.arf(), q.arf());
        // and moved is again a refinement of the intersection form
        let n = 1u64 << (2 * s.g);
        for x in [1u64, 3, n - 1] {
            for y in [2u64, 5 % n, n / 2] {
                let lhs = moved.value_packed(x ^ y);
                let rhs = (moved.value_packed(x) + moved.value_packed(y) + packed_form(x, y) as u8) & 1;
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parity_of_higher_structures_is_parity_of_reduction(s in setting(4, 2..=8, 0)) {
        prop_assume!(s.r % 2 == 0);
        let phi = s.phi();
        prop_assert_eq!(phi.arf().unwrap(), phi.reduce(2).unwrap().arf().unwrap());
    }

    #[test]
    fn intersection_is_alternating_and_bilinear(s in setting(4, 2..=12, 3), k in -5i64..5) {
        let m = s.m();
        let (x, y, z) = (s.class(0).base, s.class(1).base, s.class(2).base);
        let i = |a: &BaseClass, b: &BaseClass| intersection_form(a, b).unwrap();
        prop_assert_eq!(i(&x, &x), 0);
        prop_assert_eq!(i(&x, &y), m.neg(i(&y, &x)));
        prop_assert_eq!(i(&x.add(&y).unwrap(), &z), m.add(i(&x, &z), i(&y, &z)));
        prop_assert_eq!(i(&x.scale(k), &y), m.mul(m.reduce(k), i(&x, &y)));
    }

    #[test]
    fn transvection_powers(s in setting(4, 2..=9, 1), j in -12i64..12, k in -12i64..12) {
        let c = s.class(0).base;
        let (tj, tk) = (base_transvection_power(&c, j), base_transvection_power(&c, k));
        prop_assert_eq!(tj.mul(&tk).unwrap(), base_transvection_power(&c, j + k));
        prop_assert_eq!(base_transvection(&c).pow(j), tj.clone());
        prop_assert!(tj.is_symplectic());
        prop_assert!(base_transvection_power(&c, s.r as i64).is_identity());
        prop_assert!(tj.mul(&tj.symplectic_inverse()).unwrap().is_identity());
    }

    #[test]
    fn group_order_ignores_generator_order(mut gens in prop::collection::vec(1u64..16, 1..6), seed in any::<u64>()) {
        use rand::{rngs::StdRng, seq::SliceRandom, SeedableRng};
        let before = transvection_group(2, &gens).unwrap().order(1000).unwrap();
        gens.shuffle(&mut StdRng::seed_from_u64(seed));
        let after = transvection_group(2, &gens).unwrap().order(1000).unwrap();
        prop_assert_eq!(before, after);
        prop_assert_eq!(sp_order(2) % after, 0);
    }
}

/// Exhaustively for `g ≤ 3`: on every hyperbolic pair some curve
/// among `x`, `y`, `x + y` has spin value `0`.
#[test]
fn hyperbolic_pairs_carry_a_zero() {
    for g in 1..=3usize {
        let n = 1u64 << (2 * g);
        for idx in 0..n {
            let vals: Vec<u8> = (0..2 * g).map(|j| ((idx >> j) & 1) as u8).collect();
            let q = QuadraticForm::from_basis_values(&vals).unwrap();
            for x in 1..n {
                for y in x + 1..n {
                    if packed_form(x, y) == 1 {
                        assert!([x, y, x ^ y].iter().any(|&v| q.value_packed(v) == 1));
                    }
                }
            }
        }
    }
}

/// `Sp(2g, 2)` is transitive on forms of each parity, for `g ≤ 4`.
#[test]
fn symplectic_group_transitive_on_parities() {
    use spincalc::engine::{form_action, PermGroup};
    let two = Modulus::new(2).unwrap();
    for g in 1..=4usize {
        let gens = (0..2 * g)
            .map(|j| BaseClass::basis(g, two, j))
            .chain((1..g).map(|i| {
                BaseClass::a(g, two, i)
                    .add(&BaseClass::a(g, two, i + 1))
                    .unwrap()
            }))
            .map(|c| form_action(&base_transvection(&c)))
            .collect();
        let grp = PermGroup::new(1 << (2 * g), gens).unwrap();
        let mut sizes: Vec<u128> = grp.orbits().iter().map(|o| o.len() as u128).collect();
        sizes.sort_unstable();
        let mut want = vec![
            spincalc::spin::parity_count(g, Parity::Odd),
            spincalc::spin::parity_count(g, Parity::Even),
        ];
        want.sort_unstable();
        assert_eq!(sizes, want, "g = {g}");
    }
}

/// The chain of basis-adjacent curves generates all of `Sp(2g, 2)`.
#[test]
fn humphries_type_generators_give_full_group() {
    let two = Modulus::new(2).unwrap();
    for g in 1..=3usize {
        let classes: Vec<u64> = (0..2 * g)
            .map(|j| BaseClass::basis(g, two, j))
            .chain((1..g).map(|i| {
                BaseClass::a(g, two, i)
                    .add(&BaseClass::a(g, two, i + 1))
                    .unwrap()
            }))
            .map(|c| pack_mod2(&c))
            .collect();
        let order = transvection_group(g, &classes)
            .unwrap()
            .order(10_000)
            .unwrap();
        assert_eq!(order, sp_order(g));
    }
}
