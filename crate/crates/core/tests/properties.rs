use num_traits::{One, Zero};
use parahiggs::generic::generic_flags;
use parahiggs::higgs::Mode;
use parahiggs::hitchin::{base_scale, nilpotency_check, HitchinMap, HitchinPoint};
use parahiggs::pairing::{compatibility_check, compatible_higgs_space, PairingForm, Symmetry};
use parahiggs::parabolic::{induced_subspace_weights, MarkedCurve, ParabolicBundle};
use parahiggs::poly::gcd_all;
use parahiggs::scalar::{rat, ratio};
use parahiggs::stability::{saturate, stability_decide_rank2, Verdict};
use parahiggs::verystable::{nilpotent_locus_decide, very_stability_verdict, LocusVerdict};
use parahiggs::{Poly, PolyMatrix, QMatrix, Rational};
use proptest::prelude::*;

fn poly_strategy(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..=max_len)
        .prop_map(|cs| Poly::new(cs.into_iter().map(rat).collect()))
}

fn poly_matrix(n: usize, max_len: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly_strategy(max_len), n * n).prop_map(move |es| {
        PolyMatrix::from_rows(es.chunks(n).map(|c| c.to_vec()).collect()).unwrap()
    })
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| ratio(n, d))
}

fn invertible_2x2() -> impl Strategy<Value = QMatrix> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("invertible", |[a, b, c, d]| a * d != b * c)
        .prop_map(|[a, b, c, d]| {
            QMatrix::from_rows(vec![vec![rat(a), rat(b)], vec![rat(c), rat(d)]]).unwrap()
        })
}

/// Increasing weights in `[0, 1)` with denominator 12.
fn weights(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(0i64..12, n)
        .prop_map(|s| s.into_iter().map(|k| ratio(k, 12)).collect())
}

fn curve(r: usize) -> MarkedCurve {
    MarkedCurve::new((0..r as i64).map(rat).collect()).unwrap()
}

/// Rank-2 bundle with random flags and weights at `0, 1, ..., r - 1`.
fn rank2_bundle(rmin: usize, rmax: usize) -> impl Strategy<Value = ParabolicBundle> {
    (rmin..=rmax, -2i64..=2, 0i64..=2)
        .prop_flat_map(|(r, a, gap)| {
            (
                Just(vec![a, a - gap]),
                prop::collection::vec(invertible_2x2(), r),
                prop::collection::vec(weights(2), r),
            )
        })
        .prop_map(|(splitting, flags, w)| {
            ParabolicBundle::new(curve(flags.len()), splitting, flags, w)
        })
}

/// As above, with weights `(a, 1 - a)` as a form with trivial values needs.
fn symmetric_rank2_bundle(rmin: usize, rmax: usize) -> impl Strategy<Value = ParabolicBundle> {
    (rmin..=rmax, -2i64..=2, 0i64..=2)
        .prop_flat_map(|(r, a, gap)| {
            (
                Just(vec![a, a - gap]),
                prop::collection::vec(invertible_2x2(), r),
                prop::collection::vec(1i64..10, r),
            )
        })
        .prop_map(|(splitting, flags, w)| {
            let w = w
                .into_iter()
                .map(|k| vec![ratio(k, 20), ratio(20 - k, 20)])
                .collect();
            ParabolicBundle::new(curve(flags.len()), splitting, flags, w)
        })
}

fn symplectic(n: usize) -> PairingForm {
    PairingForm::standard(n, Symmetry::Antisymmetric, 0).unwrap()
}

/// A pairing of one of the groups Sp(2), Sp(4), SO(3), SO(4).
fn form(kind: usize) -> PairingForm {
    match kind {
        0 => symplectic(2),
        1 => symplectic(4),
        2 => PairingForm::standard(3, Symmetry::Symmetric, 0).unwrap(),
        _ => PairingForm::standard(4, Symmetry::Symmetric, 0).unwrap(),
    }
}

/// A generic bundle for the form, with `r` points and evenly spaced weights.
fn generic_bundle(p: &PairingForm, r: usize, seed: u64) -> ParabolicBundle {
    let n = p.rank();
    let cv = curve(r);
    let flags = generic_flags(&cv, p, seed).unwrap();
    let w: Vec<Rational> = (0..n as i64).map(|i| ratio(i, n as i64)).collect();
    ParabolicBundle::new(cv, vec![0; n], flags, vec![w; r])
}

fn combination(space: &parahiggs::higgs::SectionSpace, coeffs: &[i64]) -> PolyMatrix {
    let c: Vec<Rational> = coeffs
        .iter()
        .take(space.dimension())
        .map(|&x| rat(x))
        .collect();
    let mut c = c;
    c.resize(space.dimension(), Rational::zero());
    space.combination(&c).matrix().clone()
}

fn field_case() -> impl Strategy<Value = (usize, usize, u64, Vec<i64>)> {
    (
        0usize..4,
        3usize..=5,
        0u64..1000,
        prop::collection::vec(-3i64..=3, 12),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn char_poly_is_homogeneous(m in poly_matrix(3, 3), t in nonzero_rational()) {
        let s = m.char_poly().unwrap();
        let st = m.map(|e| e.scale(&t)).char_poly().unwrap();
        for (i, (a, b)) in s.iter().zip(&st).enumerate() {
            prop_assert_eq!(a.scale(&num_traits::pow(t.clone(), i + 1)), b.clone());
        }
    }

    #[test]
    fn char_poly_constant_term_is_signed_determinant(m in poly_matrix(3, 2)) {
        let s = m.char_poly().unwrap();
        prop_assert_eq!(s[2].clone(), -m.determinant().unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(above in prop::collection::vec(poly_strategy(2), 6)) {
        let mut m = PolyMatrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m.set(i, j, above[k].clone());
                m.set(j, i, -above[k].clone());
                k += 1;
            }
        }
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant().unwrap());
    }

    #[test]
    fn kernel_basis_is_annihilated(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)) {
        let m = QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap();
        let k = m.kernel_basis();
        prop_assert_eq!(k.len(), 5 - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            prop_assert_eq!(QMatrix::from_rows(k.clone()).unwrap().rank(), k.len());
        }
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(3)) {
        let a = &a * &c;
        let b = &b * &c;
        let g = a.gcd(&b);
        if a.is_zero() && b.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert_eq!(g.leading().cloned(), Some(Rational::one()));
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(c.is_zero() || c.divides(&g) || a.is_zero() || b.is_zero());
        }
    }

    #[test]
    fn dual_negates_parabolic_degree(e in rank2_bundle(0, 4)) {
        let d = e.dual_structure();
        prop_assert!(d.validate().is_empty());
        prop_assert_eq!(e.parabolic_degree() + d.parabolic_degree(), Rational::zero());
    }

    #[test]
    fn tensor_adds_parabolic_degrees(
        d1 in -3i64..=3,
        d2 in -3i64..=3,
        w in prop::collection::vec((0i64..12, 0i64..12), 0..4),
    ) {
        let cv = curve(w.len());
        let line = |d: i64, ws: Vec<Rational>| {
            ParabolicBundle::with_standard_flags(cv.clone(), vec![d], ws.into_iter().map(|x| vec![x]).collect())
        };
        let l = line(d1, w.iter().map(|(a, _)| ratio(*a, 12)).collect());
        let m = line(d2, w.iter().map(|(_, b)| ratio(*b, 12)).collect());
        let t = l.tensor_structure(&m).unwrap();
        prop_assert!(t.validate().is_empty());
        prop_assert_eq!(t.parabolic_degree(), l.parabolic_degree() + m.parabolic_degree());
    }

    #[test]
    fn strong_space_sits_inside_parabolic(e in rank2_bundle(1, 4), twist in -1i64..=3) {
        let strong = e.hom_section_space(twist, Mode::Strong);
        let parabolic = e.hom_section_space(twist, Mode::Parabolic);
        prop_assert!(strong.is_subspace_of(&parabolic));
        for phi in strong.basis() {
            prop_assert!(e.satisfies_flag_conditions(phi.matrix(), Mode::Strong));
        }
        for phi in parabolic.basis() {
            prop_assert!(e.satisfies_flag_conditions(phi.matrix(), Mode::Parabolic));
        }
    }

    #[test]
    fn induced_weights_grow_with_the_subspace(
        flag in invertible_2x2(),
        w in weights(2),
        v in prop::array::uniform2(-3i64..=3),
        u in prop::array::uniform2(-3i64..=3),
    ) {
        prop_assume!(v != [0, 0]);
        let v: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        let u: Vec<Rational> = u.iter().map(|&x| rat(x)).collect();
        let small = induced_subspace_weights(&flag, &w, std::slice::from_ref(&v));
        let big = induced_subspace_weights(&flag, &w, &[v, u]);
        prop_assert!(big.iter().max() >= small.iter().max());
    }

    #[test]
    fn compatibility_formulations_agree(m in poly_matrix(2, 2), kind in 0usize..4) {
        let p = form(kind);
        let n = p.rank();
        let m = PolyMatrix::from_fn(n, n, |i, j| if i < 2 && j < 2 { m.get(i, j).clone() } else { Poly::zero() });
        prop_assert!(compatibility_check(&m, &p).agree());
    }

    #[test]
    fn saturated_sections_are_primitive(s in prop::array::uniform2(poly_strategy(4)), c in poly_strategy(2)) {
        prop_assume!(!(s[0].is_zero() && s[1].is_zero()) && !c.is_zero());
        let e = ParabolicBundle::with_standard_flags(curve(2), vec![1, -1], vec![vec![rat(0), ratio(1, 2)]; 2]);
        let scaled = [&s[0] * &c, &s[1] * &c];
        let line = saturate(&scaled, &e).unwrap();
        prop_assert!(gcd_all(&line.section).is_one());
        let direct = saturate(&s, &e).unwrap();
        prop_assert_eq!((direct.degree, &direct.incidence), (line.degree, &line.incidence));
        // the saturated section is proportional to the input
        let cross = &(&line.section[0] * &scaled[1]) - &(&line.section[1] * &scaled[0]);
        prop_assert!(cross.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compatible_fields_have_vanishing_odd_coefficients((kind, r, seed, coeffs) in field_case()) {
        let p = form(kind);
        let e = generic_bundle(&p, r, seed);
        let space = compatible_higgs_space(&e, &p, Mode::Parabolic);
        let phi = combination(&space, &coeffs);
        prop_assert!(compatibility_check(&phi, &p).matrix);
        let s = phi.char_poly().unwrap();
        for i in (0..s.len()).step_by(2) {
            prop_assert!(s[i].is_zero(), "s_{} = {}", i + 1, s[i]);
        }
    }

    #[test]
    fn hitchin_map_is_equivariant((kind, r, seed, coeffs) in field_case(), t in nonzero_rational()) {
        let p = form(kind);
        let e = generic_bundle(&p, r, seed);
        let map = HitchinMap::for_pairing(&p).unwrap();
        let phi = combination(&compatible_higgs_space(&e, &p, Mode::Parabolic), &coeffs);
        prop_assert!(map.equivariance_check(&phi, &t).unwrap());
        let image = map.image(&phi).unwrap();
        prop_assert!(image.respects_degree_bounds(e.curve().log_canonical_degree()));
    }

    #[test]
    fn only_zero_is_fixed_by_scaling(cs in prop::collection::vec(poly_strategy(3), 2), kind in 0usize..4) {
        let group = HitchinMap::for_pairing(&form(kind)).unwrap().group();
        let mut cs = cs;
        cs.truncate(group.weights().len());
        let a = HitchinPoint { group, coefficients: cs };
        let fixed = base_scale(&rat(2), &a).unwrap() == a && base_scale(&rat(3), &a).unwrap() == a;
        prop_assert_eq!(fixed, a.is_zero());
    }

    #[test]
    fn nilpotent_witnesses_are_sound(e in rank2_bundle(3, 5), seed in 0u64..100) {
        let p = symplectic(2);
        let w = compatible_higgs_space(&e, &p, Mode::Strong);
        let res = nilpotent_locus_decide(&w, seed);
        if res.verdict == LocusVerdict::Witness {
            let phi = res.witness.unwrap();
            prop_assert!(!phi.is_zero() && nilpotency_check(phi.matrix()) && w.contains(&phi));
            let coords = res.witness_coordinates.unwrap();
            prop_assert_eq!(w.combination(&coords), phi);
        }
        if res.verdict == LocusVerdict::Trivial {
            prop_assert!(w.basis().iter().all(|b| !nilpotency_check(b.matrix())));
        }
    }

    #[test]
    fn removing_an_unincident_point_keeps_instability(e in rank2_bundle(1, 5)) {
        let p = symplectic(2);
        let v = stability_decide_rank2(&e, &p, None).unwrap();
        prop_assume!(v.verdict == Verdict::Unstable);
        let line = v.witness.unwrap();
        let Some(k) = line.incidence.iter().position(|&i| i == 1) else { return Ok(()); };
        let keep: Vec<usize> = (0..e.curve().len()).filter(|&i| i != k).collect();
        let points = keep.iter().map(|&i| e.curve().points()[i].clone()).collect();
        let smaller = ParabolicBundle::new(
            MarkedCurve::new(points).unwrap(),
            e.splitting().to_vec(),
            keep.iter().map(|&i| e.flags()[i].clone()).collect(),
            keep.iter().map(|&i| e.weights()[i].clone()).collect(),
        );
        prop_assert_eq!(stability_decide_rank2(&smaller, &p, None).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn unstable_strongly_very_stable_bundles_are_tight(e in symmetric_rank2_bundle(3, 5)) {
        // a destabilizing O(e) with 2e - deg E + |S| >= 2 carries a nonzero
        // nilpotent strong field through E/L -> L K(D)
        let p = symplectic(2);
        let vs = very_stability_verdict(&e, &p, 7);
        prop_assume!(vs.strongly_very_stable == Some(true));
        let st = stability_decide_rank2(&e, &p, None).unwrap();
        if st.verdict == Verdict::Unstable {
            let line = st.witness.unwrap();
            let in_second = line.incidence.iter().filter(|&&i| i == 2).count() as i64;
            prop_assert!(2 * line.degree - e.degree() + in_second <= 1);
        }
    }
}
