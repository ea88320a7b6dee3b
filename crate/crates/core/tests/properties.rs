use num::Signed;
use proptest::prelude::*;

use twoconvex_core::convexity::{plane_avoids_surface, project_and_test, verify_certificate, Plane2};
use twoconvex_core::link::{membrane_choices, random_config, winding_single_line, word_with_membranes, FreeWord, Letter, LinkConfig};
use twoconvex_core::mesh::builtin::{clifford_torus, generate, octahedron_s2, Builtin};
use twoconvex_core::mesh::off4::{parse_off4, write_off4};
use twoconvex_core::mesh::ops::{random_remesh, transform, transform_point};
use twoconvex_core::rational::{format_rational, int, parse_rational, rat, Rational};
use twoconvex_core::topology::cohomology::{coboundary0, coboundary1, cohomology_ring};
use twoconvex_core::vector::{from_ints, Point4, Vec3, Vec4};

fn base_mesh(i: usize) -> twoconvex_core::SimplicialSurface {
    let which = [Builtin::OctahedronS2, Builtin::ProjectivePlaneMin, Builtin::KleinBottle, Builtin::CliffordTorus][i % 4];
    generate(which, 4).unwrap()
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::A), Just(Letter::AInv), Just(Letter::B), Just(Letter::BInv)]
}

fn rotations() -> Vec<[[Rational; 4]; 4]> {
    let z = || int(0);
    let o = || int(1);
    let (c, s) = (rat(3, 5), rat(4, 5));
    vec![
        // swap of the two complex coordinates
        [[z(), z(), o(), z()], [z(), z(), z(), o()], [o(), z(), z(), z()], [z(), o(), z(), z()]],
        // rotation by the 3-4-5 angle in the first coordinate plane
        [[c.clone(), -s.clone(), z(), z()], [s.clone(), c.clone(), z(), z()], [z(), z(), o(), z()], [z(), z(), z(), o()]],
        // sign change
        [[-o(), z(), z(), z()], [z(), o(), z(), z()], [z(), z(), o(), z()], [z(), z(), z(), o()]],
    ]
}

fn apply(m: &[[Rational; 4]; 4], v: &Vec4) -> Vec4 {
    std::array::from_fn(|i| (0..4).map(|j| &m[i][j] * &v[j]).sum())
}

fn rotate3(m: &[[Rational; 3]; 3], v: &Vec3) -> Vec3 {
    std::array::from_fn(|i| (0..3).map(|j| &m[i][j] * &v[j]).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundary_squares_to_zero(i in 0usize..4, steps in 0usize..12, seed in any::<u64>()) {
        let s = random_remesh(&base_mesh(i), steps, seed).unwrap();
        prop_assert!(coboundary1(&s).mul(&coboundary0(&s)).is_zero());
    }

    #[test]
    fn remeshing_keeps_topology(i in 0usize..4, steps in 0usize..12, seed in any::<u64>()) {
        let base = base_mesh(i);
        let s = random_remesh(&base, steps, seed).unwrap();
        let r = s.report();
        prop_assert_eq!(r.gauss_bonnet_sum, 6 * r.euler_characteristic);
        prop_assert_eq!(r.euler_characteristic, base.euler_characteristic());
        prop_assert_eq!(r.orientable, base.report().orientable);
        prop_assert!(!r.pl5_ok || r.euler_characteristic > 0);
        let (a, b) = (cohomology_ring(&base), cohomology_ring(&s));
        prop_assert_eq!((a.betti0, a.betti1, a.betti2), (b.betti0, b.betti1, b.betti2));
        prop_assert!(a.form().is_isomorphic(&b.form()));
    }

    #[test]
    fn off4_round_trip(i in 0usize..4, steps in 0usize..6, seed in any::<u64>()) {
        let s = random_remesh(&base_mesh(i), steps, seed).unwrap();
        let text = write_off4(&s);
        let soup = parse_off4(&text).unwrap();
        prop_assert_eq!(&soup, &s.to_soup());
        prop_assert_eq!(write_off4(&twoconvex_core::SimplicialSurface::new(soup).unwrap()), text);
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_confluent(letters in prop::collection::vec(letter(), 0..40), picks in prop::collection::vec(any::<usize>(), 0..40)) {
        // cancel adjacent inverse pairs in an arbitrary order
        let mut w = letters.clone();
        let mut picks = picks.into_iter();
        loop {
            let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] == w[i + 1].inverse()).collect();
            if spots.is_empty() {
                break;
            }
            let i = spots[picks.next().unwrap_or(0) % spots.len()];
            w.drain(i..i + 2);
        }
        prop_assert_eq!(FreeWord(w), FreeWord(letters).reduced());
    }

    #[test]
    fn word_text_round_trip(letters in prop::collection::vec(letter(), 0..40)) {
        let w = FreeWord(letters);
        prop_assert_eq!(w.to_string().parse::<FreeWord>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<FreeWord>(&json).unwrap(), w);
    }

    #[test]
    fn conjugation_keeps_the_cyclic_word(letters in prop::collection::vec(letter(), 0..20), g in prop::collection::vec(letter(), 0..8)) {
        let w = FreeWord(letters);
        let g = FreeWord(g);
        prop_assert!(g.concat(&w).concat(&g.inverse()).is_conjugate(&w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn membrane_choice_does_not_change_the_class(seed in any::<u64>()) {
        let c = random_config(seed);
        let choices = membrane_choices(&c, 6);
        prop_assert!(choices.len() >= 2);
        let first = word_with_membranes(&c.gamma, &choices[0]).cyclic;
        for m in &choices[1..] {
            prop_assert_eq!(&word_with_membranes(&c.gamma, m).cyclic, &first);
        }
    }

    #[test]
    fn abelianization_matches_windings(seed in any::<u64>()) {
        let c = random_config(seed);
        let w = twoconvex_core::link::word_of_curve(&c).unwrap().word;
        let (x, y) = w.abelianization();
        prop_assert_eq!(x, winding_single_line(&c.gamma, &c.l1).unwrap());
        prop_assert_eq!(y, winding_single_line(&c.gamma, &c.l2).unwrap());
    }

    #[test]
    fn reversal_shift_and_relabeling(seed in any::<u64>(), shift in 0usize..12) {
        let c = random_config(seed);
        let word = twoconvex_core::link::word_of_curve(&c).unwrap();
        let reversed = LinkConfig { gamma: c.gamma.iter().rev().cloned().collect(), ..c.clone() };
        prop_assert_eq!(twoconvex_core::link::word_of_curve(&reversed).unwrap().cyclic, word.word.inverse().canonical_cyclic());
        let mut g = c.gamma.clone();
        let k = shift % g.len();
        g.rotate_left(k);
        let shifted = LinkConfig { gamma: g, ..c.clone() };
        prop_assert_eq!(&twoconvex_core::link::word_of_curve(&shifted).unwrap().cyclic, &word.cyclic);
        let swapped = LinkConfig { l1: c.l2.clone(), l2: c.l1.clone(), ..c.clone() };
        prop_assert_eq!(twoconvex_core::link::word_of_curve(&swapped).unwrap().cyclic, word.word.swap_generators().canonical_cyclic());
    }

    #[test]
    fn rigid_motions_of_the_slice(seed in any::<u64>()) {
        let c = random_config(seed);
        let cyclic = twoconvex_core::link::word_of_curve(&c).unwrap().cyclic;
        let z = || int(0);
        let (co, si) = (rat(3, 5), rat(4, 5));
        let rotation = [[co.clone(), -si.clone(), z()], [si, co, z()], [z(), z(), int(1)]];
        let mirror = [[int(-1), z(), z()], [z(), int(1), z()], [z(), z(), int(1)]];
        let map = |m: &[[Rational; 3]; 3]| {
            let line = |l: &twoconvex_core::link::Line3| twoconvex_core::link::Line3 { base: rotate3(m, &l.base), dir: rotate3(m, &l.dir) };
            LinkConfig { gamma: c.gamma.iter().map(|p| rotate3(m, p)).collect(), l1: line(&c.l1), l2: line(&c.l2), membranes: None }
        };
        prop_assert_eq!(&twoconvex_core::link::word_of_curve(&map(&rotation)).unwrap().cyclic, &cyclic);
        // a reflection reverses both meridians
        let mirrored = twoconvex_core::link::word_of_curve(&map(&mirror)).unwrap().cyclic;
        prop_assert_eq!(mirrored, cyclic.invert_generator(0).invert_generator(1).canonical_cyclic());
    }
}

fn small_vec() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-3i64..=3).prop_map(from_ints)
}

fn lattice_point() -> impl Strategy<Value = Point4> {
    prop::array::uniform4(-40i64..=40).prop_map(|c| Point4(c.map(|x| rat(x, 16))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn margin_agrees_with_exact_avoidance(x in lattice_point(), u in small_vec(), v in small_vec()) {
        let s = clifford_torus(4).unwrap();
        let Ok(plane) = Plane2::new(x.clone(), u.clone(), v.clone()) else { return Ok(()) };
        let margin = project_and_test(&s, &x, &u, &v).unwrap();
        let avoidance = plane_avoids_surface(&plane, &s).unwrap();
        prop_assert_eq!(margin.is_positive(), avoidance.avoids());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn avoidance_is_equivariant(x in lattice_point(), u in small_vec(), v in small_vec(), k in 0usize..3) {
        let s = octahedron_s2().unwrap();
        let Ok(plane) = Plane2::new(x.clone(), u.clone(), v.clone()) else { return Ok(()) };
        let m = &rotations()[k];
        let shift: Vec4 = from_ints([1, -2, 0, 3]);
        let moved = transform(&s, m, &shift).unwrap();
        let image = Plane2::new(transform_point(&x, m, &shift), apply(m, &u), apply(m, &v)).unwrap();
        let before = plane_avoids_surface(&plane, &s).unwrap();
        let after = plane_avoids_surface(&image, &moved).unwrap();
        prop_assert_eq!(before.avoids(), after.avoids());
        if let twoconvex_core::convexity::Avoidance::Avoids(cert) = after {
            prop_assert!(verify_certificate(&cert, &moved).is_ok());
        }
    }
}
