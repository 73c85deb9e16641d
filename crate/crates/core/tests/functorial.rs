use symcoh::abelian::AbHom;
use symcoh::cochain::{apply_coboundary, cohomology, CochainSpace, Variant};
use symcoh::functorial::{
    connecting_map, induced_cochain_map, induced_map, inflation, inflation_pair, long_exact_sequence,
    restricted_module, restriction, ShortExactModules,
};
use symcoh::group::ActionSpec;
use symcoh::presets::battery;
use symcoh::{CompatiblePair, Error, FgAbelianGroup, FiniteGroup, GModule, Int};

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn hom(src: &FgAbelianGroup, tgt: &FgAbelianGroup, rows: &[&[i64]]) -> AbHom {
    AbHom::from_rows(src.clone(), tgt.clone(), rows.iter().map(|r| ints(r)).collect()).unwrap()
}

#[test]
fn identity_pairs_induce_identities() {
    for case in battery() {
        let pair = CompatiblePair::identity(&case.gmodule);
        for n in 0..=2 {
            for v in [Variant::Ordinary, Variant::Symmetric] {
                let m = induced_map(&pair, n, v).unwrap();
                assert_eq!(m.map, AbHom::identity(m.source.group()), "{} n={n} {v}", case.name());
            }
        }
    }
}

#[test]
fn cochain_maps_commute_with_coboundaries_and_preserve_symmetry() {
    use symcoh::cochain::{coboundary, is_symmetric, symmetric_subcomplex};
    let d4 = FiniteGroup::dihedral(4).unwrap();
    for case in battery().into_iter().filter(|c| c.gmodule.group() == &d4) {
        let m = &case.gmodule;
        for pair in [restricted_module(m, &[0, 1, 2, 3]).unwrap(), inflation_pair(m, &[0, 2]).unwrap()] {
            for n in 0..=2 {
                let psi = induced_cochain_map(&pair, n);
                let lhs = induced_cochain_map(&pair, n + 1).compose(&coboundary(pair.source(), n)).unwrap();
                let rhs = coboundary(pair.target(), n).compose(&psi).unwrap();
                assert_eq!(lhs, rhs, "{}", case.name());
                let tspace = CochainSpace::new(pair.target(), n);
                for g in symmetric_subcomplex(pair.source(), n).basis() {
                    let image = tspace.cochain(psi.apply(&g).unwrap()).unwrap();
                    assert!(is_symmetric(pair.target(), &image).unwrap(), "{}", case.name());
                }
            }
        }
    }
}

#[test]
fn compositions_induce_composites() {
    let d4 = FiniteGroup::dihedral(4).unwrap();
    let cases: Vec<_> = battery().into_iter().filter(|c| c.gmodule.group() == &d4).collect();
    assert!(cases.len() >= 2);
    for case in &cases {
        let m = &case.gmodule;
        // Restrict D4 to the rotations, then to the centre.
        let first = restricted_module(m, &[0, 1, 2, 3]).unwrap();
        let second = restricted_module(first.target(), &[0, 2]).unwrap();
        let both = second.compose(&first).unwrap();
        // Inflate from D4/Z(D4) and then restrict to the rotations.
        let inf = inflation_pair(m, &[0, 2]).unwrap();
        let inf_then_res = first.compose(&inf).unwrap();
        for n in 0..=2 {
            for v in [Variant::Ordinary, Variant::Symmetric] {
                let a = induced_map(&first, n, v).unwrap();
                let b = induced_map(&second, n, v).unwrap();
                let c = induced_map(&both, n, v).unwrap();
                assert_eq!(c.map, b.map.compose(&a.map).unwrap(), "{} n={n} {v}", case.name());
                let i = induced_map(&inf, n, v).unwrap();
                let r = induced_map(&inf_then_res, n, v).unwrap();
                assert_eq!(r.map, a.map.compose(&i.map).unwrap(), "{} n={n} {v}", case.name());
            }
        }
    }
}

#[test]
fn restriction_to_whole_group_and_inflation_by_trivial_subgroup() {
    for case in battery() {
        let m = &case.gmodule;
        let all: Vec<usize> = m.group().elements().collect();
        for n in 0..=2 {
            for v in [Variant::Ordinary, Variant::Symmetric] {
                let r = restriction(m, &all, n, v).unwrap();
                assert_eq!(r.map, AbHom::identity(r.source.group()), "{}", case.name());
                let i = inflation(m, &[0], n, v).unwrap();
                assert_eq!(i.map, AbHom::identity(i.source.group()), "{}", case.name());
            }
        }
    }
}

fn z2_over(n: usize) -> GModule {
    GModule::trivial(&FiniteGroup::cyclic(n).unwrap(), &FgAbelianGroup::cyclic(2))
}

/// `H^2(Z/4, Z/2) -> H^2(Z/2, Z/2)` along `Z/2 ↪ Z/4`: the generator (the
/// extension `Z/8`) restricts to the non-split `Z/4`.
#[test]
fn restriction_from_z4_to_z2() {
    let m = z2_over(4);
    let r = restriction(&m, &[0, 2], 2, Variant::Ordinary).unwrap();
    assert_eq!(r.source.group(), &FgAbelianGroup::cyclic(2));
    assert_eq!(r.target.group(), &FgAbelianGroup::cyclic(2));
    let image = r.map.apply(&ints(&[1])).unwrap();
    assert_eq!(image, ints(&[1]));
    // Independent check: the restricted generator is not ∂ of any of the four 1-cochains.
    let sigma = r.source.generators()[0].clone();
    let restricted: Vec<i64> = [(0, 0), (0, 2), (2, 0), (2, 2)]
        .iter()
        .map(|&(x, y)| i64::try_from(&sigma.value(4, &[x, y])[0]).unwrap())
        .collect();
    for bits in 0..4i64 {
        let lam = |k: usize| if k == 0 { bits & 1 } else { bits >> 1 };
        let d = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(x, y)| (lam(y) - lam((x + y) % 2) + lam(x)).rem_euclid(2));
        assert_ne!(d.to_vec(), restricted);
    }
}

/// Inflation `H^2(Z/2, Z/2) -> H^2(Z/4, Z/2)` is zero: some `λ` among the
/// sixteen 1-cochains has `∂λ` equal to the inflated cocycle.
#[test]
fn inflation_from_z2_to_z4_vanishes() {
    let m = z2_over(4);
    let i = inflation(&m, &[0, 2], 2, Variant::Ordinary).unwrap();
    assert!(i.map.is_zero());
    assert_eq!(i.source.group(), &FgAbelianGroup::cyclic(2));
    let sigma = &i.source.generators()[0];
    let pair = inflation_pair(&m, &[0, 2]).unwrap();
    let inflated = induced_cochain_map(&pair, 2).apply(sigma.vector()).unwrap();
    let c1 = CochainSpace::new(&m, 1);
    let found = (0..16i64).any(|bits| {
        let l = c1.cochain((0..4).map(|k| Int::from((bits >> k) & 1)).collect()).unwrap();
        let d = apply_coboundary(&m, &l).unwrap();
        CochainSpace::new(&m, 2).group().equal(d.vector(), &inflated)
    });
    assert!(found);
}

fn z3_z6_z2(g: &FiniteGroup) -> ShortExactModules {
    let (z3, z6, z2) = (FgAbelianGroup::cyclic(3), FgAbelianGroup::cyclic(6), FgAbelianGroup::cyclic(2));
    ShortExactModules::new(
        &GModule::trivial(g, &z3),
        &GModule::trivial(g, &z6),
        &GModule::trivial(g, &z2),
        hom(&z3, &z6, &[&[2]]),
        hom(&z6, &z2, &[&[1]]),
        Some(vec![ints(&[0]), ints(&[3])]),
    )
    .unwrap()
}

#[test]
fn long_exact_sequences_are_exact() {
    for g in [FiniteGroup::cyclic(2).unwrap(), FiniteGroup::cyclic(3).unwrap(), FiniteGroup::symmetric(3).unwrap()] {
        let ses = z3_z6_z2(&g);
        assert!(ses.is_symmetric() && ses.is_compatible());
        for v in [Variant::Symmetric, Variant::Ordinary] {
            let les = long_exact_sequence(&ses, 2, v).unwrap();
            assert_eq!(les.nodes.len(), 10);
            assert!(les.is_exact(), "{v} over order {}", g.order());
        }
    }
}

#[test]
fn connecting_map_over_z2_by_direct_evaluation() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let ses = z3_z6_z2(&g);
    // Degree 0: δ(1) = [g ↦ i^{-1}(g·3 - 3)] = 0 for a trivial action.
    assert!(connecting_map(&ses, 0, Variant::Symmetric).unwrap().is_zero());
    // The sequence splits (Z/6 = Z/3 ⊕ Z/2) and s is additive, so δ vanishes.
    for n in 0..=2 {
        assert!(connecting_map(&ses, n, Variant::Ordinary).unwrap().is_zero());
    }
}

#[test]
fn refuses_without_symmetric_compatible_section() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let (z2, z4) = (FgAbelianGroup::cyclic(2), FgAbelianGroup::cyclic(4));
    let sub = GModule::trivial(&g, &z2);
    let mid = GModule::trivial(&g, &z4);
    let i = hom(&z2, &z4, &[&[2]]);
    let j = hom(&z4, &z2, &[&[1]]);
    let searched = ShortExactModules::new(&sub, &mid, &sub, i.clone(), j.clone(), None);
    assert!(matches!(searched, Err(Error::SectionNotSymmetric(_))));
    let given = ShortExactModules::new(&sub, &mid, &sub, i, j, Some(vec![ints(&[0]), ints(&[1])])).unwrap();
    assert!(!given.is_symmetric());
    let refused = long_exact_sequence(&given, 2, Variant::Symmetric).unwrap_err();
    assert!(refused.is_refused_hypothesis());
    assert!(long_exact_sequence(&given, 2, Variant::Ordinary).unwrap().is_exact());
}

/// `Z/2` swapping the factors of `Z/2 ⊕ Z/2`, modulo the diagonal: both
/// lifts of the generator are symmetric, neither is fixed by the swap.
#[test]
fn incompatible_sections_are_refused() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let z2 = FgAbelianGroup::cyclic(2);
    let v4 = FgAbelianGroup::new(0, &[Int::from(2), Int::from(2)]).unwrap();
    let swap = ActionSpec::ByElement(vec![vec![ints(&[1, 0]), ints(&[0, 1])], vec![ints(&[0, 1]), ints(&[1, 0])]]);
    let mid = GModule::new(&g, &v4, &swap).unwrap();
    let triv = GModule::trivial(&g, &z2);
    let i = hom(&z2, &v4, &[&[1], &[1]]);
    let j = hom(&v4, &z2, &[&[1, 1]]);
    let searched = ShortExactModules::new(&triv, &mid, &triv, i.clone(), j.clone(), None);
    assert!(matches!(searched, Err(Error::SectionNotSymmetric(_))));
    let ses = ShortExactModules::new(&triv, &mid, &triv, i, j, Some(vec![ints(&[0, 0]), ints(&[1, 0])])).unwrap();
    assert!(ses.is_symmetric() && !ses.is_compatible());
    assert!(matches!(long_exact_sequence(&ses, 1, Variant::Symmetric), Err(Error::SectionNotCompatible(_))));
    assert!(matches!(connecting_map(&ses, 0, Variant::Symmetric), Err(Error::SectionNotCompatible(_))));
    assert!(long_exact_sequence(&ses, 2, Variant::Ordinary).unwrap().is_exact());
}

#[test]
fn delta_does_not_depend_on_the_section() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let z2 = FgAbelianGroup::cyclic(2);
    let v4 = FgAbelianGroup::new(0, &[Int::from(2), Int::from(2)]).unwrap();
    let build = |s: &[i64]| {
        ShortExactModules::new(
            &GModule::trivial(&g, &z2),
            &GModule::trivial(&g, &v4),
            &GModule::trivial(&g, &z2),
            hom(&z2, &v4, &[&[1], &[0]]),
            hom(&v4, &z2, &[&[0, 1]]),
            Some(vec![ints(&[0, 0]), ints(s)]),
        )
        .unwrap()
    };
    let (a, b) = (build(&[0, 1]), build(&[1, 1]));
    for n in 0..=2 {
        for v in [Variant::Symmetric, Variant::Ordinary] {
            assert_eq!(connecting_map(&a, n, v).unwrap(), connecting_map(&b, n, v).unwrap());
        }
    }
}

#[test]
fn zero_submodule_gives_isomorphisms() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let (zero, z3) = (FgAbelianGroup::trivial(), FgAbelianGroup::cyclic(3));
    let ses = ShortExactModules::new(
        &GModule::trivial(&g, &zero),
        &GModule::trivial(&g, &z3),
        &GModule::trivial(&g, &z3),
        AbHom::zero(&zero, &z3),
        AbHom::identity(&z3),
        None,
    )
    .unwrap();
    let les = long_exact_sequence(&ses, 2, Variant::Symmetric).unwrap();
    assert!(les.is_exact());
    for k in 0..=2 {
        assert!(les.maps[3 * k + 1].is_isomorphism());
    }
    let h = cohomology(ses.middle(), 1, Variant::Ordinary);
    assert_eq!(h.group(), &z3);
}
