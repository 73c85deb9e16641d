use num_bigint::BigInt;
use proptest::prelude::*;
use symcoh::group::{direct_product, ActionSpec};
use symcoh::presets::battery;
use symcoh::{AbHom, Error, FgAbelianGroup, FiniteGroup, GModule};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Direct axiom check, independent of `FiniteGroup::from_table`.
fn is_group(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    let Some(e) = (0..n).find(|&e| (0..n).all(|g| t[e][g] == g && t[g][e] == g)) else {
        return false;
    };
    let inverses = (0..n).all(|g| (0..n).any(|h| t[g][h] == e && t[h][g] == e));
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    inverses && assoc
}

fn all_tables(n: usize) -> impl Iterator<Item = Vec<Vec<usize>>> {
    let cells = n * n;
    (0..n.pow(cells as u32)).map(move |mut k| {
        let mut t = vec![vec![0; n]; n];
        for c in 0..cells {
            t[c / n][c % n] = k % n;
            k /= n;
        }
        t
    })
}

#[test]
fn table_validation_is_exact_on_small_orders() {
    for n in 1..=3 {
        let mut accepted = 0;
        for t in all_tables(n) {
            let ok = FiniteGroup::from_table(t.clone()).is_ok();
            assert_eq!(ok, is_group(&t), "{t:?}");
            accepted += ok as usize;
        }
        // One group of each of these orders, on n!/|Aut| labelled tables.
        assert_eq!(accepted, [1, 2, 3][n - 1]);
    }
}

fn relabel(g: &FiniteGroup, perm: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    (0..n).map(|x| (0..n).map(|y| perm[g.mul(inv[x], inv[y])]).collect()).collect()
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..7).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
        Just(FiniteGroup::klein4()),
        Just(FiniteGroup::symmetric(3).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn relabelled_and_perturbed_tables(g in small_group(), keys in proptest::collection::vec(0u32..1000, 6), cell in (0usize..36, 0usize..36)) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| keys[i]);
        let t = relabel(&g, &perm);
        let h = FiniteGroup::from_table(t.clone()).unwrap();
        prop_assert_eq!(h.order(), n);
        prop_assert!(h.elements().all(|x| h.mul(0, x) == x && h.mul(x, h.inv(x)) == 0));
        // Swapping two cells usually breaks an axiom; acceptance must track the oracle.
        let (a, b) = ((cell.0 % (n * n)), (cell.1 % (n * n)));
        let mut u = t.clone();
        let tmp = u[a / n][a % n];
        u[a / n][a % n] = u[b / n][b % n];
        u[b / n][b % n] = tmp;
        prop_assert_eq!(FiniteGroup::from_table(u.clone()).is_ok(), is_group(&u));
    }
}

#[test]
fn builders() {
    assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
    let z2 = FiniteGroup::cyclic(2).unwrap();
    assert_eq!(z2.table(), &[vec![0, 1], vec![1, 0]]);
    assert_eq!(FiniteGroup::cyclic(4).unwrap().inv(1), 3);
    assert!(FiniteGroup::cyclic(0).is_err());
    assert_eq!(FiniteGroup::from_table(vec![vec![0]]).unwrap(), FiniteGroup::trivial());
    assert_eq!(FiniteGroup::symmetric(5).unwrap().order(), 120);
    assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
    assert!(!FiniteGroup::dihedral(4).unwrap().is_abelian());
}

#[test]
fn products() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let p = direct_product(&z2, &FiniteGroup::trivial());
    assert_eq!(p.group.order(), 2);
    let k = direct_product(&z2, &z2).group;
    assert!(k.elements().all(|x| k.mul(x, x) == 0));
    let p = direct_product(&z2, &z3);
    assert_eq!(p.group.order(), 6);
    let x = p.group.elements().find(|&x| p.proj_left.apply(x) == 1 && p.proj_right.apply(x) == 1).unwrap();
    assert_eq!(p.group.element_order(x), 6);
    for h in [&p.proj_left, &p.proj_right] {
        assert!(h.is_surjective());
    }
    for h in [&p.inj_left, &p.inj_right] {
        assert!(h.is_injective());
    }
}

#[test]
fn quotients() {
    let z8 = FiniteGroup::cyclic(8).unwrap();
    let (q, proj) = z8.quotient_group(&[0, 4]).unwrap();
    assert_eq!(q.order(), 4);
    assert!(q.elements().any(|x| q.element_order(x) == 4));
    assert_eq!(proj.kernel(), vec![0, 4]);
    let (q, _) = z8.quotient_group(&[0]).unwrap();
    assert_eq!(q.order(), 8);
    let all: Vec<usize> = z8.elements().collect();
    assert_eq!(z8.quotient_group(&all).unwrap().0.order(), 1);
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let transposition = s3.elements().find(|&x| s3.is_involution(x)).unwrap();
    assert!(matches!(s3.quotient_group(&[0, transposition]), Err(Error::NotNormal(_))));
    assert!(matches!(z8.quotient_group(&[0, 3]), Err(Error::NotSubgroup(_))));
    for g in [FiniteGroup::dihedral(4).unwrap(), FiniteGroup::symmetric(4).unwrap()] {
        let centre: Vec<usize> = g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).collect();
        let (q, proj) = g.quotient_group(&centre).unwrap();
        assert_eq!(q.order() * centre.len(), g.order());
        assert!(g
            .elements()
            .all(|x| g.elements().all(|y| proj.apply(g.mul(x, y)) == q.mul(proj.apply(x), proj.apply(y)))));
    }
}

#[test]
fn module_examples() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z = FgAbelianGroup::free(1);
    let triv = GModule::trivial(&FiniteGroup::symmetric(3).unwrap(), &z);
    assert!(triv.group().elements().all(|g| triv.action(g) == &AbHom::identity(&z)));
    let neg = GModule::new(&z2, &z, &ActionSpec::ByElement(vec![vec![vec![int(1)]], vec![vec![int(-1)]]])).unwrap();
    assert_eq!(neg.act(1, &[int(5)]), vec![int(-5)]);
    let z4 = FgAbelianGroup::cyclic(4);
    let doubling = GModule::new(&z2, &z4, &ActionSpec::ByElement(vec![vec![vec![int(1)]], vec![vec![int(2)]]]));
    assert!(matches!(doubling, Err(Error::NotAutomorphism { .. }) | Err(Error::NotAction(_))), "{doubling:?}");
    let neg4 = GModule::new(&z2, &z4, &ActionSpec::ByGenerators { gens: vec![1], matrices: vec![vec![vec![int(-1)]]] })
        .unwrap();
    let fixed = neg4.fixed_points(&[0, 1]).unwrap().subgroup;
    let members: Vec<i64> = (0..4).filter(|&x| fixed.contains(&[int(x)]).unwrap()).collect();
    assert_eq!(members, vec![0, 2]);
    assert_eq!(fixed.presented(), &FgAbelianGroup::cyclic(2));
    assert!(matches!(neg4.fixed_points(&[1]), Err(Error::NotSubgroup(_))));
}

fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let s = g.generated_by(&[x, y]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn battery_modules_satisfy_the_axioms() {
    for case in battery() {
        let m = &case.gmodule;
        let g = m.group();
        let a = m.coeff();
        let id = AbHom::identity(a);
        for x in g.elements() {
            assert_eq!(m.action(x).compose(m.action(g.inv(x))).unwrap(), id, "{}", case.name());
            for y in g.elements() {
                assert_eq!(m.action(x).compose(m.action(y)).unwrap(), *m.action(g.mul(x, y)));
            }
        }
        // A^U shrinks as U grows.
        let subs = subgroups(g);
        let fixed: Vec<_> = subs.iter().map(|u| m.fixed_points(u).unwrap().subgroup).collect();
        for (i, u) in subs.iter().enumerate() {
            for (j, v) in subs.iter().enumerate() {
                if v.iter().all(|x| u.contains(x)) {
                    assert!(fixed[i].is_subgroup_of(&fixed[j]).unwrap(), "{}", case.name());
                }
            }
            for b in fixed[i].basis() {
                assert!(u.iter().all(|&x| a.equal(&m.act(x, &b), &b)));
            }
        }
    }
}
