use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::ops::{tau_operator, tau_source};
use super::space::{tuple_at, tuple_index, CochainSpace};
use crate::abelian::{kernel, AbHom, SubgroupPresentation};
use crate::group::GModule;
use crate::linalg::{kernel_generators, SparseMatrix};
use crate::scalar::IntRing;
use crate::Int;

type Dense = Vec<Vec<Int>>;

/// `CS^n`: cochains fixed by every `τ_i`.
///
/// Each `τ_i` sends the value at `t` to a fixed linear image of the value at
/// an involutive partner tuple, so an invariant cochain is determined on each
/// orbit of tuples by its value at one representative. Walking an orbit
/// records the transport matrices; revisiting a tuple along a different path
/// yields linear constraints on the representative value.
pub fn symmetric_subcomplex(module: &GModule, n: usize) -> SubgroupPresentation {
    let space = CochainSpace::new(module, n);
    if n == 0 {
        return SubgroupPresentation::whole(space.group());
    }
    let g = module.group();
    let order = g.order();
    let a = module.coeff();
    let d = a.dim();
    let actions: Vec<Dense> = g.elements().map(|x| module.action(x).dense().to_rows()).collect();
    let identity: Dense =
        (0..d).map(|i| (0..d).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect();
    let coefficient = |i: usize, t: &[usize]| -> Dense {
        let base = if i == 1 { &actions[t[0]] } else { &identity };
        base.iter().map(|r| r.iter().map(|v| -v).collect()).collect()
    };
    let reduce = |m: Dense| -> Dense {
        m.into_iter().zip(a.moduli()).map(|(r, md)| r.iter().map(|v| v.reduce(md)).collect()).collect()
    };

    let mut transport: Vec<Option<Dense>> = vec![None; space.blocks()];
    let mut generators = Vec::new();
    for start in 0..space.blocks() {
        if transport[start].is_some() {
            continue;
        }
        transport[start] = Some(identity.clone());
        let mut orbit = vec![start];
        let mut constraints: Vec<Vec<(usize, Int)>> = Vec::new();
        let mut constraint_moduli = Vec::new();
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let tu = tuple_at(order, n, u);
            let wu = transport[u].clone().expect("visited");
            for i in 1..=n {
                let (tv, _) = tau_source(g, i, &tu);
                let v = tuple_index(order, &tv);
                let pushed = reduce(mul(&coefficient(i, &tv), &wu));
                match &transport[v] {
                    None => {
                        transport[v] = Some(pushed);
                        orbit.push(v);
                        queue.push_back(v);
                    }
                    Some(wv) => {
                        for (r, m) in a.moduli().iter().enumerate() {
                            let row: Vec<(usize, Int)> = (0..d)
                                .map(|c| (c, (&wv[r][c] - &pushed[r][c]).reduce(m)))
                                .filter(|(_, x)| !x.is_zero())
                                .collect();
                            if !row.is_empty() {
                                constraints.push(row);
                                constraint_moduli.push(m.clone());
                            }
                        }
                    }
                }
            }
        }
        let free = kernel_generators(a.moduli(), &constraints, &constraint_moduli).expect("arbitrary precision");
        orbit.sort_unstable();
        for x in free {
            let mut vector = space.group().zero();
            for &t in &orbit {
                let w = transport[t].as_ref().expect("orbit member");
                for r in 0..d {
                    let mut acc = Int::zero();
                    for c in 0..d {
                        acc += &w[r][c] * &x[c];
                    }
                    vector[t * d + r] = acc;
                }
            }
            generators.push(vector);
        }
    }
    SubgroupPresentation::from_generators(space.group(), generators).expect("vectors live in the cochain group")
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let d = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..d)
                .map(|j| {
                    let mut acc = Int::zero();
                    for (k, x) in r.iter().enumerate() {
                        if !x.is_zero() {
                            acc += x * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `CS^n = ∩_i ker(τ_i - 1)` computed directly from the stacked operators.
pub fn symmetric_subcomplex_by_kernels(module: &GModule, n: usize) -> SubgroupPresentation {
    let space = CochainSpace::new(module, n);
    if n == 0 {
        return SubgroupPresentation::whole(space.group());
    }
    let id = AbHom::identity(space.group());
    let mut stacked: Option<SparseMatrix<Int>> = None;
    for i in 1..=n {
        let t = tau_operator(module, n, i).expect("index in range").sub(&id).expect("same shape");
        stacked = Some(match stacked {
            None => t.matrix().clone(),
            Some(s) => s.vstack(t.matrix()),
        });
    }
    let target = space.group().power(n);
    let f = AbHom::new(space.group().clone(), target, stacked.expect("n >= 1")).expect("well defined");
    kernel(&f)
}
