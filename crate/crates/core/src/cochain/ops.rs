use num_traits::Zero;

use super::space::{tuple_at, tuple_index, Cochain, CochainSpace};
use crate::abelian::AbHom;
use crate::error::{Error, Result};
use crate::group::GModule;
use crate::linalg::SparseMatrix;
use crate::Int;

/// Nonzero entries `(row, col, value)` of each action matrix.
pub(crate) fn action_entries(module: &GModule) -> Vec<Vec<(usize, usize, Int)>> {
    module
        .group()
        .elements()
        .map(|g| {
            let m = module.action(g).matrix();
            let mut out = Vec::new();
            for r in 0..m.nrows() {
                for (c, v) in m.row(r) {
                    out.push((r, *c, v.clone()));
                }
            }
            out
        })
        .collect()
}

/// `∂^n : C^n -> C^{n+1}`,
/// `(∂σ)(g_1..g_{n+1}) = g_1 σ(g_2..g_{n+1}) + Σ_{i=1}^{n} (-1)^i σ(.., g_i g_{i+1}, ..) + (-1)^{n+1} σ(g_1..g_n)`.
pub fn coboundary(module: &GModule, n: usize) -> AbHom {
    let g = module.group();
    let order = g.order();
    let d = module.coeff().dim();
    let src = CochainSpace::new(module, n);
    let tgt = CochainSpace::new(module, n + 1);
    let acts = action_entries(module);
    let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); tgt.group().dim()];
    let mut merged = vec![0; n];
    for k in 0..tgt.blocks() {
        let t = tuple_at(order, n + 1, k);
        let base = k * d;
        let first = tuple_index(order, &t[1..]) * d;
        for (r, c, v) in &acts[t[0]] {
            rows[base + r].push((first + c, v.clone()));
        }
        for i in 1..=n {
            merged[..i - 1].copy_from_slice(&t[..i - 1]);
            merged[i - 1] = g.mul(t[i - 1], t[i]);
            merged[i..].copy_from_slice(&t[i + 1..]);
            let col = tuple_index(order, &merged) * d;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for r in 0..d {
                rows[base + r].push((col + r, Int::from(sign)));
            }
        }
        let col = tuple_index(order, &t[..n]) * d;
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        for r in 0..d {
            rows[base + r].push((col + r, Int::from(sign)));
        }
    }
    let m = SparseMatrix::from_row_entries(rows, src.group().dim());
    AbHom::new(src.group().clone(), tgt.group().clone(), m).expect("coboundary of a valid module is well defined")
}

/// Where `τ_i` reads its value for tuple `t` (1-based `i`), and whether the
/// coefficient is `-M_{g_1}` (true) or `-1` (false).
pub(crate) fn tau_source(g: &crate::group::FiniteGroup, i: usize, t: &[usize]) -> (Vec<usize>, bool) {
    let n = t.len();
    if i == 1 {
        let mut u = t.to_vec();
        u[0] = g.inv(t[0]);
        if n > 1 {
            u[1] = g.mul(t[0], t[1]);
        }
        return (u, true);
    }
    // 1-based positions i-1, i, i+1 become (g_{i-1} g_i, g_i^{-1}, g_i g_{i+1}).
    let mut u = t.to_vec();
    u[i - 2] = g.mul(t[i - 2], t[i - 1]);
    u[i - 1] = g.inv(t[i - 1]);
    if i < n {
        u[i] = g.mul(t[i - 1], t[i]);
    }
    (u, false)
}

/// The operator `τ_i` on `C^n` for `1 <= i <= n`.
pub fn tau_operator(module: &GModule, n: usize, i: usize) -> Result<AbHom> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let g = module.group();
    let order = g.order();
    let d = module.coeff().dim();
    let space = CochainSpace::new(module, n);
    let acts = action_entries(module);
    let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); space.group().dim()];
    for k in 0..space.blocks() {
        let t = tuple_at(order, n, k);
        let (u, twisted) = tau_source(g, i, &t);
        let col = tuple_index(order, &u) * d;
        let base = k * d;
        if twisted {
            for (r, c, v) in &acts[t[0]] {
                rows[base + r].push((col + c, -v));
            }
        } else {
            for r in 0..d {
                rows[base + r].push((col + r, Int::from(-1)));
            }
        }
    }
    let m = SparseMatrix::from_row_entries(rows, space.group().dim());
    Ok(AbHom::new(space.group().clone(), space.group().clone(), m).expect("tau of a valid module is well defined"))
}

/// `∂σ` by direct evaluation.
pub fn apply_coboundary(module: &GModule, sigma: &Cochain) -> Result<Cochain> {
    let n = sigma.degree();
    let src = CochainSpace::new(module, n);
    src.check(sigma)?;
    let g = module.group();
    let a = module.coeff();
    let order = g.order();
    let tgt = CochainSpace::new(module, n + 1);
    let mut merged = vec![0; n];
    tgt.cochain_from_fn(|t| {
        let mut acc = module.act(t[0], sigma.value(order, &t[1..]));
        for i in 1..=n {
            merged[..i - 1].copy_from_slice(&t[..i - 1]);
            merged[i - 1] = g.mul(t[i - 1], t[i]);
            merged[i..].copy_from_slice(&t[i + 1..]);
            let v = sigma.value(order, &merged);
            acc = if i % 2 == 0 { a.add(&acc, v) } else { a.sub(&acc, v) };
        }
        let v = sigma.value(order, &t[..n]);
        if (n + 1).is_multiple_of(2) {
            a.add(&acc, v)
        } else {
            a.sub(&acc, v)
        }
    })
}

/// `τ_i σ` by direct evaluation.
pub fn apply_tau(module: &GModule, sigma: &Cochain, i: usize) -> Result<Cochain> {
    let n = sigma.degree();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let space = CochainSpace::new(module, n);
    space.check(sigma)?;
    let g = module.group();
    let a = module.coeff();
    let order = g.order();
    space.cochain_from_fn(|t| {
        let (u, twisted) = tau_source(g, i, t);
        let v = sigma.value(order, &u);
        if twisted {
            a.neg(&module.act(t[0], v))
        } else {
            a.neg(v)
        }
    })
}

pub fn is_cocycle(module: &GModule, sigma: &Cochain) -> Result<bool> {
    let d = apply_coboundary(module, sigma)?;
    Ok(d.vector().iter().all(Zero::is_zero))
}

/// `τ_i σ = σ` for every `i` (degree 0 cochains are always symmetric).
pub fn is_symmetric(module: &GModule, sigma: &Cochain) -> Result<bool> {
    for i in 1..=sigma.degree() {
        if apply_tau(module, sigma, i)? != *sigma {
            return Ok(false);
        }
    }
    Ok(true)
}
