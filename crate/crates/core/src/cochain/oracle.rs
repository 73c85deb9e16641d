//! Exhaustive cohomology of small finite instances.
//!
//! Cochains are enumerated as words over the element list of `A`; cocycles
//! and symmetric cochains are filtered pointwise from the defining
//! identities, coboundaries are enumerated from all lower cochains, and the
//! invariant factors of `Z / B` are read off from the counts
//! `#{x ∈ Z : p^k x ∈ B}`. No linear algebra is involved.

use std::collections::HashSet;

use num_integer::Integer;

use super::space::{tuple_at, tuple_index};
use super::Variant;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule};
use crate::Int;

/// Largest number of cochains the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 1 << 24;

/// Result of an exhaustive computation; cochains are lists of element indices
/// of `A` (in the order of `FgAbelianGroup::elements`), one per tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub variant: Variant,
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub cocycles: Vec<Vec<usize>>,
    pub coboundaries: usize,
}

struct Tables {
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
    act: Vec<Vec<usize>>,
}

impl Tables {
    fn new(module: &GModule) -> Result<Self> {
        let a = module.coeff();
        let elements = a
            .elements(ORACLE_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("coefficient group {a} is not finite and small")))?;
        let index = |x: &[Int]| a.element_index(x) as usize;
        let add = elements.iter().map(|x| elements.iter().map(|y| index(&a.add(x, y))).collect()).collect();
        let neg = elements.iter().map(|x| index(&a.neg(x))).collect();
        let g = module.group();
        let act = g.elements().map(|h| elements.iter().map(|x| index(&module.act(h, x))).collect()).collect();
        Ok(Tables { add, neg, act })
    }

    fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg[y]]
    }

    fn scale(&self, k: u64, x: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add[acc][x];
        }
        acc
    }
}

fn count(size: usize, blocks: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..blocks {
        total = total
            .checked_mul(size as u64)
            .filter(|&t| t <= ORACLE_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("|A|^(|G|^n) = {size}^{blocks} exceeds 2^24")))?;
    }
    Ok(total)
}

/// Source positions of every term of `(∂σ)(t)`, per target tuple `t`.
struct Coboundary {
    terms: Vec<(usize, usize, Vec<usize>, usize)>,
}

impl Coboundary {
    fn new(g: &FiniteGroup, n: usize) -> Self {
        let order = g.order();
        let terms = (0..order.pow(n as u32 + 1))
            .map(|k| {
                let t = tuple_at(order, n + 1, k);
                let middle = (1..=n)
                    .map(|i| {
                        let mut u = t[..i - 1].to_vec();
                        u.push(g.mul(t[i - 1], t[i]));
                        u.extend_from_slice(&t[i + 1..]);
                        tuple_index(order, &u)
                    })
                    .collect();
                (t[0], tuple_index(order, &t[1..]), middle, tuple_index(order, &t[..n]))
            })
            .collect();
        Coboundary { terms }
    }

    fn at(&self, tb: &Tables, sigma: &[usize], k: usize) -> usize {
        let (g0, first, middle, last) = &self.terms[k];
        let mut acc = tb.act[*g0][sigma[*first]];
        for (i, &m) in middle.iter().enumerate() {
            acc = if i % 2 == 1 { tb.add[acc][sigma[m]] } else { tb.sub(acc, sigma[m]) };
        }
        if middle.len() % 2 == 1 {
            tb.add[acc][sigma[*last]]
        } else {
            tb.sub(acc, sigma[*last])
        }
    }

    fn is_cocycle(&self, tb: &Tables, sigma: &[usize]) -> bool {
        (0..self.terms.len()).all(|k| self.at(tb, sigma, k) == 0)
    }

    fn apply(&self, tb: &Tables, sigma: &[usize]) -> Vec<usize> {
        (0..self.terms.len()).map(|k| self.at(tb, sigma, k)).collect()
    }
}

/// For each tuple and each `τ_i`: the partner tuple and the acting element
/// (`Some(g_1)` for `i = 1`).
struct Symmetry {
    sources: Vec<Vec<(usize, Option<usize>)>>,
}

impl Symmetry {
    fn new(g: &FiniteGroup, n: usize) -> Self {
        let order = g.order();
        let sources = (0..order.pow(n as u32))
            .map(|k| {
                let t = tuple_at(order, n, k);
                (1..=n)
                    .map(|i| {
                        let mut u = t.clone();
                        if i == 1 {
                            u[0] = g.inv(t[0]);
                            if n > 1 {
                                u[1] = g.mul(t[0], t[1]);
                            }
                            return (tuple_index(order, &u), Some(t[0]));
                        }
                        u[i - 2] = g.mul(t[i - 2], t[i - 1]);
                        u[i - 1] = g.inv(t[i - 1]);
                        if i < n {
                            u[i] = g.mul(t[i - 1], t[i]);
                        }
                        (tuple_index(order, &u), None)
                    })
                    .collect()
            })
            .collect();
        Symmetry { sources }
    }

    fn holds(&self, tb: &Tables, sigma: &[usize]) -> bool {
        self.sources.iter().zip(sigma).all(|(srcs, &value)| {
            srcs.iter().all(|&(u, act)| {
                let v = match act {
                    Some(g0) => tb.act[g0][sigma[u]],
                    None => sigma[u],
                };
                tb.neg[v] == value
            })
        })
    }
}

/// Calls `f` on every word of the given length over `0..size`, in
/// lexicographic order.
fn for_each_word(size: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut cur = vec![0; len];
    loop {
        f(&cur);
        let mut carried = true;
        for d in cur.iter_mut().rev() {
            *d += 1;
            if *d < size {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            return;
        }
    }
}

/// Cohomology of a finite module by exhaustive enumeration.
///
/// Fails with `TooLarge` when `|A|^(|G|^n)` exceeds [`ORACLE_LIMIT`].
pub fn oracle_cohomology(module: &GModule, n: usize, variant: Variant) -> Result<OracleReport> {
    let a = module.coeff();
    if !a.is_finite() {
        return Err(Error::TooLarge(format!("coefficient group {a} is infinite")));
    }
    let g = module.group();
    let size = usize::try_from(a.order().expect("finite")).map_err(|_| Error::TooLarge("coefficient group".into()))?;
    let blocks = g.order().pow(n as u32);
    count(size, blocks)?;
    let tb = Tables::new(module)?;

    let d = Coboundary::new(g, n);
    let sym = Symmetry::new(g, n);
    let mut cocycles = Vec::new();
    for_each_word(size, blocks, |sigma| {
        if d.is_cocycle(&tb, sigma) && (variant == Variant::Ordinary || sym.holds(&tb, sigma)) {
            cocycles.push(sigma.to_vec());
        }
    });

    let mut boundaries: HashSet<Vec<usize>> = HashSet::new();
    if n == 0 {
        boundaries.insert(vec![0]);
    } else {
        let lower = g.order().pow(n as u32 - 1);
        count(size, lower)?;
        let d = Coboundary::new(g, n - 1);
        let sym = Symmetry::new(g, n - 1);
        for_each_word(size, lower, |lambda| {
            if variant == Variant::Ordinary || sym.holds(&tb, lambda) {
                boundaries.insert(d.apply(&tb, lambda));
            }
        });
    }

    let z = cocycles.len() as u64;
    let b = boundaries.len() as u64;
    assert_eq!(z % b, 0, "coboundaries form a subgroup of the cocycles");
    let order = z / b;
    let invariant_factors = factors_from_counts(order, |m| {
        let killed = cocycles
            .iter()
            .filter(|x| boundaries.contains(&x.iter().map(|&v| tb.scale(m, v)).collect::<Vec<_>>()))
            .count() as u64;
        killed / b
    });
    Ok(OracleReport { variant, degree: n, invariant_factors, order, cocycles, coboundaries: boundaries.len() })
}

/// Invariant factors of a finite abelian group of the given order from the
/// sizes of its `m`-torsion subgroups.
fn factors_from_counts(order: u64, torsion: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            primes.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    // Per prime: exponents e_1 >= e_2 >= ... of the p-primary part.
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in primes {
        let mut prev = 0u32;
        let mut counts = Vec::new();
        let mut k = 1;
        loop {
            let t = torsion(p.pow(k));
            let s = t.ilog(p);
            if s == prev {
                break;
            }
            counts.push(s - prev);
            prev = s;
            k += 1;
        }
        // counts[k-1] = #{i : e_i >= k}
        let parts = counts.first().copied().unwrap_or(0) as usize;
        let mut col = vec![1u64; parts];
        for &c in &counts {
            for e in col.iter_mut().take(c as usize) {
                *e *= p;
            }
        }
        columns.push(col);
    }
    let len = columns.iter().map(Vec::len).max().unwrap_or(0);
    // Largest factor gets the largest prime power of every prime.
    let mut out = vec![1u64; len];
    for col in columns {
        for (i, e) in col.iter().enumerate() {
            out[len - 1 - i] = out[len - 1 - i].lcm(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::group::FiniteGroup;

    #[test]
    fn factors_from_known_groups() {
        // Z/2 + Z/4 + Z/12: m-torsion sizes by direct count.
        let f = [2u64, 4, 12];
        let torsion = |m: u64| f.iter().map(|&d| d.gcd(&m)).product::<u64>();
        assert_eq!(factors_from_counts(96, torsion), vec![2, 4, 12]);
        assert_eq!(factors_from_counts(1, |_| 1), Vec::<u64>::new());
    }

    #[test]
    fn z2_coefficients() {
        let m = GModule::trivial(&FiniteGroup::cyclic(2).unwrap(), &FgAbelianGroup::cyclic(2));
        let h = oracle_cohomology(&m, 2, Variant::Ordinary).unwrap();
        assert_eq!(h.invariant_factors, vec![2]);
        let hs = oracle_cohomology(&m, 2, Variant::Symmetric).unwrap();
        assert_eq!(hs.invariant_factors, Vec::<u64>::new());
        assert_eq!(oracle_cohomology(&m, 1, Variant::Ordinary).unwrap().invariant_factors, vec![2]);
    }

    #[test]
    fn refuses_large_or_infinite() {
        let m = GModule::trivial(&FiniteGroup::cyclic(4).unwrap(), &FgAbelianGroup::cyclic(4));
        assert!(matches!(oracle_cohomology(&m, 2, Variant::Ordinary), Err(Error::TooLarge(_))));
        let z = GModule::trivial(&FiniteGroup::cyclic(2).unwrap(), &FgAbelianGroup::free(1));
        assert!(matches!(oracle_cohomology(&z, 1, Variant::Ordinary), Err(Error::TooLarge(_))));
    }
}
