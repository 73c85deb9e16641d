use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{with_fallback, IntRing};
use crate::Int;

/// A finitely generated abelian group `Z^r ⊕ Z/m_1 ⊕ ... ⊕ Z/m_t`.
///
/// Coordinates carry a modulus each: `0` for a free coordinate, `m >= 2` for
/// a torsion coordinate. Groups built from free rank and invariant factors
/// are canonical (free coordinates first, then `d_1 | d_2 | ...`); cochain
/// groups are diagonal sums that need not be canonical, and
/// [`FgAbelianGroup::canonical_form`] recovers the invariant factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    moduli: Vec<Int>,
}

impl FgAbelianGroup {
    /// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`, requiring `d_i >= 2` and `d_i | d_{i+1}`.
    pub fn new(free_rank: usize, invariant_factors: &[Int]) -> Result<Self> {
        if let Some(d) = invariant_factors.iter().find(|d| **d < Int::from(2)) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        let mut moduli = vec![Int::zero(); free_rank];
        moduli.extend(invariant_factors.iter().cloned());
        Ok(FgAbelianGroup { moduli })
    }

    /// Diagonal group with the given per-coordinate moduli (`0` free, `>= 2` torsion).
    pub fn from_moduli(moduli: Vec<Int>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|m| !m.is_zero() && **m < Int::from(2)) {
            return Err(Error::InvalidGroup(format!("coordinate modulus {m} must be 0 or at least 2")));
        }
        Ok(FgAbelianGroup { moduli })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { moduli: vec![Int::zero(); rank] }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FgAbelianGroup { moduli: vec![Int::from(n)] },
        }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { moduli: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn modulus(&self, j: usize) -> &Int {
        &self.moduli[j]
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_canonical(&self) -> bool {
        let r = self.free_rank();
        self.moduli[..r].iter().all(Zero::is_zero) && self.moduli[r..].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Invariant factors of the torsion part, `d_1 | d_2 | ...`, each `>= 2`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let torsion: Vec<Int> = self.moduli.iter().filter(|m| !m.is_zero()).cloned().collect();
        if torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
            return torsion;
        }
        with_fallback(
            || {
                let small: Option<Vec<i64>> = torsion.iter().map(|m| m.to_i64()).collect();
                small.map(|v| Ok(chain_factors(v).into_iter().map(Int::from).collect()))
            },
            || Ok(chain_factors(torsion.clone())),
        )
    }

    /// Isomorphic canonical group.
    pub fn canonical_form(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(self.free_rank(), &self.invariant_factors()).expect("invariant factors form a chain")
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self.free_rank() == other.free_rank() && self.invariant_factors() == other.invariant_factors()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.moduli.iter().product())
    }

    /// Fail unless `x` has the right length.
    pub fn check(&self, x: &[Int]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() })
        }
    }

    /// Canonical representative: torsion coordinates reduced into `[0, m)`.
    pub fn canonical(&self, x: &[Int]) -> Vec<Int> {
        debug_assert_eq!(x.len(), self.dim());
        x.iter().zip(&self.moduli).map(|(v, m)| v.reduce(m)).collect()
    }

    pub fn canonicalize(&self, x: &mut [Int]) {
        for (v, m) in x.iter_mut().zip(&self.moduli) {
            if !m.is_zero() && (v.is_negative() || *v >= *m) {
                *v = v.mod_floor(m);
            }
        }
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        x.iter().zip(&self.moduli).all(|(v, m)| if m.is_zero() { v.is_zero() } else { v.is_multiple_of(m) })
    }

    pub fn equal(&self, x: &[Int], y: &[Int]) -> bool {
        self.is_zero(&self.sub(x, y))
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.dim()]
    }

    /// The `j`-th coordinate generator.
    pub fn unit(&self, j: usize) -> Vec<Int> {
        let mut e = self.zero();
        e[j] = Int::one();
        e
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        self.canonical(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn sub(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        self.canonical(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
    }

    pub fn neg(&self, x: &[Int]) -> Vec<Int> {
        self.canonical(&x.iter().map(|a| -a).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: &Int, x: &[Int]) -> Vec<Int> {
        self.canonical(&x.iter().map(|a| k * a).collect::<Vec<_>>())
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let mut ord = Int::one();
        for (v, m) in x.iter().zip(&self.moduli) {
            if m.is_zero() {
                if !v.is_zero() {
                    return None;
                }
            } else {
                ord = ord.lcm(&(m / v.gcd(m)));
            }
        }
        Some(ord)
    }

    /// `self ⊕ other`, coordinates of `self` first.
    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend(other.moduli.iter().cloned());
        FgAbelianGroup { moduli }
    }

    /// `self^k` as a diagonal group, block `i` occupying coordinates `i*dim .. (i+1)*dim`.
    pub fn power(&self, k: usize) -> FgAbelianGroup {
        let moduli = (0..k).flat_map(|_| self.moduli.iter().cloned()).collect();
        FgAbelianGroup { moduli }
    }

    /// All canonical elements of a finite group, first coordinate most
    /// significant. `None` if the group is infinite or larger than `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<Int>>> {
        let order = self.order()?.to_u64().filter(|o| *o <= limit)?;
        Some((0..order).map(|k| self.element_at(k)).collect())
    }

    /// The `k`-th element in the order used by [`FgAbelianGroup::elements`].
    pub fn element_at(&self, mut k: u64) -> Vec<Int> {
        let mut x = self.zero();
        for (v, m) in x.iter_mut().zip(&self.moduli).rev() {
            let m = m.to_u64().expect("finite enumerable group");
            *v = Int::from(k % m);
            k /= m;
        }
        x
    }

    /// Inverse of [`FgAbelianGroup::element_at`] for a finite group.
    pub fn element_index(&self, x: &[Int]) -> u64 {
        let mut k = 0u64;
        for (v, m) in x.iter().zip(&self.moduli) {
            let m = m.to_u64().expect("finite enumerable group");
            k = k * m + v.mod_floor(&Int::from(m)).to_u64().expect("reduced coordinate");
        }
        k
    }
}

/// Invariant factors of `⊕ Z/m_i` by repeated `(gcd, lcm)` exchanges.
fn chain_factors<T: IntRing>(mut m: Vec<T>) -> Vec<T> {
    m.sort();
    let n = m.len();
    for i in 0..n {
        for j in i + 1..n {
            if !m[j].is_multiple_of(&m[i]) {
                let g = m[i].gcd(&m[j]);
                let l = m[i].lcm(&m[j]);
                m[i] = g;
                m[j] = l;
            }
        }
    }
    m.retain(|d| !d.is_one());
    m
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

impl fmt::Display for FgAbelianGroup {
    /// Canonical name such as `Z^2 + Z/2 + Z/4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.free_rank();
        let mut parts = Vec::new();
        match r {
            0 => {}
            1 => parts.push("Z".to_string()),
            _ => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors().iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    #[test]
    fn rejects_broken_chain() {
        assert!(FgAbelianGroup::new(0, &ints(&[2, 3])).is_err());
        assert!(FgAbelianGroup::new(0, &ints(&[1])).is_err());
        assert!(FgAbelianGroup::new(1, &ints(&[2, 4])).is_ok());
    }

    #[test]
    fn invariant_factors_of_diagonal_sums() {
        let g = FgAbelianGroup::from_moduli(ints(&[6, 4, 0])).unwrap();
        assert_eq!(g.invariant_factors(), ints(&[2, 12]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        let h = FgAbelianGroup::from_moduli(ints(&[2, 3])).unwrap();
        assert!(h.is_isomorphic(&FgAbelianGroup::cyclic(6)));
    }

    #[test]
    fn canonical_representatives() {
        let g = FgAbelianGroup::new(1, &ints(&[4])).unwrap();
        assert_eq!(g.canonical(&ints(&[-3, -1])), ints(&[-3, 3]));
        assert!(g.is_zero(&ints(&[0, 8])));
        assert!(!g.is_zero(&ints(&[1, 0])));
        assert_eq!(g.element_order(&ints(&[0, 2])), Some(Int::from(2)));
        assert_eq!(g.element_order(&ints(&[1, 0])), None);
    }

    #[test]
    fn enumeration_round_trips() {
        let g = FgAbelianGroup::from_moduli(ints(&[2, 3])).unwrap();
        let all = g.elements(100).unwrap();
        assert_eq!(all.len(), 6);
        for (k, x) in all.iter().enumerate() {
            assert_eq!(g.element_index(x), k as u64);
        }
        assert!(FgAbelianGroup::free(1).elements(100).is_none());
    }
}
