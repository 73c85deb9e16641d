use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AbHom, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::linalg::{kernel_generators, smith_modular, smith_normal_form, EchelonBasis, Matrix};
use crate::scalar::{narrow, widen, with_fallback, IntRing, Overflow};
use crate::Int;

/// A subgroup carried as an abstract group together with an injective
/// inclusion into its ambient group.
///
/// `presented` is always canonical (free coordinates first, then invariant
/// factors in divisibility order), so a quotient of a subgroup is a single
/// Smith normal form away.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    ambient: FgAbelianGroup,
    generators: Vec<Vec<Int>>,
    presented: FgAbelianGroup,
    inclusion: AbHom,
    solver: OnceLock<Solver>,
}

impl SubgroupPresentation {
    /// The subgroup spanned by `generators`.
    pub fn from_generators(ambient: &FgAbelianGroup, generators: Vec<Vec<Int>>) -> Result<Self> {
        for g in &generators {
            ambient.check(g)?;
        }
        let generators: Vec<Vec<Int>> = generators.iter().map(|g| ambient.canonical(g)).collect();
        let moduli = ambient.moduli();
        let p = with_fallback(
            || {
                let m = narrow::<i64>(moduli)?;
                let g = generators.iter().map(|v| narrow::<i64>(v)).collect::<Option<Vec<_>>>()?;
                Some(present(&m, &g).map(Presentation::widen))
            },
            || present(moduli, &generators),
        );
        let presented = FgAbelianGroup::from_moduli(p.moduli).expect("presentation moduli are 0 or >= 2");
        debug_assert!(presented.is_canonical());
        let inclusion = AbHom::from_columns(presented.clone(), ambient.clone(), &p.inclusion)
            .expect("inclusion columns are killed by their orders");
        Ok(SubgroupPresentation { ambient: ambient.clone(), generators, presented, inclusion, solver: OnceLock::new() })
    }

    pub fn whole(ambient: &FgAbelianGroup) -> Self {
        let gens = (0..ambient.dim()).map(|j| ambient.unit(j)).collect();
        Self::from_generators(ambient, gens).expect("units have the right length")
    }

    pub fn trivial(ambient: &FgAbelianGroup) -> Self {
        Self::from_generators(ambient, Vec::new()).expect("no generators")
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn presented(&self) -> &FgAbelianGroup {
        &self.presented
    }

    pub fn inclusion(&self) -> &AbHom {
        &self.inclusion
    }

    /// Images of the presented group's coordinate generators.
    pub fn basis(&self) -> Vec<Vec<Int>> {
        self.inclusion.columns().iter().map(|c| self.ambient.canonical(c)).collect()
    }

    fn solver(&self) -> &Solver {
        self.solver.get_or_init(|| Solver::new(&self.inclusion))
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        self.ambient.check(x)?;
        Ok(self.solver().solve(x).is_some())
    }

    /// Coordinates of `x` in the presented group, or `None` if `x` lies outside.
    pub fn coordinates(&self, x: &[Int]) -> Result<Option<Vec<Int>>> {
        self.ambient.check(x)?;
        Ok(self.solver().solve(x))
    }

    pub fn is_subgroup_of(&self, other: &SubgroupPresentation) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        for b in self.basis() {
            if !other.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same set of elements.
    pub fn same_subgroup(&self, other: &SubgroupPresentation) -> Result<bool> {
        Ok(self.is_subgroup_of(other)? && other.is_subgroup_of(self)?)
    }

    /// Pull back along the inclusion: the subgroup of `presented` mapping into `other`.
    pub fn restrict_to(&self, other: &SubgroupPresentation) -> Result<SubgroupPresentation> {
        let meet = intersect(self, other)?;
        let gens = meet
            .basis()
            .iter()
            .map(|b| self.coordinates(b).map(|c| c.expect("intersection lies in the subgroup")))
            .collect::<Result<Vec<_>>>()?;
        SubgroupPresentation::from_generators(&self.presented, gens)
    }
}

struct Presentation<T> {
    moduli: Vec<T>,
    inclusion: Vec<Vec<T>>,
}

impl Presentation<i64> {
    fn widen(self) -> Presentation<BigInt> {
        Presentation { moduli: widen(&self.moduli), inclusion: self.inclusion.iter().map(|c| widen(c)).collect() }
    }
}

/// Present `span(gens) ⊆ Z^n / diag(moduli)` as a canonical group.
///
/// The lattice `span(gens) + R` is first brought to Hermite form, which
/// bounds the working generators by `n` and keeps entries small. The
/// relations `m_j e_j` are then written in that basis by back substitution;
/// the Smith form `U P V = D` of these coordinates changes the basis by `U`,
/// so the new basis elements are the columns of `U^-1` pushed forward along
/// the Hermite rows.
fn present<T: IntRing>(moduli: &[T], gens: &[Vec<T>]) -> Result<Presentation<T>, Overflow> {
    let mut eb = EchelonBasis::new(moduli, 0);
    for g in gens {
        eb.insert(g.clone(), None)?;
    }
    let pivots = eb.pivots();
    let rows = eb.hermite_rows()?;
    // A row equal to its seeded relation `m_c e_c` is zero in the subgroup.
    let keep: Vec<usize> = (0..rows.len())
        .filter(|&r| {
            let m = &moduli[pivots[r]];
            m.is_zero() || rows[r][pivots[r]] != *m
        })
        .collect();
    let k = keep.len();
    let mut syz = Vec::new();
    for &kr in &keep {
        let j = pivots[kr];
        if moduli[j].is_zero() {
            continue;
        }
        let mut v = vec![T::zero(); moduli.len()];
        v[j] = moduli[j].clone();
        let mut c = vec![T::zero(); rows.len()];
        for (r, &p) in pivots.iter().enumerate().skip(kr) {
            if v[p].is_zero() {
                continue;
            }
            let q = v[p].div_floor(&rows[r][p]);
            let nq = q.neg_c()?;
            for (x, y) in v[p..].iter_mut().zip(&rows[r][p..]) {
                if !y.is_zero() {
                    *x = x.mul_add_c(&nq, y)?;
                }
            }
            c[r] = q;
        }
        debug_assert!(v.iter().all(|x| x.is_zero()));
        syz.push(keep.iter().map(|&r| c[r].clone()).collect::<Vec<_>>());
    }
    let basis: Vec<Vec<T>> = keep.iter().map(|&r| rows[r].clone()).collect();
    let p = Matrix::from_columns(&syz, k);
    if let Some(e) = exponent(moduli) {
        let (diag, li) = smith_modular(&p, &e)?;
        let mut out_moduli = Vec::new();
        let mut inclusion = Vec::new();
        for (j, d) in diag.into_iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let coeffs = li.column(j);
            inclusion.push(combine(&basis, &coeffs, moduli)?);
            out_moduli.push(d);
        }
        return Ok(Presentation { moduli: out_moduli, inclusion });
    }
    let gens = &basis;
    let syz = &syz;
    let s = smith_normal_form(&p)?;
    let diag = |j: usize| {
        if j < syz.len() {
            s.diag.get(j, j).clone()
        } else {
            T::zero()
        }
    };
    let free = (0..k).filter(|&j| diag(j).is_zero());
    let torsion = (0..k).filter(|&j| !diag(j).is_zero() && !diag(j).is_one());
    let order: Vec<usize> = free.chain(torsion).collect();
    let mut out_moduli = Vec::with_capacity(order.len());
    let mut inclusion = Vec::with_capacity(order.len());
    for j in order {
        let mut col = vec![T::zero(); moduli.len()];
        for (i, g) in gens.iter().enumerate() {
            let c = s.left_inverse.get(i, j);
            if c.is_zero() {
                continue;
            }
            for (x, v) in col.iter_mut().zip(g) {
                if !v.is_zero() {
                    *x = x.mul_add_c(c, v)?;
                }
            }
        }
        for (x, m) in col.iter_mut().zip(moduli) {
            *x = x.reduce(m);
        }
        out_moduli.push(diag(j));
        inclusion.push(col);
    }
    Ok(Presentation { moduli: out_moduli, inclusion })
}

/// Least common multiple of the moduli when all are torsion.
fn exponent<T: IntRing>(moduli: &[T]) -> Option<T> {
    let mut e = T::one();
    for m in moduli {
        if m.is_zero() {
            return None;
        }
        e = e.lcm(m);
    }
    Some(e)
}

/// `Σ coeffs_i rows_i`, reduced.
fn combine<T: IntRing>(rows: &[Vec<T>], coeffs: &[T], moduli: &[T]) -> Result<Vec<T>, Overflow> {
    let mut col = vec![T::zero(); moduli.len()];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (x, v) in col.iter_mut().zip(r) {
            if !v.is_zero() {
                *x = x.mul_add_c(c, v)?;
            }
        }
    }
    for (x, m) in col.iter_mut().zip(moduli) {
        *x = x.reduce(m);
    }
    Ok(col)
}

/// `{x : f(x) = 0}`.
pub fn kernel(f: &AbHom) -> SubgroupPresentation {
    let src = f.source().moduli();
    let tgt = f.target().moduli();
    let rows = f.matrix().row_slices();
    let gens = with_fallback(
        || {
            let s = narrow::<i64>(src)?;
            let t = narrow::<i64>(tgt)?;
            let m = f.matrix().narrow::<i64>()?;
            Some(kernel_generators(&s, m.row_slices(), &t).map(|g| g.iter().map(|v| widen(v)).collect()))
        },
        || kernel_generators(src, rows, tgt),
    );
    SubgroupPresentation::from_generators(f.source(), gens).expect("kernel vectors live in the source")
}

/// The subgroup of the target spanned by the columns of `f`.
pub fn image(f: &AbHom) -> SubgroupPresentation {
    SubgroupPresentation::from_generators(f.target(), f.columns()).expect("columns live in the target")
}

/// A quotient group with its projection and chosen lifts of its generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FgAbelianGroup,
    projection: AbHom,
    lifts: Vec<Vec<Int>>,
}

impl Quotient {
    /// The canonical quotient group.
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Surjection from the ambient group; its kernel is the subgroup.
    pub fn projection(&self) -> &AbHom {
        &self.projection
    }

    /// Ambient elements mapping to the quotient's coordinate generators.
    pub fn lifts(&self) -> &[Vec<Int>] {
        &self.lifts
    }

    pub fn project(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.projection.apply(x)
    }
}

/// `ambient / sub`.
pub fn quotient(ambient: &FgAbelianGroup, sub: &SubgroupPresentation) -> Result<Quotient> {
    if sub.ambient() != ambient {
        return Err(Error::AmbientMismatch);
    }
    let n = ambient.dim();
    let mut relations = sub.basis();
    for (j, m) in ambient.moduli().iter().enumerate() {
        if !m.is_zero() {
            let mut e = vec![Int::zero(); n];
            e[j] = m.clone();
            relations.push(e);
        }
    }
    let (moduli, rows, lifts) = with_fallback(
        || {
            let r = relations.iter().map(|v| narrow::<i64>(v)).collect::<Option<Vec<_>>>()?;
            Some(cokernel(&r, n).map(|(m, rows, lifts)| {
                (widen(&m), rows.iter().map(|v| widen(v)).collect(), lifts.iter().map(|v| widen(v)).collect())
            }))
        },
        || cokernel(&relations, n),
    );
    let group = FgAbelianGroup::from_moduli(moduli).expect("cokernel moduli are 0 or >= 2");
    debug_assert!(group.is_canonical());
    let projection = AbHom::from_rows(ambient.clone(), group.clone(), rows).expect("relations are killed");
    let lifts = lifts.iter().map(|l: &Vec<Int>| ambient.canonical(l)).collect();
    Ok(Quotient { group, projection, lifts })
}

type Cokernel<T> = (Vec<T>, Vec<Vec<T>>, Vec<Vec<T>>);

/// `Z^n / span(relations)`: moduli, projection rows and lifts.
fn cokernel<T: IntRing>(relations: &[Vec<T>], n: usize) -> Result<Cokernel<T>, Overflow> {
    let p = Matrix::from_columns(relations, n);
    let s = smith_normal_form(&p)?;
    let diag = |j: usize| {
        if j < relations.len() {
            s.diag.get(j, j).clone()
        } else {
            T::zero()
        }
    };
    let free = (0..n).filter(|&j| diag(j).is_zero());
    let torsion = (0..n).filter(|&j| !diag(j).is_zero() && !diag(j).is_one());
    let order: Vec<usize> = free.chain(torsion).collect();
    let moduli = order.iter().map(|&j| diag(j)).collect();
    let rows = order.iter().map(|&j| s.left.row(j).to_vec()).collect();
    let lifts = order.iter().map(|&j| s.left_inverse.column(j)).collect();
    Ok((moduli, rows, lifts))
}

/// Elements lying in both subgroups.
pub fn intersect(a: &SubgroupPresentation, b: &SubgroupPresentation) -> Result<SubgroupPresentation> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let joint = a.inclusion().hstack(&b.inclusion().neg())?;
    let k = kernel(&joint);
    let da = a.presented().dim();
    let gens = k.basis().iter().map(|uv| a.inclusion().apply(&uv[..da])).collect::<Result<Vec<_>>>()?;
    SubgroupPresentation::from_generators(a.ambient(), gens)
}

/// Some `x` with `f(x) = y`, or `None`.
///
/// The answer is the canonical representative of the solution coset
/// `x + ker f`, reduced against a Hermite basis of the kernel lattice, so it
/// does not depend on how the system was assembled.
pub fn solve(f: &AbHom, y: &[Int]) -> Result<Option<Vec<Int>>> {
    f.target().check(y)?;
    Ok(Solver::new(f).solve(y))
}

/// Reusable solver for `f(x) = y` with varying `y`.
#[derive(Clone, Debug)]
pub struct Solver {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    columns: Vec<Vec<Int>>,
    small: Option<Engine<i64>>,
    big: OnceLock<Engine<BigInt>>,
}

#[derive(Clone, Debug)]
struct Engine<T> {
    image: EchelonBasis<T>,
    kernel: EchelonBasis<T>,
}

impl<T: IntRing> Engine<T> {
    fn build(src: &[T], tgt: &[T], columns: &[Vec<T>]) -> Result<Self, Overflow> {
        let mut image = EchelonBasis::new(tgt, columns.len());
        for (j, c) in columns.iter().enumerate() {
            image.insert(c.clone(), Some(j))?;
        }
        let mut kernel = EchelonBasis::new(src, 0);
        for s in image.syzygies() {
            kernel.insert(s.clone(), None)?;
        }
        Ok(Engine { image, kernel })
    }

    fn solve(&self, y: &[T]) -> Result<Option<Vec<T>>, Overflow> {
        let (r, coeffs) = self.image.reduce(y)?;
        if r.iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let (x, _) = self.kernel.reduce(&coeffs)?;
        Ok(Some(x))
    }
}

impl Solver {
    pub fn new(f: &AbHom) -> Self {
        let columns = f.columns();
        let small = (|| {
            let s = narrow::<i64>(f.source().moduli())?;
            let t = narrow::<i64>(f.target().moduli())?;
            let c = columns.iter().map(|v| narrow::<i64>(v)).collect::<Option<Vec<_>>>()?;
            Engine::build(&s, &t, &c).ok()
        })();
        Solver { source: f.source().clone(), target: f.target().clone(), columns, small, big: OnceLock::new() }
    }

    fn big(&self) -> &Engine<BigInt> {
        self.big.get_or_init(|| {
            Engine::build(self.source.moduli(), self.target.moduli(), &self.columns).expect("arbitrary precision")
        })
    }

    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        let y = self.target.canonical(y);
        let fast = self.small.as_ref().and_then(|e| {
            let ys = narrow::<i64>(&y)?;
            e.solve(&ys).ok().map(|x| x.map(|v| widen(&v)))
        });
        let x = match fast {
            Some(x) => x,
            None => self.big().solve(&y).expect("arbitrary precision"),
        };
        x.map(|v| self.source.canonical(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    fn hom(src: &FgAbelianGroup, tgt: &FgAbelianGroup, rows: &[&[i64]]) -> AbHom {
        AbHom::from_rows(src.clone(), tgt.clone(), rows.iter().map(|r| ints(r)).collect()).unwrap()
    }

    #[test]
    fn kernel_of_reduction_mod_four() {
        let z = FgAbelianGroup::free(1);
        let f = hom(&z, &FgAbelianGroup::cyclic(4), &[&[1]]);
        let k = kernel(&f);
        assert_eq!(k.presented(), &z);
        assert_eq!(k.basis(), vec![ints(&[4])]);
        for x in -10..10 {
            assert_eq!(k.contains(&ints(&[x])).unwrap(), x % 4 == 0);
        }
    }

    #[test]
    fn kernel_trivial_and_whole() {
        let z2 = FgAbelianGroup::free(2);
        assert!(kernel(&AbHom::identity(&z2)).presented().is_trivial());
        let z6 = FgAbelianGroup::cyclic(6);
        let k = kernel(&AbHom::zero(&z6, &z6));
        assert_eq!(k.presented(), &z6);
    }

    #[test]
    fn images() {
        let z4 = FgAbelianGroup::cyclic(4);
        let z = FgAbelianGroup::free(1);
        assert!(image(&AbHom::zero(&z, &z4)).presented().is_trivial());
        assert_eq!(image(&AbHom::identity(&z4)).presented(), &z4);
        let im = image(&hom(&z, &z4, &[&[2]]));
        assert_eq!(im.presented(), &FgAbelianGroup::cyclic(2));
        assert!(im.contains(&ints(&[2])).unwrap());
        assert!(!im.contains(&ints(&[1])).unwrap());
    }

    #[test]
    fn quotients() {
        let z = FgAbelianGroup::free(1);
        let four = SubgroupPresentation::from_generators(&z, vec![ints(&[4])]).unwrap();
        let q = quotient(&z, &four).unwrap();
        assert_eq!(q.group(), &FgAbelianGroup::cyclic(4));
        assert_eq!(q.project(&ints(&[7])).unwrap().len(), 1);

        let z6 = FgAbelianGroup::cyclic(6);
        let q = quotient(&z6, &SubgroupPresentation::trivial(&z6)).unwrap();
        assert_eq!(q.group(), &z6);
        assert!(q.projection().is_isomorphism());

        let three = SubgroupPresentation::from_generators(&z6, vec![ints(&[3])]).unwrap();
        let q = quotient(&z6, &three).unwrap();
        assert_eq!(q.group(), &FgAbelianGroup::cyclic(3));
        assert!(q.projection().is_surjective());
        assert!(kernel(q.projection()).same_subgroup(&three).unwrap());
        assert!(matches!(quotient(&z, &three), Err(Error::AmbientMismatch)));
    }

    #[test]
    fn solving() {
        let z = FgAbelianGroup::free(1);
        let two = hom(&z, &z, &[&[2]]);
        assert_eq!(solve(&two, &ints(&[6])).unwrap(), Some(ints(&[3])));
        assert_eq!(solve(&two, &ints(&[5])).unwrap(), None);
        let z4 = FgAbelianGroup::cyclic(4);
        let two4 = hom(&z4, &z4, &[&[2]]);
        let x = solve(&two4, &ints(&[2])).unwrap().unwrap();
        assert_eq!(two4.apply(&x).unwrap(), ints(&[2]));
        assert_eq!(x, ints(&[1]));
        assert_eq!(solve(&two4, &ints(&[1])).unwrap(), None);
    }

    #[test]
    fn intersections() {
        let z2 = FgAbelianGroup::free(2);
        let a = SubgroupPresentation::from_generators(&z2, vec![ints(&[2, 0])]).unwrap();
        let b = SubgroupPresentation::from_generators(&z2, vec![ints(&[0, 3])]).unwrap();
        assert!(intersect(&a, &b).unwrap().presented().is_trivial());
        let whole = SubgroupPresentation::whole(&z2);
        assert!(intersect(&whole, &a).unwrap().same_subgroup(&a).unwrap());
        let c = SubgroupPresentation::from_generators(&z2, vec![ints(&[2, 2]), ints(&[0, 4])]).unwrap();
        let d = SubgroupPresentation::from_generators(&z2, vec![ints(&[3, 0]), ints(&[0, 1])]).unwrap();
        let m = intersect(&c, &d).unwrap();
        let expected = SubgroupPresentation::from_generators(&z2, vec![ints(&[6, 6]), ints(&[0, 4])]).unwrap();
        assert!(m.same_subgroup(&expected).unwrap());
    }

    #[test]
    fn torsion_presentation() {
        // <(1, 2)> in Z/2 + Z/4 has order 4.
        let g = FgAbelianGroup::from_moduli(ints(&[2, 4])).unwrap();
        let s = SubgroupPresentation::from_generators(&g, vec![ints(&[1, 2]), ints(&[0, 2])]).unwrap();
        assert_eq!(s.presented().order(), Some(Int::from(4)));
        assert!(s.inclusion().is_injective());
    }
}
