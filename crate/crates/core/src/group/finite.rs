use std::collections::{BTreeSet, VecDeque};

use crate::error::{Axiom, Error, Result};

use super::GroupHom;

/// A finite group given by its multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// A direct product with its structure maps.
#[derive(Clone, Debug)]
pub struct Product {
    pub group: FiniteGroup,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
}

impl FiniteGroup {
    /// Validate a multiplication table, relabelling so the identity is index 0.
    ///
    /// Axioms are checked in the order shape, Latin square, identity,
    /// inverses, associativity; the first failure is reported.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with_labels(table, None)
    }

    pub fn from_table_with_labels(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup(Axiom::Shape));
        }
        if labels.as_ref().is_some_and(|l| l.len() != n) {
            return Err(Error::NotAGroup(Axiom::Shape));
        }
        let mut seen = vec![false; n];
        for (r, row) in table.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAGroup(Axiom::Latin { row: Some(r), column: None }));
                }
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for row in &table {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(Error::NotAGroup(Axiom::Latin { row: None, column: Some(c) }));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NotAGroup(Axiom::Identity))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == e && table[h][g] == e)
                .ok_or(Error::NotAGroup(Axiom::Inverse { element: g }))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(Axiom::Associativity { a, b, c }));
                    }
                }
            }
        }
        let group = FiniteGroup { table, inverse, labels };
        Ok(if e == 0 { group } else { group.relabel_swap(0, e) })
    }

    fn relabel_swap(self, a: usize, b: usize) -> Self {
        let n = self.order();
        let sw = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        let mut table = vec![vec![0; n]; n];
        let mut inverse = vec![0; n];
        for g in 0..n {
            for h in 0..n {
                table[sw(g)][sw(h)] = sw(self.table[g][h]);
            }
            inverse[sw(g)] = sw(self.inverse[g]);
        }
        let labels = self.labels.map(|mut l| {
            l.swap(a, b);
            l
        });
        FiniteGroup { table, inverse, labels }
    }

    /// Trusted constructor for tables that are groups by construction.
    pub(crate) fn from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| mul(g, h)).collect()).collect();
        let inverse = (0..n).map(|g| (0..n).find(|&h| table[g][h] == 0).expect("group table")).collect();
        debug_assert!((0..n).all(|g| table[0][g] == g && table[g][0] == g));
        FiniteGroup { table, inverse, labels: None }
    }

    pub fn trivial() -> Self {
        Self::from_mul(1, |_, _| 0)
    }

    /// `Z/n` with `g * h = (g + h) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group order must be at least 1".into()));
        }
        Ok(Self::from_mul(n, |g, h| (g + h) % n))
    }

    /// Symmetries of a regular `n`-gon (order `2n`); index `k + n*e` is `r^k s^e`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral group needs at least one side".into()));
        }
        Ok(Self::from_mul(2 * n, |g, h| {
            let (a, e) = (g % n, g / n);
            let (b, f) = (h % n, h / n);
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            k + n * ((e + f) % 2)
        }))
    }

    /// `S_n` for `n <= 5`: permutations of `0..n` in lexicographic order,
    /// multiplied as functions (`(p q)(x) = p(q(x))`).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidArgument(format!("symmetric group S_{n} outside 1..=5")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
        let mut g = Self::from_mul(perms.len(), |a, b| {
            let c: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        });
        g.labels = Some(perms.iter().map(|p| format!("{p:?}")).collect());
        Ok(g)
    }

    pub fn klein4() -> Self {
        let z2 = Self::cyclic(2).expect("order 2");
        direct_product(&z2, &z2).group
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, g: usize) -> bool {
        g != 0 && self.inv(g) == g
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Validate that `set` is a subgroup; returns it sorted.
    pub fn check_subgroup(&self, set: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        if let Some(x) = set.iter().find(|&&x| x >= n) {
            return Err(Error::NotSubgroup(format!("element {x} is not in a group of order {n}")));
        }
        let s: BTreeSet<usize> = set.iter().copied().collect();
        if !s.contains(&0) {
            return Err(Error::NotSubgroup("does not contain the identity".into()));
        }
        for &a in &s {
            if !s.contains(&self.inv(a)) {
                return Err(Error::NotSubgroup(format!("missing the inverse of {a}")));
            }
            for &b in &s {
                if !s.contains(&self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed: {a} * {b} = {}", self.mul(a, b))));
                }
            }
        }
        Ok(s.into_iter().collect())
    }

    /// Validate that `set` is a normal subgroup; returns it sorted.
    pub fn check_normal(&self, set: &[usize]) -> Result<Vec<usize>> {
        let s = self.check_subgroup(set)?;
        for g in self.elements() {
            for &x in &s {
                let c = self.mul(self.mul(g, x), self.inv(g));
                if s.binary_search(&c).is_err() {
                    return Err(Error::NotNormal(format!("{g} * {x} * {g}^-1 = {c} leaves the subgroup")));
                }
            }
        }
        Ok(s)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }

    /// The subgroup on `set` (sorted, identity first) with its inclusion.
    pub fn subgroup(&self, set: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let s = self.check_subgroup(set)?;
        let pos = |x: usize| s.binary_search(&x).expect("closed subset");
        let mut h = Self::from_mul(s.len(), |a, b| pos(self.mul(s[a], s[b])));
        h.labels = self.labels.as_ref().map(|l| s.iter().map(|&x| l[x].clone()).collect());
        let inc = GroupHom::new(h.clone(), self.clone(), s.clone())?;
        Ok((h, inc))
    }

    /// `G / N` with cosets ordered by their smallest element.
    pub fn quotient_group(&self, normal: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let s = self.check_normal(normal)?;
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            for &x in &s {
                coset[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let q = Self::from_mul(reps.len(), |a, b| coset[self.mul(reps[a], reps[b])]);
        let proj = GroupHom::new(self.clone(), q.clone(), coset)?;
        Ok((q, proj))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `G × H` with index `(g, h) -> g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Product {
    let m = h.order();
    let mut group = FiniteGroup::from_mul(g.order() * m, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m));
    if g.labels.is_some() || h.labels.is_some() {
        group.labels = Some((0..group.order()).map(|x| format!("({},{})", g.label(x / m), h.label(x % m))).collect());
    }
    let n = group.order();
    let proj_left = GroupHom::new(group.clone(), g.clone(), (0..n).map(|x| x / m).collect()).expect("projection");
    let proj_right = GroupHom::new(group.clone(), h.clone(), (0..n).map(|x| x % m).collect()).expect("projection");
    let inj_left = GroupHom::new(g.clone(), group.clone(), (0..g.order()).map(|x| x * m).collect()).expect("injection");
    let inj_right = GroupHom::new(h.clone(), group.clone(), (0..m).collect()).expect("injection");
    Product { group, proj_left, proj_right, inj_left, inj_right }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(z2.table(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(FiniteGroup::cyclic(4).unwrap().inv(1), 3);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn klein_table_accepted() {
        let t = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let g = FiniteGroup::from_table(t).unwrap();
        assert!(g.elements().all(|x| g.mul(x, x) == 0));
        assert_eq!(g, FiniteGroup::klein4());
    }

    #[test]
    fn non_associative_loop_rejected() {
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(t.clone()) {
            Err(Error::NotAGroup(Axiom::Associativity { a, b, c })) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn identity_is_relabelled() {
        // Z/3 with identity stored at index 2.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(t).unwrap();
        assert!(g.elements().all(|x| g.mul(0, x) == x));
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn rejections() {
        assert!(matches!(FiniteGroup::from_table(vec![]), Err(Error::NotAGroup(Axiom::Shape))));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 0], vec![1, 1]]),
            Err(Error::NotAGroup(Axiom::Latin { .. }))
        ));
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_ok());
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 2, 1]]),
            Err(Error::NotAGroup(Axiom::Latin { .. }))
        ));
        assert_eq!(FiniteGroup::from_table(vec![vec![0]]).unwrap(), FiniteGroup::trivial());
    }

    #[test]
    fn families() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(d4.element_order(1), 4);
        assert!(d4.is_involution(4));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::symmetric(5).unwrap().order(), 120);
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn products() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let p = direct_product(&z2, &FiniteGroup::trivial());
        assert_eq!(p.group, z2);
        let p = direct_product(&z2, &z3);
        assert_eq!(p.group.element_order(4), 6);
        assert_eq!(p.proj_left.apply(5), 1);
    }

    #[test]
    fn quotients() {
        let z8 = FiniteGroup::cyclic(8).unwrap();
        let (q, proj) = z8.quotient_group(&[0, 4]).unwrap();
        assert_eq!(q, FiniteGroup::cyclic(4).unwrap());
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), vec![0, 4]);
        let (q, _) = z8.quotient_group(&[0]).unwrap();
        assert_eq!(q, z8);
        let (q, _) = z8.quotient_group(&(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(q.order(), 1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = (1..6).find(|&g| s3.is_involution(g)).unwrap();
        assert!(matches!(s3.quotient_group(&[0, transposition]), Err(Error::NotNormal(_))));
        assert!(matches!(z8.quotient_group(&[0, 3]), Err(Error::NotSubgroup(_))));
    }
}
