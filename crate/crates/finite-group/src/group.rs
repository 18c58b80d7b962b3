use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

/// Errors raised when a table or a subset fails the group axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    Empty,
    NotSquare,
    OutOfRange,
    NoIdentity,
    NoInverse(usize),
    NotAssociative(usize, usize, usize),
    NotSubgroup,
    NotNormal,
    TooLarge(usize),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::Empty => write!(f, "empty table"),
            GroupError::NotSquare => write!(f, "multiplication table is not square"),
            GroupError::OutOfRange => write!(f, "table entry out of range"),
            GroupError::NoIdentity => write!(f, "no identity element"),
            GroupError::NoInverse(g) => write!(f, "element {g} has no inverse"),
            GroupError::NotAssociative(a, b, c) => write!(f, "associativity fails at ({a}, {b}, {c})"),
            GroupError::NotSubgroup => write!(f, "subset is not a subgroup"),
            GroupError::NotNormal => write!(f, "subgroup is not normal"),
            GroupError::TooLarge(n) => write!(f, "group closure exceeded {n} elements"),
        }
    }
}

impl std::error::Error for GroupError {}

/// A finite group stored as its full multiplication table. Elements are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

/// Upper bound on closures, to keep accidental infinite inputs from running away.
pub const MAX_ORDER: usize = 5000;

impl FiniteGroup {
    /// Builds a group from a table and checks every axiom on the full table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::OutOfRange);
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        let m = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or(GroupError::NoInverse(g))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            n,
            table,
            inverse,
            identity,
        })
    }

    /// Closes a generating set under a multiplication on any hashable type.
    /// Element 0 of the result is the identity; the returned vector lists the
    /// concrete element behind every index.
    pub fn closure<T, F>(identity: T, gens: &[T], mul: F) -> Result<(Self, Vec<T>), GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let x = elems[frontier].clone();
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&mul(&elems[i], &elems[j])];
            }
        }
        Ok((Self::from_flat(n, table)?, elems))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat(n, table).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (a, b) = (g.order(), h.order());
        let n = a * b;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (g1, h1) = (x / b, x % b);
                let (g2, h2) = (y / b, y % b);
                table[x * n + y] = g.mul(g1, g2) * b + h.mul(h1, h2);
            }
        }
        Self::from_flat(n, table).expect("product of groups")
    }

    /// Permutation group generated by the given permutations of `0..degree`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>), GroupError> {
        let degree = gens.first().map(|g| g.len()).unwrap_or(0);
        let id: Vec<usize> = (0..degree).collect();
        // Composition: (p * q)(i) = p(q(i)).
        Self::closure(id, gens, |p: &Vec<usize>, q: &Vec<usize>| q.iter().map(|&i| p[i]).collect())
    }

    pub fn symmetric(degree: usize) -> Self {
        if degree <= 1 {
            return Self::trivial();
        }
        let mut cycle: Vec<usize> = (1..degree).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..degree).collect();
        swap.swap(0, 1);
        Self::from_permutations(&[cycle, swap]).unwrap().0
    }

    /// Dihedral group of order `2n`; `r` is element 1 of the generator list.
    pub fn dihedral(n: usize) -> Self {
        // words r^k s^e encoded as (k, e)
        let mul = |x: &(usize, usize), y: &(usize, usize)| {
            let k = if x.1 == 0 { (x.0 + y.0) % n } else { (x.0 + n - y.0) % n };
            (k, (x.1 + y.1) % 2)
        };
        Self::closure((0, 0), &[(1 % n, 0), (0, 1)], mul).unwrap().0
    }

    /// Quaternion group of order 8.
    pub fn quaternion() -> Self {
        // unit quaternions with integer coordinates (w, x, y, z)
        let mul = |a: &[i8; 4], b: &[i8; 4]| {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        };
        Self::closure([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul).unwrap().0
    }

    /// Group generated by square matrices over `F_p`, optionally modulo scalars.
    pub fn from_matrices_mod_p(gens: &[Vec<Vec<u64>>], p: u64, projective: bool) -> Result<Self, GroupError> {
        let k = gens.first().map(|g| g.len()).unwrap_or(0);
        let canon = |m: Vec<u64>| -> Vec<u64> {
            if !projective {
                return m;
            }
            // smallest among the scalar multiples
            (1..p)
                .map(|c| m.iter().map(|x| x * c % p).collect::<Vec<u64>>())
                .min()
                .unwrap()
        };
        let flat: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| canon(g.iter().flatten().map(|x| x % p).collect()))
            .collect();
        let mut id = vec![0u64; k * k];
        for i in 0..k {
            id[i * k + i] = 1;
        }
        let id = canon(id);
        let mul = |a: &Vec<u64>, b: &Vec<u64>| {
            let mut c = vec![0u64; k * k];
            for i in 0..k {
                for j in 0..k {
                    let mut s = 0;
                    for l in 0..k {
                        s += a[i * k + l] * b[l * k + j];
                    }
                    c[i * k + j] = s % p;
                }
            }
            canon(c)
        };
        Ok(Self::closure(id, &flat, mul)?.0)
    }

    pub fn sl2_3() -> Self {
        Self::from_matrices_mod_p(&[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 2], vec![1, 0]]], 3, false).unwrap()
    }

    /// `PGL(2,3)`, isomorphic to the symmetric group on four letters.
    pub fn pgl2_3() -> Self {
        Self::from_matrices_mod_p(&[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![1, 0]], vec![vec![2, 0], vec![0, 1]]], 3, true)
            .unwrap()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// `g x g^{-1}`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.commutes(a, b)))
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        self.elements().filter(|&g| self.commutes(a, g)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.elements().all(|g| self.commutes(a, g))).collect()
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements().map(|g| self.conjugate(g, a)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Conjugacy classes ordered by smallest element, the identity class first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut order: Vec<usize> = vec![self.identity];
        order.extend(self.elements().filter(|&a| a != self.identity));
        for a in order {
            if seen[a] {
                continue;
            }
            let c = self.conjugacy_class(a);
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn are_conjugate(&self, a: usize, b: usize) -> bool {
        self.elements().any(|g| self.conjugate(g, a) == b)
    }

    /// Some `g` with `g a g^{-1} = b`.
    pub fn conjugator(&self, a: usize, b: usize) -> Option<usize> {
        self.elements().find(|&g| self.conjugate(g, a) == b)
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &x in set {
            inside[x] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| inside[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in set {
            inside[x] = true;
        }
        self.is_subgroup(set) && set.iter().all(|&h| self.elements().all(|g| inside[self.conjugate(g, h)]))
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        for &x in set {
            inside[x] = true;
        }
        self.elements()
            .filter(|&g| set.iter().all(|&h| inside[self.conjugate(g, h)]))
            .collect()
    }

    /// Right cosets `H g`, each as a sorted list; the coset of the identity comes first.
    pub fn right_cosets(&self, sub: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut order = vec![self.identity];
        order.extend(self.elements().filter(|&a| a != self.identity));
        for g in order {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = sub.iter().map(|&h| self.mul(h, g)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// Re-indexes a subgroup as a group in its own right. Returns the group and
    /// the embedding (index in subgroup -> index in `self`).
    pub fn subgroup_as_group(&self, set: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(set) {
            return Err(GroupError::NotSubgroup);
        }
        let mut emb: Vec<usize> = vec![self.identity];
        emb.extend(set.iter().copied().filter(|&x| x != self.identity));
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let k = emb.len();
        let mut table = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = pos[self.mul(emb[i], emb[j])];
            }
        }
        Ok((FiniteGroup::from_flat(k, table)?, emb))
    }

    /// `G / N` with the projection map.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let cosets = self.right_cosets(normal);
        let mut proj = vec![0; self.n];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = i;
            }
        }
        let k = cosets.len();
        let mut table = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = proj[self.mul(cosets[i][0], cosets[j][0])];
            }
        }
        Ok((FiniteGroup::from_flat(k, table)?, proj))
    }

    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.n
            && self
                .elements()
                .all(|a| self.elements().all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Full table, row major. Used for hashing and serialization.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// A small generating set found greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.n {
            let mut inside = vec![false; self.n];
            for &x in &span {
                inside[x] = true;
            }
            // pick the element of largest order outside the span for short lists
            let g = self
                .elements()
                .filter(|&x| !inside[x])
                .max_by_key(|&x| (self.element_order(x), usize::MAX - x))
                .unwrap();
            gens.push(g);
            span = self.subgroup_generated(&gens);
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::sl2_3().order(), 24);
        assert_eq!(FiniteGroup::pgl2_3().order(), 24);
        assert_eq!(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)).order(), 8);
    }

    #[test]
    fn class_counts() {
        assert_eq!(FiniteGroup::dihedral(4).conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::quaternion().conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::symmetric(4).conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::pgl2_3().conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::sl2_3().conjugacy_classes().len(), 7);
        assert_eq!(FiniteGroup::symmetric(3).conjugacy_classes().len(), 3);
    }

    #[test]
    fn quaternion_is_not_dihedral() {
        let q = FiniteGroup::quaternion();
        let d = FiniteGroup::dihedral(4);
        let inv2 = |g: &FiniteGroup| g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(inv2(&q), 1);
        assert_eq!(inv2(&d), 5);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1]]), Err(GroupError::NotSquare));
        // a loop that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn quotient_and_subgroups() {
        let d = FiniteGroup::dihedral(4);
        let z = d.center();
        assert_eq!(z.len(), 2);
        let (q, proj) = d.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert!(d.is_homomorphism(&q, &proj));
        let s = FiniteGroup::symmetric(3);
        let h = s.subgroup_generated(&[s.generators()[0]]);
        assert!(s.is_subgroup(&h));
        assert_eq!(s.right_cosets(&h).len(), s.order() / h.len());
    }
}
