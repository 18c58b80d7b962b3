use exact_lattice::{BigInt, BigRational, Cyclotomic};
use finite_group::FiniteGroup;

/// `|H|^{-1} sum_{x in G, x^{-1} g x in H} f(x^{-1} g x)`.
///
/// `sub` lists the elements of `H` inside `G`; `f[i]` is the value at `sub[i]`.
pub fn frobenius_induced_value(g: &FiniteGroup, sub: &[usize], f: &[Cyclotomic], x: usize) -> Cyclotomic {
    assert_eq!(sub.len(), f.len(), "one value per subgroup element");
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &h) in sub.iter().enumerate() {
        pos[h] = i;
    }
    let s: Cyclotomic = g
        .elements()
        .filter_map(|y| {
            let c = g.mul(g.mul(g.inv(y), x), y);
            (pos[c] != usize::MAX).then(|| f[pos[c]].clone())
        })
        .sum();
    s.scale(&BigRational::new(BigInt::from(1), BigInt::from(sub.len())))
}

/// The induced class function at every element of `G`.
pub fn induce(g: &FiniteGroup, sub: &[usize], f: &[Cyclotomic]) -> Vec<Cyclotomic> {
    // constant on classes, so evaluate once per class
    let mut out = vec![Cyclotomic::zero(); g.order()];
    for c in g.conjugacy_classes() {
        let v = frobenius_induced_value(g, sub, f, c[0]);
        for &x in &c {
            out[x] = v.clone();
        }
    }
    out
}

/// `|G|^{-1} sum_g f1(g) conj(f2(g))` for functions given on all elements.
pub fn element_inner_product(f1: &[Cyclotomic], f2: &[Cyclotomic]) -> Cyclotomic {
    let s: Cyclotomic = f1.iter().zip(f2).map(|(a, b)| a * &b.conj()).sum();
    s.scale(&BigRational::new(BigInt::from(1), BigInt::from(f1.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induction_from_whole_group() {
        let g = FiniteGroup::symmetric(3);
        let sub: Vec<usize> = g.elements().collect();
        let f: Vec<Cyclotomic> = g.elements().map(|x| Cyclotomic::from_i64(if x == g.identity() { 2 } else { 7 })).collect();
        // not a class function in general, but on the identity the value is f(1)
        assert_eq!(frobenius_induced_value(&g, &sub, &f, g.identity()), Cyclotomic::from_i64(2));
    }

    #[test]
    fn no_conjugate_in_subgroup() {
        let g = FiniteGroup::symmetric(3);
        let sub = vec![g.identity()];
        let f = vec![Cyclotomic::one()];
        let x = (0..6).find(|&x| x != g.identity()).unwrap();
        assert!(frobenius_induced_value(&g, &sub, &f, x).is_zero());
        assert_eq!(frobenius_induced_value(&g, &sub, &f, g.identity()), Cyclotomic::from_i64(6));
    }
}
