//! Subgroup lattices, ideals and the type-2 radical.
//!
//! Everything here starts from the complete list of additive subgroups, so
//! the order is bounded by a cap (default 128) and larger near-rings are
//! refused instead of sampled.

pub mod audit;

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::ring::NearRing;

pub const DEFAULT_STRUCTURE_CAP: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupKind {
    Additive,
    NSubgroup,
    LeftIdeal,
    Ideal,
}

impl std::fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SubgroupKind::Additive => "additive-subgroup",
            SubgroupKind::NSubgroup => "N-subgroup",
            SubgroupKind::LeftIdeal => "left-ideal",
            SubgroupKind::Ideal => "ideal",
        })
    }
}

/// An additive subgroup tagged with the kind it was selected as.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    pub elements: ElementSet,
    pub kind: SubgroupKind,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements.to_vec()
    }
}

/// The type-2 radical with the quotients it was computed from.
#[derive(Debug, Clone)]
pub struct RadicalReport {
    pub j2: SubgroupSet,
    /// Left ideals `L` with `N/L` of type 2, paired with `(0 : N/L)`.
    pub type2_quotients: Vec<(SubgroupSet, ElementSet)>,
}

impl RadicalReport {
    /// No type-2 quotient exists, so the radical defaulted to `N`.
    pub fn is_degenerate(&self) -> bool {
        self.type2_quotients.is_empty()
    }
}

fn check_cap(n: &NearRing, cap: usize) -> Result<()> {
    if n.order() > cap {
        return Err(Error::size("subgroup enumeration", n.order(), cap));
    }
    Ok(())
}

/// A small generating set of a subgroup, chosen greedily in index order.
pub(crate) fn generating_set(g: &FiniteGroup, set: &ElementSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = ElementSet::from_indices(g.order(), [0]);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = g.subgroup_closure(&gens);
        }
    }
    gens
}

/// All additive subgroups, sorted by size and then by element set.
///
/// Each subgroup `H` is extended by one coset representative of every
/// coset `x + H` with `x ∉ H`; every subgroup is reached this way from a
/// maximal proper subgroup chain starting at `{0}`.
pub fn additive_subgroups(n: &NearRing, cap: usize) -> Result<Vec<ElementSet>> {
    check_cap(n, cap)?;
    Ok(subgroup_lattice(n.additive()).into_iter().map(|(s, _)| s).collect())
}

pub(crate) fn subgroup_lattice(g: &FiniteGroup) -> Vec<(ElementSet, Vec<usize>)> {
    let order = g.order();
    let trivial = ElementSet::from_indices(order, [0]);
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial.clone()]);
    let mut out = vec![(trivial, Vec::new())];
    let mut i = 0;
    while i < out.len() {
        let (h, gens) = out[i].clone();
        let mut covered = h.clone();
        for x in 0..order {
            if covered.contains(x) {
                continue;
            }
            for y in h.iter() {
                covered.insert(g.op(y, x));
            }
            let mut elems = h.to_vec();
            let mut set = h.clone();
            let mut new_gens = gens.clone();
            new_gens.push(x);
            if set.insert(x) {
                elems.push(x);
            }
            let mut k = 0;
            while k < elems.len() {
                let e = elems[k];
                for &s in &new_gens {
                    let y = g.op(e, s);
                    if set.insert(y) {
                        elems.push(y);
                    }
                }
                k += 1;
            }
            if seen.insert(set.clone()) {
                out.push((set, new_gens));
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.to_vec().cmp(&b.0.to_vec())));
    out
}

/// `N * M ⊆ M`. Left multiplication is not additive, so every element of
/// `M` is checked.
pub fn is_n_subgroup(n: &NearRing, set: &ElementSet) -> bool {
    set.iter().all(|m| (0..n.order()).all(|a| set.contains(n.mul(a, m))))
}

/// Normal, and `a*(m+i) − a*m ∈ I` for all `a, m`. The set of `i` meeting
/// the second condition is closed under `+`, so generators suffice.
pub fn is_left_ideal(n: &NearRing, set: &ElementSet) -> bool {
    let gens = generating_set(n.additive(), set);
    left_ideal_with(n, set, &gens)
}

fn left_ideal_with(n: &NearRing, set: &ElementSet, gens: &[usize]) -> bool {
    let order = n.order();
    let normal = gens.iter().all(|&i| (0..order).all(|x| set.contains(n.sub(n.add(x, i), x))));
    normal
        && gens.iter().all(|&i| {
            (0..order).all(|m| {
                let mi = n.add(m, i);
                (0..order).all(|a| set.contains(n.sub(n.mul(a, mi), n.mul(a, m))))
            })
        })
}

/// Left ideal with `I * N ⊆ I`; right distributivity reduces the latter to
/// generators of `I`.
pub fn is_ideal(n: &NearRing, set: &ElementSet) -> bool {
    let gens = generating_set(n.additive(), set);
    left_ideal_with(n, set, &gens) && right_invariant(n, set, &gens)
}

fn right_invariant(n: &NearRing, set: &ElementSet, gens: &[usize]) -> bool {
    gens.iter().all(|&i| (0..n.order()).all(|b| set.contains(n.mul(i, b))))
}

fn tagged(sets: impl IntoIterator<Item = ElementSet>, kind: SubgroupKind) -> Vec<SubgroupSet> {
    sets.into_iter().map(|elements| SubgroupSet { elements, kind }).collect()
}

pub fn n_subgroups(n: &NearRing, cap: usize) -> Result<Vec<SubgroupSet>> {
    let subs = additive_subgroups(n, cap)?;
    Ok(tagged(subs.into_iter().filter(|s| is_n_subgroup(n, s)), SubgroupKind::NSubgroup))
}

pub fn left_ideals(n: &NearRing, cap: usize) -> Result<Vec<SubgroupSet>> {
    check_cap(n, cap)?;
    Ok(left_ideals_of(n, &subgroup_lattice(n.additive())))
}

fn left_ideals_of(n: &NearRing, lattice: &[(ElementSet, Vec<usize>)]) -> Vec<SubgroupSet> {
    tagged(
        lattice
            .iter()
            .filter(|(s, gens)| left_ideal_with(n, s, gens))
            .map(|(s, _)| s.clone()),
        SubgroupKind::LeftIdeal,
    )
}

pub fn ideals(n: &NearRing, cap: usize) -> Result<Vec<SubgroupSet>> {
    check_cap(n, cap)?;
    Ok(tagged(
        subgroup_lattice(n.additive())
            .into_iter()
            .filter(|(s, gens)| left_ideal_with(n, s, gens) && right_invariant(n, s, gens))
            .map(|(s, _)| s),
        SubgroupKind::Ideal,
    ))
}

/// `(0 : M) = {a : a*m = 0 for all m ∈ M}`.
pub fn annihilator(n: &NearRing, set: &ElementSet) -> ElementSet {
    let ann = ElementSet::from_indices(n.order(), (0..n.order()).filter(|&a| set.iter().all(|m| n.mul(a, m) == 0)));
    debug_assert!(!is_n_subgroup(n, set) || is_left_ideal(n, &ann));
    ann
}

/// For a left ideal `L`, checks whether `N/L` is of type 2, i.e. the
/// orbit `N*(x+L)` is all of `N/L` for every `x ∉ L`, and returns
/// `(0 : N/L) = {a : a*x ∈ L for all x}` if so.
fn type2_annihilator(n: &NearRing, l: &ElementSet) -> Option<ElementSet> {
    let order = n.order();
    if l.len() == order {
        return None;
    }
    let g = n.additive();
    // coset label = smallest element of x + L
    let mut label = vec![usize::MAX; order];
    let mut cosets = 0;
    for x in 0..order {
        if label[x] == usize::MAX {
            cosets += 1;
            for y in l.iter() {
                label[g.op(x, y)] = x;
            }
        }
    }
    let mut mark = vec![usize::MAX; order];
    for x in 0..order {
        if label[x] != x || l.contains(x) {
            continue;
        }
        let mut hit = 0;
        for a in 0..order {
            let c = label[n.mul(a, x)];
            if mark[c] != x {
                mark[c] = x;
                hit += 1;
            }
        }
        if hit != cosets {
            return None;
        }
    }
    Some(ElementSet::from_indices(
        order,
        (0..order).filter(|&a| (0..order).all(|x| l.contains(n.mul(a, x)))),
    ))
}

/// Intersection of the annihilators of all type-2 quotients `N/L`.
///
/// With an identity every type-2 N-group `Γ` is `N*γ ≅ N/(0:γ)` for any
/// nonzero `γ`, and `(0:γ)` is a left ideal, so the quotients cover all of
/// them up to isomorphism.
pub fn j2(n: &NearRing, cap: usize) -> Result<RadicalReport> {
    check_cap(n, cap)?;
    let lattice = subgroup_lattice(n.additive());
    let mut j = ElementSet::full(n.order());
    let mut type2_quotients = Vec::new();
    for l in left_ideals_of(n, &lattice) {
        if let Some(ann) = type2_annihilator(n, &l.elements) {
            j = j.intersection(&ann);
            type2_quotients.push((l, ann));
        }
    }
    let kind = if is_ideal(n, &j) {
        SubgroupKind::Ideal
    } else {
        SubgroupKind::Additive
    };
    Ok(RadicalReport {
        j2: SubgroupSet { elements: j, kind },
        type2_quotients,
    })
}

/// Only `{0}` and `N` are ideals.
pub fn is_simple(n: &NearRing, cap: usize) -> Result<bool> {
    Ok(n.order() > 1 && ideals(n, cap)?.len() == 2)
}

/// `J, J², J³, …` until the sequence repeats, where `J^(k+1)` is the
/// additive subgroup generated by products `a*b` with `a ∈ J^k`, `b ∈ J`.
pub fn radical_powers(n: &NearRing, j: &ElementSet) -> Vec<ElementSet> {
    let mut out = vec![j.clone()];
    loop {
        let last = out.last().unwrap();
        let products: Vec<usize> = last.iter().flat_map(|a| j.iter().map(move |b| n.mul(a, b))).collect();
        let next = n.additive().subgroup_closure(&products);
        if next == *last {
            return out;
        }
        out.push(next);
    }
}

/// `a + b` for `a ∈ A`, `b ∈ B` hits every element exactly once.
pub fn is_additive_direct_sum(n: &NearRing, a: &ElementSet, b: &ElementSet) -> bool {
    if a.len() * b.len() != n.order() {
        return false;
    }
    let mut hit = ElementSet::new(n.order());
    a.iter().all(|x| b.iter().all(|y| hit.insert(n.add(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{m0, twisted_power, zn_ring};
    use crate::fields::{dickson9, gf, MultAutomorphism};

    fn tim1_3() -> NearRing {
        twisted_power(&gf(3, 1).unwrap(), 2, &[MultAutomorphism::identity(3)]).unwrap()
    }

    fn brute_subgroups(g: &FiniteGroup) -> Vec<ElementSet> {
        // every subset containing 0 closed under the operation
        let n = g.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let s = ElementSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            if s.iter().all(|a| s.iter().all(|b| s.contains(g.op(a, b)))) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
        out
    }

    #[test]
    fn subgroup_counts_match_subset_scan() {
        for n in [zn_ring(12).unwrap(), tim1_3(), crate::construct::boolean_ring(4).unwrap()] {
            let fast = additive_subgroups(&n, 128).unwrap();
            assert_eq!(fast, brute_subgroups(n.additive()));
        }
    }

    #[test]
    fn trivial_sets_appear_everywhere() {
        for n in [tim1_3(), gf(3, 2).unwrap().into_ring()] {
            let zero = ElementSet::from_indices(n.order(), [0]);
            let all = ElementSet::full(n.order());
            for list in [n_subgroups(&n, 128).unwrap(), left_ideals(&n, 128).unwrap(), ideals(&n, 128).unwrap()] {
                assert!(list.iter().any(|s| s.elements == zero));
                assert!(list.iter().any(|s| s.elements == all));
            }
            assert_eq!(annihilator(&n, &zero), all);
            assert_eq!(annihilator(&n, &all), zero);
        }
    }

    #[test]
    fn ideal_chain_containments() {
        let n = tim1_3();
        let subs = additive_subgroups(&n, 128).unwrap();
        let left = left_ideals(&n, 128).unwrap();
        let two = ideals(&n, 128).unwrap();
        for i in &two {
            assert!(left.iter().any(|l| l.elements == i.elements));
        }
        for l in &left {
            assert!(subs.contains(&l.elements));
            assert!(n.additive().is_normal(&l.elements));
        }
    }

    #[test]
    fn twisted_power_radical() {
        let n = tim1_3();
        let two = ideals(&n, 128).unwrap();
        assert!(two.iter().any(|i| i.len() == 3));
        assert!(!is_simple(&n, 128).unwrap());
        let r = j2(&n, 128).unwrap();
        assert_eq!(r.j2.len(), 3);
        assert_eq!(r.j2.kind, SubgroupKind::Ideal);
        assert!(is_additive_direct_sum(&n, &r.j2.elements, &n.units().with_zero()));
        let order3 = two.iter().find(|i| i.len() == 3).unwrap();
        assert_eq!(annihilator(&n, &order3.elements).len(), 3);
        // J is a zero-multiplication ideal here
        let powers = radical_powers(&n, &r.j2.elements);
        assert_eq!(powers.last().unwrap().len(), 1);
    }

    #[test]
    fn semisimple_examples() {
        let f9 = gf(3, 2).unwrap().into_ring();
        assert_eq!(j2(&f9, 128).unwrap().j2.len(), 1);
        assert_eq!(ideals(&f9, 128).unwrap().len(), 2);
        assert_eq!(j2(&dickson9().into_ring(), 128).unwrap().j2.len(), 1);
        let m = m0(&FiniteGroup::cyclic(3).unwrap()).unwrap();
        assert_eq!(m.order(), 9);
        assert_eq!(j2(&m, 128).unwrap().j2.len(), 1);
        assert!(is_simple(&m, 128).unwrap());
        assert!(is_simple(&gf(5, 1).unwrap().into_ring(), 128).unwrap());
    }

    #[test]
    fn annihilator_matches_scan() {
        let n = tim1_3();
        for s in additive_subgroups(&n, 128).unwrap() {
            let ann = annihilator(&n, &s);
            for a in 0..n.order() {
                let kills = (0..n.order()).filter(|&m| s.contains(m)).all(|m| n.mul(a, m) == 0);
                assert_eq!(ann.contains(a), kills);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let n = zn_ring(12).unwrap();
        assert!(matches!(ideals(&n, 10), Err(Error::Size { .. })));
    }
}
