//! Candidate unit groups: subgroups of `Aut(G)` whose non-identity members
//! move the base point (the unit maps of any near-ring), or are
//! fixed-point-free (the unit maps of an f-near-ring).

use std::collections::{HashMap, HashSet};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::groups::{group_automorphisms, Endo, FiniteGroup};

/// Default bound on `|Aut(G)|` for [`fpf_subgroups`] and the search.
pub const DEFAULT_AUT_CAP: usize = 100_000;

/// A group of automorphisms, identity first and the rest in lexicographic
/// order of their images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    members: Vec<Endo>,
}

impl AutomorphismGroup {
    /// Closes `generators` under composition. Errors if a generator is not
    /// bijective or the closure exceeds `cap` elements.
    pub fn generated_by(group: &FiniteGroup, generators: &[Endo], cap: usize) -> Result<Self> {
        let n = group.order();
        for g in generators {
            if g.group_order() != n || !g.is_injective() {
                return Err(Error::Precondition("unit generators must be automorphisms of the group".into()));
            }
        }
        let id = Endo::identity(n);
        let mut members = vec![id.clone()];
        let mut seen: HashSet<Endo> = HashSet::from([id]);
        let mut head = 0;
        while head < members.len() {
            let x = members[head].clone();
            head += 1;
            for g in generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    members.push(y);
                    if members.len() > cap {
                        return Err(Error::size("generated automorphism group", format!("more than {cap}"), cap));
                    }
                }
            }
        }
        Ok(Self::from_members(members))
    }

    fn from_members(mut members: Vec<Endo>) -> Self {
        members.sort_by(|a, b| (!a.is_identity()).cmp(&!b.is_identity()).then_with(|| a.image().cmp(b.image())));
        AutomorphismGroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Endo] {
        &self.members
    }

    pub fn contains(&self, e: &Endo) -> bool {
        self.members.iter().any(|m| m == e)
    }

    /// Every non-identity member fixes only 0.
    pub fn is_fpf(&self) -> bool {
        self.members[1..].iter().all(|e| (1..e.group_order()).all(|x| e.apply(x) != x))
    }

    /// No non-identity member fixes `x`.
    pub fn moves(&self, x: usize) -> bool {
        self.members[1..].iter().all(|e| e.apply(x) != x)
    }

    pub fn orbit(&self, x: usize) -> ElementSet {
        let n = self.members[0].group_order();
        ElementSet::from_indices(n, self.members.iter().map(|e| e.apply(x)))
    }

    /// Sorted orders of the members.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.members.iter().map(|e| e.order().expect("bijective")).collect();
        v.sort_unstable();
        v
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders().last() == Some(&self.order())
    }

    /// `orbit(x) ∪ {0}` is closed under addition.
    pub fn orbit_closed(&self, group: &FiniteGroup, x: usize) -> bool {
        let mut orbit = self.orbit(x);
        orbit.insert(0);
        let pts = orbit.to_vec();
        pts.iter().all(|&a| pts.iter().all(|&b| orbit.contains(group.op(a, b))))
    }
}

/// `Aut(G)` as indexed permutations with composition by generator images.
pub(crate) struct AutTable {
    maps: Vec<Vec<u16>>,
    gens: Vec<usize>,
    index: HashMap<Vec<u16>, usize>,
}

impl AutTable {
    pub fn new(group: &FiniteGroup, cap: usize) -> Result<Self> {
        let maps: Vec<Vec<u16>> = group_automorphisms(group, cap)?
            .into_iter()
            .map(|m| m.into_iter().map(|x| x as u16).collect())
            .collect();
        let gens = group.generators().to_vec();
        let index = maps
            .iter()
            .enumerate()
            .map(|(i, m)| (gens.iter().map(|&g| m[g]).collect(), i))
            .collect();
        Ok(AutTable { maps, gens, index })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, i: usize) -> &[u16] {
        &self.maps[i]
    }

    fn lookup(&self, key: Vec<u16>) -> usize {
        *self.index.get(&key).expect("automorphisms are closed under composition")
    }

    /// Index of `maps[i] ∘ maps[j]`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.maps[i], &self.maps[j]);
        self.lookup(self.gens.iter().map(|&g| a[b[g] as usize]).collect())
    }

    pub fn inverse(&self, i: usize) -> usize {
        let m = &self.maps[i];
        let mut inv = vec![0u16; m.len()];
        for (x, &y) in m.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        self.lookup(self.gens.iter().map(|&g| inv[g]).collect())
    }

    pub fn identity(&self) -> usize {
        self.lookup(self.gens.iter().map(|&g| g as u16).collect())
    }

    pub fn to_group(&self, members: &[usize]) -> AutomorphismGroup {
        AutomorphismGroup::from_members(
            members
                .iter()
                .map(|&i| Endo::from_vec(self.maps[i].iter().map(|&x| x as usize).collect()))
                .collect(),
        )
    }
}

/// A subgroup as sorted member indices plus a generating set.
#[derive(Clone, Debug)]
pub(crate) struct Sub {
    pub members: Vec<usize>,
    gens: Vec<usize>,
}

/// Every subgroup of `Aut(G)` of order at most `max_order` all of whose
/// non-identity members satisfy `admissible`. Built by joining cyclic
/// subgroups breadth-first, so the list is ordered by number of cyclic
/// generators and then discovery.
pub(crate) fn admissible_subgroups(table: &AutTable, admissible: &dyn Fn(usize) -> bool, max_order: usize) -> Vec<Sub> {
    let id = table.identity();
    let mut cyclic: Vec<Sub> = Vec::new();
    let mut covered = vec![false; table.len()];
    for x in 0..table.len() {
        if x == id || covered[x] || !admissible(x) {
            continue;
        }
        let mut members = vec![id];
        let mut p = x;
        let mut ok = true;
        while p != id {
            if !admissible(p) {
                ok = false;
            }
            members.push(p);
            p = table.compose(x, p);
        }
        if !ok || members.len() > max_order {
            continue;
        }
        members.sort_unstable();
        for &m in &members {
            let k = members.len();
            // generators of the same cyclic group share its member set
            if m != id && element_order(table, m, id) == k {
                covered[m] = true;
            }
        }
        cyclic.push(Sub { members, gens: vec![x] });
    }

    let trivial = Sub {
        members: vec![id],
        gens: Vec::new(),
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.members.clone()]);
    let mut out = vec![trivial];
    let mut head = 0;
    while head < out.len() {
        let h = out[head].clone();
        head += 1;
        for c in &cyclic {
            let g = c.gens[0];
            if h.members.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = h.gens.clone();
            gens.push(g);
            if let Some(members) = close(table, &h.members, &gens, admissible, max_order) {
                if seen.insert(members.clone()) {
                    out.push(Sub { members, gens });
                }
            }
        }
    }
    out
}

fn element_order(table: &AutTable, x: usize, id: usize) -> usize {
    let mut k = 1;
    let mut p = x;
    while p != id {
        p = table.compose(x, p);
        k += 1;
    }
    k
}

/// Closure of `start` under right multiplication by `gens`, or `None` once
/// an inadmissible element appears or the order exceeds `max_order`.
fn close(
    table: &AutTable,
    start: &[usize],
    gens: &[usize],
    admissible: &dyn Fn(usize) -> bool,
    max_order: usize,
) -> Option<Vec<usize>> {
    let id = table.identity();
    let mut members = start.to_vec();
    let mut seen: HashSet<usize> = members.iter().copied().collect();
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &g in gens {
            let y = table.compose(x, g);
            if seen.insert(y) {
                if y != id && !admissible(y) {
                    return None;
                }
                members.push(y);
                if members.len() > max_order {
                    return None;
                }
            }
        }
    }
    members.sort_unstable();
    Some(members)
}

/// One subgroup from each conjugacy class under `conjugators`.
pub(crate) fn conjugacy_representatives(table: &AutTable, subs: Vec<Sub>, conjugators: &[usize]) -> Vec<Sub> {
    let inverses: Vec<usize> = conjugators.iter().map(|&s| table.inverse(s)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    for h in subs {
        if seen.contains(&h.members) {
            continue;
        }
        for (&s, &si) in conjugators.iter().zip(&inverses) {
            let mut k: Vec<usize> = h.members.iter().map(|&x| table.compose(table.compose(s, x), si)).collect();
            k.sort_unstable();
            seen.insert(k);
        }
        seen.insert(h.members.clone());
        reps.push(h);
    }
    reps
}

/// All subgroups of `Aut(G)` in which every non-identity member is
/// fixed-point-free, ordered by group order and then by member images.
/// Needs `G` elementary abelian and `|Aut(G)| ≤ aut_cap`.
pub fn fpf_subgroups(group: &FiniteGroup, aut_cap: usize) -> Result<Vec<AutomorphismGroup>> {
    if !group.is_elementary_abelian() {
        return Err(Error::Precondition(format!("{} is not elementary abelian", group.name())));
    }
    let table = AutTable::new(group, aut_cap)?;
    let n = group.order();
    let fpf: Vec<bool> = (0..table.len()).map(|i| (1..n).all(|x| table.map(i)[x] as usize != x)).collect();
    let subs = admissible_subgroups(&table, &|i| fpf[i], n - 1);
    let mut groups: Vec<AutomorphismGroup> = subs.iter().map(|s| table.to_group(&s.members)).collect();
    groups.sort_by(|a, b| {
        a.order().cmp(&b.order()).then_with(|| {
            let ka: Vec<&[usize]> = a.members().iter().map(|e| e.image()).collect();
            let kb: Vec<&[usize]> = b.members().iter().map(|e| e.image()).collect();
            ka.cmp(&kb)
        })
    });
    Ok(groups)
}
