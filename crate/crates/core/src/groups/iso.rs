use super::FiniteGroup;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

const UNSET: usize = usize::MAX;

/// Backtracking over images of the source generators. Each assignment is
/// propagated through the subgroup generated so far; conflicts and
/// non-injective extensions prune the branch.
struct Injections<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    map: Vec<usize>,
    used: ElementSet,
    domain: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Injections<'a> {
    fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup) -> Self {
        let so = src.element_orders();
        let dorders = dst.element_orders();
        let candidates = src
            .generators()
            .iter()
            .map(|&g| (0..dst.order()).filter(|&h| dorders[h] == so[g]).collect())
            .collect();
        let mut map = vec![UNSET; src.order()];
        map[0] = 0;
        Injections {
            src,
            dst,
            map,
            used: ElementSet::from_indices(dst.order(), [0]),
            domain: vec![0],
            candidates,
        }
    }

    /// Assigns generator `slot` to `image` and closes the domain under the
    /// generators `0..=slot`. Returns the number of domain elements added, or
    /// `None` after undoing a conflicting extension.
    fn assign(&mut self, slot: usize, image: usize) -> Option<usize> {
        let gens = &self.src.generators()[..=slot];
        let start = self.domain.len();
        let g = gens[slot];
        if self.map[g] != UNSET || self.used.contains(image) {
            return None;
        }
        self.map[g] = image;
        self.used.insert(image);
        self.domain.push(g);
        let mut head = 0;
        let mut ok = true;
        'scan: while head < self.domain.len() {
            let x = self.domain[head];
            head += 1;
            for &s in gens {
                let y = self.src.op(x, s);
                let fy = self.dst.op(self.map[x], self.map[s]);
                if self.map[y] == UNSET {
                    if !self.used.insert(fy) {
                        ok = false;
                        break 'scan;
                    }
                    self.map[y] = fy;
                    self.domain.push(y);
                } else if self.map[y] != fy {
                    ok = false;
                    break 'scan;
                }
            }
        }
        if ok {
            Some(self.domain.len() - start)
        } else {
            self.undo(start);
            None
        }
    }

    fn undo(&mut self, keep: usize) {
        for x in self.domain.drain(keep..) {
            self.used.remove(self.map[x]);
            self.map[x] = UNSET;
        }
    }

    fn run(&mut self, slot: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if slot == self.candidates.len() {
            return visit(&self.map);
        }
        let keep = self.domain.len();
        for i in 0..self.candidates[slot].len() {
            let h = self.candidates[slot][i];
            if self.assign(slot, h).is_some() {
                if self.run(slot + 1, visit) {
                    return true;
                }
                self.undo(keep);
            }
        }
        false
    }
}

/// Some isomorphism `g -> h` as an index bijection, if one exists.
pub fn group_isomorphism_exists(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut go = g.element_orders();
    let mut ho = h.element_orders();
    go.sort_unstable();
    ho.sort_unstable();
    if go != ho {
        return None;
    }
    let mut search = Injections::new(g, h);
    let mut found = None;
    search.run(0, &mut |map| {
        found = Some(map.to_vec());
        true
    });
    found
}

/// All automorphisms as image vectors, found by generator-image
/// backtracking. Errors once more than `cap` have been found.
pub fn group_automorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut search = Injections::new(g, g);
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(0, &mut |map| {
        out.push(map.to_vec());
        overflow = out.len() > cap;
        overflow
    });
    if overflow {
        return Err(Error::size("|Aut(G)|", format!("more than {cap}"), cap));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphisms, is_hom, DEFAULT_ENDO_CAP};

    #[test]
    fn self_isomorphism() {
        let h = FiniteGroup::heisenberg3();
        let m = group_isomorphism_exists(&h, &h).unwrap();
        assert!(is_hom(&h, &h, &m));
    }

    #[test]
    fn z4_not_klein() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_power(&z2, 2).unwrap();
        assert!(group_isomorphism_exists(&z4, &v4).is_none());
    }

    #[test]
    fn z3_4_twice() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let a = FiniteGroup::direct_power(&z3, 4).unwrap();
        // relabel through a permutation fixing 0 to get a different table
        let n = a.order();
        let perm: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { (x * 7) % (n - 1) + 1 }).collect();
        let mut inv = vec![0; n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let table = (0..n * n)
            .map(|i| perm[a.op(inv[i / n], inv[i % n])])
            .collect();
        let b = FiniteGroup::from_flat("relabelled", n, table).unwrap();
        assert_ne!(a.table(), b.table());
        let m = group_isomorphism_exists(&a, &b).unwrap();
        assert!(is_hom(&a, &b, &m));
        let c = FiniteGroup::direct_power(&z3, 4).unwrap();
        assert!(group_isomorphism_exists(&a, &c).is_some());
    }

    #[test]
    fn automorphism_counts_agree() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v8 = FiniteGroup::direct_power(&z2, 3).unwrap();
        let by_gens = group_automorphisms(&v8, 1000).unwrap();
        assert_eq!(by_gens.len(), 168);
        assert_eq!(automorphisms(&v8, DEFAULT_ENDO_CAP).unwrap().len(), 168);
        let h = FiniteGroup::heisenberg3();
        // |Aut(Heis(3))| = 432
        assert_eq!(group_automorphisms(&h, 1000).unwrap().len(), 432);
    }
}
