use super::NearRing;

/// Isomorphism-invariant data attached to one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementProfile {
    pub additive_order: usize,
    pub unit: bool,
    /// `|N * b|`, the image size of the right translation.
    pub right_image: usize,
    /// `|b * N|`.
    pub left_image: usize,
    /// `|{a : a*b = a}|`.
    pub right_fixed: usize,
    /// `|{a : a*b = b*a}|`.
    pub commuting: usize,
    /// Number of distinct powers `b, b², b³, …`.
    pub powers: usize,
    pub idempotent: bool,
}

pub fn element_profiles(n: &NearRing) -> Vec<ElementProfile> {
    let order = n.order();
    let units = n.units();
    let mut mark = vec![usize::MAX; order];
    let mut count_distinct = |b: usize, f: &dyn Fn(usize) -> usize| {
        let mut c = 0;
        for a in 0..order {
            let y = f(a);
            if mark[y] != b {
                mark[y] = b;
                c += 1;
            }
        }
        c
    };
    let mut out = Vec::with_capacity(order);
    for b in 0..order {
        let right_image = count_distinct(b, &|a| n.mul(a, b));
        let left_image = {
            let mut seen = vec![false; order];
            (0..order).filter(|&a| !std::mem::replace(&mut seen[n.mul(b, a)], true)).count()
        };
        let mut seen = vec![false; order];
        let mut x = b;
        let mut powers = 0;
        while !seen[x] {
            seen[x] = true;
            powers += 1;
            x = n.mul(x, b);
        }
        out.push(ElementProfile {
            additive_order: n.additive().element_order(b),
            unit: units.contains(b),
            right_image,
            left_image,
            right_fixed: (0..order).filter(|&a| n.mul(a, b) == a).count(),
            commuting: (0..order).filter(|&a| n.mul(a, b) == n.mul(b, a)).count(),
            powers,
            idempotent: n.mul(b, b) == b,
        });
    }
    out
}

const UNSET: usize = usize::MAX;

struct Matcher<'a> {
    a: &'a NearRing,
    b: &'a NearRing,
    pa: Vec<ElementProfile>,
    pb: Vec<ElementProfile>,
    map: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
    head: usize,
}

impl<'a> Matcher<'a> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != UNSET {
            return self.map[x] == y;
        }
        if self.used[y] || self.pa[x] != self.pb[y] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.domain.push(x);
        true
    }

    /// Closes the domain under `+` and `*`, checking consistency.
    fn close(&mut self) -> bool {
        while self.head < self.domain.len() {
            let x = self.domain[self.head];
            let fx = self.map[x];
            for j in 0..=self.head {
                let y = self.domain[j];
                let fy = self.map[y];
                let (a, b) = (self.a, self.b);
                if !(self.set(a.add(x, y), b.add(fx, fy))
                    && self.set(a.add(y, x), b.add(fy, fx))
                    && self.set(a.mul(x, y), b.mul(fx, fy))
                    && self.set(a.mul(y, x), b.mul(fy, fx)))
                {
                    return false;
                }
            }
            self.head += 1;
        }
        true
    }

    fn undo(&mut self, keep: usize, head: usize) {
        for x in self.domain.drain(keep..) {
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
        self.head = head;
    }

    fn search(&mut self) -> bool {
        let Some(x) = (0..self.a.order()).find(|&x| self.map[x] == UNSET) else {
            return true;
        };
        let (keep, head) = (self.domain.len(), self.head);
        for y in 0..self.b.order() {
            if self.used[y] || self.pa[x] != self.pb[y] {
                continue;
            }
            if self.set(x, y) && self.close() && self.search() {
                return true;
            }
            self.undo(keep, head);
        }
        false
    }
}

/// A bijection preserving `+`, `*` and the identity, if one exists.
///
/// Element profiles must agree as multisets before any search; the
/// backtracking assigns the smallest unmapped element and closes the mapped
/// set under both operations after every choice.
pub fn isomorphic(a: &NearRing, b: &NearRing) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.units().len() != b.units().len() {
        return None;
    }
    let pa = element_profiles(a);
    let pb = element_profiles(b);
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let n = a.order();
    let mut m = Matcher {
        a,
        b,
        pa,
        pb,
        map: vec![UNSET; n],
        used: vec![false; n],
        domain: Vec::new(),
        head: 0,
    };
    if !(m.set(0, 0) && m.set(a.one(), b.one()) && m.close()) {
        return None;
    }
    if !m.search() {
        return None;
    }
    let map = m.map;
    debug_assert!(preserves(a, b, &map));
    Some(map)
}

/// Checks a candidate map against both tables and the identity.
pub(crate) fn preserves(a: &NearRing, b: &NearRing, map: &[usize]) -> bool {
    let n = a.order();
    map.len() == n
        && map[a.one()] == b.one()
        && (0..n).all(|x| (0..n).all(|y| map[a.add(x, y)] == b.add(map[x], map[y]) && map[a.mul(x, y)] == b.mul(map[x], map[y])))
}
