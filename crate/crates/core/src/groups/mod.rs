//! Finite groups as Cayley tables.
//!
//! Every group keeps its identity at index 0. A greedy generating set and a
//! breadth-first spanning tree over it are computed once at construction;
//! homomorphism checks and extensions run over generators instead of all
//! pairs of elements.

mod endo;
mod iso;

pub use endo::{automorphisms, compose, endo_monoid, is_endo, is_fpf, Endo, DEFAULT_ENDO_CAP};
pub use iso::{group_automorphisms, group_isomorphism_exists};

use std::collections::VecDeque;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Largest group order accepted by the validators.
pub const MAX_GROUP_ORDER: usize = 729;

/// A finite group given by its Cayley table. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// `tree[x] = (parent, generator slot)` with `x = parent + generators[slot]`.
    tree: Vec<(usize, usize)>,
    /// Elements in breadth-first order from 0 along `tree`.
    bfs: Vec<usize>,
    name: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from table rows, validating every group axiom.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        let flat: Vec<usize> = rows.iter().flatten().copied().collect();
        Self::from_flat(name, n, flat)
    }

    /// Builds a group from a row-major `n*n` table, validating every group axiom.
    pub fn from_flat(name: impl Into<String>, n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::size("group order", n, MAX_GROUP_ORDER));
        }
        if table.len() != n * n {
            return Err(Error::InvalidGroup(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(d) = table_defect(n, &table) {
            return Err(Error::InvalidGroup(d.message));
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("checked above");
        }
        Ok(Self::assemble(name.into(), n, table, inverse))
    }

    fn assemble(name: String, n: usize, table: Vec<usize>, inverse: Vec<usize>) -> Self {
        let mut g = FiniteGroup {
            order: n,
            table,
            inverse,
            generators: Vec::new(),
            tree: Vec::new(),
            bfs: Vec::new(),
            name,
        };
        let mut gens = Vec::new();
        let mut span = ElementSet::from_indices(n, [0]);
        for x in 0..n {
            if !span.contains(x) {
                gens.push(x);
                span = g.subgroup_closure(&gens);
            }
        }
        g.generators = gens;
        let mut tree = vec![(0, 0); n];
        let mut seen = ElementSet::from_indices(n, [0]);
        let mut bfs = vec![0];
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (slot, &s) in g.generators.iter().enumerate() {
                let y = g.op(x, s);
                if seen.insert(y) {
                    tree[y] = (x, slot);
                    bfs.push(y);
                }
            }
        }
        g.tree = tree;
        g.bfs = bfs;
        g
    }

    /// Cyclic group of order `p`; index `i` is the residue `i`.
    pub fn cyclic(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Precondition("cyclic group order must be positive".into()));
        }
        if p > MAX_GROUP_ORDER {
            return Err(Error::size("group order", p, MAX_GROUP_ORDER));
        }
        let table = (0..p * p).map(|i| (i / p + i % p) % p).collect();
        let inverse = (0..p).map(|a| (p - a) % p).collect();
        Ok(Self::assemble(format!("Z{p}"), p, table, inverse))
    }

    /// `k`-fold direct power. Index encodes a tuple in mixed radix `|G|`,
    /// coordinate 0 least significant.
    pub fn direct_power(base: &FiniteGroup, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("direct power exponent must be positive".into()));
        }
        let q = base.order;
        let n = q
            .checked_pow(k as u32)
            .filter(|&n| n <= MAX_GROUP_ORDER)
            .ok_or_else(|| Error::size("direct power order", format!("{q}^{k}"), MAX_GROUP_ORDER))?;
        let mut table = vec![0; n * n];
        let mut inverse = vec![0; n];
        for a in 0..n {
            let ca = decode(a, q, k);
            inverse[a] = encode_with(&ca, q, |i| base.inv(ca[i]));
            for b in 0..n {
                let cb = decode(b, q, k);
                table[a * n + b] = encode_with(&ca, q, |i| base.op(ca[i], cb[i]));
            }
        }
        let name = if k == 1 {
            base.name.clone()
        } else {
            format!("{}^{k}", base.name)
        };
        Ok(Self::assemble(name, n, table, inverse))
    }

    /// Heisenberg group of order 27: triples `(a, b, c)` over Z3 with
    /// `(a,b,c)(a',b',c') = (a + a' + b c', b + b', c + c')`, indexed
    /// `a + 3b + 9c`. `x = 1`, `y = 3`, `z = 9`.
    pub fn heisenberg3() -> Self {
        let n = 27;
        let dec = |i: usize| (i % 3, (i / 3) % 3, i / 9);
        let enc = |a: usize, b: usize, c: usize| a % 3 + 3 * (b % 3) + 9 * (c % 3);
        let mut table = vec![0; n * n];
        let mut inverse = vec![0; n];
        for i in 0..n {
            let (a, b, c) = dec(i);
            for j in 0..n {
                let (a2, b2, c2) = dec(j);
                table[i * n + j] = enc(a + a2 + b * c2, b + b2, c + c2);
            }
            inverse[i] = (0..n).find(|&j| table[i * n + j] == 0).unwrap();
        }
        Self::assemble("H27".into(), n, table, inverse)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.op(a, self.inverse[b])
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Greedy generating set: each generator is the smallest index outside the
    /// span of the previous ones.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `k * a` (k-fold sum).
    pub fn multiple(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.op(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&g| self.generators.iter().all(|&h| self.op(g, h) == self.op(h, g)))
    }

    /// Abelian of prime exponent. The trivial group is not elementary abelian.
    pub fn is_elementary_abelian(&self) -> bool {
        self.is_abelian() && is_prime(self.exponent() as u64)
    }

    /// `(p, rank)` when the group is elementary abelian.
    pub fn elementary_abelian_rank(&self) -> Option<(usize, usize)> {
        if !self.is_elementary_abelian() {
            return None;
        }
        let p = self.exponent();
        Some((p, self.generators.len()))
    }

    /// Smallest subset containing `seed` and 0 closed under the operation.
    pub fn subgroup_closure(&self, seed: &[usize]) -> ElementSet {
        let mut set = ElementSet::from_indices(self.order, [0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in seed {
                let y = self.op(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> ElementSet {
        ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&a| self.generators.iter().all(|&g| self.op(a, g) == self.op(g, a))),
        )
    }

    /// Whether a subset (assumed a subgroup) is normal.
    pub fn is_normal(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|h| self.generators.iter().all(|&g| set.contains(self.op(self.op(self.inv(g), h), g))))
    }

    /// Extends generator images to a map `self -> target` along the spanning
    /// tree and returns it if it is a homomorphism.
    pub fn extend_generator_images(&self, target: &FiniteGroup, images: &[usize]) -> Option<Vec<usize>> {
        if images.len() != self.generators.len() || images.iter().any(|&x| x >= target.order) {
            return None;
        }
        let mut map = vec![0; self.order];
        for &x in &self.bfs[1..] {
            let (parent, slot) = self.tree[x];
            map[x] = target.op(map[parent], images[slot]);
        }
        is_hom(self, target, &map).then_some(map)
    }
}

/// Homomorphism test over generators: `f(x + g) = f(x) + f(g)` for every
/// element `x` and generator `g` implies the law for all pairs.
pub fn is_hom(src: &FiniteGroup, dst: &FiniteGroup, map: &[usize]) -> bool {
    if map.len() != src.order || map.iter().any(|&y| y >= dst.order) || map[0] != 0 {
        return false;
    }
    src.generators.iter().all(|&g| {
        let fg = map[g];
        (0..src.order).all(|x| map[src.op(x, g)] == dst.op(map[x], fg))
    })
}

/// First group-axiom failure in a row-major table, with the offending cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GroupDefect {
    pub message: String,
    pub witness: Vec<usize>,
    /// `(row, column)` of the entry most directly implicated.
    pub cell: (usize, usize),
}

fn defect(message: String, witness: Vec<usize>, cell: (usize, usize)) -> Option<GroupDefect> {
    Some(GroupDefect {
        message,
        witness,
        cell,
    })
}

/// Checks range, the Latin property, identity at 0, inverses and
/// associativity. `table.len()` must be `n * n`.
pub(crate) fn table_defect(n: usize, table: &[usize]) -> Option<GroupDefect> {
    debug_assert_eq!(table.len(), n * n);
    for (i, &v) in table.iter().enumerate() {
        if v >= n {
            return defect(format!("entry {v} out of range"), vec![i / n, i % n], (i / n, i % n));
        }
    }
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = table[a * n + b];
            if seen[v] == a {
                return defect(format!("row {a} repeats {v}"), vec![a, b], (a, b));
            }
            seen[v] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = table[a * n + b];
            if seen[v] == b {
                return defect(format!("column {b} repeats {v}"), vec![a, b], (a, b));
            }
            seen[v] = b;
        }
    }
    for a in 0..n {
        if table[a] != a {
            return defect(format!("0 + {a} is not {a}"), vec![a], (0, a));
        }
        if table[a * n] != a {
            return defect(format!("{a} + 0 is not {a}"), vec![a], (a, 0));
        }
    }
    for a in 0..n {
        let b = (0..n).find(|&b| table[a * n + b] == 0).expect("latin row contains 0");
        if table[b * n + a] != 0 {
            return defect(format!("element {a} has no two-sided inverse"), vec![a, b], (b, a));
        }
    }
    // Light's test: associativity on all triples follows from associativity
    // with the middle element ranging over a generating set.
    for g in raw_generators(n, table) {
        for x in 0..n {
            let xg = table[x * n + g];
            for y in 0..n {
                if table[xg * n + y] != table[x * n + table[g * n + y]] {
                    return defect(format!("associativity fails at ({x}, {g}, {y})"), vec![x, g, y], (xg, y));
                }
            }
        }
    }
    None
}

/// Greedy generating set of a table with identity 0: every element is a
/// left-normed product of generators, which is all Light's test needs.
fn raw_generators(n: usize, table: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = ElementSet::from_indices(n, [0]);
    for x in 0..n {
        if span.contains(x) {
            continue;
        }
        gens.push(x);
        span = ElementSet::from_indices(n, [0]);
        let mut queue = VecDeque::from([0]);
        while let Some(y) = queue.pop_front() {
            for &s in &gens {
                let z = table[y * n + s];
                if span.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

/// Mixed-radix little-endian digits of `x`.
pub fn decode(mut x: usize, radix: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(x % radix);
        x /= radix;
    }
    out
}

pub fn encode(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

fn encode_with(digits: &[usize], radix: usize, f: impl Fn(usize) -> usize) -> usize {
    (0..digits.len()).rev().fold(0, |acc, i| acc * radix + f(i))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Parses `Zn`, `Zp^k` or `H27`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("H27") {
        return Ok(FiniteGroup::heisenberg3());
    }
    let body = s
        .strip_prefix('Z')
        .ok_or_else(|| Error::Precondition(format!("unknown group specifier {spec:?}")))?;
    let (base, exp) = match body.split_once('^') {
        Some((b, e)) => (b, e),
        None => (body, "1"),
    };
    let bad = || Error::Precondition(format!("malformed group specifier {spec:?}"));
    let p: usize = base.parse().map_err(|_| bad())?;
    let k: usize = exp.parse().map_err(|_| bad())?;
    let cyc = FiniteGroup::cyclic(p)?;
    if k == 1 {
        Ok(cyc)
    } else {
        FiniteGroup::direct_power(&cyc, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_associative(g: &FiniteGroup) -> bool {
        let n = g.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.op(g.op(a, b), c) == g.op(a, g.op(b, c)))))
    }

    #[test]
    fn trivial_cyclic() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.table(), &[0]);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn z3_arithmetic() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(g.op(1, 2), 0);
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn z5_exponent_by_enumeration() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let orders = g.element_orders();
        assert_eq!(orders, vec![1, 5, 5, 5, 5]);
        assert_eq!(g.exponent(), 5);
    }

    #[test]
    fn direct_powers() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(FiniteGroup::direct_power(&z2, 1).unwrap(), z2);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(FiniteGroup::direct_power(&z3, 4).unwrap().order(), 81);
        let v = FiniteGroup::direct_power(&z2, 4).unwrap();
        assert!(v.element_orders().iter().skip(1).all(|&o| o == 2));
        assert_eq!(v.exponent(), 2);
        assert!(v.is_elementary_abelian());
        assert_eq!(v.generators(), &[1, 2, 4, 8]);
    }

    #[test]
    fn heisenberg_presentation() {
        let h = FiniteGroup::heisenberg3();
        let (x, y, z) = (1, 3, 9);
        assert!(FiniteGroup::from_flat("copy", 27, h.table().to_vec()).is_ok());
        assert!(brute_associative(&h));
        for g in [x, y, z] {
            assert_eq!(h.element_order(g), 3);
        }
        assert_ne!(h.op(y, z), h.op(z, y));
        assert_eq!(h.op(y, z), h.op(h.op(z, y), x));
        assert_eq!(h.op(x, y), h.op(y, x));
        assert_eq!(h.op(x, z), h.op(z, x));
        // brute-force centre
        let centre: Vec<usize> = (0..27)
            .filter(|&a| (0..27).all(|b| h.op(a, b) == h.op(b, a)))
            .collect();
        assert_eq!(centre, vec![0, x, h.op(x, x)]);
        assert_eq!(h.center().to_vec(), centre);
        assert_eq!(h.exponent(), 3);
        assert!(!h.is_abelian());
        assert!(!h.is_elementary_abelian());
    }

    #[test]
    fn exponent_z4() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.exponent(), 4);
        assert!(!z4.is_elementary_abelian());
    }

    #[test]
    fn closure_cases() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.subgroup_closure(&[]).to_vec(), vec![0]);
        assert_eq!(z4.subgroup_closure(&[2]).to_vec(), vec![0, 2]);
        let h = FiniteGroup::heisenberg3();
        assert_eq!(h.subgroup_closure(&[3, 9]).len(), 27);
    }

    #[test]
    fn rejects_broken_tables() {
        // not latin
        assert!(FiniteGroup::from_rows("bad", &[vec![0, 1], vec![1, 1]]).is_err());
        // identity not at 0
        assert!(FiniteGroup::from_rows("bad", &[vec![1, 0], vec![0, 1]]).is_err());
        // latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_rows("loop", &loop5).is_err());
        assert!(matches!(
            FiniteGroup::cyclic(MAX_GROUP_ORDER + 1),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn group_specs() {
        assert_eq!(parse_group_spec("Z2^4").unwrap().order(), 16);
        assert_eq!(parse_group_spec("Z7").unwrap().order(), 7);
        assert_eq!(parse_group_spec("H27").unwrap().order(), 27);
        assert!(parse_group_spec("Q8").is_err());
    }

    #[test]
    fn constructed_groups_pass_validator() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::direct_power(&z2, 3).unwrap(),
            FiniteGroup::direct_power(&z3, 2).unwrap(),
            FiniteGroup::heisenberg3(),
        ] {
            assert!(FiniteGroup::from_flat(g.name(), g.order(), g.table().to_vec()).is_ok());
            for a in 0..g.order() {
                assert_eq!(g.op(a, g.inv(a)), 0);
            }
        }
    }
}
