//! Finite zero-symmetric near-rings with identity.
//!
//! Multiplication is right distributive: `(a + b) * c = a*c + b*c`. The right
//! translation `ψ_b: a ↦ a*b` is therefore an additive endomorphism, which the
//! validators exploit: every law is checked on additive generators only.

mod iso;
mod props;

pub use iso::{element_profiles, isomorphic, ElementProfile};
pub use props::{PropertyCheck, UnitSet};

use std::sync::OnceLock;

use crate::bitset::ElementSet;
use crate::error::{Axiom, Error, Result, Table, Violation};
use crate::groups::{table_defect, Endo, FiniteGroup, MAX_GROUP_ORDER};

/// A near-ring on an additive group with a multiplication table and a
/// two-sided multiplicative identity.
#[derive(Clone, Debug)]
pub struct NearRing {
    add: FiniteGroup,
    mul: Vec<usize>,
    one: usize,
    name: String,
    units: OnceLock<UnitSet>,
}

impl PartialEq for NearRing {
    fn eq(&self, other: &Self) -> bool {
        self.one == other.one && self.mul == other.mul && self.add == other.add
    }
}

impl Eq for NearRing {}

impl NearRing {
    /// Validates a multiplication table against an additive group.
    pub fn new(add: FiniteGroup, mul: Vec<usize>, one: usize) -> Result<Self> {
        if let Some(v) = mul_violation(&add, &mul, one) {
            return Err(v.into());
        }
        Ok(Self::trusted(add, mul, one))
    }

    /// Builds from raw row-major tables, validating both.
    pub fn from_tables(n: usize, add: Vec<usize>, mul: Vec<usize>, one: usize) -> Result<Self> {
        validate_tables(n, &add, &mul, one)?;
        let group = FiniteGroup::from_flat("N", n, add)?;
        Ok(Self::trusted(group, mul, one))
    }

    pub(crate) fn trusted(add: FiniteGroup, mul: Vec<usize>, one: usize) -> Self {
        let name = format!("near-ring on {}", add.name());
        NearRing {
            add,
            mul,
            one,
            name,
            units: OnceLock::new(),
        }
    }

    /// Re-runs every axiom check.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        match mul_violation(&self.add, &self.mul, self.one) {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add.sub(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// `ψ_b: a ↦ a*b`.
    pub fn right_translation(&self, b: usize) -> Endo {
        let n = self.order();
        Endo::from_vec((0..n).map(|a| self.mul(a, b)).collect())
    }

    /// Restriction to a subset containing 0 and 1 that is closed under both
    /// operations, relabelled in increasing index order.
    pub fn restrict(&self, subset: &ElementSet) -> Result<NearRing> {
        let members = subset.to_vec();
        if !subset.contains(0) || !subset.contains(self.one) {
            return Err(Error::Precondition("subset must contain 0 and 1".into()));
        }
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let k = members.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let (s, p) = (pos[self.add(a, b)], pos[self.mul(a, b)]);
                if s == usize::MAX || p == usize::MAX {
                    return Err(Error::Precondition(format!("subset not closed at ({a}, {b})")));
                }
                add.push(s);
                mul.push(p);
            }
        }
        Ok(Self::from_tables(k, add, mul, pos[self.one])?.with_name(format!("sub-near-ring of {}", self.name)))
    }

    /// Transports the structure along a bijection `perm[old] = new` that fixes 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<NearRing> {
        let n = self.order();
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in perm.iter().enumerate() {
            if y >= n || inv[y] != usize::MAX {
                return Err(Error::Precondition("relabelling is not a permutation".into()));
            }
            inv[y] = x;
        }
        if perm.len() != n || perm[0] != 0 {
            return Err(Error::Precondition("relabelling must be a permutation fixing 0".into()));
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = perm[self.add(inv[a], inv[b])];
                mul[a * n + b] = perm[self.mul(inv[a], inv[b])];
            }
        }
        let group = FiniteGroup::from_flat(self.add.name().to_string(), n, add)?;
        Ok(Self::trusted(group, mul, perm[self.one]).with_name(self.name.clone()))
    }
}

/// Full validation of raw tables in the order shape, additive group,
/// zero-symmetry, identity, right distributivity, associativity.
pub fn validate_tables(n: usize, add: &[usize], mul: &[usize], one: usize) -> std::result::Result<(), Violation> {
    if n == 0 || n > MAX_GROUP_ORDER {
        return Err(Violation::new(Axiom::Shape, vec![], None, format!("order {n} outside 1..={MAX_GROUP_ORDER}")));
    }
    if add.len() != n * n {
        return Err(Violation::new(
            Axiom::Shape,
            vec![],
            None,
            format!("additive table has {} entries, expected {}", add.len(), n * n),
        ));
    }
    if let Some(d) = table_defect(n, add) {
        let axiom = if add[d.cell.0 * n + d.cell.1] >= n {
            Axiom::Shape
        } else {
            Axiom::AdditiveGroup
        };
        return Err(Violation::new(axiom, d.witness, Some((Table::Add, d.cell.0, d.cell.1)), d.message));
    }
    let group = FiniteGroup::from_flat("N", n, add.to_vec()).map_err(|e| {
        Violation::new(Axiom::AdditiveGroup, vec![], None, e.to_string())
    })?;
    match mul_violation(&group, mul, one) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn mul_violation(add: &FiniteGroup, mul: &[usize], one: usize) -> Option<Violation> {
    let n = add.order();
    let at = |a: usize, b: usize| mul[a * n + b];
    let cell = |a: usize, b: usize| Some((Table::Mul, a, b));
    if mul.len() != n * n {
        return Some(Violation::new(
            Axiom::Shape,
            vec![],
            None,
            format!("multiplication table has {} entries, expected {}", mul.len(), n * n),
        ));
    }
    if let Some(i) = mul.iter().position(|&x| x >= n) {
        let (a, b) = (i / n, i % n);
        return Some(Violation::new(Axiom::Shape, vec![a, b], cell(a, b), format!("entry {} out of range", mul[i])));
    }
    if one >= n {
        return Some(Violation::new(Axiom::Shape, vec![one], None, format!("identity index {one} out of range")));
    }
    for a in 0..n {
        if at(0, a) != 0 {
            return Some(Violation::new(Axiom::ZeroSymmetry, vec![a], cell(0, a), format!("0*{a} is not 0")));
        }
        if at(a, 0) != 0 {
            return Some(Violation::new(Axiom::ZeroSymmetry, vec![a], cell(a, 0), format!("{a}*0 is not 0")));
        }
    }
    for a in 0..n {
        if at(one, a) != a {
            return Some(Violation::new(Axiom::Identity, vec![a], cell(one, a), format!("1*{a} is not {a}")));
        }
        if at(a, one) != a {
            return Some(Violation::new(Axiom::Identity, vec![a], cell(a, one), format!("{a}*1 is not {a}")));
        }
    }
    // ψ_c is a homomorphism iff it respects x + g for generators g
    for &g in add.generators() {
        for a in 0..n {
            let ag = add.op(a, g);
            for c in 0..n {
                if at(ag, c) != add.op(at(a, c), at(g, c)) {
                    return Some(Violation::new(
                        Axiom::RightDistributivity,
                        vec![a, g, c],
                        cell(ag, c),
                        format!("({a}+{g})*{c} differs from {a}*{c}+{g}*{c}"),
                    ));
                }
            }
        }
    }
    // both sides of (x*b)*c = x*(b*c) are endomorphisms in x
    for &g in add.generators() {
        for b in 0..n {
            let gb = at(g, b);
            for c in 0..n {
                if at(gb, c) != at(g, at(b, c)) {
                    return Some(Violation::new(
                        Axiom::Associativity,
                        vec![g, b, c],
                        cell(gb, c),
                        format!("({g}*{b})*{c} differs from {g}*({b}*{c})"),
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_tables(n: usize) -> (Vec<usize>, Vec<usize>) {
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        (add, mul)
    }

    fn brute_valid(n: usize, add: &[usize], mul: &[usize], one: usize) -> bool {
        let m = |a: usize, b: usize| mul[a * n + b];
        let p = |a: usize, b: usize| add[a * n + b];
        (0..n).all(|a| m(0, a) == 0 && m(a, 0) == 0 && m(one, a) == a && m(a, one) == a)
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| m(p(a, b), c) == p(m(a, c), m(b, c)) && m(m(a, b), c) == m(a, m(b, c))))
            })
    }

    #[test]
    fn z4_ring_validates() {
        let (add, mul) = zn_tables(4);
        assert!(validate_tables(4, &add, &mul, 1).is_ok());
        assert!(brute_valid(4, &add, &mul, 1));
    }

    #[test]
    fn identity_violation_reported_first() {
        let (add, mut mul) = zn_tables(4);
        mul[4 + 1] = 2;
        let v = validate_tables(4, &add, &mul, 1).unwrap_err();
        assert_eq!(v.axiom, Axiom::Identity);
        assert_eq!(v.witness, vec![1]);
        assert_eq!(v.cell, Some((Table::Mul, 1, 1)));
    }

    #[test]
    fn validator_agrees_with_brute_force() {
        // every single-entry perturbation of Z6 must be rejected
        let (add, mul) = zn_tables(6);
        for i in 0..36 {
            for v in 0..6 {
                let mut m = mul.clone();
                if m[i] == v {
                    continue;
                }
                m[i] = v;
                assert_eq!(validate_tables(6, &add, &m, 1).is_ok(), brute_valid(6, &add, &m, 1));
                assert!(validate_tables(6, &add, &m, 1).is_err());
            }
        }
    }

    #[test]
    fn additive_defects_point_at_cells() {
        let (mut add, mul) = zn_tables(3);
        add[4] = 0;
        let v = validate_tables(3, &add, &mul, 1).unwrap_err();
        assert_eq!(v.axiom, Axiom::AdditiveGroup);
        assert!(matches!(v.cell, Some((Table::Add, 1, _))));
        let (add, mut mul) = zn_tables(3);
        mul[0] = 7;
        assert_eq!(validate_tables(3, &add, &mul, 1).unwrap_err().axiom, Axiom::Shape);
    }

    #[test]
    fn translations_and_relabelling() {
        let (add, mul) = zn_tables(5);
        let n = NearRing::from_tables(5, add, mul, 1).unwrap();
        assert!(n.right_translation(1).is_identity());
        assert!(n.right_translation(0).is_zero());
        let r = n.relabel(&[0, 2, 1, 4, 3]).unwrap();
        assert_eq!(r.one(), 2);
        assert!(r.validate().is_ok());
        assert!(n.relabel(&[1, 0, 2, 3, 4]).is_err());
    }
}
