use super::NearRing;
use crate::bitset::ElementSet;
use crate::groups::FiniteGroup;

/// The unit group `U`. Members are listed with the identity first, then in
/// increasing index order; positions in that list index [`UnitSet::group`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSet {
    members: Vec<usize>,
    set: ElementSet,
    inverse: Vec<usize>,
    table: Vec<usize>,
}

impl UnitSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_set(&self) -> &ElementSet {
        &self.set
    }

    /// `U ∪ {0}`.
    pub fn with_zero(&self) -> ElementSet {
        let mut s = self.set.clone();
        s.insert(0);
        s
    }

    /// Multiplicative inverse of a unit, `None` for non-units.
    pub fn inverse(&self, u: usize) -> Option<usize> {
        self.members.iter().position(|&x| x == u).map(|i| self.members[self.inverse[i]])
    }

    /// Induced multiplication on positions of [`UnitSet::members`].
    pub fn group_table(&self) -> &[usize] {
        &self.table
    }

    /// `(U, *)` as a group on positions, identity at 0.
    pub fn group(&self) -> FiniteGroup {
        FiniteGroup::from_flat("U", self.len(), self.table.clone()).expect("unit group satisfies the group axioms")
    }
}

/// Outcome of a property test with a counterexample when it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyCheck {
    pub holds: bool,
    /// True when the property holds only because `|U| = 1`.
    pub vacuous: bool,
    pub witness: Option<(usize, usize)>,
}

impl PropertyCheck {
    fn pass() -> Self {
        PropertyCheck {
            holds: true,
            vacuous: false,
            witness: None,
        }
    }

    fn fail(a: usize, b: usize) -> Self {
        PropertyCheck {
            holds: false,
            vacuous: false,
            witness: Some((a, b)),
        }
    }
}

impl NearRing {
    /// Units are exactly the `b` whose right translation is injective.
    pub fn units(&self) -> &UnitSet {
        self.units.get_or_init(|| compute_units(self))
    }

    /// f-property: every unit `u ≠ 1` moves every `a ≠ 0`, i.e. `a*u ≠ a`.
    /// Failure witness is `(u, a)`.
    pub fn is_f(&self) -> PropertyCheck {
        let units = self.units();
        if units.len() == 1 {
            return PropertyCheck {
                vacuous: true,
                ..PropertyCheck::pass()
            };
        }
        for &u in &units.members()[1..] {
            if let Some(a) = (1..self.order()).find(|&a| self.mul(a, u) == a) {
                return PropertyCheck::fail(u, a);
            }
        }
        PropertyCheck::pass()
    }

    /// a-property: `U ∪ {0}` is additively closed. In a finite near-ring that
    /// makes it a subgroup and, `(U, *)` being a group, a sub-near-field.
    /// Failure witness is a pair of units whose sum is a nonzero non-unit.
    pub fn is_a(&self) -> PropertyCheck {
        let units = self.units();
        for &u in units.members() {
            for &v in units.members() {
                let s = self.add(u, v);
                if s != 0 && !units.contains(s) {
                    return PropertyCheck::fail(u, v);
                }
            }
        }
        debug_assert!(self.restrict(&units.with_zero()).map(|f| f.is_nearfield()).unwrap_or(false));
        PropertyCheck::pass()
    }

    /// Left distributivity together with an abelian additive group.
    pub fn is_ring(&self) -> bool {
        let n = self.order();
        self.add.is_abelian()
            && self.add.generators().iter().all(|&g| {
                (0..n).all(|a| {
                    let ag = self.mul(a, g);
                    (0..n).all(|y| self.mul(a, self.add(y, g)) == self.add(self.mul(a, y), ag))
                })
            })
    }

    pub fn is_nearfield(&self) -> bool {
        self.units().len() + 1 == self.order()
    }

    pub fn is_field(&self) -> bool {
        self.is_nearfield() && self.is_ring() && self.is_mul_commutative()
    }

    pub fn is_mul_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn compute_units(n: &NearRing) -> UnitSet {
    let order = n.order();
    let mut seen = vec![usize::MAX; order];
    let injective = |b: usize, seen: &mut Vec<usize>| {
        (0..order).all(|a| {
            let y = n.mul(a, b);
            let fresh = seen[y] != b;
            seen[y] = b;
            fresh
        })
    };
    let mut members = vec![n.one];
    for b in 0..order {
        if b != n.one && injective(b, &mut seen) {
            members.push(b);
        }
    }
    let k = members.len();
    let mut pos = vec![usize::MAX; order];
    for (i, &u) in members.iter().enumerate() {
        pos[u] = i;
    }
    let table: Vec<usize> = members
        .iter()
        .flat_map(|&u| members.iter().map(move |&v| (u, v)))
        .map(|(u, v)| pos[n.mul(u, v)])
        .collect();
    assert!(table.iter().all(|&p| p != usize::MAX), "units closed under multiplication");
    let inverse: Vec<usize> = (0..k)
        .map(|i| {
            let j = (0..k).find(|&j| table[i * k + j] == 0).expect("unit has a right inverse");
            assert_eq!(table[j * k + i], 0, "right inverse of a unit is two-sided");
            j
        })
        .collect();
    UnitSet {
        set: ElementSet::from_indices(order, members.iter().copied()),
        members,
        inverse,
        table,
    }
}
