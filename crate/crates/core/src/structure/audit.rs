//! Known structural consequences of the f- and a-properties, checked on a
//! concrete near-ring.
//!
//! A failing entry means the near-ring contradicts a proven statement, so
//! in practice it points at a bug in a builder or a predicate.

use std::fmt;

use super::{ideals, is_additive_direct_sum, j2, RadicalReport, SubgroupSet};
use crate::construct::{boolean_ring, m0};
use crate::groups::{gcd, is_prime, FiniteGroup};
use crate::ring::{isomorphic, NearRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses do not hold for this near-ring.
    NotApplicable,
    /// Needs the subgroup lattice and the order is above the cap.
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "n/a",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub id: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub name: String,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    pub fn is_clean(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn entry(&self, id: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// One `id<TAB>verdict<TAB>detail` line per entry.
    pub fn to_lines(&self) -> String {
        self.entries.iter().map(|e| format!("{}\t{}\t{}\n", e.id, e.verdict, e.detail)).collect()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "audit of {}", self.name)?;
        for e in &self.entries {
            writeln!(f, "  {:<28} {:<8} {}", e.id, e.verdict.to_string(), e.detail)?;
        }
        Ok(())
    }
}

struct Audit {
    entries: Vec<AuditEntry>,
}

impl Audit {
    fn push(&mut self, id: &'static str, verdict: Verdict, detail: impl Into<String>) {
        self.entries.push(AuditEntry {
            id,
            verdict,
            detail: detail.into(),
        });
    }

    fn check(&mut self, id: &'static str, applies: bool, ok: impl FnOnce() -> (bool, String)) {
        if !applies {
            self.push(id, Verdict::NotApplicable, "");
            return;
        }
        let (pass, detail) = ok();
        self.push(id, if pass { Verdict::Pass } else { Verdict::Fail }, detail);
    }
}

/// Prime `p` and exponent `q` with `n = p^q`, both prime.
fn prime_to_prime(n: usize) -> Option<(usize, usize)> {
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut q = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        q += 1;
    }
    (m == 1 && is_prime(q as u64)).then_some((p, q))
}

fn boolean_match(n: &NearRing) -> (bool, String) {
    let order = n.order();
    let k = order.trailing_zeros() as usize;
    if !order.is_power_of_two() || k > 9 {
        return (false, format!("order {order} is not 2^k"));
    }
    let b = boolean_ring(k).expect("boolean ring within bounds");
    let iso = isomorphic(n, &b).is_some();
    (iso, format!("isomorphic to Z2^{k}: {iso}"))
}

fn nearfield_or_m0z3(n: &NearRing) -> (bool, String) {
    if n.is_nearfield() {
        return (true, "near-field".into());
    }
    if n.order() == 9 {
        let m = m0(&FiniteGroup::cyclic(3).expect("Z3")).expect("M0(Z3)");
        if isomorphic(n, &m).is_some() {
            return (true, "isomorphic to M0(Z3)".into());
        }
    }
    (false, "neither a near-field nor M0(Z3)".into())
}

/// Checks every applicable statement. Entries that need ideals or the
/// radical are skipped when the order exceeds `cap`.
pub fn theorem_audit(n: &NearRing, cap: usize) -> AuditReport {
    let mut a = Audit { entries: Vec::new() };
    let order = n.order();
    let g = n.additive();
    let units = n.units();
    let k = units.len();
    let f = n.is_f();
    let is_a = n.is_a().holds;
    let is_f = f.holds;
    let ring = n.is_ring();
    let exponent = g.exponent();
    let one_order = g.element_order(n.one());

    a.check("one-order-is-exponent", true, || {
        (one_order == exponent, format!("ord(1) = {one_order}, exponent {exponent}"))
    });
    a.check("a-exponent-prime", is_a, || {
        (
            is_prime(exponent as u64) && one_order == exponent,
            format!("exponent {exponent}, ord(1) = {one_order}"),
        )
    });
    a.check("f-elementary-abelian", is_f, || {
        (g.is_elementary_abelian(), format!("elementary abelian: {}", g.is_elementary_abelian()))
    });
    a.check("single-unit-elementary-2", k == 1, || {
        let ok = g.is_elementary_abelian() && exponent <= 2;
        (ok, format!("exponent {exponent}"))
    });
    a.check("f-units-divide-order", is_f, || {
        ((order - 1) % k == 0, format!("|U| = {k}, |N| - 1 = {}", order - 1))
    });
    a.check("units-cyclic-closure", is_f && k >= 2, || {
        let p = g.element_order(n.one());
        for &u in units.members() {
            if g.element_order(u) != p {
                return (false, format!("unit {u} has additive order {}", g.element_order(u)));
            }
            let mut x = u;
            while x != 0 {
                if !units.contains(x) {
                    return (false, format!("multiple {x} of unit {u} is not a unit"));
                }
                x = g.op(x, u);
            }
        }
        (true, format!("every unit spans a cyclic subgroup of order {p} inside U + {{0}}"))
    });
    let pq = prime_to_prime(order);
    a.check("f-prime-power-units", is_f && !n.is_nearfield() && pq.is_some(), || {
        let (p, q) = pq.expect("checked");
        let sub = n.restrict(&units.with_zero());
        let field = sub.as_ref().map(|s| s.is_field()).unwrap_or(false);
        (
            k == p - 1 && field && is_a,
            format!("|N| = {p}^{q}, |U| = {k}, U0 field: {field}, a: {is_a}"),
        )
    });
    a.check("ring-case-field", ring && k >= 2 && (is_a || is_f), || {
        (n.is_field(), format!("field: {}", n.is_field()))
    });
    a.check("ring-single-unit-boolean", ring && k == 1, || boolean_match(n));

    if order > cap {
        for id in [
            "simple-f-nearfield",
            "simple-a-classification",
            "semisimple-classification",
            "semisimple-single-unit",
            "proper-f-radical",
            "unit-divisibility-chain",
            "radical-proper",
        ] {
            a.push(id, Verdict::Skipped, format!("order {order} above cap {cap}"));
        }
        return AuditReport {
            name: n.name().to_string(),
            entries: a.entries,
        };
    }

    let ideal_list: Vec<SubgroupSet> = ideals(n, cap).expect("order within cap");
    let simple = order > 1 && ideal_list.len() == 2;
    let radical: RadicalReport = j2(n, cap).expect("order within cap");
    let j = &radical.j2;
    let semisimple = j.len() == 1;

    a.check("simple-f-nearfield", simple && is_f && !ring, || {
        (n.is_nearfield(), format!("near-field: {}", n.is_nearfield()))
    });
    a.check("simple-a-classification", simple && is_a && !ring, || nearfield_or_m0z3(n));
    a.check("semisimple-classification", semisimple && (is_a || is_f) && !ring, || nearfield_or_m0z3(n));
    a.check("semisimple-single-unit", semisimple && k == 1, || {
        if !ring {
            return (false, "not a ring".into());
        }
        boolean_match(n)
    });
    a.check("proper-f-radical", is_f && !f.vacuous && !n.is_nearfield(), || {
        (
            !simple && !semisimple,
            format!("simple: {simple}, |j2| = {}", j.len()),
        )
    });
    a.check("unit-divisibility-chain", is_f, || {
        // every ideal I satisfies I*U ⊆ I, so U acts fixed-point-freely on it
        for i in &ideal_list {
            let l = i.len();
            if l == 1 || l == order {
                continue;
            }
            let bound = gcd(order - 1, l - 1);
            if bound % k != 0 {
                return (false, format!("ideal of order {l}: {k} does not divide {bound}"));
            }
        }
        (true, format!("|U| = {k} divides gcd(|N|-1, |I|-1) for every proper ideal I"))
    });
    a.check("radical-proper", order > 1, || {
        let in_list = ideal_list.iter().any(|i| i.elements == j.elements);
        let mut detail = format!("|j2| = {}, ideal: {in_list}", j.len());
        if radical.is_degenerate() {
            detail.push_str(", no type-2 quotient");
        }
        if semisimple || j.len() == order {
            detail.push_str(&format!(", N = j2 + U0: {}", is_additive_direct_sum(n, &j.elements, &units.with_zero())));
        }
        (j.len() < order && in_list, detail)
    });

    AuditReport {
        name: n.name().to_string(),
        entries: a.entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{heisenberg_a_near_ring, last_column_near_ring, twisted_power, zn_ring};
    use crate::fields::{gf, MultAutomorphism};

    #[test]
    fn ids_are_stable() {
        let r = theorem_audit(&zn_ring(4).unwrap(), 128);
        let ids: Vec<&str> = r.entries.iter().map(|e| e.id).collect();
        assert_eq!(ids.len(), 16);
        assert!(r.is_clean(), "{r}");
    }

    #[test]
    fn twisted_power_order_25() {
        let f5 = gf(5, 1).unwrap();
        let n = twisted_power(&f5, 2, &[MultAutomorphism::identity(5)]).unwrap();
        let r = theorem_audit(&n, 128);
        assert!(r.is_clean(), "{r}");
        assert_eq!(r.entry("f-prime-power-units").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.entry("proper-f-radical").unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn m0_z3_classification() {
        let n = m0(&FiniteGroup::cyclic(3).unwrap()).unwrap();
        let r = theorem_audit(&n, 128);
        assert!(r.is_clean(), "{r}");
        assert_eq!(r.entry("simple-a-classification").unwrap().verdict, Verdict::Pass);
        assert!(r.entry("simple-a-classification").unwrap().detail.contains("M0(Z3)"));
    }

    #[test]
    fn other_examples_are_clean() {
        for n in [heisenberg_a_near_ring().unwrap(), last_column_near_ring(3, 2).unwrap(), zn_ring(12).unwrap()] {
            let r = theorem_audit(&n, 128);
            assert!(r.is_clean(), "{r}");
        }
    }

    #[test]
    fn large_orders_skip_lattice_entries() {
        let f9 = gf(3, 2).unwrap();
        let n = twisted_power(&f9, 3, &[MultAutomorphism::identity(9), MultAutomorphism::identity(9)]).unwrap();
        let r = theorem_audit(&n, 128);
        assert!(r.is_clean(), "{r}");
        assert_eq!(r.entry("radical-proper").unwrap().verdict, Verdict::Skipped);
        assert_eq!(r.entry("f-units-divide-order").unwrap().verdict, Verdict::Pass);
    }
}
