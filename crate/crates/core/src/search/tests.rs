use std::time::Duration;

use super::*;
use crate::construct::{
    heisenberg_spec, last_column_near_ring, m0, order81_data, order81_unit_generator, twisted_power,
    SemigroupSpec,
};
use crate::fields::{dickson9, gf, MultAutomorphism};
use crate::format::parse;
use crate::structure::audit::theorem_audit;

fn zp_k(p: usize, k: usize) -> FiniteGroup {
    FiniteGroup::direct_power(&FiniteGroup::cyclic(p).unwrap(), k)
        .unwrap()
        .with_name(format!("Z{p}^{k}"))
}

fn tim_gf3_square() -> NearRing {
    twisted_power(&gf(3, 1).unwrap(), 2, &[MultAutomorphism::identity(3)]).unwrap()
}

fn unit_generators(n: &NearRing) -> Vec<Endo> {
    n.units().members().iter().map(|&u| n.right_translation(u)).collect()
}

fn contains_isomorph(reps: &[NearRing], n: &NearRing) -> bool {
    reps.iter().any(|r| isomorphic(r, n).is_some())
}

#[test]
fn modes_parse_and_print() {
    for m in Mode::VARIANTS {
        assert_eq!(m.name().parse::<Mode>().unwrap(), m);
    }
    assert!("fa".parse::<Mode>().is_err());
}

#[test]
fn z3_squared_f_mode() {
    let r = search_near_rings(&zp_k(3, 2), Mode::F, &SearchOptions::default()).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.representatives.len(), 3, "{r}");
    for n in [gf(3, 2).unwrap().into_ring(), dickson9().into_ring(), tim_gf3_square()] {
        assert!(contains_isomorph(&r.representatives, &n), "{}", n.name());
    }
    let proper = r.representatives.iter().filter(|n| !n.is_nearfield()).count();
    assert_eq!(proper, 1);
    assert!(r.stats.nodes > r.representatives.len() as u64);
}

#[test]
fn representatives_validate_and_pass_the_audit() {
    for (g, mode) in [(zp_k(3, 2), Mode::All), (zp_k(2, 3), Mode::All), (zp_k(5, 2), Mode::F)] {
        let r = search_near_rings(&g, mode, &SearchOptions::default()).unwrap();
        assert!(r.exhaustive);
        for n in &r.representatives {
            n.validate().unwrap();
            assert!(mode.accepts(n, false));
            let a = theorem_audit(n, 128);
            assert!(a.is_clean(), "{a}");
        }
        for (i, a) in r.representatives.iter().enumerate() {
            for b in &r.representatives[i + 1..] {
                assert!(isomorphic(a, b).is_none());
            }
        }
    }
}

#[test]
fn all_mode_on_z3_squared_has_the_near_fields() {
    let r = search_near_rings(&zp_k(3, 2), Mode::All, &SearchOptions::default()).unwrap();
    let with_units: Vec<&NearRing> = r
        .representatives
        .iter()
        .filter(|n| matches!(n.units().len(), 2 | 8))
        .collect();
    assert!(with_units.len() >= 3);
    assert!(contains_isomorph(&r.representatives, gf(3, 2).unwrap().ring()));
    assert!(contains_isomorph(&r.representatives, dickson9().ring()));
    let m0z3 = m0(&FiniteGroup::cyclic(3).unwrap()).unwrap();
    assert!(contains_isomorph(&r.representatives, &m0z3));
}

#[test]
fn order_16_has_no_f_near_ring_without_the_a_property() {
    let r = search_near_rings(&zp_k(2, 4), Mode::FNotA, &SearchOptions::default()).unwrap();
    assert!(r.exhaustive);
    assert!(r.representatives.is_empty());
    assert!(r.unit_groups > 0);
}

#[test]
fn base_point_does_not_matter() {
    let g = zp_k(3, 2);
    let a = search_near_rings(&g, Mode::All, &SearchOptions::default()).unwrap();
    let b = search_near_rings(
        &g,
        Mode::All,
        &SearchOptions {
            base: Some(7),
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(a.representatives.len(), b.representatives.len());
    for n in &a.representatives {
        assert!(contains_isomorph(&b.representatives, n));
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let g = zp_k(2, 3);
    let run = |threads| {
        let o = SearchOptions {
            threads: Some(threads),
            ..SearchOptions::default()
        };
        let r = search_near_rings(&g, Mode::All, &o).unwrap();
        (r.representatives.iter().map(render).collect::<Vec<_>>(), r.counts, r.stats)
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn explicit_units_recover_known_near_rings() {
    let f9 = gf(3, 2).unwrap();
    for n in [tim_gf3_square(), f9.ring().clone(), last_column_near_ring(3, 2).unwrap()] {
        let o = SearchOptions {
            unit_generators: Some(unit_generators(&n)),
            base: Some(n.one()),
            include_vacuous: true,
            ..SearchOptions::default()
        };
        let r = search_near_rings(n.additive(), Mode::All, &o).unwrap();
        assert_eq!(r.unit_groups, 1);
        assert!(contains_isomorph(&r.representatives, &n), "{}", n.name());
        assert!(r.representatives.iter().all(|x| x.units().len() == n.units().len()));
    }
}

#[test]
fn invariant_subgroup_restriction() {
    let t = tim_gf3_square();
    let j = crate::structure::j2(&t, 128).unwrap().j2.elements;
    let mut o = SearchOptions {
        unit_generators: Some(unit_generators(&t)),
        base: Some(t.one()),
        invariant_subgroup: Some(j),
        ..SearchOptions::default()
    };
    let r = search_near_rings(t.additive(), Mode::F, &o).unwrap();
    assert_eq!(r.representatives.len(), 1);
    assert!(isomorphic(&r.representatives[0], &t).is_some());
    // the unit orbit spans a subgroup that no proper near-ring keeps invariant
    o.invariant_subgroup = Some(t.units().with_zero());
    let r = search_near_rings(t.additive(), Mode::F, &o).unwrap();
    assert!(r.representatives.iter().all(|n| n.is_nearfield()));
}

#[test]
fn order81_unit_group_admits_no_f_near_ring() {
    let (g, _, m) = order81_data();
    let o = SearchOptions {
        unit_generators: Some(vec![order81_unit_generator(&g)]),
        base: Some(m),
        ..SearchOptions::default()
    };
    let r = search_near_rings(&g, Mode::F, &o).unwrap();
    assert!(r.exhaustive);
    assert!(r.representatives.is_empty());
    assert!(r.stats.nodes > 1_000_000);
}

#[test]
fn membership_checks() {
    let h = heisenberg_spec().unwrap();
    let r = check_membership(h.group(), h.assignment(), h.base(), Mode::A).unwrap();
    assert_eq!(r.representatives.len(), 1);
    assert!(r.representatives[0].is_a().holds);
    let r = check_membership(h.group(), h.assignment(), h.base(), Mode::F).unwrap();
    assert!(r.representatives.is_empty());

    let t = SemigroupSpec::from_near_ring(&tim_gf3_square());
    let r = check_membership(t.group(), t.assignment(), t.base(), Mode::F).unwrap();
    assert_eq!(r.representatives.len(), 1);

    let (g, asg, m) = order81_data();
    let r = check_membership(&g, &asg, m, Mode::FNotA).unwrap();
    assert!(r.representatives.is_empty());
    assert!(r.exhaustive);
}

#[test]
fn timeout_gives_a_partial_report() {
    let o = SearchOptions {
        timeout: Some(Duration::ZERO),
        ..SearchOptions::default()
    };
    let r = search_near_rings(&zp_k(2, 4), Mode::F, &o).unwrap();
    assert!(!r.exhaustive);
}

#[test]
fn rejects_bad_inputs() {
    assert!(search_near_rings(&FiniteGroup::heisenberg3(), Mode::A, &SearchOptions::default()).is_err());
    assert!(search_near_rings(&zp_k(3, 5), Mode::F, &SearchOptions::default()).is_err());
    let o = SearchOptions {
        base: Some(0),
        ..SearchOptions::default()
    };
    assert!(search_near_rings(&zp_k(3, 2), Mode::F, &o).is_err());
    // Aut(Z2^6) is far too large to enumerate
    assert!(search_near_rings(&zp_k(2, 6), Mode::F, &SearchOptions::default()).is_err());
}

#[test]
fn report_directory_round_trips() {
    let r = search_near_rings(&zp_k(3, 2), Mode::F, &SearchOptions::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    r.write_dir(dir.path()).unwrap();
    for (i, n) in r.representatives.iter().enumerate() {
        let text = std::fs::read_to_string(dir.path().join(format!("rep_{i:03}.nr"))).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(&back, n);
    }
    let manifest = std::fs::read_to_string(dir.path().join("manifest.tsv")).unwrap();
    let m = Manifest::parse(&manifest).unwrap();
    assert_eq!(m.get("representatives"), Some("3"));
    assert_eq!(m.get("exhaustive"), Some("yes"));
    assert!(manifest.is_ascii());
}

#[test]
fn classification_order_9_and_25() {
    let c = classify_p2(3, &SearchOptions::default()).unwrap();
    assert_eq!(c.proper.len(), 1);
    assert_eq!(c.matches, vec![Some(0)]);
    assert!(c.verdict());
    let c = classify_p2(5, &SearchOptions::default()).unwrap();
    assert_eq!(c.instances.len(), 2);
    assert!(!c.proper.is_empty());
    assert!(c.verdict(), "{c}");
}

#[test]
fn classification_order_4_is_vacuous() {
    let c = classify_p2(2, &SearchOptions::default()).unwrap();
    assert!(c.proper.is_empty());
    assert!(!c.vacuous.is_empty());
    for &i in &c.vacuous {
        assert_eq!(c.report.representatives[i].units().len(), 1);
    }
    assert!(classify_p2(4, &SearchOptions::default()).is_err());
    assert!(classify_p2(11, &SearchOptions::default()).is_err());
}
