//! Classification drivers built on the search: the proper f-near-rings of
//! order `p²`, and the claim that no f-near-ring without the a-property
//! exists below order 81.

use std::fmt;
use std::time::{Duration, Instant};

use super::units::AutomorphismGroup;
use super::{check_membership, search_near_rings, Mode, SearchOptions, SearchReport};
use crate::bitset::ElementSet;
use crate::construct::{linear_endo, order81_data, order81_unit_generator, twisted_power};
use crate::error::{Error, Result};
use crate::fields::{gf, mult_automorphisms};
use crate::groups::{decode, encode, is_prime, Endo, FiniteGroup};
use crate::ring::{isomorphic, NearRing};
use crate::structure::subgroup_lattice;

/// Result of [`classify_p2`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub p: usize,
    pub report: SearchReport,
    /// Indices of representatives that are neither near-fields nor have a
    /// single unit.
    pub proper: Vec<usize>,
    /// Indices of non-near-field representatives with a single unit.
    pub vacuous: Vec<usize>,
    /// Twisted squares of `GF(p)`, one per multiplicative automorphism.
    pub instances: Vec<NearRing>,
    /// For each entry of `proper`, the index of an isomorphic instance.
    pub matches: Vec<Option<usize>>,
}

impl Classification {
    /// Exhaustive, and every proper representative is a twisted square.
    pub fn verdict(&self) -> bool {
        self.report.exhaustive && self.matches.iter().all(Option::is_some)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.report)?;
        writeln!(
            f,
            "order {}^2: {} proper, {} with a single unit, {} twisted squares",
            self.p,
            self.proper.len(),
            self.vacuous.len(),
            self.instances.len()
        )?;
        for (&i, m) in self.proper.iter().zip(&self.matches) {
            match m {
                Some(j) => writeln!(f, "  {} ~ {}", self.report.representatives[i].name(), self.instances[*j].name())?,
                None => writeln!(f, "  {} matches no twisted square", self.report.representatives[i].name())?,
            }
        }
        writeln!(f, "verdict {}", if self.verdict() { "pass" } else { "fail" })
    }
}

/// Searches `Z_p²` for f-near-rings and matches every proper one against
/// the twisted squares `GF(p)² [α]`. For `p = 2` the single-unit
/// near-rings are kept and listed separately.
pub fn classify_p2(p: usize, options: &SearchOptions) -> Result<Classification> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p > 7 {
        return Err(Error::size("prime for the order p^2 classification", p, 7));
    }
    let group = FiniteGroup::direct_power(&FiniteGroup::cyclic(p)?, 2)?;
    let mut opts = options.clone();
    opts.include_vacuous = p == 2;
    let report = search_near_rings(&group, Mode::F, &opts)?;
    let field = gf(p, 1)?;
    let instances = mult_automorphisms(&field)?
        .iter()
        .map(|a| twisted_power(&field, 2, std::slice::from_ref(a)))
        .collect::<Result<Vec<_>>>()?;
    let mut proper = Vec::new();
    let mut vacuous = Vec::new();
    for (i, r) in report.representatives.iter().enumerate() {
        if r.is_nearfield() {
            continue;
        }
        if r.units().len() == 1 {
            vacuous.push(i);
        } else {
            proper.push(i);
        }
    }
    let matches = proper
        .iter()
        .map(|&i| instances.iter().position(|t| isomorphic(&report.representatives[i], t).is_some()))
        .collect();
    Ok(Classification {
        p,
        report,
        proper,
        vacuous,
        instances,
        matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityPart {
    pub id: &'static str,
    pub passed: bool,
    /// False when the budget ran out first.
    pub exhaustive: bool,
    pub detail: String,
}

/// Result of [`verify_minimality`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub parts: Vec<MinimalityPart>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.passed && p.exhaustive)
    }

    /// Some part stopped on the budget.
    pub fn partial(&self) -> bool {
        self.parts.iter().any(|p| !p.exhaustive)
    }

    pub fn part(&self, id: &str) -> Option<&MinimalityPart> {
        self.parts.iter().find(|p| p.id == id)
    }
}

impl fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            let verdict = match (p.passed, p.exhaustive) {
                (true, true) => "pass",
                (false, _) => "fail",
                (true, false) => "partial",
            };
            writeln!(f, "{}\t{}\t{}", p.id, verdict, p.detail)?;
        }
        let overall = if self.passed() {
            "pass"
        } else if self.parts.iter().all(|p| p.passed) {
            "partial"
        } else {
            "fail"
        };
        writeln!(f, "verdict\t{overall}")
    }
}

struct Clock {
    deadline: Option<Instant>,
}

impl Clock {
    fn remaining(&self) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_duration_since(Instant::now()))
    }
}

/// Checks that no f-near-ring without the a-property exists on `Z_2^4`, none
/// on `Z_2^6` with a nontrivial proper ideal invariant under the units, and
/// that the order-81 candidate is one.
///
/// The order-64 part uses that a proper f-near-ring has `0 ≠ j2 ≠ N`, and
/// `j2` is an ideal, so it is a subgroup `W` invariant under every unit
/// map with `W*N ⊆ W` and `N*W ⊆ W`. Unit groups there are cyclic of order
/// dividing 63; per unit group and base point class the search runs once
/// per invariant `W`.
pub fn verify_minimality(options: &SearchOptions) -> Result<MinimalityReport> {
    let clock = Clock {
        deadline: options.timeout.map(|t| Instant::now() + t),
    };
    let parts = vec![
        order16_part(options, &clock)?,
        order64_part(options, &clock)?,
        order81_part(options, &clock)?,
    ];
    Ok(MinimalityReport { parts })
}

fn with_remaining(options: &SearchOptions, clock: &Clock) -> SearchOptions {
    let mut o = options.clone();
    o.timeout = clock.remaining();
    o
}

fn order16_part(options: &SearchOptions, clock: &Clock) -> Result<MinimalityPart> {
    let g = FiniteGroup::direct_power(&FiniteGroup::cyclic(2)?, 4)?;
    let r = search_near_rings(&g, Mode::FNotA, &with_remaining(options, clock))?;
    Ok(MinimalityPart {
        id: "order-16",
        passed: r.representatives.is_empty(),
        exhaustive: r.exhaustive,
        detail: format!(
            "Z2^4 f-not-a: {} representatives over {} unit groups, {} nodes",
            r.representatives.len(),
            r.unit_groups,
            r.stats.nodes
        ),
    })
}

fn order64_part(options: &SearchOptions, clock: &Clock) -> Result<MinimalityPart> {
    let (p, k) = (2usize, 6usize);
    let g = FiniteGroup::direct_power(&FiniteGroup::cyclic(p)?, k)?;
    let n = g.order();
    let lattice: Vec<ElementSet> = subgroup_lattice(&g).into_iter().map(|(s, _)| s).collect();
    let mut found = 0usize;
    let mut exhaustive = true;
    let mut searches = 0usize;
    let mut closed = 0usize;
    let mut irreducible = 0usize;
    for d in (2..n).filter(|d| (n - 1) % d == 0) {
        for gen in cyclic_fpf_generators(&g, p, k, d)? {
            let phi = AutomorphismGroup::generated_by(&g, std::slice::from_ref(&gen), n)?;
            let invariant: Vec<&ElementSet> = lattice
                .iter()
                .filter(|w| w.len() > 1 && w.len() < n && w.iter().all(|x| w.contains(gen.apply(x))))
                .collect();
            for m in centralizer_orbit_reps(&g, p, k, &gen)? {
                if phi.orbit_closed(&g, m) {
                    closed += 1;
                    continue;
                }
                if invariant.is_empty() {
                    irreducible += 1;
                    continue;
                }
                for w in &invariant {
                    let mut o = with_remaining(options, clock);
                    o.unit_generators = Some(vec![gen.clone()]);
                    o.base = Some(m);
                    o.invariant_subgroup = Some((*w).clone());
                    let r = search_near_rings(&g, Mode::FNotA, &o)?;
                    searches += 1;
                    found += r.representatives.len();
                    exhaustive &= r.exhaustive;
                }
            }
        }
    }
    Ok(MinimalityPart {
        id: "order-64",
        passed: found == 0,
        exhaustive,
        detail: format!(
            "Z2^6: {closed} unit-group/base cases with U0 closed, {irreducible} without an invariant subgroup, \
             {searches} restricted searches, {found} f-not-a representatives"
        ),
    })
}

fn order81_part(options: &SearchOptions, clock: &Clock) -> Result<MinimalityPart> {
    let (g, assignment, m) = order81_data();
    let member = check_membership(&g, &assignment, m, Mode::FNotA)?;
    if member.representatives.len() == 1 {
        return Ok(MinimalityPart {
            id: "order-81",
            passed: true,
            exhaustive: true,
            detail: "the order-81 data is an f-near-ring without the a-property".into(),
        });
    }
    let mut o = with_remaining(options, clock);
    o.unit_generators = Some(vec![order81_unit_generator(&g)]);
    o.base = Some(m);
    let r = search_near_rings(&g, Mode::F, &o)?;
    Ok(MinimalityPart {
        id: "order-81",
        passed: false,
        exhaustive: r.exhaustive,
        detail: format!(
            "the order-81 data is not closed under composition; its unit group admits {} f-near-rings ({} nodes)",
            r.representatives.len(),
            r.stats.nodes
        ),
    })
}

/// Monic polynomials over `Z_p`, coefficients from the constant term up.
fn monic_polys(p: usize, deg: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..p.pow(deg as u32)).map(move |code| {
        let mut c = decode(code, p, deg);
        c.push(1);
        c
    })
}

fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|q| poly_rem(f, &q, p).iter().any(|&c| c != 0)))
}

fn companion(f: &[usize], p: usize) -> Vec<Vec<i64>> {
    let e = f.len() - 1;
    let mut m = vec![vec![0i64; e]; e];
    for i in 1..e {
        m[i][i - 1] = 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[e - 1] = ((p - f[i]) % p) as i64;
    }
    m
}

/// Generators, one per multiset of irreducible blocks, of the cyclic
/// fixed-point-free subgroups of order `d` in `GL(k, p)`, up to
/// conjugacy. Each block is a companion matrix of an irreducible factor
/// whose roots have order exactly `d`, so every non-identity power is
/// fixed-point-free.
fn cyclic_fpf_generators(g: &FiniteGroup, p: usize, k: usize, d: usize) -> Result<Vec<Endo>> {
    let e = (1..=k).find(|&e| (p.pow(e as u32) - 1) % d == 0);
    let Some(e) = e.filter(|e| k % e == 0) else {
        return Ok(Vec::new());
    };
    let block_group = FiniteGroup::direct_power(&FiniteGroup::cyclic(p)?, e)?;
    let blocks: Vec<Vec<Vec<i64>>> = monic_polys(p, e)
        .filter(|f| f[0] != 0 && is_irreducible(f, p))
        .map(|f| companion(&f, p))
        .filter(|c| linear_endo(&block_group, p, c).ok().and_then(|x| x.order()) == Some(d))
        .collect();
    let count = k / e;
    let mut out = Vec::new();
    let mut pick = vec![0usize; count];
    loop {
        let mut m = vec![vec![0i64; k]; k];
        for (slot, &b) in pick.iter().enumerate() {
            for i in 0..e {
                for j in 0..e {
                    m[slot * e + i][slot * e + j] = blocks[b][i][j];
                }
            }
        }
        if !blocks.is_empty() {
            out.push(linear_endo(g, p, &m)?);
        }
        // next non-decreasing choice of blocks
        let Some(i) = (0..count).rev().find(|&i| pick[i] + 1 < blocks.len()) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..count {
            pick[j] = pick[i];
        }
    }
    Ok(out)
}

fn matrix_of(e: &Endo, p: usize, k: usize) -> Vec<Vec<usize>> {
    let cols: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let mut v = vec![0; k];
            v[j] = 1;
            decode(e.apply(encode(&v, p)), p, k)
        })
        .collect();
    (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect()
}

/// Row reduction mod `p`; returns the rank and reduces `rows` in place.
fn row_reduce(rows: &mut [Vec<usize>], p: usize) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(s) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, s);
        let inv = (1..p).find(|&x| x * rows[r][c] % p == 1).expect("field element");
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

const CENTRALIZER_CAP: usize = 1 << 20;

/// One base point per orbit of the centralizer of `gen` in `GL(k, p)` on
/// nonzero vectors. Conjugating by a centralizing automorphism fixes the
/// unit group and moves the base point, so these cover every base point up
/// to isomorphism.
fn centralizer_orbit_reps(g: &FiniteGroup, p: usize, k: usize, gen: &Endo) -> Result<Vec<usize>> {
    let a = matrix_of(gen, p, k);
    // unknown X[i][j] at i*k + j; equations (XA - AX)[r][c] = 0
    let mut rows = Vec::new();
    for r in 0..k {
        for c in 0..k {
            let mut eq = vec![0usize; k * k];
            for t in 0..k {
                eq[r * k + t] = (eq[r * k + t] + a[t][c]) % p;
                eq[t * k + c] = (eq[t * k + c] + p - a[r][t]) % p;
            }
            rows.push(eq);
        }
    }
    let pivots = row_reduce(&mut rows, p);
    let free: Vec<usize> = (0..k * k).filter(|c| !pivots.contains(c)).collect();
    let total = p.checked_pow(free.len() as u32).filter(|&t| t <= CENTRALIZER_CAP);
    let Some(total) = total else {
        return Err(Error::size("centralizer", format!("{p}^{}", free.len()), CENTRALIZER_CAP));
    };
    let n = g.order();
    let mut images: Vec<Endo> = Vec::new();
    for code in 0..total {
        let vals = decode(code, p, free.len());
        let mut x = vec![0usize; k * k];
        for (&f, &v) in free.iter().zip(&vals) {
            x[f] = v;
        }
        for (row, &c) in rows.iter().zip(&pivots) {
            let s: usize = free.iter().map(|&f| row[f] * x[f]).sum();
            x[c] = (p - s % p) % p;
        }
        let m: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| x[i * k + j] as i64).collect()).collect();
        let e = linear_endo(g, p, &m)?;
        if e.is_injective() {
            images.push(e);
        }
    }
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for v in 1..n {
        if seen[v] {
            continue;
        }
        reps.push(v);
        for e in &images {
            seen[e.apply(v)] = true;
        }
    }
    Ok(reps)
}
