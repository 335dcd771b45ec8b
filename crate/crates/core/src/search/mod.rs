//! Exhaustive search for near-rings on a fixed additive group.
//!
//! A zero-symmetric near-ring with identity `m` on `G` is the same thing as
//! an assignment `b ↦ s_b` of endomorphisms with `s_b(m) = b`, closed under
//! composition (`s_c ∘ s_b = s_{s_c(b)}`); the product is `a*b = s_b(a)`.
//! The unit maps form a subgroup of `Aut(G)` with trivial stabilizer at
//! `m`, so the search fixes that group first, up to conjugacy by the
//! stabilizer of `m`, and completes the remaining entries with the engine.

pub(crate) mod engine;
mod minimality;
pub mod units;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::format::{render, Manifest};
use crate::groups::{Endo, FiniteGroup};
use crate::ring::{element_profiles, isomorphic, ElementProfile, NearRing};
use crate::structure::j2;
use engine::{Basis, Budget, Map, Solver, Source, Space};
use units::{admissible_subgroups, conjugacy_representatives, AutTable, AutomorphismGroup};

pub use engine::SearchStats;
pub use minimality::{classify_p2, verify_minimality, Classification, MinimalityPart, MinimalityReport};
pub use units::{fpf_subgroups, DEFAULT_AUT_CAP};

/// Default bound on the order of the searched group.
pub const DEFAULT_SEARCH_CAP: usize = 128;

/// Which near-rings a search keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    F,
    A,
    FNotA,
    AF,
    All,
}

impl Mode {
    pub const VARIANTS: [Mode; 5] = [Mode::F, Mode::A, Mode::FNotA, Mode::AF, Mode::All];

    pub fn name(self) -> &'static str {
        match self {
            Mode::F => "f",
            Mode::A => "a",
            Mode::FNotA => "f-not-a",
            Mode::AF => "af",
            Mode::All => "all",
        }
    }

    fn needs_f(self) -> bool {
        matches!(self, Mode::F | Mode::FNotA | Mode::AF)
    }

    /// Required additive closure of `U ∪ {0}`, if the mode fixes it.
    fn needs_closed_units(self) -> Option<bool> {
        match self {
            Mode::A | Mode::AF => Some(true),
            Mode::FNotA => Some(false),
            Mode::F | Mode::All => None,
        }
    }

    /// Whether `n` belongs to this mode. Near-rings with a single unit are
    /// dropped from the f-modes unless `include_vacuous` is set.
    pub fn accepts(self, n: &NearRing, include_vacuous: bool) -> bool {
        if self.needs_f() {
            let f = n.is_f();
            if !f.holds || (f.vacuous && !include_vacuous) {
                return false;
            }
        }
        match self.needs_closed_units() {
            Some(closed) => n.is_a().holds == closed,
            None => true,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        Mode::VARIANTS
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown mode {s:?}; expected f, a, f-not-a, af or all")))
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Wall-clock budget; an expired search returns a non-exhaustive report.
    pub timeout: Option<Duration>,
    /// Keep near-rings with a single unit in the f-modes.
    pub include_vacuous: bool,
    /// Identity element of the near-rings; defaults to index 1.
    pub base: Option<usize>,
    /// Search only near-rings whose unit maps are generated by these.
    pub unit_generators: Option<Vec<Endo>>,
    /// Worker count; defaults to the rayon default.
    pub threads: Option<usize>,
    /// Largest accepted group order.
    pub cap: usize,
    /// Largest `|Aut(G)|` enumerated when the unit groups are not given.
    pub aut_cap: usize,
    /// Largest order for which representatives get `|j2|` in their
    /// fingerprint.
    pub structure_cap: usize,
    /// Keep only near-rings in which this subgroup `W` satisfies
    /// `W*N ⊆ W` and `N*W ⊆ W`.
    pub invariant_subgroup: Option<ElementSet>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            timeout: Some(Duration::from_secs(600)),
            include_vacuous: false,
            base: None,
            unit_generators: None,
            threads: None,
            cap: DEFAULT_SEARCH_CAP,
            aut_cap: DEFAULT_AUT_CAP,
            structure_cap: crate::structure::DEFAULT_STRUCTURE_CAP,
            invariant_subgroup: None,
        }
    }
}

/// Isomorphism invariants used to bucket and report representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub units: usize,
    /// Sorted multiplicative orders of the units.
    pub unit_orders: Vec<usize>,
    /// `|j2|`, absent above the structure cap.
    pub j2: Option<usize>,
    pub ring: bool,
}

impl Fingerprint {
    pub fn of(n: &NearRing, structure_cap: usize) -> Fingerprint {
        let mut f = cheap_fingerprint(n);
        f.j2 = (n.order() <= structure_cap)
            .then(|| j2(n, structure_cap).map(|r| r.j2.len()).ok())
            .flatten();
        f
    }
}

fn cheap_fingerprint(n: &NearRing) -> Fingerprint {
    let mut unit_orders = n.units().group().element_orders();
    unit_orders.sort_unstable();
    Fingerprint {
        units: n.units().len(),
        unit_orders,
        j2: None,
        ring: n.is_ring(),
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.unit_orders.iter().map(|o| o.to_string()).collect();
        write!(f, "units={} unit-orders={}", self.units, orders.join(","))?;
        match self.j2 {
            Some(j) => write!(f, " j2={j}")?,
            None => write!(f, " j2=?")?,
        }
        write!(f, " ring={}", if self.ring { "yes" } else { "no" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintCount {
    pub fingerprint: Fingerprint,
    pub representatives: usize,
    /// Complete assignments in the mode, before isomorphism reduction.
    pub solutions: u64,
}

/// Output of a search: representatives up to isomorphism in the order of
/// their rendered form, with fingerprints and tallies.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub group: String,
    pub mode: Mode,
    pub base: usize,
    pub representatives: Vec<NearRing>,
    /// `fingerprints[i]` belongs to `representatives[i]`.
    pub fingerprints: Vec<Fingerprint>,
    pub counts: Vec<FingerprintCount>,
    /// Unit groups searched after conjugacy reduction.
    pub unit_groups: usize,
    pub stats: SearchStats,
    pub elapsed: Duration,
    /// False when the budget ran out before the space was exhausted.
    pub exhaustive: bool,
}

impl SearchReport {
    pub fn manifest(&self) -> Manifest {
        let mut m = Manifest::default();
        m.push("group", &self.group);
        m.push("mode", self.mode.name());
        m.push("base", self.base.to_string());
        m.push("exhaustive", if self.exhaustive { "yes" } else { "no" });
        m.push("elapsed-seconds", format!("{:.3}", self.elapsed.as_secs_f64()));
        m.push("unit-groups", self.unit_groups.to_string());
        m.push("nodes", self.stats.nodes.to_string());
        m.push("pruned", self.stats.pruned.to_string());
        m.push("leaves", self.stats.leaves.to_string());
        m.push("representatives", self.representatives.len().to_string());
        for c in &self.counts {
            m.push(
                "fingerprint",
                format!("{} representatives={} solutions={}", c.fingerprint, c.representatives, c.solutions),
            );
        }
        for (i, f) in self.fingerprints.iter().enumerate() {
            m.push("file", format!("{} {f}", rep_file_name(i)));
        }
        m
    }

    /// Writes `rep_NNN.nr` per representative and `manifest.tsv`.
    pub fn write_dir(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (i, r) in self.representatives.iter().enumerate() {
            std::fs::write(dir.join(rep_file_name(i)), render(r))?;
        }
        std::fs::write(dir.join("manifest.tsv"), self.manifest().to_string())
    }
}

fn rep_file_name(i: usize) -> String {
    format!("rep_{i:03}.nr")
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} representatives", self.representatives.len())?;
        writeln!(
            f,
            "group {} mode {} base {} exhaustive {}",
            self.group,
            self.mode,
            self.base,
            if self.exhaustive { "yes" } else { "no" }
        )?;
        writeln!(
            f,
            "unit groups {} nodes {} pruned {} leaves {} elapsed {:.3}s",
            self.unit_groups,
            self.stats.nodes,
            self.stats.pruned,
            self.stats.leaves,
            self.elapsed.as_secs_f64()
        )?;
        for c in &self.counts {
            writeln!(f, "  {}  representatives {}  solutions {}", c.fingerprint, c.representatives, c.solutions)?;
        }
        Ok(())
    }
}

type BucketKey = (Fingerprint, Vec<ElementProfile>);

struct Found {
    ring: NearRing,
    solutions: u64,
}

/// Isomorphism classes seen so far. Each class keeps the member with the
/// smallest multiplication table, so the result does not depend on the
/// order in which workers report.
#[derive(Default)]
struct Collector {
    found: Vec<Found>,
    buckets: HashMap<BucketKey, Vec<usize>>,
    stats: SearchStats,
    aborted: bool,
    broken: Option<String>,
}

impl Collector {
    fn offer(&mut self, ring: NearRing, solutions: u64) {
        let mut profiles = element_profiles(&ring);
        profiles.sort_unstable();
        let key = (cheap_fingerprint(&ring), profiles);
        let bucket = self.buckets.entry(key).or_default();
        for &i in bucket.iter() {
            let f = &mut self.found[i];
            if isomorphic(&ring, &f.ring).is_some() {
                f.solutions += solutions;
                if ring.mul_table() < f.ring.mul_table() {
                    f.ring = ring;
                }
                return;
            }
        }
        bucket.push(self.found.len());
        self.found.push(Found { ring, solutions });
    }

    fn merge(mut self, other: Collector) -> Collector {
        self.stats.absorb(&other.stats);
        self.aborted |= other.aborted;
        if self.broken.is_none() {
            self.broken = other.broken;
        }
        for f in other.found {
            self.offer(f.ring, f.solutions);
        }
        self
    }
}

/// Turns a complete assignment into a near-ring, if it is one in the mode.
fn leaf_ring(group: &FiniteGroup, base: usize, assignment: &[Map]) -> Result<NearRing> {
    let n = group.order();
    let mut mul = vec![0; n * n];
    for (b, s) in assignment.iter().enumerate() {
        for a in 0..n {
            mul[a * n + b] = s[a] as usize;
        }
    }
    NearRing::new(group.clone(), mul, base)
}

fn to_map(e: &Endo) -> Map {
    e.image().iter().map(|&x| x as u16).collect()
}

/// Runs one unit group to completion, splitting the first open point
/// across workers.
fn search_space(space: &Space<'_>, mode: Mode, include_vacuous: bool, budget: &Budget) -> Collector {
    if budget.expired() {
        return Collector {
            aborted: true,
            ..Collector::default()
        };
    }
    let Some(mut root) = Solver::new(space) else {
        return Collector::default();
    };
    let root_stats = root.stats;
    root.reset_stats();
    let visit = |solver: &mut Solver<'_, '_>, acc: &mut Collector| {
        let mut leaves = Vec::new();
        solver.run(budget, &mut |asg| {
            leaves.push(leaf_ring(space.group, space.base, asg));
            true
        });
        for l in leaves {
            match l {
                Ok(r) if mode.accepts(&r, include_vacuous) => acc.offer(r, 1),
                Ok(_) => {}
                Err(e) => acc.broken = Some(format!("completed assignment failed validation: {e}")),
            }
        }
        acc.stats.absorb(&solver.stats);
        acc.aborted |= solver.aborted();
    };
    let mut out = match root.first_open_point() {
        None => {
            let mut acc = Collector::default();
            visit(&mut root, &mut acc);
            acc
        }
        Some(b) => {
            let branch = |mut acc: Collector, cand: Map| {
                if budget.expired() {
                    acc.aborted = true;
                    return acc;
                }
                let mut s = root.clone();
                if s.assign_root(b, cand) {
                    visit(&mut s, &mut acc);
                } else {
                    acc.stats.absorb(&s.stats);
                }
                acc
            };
            match &space.sources[b] {
                Source::List(l) => l.par_iter().cloned().fold(Collector::default, branch).reduce(Collector::default, Collector::merge),
                Source::Enumerate => {
                    let mut cands = root.candidates(b, budget);
                    let mut acc = (&mut cands)
                        .par_bridge()
                        .fold(Collector::default, branch)
                        .reduce(Collector::default, Collector::merge);
                    acc.aborted |= cands.aborted;
                    acc
                }
            }
        }
    };
    out.stats.absorb(&root_stats);
    out
}

/// Exhaustive search for near-rings on `group` in `mode`, up to
/// isomorphism.
///
/// `group` must be elementary abelian. The candidate unit groups are every
/// subgroup of `Aut(G)` that moves the base point (fixed-point-free in the
/// f-modes), with `U ∪ {0}` closed or not as the mode demands, reduced up
/// to conjugacy by the stabilizer of the base point.
pub fn search_near_rings(group: &FiniteGroup, mode: Mode, options: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let n = group.order();
    if n > options.cap {
        return Err(Error::size("search group order", n, options.cap));
    }
    if n < 2 {
        return Err(Error::Precondition("the search needs a nontrivial group".into()));
    }
    let basis_base = options.base.unwrap_or(1);
    if basis_base == 0 || basis_base >= n {
        return Err(Error::Precondition(format!("base point {basis_base} is not a nonzero element")));
    }
    let basis = Basis::new(group, basis_base)
        .ok_or_else(|| Error::Precondition(format!("{} is not elementary abelian", group.name())))?;
    let base = basis_base;

    let choices = unit_group_choices(group, mode, base, options)?;
    let budget = Budget::new(options.timeout.map(|t| start + t));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;

    let collected = pool.install(|| {
        choices
            .par_iter()
            .map(|phi| {
                let space = Space {
                    group,
                    base,
                    units: phi.members().iter().map(to_map).collect(),
                    sources: vec![Source::Enumerate; n],
                    basis: Some(basis.clone()),
                    invariant: options.invariant_subgroup.clone(),
                };
                search_space(&space, mode, options.include_vacuous, &budget)
            })
            .reduce(Collector::default, Collector::merge)
    });
    finish(group, mode, base, choices.len(), collected, options.structure_cap, start)
}

fn finish(
    group: &FiniteGroup,
    mode: Mode,
    base: usize,
    unit_groups: usize,
    collected: Collector,
    structure_cap: usize,
    start: Instant,
) -> Result<SearchReport> {
    if let Some(msg) = collected.broken {
        return Err(Error::Precondition(msg));
    }
    let mut found: Vec<(String, Found)> = collected.found.into_iter().map(|f| (render(&f.ring), f)).collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut representatives = Vec::new();
    let mut fingerprints = Vec::new();
    let mut tally: BTreeMap<Fingerprint, (usize, u64)> = BTreeMap::new();
    for (i, (_, f)) in found.into_iter().enumerate() {
        let fp = Fingerprint::of(&f.ring, structure_cap);
        let e = tally.entry(fp.clone()).or_default();
        e.0 += 1;
        e.1 += f.solutions;
        fingerprints.push(fp);
        representatives.push(f.ring.with_name(format!("{} #{i}", group.name())));
    }
    let counts = tally
        .into_iter()
        .map(|(fingerprint, (representatives, solutions))| FingerprintCount {
            fingerprint,
            representatives,
            solutions,
        })
        .collect();
    Ok(SearchReport {
        group: group.name().to_string(),
        mode,
        base,
        representatives,
        fingerprints,
        counts,
        unit_groups,
        stats: collected.stats,
        elapsed: start.elapsed(),
        exhaustive: !collected.aborted,
    })
}

/// Unit groups to search: the explicit one from the options, or every
/// admissible subgroup of `Aut(G)` up to conjugacy by `Stab(base)`.
fn unit_group_choices(group: &FiniteGroup, mode: Mode, base: usize, options: &SearchOptions) -> Result<Vec<AutomorphismGroup>> {
    let n = group.order();
    let keep_mode = |phi: &AutomorphismGroup| {
        if mode.needs_f() && phi.order() == 1 && !options.include_vacuous {
            return false;
        }
        match mode.needs_closed_units() {
            Some(closed) => phi.orbit_closed(group, base) == closed,
            None => true,
        }
    };
    if let Some(gens) = &options.unit_generators {
        let phi = AutomorphismGroup::generated_by(group, gens, n)?;
        if !phi.moves(base) {
            return Err(Error::Precondition("a non-identity unit map fixes the base point".into()));
        }
        if mode.needs_f() && !phi.is_fpf() {
            return Err(Error::Precondition("the unit maps are not fixed-point-free".into()));
        }
        return Ok(if keep_mode(&phi) { vec![phi] } else { Vec::new() });
    }
    let table = AutTable::new(group, options.aut_cap).map_err(|e| match e {
        Error::Size { .. } => Error::Precondition(format!(
            "|Aut({})| exceeds {}; pass explicit unit generators",
            group.name(),
            options.aut_cap
        )),
        other => other,
    })?;
    let admissible: Vec<bool> = (0..table.len())
        .map(|i| {
            let m = table.map(i);
            if mode.needs_f() {
                (1..n).all(|x| m[x] as usize != x)
            } else {
                m[base] as usize != base
            }
        })
        .collect();
    let subs = admissible_subgroups(&table, &|i| admissible[i], n - 1);
    let stabilizer: Vec<usize> = (0..table.len()).filter(|&i| table.map(i)[base] as usize == base).collect();
    let mut reps: Vec<AutomorphismGroup> = conjugacy_representatives(&table, subs, &stabilizer)
        .iter()
        .map(|s| table.to_group(&s.members))
        .filter(keep_mode)
        .collect();
    reps.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().iter().map(|e| e.image()).cmp(b.members().iter().map(|e| e.image())))
    });
    Ok(reps)
}

/// Checks whether an explicit assignment `b ↦ s_b` lies in the search
/// space for `mode`: its bijective entries are taken as the unit maps and
/// every other entry is pinned to the given map. Works on any group. The
/// report has one representative when the assignment is a near-ring in
/// the mode and none otherwise.
pub fn check_membership(group: &FiniteGroup, assignment: &[Endo], base: usize, mode: Mode) -> Result<SearchReport> {
    let start = Instant::now();
    let n = group.order();
    if assignment.len() != n || assignment.iter().any(|e| e.group_order() != n) {
        return Err(Error::Precondition(format!("assignment needs {n} maps on {n} points")));
    }
    if base == 0 || base >= n {
        return Err(Error::Precondition(format!("base point {base} is not a nonzero element")));
    }
    if let Some(b) = (0..n).find(|&b| assignment[b].apply(base) != b) {
        return Err(Error::Precondition(format!("entry {b} does not send the base point to {b}")));
    }
    let units: Vec<Map> = assignment.iter().filter(|e| e.is_injective()).map(to_map).collect();
    let space = Space {
        group,
        base,
        units,
        sources: assignment.iter().map(|e| Source::List(vec![to_map(e)])).collect(),
        basis: None,
        invariant: None,
    };
    let budget = Budget::new(None);
    let collected = search_space(&space, mode, true, &budget);
    finish(group, mode, base, 1, collected, DEFAULT_SEARCH_CAP, start)
}

#[cfg(test)]
mod tests;
