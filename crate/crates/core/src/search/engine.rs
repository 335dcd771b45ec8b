//! Depth-first completion of semigroup assignments.
//!
//! A node fixes `s_b` for some points `b`. Every new assignment `s_x` is
//! checked against every assigned `s_y` in both orders: `s_y ∘ s_x` must be
//! the entry at `s_y(x)` and `s_x ∘ s_y` the entry at `s_x(y)`. Missing
//! entries are forced, present ones compared on generators.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use crate::bitset::ElementSet;
use crate::groups::FiniteGroup;

pub(crate) type Map = Vec<u16>;

/// Where candidate maps for a non-unit point come from.
#[derive(Clone, Debug)]
pub(crate) enum Source {
    /// Every linear map with `f(m) = b`, enumerated lazily over a basis.
    Enumerate,
    /// An explicit list; forced maps must belong to it.
    List(Vec<Map>),
}

/// Linear structure of an elementary abelian group relative to a basis
/// whose first vector is the base point.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub vectors: Vec<usize>,
    /// Elements in the order their values get fixed: span of the first
    /// `j + 1` vectors is `layers[..p^(j+1)]`.
    pub layers: Vec<usize>,
    /// `(parent, slot)` with `x = parent + vectors[slot]`.
    pub tree: Vec<(usize, usize)>,
    pub p: usize,
}

impl Basis {
    pub fn new(group: &FiniteGroup, base: usize) -> Option<Basis> {
        let (p, _) = group.elementary_abelian_rank()?;
        let n = group.order();
        let mut vectors = vec![base];
        let mut span = group.subgroup_closure(&vectors);
        for x in 0..n {
            if !span.contains(x) {
                vectors.push(x);
                span = group.subgroup_closure(&vectors);
            }
        }
        let mut tree = vec![(0, 0); n];
        let mut layers = vec![0];
        for (slot, &v) in vectors.iter().enumerate() {
            let prev = layers.len();
            for c in 1..p {
                for i in 0..prev {
                    let parent = layers[(c - 1) * prev + i];
                    let x = group.op(parent, v);
                    tree[x] = (parent, slot);
                    layers.push(x);
                }
            }
        }
        debug_assert_eq!(layers.len(), n);
        Some(Basis {
            vectors,
            layers,
            tree,
            p,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branch assignments tried.
    pub nodes: u64,
    /// Branches rejected by closure propagation or candidate filters.
    pub pruned: u64,
    /// Complete assignments reached.
    pub leaves: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.pruned += o.pruned;
        self.leaves += o.leaves;
    }
}

/// A fixed unit group and base point over which assignments are completed.
pub(crate) struct Space<'a> {
    pub group: &'a FiniteGroup,
    pub base: usize,
    /// Unit maps; `units[i](base)` are the unit points.
    pub units: Vec<Map>,
    pub sources: Vec<Source>,
    pub basis: Option<Basis>,
    /// Every entry must map this subgroup into itself, and entries for its
    /// points must map everything into it.
    pub invariant: Option<ElementSet>,
}

pub(crate) struct Budget {
    pub deadline: Option<Instant>,
    pub cancel: Arc<AtomicBool>,
}

impl Budget {
    pub fn new(deadline: Option<Instant>) -> Self {
        Budget {
            deadline,
            cancel: Arc::new(AtomicBool::new(false)),
        }
    }

    pub fn expired(&self) -> bool {
        if self.cancel.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.cancel.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }
}

#[derive(Clone)]
pub(crate) struct Solver<'s, 'a> {
    space: &'s Space<'a>,
    gens: Vec<usize>,
    unit_points: ElementSet,
    assign: Vec<Map>,
    assigned: Vec<bool>,
    /// Assigned points in assignment order.
    trail: Vec<usize>,
    queue: Vec<usize>,
    lists: Vec<Option<std::collections::HashSet<Map>>>,
    pub stats: SearchStats,
    ticks: u32,
    aborted: bool,
}

impl<'s, 'a> Solver<'s, 'a> {
    /// Sets up the zero map and the unit maps; `None` if they already
    /// conflict.
    pub fn new(space: &'s Space<'a>) -> Option<Self> {
        let n = space.group.order();
        let unit_points = ElementSet::from_indices(n, space.units.iter().map(|u| u[space.base] as usize));
        // zero and unit entries are fixed below, so their sources are ignored
        let lists = space
            .sources
            .iter()
            .enumerate()
            .map(|(b, s)| match s {
                Source::List(l) if b != 0 && !unit_points.contains(b) => Some(l.iter().cloned().collect()),
                _ => None,
            })
            .collect();
        let mut s = Solver {
            space,
            gens: space.group.generators().to_vec(),
            unit_points,
            assign: vec![Vec::new(); n],
            assigned: vec![false; n],
            trail: Vec::new(),
            queue: Vec::new(),
            lists,
            stats: SearchStats::default(),
            ticks: 0,
            aborted: false,
        };
        s.place(0, vec![0; n]);
        for u in &space.units {
            let b = u[space.base] as usize;
            if s.assigned[b] {
                return None;
            }
            s.place(b, u.clone());
        }
        s.propagate().then_some(s)
    }

    pub fn aborted(&self) -> bool {
        self.aborted
    }

    fn set(&mut self, t: usize, map: Map) -> bool {
        if self.assigned[t] {
            let cur = &self.assign[t];
            return self.gens.iter().all(|&g| cur[g] == map[g]);
        }
        if self.unit_points.contains(t) {
            // unit entries are fixed up front; anything else here is a conflict
            return false;
        }
        if let Some(Some(allowed)) = self.lists.get(t) {
            if !allowed.contains(&map) {
                return false;
            }
        }
        if let Some(w) = &self.space.invariant {
            let into_w = w.contains(t);
            if !(0..map.len()).all(|x| !(into_w || w.contains(x)) || w.contains(map[x] as usize)) {
                return false;
            }
        }
        self.place(t, map);
        true
    }

    fn place(&mut self, t: usize, map: Map) {
        self.assign[t] = map;
        self.assigned[t] = true;
        self.trail.push(t);
        self.queue.push(t);
    }

    fn check_pair(&mut self, y: usize, x: usize) -> bool {
        // s_y ∘ s_x must be the entry at s_y(x)
        let t = self.assign[y][x] as usize;
        if self.assigned[t] {
            let (sy, sx, st) = (&self.assign[y], &self.assign[x], &self.assign[t]);
            self.gens.iter().all(|&g| sy[sx[g] as usize] == st[g])
        } else {
            let comp: Map = self.assign[x].iter().map(|&v| self.assign[y][v as usize]).collect();
            self.set(t, comp)
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            let mut i = 0;
            while i < self.trail.len() {
                let y = self.trail[i];
                if !self.check_pair(y, x) || !self.check_pair(x, y) {
                    self.queue.clear();
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn undo(&mut self, keep: usize) {
        for t in self.trail.drain(keep..) {
            self.assigned[t] = false;
            self.assign[t] = Vec::new();
        }
        self.queue.clear();
    }

    fn try_assign(&mut self, b: usize, map: Map) -> bool {
        self.stats.nodes += 1;
        let ok = self.set(b, map) && self.propagate();
        if !ok {
            self.stats.pruned += 1;
        }
        ok
    }

    fn next_point(&self) -> Option<usize> {
        (0..self.assign.len()).find(|&b| !self.assigned[b])
    }

    /// Runs the search below the current node. `leaf` receives complete
    /// assignments and returns false to stop.
    pub fn run(&mut self, budget: &Budget, leaf: &mut dyn FnMut(&[Map]) -> bool) -> bool {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 64 == 0 && budget.expired() {
            self.aborted = true;
            return false;
        }
        let Some(b) = self.next_point() else {
            self.stats.leaves += 1;
            return leaf(&self.assign);
        };
        let keep = self.trail.len();
        let space = self.space;
        match &space.sources[b] {
            Source::List(l) => {
                for m in l {
                    if self.try_assign(b, m.clone()) && !self.run(budget, leaf) {
                        return false;
                    }
                    self.undo(keep);
                }
            }
            Source::Enumerate => {
                let mut it = Candidates::new(self, b, budget);
                while let Some(m) = it.next() {
                    if self.try_assign(b, m) && !self.run(budget, leaf) {
                        return false;
                    }
                    self.undo(keep);
                }
                if it.aborted {
                    self.aborted = true;
                    return false;
                }
            }
        }
        !self.aborted
    }

    /// First point without an entry.
    pub fn first_open_point(&self) -> Option<usize> {
        self.next_point()
    }

    /// Forgets the counters, keeping the assignment.
    pub fn reset_stats(&mut self) {
        self.stats = SearchStats::default();
    }

    /// Candidate maps for an open point, in the order the search tries them.
    pub fn candidates<'b>(&self, b: usize, budget: &'b Budget) -> Candidates<'s, 'a, 'b> {
        Candidates::new(self, b, budget)
    }

    /// Assigns `map` at an open point; used to split the top level of the
    /// tree into independent tasks.
    pub fn assign_root(&mut self, b: usize, map: Map) -> bool {
        self.try_assign(b, map)
    }
}

/// Lazy enumeration of the linear maps `f` with `f(m) = b` that avoid the
/// unit points in their image, vanish on no unit, and agree with every
/// known product `s_y ∘ f = s_{s_y(b)}`. Images of basis vectors are chosen
/// one at a time; each choice fixes `f` on a new layer of the span, which
/// is checked at once.
pub(crate) struct Candidates<'s, 'a, 'b> {
    space: &'s Space<'a>,
    basis: &'s Basis,
    budget: &'b Budget,
    b: usize,
    units: ElementSet,
    constraints: Vec<(Map, Map)>,
    map: Map,
    next_image: Vec<usize>,
    depth: usize,
    started: bool,
    done: bool,
    steps: u32,
    pub aborted: bool,
}

impl<'s, 'a, 'b> Candidates<'s, 'a, 'b> {
    fn new(solver: &Solver<'s, 'a>, b: usize, budget: &'b Budget) -> Self {
        let space = solver.space;
        let basis = space.basis.as_ref().expect("enumeration needs a basis");
        let constraints = solver
            .trail
            .iter()
            .filter_map(|&y| {
                let t = solver.assign[y][b] as usize;
                (y != 0 && solver.assigned[t]).then(|| (solver.assign[y].clone(), solver.assign[t].clone()))
            })
            .collect();
        Candidates {
            space,
            basis,
            budget,
            b,
            units: solver.unit_points.clone(),
            constraints,
            map: vec![0; space.group.order()],
            next_image: vec![0; basis.vectors.len()],
            depth: 0,
            started: false,
            done: false,
            steps: 0,
            aborted: false,
        }
    }

    fn ok(&self, x: usize, v: usize) -> bool {
        if self.units.contains(v) || (v == 0 && self.units.contains(x)) {
            return false;
        }
        if let Some(w) = &self.space.invariant {
            if (w.contains(x) || w.contains(self.b)) && !w.contains(v) {
                return false;
            }
        }
        self.constraints.iter().all(|(sy, st)| sy[v] == st[x])
    }

    /// Sets the image of basis vector `slot` and extends `f` to the new
    /// layer of the span.
    fn fill(&mut self, slot: usize, image: usize) -> bool {
        let g = self.space.group;
        let p = self.basis.p;
        let lo = if slot == 0 { 1 } else { p.pow(slot as u32) };
        let hi = p.pow(slot as u32 + 1);
        self.map[self.basis.vectors[slot]] = image as u16;
        for idx in lo..hi {
            let x = self.basis.layers[idx];
            let (parent, _) = self.basis.tree[x];
            let v = g.op(self.map[parent] as usize, image);
            if !self.ok(x, v) {
                return false;
            }
            self.map[x] = v as u16;
        }
        true
    }

    fn advance(&mut self) -> Option<Map> {
        if self.done {
            return None;
        }
        let slots = self.basis.vectors.len();
        let n = self.space.group.order();
        if !self.started {
            self.started = true;
            if !self.fill(0, self.b) {
                self.done = true;
                return None;
            }
            if slots == 1 {
                self.done = true;
                return Some(self.map.clone());
            }
            self.depth = 1;
            self.next_image[1] = 0;
        } else {
            self.depth = slots - 1;
        }
        loop {
            self.steps = self.steps.wrapping_add(1);
            if self.steps % 4096 == 0 && self.budget.expired() {
                self.aborted = true;
                self.done = true;
                return None;
            }
            let d = self.depth;
            if self.next_image[d] >= n {
                if d == 1 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            let image = self.next_image[d];
            self.next_image[d] += 1;
            if self.fill(d, image) {
                if d + 1 == slots {
                    return Some(self.map.clone());
                }
                self.depth = d + 1;
                self.next_image[d + 1] = 0;
            }
        }
    }
}

impl Iterator for Candidates<'_, '_, '_> {
    type Item = Map;

    fn next(&mut self) -> Option<Map> {
        self.advance()
    }
}
