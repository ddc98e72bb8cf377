//! Exact search over opposition graphs.
//!
//! Independent sets are searched as cliques of the complement graph; the
//! bound is a greedy sequential coloring of the candidate set in the
//! complement, i.e. a partition of the candidates into cliques of the
//! original graph. All searches are sequential and deterministic for a
//! fixed vertex order.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::certificate::{Certificate, CertificateKind};
use crate::graph::Graph;

/// Cooperative cancellation, polled every [`POLL_INTERVAL`] search nodes.
pub trait Interrupt {
    fn should_stop(&mut self) -> bool;
}

pub const POLL_INTERVAL: u64 = 1024;

/// Never interrupts.
pub struct Unlimited;

impl Interrupt for Unlimited {
    fn should_stop(&mut self) -> bool {
        false
    }
}

/// Stops after a fixed number of polls.
pub struct PollLimit(pub u64);

impl Interrupt for PollLimit {
    fn should_stop(&mut self) -> bool {
        if self.0 == 0 {
            return true;
        }
        self.0 -= 1;
        false
    }
}

impl<F: FnMut() -> bool> Interrupt for F {
    fn should_stop(&mut self) -> bool {
        self()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Outcome of an optimization. When `optimal` is false the search was
/// interrupted and `lower..=upper` brackets the true value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub lower: usize,
    pub upper: usize,
    pub optimal: bool,
    pub witness: Certificate,
    pub stats: SearchStats,
}

/// Complement adjacency rows (no loops).
fn complement_rows(g: &Graph) -> Vec<BitSet> {
    g.complement().rows().to_vec()
}

/// Greedy sequential coloring of `cand` where a color class is a set of
/// vertices pairwise non-adjacent in `conflict`. Returns vertices in color
/// order with their 1-based colors. Vertices of colors below `kmin` are
/// omitted from the output but still consume colors.
fn sequential_coloring(conflict: &[BitSet], cand: &BitSet, kmin: usize, order: &mut Vec<(usize, usize)>) -> usize {
    order.clear();
    let mut uncolored = cand.clone();
    let mut k = 0;
    while !uncolored.is_empty() {
        k += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            uncolored.remove(v);
            avail.remove(v);
            avail.difference_with(&conflict[v]);
            if k >= kmin {
                order.push((v, k));
            }
        }
    }
    k
}

/// Upper bound on the independence number of `g[cand]`: the number of
/// cliques in a greedy clique partition of `cand`.
pub fn clique_partition_bound(g: &Graph, cand: &BitSet) -> usize {
    let comp = complement_rows(g);
    let mut scratch = Vec::new();
    sequential_coloring(&comp, cand, usize::MAX, &mut scratch)
}

struct MisSearch<'a, I: Interrupt> {
    /// complement adjacency in relabeled order
    adj: Vec<BitSet>,
    best: usize,
    best_set: Vec<usize>,
    stack: Vec<usize>,
    stats: SearchStats,
    interrupt: &'a mut I,
    stopped: bool,
    scratch: Vec<Vec<(usize, usize)>>,
}

impl<I: Interrupt> MisSearch<'_, I> {
    fn expand(&mut self, depth: usize, mut cand: BitSet) {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(POLL_INTERVAL) && self.interrupt.should_stop() {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(Vec::new());
        }
        let mut order = core::mem::take(&mut self.scratch[depth]);
        // in the clique search graph, a color class must be an independent
        // set of that graph, so neighbours conflict
        let kmin = (self.best + 1).saturating_sub(self.stack.len());
        sequential_coloring(&self.adj, &cand, kmin.max(1), &mut order);
        for i in (0..order.len()).rev() {
            let (v, color) = order[i];
            if self.stack.len() + color <= self.best {
                break;
            }
            self.stack.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.stack.len() > self.best {
                    self.best = self.stack.len();
                    self.best_set = self.stack.clone();
                }
            } else {
                self.expand(depth + 1, next);
            }
            self.stack.pop();
            cand.remove(v);
            if self.stopped {
                break;
            }
        }
        self.scratch[depth] = order;
    }
}

/// Greedy maximal independent set taking vertices in ascending order.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let mut free = BitSet::full(g.order());
    let mut out = Vec::new();
    while let Some(v) = free.first() {
        out.push(v);
        free.remove(v);
        free.difference_with(g.neighbors(v));
    }
    out
}

/// Exact independence number by branch and bound.
///
/// With `hint_lower = Some(k)` the search only looks for sets of size at
/// least `k`; if none exists it falls back to an unrestricted search. The
/// witness is self-verified before returning.
pub fn max_independent_set<I: Interrupt>(g: &Graph, hint_lower: Option<usize>, interrupt: &mut I) -> SolveResult {
    let n = g.order();
    // clique search in the complement; "conflict" for the coloring is
    // adjacency in the complement
    let comp = complement_rows(g);
    // vertices ordered by non-increasing complement degree, ties by id
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (core::cmp::Reverse(comp[v].count()), v));
    let mut inv = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let adj: Vec<BitSet> = perm.iter().map(|&old| BitSet::from_indices(n, comp[old].iter().map(|u| inv[u]))).collect();

    let greedy = greedy_independent_set(g);
    let root_bound = {
        let mut scratch = Vec::new();
        sequential_coloring(&adj, &BitSet::full(n), 1, &mut scratch)
    };

    let run = |start_best: usize, interrupt: &mut I| {
        let mut s = MisSearch {
            adj: adj.clone(),
            best: start_best,
            best_set: Vec::new(),
            stack: Vec::new(),
            stats: SearchStats::default(),
            interrupt,
            stopped: false,
            scratch: Vec::new(),
        };
        if n > 0 {
            s.expand(0, BitSet::full(n));
        }
        (s.best_set, s.stats.nodes, s.stopped)
    };

    let (mut set, mut nodes, mut stopped) = match hint_lower.filter(|&h| h > greedy.len()) {
        Some(h) => run(h - 1, interrupt),
        None => run(greedy.len(), interrupt),
    };
    if set.is_empty() && !stopped && hint_lower.is_some_and(|h| h > greedy.len()) {
        // the hint was too high: nothing of that size exists
        let (s2, n2, st2) = run(greedy.len(), interrupt);
        set = s2;
        nodes += n2;
        stopped = st2;
    }
    let witness_set: Vec<usize> = if set.is_empty() { greedy } else { set.iter().map(|&v| perm[v]).collect() };
    let value = witness_set.len();
    let witness = Certificate::independent_set("max_independent_set", g, witness_set);
    witness.verify_unbound(g).expect("search returned a dependent set");
    SolveResult {
        value,
        lower: value,
        upper: if stopped { root_bound.max(value) } else { value },
        optimal: !stopped,
        witness,
        stats: SearchStats { nodes },
    }
}

/// Result of a maximal independent set enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub complete: bool,
    pub stats: SearchStats,
}

struct Enumerator<'a, I: Interrupt, F: FnMut(&[usize])> {
    comp: Vec<BitSet>,
    min_size: usize,
    stack: Vec<usize>,
    emit: F,
    stats: SearchStats,
    interrupt: &'a mut I,
    stopped: bool,
    scratch: Vec<(usize, usize)>,
}

impl<I: Interrupt, F: FnMut(&[usize])> Enumerator<'_, I, F> {
    fn bk(&mut self, cand: BitSet, mut excl: BitSet) {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(POLL_INTERVAL) && self.interrupt.should_stop() {
            self.stopped = true;
        }
        if self.stopped {
            return;
        }
        if cand.is_empty() {
            if excl.is_empty() && self.stack.len() >= self.min_size {
                let mut out = self.stack.clone();
                out.sort_unstable();
                (self.emit)(&out);
            }
            return;
        }
        if self.min_size > self.stack.len() {
            let need = self.min_size - self.stack.len();
            if cand.count() < need || sequential_coloring(&self.comp, &cand, usize::MAX, &mut self.scratch) < need {
                return;
            }
        }
        // Tomita pivot: maximise |cand ∩ N(u)|, lowest id on ties
        let mut pivot = usize::MAX;
        let mut best = 0usize;
        for u in cand.iter().chain(excl.iter()) {
            let c = cand.intersection_count(&self.comp[u]);
            if pivot == usize::MAX || c > best {
                pivot = u;
                best = c;
            }
        }
        let branch = cand.difference(&self.comp[pivot]);
        let mut cand = cand;
        for v in branch.iter() {
            self.stack.push(v);
            self.bk(cand.intersection(&self.comp[v]), excl.intersection(&self.comp[v]));
            self.stack.pop();
            cand.remove(v);
            excl.insert(v);
            if self.stopped {
                return;
            }
        }
    }
}

/// Calls `emit` once for every maximal independent set with at least
/// `min_size` vertices (sorted ascending). Pruning is exact: a branch is cut
/// only when a clique partition of its candidates proves it cannot reach
/// `min_size`.
pub fn enumerate_maximal_independent_sets<I: Interrupt>(
    g: &Graph,
    min_size: usize,
    interrupt: &mut I,
    emit: impl FnMut(&[usize]),
) -> Enumeration {
    let n = g.order();
    let mut e = Enumerator {
        comp: complement_rows(g),
        min_size,
        stack: Vec::new(),
        emit,
        stats: SearchStats::default(),
        interrupt,
        stopped: false,
        scratch: Vec::new(),
    };
    if n == 0 {
        if min_size == 0 {
            (e.emit)(&[]);
        }
    } else {
        e.bk(BitSet::full(n), BitSet::new(n));
    }
    Enumeration { complete: !e.stopped, stats: e.stats }
}

/// Outcome of a k-colorability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Yes(Certificate),
    No,
    Unknown,
}

/// Greedy clique: repeatedly add the lowest-id common neighbour.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = g.neighbors(start).clone();
        while let Some(v) =
            cand.iter().max_by_key(|&v| (cand.intersection_count(g.neighbors(v)), core::cmp::Reverse(v)))
        {
            clique.push(v);
            cand.intersect_with(g.neighbors(v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

struct Dsatur<'a, I: Interrupt> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// per vertex, number of neighbours with each color
    counts: Vec<u32>,
    saturation: Vec<usize>,
    uncolored_degree: Vec<usize>,
    colored: usize,
    stats: SearchStats,
    interrupt: &'a mut I,
    stopped: bool,
}

const NONE: usize = usize::MAX;

impl<I: Interrupt> Dsatur<'_, I> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.colored += 1;
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[u * self.k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
            self.uncolored_degree[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        self.colored -= 1;
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
            self.uncolored_degree[u] += 1;
        }
    }

    fn pick(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            if best == NONE
                || (self.saturation[v], self.uncolored_degree[v]) > (self.saturation[best], self.uncolored_degree[best])
            {
                best = v;
            }
        }
        best
    }

    fn search(&mut self, used: usize) -> bool {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(POLL_INTERVAL) && self.interrupt.should_stop() {
            self.stopped = true;
        }
        if self.stopped {
            return false;
        }
        if self.colored == self.color.len() {
            return true;
        }
        let v = self.pick();
        if self.saturation[v] >= self.k {
            return false;
        }
        // a fresh color is only ever the next unused one
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(used.max(c + 1)) {
                return true;
            }
            self.unassign(v);
            if self.stopped {
                return false;
            }
        }
        false
    }
}

/// Decides whether `g` has a proper coloring with `k` colors by DSATUR
/// backtracking. A greedy clique is precolored with colors `0..w`.
pub fn k_colorable<I: Interrupt>(g: &Graph, k: usize, interrupt: &mut I) -> (Colorability, SearchStats) {
    let n = g.order();
    if n == 0 {
        return (
            Colorability::Yes(Certificate::new(CertificateKind::ProperColoring, "k_colorable", g, Vec::new())),
            SearchStats::default(),
        );
    }
    if k == 0 {
        return (Colorability::No, SearchStats::default());
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return (Colorability::No, SearchStats::default());
    }
    let mut d = Dsatur {
        g,
        k,
        color: vec![NONE; n],
        counts: vec![0; n * k],
        saturation: vec![0; n],
        uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
        colored: 0,
        stats: SearchStats::default(),
        interrupt,
        stopped: false,
    };
    for (c, &v) in clique.iter().enumerate() {
        d.assign(v, c);
    }
    let found = d.search(clique.len());
    let stats = d.stats;
    if found {
        let mut classes = vec![Vec::new(); k];
        for v in 0..n {
            classes[d.color[v]].push(v);
        }
        classes.retain(|c| !c.is_empty());
        let cert = Certificate::new(CertificateKind::ProperColoring, "k_colorable", g, classes);
        cert.verify_unbound(g).expect("dsatur produced an improper coloring");
        (Colorability::Yes(cert), stats)
    } else if d.stopped {
        (Colorability::Unknown, stats)
    } else {
        (Colorability::No, stats)
    }
}

/// DSATUR greedy coloring (no backtracking).
pub fn greedy_coloring(g: &Graph) -> Certificate {
    let n = g.order();
    let mut color = vec![NONE; n];
    let mut sat: Vec<BitSet> = vec![BitSet::new(n.max(1)); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by_key(|&v| (sat[v].count(), g.degree(v), core::cmp::Reverse(v)))
            .unwrap();
        let c = (0..n).find(|&c| !sat[v].contains(c)).unwrap();
        color[v] = c;
        for u in g.neighbors(v).iter() {
            sat[u].insert(c);
        }
    }
    let k = color.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); k];
    for v in 0..n {
        classes[color[v]].push(v);
    }
    Certificate::new(CertificateKind::ProperColoring, "dsatur_greedy", g, classes)
}

/// Why the lower end of a chromatic bracket holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundReason {
    /// `ceil(n / alpha_upper)`.
    Fractional {
        alpha_upper: usize,
    },
    Clique(Vec<usize>),
    /// Supplied by the caller.
    Hint,
    /// Exhaustive search refuted `value - 1` colors.
    ExhaustedSearch,
    /// `value - 1` colors would need a partition into independent sets of
    /// size `alpha`, and none exists among the enumerated maximum sets.
    NoExactCover {
        alpha: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub lower: usize,
    pub upper: usize,
    pub lower_reason: LowerBoundReason,
    pub witness: Certificate,
    pub stats: SearchStats,
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Chromatic number bracketed by hints and closed by colorability search.
///
/// `ub_hint` must be a proper coloring of `g`; `alpha_upper` is any upper
/// bound on the independence number.
pub fn chromatic_number<I: Interrupt>(
    g: &Graph,
    ub_hint: Option<&Certificate>,
    lb_hint: Option<usize>,
    alpha_upper: Option<usize>,
    interrupt: &mut I,
) -> ChromaticResult {
    let n = g.order();
    let mut witness = greedy_coloring(g);
    if let Some(h) = ub_hint {
        if h.kind == CertificateKind::ProperColoring && h.verify_unbound(g).is_ok() && h.len() < witness.len() {
            witness = h.clone();
        }
    }
    let clique = greedy_clique(g);
    let mut lower = clique.len();
    let mut lower_reason = LowerBoundReason::Clique(clique);
    if let Some(a) = alpha_upper.filter(|&a| a > 0) {
        let frac = n.div_ceil(a);
        if frac >= lower {
            lower = frac;
            lower_reason = LowerBoundReason::Fractional { alpha_upper: a };
        }
    }
    if let Some(h) = lb_hint {
        if h > lower {
            lower = h;
            lower_reason = LowerBoundReason::Hint;
        }
    }
    let mut stats = SearchStats::default();
    if let Some(a) = alpha_upper.filter(|&a| a > 0 && lower * a == n && lower < witness.len()) {
        let (res, st) = color_by_exact_cover(g, a, interrupt);
        stats.nodes += st.nodes;
        match res {
            Cover::Found(classes) => {
                let sets = classes.iter().map(|c| c.to_vec()).collect();
                witness = Certificate::new(CertificateKind::ProperColoring, "exact_cover_coloring", g, sets);
            }
            Cover::Impossible => {
                lower += 1;
                lower_reason = LowerBoundReason::NoExactCover { alpha: a };
            }
            Cover::Unknown => {}
        }
    }
    while lower < witness.len() {
        let (res, st) = k_colorable(g, lower, interrupt);
        stats.nodes += st.nodes;
        match res {
            Colorability::Yes(c) => {
                witness = c;
                break;
            }
            Colorability::No => {
                lower += 1;
                lower_reason = LowerBoundReason::ExhaustedSearch;
            }
            Colorability::Unknown => break,
        }
    }
    ChromaticResult { lower, upper: witness.len(), lower_reason, witness, stats }
}

/// Greedy partition into cliques: each clique starts at the lowest
/// uncovered vertex and grows by the lowest uncovered common neighbour.
pub fn greedy_clique_cover(g: &Graph) -> Certificate {
    let n = g.order();
    let mut uncovered = BitSet::full(n);
    let mut cliques = Vec::new();
    while let Some(v) = uncovered.first() {
        let mut clique = vec![v];
        uncovered.remove(v);
        let mut cand = uncovered.intersection(g.neighbors(v));
        while let Some(u) = cand.first() {
            clique.push(u);
            uncovered.remove(u);
            cand.remove(u);
            cand.intersect_with(g.neighbors(u));
        }
        cliques.push(clique);
    }
    Certificate::new(CertificateKind::CliqueCover, "greedy_clique_cover", g, cliques)
}

/// Outcome of an exact cover search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cover<T = Vec<usize>> {
    /// Indices into the candidate list, ascending.
    Found(T),
    Impossible,
    Unknown,
}

/// Finds a subfamily of `sets` partitioning `0..n`. Branches on the
/// uncovered vertex with the fewest compatible sets (lowest id on ties) and
/// tries sets in index order.
pub fn exact_cover<I: Interrupt>(n: usize, sets: &[BitSet], interrupt: &mut I) -> (Cover, SearchStats) {
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            containing[v].push(i);
        }
    }
    struct State<'a, I: Interrupt> {
        sets: &'a [BitSet],
        containing: Vec<Vec<usize>>,
        chosen: Vec<usize>,
        stats: SearchStats,
        interrupt: &'a mut I,
        stopped: bool,
    }
    fn rec<I: Interrupt>(st: &mut State<'_, I>, covered: &BitSet) -> bool {
        st.stats.nodes += 1;
        if st.stats.nodes.is_multiple_of(POLL_INTERVAL) && st.interrupt.should_stop() {
            st.stopped = true;
        }
        if st.stopped {
            return false;
        }
        let uncovered = covered.complement();
        let mut pick = None;
        let mut fewest = usize::MAX;
        for v in uncovered.iter() {
            let c = st.containing[v].iter().filter(|&&i| st.sets[i].is_disjoint(covered)).count();
            if c < fewest {
                fewest = c;
                pick = Some(v);
                if c == 0 {
                    break;
                }
            }
        }
        let Some(v) = pick else { return true };
        if fewest == 0 {
            return false;
        }
        for k in 0..st.containing[v].len() {
            let i = st.containing[v][k];
            if !st.sets[i].is_disjoint(covered) {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(&st.sets[i]);
            st.chosen.push(i);
            if rec(st, &next) {
                return true;
            }
            st.chosen.pop();
            if st.stopped {
                return false;
            }
        }
        false
    }
    let mut st =
        State { sets, containing, chosen: Vec::new(), stats: SearchStats::default(), interrupt, stopped: false };
    let found = rec(&mut st, &BitSet::new(n));
    let stats = st.stats;
    if found {
        let mut c = st.chosen;
        c.sort_unstable();
        (Cover::Found(c), stats)
    } else if st.stopped {
        (Cover::Unknown, stats)
    } else {
        (Cover::Impossible, stats)
    }
}

/// Partition of the vertices into independent sets of size `alpha`, found
/// as an exact cover by the maximal independent sets of that size. Returns
/// `Unknown` if some independent set is larger than `alpha`.
fn color_by_exact_cover<I: Interrupt>(g: &Graph, alpha: usize, interrupt: &mut I) -> (Cover<Vec<BitSet>>, SearchStats) {
    let n = g.order();
    let mut sets: Vec<BitSet> = Vec::new();
    let mut too_large = false;
    let e = enumerate_maximal_independent_sets(g, alpha, interrupt, |s| {
        too_large |= s.len() > alpha;
        sets.push(BitSet::from_indices(n, s.iter().copied()));
    });
    if !e.complete || too_large {
        return (Cover::Unknown, e.stats);
    }
    let (res, mut stats) = exact_cover(n, &sets, interrupt);
    stats.nodes += e.stats.nodes;
    let res = match res {
        Cover::Found(idx) => Cover::Found(idx.into_iter().map(|i| sets[i].clone()).collect()),
        Cover::Impossible => Cover::Impossible,
        Cover::Unknown => Cover::Unknown,
    };
    (res, stats)
}

/// Searches for a partition of the vertices into maximum cliques of size
/// `omega`. Such a partition with `n / omega` parts bounds the independence
/// number by `n / omega` without search.
pub fn perfect_clique_cover<I: Interrupt>(
    g: &Graph,
    omega: usize,
    interrupt: &mut I,
) -> (Option<Certificate>, bool, SearchStats) {
    let n = g.order();
    if omega == 0 || !n.is_multiple_of(omega) {
        return (None, true, SearchStats::default());
    }
    let comp = g.complement();
    let mut cliques: Vec<BitSet> = Vec::new();
    let e = enumerate_maximal_independent_sets(&comp, omega, interrupt, |s| {
        if s.len() == omega {
            cliques.push(BitSet::from_indices(n, s.iter().copied()));
        }
    });
    if !e.complete {
        return (None, false, e.stats);
    }
    let (res, mut stats) = exact_cover(n, &cliques, interrupt);
    stats.nodes += e.stats.nodes;
    match res {
        Cover::Found(idx) => {
            let sets = idx.iter().map(|&i| cliques[i].to_vec()).collect();
            let cert = Certificate::new(CertificateKind::CliqueCover, "perfect_clique_cover", g, sets);
            cert.verify_unbound(g).expect("exact cover of cliques");
            (Some(cert), true, stats)
        }
        Cover::Impossible => (None, true, stats),
        Cover::Unknown => (None, false, stats),
    }
}
