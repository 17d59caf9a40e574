//! Intersection graphs and exact chromatic certificates.
//!
//! The k-colouring decision procedure is a DSATUR-ordered branch and bound:
//! components are solved independently, a greedily found maximal clique is
//! pre-coloured, and a fresh colour may only be opened as the next unused
//! index, so no two colourings that differ by a renaming are explored.
//!
//! After every assignment the uncoloured vertices are split into connected
//! components again. A component that has no colouring is remembered
//! together with the colours on its boundary (renamed to first-use order),
//! and the same sub-problem is rejected immediately when it comes back.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::geometry::{segments_intersect, Role, Segment};

/// Triangle checks switch from the plain triple loop to neighbourhood
/// intersection above this many vertices.
pub const TRIPLE_LOOP_LIMIT: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("budget is not usable")]
    InvalidBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub segment_id: usize,
    pub role: Role,
    pub path: Vec<u32>,
}

/// Undirected simple graph stored as a symmetric bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    n: usize,
    labels: Vec<VertexLabel>,
    rows: Vec<Vec<u64>>,
}

impl IntersectionGraph {
    pub fn empty(n: usize) -> Self {
        let labels = (0..n).map(|i| VertexLabel { segment_id: i, role: Role::Base, path: Vec::new() }).collect();
        IntersectionGraph { n, labels, rows: vec![vec![0; n.div_ceil(64)]; n] }
    }

    /// Panics on out-of-range endpoints or loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = IntersectionGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.rows[u][v / 64] |= 1 << (v % 64);
        self.rows[v][u / 64] |= 1 << (u % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter().enumerate().flat_map(|(block, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(block * 64 + tz)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Induced subgraph on `keep` (in that order).
    pub fn induced(&self, keep: &[usize]) -> IntersectionGraph {
        let mut g = IntersectionGraph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            g.labels[i] = self.labels[u].clone();
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn without_vertex(&self, v: usize) -> IntersectionGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> IntersectionGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = IntersectionGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        for (i, label) in self.labels.iter().enumerate() {
            g.labels[perm[i]] = label.clone();
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn intersection_graph(segments: &[Segment]) -> IntersectionGraph {
    let mut g = IntersectionGraph::empty(segments.len());
    for (i, s) in segments.iter().enumerate() {
        g.labels[i] = VertexLabel { segment_id: s.id(), role: s.role(), path: s.path().to_vec() };
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if segments_intersect(&segments[i], &segments[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `Err` carries a triangle `[u, v, w]` with `u < v < w`.
pub fn is_triangle_free(g: &IntersectionGraph) -> Result<(), [usize; 3]> {
    if g.n <= TRIPLE_LOOP_LIMIT {
        triangle_by_triples(g)
    } else {
        triangle_by_neighborhoods(g)
    }
}

/// Exhaustive check over all triples.
pub fn triangle_by_triples(g: &IntersectionGraph) -> Result<(), [usize; 3]> {
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !g.adjacent(u, v) {
                continue;
            }
            for w in v + 1..g.n {
                if g.adjacent(u, w) && g.adjacent(v, w) {
                    return Err([u, v, w]);
                }
            }
        }
    }
    Ok(())
}

/// For every edge `uv`, intersects the neighbourhoods of `u` and `v`.
pub fn triangle_by_neighborhoods(g: &IntersectionGraph) -> Result<(), [usize; 3]> {
    let mut best: Option<[usize; 3]> = None;
    for (u, v) in g.edges() {
        for (block, (a, b)) in g.rows[u].iter().zip(&g.rows[v]).enumerate() {
            let common = a & b;
            if common != 0 {
                let w = block * 64 + common.trailing_zeros() as usize;
                let mut t = [u, v, w];
                t.sort_unstable();
                if best.is_none_or(|b| t < b) {
                    best = Some(t);
                }
                break;
            }
        }
    }
    match best {
        Some(t) => Err(t),
        None => Ok(()),
    }
}

/// A colouring with colours `0..palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    palette: usize,
}

impl Coloring {
    /// Panics if a colour is outside the palette.
    pub fn new(colors: Vec<usize>, palette: usize) -> Self {
        assert!(colors.iter().all(|&c| c < palette), "colour outside palette");
        Coloring { colors, palette }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn used_colors(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    pub fn is_proper_for(&self, g: &IntersectionGraph) -> bool {
        self.colors.len() == g.n && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Search limit consulted once per branch-and-bound node.
pub trait Budget {
    /// Returns true once the search must stop.
    fn exhausted(&mut self) -> bool;

    fn is_valid(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }
}

/// Allows a fixed number of search nodes.
#[derive(Debug, Clone, Copy)]
pub struct NodeLimit {
    remaining: u64,
}

impl NodeLimit {
    pub fn new(nodes: u64) -> Self {
        NodeLimit { remaining: nodes }
    }
}

impl Budget for NodeLimit {
    fn exhausted(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.remaining -= 1;
        false
    }

    fn is_valid(&self) -> bool {
        self.remaining > 0
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    fn exhausted(&mut self) -> bool {
        (**self).exhausted()
    }

    fn is_valid(&self) -> bool {
        (**self).is_valid()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Yes(Coloring),
    No,
    Unknown,
}

/// Decides whether `g` has a proper colouring with `k` colours.
///
/// `Yes` colourings are checked before being returned; `No` means the search
/// tree was exhausted.
pub fn is_k_colorable<B: Budget>(g: &IntersectionGraph, k: usize, mut budget: B) -> Result<Colorability, GraphError> {
    if !budget.is_valid() {
        return Err(GraphError::InvalidBudget);
    }
    let mut colors = vec![0usize; g.n];
    for comp in g.components() {
        let sub = g.induced(&comp);
        match ComponentSearch::new(&sub, k).run(&mut budget) {
            Outcome::Found(local) => {
                for (i, &v) in comp.iter().enumerate() {
                    colors[v] = local[i];
                }
            }
            Outcome::Exhausted => return Ok(Colorability::No),
            Outcome::OutOfBudget => return Ok(Colorability::Unknown),
        }
    }
    let coloring = Coloring::new(colors, k.max(1));
    if !coloring.is_proper_for(g) {
        // A bug in the search, never a property of the input.
        panic!("k-colouring search produced an improper colouring");
    }
    Ok(Colorability::Yes(coloring))
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

const UNCOLORED: usize = usize::MAX;

/// Branch and bound for one connected graph.
///
/// After every assignment the uncoloured vertices of the current component
/// are split into connected components, which are solved independently.
/// Refuted components are remembered together with the colour pattern on
/// their coloured neighbours (up to renaming), since that pattern alone
/// decides whether the component can be completed.
struct ComponentSearch {
    k: usize,
    adj: Vec<Vec<usize>>,
    color: Vec<usize>,
    // neighbour colour counts, row-major n × k
    counts: Vec<u32>,
    saturation: Vec<usize>,
    free_degree: Vec<usize>,
    // vertices currently holding each colour
    used: Vec<usize>,
    refuted: BTreeSet<Box<[u32]>>,
    // scratch marks for component splitting
    mark: Vec<u32>,
    epoch: u32,
}

impl ComponentSearch {
    fn new(g: &IntersectionGraph, k: usize) -> Self {
        let adj: Vec<Vec<usize>> = (0..g.n).map(|v| g.neighbors(v).collect()).collect();
        let free_degree = adj.iter().map(Vec::len).collect();
        ComponentSearch {
            k,
            adj,
            color: vec![UNCOLORED; g.n],
            counts: vec![0; g.n * k],
            saturation: vec![0; g.n],
            free_degree,
            used: vec![0; k],
            refuted: BTreeSet::new(),
            mark: vec![0; g.n],
            epoch: 0,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.used[c] += 1;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            let slot = &mut self.counts[u * self.k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
            self.free_degree[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        self.used[c] -= 1;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
            self.free_degree[u] += 1;
        }
    }

    /// Greedy maximal clique seeded at a maximum-degree vertex.
    fn seed_clique(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.adj[b].len().cmp(&self.adj[a].len()).then(a.cmp(&b)));
        let mut clique: Vec<usize> = Vec::new();
        for v in order {
            if clique.iter().all(|&u| self.adj[v].binary_search(&u).is_ok()) {
                clique.push(v);
            }
        }
        clique
    }

    fn run<B: Budget>(mut self, budget: &mut B) -> Outcome {
        let n = self.adj.len();
        if n == 0 {
            return Outcome::Found(Vec::new());
        }
        let clique = self.seed_clique();
        if clique.len() > self.k {
            return Outcome::Exhausted;
        }
        for (c, &v) in clique.iter().enumerate() {
            self.assign(v, c);
        }
        let rest: Vec<usize> = (0..n).filter(|&v| self.color[v] == UNCOLORED).collect();
        let parts = self.split(&rest);
        match self.solve_all(parts, budget) {
            Some(true) => Outcome::Found(self.color),
            Some(false) => Outcome::Exhausted,
            None => Outcome::OutOfBudget,
        }
    }

    /// Connected components of the subgraph induced by `vertices`.
    fn split(&mut self, vertices: &[usize]) -> Vec<Vec<usize>> {
        self.epoch += 1;
        let (inside, seen) = (self.epoch, self.epoch + 1);
        self.epoch += 1;
        for &v in vertices {
            self.mark[v] = inside;
        }
        let mut out = Vec::new();
        for &start in vertices {
            if self.mark[start] != inside {
                continue;
            }
            self.mark[start] = seen;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for j in 0..self.adj[u].len() {
                    let w = self.adj[u][j];
                    if self.mark[w] == inside {
                        self.mark[w] = seen;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_by_key(Vec::len);
        out
    }

    /// Component vertices, then the boundary colour pattern with colours
    /// renamed in order of first appearance.
    fn key(&self, comp: &[usize]) -> Box<[u32]> {
        let mut boundary: Vec<usize> =
            comp.iter().flat_map(|&v| self.adj[v].iter().copied()).filter(|&u| self.color[u] != UNCOLORED).collect();
        boundary.sort_unstable();
        boundary.dedup();
        let mut rename = vec![u32::MAX; self.k];
        let mut next = 0;
        let mut key: Vec<u32> = comp.iter().map(|&v| v as u32).collect();
        key.push(u32::MAX);
        for u in boundary {
            let c = self.color[u];
            if rename[c] == u32::MAX {
                rename[c] = next;
                next += 1;
            }
            key.push(u as u32);
            key.push(rename[c]);
        }
        key.into_boxed_slice()
    }

    fn select(&self, comp: &[usize]) -> usize {
        let mut best = comp[0];
        for &v in &comp[1..] {
            if (self.saturation[v], self.free_degree[v]) > (self.saturation[best], self.free_degree[best]) {
                best = v;
            }
        }
        best
    }

    /// Solves independent components; on failure every vertex they
    /// coloured is released again.
    fn solve_all<B: Budget>(&mut self, comps: Vec<Vec<usize>>, budget: &mut B) -> Option<bool> {
        if comps.iter().any(|c| self.refuted.contains(&self.key(c))) {
            return Some(false);
        }
        for (i, comp) in comps.iter().enumerate() {
            match self.solve(comp, budget) {
                Some(true) => {}
                other => {
                    for done in &comps[..i] {
                        for &v in done {
                            self.unassign(v);
                        }
                    }
                    return other;
                }
            }
        }
        Some(true)
    }

    /// `Some(true)` leaves `comp` coloured, `Some(false)` means no
    /// completion exists, `None` means the budget ran out.
    fn solve<B: Budget>(&mut self, comp: &[usize], budget: &mut B) -> Option<bool> {
        if budget.exhausted() {
            return None;
        }
        let key = self.key(comp);
        if self.refuted.contains(&key) {
            return Some(false);
        }
        let v = self.select(comp);
        let rest: Vec<usize> = comp.iter().copied().filter(|&u| u != v).collect();
        let mut fresh_tried = false;
        for c in 0..self.k {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            // unused colours are interchangeable
            if self.used[c] == 0 {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            self.assign(v, c);
            let parts = self.split(&rest);
            match self.solve_all(parts, budget) {
                Some(true) => return Some(true),
                Some(false) => self.unassign(v),
                None => {
                    self.unassign(v);
                    return None;
                }
            }
        }
        self.refuted.insert(key);
        Some(false)
    }
}

/// DSATUR greedy colouring; an upper bound on the chromatic number.
pub fn greedy_coloring(g: &IntersectionGraph) -> Coloring {
    let n = g.n;
    let mut search = ComponentSearch::new(g, n.max(1));
    let mut opened = 0;
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let v = search.select(&remaining);
        let c = (0..n).find(|&c| search.counts[v * search.k + c] == 0).expect("n colours always suffice");
        search.assign(v, c);
        opened = opened.max(c + 1);
        remaining.retain(|&u| u != v);
    }
    Coloring::new(search.color, opened.max(1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chromatic {
    Exact {
        chi: usize,
        coloring: Coloring,
    },
    /// The budget ran out; `lower <= chi <= upper` is proven.
    Bracket {
        lower: usize,
        upper: usize,
    },
}

impl Chromatic {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Chromatic::Exact { chi, .. } => Some(*chi),
            Chromatic::Bracket { .. } => None,
        }
    }
}

pub fn chromatic_number<B: Budget>(g: &IntersectionGraph, mut budget: B) -> Result<Chromatic, GraphError> {
    if !budget.is_valid() {
        return Err(GraphError::InvalidBudget);
    }
    if g.n == 0 {
        return Ok(Chromatic::Exact { chi: 0, coloring: Coloring::new(Vec::new(), 1) });
    }
    let lower = g
        .components()
        .iter()
        .map(|comp| ComponentSearch::new(&g.induced(comp), 1).seed_clique().len())
        .max()
        .unwrap_or(1);
    let mut best = greedy_coloring(g);
    let mut upper = best.used_colors();
    while lower < upper {
        match is_k_colorable(g, upper - 1, &mut budget)? {
            Colorability::Yes(c) => {
                upper = c.used_colors();
                best = Coloring::new(c.colors().to_vec(), upper);
            }
            Colorability::No => break,
            Colorability::Unknown => return Ok(Chromatic::Bracket { lower, upper }),
        }
    }
    Ok(Chromatic::Exact { chi: upper, coloring: best })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionVerdict {
    Colorable,
    NotColorable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub k: usize,
    /// Verdict for `g - v` with `k` colours, indexed by `v`.
    pub deletions: Vec<DeletionVerdict>,
}

impl CriticalityReport {
    /// `None` if some deletion ran out of budget and none failed.
    pub fn critical(&self) -> Option<bool> {
        if self.deletions.contains(&DeletionVerdict::NotColorable) {
            Some(false)
        } else if self.deletions.contains(&DeletionVerdict::Unknown) {
            None
        } else {
            Some(true)
        }
    }
}

/// Checks that every vertex-deleted subgraph of `g` is `k`-colourable.
/// Assumes `chi(g) = k + 1` has been established separately.
pub fn is_critical<B: Budget>(g: &IntersectionGraph, k: usize, mut budget: B) -> Result<CriticalityReport, GraphError> {
    if !budget.is_valid() {
        return Err(GraphError::InvalidBudget);
    }
    let mut deletions = Vec::with_capacity(g.n);
    for v in 0..g.n {
        let verdict = match is_k_colorable(&g.without_vertex(v), k, &mut budget)? {
            Colorability::Yes(_) => DeletionVerdict::Colorable,
            Colorability::No => DeletionVerdict::NotColorable,
            Colorability::Unknown => DeletionVerdict::Unknown,
        };
        deletions.push(verdict);
    }
    Ok(CriticalityReport { k, deletions })
}

/// DIMACS edge format: `p edge n m`, then `e u v` (1-based, `u < v`) in
/// lexicographic order. Every line ends with a newline.
pub fn export_dimacs(g: &IntersectionGraph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n, edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
