//! Independent re-verification of a construction.
//!
//! Nothing here trusts the builder's bookkeeping: pierced sets, roots and
//! intersections are all recomputed from raw coordinates.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use dashu_int::UBig;

use crate::construction::{augment_tilde, build, sizes, Construction, ConstructionError};
use crate::geometry::{
    classify_against_rect, crossing_point, meets_left_edge, min_x_in_rect, orientation, rect_interior_disjoint,
    segment_meets_rect, segments_intersect, Orientation, Pierce, Point, Rect, Segment,
};
use crate::graph::{intersection_graph, IntersectionGraph};

/// Largest family for which the colouring property is checked exhaustively.
pub const LEMMA_MAX_SEGMENTS: usize = 13;

/// Levels for which `verify_size_bounds` also builds the augmented family.
const BUILT_TILDE_MAX_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("family has {0} segments; exhaustive check supports at most {LEMMA_MAX_SEGMENTS}")]
    TooLarge(usize),
    #[error("level must be at least 1, got {0}")]
    InvalidK(usize),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, witness: witness.into() });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One `CHECK <name> PASS|FAIL <witness>` line per check.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "CHECK {} {} {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.witness)?;
        }
        Ok(())
    }
}

/// Collects violations of one named condition; reports the first witness
/// and the total count.
struct Tally {
    name: &'static str,
    count: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, count: 0, first: None }
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        if self.first.is_none() {
            self.first = Some(witness());
        }
        self.count += 1;
    }

    fn finish(self, report: &mut VerificationReport, checked: &str) {
        match self.first {
            None => report.push(self.name, true, checked),
            Some(w) => report.push(self.name, false, format!("{w} ({} violations)", self.count)),
        }
    }
}

fn seg_ref(s: &Segment) -> String {
    format!("segment={}", s.id())
}

/// Probe conditions, pierced-list bookkeeping and root maximality.
pub fn verify_probe_axioms(c: &Construction) -> VerificationReport {
    let mut report = VerificationReport::new();
    let r = &c.rect;
    let mut placement = Tally::new("probe.placement");
    let mut left = Tally::new("probe.left-boundary");
    let mut endpoint = Tally::new("probe.endpoint-inside");
    let mut independent = Tally::new("probe.pierced-independent");
    let mut crossing = Tally::new("probe.pierced-cross-both-edges");
    let mut bookkeeping = Tally::new("probe.pierced-list");
    let mut root_shape = Tally::new("root.shape");
    let mut root_disjoint = Tally::new("root.interior-disjoint");
    let mut root_max = Tally::new("root.maximal");
    let mut contained = Tally::new("segments.inside-rect");

    for s in &c.segments {
        let inside = |pt: &Point| r.x0() < &pt.x && &pt.x < r.x1() && r.y0() < &pt.y && &pt.y < r.y1();
        if !(inside(s.p()) && inside(s.q())) {
            contained.fail(|| seg_ref(s));
        }
    }

    for probe in &c.probes {
        let pr = &probe.rect;
        let pid = probe.id;
        let placed = r.x0() < pr.x0()
            && pr.x0() < r.x1()
            && pr.x1() == r.x1()
            && r.y0() < pr.y0()
            && pr.y0() < pr.y1()
            && pr.y1() < r.y1();
        if !placed {
            placement.fail(|| format!("probe={pid}"));
        }

        let mut meeting: Vec<&Segment> = Vec::new();
        let mut pierced: Vec<usize> = Vec::new();
        for s in &c.segments {
            if !segment_meets_rect(s, pr) {
                continue;
            }
            meeting.push(s);
            if meets_left_edge(s, pr) {
                left.fail(|| format!("probe={pid} {}", seg_ref(s)));
            }
            if s.endpoints().into_iter().any(|pt| pr.contains_point(pt)) {
                endpoint.fail(|| format!("probe={pid} {}", seg_ref(s)));
            }
            if classify_against_rect(s, pr) == Pierce::Pierces {
                pierced.push(s.id());
            } else if !meets_left_edge(s, pr) && !s.endpoints().into_iter().any(|pt| pr.contains_point(pt)) {
                crossing.fail(|| format!("probe={pid} {}", seg_ref(s)));
            }
        }
        for (i, a) in meeting.iter().enumerate() {
            for b in &meeting[i + 1..] {
                if segments_intersect(a, b) {
                    independent.fail(|| format!("probe={pid} segments={},{}", a.id(), b.id()));
                }
            }
        }
        let mut recorded = probe.pierced.clone();
        recorded.sort_unstable();
        pierced.sort_unstable();
        if recorded != pierced {
            bookkeeping.fail(|| format!("probe={pid} recorded={recorded:?} actual={pierced:?}"));
        }

        let root = &probe.root;
        if root.x0() != pr.x0() || root.y0() != pr.y0() || root.y1() != pr.y1() || root.x1() > pr.x1() {
            root_shape.fail(|| format!("probe={pid}"));
        }
        for s in &c.segments {
            if !rect_interior_disjoint(s, root) {
                root_disjoint.fail(|| format!("probe={pid} {}", seg_ref(s)));
            }
        }
        // maximal: the right edge is where the first segment enters the band
        let band = pr;
        let first_hit = c.segments.iter().filter_map(|s| min_x_in_rect(s, band)).min();
        let expected = first_hit.unwrap_or_else(|| r.x1().clone());
        if root.x1() != &expected {
            root_max.fail(|| format!("probe={pid} root-right={} first-hit={expected}", root.x1()));
        }
    }

    let n = c.probes.len();
    placement.finish(&mut report, &format!("probes={n}"));
    left.finish(&mut report, &format!("probes={n}"));
    endpoint.finish(&mut report, &format!("probes={n}"));
    independent.finish(&mut report, &format!("probes={n}"));
    crossing.finish(&mut report, &format!("probes={n}"));
    bookkeeping.finish(&mut report, &format!("probes={n}"));
    root_shape.finish(&mut report, &format!("probes={n}"));
    root_disjoint.finish(&mut report, &format!("probes={n}"));
    root_max.finish(&mut report, &format!("probes={n}"));
    contained.finish(&mut report, &format!("segments={}", c.segments.len()));
    report
}

pub fn verify_disjoint_probes(c: &Construction) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut rects = Tally::new("probes.disjoint");
    let mut bands = Tally::new("probes.y-intervals-disjoint");
    for (i, a) in c.probes.iter().enumerate() {
        for b in &c.probes[i + 1..] {
            if a.rect.meets(&b.rect) {
                rects.fail(|| format!("probes={},{}", a.id, b.id));
            }
            if a.rect.y0() <= b.rect.y1() && b.rect.y0() <= a.rect.y1() {
                bands.fail(|| format!("probes={},{}", a.id, b.id));
            }
        }
    }
    let n = c.probes.len();
    rects.finish(&mut report, &format!("probes={n}"));
    bands.finish(&mut report, &format!("probes={n}"));
    report
}

/// Every intersection is a proper crossing away from all endpoints, and no
/// point lies on three segments.
pub fn verify_general_position(segments: &[Segment]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut proper = Tally::new("general-position.proper-crossings");
    let mut concurrent = Tally::new("general-position.no-three-concurrent");
    let mut crossings: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, s) in segments.iter().enumerate() {
        for t in &segments[i + 1..] {
            if !segments_intersect(s, t) {
                continue;
            }
            let strict = [
                orientation(s.p(), s.q(), t.p()),
                orientation(s.p(), s.q(), t.q()),
                orientation(t.p(), t.q(), s.p()),
                orientation(t.p(), t.q(), s.q()),
            ]
            .iter()
            .all(|&o| o != Orientation::Collinear);
            if !strict {
                proper.fail(|| format!("segments={},{}", s.id(), t.id()));
                continue;
            }
            if let Some(pt) = crossing_point(s, t) {
                let ids = crossings.entry(pt).or_default();
                for id in [s.id(), t.id()] {
                    if !ids.contains(&id) {
                        ids.push(id);
                    }
                }
            }
        }
    }
    for (pt, ids) in &crossings {
        if ids.len() >= 3 {
            concurrent.fail(|| format!("point=({},{}) segments={ids:?}", pt.x, pt.y));
        }
    }
    proper.finish(&mut report, &format!("crossings={}", crossings.len()));
    concurrent.finish(&mut report, &format!("crossings={}", crossings.len()));
    report
}

/// Calls `visit` with every partition of the vertices into independent sets,
/// encoded as a restricted-growth sequence (vertex `i` gets block `rgs[i]`,
/// blocks first appear in increasing order). Returns the number visited.
pub fn for_each_proper_partition<F>(g: &IntersectionGraph, mut visit: F) -> u64
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let mut rgs = vec![0usize; n];
    let mut count = 0u64;
    let earlier: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).filter(|&u| u < v).collect()).collect();
    let _ = extend_partition(&earlier, &mut rgs, 0, 0, &mut count, &mut visit);
    count
}

fn extend_partition<F>(
    earlier: &[Vec<usize>],
    rgs: &mut [usize],
    v: usize,
    blocks: usize,
    count: &mut u64,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if v == rgs.len() {
        *count += 1;
        return visit(rgs);
    }
    for b in 0..=blocks {
        if earlier[v].iter().any(|&u| rgs[u] == b) {
            continue;
        }
        rgs[v] = b;
        extend_partition(earlier, rgs, v + 1, blocks.max(b + 1), count, visit)?;
    }
    ControlFlow::Continue(())
}

pub fn count_proper_partitions(g: &IntersectionGraph) -> u64 {
    for_each_proper_partition(g, |_| ControlFlow::Continue(()))
}

/// Every proper colouring uses at least `k` colours on the segments pierced
/// by some probe. Checked over all partitions into independent sets.
pub fn verify_lemma_property(c: &Construction) -> Result<VerificationReport, VerifyError> {
    let n = c.segments.len();
    if n > LEMMA_MAX_SEGMENTS {
        return Err(VerifyError::TooLarge(n));
    }
    let g = intersection_graph(&c.segments);
    let index_of: BTreeMap<usize, usize> = c.segments.iter().enumerate().map(|(i, s)| (s.id(), i)).collect();
    let pierced: Vec<Vec<usize>> = c
        .probes
        .iter()
        .map(|p| {
            c.segments
                .iter()
                .filter(|s| classify_against_rect(s, &p.rect) == Pierce::Pierces)
                .map(|s| index_of[&s.id()])
                .collect()
        })
        .collect();
    let k = c.k;
    let mut counterexample: Option<Vec<usize>> = None;
    let visited = for_each_proper_partition(&g, |rgs| {
        let forced = pierced.iter().any(|ids| {
            let mut seen: Vec<usize> = ids.iter().map(|&i| rgs[i]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() >= k
        });
        if forced {
            ControlFlow::Continue(())
        } else {
            counterexample = Some(rgs.to_vec());
            ControlFlow::Break(())
        }
    });
    let mut report = VerificationReport::new();
    match counterexample {
        None => report.push("lemma.colouring-property", true, format!("k={k} partitions={visited}")),
        Some(rgs) => report.push("lemma.colouring-property", false, format!("k={k} partition={rgs:?}")),
    }
    Ok(report)
}

/// Closed-form bounds on the recurrence: `p_k = 2^(2^(k-1) - 1)` and
/// `p_k <= s_k <= 2^(2^(k-1)) - 1`; `|S̃_k| = s_k + p_k` is also compared
/// against a built family for small `k`.
pub fn verify_size_bounds(max_k: usize) -> Result<VerificationReport, VerifyError> {
    if max_k < 1 {
        return Err(VerifyError::InvalidK(max_k));
    }
    let table = sizes(max_k)?;
    let mut report = VerificationReport::new();
    for k in 1..=max_k {
        let (s, p) = (&table.s[k - 1], &table.p[k - 1]);
        let exponent = 1usize << (k - 1);
        let closed_p = UBig::ONE << (exponent - 1);
        let ceiling = (UBig::ONE << exponent) - 1u32;
        report.push(format!("sizes.k{k}.p-closed-form"), p == &closed_p, format!("p={}", short(p)));
        report.push(format!("sizes.k{k}.p-le-s"), p <= s, format!("s={}", short(s)));
        report.push(format!("sizes.k{k}.s-le-ceiling"), s <= &ceiling, format!("ceiling=2^{exponent}-1"));
        if k <= BUILT_TILDE_MAX_K {
            let built = augment_tilde(&build(k, &Rect::unit())?)?.segments.len();
            report.push(
                format!("sizes.k{k}.tilde-count"),
                UBig::from(built) == table.tilde(k),
                format!("built={built}"),
            );
        }
    }
    Ok(report)
}

fn short(n: &UBig) -> String {
    let text = n.to_string();
    if text.len() <= 24 {
        text
    } else {
        format!("{}...({} digits)", &text[..12], text.len())
    }
}
