//! Independent reference implementations used to cross-check the library.
//! Nothing here calls the predicates it is meant to check.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::RngExt;
use segchi_core::{Point, Rational, Segment};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Closed-segment intersection by solving `p + λ(q - p) = r + μ(u - r)`
/// with Cramer's rule, falling back to a 1-D overlap test on the shared
/// line when the directions are parallel.
pub fn parametric_intersect(s: &Segment, t: &Segment) -> bool {
    let (p, pq) = (s.p(), s.q());
    let (r, ru) = (t.p(), t.q());
    let d1 = (&pq.x - &p.x, &pq.y - &p.y);
    let d2 = (&ru.x - &r.x, &ru.y - &r.y);
    let w = (&r.x - &p.x, &r.y - &p.y);
    let det = &d1.0 * &d2.1 - &d1.1 * &d2.0;
    let zero = Rational::zero();
    let one = Rational::one();
    if !det.is_zero() {
        let lambda = (&w.0 * &d2.1 - &w.1 * &d2.0) / &det;
        let mu = (&w.0 * &d1.1 - &w.1 * &d1.0) / &det;
        return lambda >= zero && lambda <= one && mu >= zero && mu <= one;
    }
    // parallel: same line iff w is parallel to d1
    if !(&w.0 * &d1.1 - &w.1 * &d1.0).is_zero() {
        return false;
    }
    // project the second segment onto the first's parameter line
    let len2 = &d1.0 * &d1.0 + &d1.1 * &d1.1;
    let param = |pt: &Point| ((&pt.x - &p.x) * &d1.0 + (&pt.y - &p.y) * &d1.1) / &len2;
    let (a, b) = (param(r), param(ru));
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= one && hi >= zero
}

/// Random segment with positive slope whose endpoints have small
/// denominators, so coincidences (shared endpoints, collinear overlaps)
/// actually occur.
pub fn random_segment(rng: &mut StdRng) -> Segment {
    let den = rng.random_range(1..=4);
    let coord = |rng: &mut StdRng| q(rng.random_range(0..=8 * den), den);
    loop {
        let (x0, y0, x1, y1) = (coord(rng), coord(rng), coord(rng), coord(rng));
        if x0 < x1 && y0 < y1 {
            return Segment::between(Point::new(x0, y0), Point::new(x1, y1)).unwrap();
        }
    }
}

/// Collinear variant: the second segment lies on the first one's line.
pub fn random_collinear_pair(rng: &mut StdRng) -> (Segment, Segment) {
    let s = random_segment(rng);
    let d = (&s.q().x - &s.p().x, &s.q().y - &s.p().y);
    let at = |t: Rational| Point::new(&s.p().x + &t * &d.0, &s.p().y + &t * &d.1);
    let mut t0 = q(rng.random_range(-6..=10), 4);
    let mut t1 = q(rng.random_range(-6..=10), 4);
    if t0 == t1 {
        t1 = &t1 + &q(1, 4);
    }
    if t0 > t1 {
        std::mem::swap(&mut t0, &mut t1);
    }
    let t = Segment::between(at(t0), at(t1)).unwrap();
    (s, t)
}

/// Random simple graph on `n` vertices.
pub fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Calls `visit` on every map `0..n -> 0..k`, as a base-`k` odometer.
fn for_each_assignment(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if n == 0 {
        visit(&[]);
        return;
    }
    if k == 0 {
        return;
    }
    let mut a = vec![0usize; n];
    loop {
        if visit(&a) {
            return;
        }
        let mut i = 0;
        loop {
            a[i] += 1;
            if a[i] < k {
                break;
            }
            a[i] = 0;
            i += 1;
            if i == n {
                return;
            }
        }
    }
}

fn proper(a: &[usize], edges: &[(usize, usize)]) -> bool {
    edges.iter().all(|&(u, v)| a[u] != a[v])
}

/// Is there any proper `k`-colouring among all `k^n` assignments?
pub fn brute_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let mut found = false;
    for_each_assignment(n, k, |a| {
        found = proper(a, edges);
        found
    });
    found
}

/// Smallest `k` admitting a proper assignment.
pub fn brute_chromatic(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..=n).find(|&k| brute_colorable(n, edges, k)).expect("n colours always suffice")
}

/// Number of proper colourings counted up to renaming of colours: every
/// assignment into `0..n` is generated, and only those where colours
/// first appear in increasing order are kept.
pub fn brute_partition_count(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut count = 0;
    for_each_assignment(n, n, |a| {
        let mut next = 0;
        let canonical = a.iter().all(|&c| {
            if c < next {
                true
            } else if c == next {
                next += 1;
                true
            } else {
                false
            }
        });
        if canonical && proper(a, edges) {
            count += 1;
        }
        false
    });
    count
}

/// Every triangle, found by checking all triples.
pub fn brute_has_triangle(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = |u: usize, v: usize| edges.iter().any(|&(a, b)| (a, b) == (u.min(v), u.max(v)));
    (0..n).any(|a| (a + 1..n).any(|b| adj(a, b) && (b + 1..n).any(|c| adj(a, c) && adj(b, c))))
}
