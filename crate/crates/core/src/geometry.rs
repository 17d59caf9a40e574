//! Exact planar primitives and the predicates the construction is built on.
//!
//! Segments are closed and always have strictly positive slope. Rectangles
//! are closed, axis-aligned and have positive area. Every predicate is
//! evaluated exactly over [`Rational`].

use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("segment endpoints do not have strictly increasing x and y")]
    NotPositiveSlope,
    #[error("rectangle has no area")]
    DegenerateRect,
    #[error("y = {0} is outside the segment's y-span")]
    OutOfRange(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Base,
    Diagonal,
}

/// A closed segment from its lower-left endpoint `p` to its upper-right
/// endpoint `q`.
///
/// `path` locates the copy the segment belongs to in the recursion tree:
/// each entry is `0` for the base copy of a level or `i + 1` for the copy
/// placed in the root of probe `i` of that base copy. A diagonal added at a
/// level carries its probe index as one extra trailing entry. Diagonals added
/// by the critical augmentation have a path of exactly one entry, the id of
/// the probe they stab.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    p: Point,
    q: Point,
    id: usize,
    role: Role,
    path: Vec<u32>,
}

impl Segment {
    pub fn new(p: Point, q: Point, id: usize, role: Role, path: Vec<u32>) -> Result<Self, GeometryError> {
        if p.x < q.x && p.y < q.y {
            Ok(Segment { p, q, id, role, path })
        } else {
            Err(GeometryError::NotPositiveSlope)
        }
    }

    /// An anonymous base segment with id 0.
    pub fn between(p: Point, q: Point) -> Result<Self, GeometryError> {
        Segment::new(p, q, 0, Role::Base, Vec::new())
    }

    pub fn p(&self) -> &Point {
        &self.p
    }

    pub fn q(&self) -> &Point {
        &self.q
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn with_path_prefix(mut self, prefix: &[u32]) -> Self {
        let mut path = prefix.to_vec();
        path.extend_from_slice(&self.path);
        self.path = path;
        self
    }

    pub fn endpoints(&self) -> [&Point; 2] {
        [&self.p, &self.q]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    x0: Rational,
    y0: Rational,
    x1: Rational,
    y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Result<Self, GeometryError> {
        if x0 < x1 && y0 < y1 {
            Ok(Rect { x0, y0, x1, y1 })
        } else {
            Err(GeometryError::DegenerateRect)
        }
    }

    pub fn unit() -> Self {
        Rect::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::one()).unwrap()
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }
    pub fn y0(&self) -> &Rational {
        &self.y0
    }
    pub fn x1(&self) -> &Rational {
        &self.x1
    }
    pub fn y1(&self) -> &Rational {
        &self.y1
    }

    pub fn width(&self) -> Rational {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Rational {
        &self.y1 - &self.y0
    }

    /// The sub-rectangle with half the width and height, sharing the centre.
    pub fn centered_half(&self) -> Rect {
        let dx = self.width() / Rational::from_integer(4);
        let dy = self.height() / Rational::from_integer(4);
        Rect { x0: &self.x0 + &dx, y0: &self.y0 + &dy, x1: &self.x1 - &dx, y1: &self.y1 - &dy }
    }

    pub fn contains_point(&self, pt: &Point) -> bool {
        self.x0 <= pt.x && pt.x <= self.x1 && self.y0 <= pt.y && pt.y <= self.y1
    }

    /// Closed rectangles share a point.
    pub fn meets(&self, other: &Rect) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    /// Segment from the bottom-left corner to the top-right corner.
    pub fn diagonal(&self) -> Segment {
        Segment {
            p: Point::new(self.x0.clone(), self.y0.clone()),
            q: Point::new(self.x1.clone(), self.y1.clone()),
            id: 0,
            role: Role::Diagonal,
            path: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeKind {
    BaseProbe,
    Lower,
    Upper,
}

/// Index of the outer probe `P` and of the inner probe `Q` that a lower or
/// upper probe was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProbeOrigin {
    pub outer: usize,
    pub inner: usize,
}

/// A thin query rectangle entering the construction rectangle from the
/// right, together with its root and the ids of the segments it pierces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Probe {
    pub rect: Rect,
    pub root: Rect,
    pub kind: ProbeKind,
    pub id: usize,
    pub origin: Option<ProbeOrigin>,
    pub pierced: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn as_sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Sign of the cross product `(q - p) × (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let cross = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    match cross.signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

// r collinear with a-b is assumed.
fn within_box(a: &Point, b: &Point, r: &Point) -> bool {
    Rational::min(&a.x, &b.x) <= &r.x
        && &r.x <= Rational::max(&a.x, &b.x)
        && Rational::min(&a.y, &b.y) <= &r.y
        && &r.y <= Rational::max(&a.y, &b.y)
}

/// Closed segments `a-b` and `c-d` share a point. Works for any endpoints,
/// including degenerate and axis-parallel segments.
pub(crate) fn closed_segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orientation(c, d, a).as_sign();
    let d2 = orientation(c, d, b).as_sign();
    let d3 = orientation(a, b, c).as_sign();
    let d4 = orientation(a, b, d).as_sign();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && within_box(c, d, a))
        || (d2 == 0 && within_box(c, d, b))
        || (d3 == 0 && within_box(a, b, c))
        || (d4 == 0 && within_box(a, b, d))
}

pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    closed_segments_meet(&s.p, &s.q, &t.p, &t.q)
}

/// The x-coordinate of the point of `s` at height `y`.
pub fn x_at_y(s: &Segment, y: &Rational) -> Result<Rational, GeometryError> {
    if y < &s.p.y || y > &s.q.y {
        return Err(GeometryError::OutOfRange(y.clone()));
    }
    Ok(&s.p.x + (y - &s.p.y) * (&s.q.x - &s.p.x) / (&s.q.y - &s.p.y))
}

/// Parameter range `[lo, hi]` of `t` for which `p + t (q - p)` lies in the
/// closed (or open) box; `None` if empty. Bounds may coincide for a touch.
pub(crate) fn clip_to_box(
    p: &Point,
    q: &Point,
    (x0, y0, x1, y1): (&Rational, &Rational, &Rational, &Rational),
    open: bool,
) -> Option<(Rational, Rational)> {
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let mut lo_open = false;
    let mut hi_open = false;
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    // Each constraint is `bound <= start + t * delta` (below) or `>=` (above).
    let constraints = [(x0, &p.x, &dx, true), (x1, &p.x, &dx, false), (y0, &p.y, &dy, true), (y1, &p.y, &dy, false)];
    for (bound, start, delta, below) in constraints {
        if delta.is_zero() {
            let ok = if below {
                if open {
                    bound < start
                } else {
                    bound <= start
                }
            } else if open {
                start < bound
            } else {
                start <= bound
            };
            if !ok {
                return None;
            }
            continue;
        }
        let t = (bound - start) / delta;
        // `below` with positive delta (or `above` with negative) bounds t from below.
        if below == delta.is_positive() {
            if t > lo || (t == lo && open) {
                lo_open = open;
                lo = t;
            }
        } else if t < hi || (t == hi && open) {
            hi_open = open;
            hi = t;
        }
    }
    if lo < hi || (lo == hi && !lo_open && !hi_open) {
        Some((lo, hi))
    } else {
        None
    }
}

fn rect_bounds(r: &Rect) -> (&Rational, &Rational, &Rational, &Rational) {
    (&r.x0, &r.y0, &r.x1, &r.y1)
}

/// The closed segment and the closed rectangle share a point.
pub fn segment_meets_rect(s: &Segment, r: &Rect) -> bool {
    clip_to_box(&s.p, &s.q, rect_bounds(r), false).is_some()
}

/// `s` stays out of the open rectangle; touching the boundary is allowed.
pub fn rect_interior_disjoint(s: &Segment, r: &Rect) -> bool {
    clip_to_box(&s.p, &s.q, rect_bounds(r), true).is_none()
}

/// Smallest x over `s ∩ r`, if they meet.
pub fn min_x_in_rect(s: &Segment, r: &Rect) -> Option<Rational> {
    let (lo, hi) = clip_to_box(&s.p, &s.q, rect_bounds(r), false)?;
    let dx = &s.q.x - &s.p.x;
    let at = |t: &Rational| &s.p.x + t * &dx;
    let (a, b) = (at(&lo), at(&hi));
    Some(if a <= b { a } else { b })
}

/// The closed left edge `{x0} × [y0, y1]` of `r` meets `s`.
pub fn meets_left_edge(s: &Segment, r: &Rect) -> bool {
    closed_segments_meet(&s.p, &s.q, &Point::new(r.x0.clone(), r.y0.clone()), &Point::new(r.x0.clone(), r.y1.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The segment meets the probe's closed left edge.
    LeftBoundary,
    /// An endpoint lies in the closed probe rectangle.
    EndpointInside,
    /// The segment meets the probe without crossing both horizontal edges.
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pierce {
    Misses,
    Pierces,
    Violates(Violation),
}

/// Classifies `s` against a probe rectangle.
///
/// `Pierces` means `s` crosses both horizontal edges at x in `(x0, x1]`.
pub fn classify_against_rect(s: &Segment, r: &Rect) -> Pierce {
    if !segment_meets_rect(s, r) {
        return Pierce::Misses;
    }
    if meets_left_edge(s, r) {
        return Pierce::Violates(Violation::LeftBoundary);
    }
    if s.endpoints().into_iter().any(|pt| r.contains_point(pt)) {
        return Pierce::Violates(Violation::EndpointInside);
    }
    let crossing_ok = |y: &Rational| match x_at_y(s, y) {
        Ok(x) => x > r.x0 && x <= r.x1,
        Err(_) => false,
    };
    if crossing_ok(&r.y0) && crossing_ok(&r.y1) {
        Pierce::Pierces
    } else {
        Pierce::Violates(Violation::Partial)
    }
}

pub fn segment_pierces_probe(s: &Segment, probe: &Probe) -> Pierce {
    classify_against_rect(s, &probe.rect)
}

/// Exact intersection point of two segments that cross at a single point,
/// `None` if they are disjoint or overlap collinearly.
pub fn crossing_point(s: &Segment, t: &Segment) -> Option<Point> {
    if !segments_intersect(s, t) {
        return None;
    }
    let (dx1, dy1) = (&s.q.x - &s.p.x, &s.q.y - &s.p.y);
    let (dx2, dy2) = (&t.q.x - &t.p.x, &t.q.y - &t.p.y);
    let denom = &dx1 * &dy2 - &dy1 * &dx2;
    if denom.is_zero() {
        return None;
    }
    let ex = &t.p.x - &s.p.x;
    let ey = &t.p.y - &s.p.y;
    let u = (&ex * &dy2 - &ey * &dx2) / &denom;
    Some(Point::new(&s.p.x + &u * &dx1, &s.p.y + &u * &dy1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::between(Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1)).unwrap()
    }

    fn rect(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Rect {
        Rect::new(x0, y0, x1, y1).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let o = |a: Point, b: Point, c: Point| orientation(&a, &b, &c).as_sign();
        assert_eq!(o(Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 1)), 1);
        assert_eq!(o(Point::from_ints(0, 0), Point::from_ints(1, 1), Point::from_ints(2, 2)), 0);
        assert_eq!(o(Point::from_ints(0, 0), pt(r(1, 3), r(1, 3)), Point::from_ints(1, 0)), -1);
    }

    #[test]
    fn intersection_examples() {
        assert!(!segments_intersect(&seg((0, 0), (2, 2)), &seg((0, 1), (2, 3))));
        assert!(segments_intersect(&seg((0, 0), (2, 2)), &seg((1, 0), (2, 4))));
        assert_eq!(crossing_point(&seg((0, 0), (2, 2)), &seg((1, 0), (2, 4))), Some(pt(r(4, 3), r(4, 3))));
        assert!(segments_intersect(&seg((0, 0), (1, 1)), &seg((1, 1), (2, 3))));
        // collinear overlap and collinear gap
        assert!(segments_intersect(&seg((0, 0), (2, 2)), &seg((1, 1), (3, 3))));
        assert!(!segments_intersect(&seg((0, 0), (1, 1)), &seg((2, 2), (3, 3))));
    }

    #[test]
    fn x_at_y_examples() {
        assert_eq!(x_at_y(&seg((0, 0), (2, 2)), &r(1, 2)).unwrap(), r(1, 2));
        assert_eq!(x_at_y(&seg((1, 0), (3, 4)), &r(1, 1)).unwrap(), r(3, 2));
        assert_eq!(x_at_y(&seg((0, 0), (1, 1)), &r(2, 1)), Err(GeometryError::OutOfRange(r(2, 1))));
    }

    #[test]
    fn pierce_examples() {
        let s = seg((0, 0), (4, 4));
        let band = |x0: i64| rect(r(x0, 1), r(3, 2), r(4, 1), r(5, 2));
        assert_eq!(classify_against_rect(&s, &band(1)), Pierce::Pierces);
        assert_eq!(classify_against_rect(&s, &band(3)), Pierce::Misses);
        assert_eq!(classify_against_rect(&s, &band(2)), Pierce::Violates(Violation::LeftBoundary));
        assert_eq!(classify_against_rect(&seg((2, 2), (3, 3)), &band(1)), Pierce::Violates(Violation::EndpointInside));
        // enters through the bottom edge and leaves through the right edge
        let steep_right = Segment::between(pt(r(7, 2), r(1, 1)), pt(r(5, 1), r(3, 1))).unwrap();
        assert_eq!(classify_against_rect(&steep_right, &band(1)), Pierce::Violates(Violation::Partial));
    }

    #[test]
    fn interior_disjoint_examples() {
        let unit = |x0, y0, x1, y1| rect(r(x0, 1), r(y0, 1), r(x1, 1), r(y1, 1));
        assert!(rect_interior_disjoint(&seg((0, 0), (1, 1)), &unit(2, 0, 3, 1)));
        assert!(!rect_interior_disjoint(&seg((0, 0), (4, 4)), &unit(1, 1, 3, 3)));
        assert!(rect_interior_disjoint(&seg((0, 1), (1, 2)), &unit(0, 0, 1, 1)));
        // the same touch counts for the closed rectangle
        assert!(segment_meets_rect(&seg((0, 1), (1, 2)), &unit(0, 0, 1, 1)));
        // corner-to-corner diagonal runs through the interior
        assert!(!rect_interior_disjoint(&seg((0, 0), (1, 1)), &unit(0, 0, 1, 1)));
    }

    #[test]
    fn min_x_in_rect_clips() {
        let s = seg((0, 0), (4, 4));
        let band = rect(r(1, 1), r(3, 2), r(4, 1), r(5, 2));
        assert_eq!(min_x_in_rect(&s, &band), Some(r(3, 2)));
        assert_eq!(min_x_in_rect(&s, &rect(r(3, 1), r(3, 2), r(4, 1), r(5, 2))), None);
    }

    #[test]
    fn segment_rejects_non_positive_slope() {
        assert_eq!(
            Segment::between(Point::from_ints(0, 0), Point::from_ints(1, 0)),
            Err(GeometryError::NotPositiveSlope)
        );
        assert_eq!(
            Segment::between(Point::from_ints(1, 1), Point::from_ints(0, 0)),
            Err(GeometryError::NotPositiveSlope)
        );
        assert_eq!(Rect::new(r(0, 1), r(0, 1), r(0, 1), r(1, 1)), Err(GeometryError::DegenerateRect));
    }
}
