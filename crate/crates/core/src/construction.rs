//! Recursive construction of triangle-free segment families together with
//! their probes.
//!
//! Level 1 is a single segment stabbed by one probe. Level `k + 1` is built
//! inside a rectangle `R` from:
//!
//! 1. a base copy `S` of level `k` in `R`, with probes `P`;
//! 2. for every probe `P`, another level-`k` copy `S_P` (probes `Q_P`) placed
//!    in the centered half of the root of `P`;
//! 3. for every `Q` in `Q_P`, the diagonal `D_Q` of `Q`;
//! 4. for every `Q`, a lower probe that sees `S_P(Q)` and `S(P)` and an upper
//!    probe that sees `D_Q` and `S(P)`, both running to the right edge of `R`.
//!
//! All coordinates stay exact; nothing is ever rounded or normalised.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use dashu_int::UBig;

use crate::geometry::{
    classify_against_rect, min_x_in_rect, segment_meets_rect, x_at_y, GeometryError, Pierce, Point, Probe, ProbeKind,
    ProbeOrigin, Rect, Role, Segment,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("level must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("rectangle has no area")]
    DegenerateRect,
    #[error("probe root would be empty")]
    EmptyRoot,
    #[error("construction invariant violated: {0}")]
    InvariantViolation(String),
}

impl From<GeometryError> for ConstructionError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::DegenerateRect => ConstructionError::DegenerateRect,
            other => ConstructionError::InvariantViolation(format!("{other}")),
        }
    }
}

/// `s_i` and `p_i` for `i = 1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeTable {
    pub k: usize,
    pub s: Vec<UBig>,
    pub p: Vec<UBig>,
}

impl SizeTable {
    /// `|S̃_i| = s_i + p_i` for `1 <= i <= k`.
    pub fn tilde(&self, i: usize) -> UBig {
        &self.s[i - 1] + &self.p[i - 1]
    }
}

/// Segment and probe counts: `s_1 = p_1 = 1`, `s_{i+1} = (p_i + 1) s_i + p_i²`,
/// `p_{i+1} = 2 p_i²`.
pub fn sizes(k: usize) -> Result<SizeTable, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidK(k));
    }
    let mut s = vec![UBig::ONE];
    let mut p = vec![UBig::ONE];
    for i in 1..k {
        let (si, pi) = (&s[i - 1], &p[i - 1]);
        let next_s = (pi + 1u32) * si + pi * pi;
        let next_p = pi * pi * 2u32;
        s.push(next_s);
        p.push(next_p);
    }
    Ok(SizeTable { k, s, p })
}

/// A level-`k` family in `rect`. For the augmented family (`tilde`) the
/// probe list is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub k: usize,
    pub rect: Rect,
    pub segments: Vec<Segment>,
    pub probes: Vec<Probe>,
    pub tilde: bool,
}

impl Construction {
    /// Image of a family built in the unit square under the axis-aligned
    /// map taking the unit square onto `target`.
    fn mapped_from_unit(&self, target: &Rect) -> Construction {
        let (w, h) = (target.width(), target.height());
        let map_x = |x: &Rational| target.x0() + x * &w;
        let map_y = |y: &Rational| target.y0() + y * &h;
        let map_point = |p: &Point| Point::new(map_x(&p.x), map_y(&p.y));
        let map_rect =
            |r: &Rect| Rect::new(map_x(r.x0()), map_y(r.y0()), map_x(r.x1()), map_y(r.y1())).expect("positive scaling");
        let segments = self
            .segments
            .iter()
            .map(|s| {
                Segment::new(map_point(s.p()), map_point(s.q()), s.id(), s.role(), s.path().to_vec())
                    .expect("positive scaling keeps the slope positive")
            })
            .collect();
        let probes = self
            .probes
            .iter()
            .map(|p| Probe { rect: map_rect(&p.rect), root: map_rect(&p.root), ..p.clone() })
            .collect();
        Construction { k: self.k, rect: target.clone(), segments, probes, tilde: self.tilde }
    }

    pub fn pierced_segments<'a>(&'a self, probe: &'a Probe) -> impl Iterator<Item = &'a Segment> + 'a {
        probe.pierced.iter().map(move |&id| &self.segments[id])
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn violation(msg: String) -> ConstructionError {
    ConstructionError::InvariantViolation(msg)
}

/// Root of a probe band `[x0, x1] × [y0, y1]`, where `x1` is the right edge
/// of the enclosing rectangle: `[x0, c'] × [y0, y1]` with `c'` the smallest x
/// at which any segment meets the closed band, or `x1` if none does.
pub fn root_of(band: &Rect, segments: &[Segment]) -> Result<Rect, ConstructionError> {
    let mut right = band.x1().clone();
    for s in segments {
        if let Some(x) = min_x_in_rect(s, band) {
            if x < right {
                right = x;
            }
        }
    }
    if &right <= band.x0() {
        return Err(ConstructionError::EmptyRoot);
    }
    Ok(Rect::new(band.x0().clone(), band.y0().clone(), right, band.y1().clone())?)
}

/// Builds the level-`k` family and its `p_k` probes inside `rect`.
pub fn build(k: usize, rect: &Rect) -> Result<Construction, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidK(k));
    }
    let c = build_level(k, rect)?;
    let table = sizes(k)?;
    if UBig::from(c.segments.len()) != table.s[k - 1] || UBig::from(c.probes.len()) != table.p[k - 1] {
        return Err(violation(format!(
            "level {k} produced {} segments and {} probes",
            c.segments.len(),
            c.probes.len()
        )));
    }
    Ok(c)
}

fn build_base(rect: &Rect) -> Result<Construction, ConstructionError> {
    let inner = rect.centered_half();
    let segment = Segment::new(
        Point::new(inner.x0().clone(), inner.y0().clone()),
        Point::new(inner.x1().clone(), inner.y1().clone()),
        0,
        Role::Base,
        Vec::new(),
    )?;
    let y_mid = Rational::midpoint(rect.y0(), rect.y1());
    let half_band = rect.height() / int(16);
    let band =
        Rect::new(rect.x0() + rect.width() / int(3), &y_mid - &half_band, rect.x1().clone(), &y_mid + &half_band)?;
    if classify_against_rect(&segment, &band) != Pierce::Pierces {
        return Err(violation(String::from("base probe does not pierce the base segment")));
    }
    let segments = vec![segment];
    let root = root_of(&band, &segments)?;
    let probe = Probe { rect: band, root, kind: ProbeKind::BaseProbe, id: 0, origin: None, pierced: vec![0] };
    Ok(Construction { k: 1, rect: rect.clone(), segments, probes: vec![probe], tilde: false })
}

/// Copies at every level are exact affine images of a single unit-square
/// template, because every placement rule commutes with positive axis
/// scaling and translation.
fn build_level(k: usize, rect: &Rect) -> Result<Construction, ConstructionError> {
    if k == 1 {
        return build_base(rect);
    }
    let template = build_level(k - 1, &Rect::unit())?;
    assemble(k, rect, |target| Ok(template.mapped_from_unit(target)))
}

/// Plain recursion without the template; kept to cross-check [`build_level`].
#[cfg(test)]
fn build_level_direct(k: usize, rect: &Rect) -> Result<Construction, ConstructionError> {
    if k == 1 {
        return build_base(rect);
    }
    assemble(k, rect, |target| build_level_direct(k - 1, target))
}

fn assemble<F>(k: usize, rect: &Rect, mut lower_level: F) -> Result<Construction, ConstructionError>
where
    F: FnMut(&Rect) -> Result<Construction, ConstructionError>,
{
    let base = lower_level(rect)?;
    let mut segments: Vec<Segment> = base.segments.iter().map(|s| s.clone().with_path_prefix(&[0])).collect();
    let mut probes = Vec::with_capacity(2 * base.probes.len() * base.probes.len());

    for (pi, outer_probe) in base.probes.iter().enumerate() {
        let copy_tag = pi as u32 + 1;
        let child_rect = outer_probe.root.centered_half();
        let child = lower_level(&child_rect)?;
        let offset = segments.len();
        segments
            .extend(child.segments.iter().map(|s| s.clone().with_id(s.id() + offset).with_path_prefix(&[copy_tag])));
        let outer: Vec<&Segment> = base.pierced_segments(outer_probe).collect();
        let outer_ids: Vec<usize> = outer_probe.pierced.clone();

        for (qi, inner_probe) in child.probes.iter().enumerate() {
            let diagonal_id = segments.len();
            let diagonal = inner_probe.rect.diagonal().with_id(diagonal_id).with_path_prefix(&[copy_tag, qi as u32]);
            let inner: Vec<&Segment> = child.pierced_segments(inner_probe).collect();
            let (mut lower, mut upper) = make_probe_pair(inner_probe, &diagonal, &inner, &outer, rect)?;

            let origin = Some(ProbeOrigin { outer: pi, inner: qi });
            let inner_ids = inner_probe.pierced.iter().map(|&id| id + offset);
            lower.pierced = outer_ids.iter().copied().chain(inner_ids).collect();
            lower.pierced.sort_unstable();
            upper.pierced = outer_ids.iter().copied().chain([diagonal_id]).collect();
            upper.pierced.sort_unstable();
            lower.id = probes.len();
            lower.origin = origin;
            upper.id = probes.len() + 1;
            upper.origin = origin;
            probes.push(lower);
            probes.push(upper);
            segments.push(diagonal);
        }
    }
    Ok(Construction { k, rect: rect.clone(), segments, probes, tilde: false })
}

/// Lower and upper replacement probes for the inner probe `q`.
///
/// `inner` are the segments `q` pierces, `outer` those pierced by the outer
/// probe whose root hosts `q`, and `diagonal` is the corner-to-corner
/// diagonal of `q`. The returned probes carry empty `pierced` lists and id 0;
/// the caller assigns both.
pub fn make_probe_pair(
    q: &Probe,
    diagonal: &Segment,
    inner: &[&Segment],
    outer: &[&Segment],
    rect: &Rect,
) -> Result<(Probe, Probe), ConstructionError> {
    if inner.is_empty() {
        return Err(violation(format!("inner probe {} pierces nothing", q.id)));
    }
    let qr = &q.rect;
    let (a, c) = (qr.x0(), qr.x1());
    let (yb, yt) = (qr.y0(), qr.y1());
    let h = qr.height();
    let w = qr.width();
    let eighth = &h / int(8);

    let crossings = |y: &Rational| -> Result<Vec<Rational>, ConstructionError> {
        inner.iter().map(|s| x_at_y(s, y).map_err(ConstructionError::from)).collect()
    };
    let x_min = crossings(yb)?.into_iter().min().expect("non-empty");
    let x_max = crossings(yt)?.into_iter().max().expect("non-empty");

    let delta = Rational::min(&eighth, &((&x_min - a) * &h / (int(4) * &w))).clone();
    let lower_y0 = yb + &delta;
    let lower_y1 = yb + int(2) * &delta;
    let lower_left = Rational::midpoint(&x_at_y(diagonal, &lower_y1)?, &x_min);
    let lower_rect = Rect::new(lower_left, lower_y0, rect.x1().clone(), lower_y1)?;

    let delta_up = Rational::min(&eighth, &((c - &x_max) * &h / (int(4) * &w))).clone();
    let upper_y0 = yt - int(2) * &delta_up;
    let upper_y1 = yt - &delta_up;
    let upper_left = Rational::midpoint(&x_max, &x_at_y(diagonal, &upper_y0)?);
    let upper_rect = Rect::new(upper_left, upper_y0, rect.x1().clone(), upper_y1)?;

    if lower_rect.meets(&upper_rect) {
        return Err(violation(format!("lower and upper probes of {} overlap", q.id)));
    }
    let expect = |r: &Rect, s: &Segment, want: Pierce, what: &str| -> Result<(), ConstructionError> {
        let got = classify_against_rect(s, r);
        if got == want {
            Ok(())
        } else {
            Err(violation(format!("{what} probe of {}: expected {want:?}, got {got:?}", q.id)))
        }
    };
    for s in inner {
        expect(&lower_rect, s, Pierce::Pierces, "lower")?;
        expect(&upper_rect, s, Pierce::Misses, "upper")?;
    }
    for s in outer {
        expect(&lower_rect, s, Pierce::Pierces, "lower")?;
        expect(&upper_rect, s, Pierce::Pierces, "upper")?;
    }
    expect(&lower_rect, diagonal, Pierce::Misses, "lower")?;
    expect(&upper_rect, diagonal, Pierce::Pierces, "upper")?;

    let lower_seen: Vec<Segment> = inner.iter().chain(outer).map(|s| (*s).clone()).collect();
    let upper_seen: Vec<Segment> = outer.iter().map(|s| (*s).clone()).chain([diagonal.clone()]).collect();
    let lower_root = root_of(&lower_rect, &lower_seen)?;
    let upper_root = root_of(&upper_rect, &upper_seen)?;
    let probe = |rect, root, kind| Probe { rect, root, kind, id: 0, origin: None, pierced: Vec::new() };
    Ok((probe(lower_rect, lower_root, ProbeKind::Lower), probe(upper_rect, upper_root, ProbeKind::Upper)))
}

/// Adds one diagonal per probe, crossing exactly the segments that probe
/// pierces. The result has `s_k + p_k` segments and no probes.
///
/// Each new diagonal runs from the probe's bottom-left corner to the top
/// edge, halfway between the rightmost pierced crossing and the right edge
/// of the enclosing rectangle, so it stays strictly inside `c.rect`.
pub fn augment_tilde(c: &Construction) -> Result<Construction, ConstructionError> {
    if c.tilde {
        return Err(violation(String::from("family is already augmented")));
    }
    let mut segments = c.segments.clone();
    for probe in &c.probes {
        let r = &probe.rect;
        let mut rightmost = r.x0().clone();
        for s in c.pierced_segments(probe) {
            let x = x_at_y(s, r.y1())?;
            if x > rightmost {
                rightmost = x;
            }
        }
        let end_x = Rational::midpoint(&rightmost, c.rect.x1());
        let id = segments.len();
        let diagonal = Segment::new(
            Point::new(r.x0().clone(), r.y0().clone()),
            Point::new(end_x, r.y1().clone()),
            id,
            Role::Diagonal,
            vec![probe.id as u32],
        )?;
        for s in &c.segments {
            let crosses = crate::geometry::segments_intersect(s, &diagonal);
            let expected = probe.pierced.binary_search(&s.id()).is_ok();
            if crosses != expected {
                return Err(violation(format!(
                    "diagonal of probe {} {} segment {}",
                    probe.id,
                    if crosses { "meets non-pierced" } else { "misses pierced" },
                    s.id()
                )));
            }
        }
        if !segment_meets_rect(&diagonal, &c.rect) || !c.rect.contains_point(diagonal.q()) {
            return Err(violation(format!("diagonal of probe {} leaves the rectangle", probe.id)));
        }
        segments.push(diagonal);
    }
    Ok(Construction { k: c.k, rect: c.rect.clone(), segments, probes: Vec::new(), tilde: true })
}
