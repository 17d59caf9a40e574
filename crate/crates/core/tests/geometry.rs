mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use segchi_core::geometry::{
    classify_against_rect, crossing_point, orientation, segments_intersect, x_at_y, Orientation, Pierce,
};
use segchi_core::{Point, Rational, Rect, Segment};

use common::{parametric_intersect, random_collinear_pair, random_segment};

#[test]
fn intersection_matches_parametric_solve() {
    let mut rng = StdRng::seed_from_u64(0x5e6c);
    let mut hits = 0;
    for i in 0..10_000 {
        let (s, t) = if i % 10 == 0 {
            random_collinear_pair(&mut rng)
        } else {
            (random_segment(&mut rng), random_segment(&mut rng))
        };
        let want = parametric_intersect(&s, &t);
        assert_eq!(segments_intersect(&s, &t), want, "{s:?} vs {t:?}");
        assert_eq!(segments_intersect(&t, &s), want, "symmetry: {s:?} vs {t:?}");
        hits += want as usize;
    }
    // both outcomes must be well represented for the comparison to mean anything
    assert!((1000..9000).contains(&hits), "{hits} intersecting pairs");
}

#[test]
fn crossing_point_lies_on_both() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..2000 {
        let (s, t) = (random_segment(&mut rng), random_segment(&mut rng));
        if let Some(pt) = crossing_point(&s, &t) {
            for seg in [&s, &t] {
                assert_eq!(orientation(seg.p(), seg.q(), &pt), Orientation::Collinear);
                assert!(seg.p().x <= pt.x && pt.x <= seg.q().x);
            }
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn point() -> impl Strategy<Value = Point> {
    (small_rational(), small_rational()).prop_map(|(x, y)| Point::new(x, y))
}

fn positive_segment() -> impl Strategy<Value = Segment> {
    (point(), 1i64..=40, 1i64..=40, 1i64..=6).prop_map(|(p, dx, dy, d)| {
        let q = Point::new(&p.x + &Rational::new(dx, d), &p.y + &Rational::new(dy, d));
        Segment::between(p, q).unwrap()
    })
}

fn rect() -> impl Strategy<Value = Rect> {
    (point(), 1i64..=30, 1i64..=30, 1i64..=6).prop_map(|(p, w, h, d)| {
        let x1 = &p.x + &Rational::new(w, d);
        let y1 = &p.y + &Rational::new(h, d);
        Rect::new(p.x, p.y, x1, y1).unwrap()
    })
}

/// x on the supporting line of `s` at height `y`, by interpolation.
fn line_x(s: &Segment, y: &Rational) -> Rational {
    let (p, q) = (s.p(), s.q());
    &p.x + (y - &p.y) * (&q.x - &p.x) / (&q.y - &p.y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn rational_field_identities(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        let printed = a.to_string();
        prop_assert_eq!(Rational::parse_canonical(&printed).unwrap(), a);
    }

    #[test]
    fn orientation_is_antisymmetric(p in point(), q in point(), r in point()) {
        let o = orientation(&p, &q, &r).as_sign();
        prop_assert_eq!(orientation(&q, &p, &r).as_sign(), -o);
        prop_assert_eq!(orientation(&q, &r, &p).as_sign(), o);
    }

    #[test]
    fn intersection_is_symmetric(s in positive_segment(), t in positive_segment()) {
        prop_assert_eq!(segments_intersect(&s, &t), segments_intersect(&t, &s));
        prop_assert_eq!(segments_intersect(&s, &t), parametric_intersect(&s, &t));
    }

    #[test]
    fn pierced_segments_cross_both_edges(s in positive_segment(), r in rect()) {
        if classify_against_rect(&s, &r) == Pierce::Pierces {
            for y in [r.y0(), r.y1()] {
                prop_assert!(&s.p().y < y && y < &s.q().y);
                let x = line_x(&s, y);
                prop_assert!(&x > r.x0() && &x <= r.x1());
                prop_assert_eq!(x_at_y(&s, y).unwrap(), x);
            }
        }
    }

    #[test]
    fn missing_segments_avoid_the_closed_rect(s in positive_segment(), r in rect()) {
        if classify_against_rect(&s, &r) == Pierce::Misses {
            // sample the segment at the rect's corners' heights and at its own ends
            for y in [r.y0(), r.y1(), &s.p().y, &s.q().y] {
                if &s.p().y <= y && y <= &s.q().y && r.y0() <= y && y <= r.y1() {
                    let x = line_x(&s, y);
                    prop_assert!(&x < r.x0() || &x > r.x1());
                }
            }
        }
    }
}
