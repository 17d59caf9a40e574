//! SVG figures of a family: segments as lines, probes as outlined
//! rectangles, roots shaded.
//!
//! Coordinates are mapped exactly onto the canvas and only then rounded to
//! 12 significant digits for display.

use std::fmt::Write;

use segchi_core::{Construction, Rational, Rect, Role};

const CANVAS_WIDTH: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub show_probes: bool,
    pub show_roots: bool,
    pub stroke_scale: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { show_probes: true, show_roots: true, stroke_scale: 1.0 }
    }
}

/// Decimal text with at most `digits` significant digits.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return String::from("0");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let text = format!("{value:.decimals$}");
    let text = if text.contains('.') { text.trim_end_matches('0').trim_end_matches('.').to_string() } else { text };
    if text == "-0" {
        String::from("0")
    } else {
        text
    }
}

struct Canvas {
    rect: Rect,
    width: Rational,
    height: Rational,
}

impl Canvas {
    fn new(rect: &Rect) -> Self {
        let width = Rational::from_integer(CANVAS_WIDTH);
        let height = &width * rect.height() / rect.width();
        Canvas { rect: rect.clone(), width, height }
    }

    fn x(&self, x: &Rational) -> String {
        let mapped = (x - self.rect.x0()) / self.rect.width() * &self.width;
        format_significant(mapped.to_f64(), 12)
    }

    // SVG's y axis points down
    fn y(&self, y: &Rational) -> String {
        let mapped = (self.rect.y1() - y) / self.rect.height() * &self.height;
        format_significant(mapped.to_f64(), 12)
    }

    fn rect_attrs(&self, r: &Rect) -> String {
        let w = r.width() / self.rect.width() * &self.width;
        let h = r.height() / self.rect.height() * &self.height;
        format!(
            "x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"",
            self.x(r.x0()),
            self.y(r.y1()),
            format_significant(w.to_f64(), 12),
            format_significant(h.to_f64(), 12)
        )
    }
}

pub fn render_svg(c: &Construction, options: &RenderOptions) -> String {
    let canvas = Canvas::new(&c.rect);
    let stroke = format_significant(options.stroke_scale, 12);
    let thin = format_significant(options.stroke_scale * 0.5, 12);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">",
        w = format_significant(canvas.width.to_f64(), 12),
        h = format_significant(canvas.height.to_f64(), 12),
    );
    let _ = writeln!(
        out,
        "  <rect class=\"frame\" {} fill=\"none\" stroke=\"#888888\" stroke-width=\"{thin}\"/>",
        canvas.rect_attrs(&c.rect)
    );
    if options.show_roots {
        for p in &c.probes {
            let _ = writeln!(
                out,
                "  <rect class=\"root\" data-probe=\"{}\" {} fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\"/>",
                p.id,
                canvas.rect_attrs(&p.root)
            );
        }
    }
    if options.show_probes {
        for p in &c.probes {
            let _ = writeln!(
                out,
                "  <rect class=\"probe\" data-probe=\"{}\" {} fill=\"none\" stroke=\"#d62728\" stroke-width=\"{thin}\"/>",
                p.id,
                canvas.rect_attrs(&p.rect)
            );
        }
    }
    for s in &c.segments {
        let (class, colour) = match s.role() {
            Role::Base => ("segment", "#000000"),
            Role::Diagonal => ("diagonal", "#1f77b4"),
        };
        let _ = writeln!(
            out,
            "  <line class=\"{class}\" data-id=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"{stroke}\"/>",
            s.id(),
            canvas.x(&s.p().x),
            canvas.y(&s.p().y),
            canvas.x(&s.q().x),
            canvas.y(&s.q().y),
        );
    }
    out.push_str("</svg>\n");
    out
}
