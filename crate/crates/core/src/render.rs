//! Deterministic SVG 1.1 rendering of interpreted scenes. The viewport is
//! y-up mathematical coordinates mapped to y-down screen pixels; stroke
//! widths and label offsets are fixed so identical inputs give identical
//! bytes. Render coordinates are doubles derived from the exact values at
//! 12 certified decimals.

use crate::lang::{InterpretedModel, MeasureKind};
use crate::measure::{certify, golden_constants, Kind, Measurement};
use crate::tower::{FieldElement, Tower};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("invalid viewport: size must be positive")]
    InvalidViewport,
    #[error("coordinate could not be certified to 12 decimals")]
    Coordinate,
}

const MARGIN_PX: f64 = 40.0;
const STROKE_MAIN: &str = "#202020";
const STROKE_CIRCLE: &str = "#5a5a8a";
const STROKE_ARC: &str = "#a03030";
const POINT_RADIUS_PX: f64 = 3.0;
const LABEL_OFFSET_PX: f64 = 7.0;
const ARC_SEGMENTS: usize = 48;

/// A double from an exact value via its 12-digit certified decimal, so
/// the rendered coordinates do not depend on evaluation order.
fn coord(t: &Tower, x: &FieldElement) -> Result<f64, RenderError> {
    let (_, dec) = certify(12, |ctx| Some(t.approx(x, ctx.prec)))
        .map_err(|_| RenderError::Coordinate)?;
    dec.parse().map_err(|_| RenderError::Coordinate)
}

struct Viewport {
    min_x: f64,
    min_y: f64,
    scale: f64,
    size: f64,
    off_x: f64,
    off_y: f64,
}

impl Viewport {
    fn fit(xs: &[f64], ys: &[f64], size: u32) -> Result<Viewport, RenderError> {
        if size == 0 {
            return Err(RenderError::InvalidViewport);
        }
        let size = f64::from(size);
        let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let inner = (size - 2.0 * MARGIN_PX).max(1.0);
        let scale = inner / span_x.max(span_y);
        // center the content in the square canvas
        let off_x = (inner - span_x * scale) / 2.0 + MARGIN_PX;
        let off_y = (inner - span_y * scale) / 2.0 + MARGIN_PX;
        Ok(Viewport {
            min_x,
            min_y,
            scale,
            size,
            off_x,
            off_y,
        })
    }

    fn px(&self, x: f64) -> f64 {
        self.off_x + (x - self.min_x) * self.scale
    }

    /// y-up world to y-down screen.
    fn py(&self, y: f64) -> f64 {
        self.size - self.off_y - (y - self.min_y) * self.scale
    }
}

fn fmt_px(v: f64) -> String {
    format!("{v:.3}")
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Svg {
        Svg { body: String::new() }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str) {
        writeln!(
            self.body,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.5\" />",
            fmt_px(x1),
            fmt_px(y1),
            fmt_px(x2),
            fmt_px(y2),
        )
        .unwrap();
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, stroke: &str) {
        writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\" />",
            fmt_px(cx),
            fmt_px(cy),
            fmt_px(r),
        )
        .unwrap();
    }

    fn dot(&mut self, cx: f64, cy: f64) {
        writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{STROKE_MAIN}\" />",
            fmt_px(cx),
            fmt_px(cy),
            fmt_px(POINT_RADIUS_PX),
        )
        .unwrap();
    }

    fn text(&mut self, x: f64, y: f64, fill: &str, content: &str) {
        writeln!(
            self.body,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" fill=\"{fill}\">{content}</text>",
            fmt_px(x),
            fmt_px(y),
        )
        .unwrap();
    }

    /// Circular arc as a polyline path; segment count is fixed so the
    /// bytes are stable.
    fn arc(&mut self, cx: f64, cy: f64, r: f64, a_start: f64, a_sweep: f64) {
        let mut d = String::new();
        for i in 0..=ARC_SEGMENTS {
            let a = a_start + a_sweep * (i as f64) / (ARC_SEGMENTS as f64);
            // screen angles run clockwise because y is flipped
            let x = cx + r * a.cos();
            let y = cy - r * a.sin();
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{}{} {} ", cmd, fmt_px(x), fmt_px(y)).unwrap();
        }
        writeln!(
            self.body,
            "  <path d=\"{}\" fill=\"none\" stroke=\"{STROKE_ARC}\" stroke-width=\"1.5\" />",
            d.trim_end(),
        )
        .unwrap();
    }

    fn finish(self, size: f64) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">\n\
             {body}</svg>\n",
            w = fmt_px(size),
            body = self.body,
        )
    }
}

/// Renders an interpreted scene: declared circles, segments, labeled
/// points, and one arc per angle measurement (labeled with its certified
/// decimal value).
pub fn render_scene(
    model: &InterpretedModel,
    measures: &[Measurement],
    size: u32,
) -> Result<String, RenderError> {
    let t = &model.tower;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut points = Vec::new();
    for (name, p) in &model.scene.points {
        let (x, y) = (coord(t, &p.x)?, coord(t, &p.y)?);
        xs.push(x);
        ys.push(y);
        points.push((name.clone(), x, y));
    }
    let mut segments = Vec::new();
    for (_, p, q) in &model.scene.segments {
        let seg = (
            coord(t, &p.x)?,
            coord(t, &p.y)?,
            coord(t, &q.x)?,
            coord(t, &q.y)?,
        );
        xs.extend([seg.0, seg.2]);
        ys.extend([seg.1, seg.3]);
        segments.push(seg);
    }
    let mut circles = Vec::new();
    for (_, c, r_sq) in &model.scene.circles {
        let (cx, cy) = (coord(t, &c.x)?, coord(t, &c.y)?);
        let r = coord(t, r_sq)?.max(0.0).sqrt();
        xs.extend([cx - r, cx + r]);
        ys.extend([cy - r, cy + r]);
        circles.push((cx, cy, r));
    }
    if xs.is_empty() {
        xs.push(0.0);
        ys.push(0.0);
    }
    let vp = Viewport::fit(&xs, &ys, size)?;

    let mut svg = Svg::new();
    for (cx, cy, r) in &circles {
        svg.circle(vp.px(*cx), vp.py(*cy), r * vp.scale, STROKE_CIRCLE);
    }
    for (x1, y1, x2, y2) in &segments {
        svg.line(vp.px(*x1), vp.py(*y1), vp.px(*x2), vp.py(*y2), STROKE_MAIN);
    }
    for (req, m) in model.measures.iter().zip(measures) {
        if let MeasureKind::Angle { p, vertex, q } = &req.kind {
            debug_assert!(matches!(m.kind, Kind::Angle));
            let (vx, vy) = (coord(t, &vertex.x)?, coord(t, &vertex.y)?);
            let a1 = angle_of(vx, vy, coord(t, &p.x)?, coord(t, &p.y)?);
            let a2 = angle_of(vx, vy, coord(t, &q.x)?, coord(t, &q.y)?);
            let mut sweep = a2 - a1;
            while sweep > std::f64::consts::PI {
                sweep -= 2.0 * std::f64::consts::PI;
            }
            while sweep < -std::f64::consts::PI {
                sweep += 2.0 * std::f64::consts::PI;
            }
            let r = 0.18 * (vp.size - 2.0 * MARGIN_PX);
            svg.arc(vp.px(vx), vp.py(vy), r, a1, sweep);
            let mid = a1 + sweep / 2.0;
            let lx = vp.px(vx) + (r + 2.0 * LABEL_OFFSET_PX) * mid.cos();
            let ly = vp.py(vy) - (r + 2.0 * LABEL_OFFSET_PX) * mid.sin();
            svg.text(lx, ly, STROKE_ARC, &format!("{} = {}°", m.name, m.decimal));
        }
    }
    for (name, x, y) in &points {
        svg.dot(vp.px(*x), vp.py(*y));
        svg.text(
            vp.px(*x) + LABEL_OFFSET_PX,
            vp.py(*y) - LABEL_OFFSET_PX,
            STROKE_MAIN,
            name,
        );
    }
    Ok(svg.finish(vp.size))
}

fn angle_of(cx: f64, cy: f64, x: f64, y: f64) -> f64 {
    (y - cy).atan2(x - cx)
}

/// The golden-angle figure: a unit circle, two radii separated by the
/// golden angle, and the labeled arc between them. The angle itself is
/// not constructible, so this figure is drawn directly rather than from a
/// construction file.
pub fn render_golden(digits: usize, size: u32) -> Result<String, RenderError> {
    if size == 0 {
        return Err(RenderError::InvalidViewport);
    }
    let (_, beta, _) = golden_constants(digits).map_err(|_| RenderError::Coordinate)?;
    let beta_rad: f64 = beta
        .value
        .to_f64()
        .to_radians();
    let size_f = f64::from(size);
    let inner = (size_f - 2.0 * MARGIN_PX).max(1.0);
    let r = inner / 2.0;
    let (cx, cy) = (size_f / 2.0, size_f / 2.0);

    let mut svg = Svg::new();
    svg.circle(cx, cy, r, STROKE_CIRCLE);
    svg.line(cx, cy, cx + r, cy, STROKE_MAIN);
    svg.line(
        cx,
        cy,
        cx + r * beta_rad.cos(),
        cy - r * beta_rad.sin(),
        STROKE_MAIN,
    );
    let arc_r = 0.35 * r;
    svg.arc(cx, cy, arc_r, 0.0, beta_rad);
    let mid = beta_rad / 2.0;
    svg.text(
        cx + (arc_r + 2.0 * LABEL_OFFSET_PX) * mid.cos() - 30.0,
        cy - (arc_r + 2.0 * LABEL_OFFSET_PX) * mid.sin(),
        STROKE_ARC,
        &format!("{}°", beta.decimal),
    );
    svg.dot(cx, cy);
    svg.text(cx + LABEL_OFFSET_PX, cy - LABEL_OFFSET_PX, STROKE_MAIN, "O");
    Ok(svg.finish(size_f))
}
