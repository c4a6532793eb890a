//! Exact straightedge-and-compass primitives over tower elements.
//!
//! Points, lines and circles carry exact coordinates; the three
//! intersection operations generate every constructible point. Lines are
//! projective triples `a·x + b·y + c = 0` and circles store the squared
//! radius, so incidence tests never force tower growth.

use crate::tower::{FieldElement, Tower, TowerError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("coincident points")]
    CoincidentPoints,
    #[error("parallel lines")]
    ParallelLines,
    #[error("coincident lines")]
    CoincidentLines,
    #[error("concentric circles")]
    ConcentricCircles,
    #[error("degenerate circle (zero radius)")]
    ZeroRadius,
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Clone, Debug)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }
}

/// `a·x + b·y + c = 0`, unnormalized.
#[derive(Clone, Debug)]
pub struct Line {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

#[derive(Clone, Debug)]
pub struct Circle {
    pub center: Point,
    pub radius_sq: FieldElement,
}

pub fn points_equal(t: &Tower, p: &Point, q: &Point) -> bool {
    t.eq(&p.x, &q.x) && t.eq(&p.y, &q.y)
}

/// Squared distance between two points.
pub fn dist_sq(t: &Tower, p: &Point, q: &Point) -> FieldElement {
    let dx = t.sub(&p.x, &q.x);
    let dy = t.sub(&p.y, &q.y);
    t.add(&t.mul(&dx, &dx), &t.mul(&dy, &dy))
}

pub fn line_through(t: &Tower, p: &Point, q: &Point) -> Result<Line, GeometryError> {
    if points_equal(t, p, q) {
        return Err(GeometryError::CoincidentPoints);
    }
    // (y_q - y_p)·x - (x_q - x_p)·y + (x_q·y_p - x_p·y_q) = 0
    let a = t.sub(&q.y, &p.y);
    let b = t.sub(&p.x, &q.x);
    let c = t.sub(&t.mul(&q.x, &p.y), &t.mul(&p.x, &q.y));
    Ok(Line { a, b, c })
}

pub fn circle_center_through(t: &Tower, c: &Point, p: &Point) -> Result<Circle, GeometryError> {
    if points_equal(t, c, p) {
        return Err(GeometryError::CoincidentPoints);
    }
    Ok(Circle {
        center: c.clone(),
        radius_sq: dist_sq(t, c, p),
    })
}

/// Compass transfer: circle at `c` whose radius is the distance `|pq|`.
pub fn circle_center_radius_of(
    t: &Tower,
    c: &Point,
    p: &Point,
    q: &Point,
) -> Result<Circle, GeometryError> {
    if points_equal(t, p, q) {
        return Err(GeometryError::CoincidentPoints);
    }
    Ok(Circle {
        center: c.clone(),
        radius_sq: dist_sq(t, p, q),
    })
}

/// Exact incidence test.
pub fn on_line(t: &Tower, p: &Point, l: &Line) -> bool {
    let v = t.add(
        &t.add(&t.mul(&l.a, &p.x), &t.mul(&l.b, &p.y)),
        &l.c,
    );
    v.is_zero()
}

/// Exact incidence test.
pub fn on_circle(t: &Tower, p: &Point, c: &Circle) -> bool {
    t.sub(&dist_sq(t, p, &c.center), &c.radius_sq).is_zero()
}

pub fn intersect_line_line(t: &Tower, l1: &Line, l2: &Line) -> Result<Point, GeometryError> {
    let det = t.sub(&t.mul(&l1.a, &l2.b), &t.mul(&l2.a, &l1.b));
    if det.is_zero() {
        // same projective triple up to scale?
        let cr1 = t.sub(&t.mul(&l1.a, &l2.c), &t.mul(&l2.a, &l1.c));
        let cr2 = t.sub(&t.mul(&l1.b, &l2.c), &t.mul(&l2.b, &l1.c));
        return if cr1.is_zero() && cr2.is_zero() {
            Err(GeometryError::CoincidentLines)
        } else {
            Err(GeometryError::ParallelLines)
        };
    }
    // Cramer on {a·x + b·y = -c}
    let x_num = t.sub(&t.mul(&l1.b, &l2.c), &t.mul(&l2.b, &l1.c));
    let y_num = t.sub(&t.mul(&l2.a, &l1.c), &t.mul(&l1.a, &l2.c));
    let x = t.div(&x_num, &det)?;
    let y = t.div(&y_num, &det)?;
    Ok(Point { x, y })
}

/// Ascending lexicographic order by `(x, y)` via exact signs.
fn canonical_sort(t: &Tower, mut pts: Vec<Point>) -> Vec<Point> {
    if pts.len() == 2 {
        let dx = t.sign(&t.sub(&pts[1].x, &pts[0].x));
        let swap = match dx {
            -1 => true,
            0 => t.sign(&t.sub(&pts[1].y, &pts[0].y)) < 0,
            _ => false,
        };
        if swap {
            pts.swap(0, 1);
        }
    }
    pts
}

pub fn intersect_line_circle(
    t: &mut Tower,
    l: &Line,
    c: &Circle,
) -> Result<Vec<Point>, GeometryError> {
    // foot of the perpendicular from the center
    let n2 = t.add(&t.mul(&l.a, &l.a), &t.mul(&l.b, &l.b));
    // n2 = a² + b² is nonzero for any valid line
    let s_num = t.add(
        &t.add(&t.mul(&l.a, &c.center.x), &t.mul(&l.b, &c.center.y)),
        &l.c,
    );
    let s = t.div(&s_num, &n2)?;
    let foot = Point {
        x: t.sub(&c.center.x, &t.mul(&l.a, &s)),
        y: t.sub(&c.center.y, &t.mul(&l.b, &s)),
    };
    // points are foot ± u·(b, -a) with u² = (r² - |center-foot|²)/n2
    let rem = t.sub(&c.radius_sq, &dist_sq(t, &c.center, &foot));
    match t.sign(&rem) {
        -1 => return Ok(vec![]),
        0 => return Ok(vec![foot]),
        _ => {}
    }
    let u_sq = t.div(&rem, &n2)?;
    let u = t.sqrt(&u_sq)?;
    let dx = t.mul(&l.b, &u);
    let dy = t.neg(&t.mul(&l.a, &u));
    let p1 = Point {
        x: t.sub(&foot.x, &dx),
        y: t.sub(&foot.y, &dy),
    };
    let p2 = Point {
        x: t.add(&foot.x, &dx),
        y: t.add(&foot.y, &dy),
    };
    Ok(canonical_sort(t, vec![p1, p2]))
}

pub fn intersect_circle_circle(
    t: &mut Tower,
    c1: &Circle,
    c2: &Circle,
) -> Result<Vec<Point>, GeometryError> {
    if points_equal(t, &c1.center, &c2.center) {
        return Err(GeometryError::ConcentricCircles);
    }
    // radical line: subtract the two circle equations
    let two = FieldElement::from_integer(2);
    let a = t.mul(&two, &t.sub(&c2.center.x, &c1.center.x));
    let b = t.mul(&two, &t.sub(&c2.center.y, &c1.center.y));
    let norm1 = t.add(
        &t.mul(&c1.center.x, &c1.center.x),
        &t.mul(&c1.center.y, &c1.center.y),
    );
    let norm2 = t.add(
        &t.mul(&c2.center.x, &c2.center.x),
        &t.mul(&c2.center.y, &c2.center.y),
    );
    let c = t.sub(&t.sub(&norm1, &c1.radius_sq), &t.sub(&norm2, &c2.radius_sq));
    let radical = Line { a, b, c };
    intersect_line_circle(t, &radical, c1)
}
