use super::ast::{Axis, Expr, Program, SignFilter, Stmt, StmtKind};
use crate::geometry::{
    circle_center_radius_of, circle_center_through, dist_sq, intersect_circle_circle,
    intersect_line_circle, intersect_line_line, line_through, Circle, GeometryError, Line, Point,
};
use crate::tower::{FieldElement, Tower, TowerError};
use std::collections::HashMap;
use std::fmt;

/// A failure while evaluating a statement (degenerate geometry, empty
/// intersection, division by zero, square root of a negative quantity).
/// Assertion failures are *not* runtime errors; they are recorded as
/// outcomes so a run can report every failed assertion at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for RuntimeError {}

#[derive(Debug, Clone)]
pub enum Value {
    Point(Point),
    Line(Line),
    Circle(Circle),
    Scalar(FieldElement),
}

/// The result of an `assert_zero`: the exact sign of the evaluated
/// expression, with the source text for reporting.
#[derive(Debug, Clone)]
pub struct AssertionOutcome {
    pub line: usize,
    pub col: usize,
    pub text: String,
    pub sign: i32,
}

impl AssertionOutcome {
    pub fn passed(&self) -> bool {
        self.sign == 0
    }
}

/// A measurement to be evaluated numerically (by the certified
/// measurement layer) after interpretation; the interpreter only resolves
/// the exact points involved.
#[derive(Debug, Clone)]
pub struct MeasureRequest {
    pub name: String,
    pub kind: MeasureKind,
}

#[derive(Debug, Clone)]
pub enum MeasureKind {
    Angle { p: Point, vertex: Point, q: Point },
    Length { p: Point, q: Point },
}

/// Everything drawable, in declaration order: named points, the defining
/// point pair of each line, and circle centers with exact squared radii.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub points: Vec<(String, Point)>,
    pub segments: Vec<(String, Point, Point)>,
    pub circles: Vec<(String, Point, FieldElement)>,
}

#[derive(Debug)]
pub struct InterpretedModel {
    pub tower: Tower,
    pub measures: Vec<MeasureRequest>,
    pub assertions: Vec<AssertionOutcome>,
    pub scene: Scene,
    env: HashMap<String, Value>,
}

impl InterpretedModel {
    pub fn value(&self, name: &str) -> Option<&Value> {
        self.env.get(name)
    }
}

struct Interp {
    tower: Tower,
    env: HashMap<String, Value>,
    measures: Vec<MeasureRequest>,
    assertions: Vec<AssertionOutcome>,
    scene: Scene,
}

/// Executes a parsed program. The parser has already enforced identifier
/// discipline, so lookups here cannot fail.
pub fn interpret(program: &Program) -> Result<InterpretedModel, RuntimeError> {
    let mut it = Interp {
        tower: Tower::new(),
        env: HashMap::new(),
        measures: Vec::new(),
        assertions: Vec::new(),
        scene: Scene::default(),
    };
    for stmt in &program.statements {
        it.execute(stmt)?;
    }
    Ok(InterpretedModel {
        tower: it.tower,
        measures: it.measures,
        assertions: it.assertions,
        scene: it.scene,
        env: it.env,
    })
}

impl Interp {
    fn fail(&self, stmt: &Stmt, message: String) -> RuntimeError {
        RuntimeError {
            line: stmt.line,
            col: stmt.col,
            message,
        }
    }

    fn point(&self, name: &str) -> Point {
        match &self.env[name] {
            Value::Point(p) => p.clone(),
            _ => unreachable!("parser guarantees '{name}' is a point"),
        }
    }

    fn execute(&mut self, stmt: &Stmt) -> Result<(), RuntimeError> {
        match &stmt.kind {
            StmtKind::PointLit { name, x, y } => {
                let px = self.eval(stmt, x)?;
                let py = self.eval(stmt, y)?;
                let p = Point::new(px, py);
                self.scene.points.push((name.clone(), p.clone()));
                self.env.insert(name.clone(), Value::Point(p));
            }
            StmtKind::PointIntersect {
                name,
                lhs,
                rhs,
                index,
                filter,
            } => {
                let candidates = self.intersect(stmt, lhs, rhs)?;
                let total = candidates.len();
                let kept = self.apply_filter(candidates, filter);
                let p = kept.get(*index as usize).cloned().ok_or_else(|| {
                    let detail = match (total, kept.len(), filter) {
                        (_, 0, Some(_)) => {
                            "no intersection point satisfies the filter".to_string()
                        }
                        (_, n, _) => format!(
                            "intersection index {index} out of range \
                             ({n} candidate point(s))"
                        ),
                    };
                    self.fail(stmt, detail)
                })?;
                self.scene.points.push((name.clone(), p.clone()));
                self.env.insert(name.clone(), Value::Point(p));
            }
            StmtKind::LineDecl { name, p, q } => {
                let (pp, pq) = (self.point(p), self.point(q));
                let l = line_through(&self.tower, &pp, &pq)
                    .map_err(|e| self.fail(stmt, e.to_string()))?;
                self.scene.segments.push((name.clone(), pp, pq));
                self.env.insert(name.clone(), Value::Line(l));
            }
            StmtKind::CircleThrough {
                name,
                center,
                through,
            } => {
                let (c, p) = (self.point(center), self.point(through));
                let circle = circle_center_through(&self.tower, &c, &p)
                    .map_err(|e| self.fail(stmt, e.to_string()))?;
                self.scene
                    .circles
                    .push((name.clone(), c, circle.radius_sq.clone()));
                self.env.insert(name.clone(), Value::Circle(circle));
            }
            StmtKind::CircleRadius { name, center, p, q } => {
                let (c, pp, pq) = (self.point(center), self.point(p), self.point(q));
                let circle = circle_center_radius_of(&self.tower, &c, &pp, &pq)
                    .map_err(|e| self.fail(stmt, e.to_string()))?;
                self.scene
                    .circles
                    .push((name.clone(), c, circle.radius_sq.clone()));
                self.env.insert(name.clone(), Value::Circle(circle));
            }
            StmtKind::MeasureAngle { name, p, vertex, q } => {
                self.measures.push(MeasureRequest {
                    name: name.clone(),
                    kind: MeasureKind::Angle {
                        p: self.point(p),
                        vertex: self.point(vertex),
                        q: self.point(q),
                    },
                });
            }
            StmtKind::MeasureLength { name, p, q } => {
                let (pp, pq) = (self.point(p), self.point(q));
                let d2 = dist_sq(&self.tower, &pp, &pq);
                // the exact length lives in the tower, so the name is
                // usable as a scalar in later expressions
                let d = self
                    .tower
                    .sqrt(&d2)
                    .map_err(|e| self.fail(stmt, e.to_string()))?;
                self.env.insert(name.clone(), Value::Scalar(d));
                self.measures.push(MeasureRequest {
                    name: name.clone(),
                    kind: MeasureKind::Length { p: pp, q: pq },
                });
            }
            StmtKind::AssertZero { expr } => {
                let v = self.eval(stmt, expr)?;
                let sign = self.tower.sign(&v);
                self.assertions.push(AssertionOutcome {
                    line: stmt.line,
                    col: stmt.col,
                    text: expr.to_string(),
                    sign,
                });
            }
        }
        Ok(())
    }

    fn intersect(&mut self, stmt: &Stmt, lhs: &str, rhs: &str) -> Result<Vec<Point>, RuntimeError> {
        let a = self.env[lhs].clone();
        let b = self.env[rhs].clone();
        let outcome: Result<Vec<Point>, GeometryError> = match (&a, &b) {
            (Value::Line(l1), Value::Line(l2)) => {
                intersect_line_line(&self.tower, l1, l2).map(|p| vec![p])
            }
            (Value::Line(l), Value::Circle(c)) | (Value::Circle(c), Value::Line(l)) => {
                intersect_line_circle(&mut self.tower, l, c)
            }
            (Value::Circle(c1), Value::Circle(c2)) => {
                intersect_circle_circle(&mut self.tower, c1, c2)
            }
            _ => unreachable!("parser guarantees curve operands"),
        };
        let pts = outcome.map_err(|e| self.fail(stmt, e.to_string()))?;
        if pts.is_empty() {
            return Err(self.fail(stmt, format!("'{lhs}' and '{rhs}' do not intersect")));
        }
        Ok(pts)
    }

    /// Filter first, index into the survivors (so `[0]` with a filter
    /// means "the first surviving point in canonical order").
    fn apply_filter(&self, pts: Vec<Point>, filter: &Option<SignFilter>) -> Vec<Point> {
        let Some(f) = filter else { return pts };
        pts.into_iter()
            .filter(|p| {
                let coord = match f.axis {
                    Axis::X => &p.x,
                    Axis::Y => &p.y,
                };
                let s = self.tower.sign(coord);
                if f.positive {
                    s > 0
                } else {
                    s < 0
                }
            })
            .collect()
    }

    fn eval(&mut self, stmt: &Stmt, expr: &Expr) -> Result<FieldElement, RuntimeError> {
        match expr {
            Expr::Int(n) => Ok(FieldElement::from_rational(num::BigRational::from_integer(
                n.clone(),
            ))),
            Expr::Phi => {
                let s5 = self
                    .tower
                    .sqrt(&FieldElement::from_integer(5))
                    .expect("5 is positive");
                let num = self.tower.add(&FieldElement::one(), &s5);
                Ok(self
                    .tower
                    .div(&num, &FieldElement::from_integer(2))
                    .expect("2 is nonzero"))
            }
            Expr::Scalar(name) => match &self.env[name] {
                Value::Scalar(v) => Ok(v.clone()),
                _ => unreachable!("parser guarantees '{name}' is a scalar"),
            },
            Expr::Sqrt(inner) => {
                let v = self.eval(stmt, inner)?;
                self.tower.sqrt(&v).map_err(|e| match e {
                    TowerError::NegativeRadicand => {
                        self.fail(stmt, "square root of a negative quantity".into())
                    }
                    other => self.fail(stmt, other.to_string()),
                })
            }
            Expr::Neg(inner) => {
                let v = self.eval(stmt, inner)?;
                Ok(self.tower.neg(&v))
            }
            Expr::Add(a, b) => {
                let (va, vb) = (self.eval(stmt, a)?, self.eval(stmt, b)?);
                Ok(self.tower.add(&va, &vb))
            }
            Expr::Sub(a, b) => {
                let (va, vb) = (self.eval(stmt, a)?, self.eval(stmt, b)?);
                Ok(self.tower.sub(&va, &vb))
            }
            Expr::Mul(a, b) => {
                let (va, vb) = (self.eval(stmt, a)?, self.eval(stmt, b)?);
                Ok(self.tower.mul(&va, &vb))
            }
            Expr::Div(a, b) => {
                let (va, vb) = (self.eval(stmt, a)?, self.eval(stmt, b)?);
                self.tower
                    .div(&va, &vb)
                    .map_err(|e| self.fail(stmt, e.to_string()))
            }
            Expr::Dist2(p, q) => {
                let (pp, pq) = (self.point(p), self.point(q));
                Ok(dist_sq(&self.tower, &pp, &pq))
            }
            Expr::Dist(p, q) => {
                let (pp, pq) = (self.point(p), self.point(q));
                let d2 = dist_sq(&self.tower, &pp, &pq);
                self.tower
                    .sqrt(&d2)
                    .map_err(|e| self.fail(stmt, e.to_string()))
            }
        }
    }
}
