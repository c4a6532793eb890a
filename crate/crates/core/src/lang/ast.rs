use num::bigint::BigInt;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Phi,
    Scalar(String),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Dist(String, String),
    Dist2(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// `where x > 0` etc.: keep only intersection points whose coordinate has
/// the given strict sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignFilter {
    pub axis: Axis,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    PointLit {
        name: String,
        x: Expr,
        y: Expr,
    },
    PointIntersect {
        name: String,
        lhs: String,
        rhs: String,
        index: u8,
        filter: Option<SignFilter>,
    },
    LineDecl {
        name: String,
        p: String,
        q: String,
    },
    CircleThrough {
        name: String,
        center: String,
        through: String,
    },
    CircleRadius {
        name: String,
        center: String,
        p: String,
        q: String,
    },
    MeasureAngle {
        name: String,
        p: String,
        vertex: String,
        q: String,
    },
    MeasureLength {
        name: String,
        p: String,
        q: String,
    },
    AssertZero {
        expr: Expr,
    },
}

/// A statement plus its source position.
#[derive(Debug, Clone)]
pub struct Stmt {
    pub line: usize,
    pub col: usize,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, Default)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

impl Program {
    /// Structural equality, ignoring source positions.
    pub fn same_ast(&self, other: &Program) -> bool {
        self.statements.len() == other.statements.len()
            && self
                .statements
                .iter()
                .zip(&other.statements)
                .all(|(a, b)| a.kind == b.kind)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Phi => write!(f, "phi"),
            Expr::Scalar(s) => write!(f, "{s}"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Dist(p, q) => write!(f, "dist({p}, {q})"),
            Expr::Dist2(p, q) => write!(f, "dist2({p}, {q})"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::PointLit { name, x, y } => write!(f, "point {name} = ({x}, {y})"),
            StmtKind::PointIntersect {
                name,
                lhs,
                rhs,
                index,
                filter,
            } => {
                write!(f, "point {name} = intersect({lhs}, {rhs})[{index}]")?;
                if let Some(fl) = filter {
                    let axis = match fl.axis {
                        Axis::X => "x",
                        Axis::Y => "y",
                    };
                    let cmp = if fl.positive { ">" } else { "<" };
                    write!(f, " where {axis} {cmp} 0")?;
                }
                Ok(())
            }
            StmtKind::LineDecl { name, p, q } => write!(f, "line {name} = {p} {q}"),
            StmtKind::CircleThrough {
                name,
                center,
                through,
            } => write!(f, "circle {name} = center {center} through {through}"),
            StmtKind::CircleRadius { name, center, p, q } => {
                write!(f, "circle {name} = center {center} radius dist({p}, {q})")
            }
            StmtKind::MeasureAngle { name, p, vertex, q } => {
                write!(f, "measure angle {name} = angle({p}, {vertex}, {q})")
            }
            StmtKind::MeasureLength { name, p, q } => {
                write!(f, "measure length {name} = dist({p}, {q})")
            }
            StmtKind::AssertZero { expr } => write!(f, "assert_zero({expr})"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
