use super::ast::{Axis, Expr, Program, SignFilter, Stmt, StmtKind};
use super::lexer::{tokenize, Tok, Token};
use super::Diagnostic;
use std::collections::HashMap;

const KEYWORDS: &[&str] = &[
    "point",
    "line",
    "circle",
    "center",
    "through",
    "radius",
    "intersect",
    "where",
    "measure",
    "angle",
    "length",
    "assert_zero",
    "sqrt",
    "phi",
    "dist",
    "dist2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SymKind {
    Point,
    Line,
    Circle,
    Scalar,
    Angle,
}

impl SymKind {
    fn label(&self) -> &'static str {
        match self {
            SymKind::Point => "point",
            SymKind::Line => "line",
            SymKind::Circle => "circle",
            SymKind::Scalar => "scalar",
            SymKind::Angle => "angle measurement",
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    symbols: HashMap<String, SymKind>,
    diagnostics: Vec<Diagnostic>,
}

/// Parses a `.euclid` source into a program, or a list of diagnostics.
/// Identifier discipline (declare-before-use, no redeclaration, kind
/// agreement) is checked here so the interpreter can assume a well-formed
/// program.
pub fn parse(source: &str) -> Result<Program, Vec<Diagnostic>> {
    let tokens = match tokenize(source) {
        Ok(t) => t,
        Err(e) => {
            return Err(vec![Diagnostic {
                line: e.line,
                col: e.col,
                message: e.message,
            }])
        }
    };
    let mut p = Parser {
        tokens,
        pos: 0,
        symbols: HashMap::new(),
        diagnostics: Vec::new(),
    };
    let mut program = Program::default();
    while !p.at_end() {
        match p.statement() {
            Ok(stmt) => program.statements.push(stmt),
            Err(d) => {
                p.diagnostics.push(d);
                p.skip_to_newline();
            }
        }
    }
    if p.diagnostics.is_empty() {
        Ok(program)
    } else {
        Err(p.diagnostics)
    }
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn error(&self, expected: &str) -> Diagnostic {
        let (line, col) = self.here();
        let found = match self.peek() {
            Some(t) => t.tok.describe(),
            None => "end of input".into(),
        };
        Diagnostic {
            line,
            col,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<Token> {
        match self.peek() {
            Some(t) if t.tok == tok => Ok(self.advance().unwrap()),
            _ => Err(self.error(expected)),
        }
    }

    fn skip_to_newline(&mut self) {
        while let Some(t) = self.advance() {
            if t.tok == Tok::Newline {
                break;
            }
        }
    }

    /// Any identifier-shaped token, including keywords (callers that need
    /// a fresh or known name use `fresh_name` / `reference`).
    fn ident_text(&mut self, expected: &str) -> PResult<(String, usize, usize)> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(_), ..
            }) => {
                let t = self.advance().unwrap();
                if let Tok::Ident(s) = t.tok {
                    Ok((s, t.line, t.col))
                } else {
                    unreachable!()
                }
            }
            _ => Err(self.error(expected)),
        }
    }

    /// Keyword match by text.
    fn keyword(&mut self, kw: &str) -> PResult<Token> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s), ..
            }) if s == kw => Ok(self.advance().unwrap()),
            _ => Err(self.error(&format!("'{kw}'"))),
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == kw)
    }

    /// A new identifier being declared: not a keyword, not yet bound.
    fn fresh_name(&mut self, what: &str) -> PResult<String> {
        let (name, line, col) = self.ident_text(&format!("{what} name"))?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(Diagnostic {
                line,
                col,
                message: format!("'{name}' is a reserved keyword"),
            });
        }
        if self.symbols.contains_key(&name) {
            return Err(Diagnostic {
                line,
                col,
                message: format!("duplicate identifier '{name}'"),
            });
        }
        Ok(name)
    }

    /// A reference to an already-declared identifier of the given kind.
    fn reference(&mut self, kind: SymKind) -> PResult<String> {
        let (name, line, col) = self.ident_text(&format!("{} name", kind.label()))?;
        match self.symbols.get(&name) {
            None => Err(Diagnostic {
                line,
                col,
                message: format!("use of undeclared identifier '{name}'"),
            }),
            Some(k) if *k != kind => Err(Diagnostic {
                line,
                col,
                message: format!(
                    "'{name}' is a {}, expected a {}",
                    k.label(),
                    kind.label()
                ),
            }),
            Some(_) => Ok(name),
        }
    }

    /// Reference to a line or circle (intersect operands).
    fn curve_reference(&mut self) -> PResult<String> {
        let (name, line, col) = self.ident_text("line or circle name")?;
        match self.symbols.get(&name) {
            Some(SymKind::Line) | Some(SymKind::Circle) => Ok(name),
            Some(k) => Err(Diagnostic {
                line,
                col,
                message: format!("'{name}' is a {}, expected a line or circle", k.label()),
            }),
            None => Err(Diagnostic {
                line,
                col,
                message: format!("use of undeclared identifier '{name}'"),
            }),
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let (line, col) = self.here();
        let kind = if self.peek_keyword("point") {
            self.point_stmt()?
        } else if self.peek_keyword("line") {
            self.line_stmt()?
        } else if self.peek_keyword("circle") {
            self.circle_stmt()?
        } else if self.peek_keyword("measure") {
            self.measure_stmt()?
        } else if self.peek_keyword("assert_zero") {
            self.assert_stmt()?
        } else {
            return Err(self.error("a statement ('point', 'line', 'circle', 'measure', or 'assert_zero')"));
        };
        self.end_of_statement()?;
        Ok(Stmt { line, col, kind })
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) if t.tok == Tok::Newline => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error("end of statement")),
        }
    }

    fn point_stmt(&mut self) -> PResult<StmtKind> {
        self.keyword("point")?;
        let name = self.fresh_name("point")?;
        self.expect(Tok::Equals, "'='")?;
        let kind = if self.peek_keyword("intersect") {
            self.keyword("intersect")?;
            self.expect(Tok::LParen, "'('")?;
            let lhs = self.curve_reference()?;
            self.expect(Tok::Comma, "','")?;
            let rhs = self.curve_reference()?;
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::LBracket, "'['")?;
            let (idx_line, idx_col) = self.here();
            let index = match self.advance().map(|t| t.tok) {
                Some(Tok::Int(n)) if n == 0u8.into() => 0u8,
                Some(Tok::Int(n)) if n == 1u8.into() => 1u8,
                _ => {
                    return Err(Diagnostic {
                        line: idx_line,
                        col: idx_col,
                        message: "expected intersection index 0 or 1".into(),
                    })
                }
            };
            self.expect(Tok::RBracket, "']'")?;
            let filter = if self.peek_keyword("where") {
                self.keyword("where")?;
                let (axis_name, a_line, a_col) = self.ident_text("'x' or 'y'")?;
                let axis = match axis_name.as_str() {
                    "x" => Axis::X,
                    "y" => Axis::Y,
                    _ => {
                        return Err(Diagnostic {
                            line: a_line,
                            col: a_col,
                            message: format!("expected 'x' or 'y', found '{axis_name}'"),
                        })
                    }
                };
                let positive = match self.advance().map(|t| t.tok) {
                    Some(Tok::Greater) => true,
                    Some(Tok::Less) => false,
                    _ => return Err(self.error("'<' or '>'")),
                };
                match self.advance().map(|t| t.tok) {
                    Some(Tok::Int(n)) if n == 0u8.into() => {}
                    _ => return Err(self.error("'0'")),
                }
                Some(SignFilter { axis, positive })
            } else {
                None
            };
            StmtKind::PointIntersect {
                name: name.clone(),
                lhs,
                rhs,
                index,
                filter,
            }
        } else {
            self.expect(Tok::LParen, "'('")?;
            let x = self.expr()?;
            self.expect(Tok::Comma, "','")?;
            let y = self.expr()?;
            self.expect(Tok::RParen, "')'")?;
            StmtKind::PointLit {
                name: name.clone(),
                x,
                y,
            }
        };
        self.symbols.insert(name, SymKind::Point);
        Ok(kind)
    }

    fn line_stmt(&mut self) -> PResult<StmtKind> {
        self.keyword("line")?;
        let name = self.fresh_name("line")?;
        self.expect(Tok::Equals, "'='")?;
        let p = self.reference(SymKind::Point)?;
        let q = self.reference(SymKind::Point)?;
        self.symbols.insert(name.clone(), SymKind::Line);
        Ok(StmtKind::LineDecl { name, p, q })
    }

    fn circle_stmt(&mut self) -> PResult<StmtKind> {
        self.keyword("circle")?;
        let name = self.fresh_name("circle")?;
        self.expect(Tok::Equals, "'='")?;
        self.keyword("center")?;
        let center = self.reference(SymKind::Point)?;
        let kind = if self.peek_keyword("through") {
            self.keyword("through")?;
            let through = self.reference(SymKind::Point)?;
            StmtKind::CircleThrough {
                name: name.clone(),
                center,
                through,
            }
        } else {
            self.keyword("radius")?;
            self.keyword("dist")?;
            self.expect(Tok::LParen, "'('")?;
            let p = self.reference(SymKind::Point)?;
            self.expect(Tok::Comma, "','")?;
            let q = self.reference(SymKind::Point)?;
            self.expect(Tok::RParen, "')'")?;
            StmtKind::CircleRadius {
                name: name.clone(),
                center,
                p,
                q,
            }
        };
        self.symbols.insert(name, SymKind::Circle);
        Ok(kind)
    }

    fn measure_stmt(&mut self) -> PResult<StmtKind> {
        self.keyword("measure")?;
        if self.peek_keyword("angle") {
            self.keyword("angle")?;
            let name = self.fresh_name("measurement")?;
            self.expect(Tok::Equals, "'='")?;
            self.keyword("angle")?;
            self.expect(Tok::LParen, "'('")?;
            let p = self.reference(SymKind::Point)?;
            self.expect(Tok::Comma, "','")?;
            let vertex = self.reference(SymKind::Point)?;
            self.expect(Tok::Comma, "','")?;
            let q = self.reference(SymKind::Point)?;
            self.expect(Tok::RParen, "')'")?;
            // angle values are certified numerics, not tower elements, so
            // the name may not reappear inside expressions
            self.symbols.insert(name.clone(), SymKind::Angle);
            Ok(StmtKind::MeasureAngle { name, p, vertex, q })
        } else {
            self.keyword("length")?;
            let name = self.fresh_name("measurement")?;
            self.expect(Tok::Equals, "'='")?;
            self.keyword("dist")?;
            self.expect(Tok::LParen, "'('")?;
            let p = self.reference(SymKind::Point)?;
            self.expect(Tok::Comma, "','")?;
            let q = self.reference(SymKind::Point)?;
            self.expect(Tok::RParen, "')'")?;
            self.symbols.insert(name.clone(), SymKind::Scalar);
            Ok(StmtKind::MeasureLength { name, p, q })
        }
    }

    fn assert_stmt(&mut self) -> PResult<StmtKind> {
        self.keyword("assert_zero")?;
        self.expect(Tok::LParen, "'('")?;
        let expr = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(StmtKind::AssertZero { expr })
    }

    // expression grammar: expr > term > factor > atom

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Plus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Star) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.advance();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(_)) => {
                let t = self.advance().unwrap();
                if let Tok::Int(n) = t.tok {
                    Ok(Expr::Int(n))
                } else {
                    unreachable!()
                }
            }
            Some(Tok::LParen) => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "phi" => {
                    self.advance();
                    Ok(Expr::Phi)
                }
                "sqrt" => {
                    self.advance();
                    self.expect(Tok::LParen, "'('")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Sqrt(Box::new(inner)))
                }
                "dist" | "dist2" => {
                    let squared = name == "dist2";
                    self.advance();
                    self.expect(Tok::LParen, "'('")?;
                    let p = self.reference(SymKind::Point)?;
                    self.expect(Tok::Comma, "','")?;
                    let q = self.reference(SymKind::Point)?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(if squared {
                        Expr::Dist2(p, q)
                    } else {
                        Expr::Dist(p, q)
                    })
                }
                _ => {
                    let scalar = self.reference(SymKind::Scalar)?;
                    Ok(Expr::Scalar(scalar))
                }
            },
            _ => Err(self.error("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_point_literal() {
        let p = parse("point A = (0, 0)").unwrap();
        assert_eq!(p.statements.len(), 1);
        assert!(matches!(&p.statements[0].kind, StmtKind::PointLit { name, .. } if name == "A"));
    }

    #[test]
    fn parses_phi_literal() {
        let p = parse("point P = ((1+sqrt(5))/2, 0)").unwrap();
        match &p.statements[0].kind {
            StmtKind::PointLit { x, .. } => {
                assert!(matches!(x, Expr::Div(_, _)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_comma_is_a_syntax_error() {
        let errs = parse("point A = (0 0)").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!((errs[0].line, errs[0].col), (1, 14));
        assert!(errs[0].message.contains("','"), "{}", errs[0].message);
    }

    #[test]
    fn duplicate_identifier() {
        let errs = parse("point A = (0, 0)\npoint A = (1, 1)").unwrap_err();
        assert!(errs[0].message.contains("duplicate identifier 'A'"));
    }

    #[test]
    fn use_before_declaration() {
        let errs = parse("line l = A B").unwrap_err();
        assert!(errs[0].message.contains("undeclared identifier 'A'"));
    }

    #[test]
    fn keyword_cannot_be_declared() {
        let errs = parse("point sqrt = (0, 0)").unwrap_err();
        assert!(errs[0].message.contains("reserved keyword"));
    }

    #[test]
    fn kind_mismatch_reported() {
        let errs = parse("point A = (0, 0)\npoint B = (1, 0)\nline l = A B\npoint C = intersect(l, A)[0]").unwrap_err();
        assert!(errs[0].message.contains("expected a line or circle"));
    }

    #[test]
    fn angle_measurement_is_not_a_scalar() {
        let src = "\
point A = (0, 0)
point B = (1, 0)
point C = (0, 1)
measure angle t = angle(A, B, C)
assert_zero(t)
";
        let errs = parse(src).unwrap_err();
        assert!(errs[0].message.contains("angle measurement"), "{}", errs[0].message);
    }

    #[test]
    fn full_construction_parses() {
        let src = "\
# smoke
point A = (0, 0)
point B = (1, 0)
circle c1 = center A through B
circle c2 = center B through A
point C = intersect(c1, c2)[1] where y > 0
line ab = A B
measure angle top = angle(A, C, B)
measure length side = dist(A, C)
assert_zero(dist2(A, C) - 1)
assert_zero(side - 1)
";
        let p = parse(src).unwrap();
        assert_eq!(p.statements.len(), 10);
    }

    #[test]
    fn pretty_print_roundtrip() {
        let src = "\
point A = (0, 0)
point B = ((1+sqrt(5))/2, -3/4)
circle c1 = center A through B
circle c2 = center B radius dist(A, B)
point C = intersect(c1, c2)[0] where x < 0
measure length d = dist(A, C)
assert_zero(dist2(A, C) - d*d)
";
        let p1 = parse(src).unwrap();
        let printed = p1.to_string();
        let p2 = parse(&printed).unwrap();
        assert!(p1.same_ast(&p2), "printed form:\n{printed}");
    }

    #[test]
    fn errors_recover_per_line() {
        let errs = parse("point A = (0 0)\npoint B = (1, 1)\nline l = B C").unwrap_err();
        assert_eq!(errs.len(), 2);
        assert_eq!(errs[0].line, 1);
        assert_eq!(errs[1].line, 3);
    }
}
