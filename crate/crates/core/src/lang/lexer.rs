use num::bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Plus,
    Minus,
    Star,
    Slash,
    Less,
    Greater,
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Equals => "'='".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Less => "'<'".into(),
            Tok::Greater => "'>'".into(),
            Tok::Newline => "end of line".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Tokenizes the whole source. Newlines are significant (statements are
/// newline-delimited); comments run from `#` to end of line.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    for (line_idx, line) in source.lines().enumerate() {
        let line_no = line_idx + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let start_len = out.len();
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '(' => out.push(tok(Tok::LParen, line_no, col)),
                ')' => out.push(tok(Tok::RParen, line_no, col)),
                '[' => out.push(tok(Tok::LBracket, line_no, col)),
                ']' => out.push(tok(Tok::RBracket, line_no, col)),
                ',' => out.push(tok(Tok::Comma, line_no, col)),
                '=' => out.push(tok(Tok::Equals, line_no, col)),
                '+' => out.push(tok(Tok::Plus, line_no, col)),
                '-' => out.push(tok(Tok::Minus, line_no, col)),
                '*' => out.push(tok(Tok::Star, line_no, col)),
                '/' => out.push(tok(Tok::Slash, line_no, col)),
                '<' => out.push(tok(Tok::Less, line_no, col)),
                '>' => out.push(tok(Tok::Greater, line_no, col)),
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    let n = text.parse::<BigInt>().expect("digits parse");
                    out.push(tok(Tok::Int(n), line_no, start + 1));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                    {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    out.push(tok(Tok::Ident(text), line_no, start + 1));
                    continue;
                }
                other => {
                    return Err(LexError {
                        line: line_no,
                        col,
                        message: format!("unexpected character '{other}'"),
                    })
                }
            }
            i += 1;
        }
        if out.len() > start_len {
            out.push(tok(Tok::Newline, line_no, chars.len() + 1));
        }
    }
    Ok(out)
}

fn tok(tok: Tok, line: usize, col: usize) -> Token {
    Token { tok, line, col }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_point_decl() {
        let toks = tokenize("point A = (0, 0)").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(kinds.len(), 9); // point A = ( 0 , 0 ) + newline
        assert_eq!(*kinds[0], Tok::Ident("point".into()));
        assert_eq!(*kinds[8], Tok::Newline);
    }

    #[test]
    fn comments_and_blank_lines_vanish() {
        let toks = tokenize("# full comment\n\npoint A = (0, 0) # trailing\n").unwrap();
        assert!(toks.iter().all(|t| t.line == 3));
    }

    #[test]
    fn bad_character_reports_position() {
        let err = tokenize("point A = (0; 0)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 13));
    }
}
