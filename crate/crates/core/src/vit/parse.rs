use super::term::{is_symbol_char, Term};
use super::{Vit, VitError};
use crate::lex::{Pos, SyntaxError};
use crate::Atom;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(Atom),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(a) => format!("atom `{}`", a.text()),
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "`.`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, to: usize| {
        while *i < to {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    let scan = |from: usize, ok: &dyn Fn(char) -> bool| {
        let mut j = from;
        while j < chars.len() && ok(chars[j]) {
            j += 1;
        }
        j
    };

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let word = |c: char| c.is_alphanumeric() || c == '_';
        let (tok, end) = if c.is_whitespace() {
            let to = i + 1;
            advance(&mut i, &mut line, &mut col, to);
            continue;
        } else if c == '%' {
            let end = scan(i, &|c| c != '\n');
            advance(&mut i, &mut line, &mut col, end);
            continue;
        } else if c.is_ascii_lowercase() {
            let end = scan(i, &word);
            (Tok::Name(Atom::new(chars[i..end].iter().collect::<String>())), end)
        } else if c.is_ascii_uppercase() || c == '_' {
            let end = scan(i, &word);
            (Tok::Var(chars[i..end].iter().collect()), end)
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let end = scan(i + 1, &|c| c.is_ascii_digit());
            let text: String = chars[i..end].iter().collect();
            let n = text
                .parse()
                .map_err(|_| SyntaxError::new(pos, format!("integer `{text}` out of range")))?;
            (Tok::Int(n), end)
        } else if c == '\'' {
            let mut text = String::new();
            let mut j = i + 1;
            loop {
                match chars.get(j) {
                    None => return Err(SyntaxError::new(pos, "unterminated quoted atom")),
                    Some('\'') => break,
                    Some('\\') => match chars.get(j + 1) {
                        Some(&e @ ('\\' | '\'')) => {
                            text.push(e);
                            j += 2;
                        }
                        _ => return Err(SyntaxError::new(pos, "unknown escape in quoted atom")),
                    },
                    Some(&d) => {
                        text.push(d);
                        j += 1;
                    }
                }
            }
            (Tok::Name(Atom::quoted(text)), j + 1)
        } else if is_symbol_char(c) {
            let end = scan(i, &is_symbol_char);
            (Tok::Name(Atom::new(chars[i..end].iter().collect::<String>())), end)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' => Tok::End,
                _ => return Err(SyntaxError::new(pos, format!("unexpected character {c:?}"))),
            };
            (tok, i + 1)
        };
        out.push((tok, pos));
        advance(&mut i, &mut line, &mut col, end);
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&describe(&want)))
        }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError::new(self.pos(), format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Name(a) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.sequence(Tok::RParen)?;
                    if args.is_empty() {
                        return Err(self.unexpected("an argument"));
                    }
                    Ok(Term::Compound(a, args))
                } else {
                    Ok(Term::Atom(a))
                }
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Int(n))
            }
            Tok::LBracket => {
                self.bump();
                Ok(Term::List(self.sequence(Tok::RBracket)?))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// Comma-separated terms up to `close`, which is consumed.
    fn sequence(&mut self, close: Tok) -> Result<Vec<Term>, SyntaxError> {
        let mut items = Vec::new();
        if *self.peek() == close {
            self.bump();
            return Ok(items);
        }
        loop {
            items.push(self.term()?);
            if *self.peek() == Tok::Comma {
                self.bump();
                continue;
            }
            self.expect(close)?;
            return Ok(items);
        }
    }

    /// A top-level term with an optional terminating `.`.
    fn clause(&mut self) -> Result<(Term, Pos), SyntaxError> {
        let pos = self.pos();
        let t = self.term()?;
        if *self.peek() == Tok::End {
            self.bump();
        }
        Ok((t, pos))
    }
}

/// Parses a single term in interface-term syntax.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let (t, _) = p.clause()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// Parses text holding exactly one interface term.
pub fn parse_vit(text: &str) -> Result<Vit, VitError> {
    let t = parse_term(text)?;
    Vit::from_term(&t)
}

/// Parses a file of interface terms separated by whitespace.
///
/// A term with the wrong shape only fails its own entry; a syntax error stops
/// the scan because there is no reliable place to resume.
pub fn parse_vits(text: &str) -> Result<Vec<Result<Vit, VitError>>, SyntaxError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        let (t, pos) = p.clause()?;
        out.push(Vit::from_term(&t).map_err(|e| e.at(pos)));
    }
    Ok(out)
}
