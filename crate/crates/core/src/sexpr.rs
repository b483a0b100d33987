//! Minimal S-expression reader with source positions.

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: String) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom { text: String, pos: Pos },
    List { items: Vec<SExpr>, pos: Pos },
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom { pos, .. } | SExpr::List { pos, .. } => *pos,
        }
    }
}

/// Reads exactly one expression; `None` for blank input.
pub fn parse(text: &str) -> Result<Option<SExpr>, Error> {
    parse_at(text, 1)
}

/// Like [`parse`], reporting line numbers offset so that `text` starts on `first_line`.
pub fn parse_at(text: &str, first_line: usize) -> Result<Option<SExpr>, Error> {
    let mut chars = Chars::new(text, first_line);
    chars.skip_ws();
    if chars.peek().is_none() {
        return Ok(None);
    }
    let e = read(&mut chars)?;
    chars.skip_ws();
    if let Some(c) = chars.peek() {
        return Err(chars.pos().error(format!("unexpected `{c}` after expression")));
    }
    Ok(Some(e))
}

struct Chars<'a> {
    inner: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Chars<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Chars {
            inner: text.chars().peekable(),
            line,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.inner.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.inner.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }
}

fn read(chars: &mut Chars<'_>) -> Result<SExpr, Error> {
    chars.skip_ws();
    let pos = chars.pos();
    match chars.peek() {
        None => Err(pos.error("unexpected end of input".into())),
        Some(')') => Err(pos.error("unexpected `)`".into())),
        Some('(') => {
            chars.bump();
            let mut items = Vec::new();
            loop {
                chars.skip_ws();
                match chars.peek() {
                    None => return Err(pos.error("unclosed `(`".into())),
                    Some(')') => {
                        chars.bump();
                        return Ok(SExpr::List { items, pos });
                    }
                    Some(_) => items.push(read(chars)?),
                }
            }
        }
        Some(_) => {
            let mut text = String::new();
            while let Some(c) = chars.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                text.push(c);
                chars.bump();
            }
            Ok(SExpr::Atom { text, pos })
        }
    }
}
