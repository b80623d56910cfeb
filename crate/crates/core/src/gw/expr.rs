//! Tiny expression language for Grothendieck–Witt arithmetic.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | INT | '<' INT (',' INT)* '>' | 'h' | '(' expr ')'
//! ```
//!
//! A bare integer `n` means `n·⟨1⟩`, `h` is the hyperbolic form `⟨1, −1⟩`.

use super::{FieldDescriptor, GwElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Plus,
    Minus,
    Star,
    Comma,
    LAngle,
    RAngle,
    LParen,
    RParen,
    Hyperbolic,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    chars.next();
                }
                let n = src[i..end]
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {:?} out of range", &src[i..end])))?;
                out.push(Token::Int(n));
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            ',' => Token::Comma,
            '<' => Token::LAngle,
            '>' => Token::RAngle,
            '(' => Token::LParen,
            ')' => Token::RParen,
            'h' => Token::Hyperbolic,
            other => return Err(Error::Parse(format!("unexpected character {other:?} at {i}"))),
        };
        chars.next();
        out.push(tok);
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    field: FieldDescriptor,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<GwElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GwElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GwElement> {
        match self.next() {
            Some(Token::Minus) => Ok(self.factor()?.neg()),
            Some(Token::Int(n)) => Ok(GwElement::one(self.field).scale(n)),
            Some(Token::Hyperbolic) => Ok(GwElement::hyperbolic(self.field)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::LAngle) => {
                let mut entries = vec![self.signed_int()?];
                while self.peek() == Some(&Token::Comma) {
                    self.next();
                    entries.push(self.signed_int()?);
                }
                self.expect(Token::RAngle)?;
                GwElement::diagonal(self.field, &entries)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        match self.next() {
            Some(Token::Minus) => match self.next() {
                Some(Token::Int(n)) => Ok(-n),
                other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
            },
            Some(Token::Int(n)) => Ok(n),
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }
}

/// Evaluates a form expression such as `"<2,3> - <6>"` in `GW(field)`.
pub fn parse_expression(field: FieldDescriptor, src: &str) -> Result<GwElement> {
    let tokens = lex(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens: &tokens, pos: 0, field };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
