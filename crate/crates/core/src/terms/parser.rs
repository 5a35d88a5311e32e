//! Recursive-descent parser for Boolean terms.
//!
//! ```text
//! term   := xor ( '+' xor )*
//! xor    := factor ( '^' factor )*
//! factor := atom ( '*' atom )*
//! atom   := '-' atom | '(' term ')' | var | '0' | '1'
//! var    := 'x' digit+
//! ```
//!
//! Binary operators associate to the left. Whitespace is ignored.

use thiserror::Error;

use super::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected ')'")]
    UnclosedParen,
    #[error("variable index overflow")]
    IndexOverflow,
    #[error("'x' must be followed by digits")]
    MissingIndex,
}

/// Largest accepted variable index.
pub const MAX_VAR_INDEX: usize = u32::MAX as usize;

pub(super) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    pub(super) fn parse_all(mut self) -> Result<Term, ParseError> {
        let term = self.term()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(term),
            Some(c) => Err(self.error(ParseErrorKind::Unexpected(c))),
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.xor()?;
        while self.eat('+') {
            let rhs = self.xor()?;
            lhs = Term::Join(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('^') {
            let rhs = self.factor()?;
            lhs = Term::SymDiff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.atom()?;
        while self.eat('*') {
            let rhs = self.atom()?;
            lhs = Term::Meet(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error(ParseErrorKind::UnexpectedEnd));
        };
        match c {
            '-' => {
                self.pos += 1;
                Ok(Term::Compl(Box::new(self.atom()?)))
            }
            '(' => {
                self.pos += 1;
                let inner = self.term()?;
                if self.eat(')') {
                    Ok(inner)
                } else {
                    self.skip_ws();
                    Err(self.error(ParseErrorKind::UnclosedParen))
                }
            }
            '0' => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            '1' => {
                self.pos += 1;
                Ok(Term::One)
            }
            'x' => {
                self.pos += 1;
                self.var_index().map(Term::Var)
            }
            other => Err(self.error(ParseErrorKind::Unexpected(other))),
        }
    }

    fn var_index(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(ParseErrorKind::MissingIndex));
        }
        let text = &self.src[start..start + digits];
        let index = text
            .parse::<usize>()
            .ok()
            .filter(|&i| i <= MAX_VAR_INDEX)
            .ok_or(ParseError { position: start, kind: ParseErrorKind::IndexOverflow })?;
        self.pos += digits;
        Ok(index)
    }
}
