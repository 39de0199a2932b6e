//! Text grammar for numbers and matrices.
//!
//! Numbers: integers `-3`, rationals `355/113`, quadratic irrationals
//! `quad(a,b,d,c)` meaning `(a + b sqrt d)/c`. Matrices: `[[a,b],[c,d]]`.
//! Whitespace is permitted between tokens. Syntax errors carry the byte
//! position; semantic errors (zero denominator, negative discriminant,
//! non-unimodular matrix) are reported separately.

use cfred::{Error as CoreError, Int, Pgl, Quad};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

impl From<CoreError> for GrammarError {
    fn from(e: CoreError) -> Self {
        GrammarError::Semantic(e.to_string())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn err(&self, msg: impl Into<String>) -> GrammarError {
        GrammarError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, token: char) -> Result<(), GrammarError> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", token)))
        }
    }

    fn peek_is(&mut self, token: char) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    fn integer(&mut self) -> Result<Int, GrammarError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.rest().as_bytes();
        let mut len = 0;
        if bytes.first() == Some(&b'-') {
            len = 1;
        }
        while len < bytes.len() && bytes[len].is_ascii_digit() {
            len += 1;
        }
        if len == 0 || (len == 1 && bytes[0] == b'-') {
            return Err(self.err("expected an integer"));
        }
        self.pos += len;
        self.text[start..start + len]
            .parse::<Int>()
            .map_err(|e| self.err(e.to_string()))
    }

    fn end(&mut self) -> Result<(), GrammarError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

/// Parses `-3`, `355/113`, or `quad(a,b,d,c)` into a canonical value.
pub fn parse_number(text: &str) -> Result<Quad, GrammarError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.rest().starts_with("quad") {
        cur.pos += 4;
        cur.eat('(')?;
        let a = cur.integer()?;
        cur.eat(',')?;
        let b = cur.integer()?;
        cur.eat(',')?;
        let d = cur.integer()?;
        cur.eat(',')?;
        let c = cur.integer()?;
        cur.eat(')')?;
        cur.end()?;
        return Ok(Quad::new(a, b, d, c)?);
    }
    let num = cur.integer()?;
    if cur.peek_is('/') {
        cur.eat('/')?;
        let den = cur.integer()?;
        cur.end()?;
        return Ok(Quad::new(num, 0.into(), 0.into(), den)?);
    }
    cur.end()?;
    Ok(Quad::from_int(num))
}

/// Parses `[[a,b],[c,d]]` into a canonical class; the determinant must be
/// +1 or -1.
pub fn parse_matrix(text: &str) -> Result<Pgl, GrammarError> {
    let mut cur = Cursor::new(text);
    cur.eat('[')?;
    cur.eat('[')?;
    let a = cur.integer()?;
    cur.eat(',')?;
    let b = cur.integer()?;
    cur.eat(']')?;
    cur.eat(',')?;
    cur.eat('[')?;
    let c = cur.integer()?;
    cur.eat(',')?;
    let d = cur.integer()?;
    cur.eat(']')?;
    cur.eat(']')?;
    cur.end()?;
    Ok(Pgl::new(a, b, c, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_round_trips() {
        for text in ["quad(1,1,5,2)", "355/113", "-3", "quad(0,-1,2,1)"] {
            let v = parse_number(text).unwrap();
            assert_eq!(v.to_string(), text);
            assert_eq!(parse_number(&v.to_string()).unwrap(), v);
        }
        // non-canonical input parses to the canonical form
        assert_eq!(
            parse_number("quad(2,2,8,2)").unwrap().to_string(),
            "quad(1,2,2,1)"
        );
        assert_eq!(parse_number(" 6/4 ").unwrap().to_string(), "3/2");
        assert_eq!(
            parse_number("quad(1,1,5,2)").unwrap(),
            Quad::new(1.into(), 1.into(), 5.into(), 2.into()).unwrap()
        );
    }

    #[test]
    fn matrix_round_trips() {
        let t = parse_matrix("[[1,1],[0,1]]").unwrap();
        assert_eq!(t, Pgl::from_i64s(1, 1, 0, 1).unwrap());
        assert_eq!(t.to_string(), "[[1,1],[0,1]]");
        let g = parse_matrix(" [[ 0, 1 ], [ 1, -2 ]] ").unwrap();
        assert_eq!(g.to_string(), "[[0,1],[1,-2]]");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_number("quad(1,1,5,") {
            Err(GrammarError::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("unexpected {:?}", other),
        }
        match parse_number("35x") {
            Err(GrammarError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_matrix("[[1,1],[0,1]").is_err());
    }

    #[test]
    fn semantic_errors_are_distinct() {
        assert!(matches!(
            parse_number("1/0"),
            Err(GrammarError::Semantic(_))
        ));
        assert!(matches!(
            parse_number("quad(1,1,-2,1)"),
            Err(GrammarError::Semantic(_))
        ));
        assert!(matches!(
            parse_matrix("[[1,1],[1,1]]"),
            Err(GrammarError::Semantic(_))
        ));
    }
}
