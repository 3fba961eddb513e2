//! Recursive-descent parser for the word grammar
//!
//! ```text
//! expr := term ("*"? term)*
//! term := atom ("^" int)?
//! atom := "x" int | "[" expr "," expr "]" | "(" expr ")" | "1"
//! ```
//!
//! Whitespace is ignored. An empty input is the identity.

use num_bigint::BigInt;

use super::{Letter, Word};
use crate::error::{Error, Result};

/// Parses `text` into a freely reduced word. Without `rank` the rank is the
/// largest index mentioned (at least 1), even if it cancels.
pub fn parse_word(text: &str, rank: Option<usize>) -> Result<Word> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        max_index: 0,
    };
    p.skip_ws();
    let word = if p.at_end() {
        Word::empty(1)
    } else {
        let w = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected trailing input"));
        }
        w
    };
    match rank {
        Some(r) => {
            if p.max_index > r {
                return Err(Error::IndexExceedsRank {
                    index: p.max_index,
                    rank: r,
                });
            }
            word.with_rank(r)
        }
        None => word.with_rank(p.max_index.max(1)),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_index: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn starts_atom(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'X' | b'[' | b'(' | b'1'))
    }

    fn expr(&mut self) -> Result<Word> {
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.term()?;
                    w = w.concat(&t);
                }
                c if Self::starts_atom(c) => {
                    let t = self.term()?;
                    w = w.concat(&t);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.signed_int()?;
            atom.pow(&k)
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x' | b'X') => {
                self.pos += 1;
                let start = self.pos;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected generator index after `x`"));
                }
                let index: usize = digits.parse().map_err(|_| Error::Syntax {
                    position: start,
                    message: "generator index too large".into(),
                })?;
                if index == 0 {
                    return Err(Error::Syntax {
                        position: start,
                        message: "generator indices start at 1".into(),
                    });
                }
                self.max_index = self.max_index.max(index);
                Word::new(index, [Letter::new(index, 1)])
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::empty(1))
            }
            Some(_) => Err(self.error("expected `x`, `[`, `(` or `1`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let k: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -k } else { k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(w: &Word) -> Vec<(usize, i64)> {
        w.letters()
            .iter()
            .map(|l| (l.gen, i64::try_from(&l.exp).unwrap()))
            .collect()
    }

    #[test]
    fn simple_syllables() {
        let w = parse_word("x1^2*x2^-1", None).unwrap();
        assert_eq!(pairs(&w), vec![(1, 2), (2, -1)]);
        assert_eq!(w.rank(), 2);
    }

    #[test]
    fn cancellation_keeps_rank() {
        let w = parse_word("x1*x1^-1", None).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.rank(), 1);
        let w = parse_word("x3 x3^-1", None).unwrap();
        assert_eq!(w.rank(), 3);
    }

    #[test]
    fn commutator_expands() {
        let w = parse_word("[x1,x2]", None).unwrap();
        assert_eq!(pairs(&w), vec![(1, -1), (2, -1), (1, 1), (2, 1)]);
    }

    #[test]
    fn juxtaposition_groups_and_whitespace() {
        let a = parse_word(" ( x1 x2 ) ^ 2 ", None).unwrap();
        let b = parse_word("x1*x2*x1*x2", None).unwrap();
        assert_eq!(a, b);
        let c = parse_word("[x1^2, x2 x3]^-1", None).unwrap();
        assert_eq!(c.rank(), 3);
        assert_eq!(parse_word("", Some(2)).unwrap(), Word::empty(2));
        assert_eq!(parse_word("1", None).unwrap(), Word::empty(1));
        assert_eq!(parse_word("x1^+3", None).unwrap(), parse_word("x1^3", None).unwrap());
    }

    #[test]
    fn explicit_rank() {
        assert_eq!(parse_word("x1", Some(4)).unwrap().rank(), 4);
        assert_eq!(
            parse_word("x1*x3", Some(2)),
            Err(Error::IndexExceedsRank { index: 3, rank: 2 })
        );
    }

    #[test]
    fn syntax_errors_report_positions() {
        let cases = [
            ("x", 1),
            ("x1^", 3),
            ("[x1 x2]", 6),
            ("x1)", 2),
            ("y1", 0),
            ("x0", 1),
            ("x1^2^3", 4),
        ];
        for (text, pos) in cases {
            match parse_word(text, None) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn big_exponents() {
        let w = parse_word("x1^123456789012345678901234567890", None).unwrap();
        assert_eq!(w.letters()[0].exp.to_string(), "123456789012345678901234567890");
    }
}
