use num_bigint::BigUint;

use super::eval::static_degree;
use super::GroupExpr;
use crate::error::{Error, Result};
use crate::perm::{parse_cycle_list, Permutation};

/// Points beyond this are rejected before any permutation is allocated.
const MAX_GENS_DEGREE: usize = 1 << 24;

/// Parses a group expression. Errors carry byte offsets into `text`.
pub fn parse(text: &str) -> Result<GroupExpr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn ws(&mut self) {
        let skipped = self.rest().len() - self.rest().trim_start().len();
        self.pos += skipped;
    }

    fn eat(&mut self, token: &str) -> bool {
        self.ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{token}'")))
        }
    }

    /// A keyword not followed by an identifier character.
    fn eat_word(&mut self, word: &str) -> bool {
        self.ws();
        let rest = self.rest();
        let boundary = rest[word.len().min(rest.len())..].chars().next().is_none_or(|c| !(c.is_ascii_alphanumeric() || c == '_'));
        if rest.starts_with(word) && boundary {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(u64, usize)> {
        self.ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an integer"));
        }
        self.pos += digits;
        let value = self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::OutOfRange { offset: start, message: "integer too large".into() })?;
        Ok((value, start))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let left = self.term()?;
        if self.eat_word("x") {
            let right = self.expr()?;
            return Ok(GroupExpr::product(left, right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let mut e = self.prefix_term()?;
        loop {
            let save = self.pos;
            if self.eat("&") {
                if !self.eat_word("alt") {
                    return Err(self.err("expected 'alt' after '&'"));
                }
                e = GroupExpr::intersect_alternating(e);
            } else {
                self.pos = save;
                return Ok(e);
            }
        }
    }

    fn prefix_term(&mut self) -> Result<GroupExpr> {
        self.ws();
        let start = self.pos;
        let word_len = self.rest().bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        let word = &self.text[start..start + word_len];
        match word {
            "S" | "A" | "C" | "D" => {
                self.pos += word_len;
                self.expect("(")?;
                let (n, at) = self.int()?;
                if n == 0 {
                    return Err(Error::OutOfRange { offset: at, message: format!("{word}(n) needs n >= 1") });
                }
                self.expect(")")?;
                Ok(match word {
                    "S" => GroupExpr::Symmetric(n),
                    "A" => GroupExpr::Alternating(n),
                    "C" => GroupExpr::Cyclic(n),
                    _ => GroupExpr::Dihedral(n),
                })
            }
            "wr" | "wreath" | "product" => {
                self.pos += word_len;
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(if word == "product" { GroupExpr::product(a, b) } else { GroupExpr::wreath(a, b) })
            }
            "onsets" | "on_subsets" => {
                self.pos += word_len;
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(",")?;
                let (k, at) = self.int()?;
                let d = static_degree(&e);
                if k == 0 || BigUint::from(k) >= d {
                    return Err(Error::OutOfRange { offset: at, message: format!("subset size must lie in 1..{d}") });
                }
                self.expect(")")?;
                Ok(GroupExpr::on_subsets(e, k))
            }
            "intersect_alternating" => {
                self.pos += word_len;
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(GroupExpr::intersect_alternating(e))
            }
            "gens" => {
                self.pos += word_len;
                self.gens()
            }
            "" if self.eat("(") => {
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.err("expected a group expression")),
        }
    }

    fn gens(&mut self) -> Result<GroupExpr> {
        self.expect("[")?;
        let open = self.pos;
        let rest = self.rest();
        let mut depth = 0usize;
        let mut pieces = Vec::new();
        let mut piece_start = 0;
        let mut end = None;
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    pieces.push((piece_start, i));
                    piece_start = i + 1;
                }
                ']' if depth == 0 => {
                    pieces.push((piece_start, i));
                    end = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let Some(end) = end else {
            self.pos = self.text.len();
            return Err(self.err("unterminated generator list"));
        };
        let mut perms = Vec::new();
        for (a, b) in pieces {
            let piece = &rest[a..b];
            if piece.trim().is_empty() {
                return Err(Error::Parse { offset: open + a, message: "empty generator".into() });
            }
            perms.push((parse_cycle_list(piece, open + a)?, open + a));
        }
        let degree = perms.iter().flat_map(|(cycles, _)| cycles.iter().flatten()).map(|&p| p as usize + 1).max().unwrap_or(1);
        if degree > MAX_GENS_DEGREE {
            return Err(Error::OutOfRange {
                offset: open,
                message: format!("generators may move at most {MAX_GENS_DEGREE} points"),
            });
        }
        for (cycles, offset) in &perms {
            Permutation::from_cycles(degree, cycles).map_err(|e| Error::Parse { offset: *offset, message: e.to_string() })?;
        }
        self.pos = open + end + 1;
        Ok(GroupExpr::Gens(perms.into_iter().map(|(c, _)| c).collect()))
    }
}
