//! S-expression syntax for prime sets.
//!
//! ```text
//! expr := empty | all
//!       | (finite "P2" "P3_1" ...)
//!       | (res M (r ...) [any|split|inert|ramified])
//!       | (union expr ...) | (intersect expr ...) | (complement expr)
//! ```

use std::collections::BTreeSet;

use super::{PrimeSetExpr, SplitFilter};
use crate::error::{Error, Result};
use crate::numberfield::PrimeRef;

pub(super) fn print(e: &PrimeSetExpr) -> String {
    let mut out = String::new();
    write(e, &mut out);
    out
}

fn write(e: &PrimeSetExpr, out: &mut String) {
    match e {
        PrimeSetExpr::Empty => out.push_str("empty"),
        PrimeSetExpr::All => out.push_str("all"),
        PrimeSetExpr::Finite(s) => {
            out.push_str("(finite");
            for p in s {
                out.push_str(&format!(" \"{p}\""));
            }
            out.push(')');
        }
        PrimeSetExpr::Residue {
            modulus,
            residues,
            filter,
        } => {
            let rs: Vec<String> = residues.iter().map(u64::to_string).collect();
            out.push_str(&format!("(res {modulus} ({})", rs.join(" ")));
            if *filter != SplitFilter::Any {
                out.push(' ');
                out.push_str(filter.keyword());
            }
            out.push(')');
        }
        PrimeSetExpr::Union(v) | PrimeSetExpr::Intersect(v) => {
            out.push_str(if matches!(e, PrimeSetExpr::Union(_)) {
                "(union"
            } else {
                "(intersect"
            });
            for x in v {
                out.push(' ');
                write(x, out);
            }
            out.push(')');
        }
        PrimeSetExpr::Complement(x) => {
            out.push_str("(complement ");
            write(x, out);
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Atom(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                toks.push(Tok::Open);
            }
            ')' => {
                chars.next();
                toks.push(Tok::Close);
            }
            '"' => {
                chars.next();
                let mut buf = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(ch) => buf.push(ch),
                        None => return Err(Error::Parse("unterminated string".into())),
                    }
                }
                toks.push(Tok::Str(buf));
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut buf = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || ch == '(' || ch == ')' || ch == '"' {
                        break;
                    }
                    buf.push(ch);
                    chars.next();
                }
                toks.push(Tok::Atom(buf));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of prime set".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next()? {
            Tok::Close => Ok(()),
            t => Err(Error::Parse(format!("expected `)`, found {t:?}"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.next()? {
            Tok::Atom(a) => a
                .parse()
                .map_err(|_| Error::Parse(format!("expected a nonnegative integer, found `{a}`"))),
            t => Err(Error::Parse(format!("expected a number, found {t:?}"))),
        }
    }

    fn exprs_until_close(&mut self) -> Result<Vec<PrimeSetExpr>> {
        let mut v = Vec::new();
        while self.peek() != Some(&Tok::Close) {
            v.push(self.expr()?);
        }
        self.expect_close()?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<PrimeSetExpr> {
        match self.next()? {
            Tok::Atom(a) if a == "empty" => Ok(PrimeSetExpr::Empty),
            Tok::Atom(a) if a == "all" => Ok(PrimeSetExpr::All),
            Tok::Open => {
                let head = match self.next()? {
                    Tok::Atom(a) => a,
                    t => return Err(Error::Parse(format!("expected an operator, found {t:?}"))),
                };
                match head.as_str() {
                    "finite" => {
                        let mut s = BTreeSet::new();
                        loop {
                            match self.next()? {
                                Tok::Close => break,
                                Tok::Str(l) | Tok::Atom(l) => {
                                    s.insert(l.parse::<PrimeRef>()?);
                                }
                                Tok::Open => return Err(Error::Parse("nested list inside finite".into())),
                            }
                        }
                        Ok(PrimeSetExpr::Finite(s))
                    }
                    "res" => {
                        let m = self.number()?;
                        if self.next()? != Tok::Open {
                            return Err(Error::Parse("res expects a parenthesized residue list".into()));
                        }
                        let mut rs = Vec::new();
                        while self.peek() != Some(&Tok::Close) {
                            rs.push(self.number()?);
                        }
                        self.expect_close()?;
                        let filter = match self.peek() {
                            Some(Tok::Atom(f)) => {
                                let f = match f.as_str() {
                                    "any" => SplitFilter::Any,
                                    "split" => SplitFilter::Split,
                                    "inert" => SplitFilter::Inert,
                                    "ramified" => SplitFilter::Ramified,
                                    other => return Err(Error::Parse(format!("unknown split filter `{other}`"))),
                                };
                                self.pos += 1;
                                f
                            }
                            _ => SplitFilter::Any,
                        };
                        self.expect_close()?;
                        PrimeSetExpr::residue(m, rs, filter)
                    }
                    "union" => Ok(PrimeSetExpr::Union(self.exprs_until_close()?)),
                    "intersect" => Ok(PrimeSetExpr::Intersect(self.exprs_until_close()?)),
                    "complement" => {
                        let x = self.expr()?;
                        self.expect_close()?;
                        Ok(x.complement())
                    }
                    other => Err(Error::Parse(format!("unknown prime set operator `{other}`"))),
                }
            }
            t => Err(Error::Parse(format!("unexpected token {t:?} in prime set"))),
        }
    }
}

pub(super) fn parse(s: &str) -> Result<PrimeSetExpr> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input after prime set".into()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_examples() {
        for s in [
            "empty",
            "all",
            r#"(finite "P2" "P3_1")"#,
            "(res 4 (1))",
            "(res 20 (1 9) split)",
            r#"(union (finite "P2" "P3") (res 4 (1) split))"#,
            r#"(intersect all (complement (finite "P5")))"#,
            "(union)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(print(&e), s);
        }
    }

    #[test]
    fn residues_are_reduced() {
        assert_eq!(print(&parse("(res 4 (5 9))").unwrap()), "(res 4 (1))");
    }

    #[test]
    fn errors() {
        for s in ["", "(", "(res 0 (1))", "(res 4 1)", "(foo)", "all all", r#"(finite "Q2")"#, "(res 4 (1) weird)"] {
            assert!(matches!(parse(s), Err(Error::Parse(_))), "{s}");
        }
    }
}
