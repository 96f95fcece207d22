//! Parser for the group-spec mini-language:
//! `Sym(n)`, `Alt(n)`, `Cyclic(n)`, `Dihedral(n)`, `GL(n,q)`, `SL(n,q)`,
//! `PSL(n,q)`, `PGL(n,q)`, `Direct(A,B)`, `Semidirect(G,TransposeInverse)`,
//! `Wreath(A,m)` and `FromFile(path)`. Whitespace is ignored outside paths.

use std::path::PathBuf;

use super::field::prime_power;
use super::{AutomorphismTag, GroupSpec, MatrixFamily};
use crate::error::{Error, Result};

pub(crate) const MAX_DEPTH: usize = 4;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::parse(self.pos, format!("expected `{want}`, found `{c}`"))),
            None => Err(Error::parse(self.pos, format!("expected `{want}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(Error::parse(start, "expected a family name"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn integer(&mut self, what: &'static str) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.text[start..].starts_with('-');
        if negative {
            self.pos += 1;
        }
        let len = self.text[self.pos..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - self.pos);
        if len == 0 {
            return Err(Error::parse(start, format!("expected an integer for {what}")));
        }
        let digits = &self.text[self.pos..self.pos + len];
        self.pos += len;
        if negative {
            return Err(Error::range(what, format!("-{digits} is negative")));
        }
        digits
            .parse()
            .map_err(|_| Error::range(what, format!("{digits} is too large")))
    }

    fn spec(&mut self, depth: usize) -> Result<GroupSpec> {
        if depth > MAX_DEPTH {
            return Err(Error::parse(self.pos, format!("nesting deeper than {MAX_DEPTH}")));
        }
        let (at, name) = self.ident()?;
        self.expect('(')?;
        let spec = match name {
            "Sym" | "Alt" | "Cyclic" | "Dihedral" => {
                let n = self.integer("n")?;
                if n == 0 {
                    return Err(Error::range("n", format!("{name}(0) is not a group of degree >= 1")));
                }
                match name {
                    "Sym" => GroupSpec::Sym(n),
                    "Alt" => GroupSpec::Alt(n),
                    "Cyclic" => GroupSpec::Cyclic(n),
                    _ => GroupSpec::Dihedral(n),
                }
            }
            "GL" | "SL" | "PSL" | "PGL" => {
                let family = match name {
                    "GL" => MatrixFamily::GL,
                    "SL" => MatrixFamily::SL,
                    "PSL" => MatrixFamily::PSL,
                    _ => MatrixFamily::PGL,
                };
                let n = self.integer("n")?;
                self.expect(',')?;
                let q = self.integer("q")? as u64;
                if n == 0 {
                    return Err(Error::range("n", "matrix dimension must be at least 1"));
                }
                if prime_power(q).is_none() {
                    return Err(Error::range("q", format!("{q} is not a prime power")));
                }
                GroupSpec::Matrix { family, n, q }
            }
            "Direct" => {
                let a = self.spec(depth + 1)?;
                self.expect(',')?;
                let b = self.spec(depth + 1)?;
                GroupSpec::direct(a, b)
            }
            "Wreath" => {
                let a = self.spec(depth + 1)?;
                self.expect(',')?;
                let m = self.integer("m")?;
                if m == 0 {
                    return Err(Error::range("m", "wreath product needs at least one copy"));
                }
                GroupSpec::wreath(a, m)
            }
            "Semidirect" => {
                let g = self.spec(depth + 1)?;
                self.expect(',')?;
                let (p, tag) = self.ident()?;
                if tag != "TransposeInverse" {
                    return Err(Error::parse(p, format!("unknown automorphism `{tag}`")));
                }
                GroupSpec::Semidirect(Box::new(g), AutomorphismTag::TransposeInverse)
            }
            "FromFile" => {
                self.skip_ws();
                let start = self.pos;
                let mut depth_paren = 0usize;
                let mut end = None;
                for (i, c) in self.text[start..].char_indices() {
                    match c {
                        '(' => depth_paren += 1,
                        ')' if depth_paren == 0 => {
                            end = Some(start + i);
                            break;
                        }
                        ')' => depth_paren -= 1,
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| Error::parse(start, "unterminated FromFile path"))?;
                let path = self.text[start..end].trim();
                if path.is_empty() {
                    return Err(Error::parse(start, "empty path"));
                }
                self.pos = end;
                GroupSpec::FromFile(PathBuf::from(path))
            }
            _ => return Err(Error::parse(at, format!("unknown family `{name}`"))),
        };
        self.expect(')')?;
        Ok(spec)
    }
}

/// Parses the mini-language. Errors carry the byte offset of the problem.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { text, pos: 0 };
    let spec = p.spec(1)?;
    if let Some(c) = p.peek() {
        return Err(Error::parse(p.pos, format!("unexpected trailing `{c}`")));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        assert_eq!(parse_group_spec("GL(3,2)").unwrap(), GroupSpec::gl(3, 2));
        assert_eq!(parse_group_spec(" Sym ( 4 ) ").unwrap(), GroupSpec::Sym(4));
        let nested = parse_group_spec("Semidirect(GL(5,2),TransposeInverse)").unwrap();
        assert_eq!(nested, GroupSpec::transpose_inverse(GroupSpec::gl(5, 2)));
        assert_eq!(nested.to_string(), "Semidirect(GL(5,2),TransposeInverse)");
        let d = parse_group_spec("Direct(Wreath(Sym(3),2), PSL(2,7))").unwrap();
        assert_eq!(d.to_string(), "Direct(Wreath(Sym(3),2),PSL(2,7))");
        assert_eq!(parse_group_spec(&d.to_string()).unwrap(), d);
        assert_eq!(
            parse_group_spec("FromFile(data/m11.txt)").unwrap(),
            GroupSpec::FromFile(PathBuf::from("data/m11.txt"))
        );
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_group_spec("Sym(-1)"), Err(Error::OutOfRange { .. })));
        assert!(matches!(parse_group_spec("GL(3,6)"), Err(Error::OutOfRange { .. })));
        assert!(matches!(parse_group_spec("Foo(3)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_group_spec("Sym(3"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_group_spec("Sym(3))"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(
            parse_group_spec("Semidirect(GL(3,2),Frobenius)"),
            Err(Error::Parse { pos: 19, .. })
        ));
        let deep = "Direct(Direct(Direct(Direct(Sym(2),Sym(2)),Sym(2)),Sym(2)),Sym(2))";
        assert!(parse_group_spec(deep).is_err());
        assert!(parse_group_spec("Direct(Direct(Direct(Sym(2),Sym(2)),Sym(2)),Sym(2))").is_ok());
    }
}
