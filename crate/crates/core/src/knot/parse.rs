use super::atoms::AtomRegistry;
use super::expr::{orbits_of, KnotExpr, SymmetryData};
use crate::error::{Error, Result};

/// Parses an expression using the predeclared atoms.
pub fn parse(text: &str) -> Result<KnotExpr> {
    parse_with(text, &AtomRegistry::default())
}

/// Parses an expression against a custom atom registry.
pub fn parse_with(text: &str, atoms: &AtomRegistry) -> Result<KnotExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        atoms,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    atoms: &'a AtomRegistry,
}

struct HypOptions {
    order: Option<(u32, usize)>,
    cycles: Option<(Vec<Vec<usize>>, usize)>,
    rev: Option<(Vec<bool>, usize)>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn err_at(&self, pos: usize, msg: &str) -> Error {
        Error::Syntax {
            pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse()
            .map_err(|_| self.err_at(start, "expected integer"))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let head = self.ident()?;
        match head.as_str() {
            "U" => Ok(KnotExpr::Unknot),
            "T" => {
                self.expect(b'(')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                Ok(KnotExpr::Torus { p, q })
            }
            "cable" => {
                self.expect(b'(')?;
                let alpha = self.int()?;
                self.expect(b',')?;
                let beta = self.int()?;
                self.expect(b';')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(KnotExpr::cable(alpha, beta, child))
            }
            "sum" => {
                self.expect(b'(')?;
                let children = self.expr_list()?;
                self.expect(b')')?;
                if children.len() < 2 {
                    return Err(self.err_at(start, "sum needs at least two summands"));
                }
                Ok(KnotExpr::Sum { children })
            }
            "hyp" => self.hyp(),
            _ => Err(self.err_at(start, &format!("unknown node `{head}`"))),
        }
    }

    fn expr_list(&mut self) -> Result<Vec<KnotExpr>> {
        let mut out = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn atom_name(&mut self) -> Result<String> {
        let mut name = self.ident()?;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let i = self.int()?;
            self.expect(b',')?;
            let j = self.int()?;
            self.expect(b')')?;
            name = format!("{name}({i},{j})");
        }
        Ok(name)
    }

    /// True when the next clause looks like `key=`.
    fn at_option(&mut self) -> bool {
        self.skip_ws();
        let mut i = self.pos;
        while i < self.src.len() && self.src[i].is_ascii_alphanumeric() {
            i += 1;
        }
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        i > self.pos && self.src.get(i) == Some(&b'=')
    }

    fn hyp(&mut self) -> Result<KnotExpr> {
        self.expect(b'(')?;
        let name = self.atom_name()?;
        if self.atoms.components(&name).is_none() {
            return Err(Error::UnknownAtom(name));
        }
        let mut opts = HypOptions {
            order: None,
            cycles: None,
            rev: None,
        };
        let mut children = Vec::new();
        while self.peek() == Some(b';') {
            self.pos += 1;
            if self.at_option() {
                self.option(&mut opts)?;
            } else {
                children = self.expr_list()?;
                break;
            }
        }
        self.expect(b')')?;
        let symmetry = self.build_symmetry(opts, children.len())?;
        Ok(KnotExpr::HypSplice {
            name,
            symmetry,
            children,
        })
    }

    fn option(&mut self, opts: &mut HypOptions) -> Result<()> {
        let key_pos = self.pos;
        let key = self.ident()?;
        self.expect(b'=')?;
        match key.as_str() {
            "m" => {
                let m = self.int()?;
                let m = u32::try_from(m).map_err(|_| self.err_at(key_pos, "order out of range"))?;
                if opts.order.replace((m, key_pos)).is_some() {
                    return Err(self.err_at(key_pos, "duplicate `m`"));
                }
            }
            "perm" => {
                let cycles = self.cycles()?;
                if opts.cycles.replace((cycles, key_pos)).is_some() {
                    return Err(self.err_at(key_pos, "duplicate `perm`"));
                }
            }
            "rev" => {
                let mut flags = vec![self.flag()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    flags.push(self.flag()?);
                }
                if opts.rev.replace((flags, key_pos)).is_some() {
                    return Err(self.err_at(key_pos, "duplicate `rev`"));
                }
            }
            _ => return Err(self.err_at(key_pos, &format!("unknown option `{key}`"))),
        }
        Ok(())
    }

    fn flag(&mut self) -> Result<bool> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.ident()?.as_str() {
            "yes" => Ok(true),
            "no" => Ok(false),
            _ => Err(self.err_at(pos, "expected `yes` or `no`")),
        }
    }

    /// `(1 2)(3 4)`, `()` or `id`, with 1-based entries.
    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        if self.peek() != Some(b'(') {
            let pos = self.pos;
            return match self.ident()?.as_str() {
                "id" => Ok(out),
                _ => Err(self.err_at(pos, "expected cycle notation")),
            };
        }
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            while self.peek() != Some(b')') {
                let pos = self.pos;
                let i = self.int()?;
                if i < 1 {
                    return Err(self.err_at(pos, "cycle entries are 1-based"));
                }
                cycle.push(i as usize - 1);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                }
            }
            self.pos += 1;
            out.push(cycle);
        }
        Ok(out)
    }

    fn build_symmetry(&self, opts: HypOptions, n: usize) -> Result<Option<SymmetryData>> {
        let Some((order, _)) = opts.order else {
            let stray = opts
                .cycles
                .as_ref()
                .map(|c| c.1)
                .or(opts.rev.as_ref().map(|r| r.1));
            if let Some(pos) = stray {
                return Err(self.err_at(pos, "`perm` and `rev` need `m`"));
            }
            return Ok(None);
        };
        let mut perm: Vec<usize> = (0..n).collect();
        if let Some((cycles, pos)) = opts.cycles {
            let mut used = vec![false; n];
            for cycle in &cycles {
                for (k, &i) in cycle.iter().enumerate() {
                    if i >= n {
                        return Err(self.err_at(pos, "cycle entry exceeds the number of children"));
                    }
                    if used[i] {
                        return Err(self.err_at(pos, "cycle entry repeated"));
                    }
                    used[i] = true;
                    perm[i] = cycle[(k + 1) % cycle.len()];
                }
            }
        }
        let mut reversals = vec![false; n];
        if let Some((flags, pos)) = opts.rev {
            let orbits = orbits_of(&perm);
            if flags.len() == 1 {
                reversals = vec![flags[0]; n];
            } else if flags.len() == orbits.len() {
                for (o, &f) in orbits.iter().zip(&flags) {
                    for &i in o {
                        reversals[i] = f;
                    }
                }
            } else {
                return Err(self.err_at(pos, "one `rev` flag per orbit expected"));
            }
        }
        Ok(Some(SymmetryData {
            order,
            perm,
            reversals,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus() {
        assert_eq!(parse("T(3,2)").unwrap(), KnotExpr::torus(3, 2));
        assert_eq!(parse(" T ( -3 , 2 ) ").unwrap(), KnotExpr::torus(-3, 2));
    }

    #[test]
    fn figure_five() {
        let e = parse("cable(-17,2; sum(T(3,2), hyp(F8; m=1)))").unwrap();
        let want = KnotExpr::cable(
            -17,
            2,
            KnotExpr::sum(vec![
                KnotExpr::torus(3, 2),
                KnotExpr::hyp_with("F8", SymmetryData::trivial(0), vec![]),
            ]),
        );
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "cable(-17,2; sum(T(3,2), hyp(F8; m=1)))");
    }

    #[test]
    fn sum_arity() {
        assert!(matches!(parse("sum(T(3,2))"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_atom() {
        assert_eq!(parse("hyp(K9)"), Err(Error::UnknownAtom("K9".into())));
    }

    #[test]
    fn whitehead_double() {
        let e = parse("hyp(W; m=2; rev=yes; T(3,2))").unwrap();
        let KnotExpr::HypSplice { symmetry, .. } = &e else {
            panic!()
        };
        let s = symmetry.as_ref().unwrap();
        assert_eq!(s.order, 2);
        assert_eq!(s.reversals, vec![true]);
        assert_eq!(e.to_string(), "hyp(W; m=2; rev=yes; T(3,2))");
    }

    #[test]
    fn cycles_and_flags() {
        let e = parse("hyp(B; m=2; perm=(1 2); rev=no; T(3,2), T(3,2))").unwrap();
        assert_eq!(e.to_string(), "hyp(B; m=2; perm=(1 2); T(3,2), T(3,2))");
        let f = parse("hyp(B(1,2); m=2; rev=yes,no; T(3,2), T(5,2))").unwrap();
        assert_eq!(
            f.to_string(),
            "hyp(B(1,2); m=2; rev=yes,no; T(3,2), T(5,2))"
        );
        assert_eq!(parse(&f.to_string()).unwrap(), f);
        assert!(parse("hyp(B; m=2; perm=(1 3); T(3,2), T(3,2))").is_err());
        assert!(parse("hyp(W; rev=yes; T(3,2))").is_err());
    }

    #[test]
    fn positions() {
        match parse("sum(T(3,2), X)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 12),
            other => panic!("{other:?}"),
        }
        assert!(parse("T(3,2) extra").is_err());
    }
}
