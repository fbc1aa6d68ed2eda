//! Recursive-descent (LL(1)) parser for `.bha` documents.

use std::collections::HashSet;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::field::{Field, Rational};
use crate::group::Perm;
use crate::word::{FreeElement, Word};
use crate::{Error, Pos, Result};

/// Parses a document, resolving every name against earlier declarations.
pub fn parse(src: &str) -> Result<SpecDocument> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        doc: SpecDocument::default(),
    };
    p.document()?;
    Ok(p.doc)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    doc: SpecDocument,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos> {
        if *self.peek() == tok {
            Ok(self.advance().pos)
        } else {
            self.error(&format!("`{}`", tok.describe()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.advance().pos),
            _ => self.error(&format!("`{kw}`")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.advance().pos;
                Ok((s, pos))
            }
            _ => self.error(what),
        }
    }

    fn int(&mut self) -> Result<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.error("integer"),
        }
    }

    fn document(&mut self) -> Result<()> {
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => return Ok(()),
                Tok::Ident(kw) => match kw.as_str() {
                    "group" => self.group_decl()?,
                    "module" => self.module_decl()?,
                    "algebra" => self.algebra_decl()?,
                    "coideal" => self.coideal_decl()?,
                    "task" => self.task_decl()?,
                    _ => return self.error("`group`, `module`, `algebra`, `coideal` or `task`"),
                },
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        expected: "a declaration".into(),
                        found: self.peek().describe(),
                    })
                }
            }
        }
    }

    fn duplicate(pos: Pos, what: &str) -> Error {
        Error::Arity {
            pos,
            detail: format!("{what} declared twice"),
        }
    }

    fn group_decl(&mut self) -> Result<()> {
        let pos = self.keyword("group")?;
        if self.doc.group.is_some() {
            return Err(Self::duplicate(pos, "group"));
        }
        let (name, _) = self.ident("group name")?;
        self.keyword("permutation")?;
        self.keyword("degree")?;
        let degree = self.int()? as usize;
        if degree == 0 {
            return Err(Error::Arity {
                pos,
                detail: "permutation degree must be positive".into(),
            });
        }
        self.keyword("generators")?;
        let mut generators = Vec::new();
        if *self.peek() == Tok::LParen {
            generators.push(self.cycles(degree)?);
            while *self.peek() == Tok::Comma {
                self.advance();
                generators.push(self.cycles(degree)?);
            }
        }
        self.expect(Tok::Semi)?;
        self.doc.group = Some(GroupDecl {
            name,
            degree,
            generators,
            span: Span(pos),
        });
        Ok(())
    }

    /// One permutation in cycle notation: `(1 2)(3 4)` or `()`.
    fn cycles(&mut self, degree: usize) -> Result<Perm> {
        let pos = self.pos();
        let mut cycles = Vec::new();
        if *self.peek() != Tok::LParen {
            return self.error("`(`");
        }
        while *self.peek() == Tok::LParen {
            self.advance();
            let mut pts = Vec::new();
            while let Tok::Int(n) = *self.peek() {
                self.advance();
                pts.push(n as usize);
            }
            self.expect(Tok::RParen)?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
        }
        Perm::from_cycles(degree, &cycles).map_err(|e| e.at(pos))
    }

    fn group_degree(&self, pos: Pos) -> Result<usize> {
        self.doc
            .group
            .as_ref()
            .map(|g| g.degree)
            .ok_or_else(|| Error::Name {
                pos,
                name: "group".into(),
            })
    }

    fn module_decl(&mut self) -> Result<()> {
        let pos = self.keyword("module")?;
        if self.doc.module.is_some() {
            return Err(Self::duplicate(pos, "module"));
        }
        let degree = self.group_degree(pos)?;
        let (name, _) = self.ident("module name")?;
        self.expect(Tok::LBrace)?;
        let mut module = ModuleDecl {
            name,
            basis: Vec::new(),
            actions: Vec::new(),
            span: Span(pos),
        };
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.advance();
                    break;
                }
                Tok::Ident(kw) if kw == "basis" => {
                    let bpos = self.advance().pos;
                    let (label, lpos) = self.ident("basis label")?;
                    if module.basis.iter().any(|b| b.label == label) {
                        return Err(Self::duplicate(lpos, &format!("basis label `{label}`")));
                    }
                    self.keyword("deg")?;
                    let deg = self.cycles(degree)?;
                    self.expect(Tok::Semi)?;
                    module.basis.push(BasisDecl {
                        label,
                        degree: deg,
                        span: Span(bpos),
                    });
                }
                Tok::Ident(kw) if kw == "action" => {
                    let apos = self.advance().pos;
                    let generator = self.cycles(degree)?;
                    self.expect(Tok::Colon)?;
                    let mut images = Vec::new();
                    loop {
                        let src = self.basis_label(&module)?;
                        self.expect(Tok::Arrow)?;
                        let negative = match self.peek() {
                            Tok::Minus => {
                                self.advance();
                                true
                            }
                            Tok::Plus => {
                                self.advance();
                                false
                            }
                            _ => false,
                        };
                        let dst = self.basis_label(&module)?;
                        images.push((src, negative, dst));
                        if *self.peek() == Tok::Comma {
                            self.advance();
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::Semi)?;
                    module.actions.push(ActionDecl {
                        generator,
                        images: ActionImages::Signed(images),
                        span: Span(apos),
                    });
                }
                Tok::Ident(kw) if kw == "matrix" => {
                    let apos = self.advance().pos;
                    let generator = self.cycles(degree)?;
                    self.expect(Tok::LBrace)?;
                    let mut rows = Vec::new();
                    while *self.peek() != Tok::RBrace {
                        let mut row = Vec::new();
                        while *self.peek() != Tok::Semi {
                            row.push(self.scalar()?);
                        }
                        self.expect(Tok::Semi)?;
                        rows.push(row);
                    }
                    self.expect(Tok::RBrace)?;
                    module.actions.push(ActionDecl {
                        generator,
                        images: ActionImages::Matrix(rows),
                        span: Span(apos),
                    });
                }
                _ => return self.error("`basis`, `action`, `matrix` or `}`"),
            }
        }
        self.check_arity(&module)?;
        self.doc.module = Some(module);
        Ok(())
    }

    fn basis_label(&mut self, module: &ModuleDecl) -> Result<usize> {
        let (label, pos) = self.ident("basis label")?;
        module
            .basis
            .iter()
            .position(|b| b.label == label)
            .ok_or(Error::Name { pos, name: label })
    }

    /// A signed rational literal such as `-3/2`.
    fn scalar(&mut self) -> Result<Rational> {
        let negative = if *self.peek() == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let pos = self.pos();
        let num = self.int()?;
        let mut den = 1u64;
        if *self.peek() == Tok::Slash {
            self.advance();
            den = self.int()?;
        }
        let num = i64::try_from(num).map_err(|_| Error::Arity {
            pos,
            detail: "literal too large".into(),
        })?;
        let den = i64::try_from(den).map_err(|_| Error::Arity {
            pos,
            detail: "literal too large".into(),
        })?;
        let r = Rational::new(if negative { -num } else { num }, den).ok_or(Error::Arity {
            pos,
            detail: "zero denominator".into(),
        })?;
        Ok(r)
    }

    fn check_arity(&self, module: &ModuleDecl) -> Result<()> {
        let group = self.doc.group.as_ref().expect("module requires group");
        let dim = module.basis.len();
        let mut seen = HashSet::new();
        for a in &module.actions {
            let pos = a.span.0;
            if !group.generators.contains(&a.generator) {
                return Err(Error::Arity {
                    pos,
                    detail: format!("{} is not a declared generator", a.generator),
                });
            }
            if !seen.insert(a.generator.clone()) {
                return Err(Self::duplicate(pos, &format!("action of {}", a.generator)));
            }
            match &a.images {
                ActionImages::Signed(images) => {
                    let mut covered = vec![false; dim];
                    for &(src, _, _) in images {
                        if covered[src] {
                            return Err(Error::Arity {
                                pos,
                                detail: format!(
                                    "image of {} given twice for {}",
                                    module.basis[src].label, a.generator
                                ),
                            });
                        }
                        covered[src] = true;
                    }
                    if let Some(b) = covered.iter().position(|c| !c) {
                        return Err(Error::Arity {
                            pos,
                            detail: format!(
                                "action of {} misses basis label {}",
                                a.generator, module.basis[b].label
                            ),
                        });
                    }
                }
                ActionImages::Matrix(rows) => {
                    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                        return Err(Error::Arity {
                            pos,
                            detail: format!("matrix for {} must be {dim}x{dim}", a.generator),
                        });
                    }
                }
            }
        }
        if dim > 0 {
            if let Some(g) = group.generators.iter().find(|g| !seen.contains(*g)) {
                return Err(Error::Arity {
                    pos: module.span.0,
                    detail: format!("no action given for generator {g}"),
                });
            }
        }
        Ok(())
    }

    fn algebra_decl(&mut self) -> Result<()> {
        let pos = self.keyword("algebra")?;
        if self.doc.algebra.is_some() {
            return Err(Self::duplicate(pos, "algebra"));
        }
        let (name, _) = self.ident("algebra name")?;
        self.expect(Tok::Eq)?;
        self.keyword("T")?;
        self.expect(Tok::LParen)?;
        let (module, mpos) = self.ident("module name")?;
        if self.doc.module.as_ref().map(|m| &m.name) != Some(&module) {
            return Err(Error::Name { pos: mpos, name: module });
        }
        self.expect(Tok::RParen)?;
        let mut relations = Vec::new();
        if *self.peek() == Tok::Slash {
            self.advance();
            self.keyword("relations")?;
            self.expect(Tok::LBrace)?;
            while *self.peek() != Tok::RBrace {
                let rpos = self.pos();
                let expr = self.expr()?;
                self.expect(Tok::Semi)?;
                relations.push(RelationDecl {
                    expr,
                    span: Span(rpos),
                });
            }
            self.expect(Tok::RBrace)?;
        }
        self.keyword("truncate")?;
        let truncate = self.int()? as usize;
        self.expect(Tok::Semi)?;
        self.doc.algebra = Some(AlgebraDecl {
            name,
            module,
            relations,
            truncate,
            span: Span(pos),
        });
        Ok(())
    }

    fn coideal_decl(&mut self) -> Result<()> {
        let pos = self.keyword("coideal")?;
        if self.doc.algebra.is_none() {
            return Err(Error::Name {
                pos,
                name: "algebra".into(),
            });
        }
        let (name, npos) = self.ident("coideal name")?;
        if self.doc.coideal(&name).is_some() {
            return Err(Self::duplicate(npos, &format!("coideal `{name}`")));
        }
        self.expect(Tok::Eq)?;
        self.keyword("subalgebra")?;
        self.expect(Tok::LBrace)?;
        let mut generators = Vec::new();
        if *self.peek() != Tok::RBrace {
            loop {
                let gpos = self.pos();
                let expr = self.expr()?;
                generators.push(RelationDecl {
                    expr,
                    span: Span(gpos),
                });
                if *self.peek() == Tok::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Semi)?;
        self.doc.coideals.push(CoidealDecl {
            name,
            generators,
            span: Span(pos),
        });
        Ok(())
    }

    fn task_decl(&mut self) -> Result<()> {
        let pos = self.keyword("task")?;
        let (kw, kpos) = self.ident("task kind")?;
        let kind = TaskKind::from_keyword(&kw).ok_or_else(|| Error::Syntax {
            pos: kpos,
            expected: "check, hilbert, decompose, canmap, freeness or hopfmod".into(),
            found: kw.clone(),
        })?;
        let mut args = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(s) => {
                    let apos = self.advance().pos;
                    if self.doc.coideal(&s).is_none() {
                        return Err(Error::Name { pos: apos, name: s });
                    }
                    args.push(s);
                }
                Tok::Semi => {
                    self.advance();
                    break;
                }
                _ => return self.error("coideal name or `;`"),
            }
        }
        let needs_coideal = matches!(
            kind,
            TaskKind::Decompose | TaskKind::Canmap | TaskKind::Freeness
        );
        if needs_coideal && args.len() != 1 {
            return Err(Error::Arity {
                pos,
                detail: format!("task {kw} takes exactly one coideal"),
            });
        }
        self.doc.tasks.push(TaskDecl {
            kind,
            args,
            span: Span(pos),
        });
        Ok(())
    }

    fn labels(&self) -> Vec<String> {
        self.doc.labels()
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<FreeElement<Rational>> {
        let mut negative = false;
        match self.peek() {
            Tok::Minus => {
                self.advance();
                negative = true;
            }
            Tok::Plus => {
                self.advance();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negative {
            acc = acc.scale(&Rational::from_i64(-1));
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement<Rational>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.advance();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElement<Rational>> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            let k = self.int()?;
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<FreeElement<Rational>> {
        match self.peek().clone() {
            Tok::Int(_) => {
                let c = self.scalar()?;
                Ok(FreeElement::term(Word::unit(), c))
            }
            Tok::Ident(label) => {
                let pos = self.advance().pos;
                match self.labels().iter().position(|l| *l == label) {
                    Some(i) => Ok(FreeElement::letter(i)),
                    None => Err(Error::Name { pos, name: label }),
                }
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => self.error("number, basis label or `(`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "group G permutation degree 1 generators;\nmodule V { }\nalgebra A = T(V) truncate 3;\n";

    #[test]
    fn minimal_document() {
        let doc = parse(MINIMAL).unwrap();
        assert!(doc.tasks.is_empty());
        assert_eq!(doc.algebra.unwrap().truncate, 3);
        assert!(doc.module.unwrap().basis.is_empty());
    }

    #[test]
    fn undeclared_label_is_a_name_error() {
        let src = "group G permutation degree 2 generators (1 2);\n\
                   module V { basis x deg (1 2); action (1 2): x -> -x; }\n\
                   algebra A = T(V) / relations { x*v99; } truncate 3;\n";
        match parse(src) {
            Err(Error::Name { pos, name }) => {
                assert_eq!(name, "v99");
                assert_eq!(pos, Pos { line: 3, col: 34 });
            }
            other => panic!("expected name error, got {other:?}"),
        }
    }

    #[test]
    fn missing_action_is_an_arity_error() {
        let src = "group G permutation degree 2 generators (1 2);\n\
                   module V { basis x deg (1 2); basis y deg (1 2); action (1 2): x -> y; }\n";
        assert!(matches!(parse(src), Err(Error::Arity { .. })));
    }

    #[test]
    fn syntax_error_reports_expectation() {
        let src = "group G permutation degree 2 generators (1 2)\nmodule";
        match parse(src) {
            Err(Error::Syntax { pos, expected, found }) => {
                assert_eq!(pos, Pos { line: 2, col: 1 });
                assert_eq!(expected, "`;`");
                assert_eq!(found, "module");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn expressions_expand() {
        let src = "group G permutation degree 1 generators ();\n\
                   module V { basis x deg (); basis y deg (); action (): x -> x, y -> y; }\n\
                   algebra A = T(V) / relations { (x + y)^2 - 2*x*y; 1/2*x - x*1/2 + y; } truncate 2;\n";
        let doc = parse(src).unwrap();
        let rels = &doc.algebra.unwrap().relations;
        let labels = vec!["x".to_string(), "y".to_string()];
        assert_eq!(rels[0].expr.render(&labels), "x*x - x*y + y*x + y*y");
        assert_eq!(rels[1].expr.render(&labels), "y");
    }

    #[test]
    fn task_requires_declared_coideal() {
        let src = format!("{MINIMAL}task decompose K;\n");
        assert!(matches!(parse(&src), Err(Error::Name { .. })));
    }
}
