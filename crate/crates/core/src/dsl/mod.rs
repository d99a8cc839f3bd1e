//! Text formats for dependency sets, instances and word-rewriting systems.
//!
//! ```text
//! # dependencies, one per line or separated by `;`
//! R(x,y) -> exists z . R(y,z)
//! T(x,y) -> x = y
//! Estar(x,x) -> false
//! -> D(0), D(1)
//!
//! # instances: constants quoted or numeric, nulls prefixed by `?`
//! R('a','b'), S('a', ?x1)
//!
//! # word-rewriting systems over {0,1}; an empty side is the empty word
//! alphabet: 0,1
//! 1 -> 0
//! -> 0
//! ```
//!
//! Rendering is canonical: `parse(render(x)) == x` and `render(parse(s))` is
//! a fixpoint.

mod lexer;

use std::collections::BTreeSet;

use crate::model::{is_digits, Atom, Dependency, Head, Instance, Schema, Sym, Term};
use crate::srs::{Srs, Word};

use lexer::{lex, Spanned, Tok};

/// A syntax or arity error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Where a parsed item starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// Dependencies together with their source positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyFile {
    pub items: Vec<(Dependency, Span)>,
}

impl DependencyFile {
    pub fn dependencies(&self) -> Vec<Dependency> {
        self.items.iter().map(|(d, _)| d.clone()).collect()
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    schema: Schema,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            schema: Schema::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> Span {
        let t = &self.toks[self.pos];
        Span {
            line: t.line,
            column: t.col,
        }
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let s = self.here();
        ParseError::new(s.line, s.column, msg)
    }

    fn expected(&self, what: &str) -> ParseError {
        self.error(format!("expected {what}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn skip_seps(&mut self) {
        while *self.peek() == Tok::Sep {
            self.bump();
        }
    }

    fn at_item_end(&self) -> bool {
        matches!(self.peek(), Tok::Sep | Tok::Eof)
    }

    fn term(&mut self, allow_vars: bool, allow_nulls: bool) -> Result<Term, ParseError> {
        let t = match self.peek().clone() {
            Tok::Quoted(s) | Tok::Digits(s) => Term::constant(&s),
            Tok::Lower(s) if allow_vars && s != "exists" && s != "false" => Term::var(&s),
            Tok::Null(s) if allow_nulls => Term::null(&s),
            Tok::Lower(_) if !allow_vars => return Err(self.error("variables are not allowed here")),
            Tok::Null(_) if !allow_nulls => return Err(self.error("nulls are not allowed in dependencies")),
            _ => return Err(self.expected("a term")),
        };
        self.bump();
        Ok(t)
    }

    fn atom(&mut self, allow_vars: bool, allow_nulls: bool) -> Result<Atom, ParseError> {
        let start = self.here();
        let rel = match self.peek().clone() {
            Tok::Rel(r) => r,
            Tok::Lower(w) => {
                return Err(self.error(format!("relation names start with an uppercase letter, found `{w}`")))
            }
            _ => return Err(self.expected("an atom")),
        };
        self.bump();
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.term(allow_vars, allow_nulls)?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        let atom = Atom::new(&rel, args);
        self.schema
            .observe(&atom)
            .map_err(|e| ParseError::new(start.line, start.column, e.to_string()))?;
        Ok(atom)
    }

    fn atoms(&mut self, allow_vars: bool, allow_nulls: bool) -> Result<Vec<Atom>, ParseError> {
        let mut out = vec![self.atom(allow_vars, allow_nulls)?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.atom(allow_vars, allow_nulls)?);
        }
        Ok(out)
    }

    fn dependency(&mut self) -> Result<Dependency, ParseError> {
        let body = if *self.peek() == Tok::Arrow {
            Vec::new()
        } else {
            self.atoms(true, false)?
        };
        self.expect(Tok::Arrow, "`->`")?;
        let body_vars: BTreeSet<Term> = body.iter().flat_map(|a| a.vars().cloned()).collect();
        let head_start = self.here();
        let head = match self.peek().clone() {
            Tok::Lower(w) if w == "false" => {
                self.bump();
                Head::False
            }
            Tok::Lower(w) if w == "exists" => {
                self.bump();
                let mut exists: Vec<Sym> = Vec::new();
                loop {
                    let at = self.here();
                    match self.peek().clone() {
                        Tok::Lower(v) if v != "exists" && v != "false" => {
                            let var = Term::var(&v);
                            if body_vars.contains(&var) {
                                return Err(ParseError::new(
                                    at.line,
                                    at.column,
                                    format!("existential variable `{v}` also occurs in the body"),
                                ));
                            }
                            if exists.iter().any(|e| **e == *v) {
                                return Err(ParseError::new(at.line, at.column, format!("`{v}` declared twice")));
                            }
                            exists.push(Sym::from(v.as_str()));
                            self.bump();
                        }
                        _ => return Err(self.expected("an existential variable")),
                    }
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Dot, "`.` after the existential variables")?;
                let atoms = self.atoms(true, false)?;
                self.check_head_vars(&atoms, &body_vars, &exists, head_start)?;
                Head::Atoms { exists, atoms }
            }
            Tok::Rel(_) => {
                let atoms = self.atoms(true, false)?;
                self.check_head_vars(&atoms, &body_vars, &[], head_start)?;
                Head::Atoms {
                    exists: Vec::new(),
                    atoms,
                }
            }
            Tok::Lower(_) | Tok::Quoted(_) | Tok::Digits(_) => {
                let left = self.term(true, false)?;
                self.expect(Tok::Equals, "`=`")?;
                let right = self.term(true, false)?;
                for t in [&left, &right] {
                    if t.is_var() && !body_vars.contains(t) {
                        return Err(ParseError::new(
                            head_start.line,
                            head_start.column,
                            format!("variable `{t}` of the equality does not occur in the body"),
                        ));
                    }
                }
                Head::Equal(left, right)
            }
            _ => return Err(self.expected("a head (atoms, `x = y`, or `false`)")),
        };
        if !self.at_item_end() {
            return Err(self.expected("end of dependency"));
        }
        Ok(Dependency { body, head })
    }

    fn check_head_vars(
        &self,
        atoms: &[Atom],
        body_vars: &BTreeSet<Term>,
        exists: &[Sym],
        at: Span,
    ) -> Result<(), ParseError> {
        for a in atoms {
            for t in a.vars() {
                let declared = matches!(t, Term::Var(v) if exists.contains(v));
                if !declared && !body_vars.contains(t) {
                    return Err(ParseError::new(
                        at.line,
                        at.column,
                        format!("head variable `{t}` is neither in the body nor declared with `exists`"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Parses a dependency file, keeping the position of each item.
pub fn parse_dependency_file(text: &str) -> Result<DependencyFile, ParseError> {
    let mut p = Parser::new(text)?;
    let mut items = Vec::new();
    loop {
        p.skip_seps();
        if *p.peek() == Tok::Eof {
            break;
        }
        let at = p.here();
        items.push((p.dependency()?, at));
    }
    Ok(DependencyFile { items })
}

pub fn parse_dependencies(text: &str) -> Result<Vec<Dependency>, ParseError> {
    Ok(parse_dependency_file(text)?.dependencies())
}

/// Parses a single dependency; convenient in tests and examples.
pub fn parse_dependency(text: &str) -> Result<Dependency, ParseError> {
    let mut deps = parse_dependencies(text)?;
    match deps.len() {
        1 => Ok(deps.remove(0)),
        n => Err(ParseError::new(1, 1, format!("expected one dependency, found {n}"))),
    }
}

/// Atoms separated by commas, `;` or line breaks.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Instance::new();
    loop {
        while matches!(p.peek(), Tok::Sep | Tok::Comma) {
            p.bump();
        }
        if *p.peek() == Tok::Eof {
            break;
        }
        out.insert(p.atom(false, true)?);
    }
    Ok(out)
}

pub fn render_dependencies(deps: &[Dependency]) -> String {
    deps.iter().map(|d| format!("{d}\n")).collect()
}

/// Each dependency preceded by a `#` comment line.
pub fn render_dependencies_with_notes(deps: &[Dependency], notes: &[String]) -> String {
    let mut out = String::new();
    for (d, n) in deps.iter().zip(notes) {
        out.push_str(&format!("# {n}\n{d}\n"));
    }
    out
}

/// One atom per line, in insertion order.
pub fn render_instance(instance: &Instance) -> String {
    instance.iter().map(|a| format!("{a}\n")).collect()
}

/// Parses an SRS file: an optional `alphabet:` line, then `lhs -> rhs` rules.
pub fn parse_srs(text: &str) -> Result<Srs, ParseError> {
    let mut rules = Vec::new();
    let mut seen_rule = false;
    for (li, raw) in text.lines().enumerate() {
        let lineno = li + 1;
        let line = raw.split('#').next().unwrap_or("");
        let indent = line.len() - line.trim_start().len();
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("alphabet:") {
            if seen_rule {
                return Err(ParseError::new(lineno, indent + 1, "the alphabet line must precede the rules"));
            }
            let offset = indent + "alphabet:".len();
            let mut letters = BTreeSet::new();
            for (ci, ch) in rest.char_indices() {
                match ch {
                    '0' | '1' => {
                        letters.insert(ch);
                    }
                    ',' | ' ' | '\t' | '{' | '}' => {}
                    other => {
                        return Err(ParseError::new(
                            lineno,
                            offset + ci + 1,
                            format!("alphabet is fixed to {{0,1}}, found `{other}`"),
                        ))
                    }
                }
            }
            if letters.len() != 2 {
                return Err(ParseError::new(lineno, indent + 1, "alphabet must be exactly {0,1}"));
            }
            continue;
        }
        seen_rule = true;
        let Some(arrow) = line.find("->") else {
            return Err(ParseError::new(lineno, indent + 1, "expected `lhs -> rhs`"));
        };
        let word = |s: &str, base: usize| -> Result<Word, ParseError> {
            let lead = s.len() - s.trim_start().len();
            let w = s.trim();
            for (ci, ch) in w.char_indices() {
                if ch != '0' && ch != '1' {
                    return Err(ParseError::new(
                        lineno,
                        base + lead + ci + 1,
                        format!("words are over {{0,1}}, found `{ch}`"),
                    ));
                }
            }
            Ok(w.parse().expect("checked letters"))
        };
        let lhs = word(&line[..arrow], 0)?;
        let rhs = word(&line[arrow + 2..], arrow + 2)?;
        rules.push((lhs, rhs));
    }
    Ok(Srs::new(rules))
}

/// Canonical SRS text; always carries the alphabet line.
pub fn render_srs(srs: &Srs) -> String {
    let mut out = String::from("alphabet: 0,1\n");
    for (l, r) in srs.rules() {
        match (l.is_empty(), r.is_empty()) {
            (true, true) => out.push_str("->\n"),
            (true, false) => out.push_str(&format!("-> {r}\n")),
            (false, true) => out.push_str(&format!("{l} ->\n")),
            (false, false) => out.push_str(&format!("{l} -> {r}\n")),
        }
    }
    out
}

/// Renders a constant label in surface syntax.
pub fn render_constant(label: &str) -> String {
    if is_digits(label) {
        label.to_string()
    } else {
        format!("'{label}'")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DepKind;

    #[test]
    fn tgd_of_example_one() {
        let d = parse_dependency("R(x,y) -> exists z . R(y,z)").unwrap();
        assert_eq!(d.kind(), DepKind::Tgd);
        assert_eq!(d.existential_vars(), vec![Term::var("z")]);
        assert_eq!(d.frontier(), vec![Term::var("y")]);
    }

    #[test]
    fn egd_and_denial() {
        let e = parse_dependency("T(x,y) -> x = y").unwrap();
        assert_eq!(e.head, Head::Equal(Term::var("x"), Term::var("y")));
        let f = parse_dependency("Estar(x,x) -> false").unwrap();
        assert_eq!(f.kind(), DepKind::Denial);
        let c = parse_dependency("R(x) -> 'a' = 'b'").unwrap();
        assert_eq!(c.kind(), DepKind::Egd);
    }

    #[test]
    fn separators_and_aliases() {
        let deps = parse_dependencies("S(x) -> R(x,x) & T(x); R(x,y) -> S(y)\n\n# note\n-> D(0),D(1)").unwrap();
        assert_eq!(deps.len(), 3);
        assert_eq!(deps[0].head_atoms().len(), 2);
        assert!(deps[2].body.is_empty());
    }

    #[test]
    fn undeclared_head_variable_is_rejected() {
        let e = parse_dependency("R(x,y) -> R(y,z)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(e.message.contains("`z`"));
    }

    #[test]
    fn arity_mismatch_is_located() {
        let e = parse_dependencies("R(x,y) -> S(x)\nS(x,y) -> R(x,y)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse_dependencies("R(x,y) -> exists z R(y,z)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 20));
        let e = parse_dependencies("R(x,y) S(x)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        assert!(parse_dependencies("R(?n) -> S(x)").is_err());
    }

    #[test]
    fn instances() {
        let i = parse_instance("R('a','b')").unwrap();
        assert_eq!(i.len(), 1);
        let j = parse_instance("S('a', ?x1)").unwrap();
        assert_eq!(j.nulls().len(), 1);
        let i0 = parse_instance("R('a','b')\nR('a','c'), S('a','d')").unwrap();
        assert_eq!(i0.len(), 3);
        assert!(parse_instance("R(x)").is_err());
        assert!(parse_instance("R('a'), R('a','b')").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let text = "R('a',?x1)\nS(0)\n";
        let i = parse_instance(text).unwrap();
        assert_eq!(render_instance(&i), text);
    }

    #[test]
    fn srs_files() {
        let s = parse_srs("1 -> 0").unwrap();
        assert_eq!(s.rules().len(), 1);
        assert_eq!(s.rules()[0].0.to_string(), "1");
        let e = parse_srs("-> 0").unwrap();
        assert!(e.rules()[0].0.is_empty());
        let canon = "alphabet: 0,1\n1 -> 0\n-> 0\n";
        assert_eq!(render_srs(&parse_srs(canon).unwrap()), canon);
        let err = parse_srs("alphabet: 0,1\n10 -> 2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        assert!(parse_srs("alphabet: a,b").is_err());
    }
}
