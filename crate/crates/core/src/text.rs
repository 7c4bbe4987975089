//! Line-oriented text format for algebras, functions, relation pairs and
//! function sets. `#` starts a comment.
//!
//! ```text
//! carrier 2
//! op maj 3 00010111
//!
//! fn e2 source 2 target 2 arity 2 table 0001
//!
//! pair n 2 source 2 target 2
//! P 10 01
//! Q 00 01 10
//!
//! set source 2 target 2 arity 1
//! member 01
//! member 10
//! ```
//!
//! Tables over carriers of at most ten elements are digit strings; larger
//! carriers use whitespace-separated decimals. Relation tuples follow the
//! same rule, with commas between entries for large carriers.

use crate::algebra::{Algebra, Operation};
use crate::error::{Error, Result};
use crate::function::{FiniteFunction, Signature};
use crate::relation::RelationPair;
use crate::set::FunctionSet;

/// Carriers up to this size are written one digit per entry.
pub const DIGIT_CARRIER_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFunction {
    pub name: String,
    pub function: FiniteFunction,
}

/// Anything the text format can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Algebra(Algebra),
    Functions(Vec<NamedFunction>),
    Pairs(Vec<RelationPair>),
    Set(FunctionSet),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Algebra(_) => "algebra",
            Artifact::Functions(_) => "function",
            Artifact::Pairs(_) => "pairs",
            Artifact::Set(_) => "set",
        }
    }
}

pub fn format_table(table: &[u8], carrier: usize) -> String {
    if carrier <= DIGIT_CARRIER_MAX {
        table.iter().map(|&v| char::from(b'0' + v)).collect()
    } else {
        join(table.iter().map(|v| v.to_string()), " ")
    }
}

fn format_tuple(tuple: &[u8], carrier: usize) -> String {
    if carrier <= DIGIT_CARRIER_MAX {
        format_table(tuple, carrier)
    } else {
        join(tuple.iter().map(|v| v.to_string()), ",")
    }
}

fn join(items: impl Iterator<Item = String>, sep: &str) -> String {
    items.collect::<Vec<_>>().join(sep)
}

pub fn format_algebra(a: &Algebra) -> String {
    let mut lines = vec![format!("carrier {}", a.carrier_size())];
    for op in a.ops() {
        lines.push(format!(
            "op {} {} {}",
            op.name,
            op.arity(),
            format_table(op.function.table(), a.carrier_size())
        ));
    }
    lines.join("\n")
}

pub fn format_function(name: &str, f: &FiniteFunction) -> String {
    format!(
        "fn {name} source {} target {} arity {} table {}",
        f.source_size(),
        f.target_size(),
        f.arity(),
        f.table_string()
    )
}

pub fn format_pair(r: &RelationPair) -> String {
    let rel = |tag: &str, tuples: &[Vec<u8>], size: usize| {
        let mut line = tag.to_string();
        for t in tuples {
            line.push(' ');
            line.push_str(&format_tuple(t, size));
        }
        line
    };
    [
        format!(
            "pair n {} source {} target {}",
            r.arity(),
            r.source_size(),
            r.target_size()
        ),
        rel("P", r.p(), r.source_size()),
        rel("Q", r.q(), r.target_size()),
    ]
    .join("\n")
}

pub fn format_set(s: &FunctionSet) -> String {
    let sig = s.signature();
    let mut lines = vec![format!(
        "set source {} target {} arity {}",
        sig.source_size, sig.target_size, sig.arity
    )];
    lines.extend(s.iter().map(|f| format!("member {}", f.table_string())));
    lines.join("\n")
}

/// Canonical text of any artifact, without a trailing newline.
pub fn format_artifact(a: &Artifact) -> String {
    match a {
        Artifact::Algebra(alg) => format_algebra(alg),
        Artifact::Functions(fs) => join(
            fs.iter().map(|nf| format_function(&nf.name, &nf.function)),
            "\n",
        ),
        Artifact::Pairs(ps) => join(ps.iter().map(format_pair), "\n"),
        Artifact::Set(s) => format_set(s),
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<usize> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected a number, found '{}'", self.text)))
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn error_at_end(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.number,
            column: self.end_column,
            message: message.into(),
        }
    }

    fn token(&self, i: usize, what: &str) -> Result<Token<'a>> {
        self.tokens
            .get(i)
            .copied()
            .ok_or_else(|| self.error_at_end(format!("missing {what}")))
    }

    fn keyword(&self, i: usize, word: &str) -> Result<()> {
        let t = self.token(i, &format!("'{word}'"))?;
        if t.text != word {
            return Err(t.error(format!("expected '{word}', found '{}'", t.text)));
        }
        Ok(())
    }

    fn no_more(&self, from: usize) -> Result<()> {
        match self.tokens.get(from) {
            Some(t) => Err(t.error(format!("unexpected '{}'", t.text))),
            None => Ok(()),
        }
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col)),
                (true, Some((b, c))) => {
                    tokens.push(Token {
                        text: &content[b..byte],
                        line: i + 1,
                        column: c + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token {
                text: &content[b..],
                line: i + 1,
                column: c + 1,
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
                end_column: content.chars().count() + 1,
            });
        }
    }
    out
}

/// Reads a table of `len` entries below `carrier` starting at `tokens[0]`.
fn parse_table(line: &Line<'_>, from: usize, carrier: usize, len: usize) -> Result<Vec<u8>> {
    let first = line.token(from, "table")?;
    if carrier <= DIGIT_CARRIER_MAX {
        line.no_more(from + 1)?;
        let table = digits(&first, carrier)?;
        if table.len() != len {
            return Err(first.error(format!(
                "table '{}' has {} entries, expected {len}",
                first.text,
                table.len()
            )));
        }
        Ok(table)
    } else {
        let tokens = &line.tokens[from..];
        if tokens.len() != len {
            return Err(first.error(format!(
                "table has {} entries, expected {len}",
                tokens.len()
            )));
        }
        tokens.iter().map(|t| entry(t, t.text, carrier)).collect()
    }
}

fn digits(t: &Token<'_>, carrier: usize) -> Result<Vec<u8>> {
    t.text
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if (d as usize) < carrier => Ok(d as u8),
            Some(_) => Err(t.error(format!(
                "entry '{c}' in '{}' outside carrier of size {carrier}",
                t.text
            ))),
            None => Err(t.error(format!("'{}' is not a digit table", t.text))),
        })
        .collect()
}

fn entry(t: &Token<'_>, text: &str, carrier: usize) -> Result<u8> {
    match text.parse::<usize>() {
        Ok(v) if v < carrier => Ok(v as u8),
        Ok(v) => Err(t.error(format!(
            "entry {v} in '{}' outside carrier of size {carrier}",
            t.text
        ))),
        Err(_) => Err(t.error(format!("'{}' is not a number", t.text))),
    }
}

fn parse_tuple(t: &Token<'_>, carrier: usize, arity: usize) -> Result<Vec<usize>> {
    let tuple: Vec<u8> = if carrier <= DIGIT_CARRIER_MAX {
        digits(t, carrier)?
    } else {
        t.text
            .split(',')
            .map(|part| entry(t, part, carrier))
            .collect::<Result<_>>()?
    };
    if tuple.len() != arity {
        return Err(t.error(format!(
            "tuple '{}' has length {}, relation arity is {arity}",
            t.text,
            tuple.len()
        )));
    }
    Ok(tuple.into_iter().map(usize::from).collect())
}

fn located<T>(line: &Line<'_>, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(msg) => line.tokens[0].error(msg),
        other => other,
    })
}

/// Parses any artifact, deciding the kind from the first keyword.
pub fn parse_artifact(text: &str) -> Result<Artifact> {
    let ls = lines(text);
    let Some(first) = ls.first() else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    };
    match first.tokens[0].text {
        "carrier" => parse_algebra_lines(&ls).map(Artifact::Algebra),
        "fn" => ls
            .iter()
            .map(parse_fn_line)
            .collect::<Result<_>>()
            .map(Artifact::Functions),
        "pair" => parse_pair_lines(&ls).map(Artifact::Pairs),
        "set" => parse_set_lines(&ls).map(Artifact::Set),
        other => Err(first.tokens[0].error(format!(
            "expected 'carrier', 'fn', 'pair' or 'set', found '{other}'"
        ))),
    }
}

fn expect_kind<T>(text: &str, kind: &str, pick: impl FnOnce(Artifact) -> Option<T>) -> Result<T> {
    let a = parse_artifact(text)?;
    let found = a.kind();
    pick(a).ok_or_else(|| Error::input(format!("expected a {kind} artifact, found a {found}")))
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    expect_kind(text, "algebra", |a| match a {
        Artifact::Algebra(x) => Some(x),
        _ => None,
    })
}

pub fn parse_functions(text: &str) -> Result<Vec<NamedFunction>> {
    expect_kind(text, "function", |a| match a {
        Artifact::Functions(x) => Some(x),
        _ => None,
    })
}

pub fn parse_pairs(text: &str) -> Result<Vec<RelationPair>> {
    expect_kind(text, "pairs", |a| match a {
        Artifact::Pairs(x) => Some(x),
        _ => None,
    })
}

pub fn parse_set(text: &str) -> Result<FunctionSet> {
    expect_kind(text, "set", |a| match a {
        Artifact::Set(x) => Some(x),
        _ => None,
    })
}

fn parse_algebra_lines(ls: &[Line<'_>]) -> Result<Algebra> {
    let head = &ls[0];
    head.keyword(0, "carrier")?;
    let size_tok = head.token(1, "carrier size")?;
    let size = size_tok.number()?;
    head.no_more(2)?;
    located(head, Signature::new(size, size, 1))?;
    let mut ops = Vec::new();
    for line in &ls[1..] {
        line.keyword(0, "op")?;
        let name = line.token(1, "operation name")?.text.to_string();
        let arity_tok = line.token(2, "arity")?;
        let arity = arity_tok.number()?;
        let sig = Signature::new(size, size, arity).map_err(|e| arity_tok.error(e.to_string()))?;
        let table = parse_table(line, 3, size, sig.table_len())?;
        ops.push(Operation::new(name, FiniteFunction::new(sig, table)?));
    }
    located(head, Algebra::new(size, ops))
}

fn parse_fn_line(line: &Line<'_>) -> Result<NamedFunction> {
    line.keyword(0, "fn")?;
    let name = line.token(1, "function name")?.text.to_string();
    line.keyword(2, "source")?;
    let source = line.token(3, "source size")?.number()?;
    line.keyword(4, "target")?;
    let target = line.token(5, "target size")?.number()?;
    line.keyword(6, "arity")?;
    let arity_tok = line.token(7, "arity")?;
    let arity = arity_tok.number()?;
    line.keyword(8, "table")?;
    let sig = Signature::new(source, target, arity).map_err(|e| arity_tok.error(e.to_string()))?;
    let table = parse_table(line, 9, target, sig.table_len())?;
    Ok(NamedFunction {
        name,
        function: FiniteFunction::new(sig, table)?,
    })
}

fn parse_pair_lines(ls: &[Line<'_>]) -> Result<Vec<RelationPair>> {
    struct Pending {
        arity: usize,
        source: usize,
        target: usize,
        p: Vec<Vec<usize>>,
        q: Vec<Vec<usize>>,
        line: usize,
    }
    let mut out = Vec::new();
    let mut current: Option<Pending> = None;
    let finish = |p: Pending| {
        RelationPair::new(p.arity, p.source, p.target, p.p, p.q).map_err(|e| Error::Syntax {
            line: p.line,
            column: 1,
            message: e.to_string(),
        })
    };
    for line in ls {
        let head = line.tokens[0];
        match head.text {
            "pair" => {
                if let Some(p) = current.take() {
                    out.push(finish(p)?);
                }
                line.keyword(1, "n")?;
                let arity_tok = line.token(2, "relation arity")?;
                let arity = arity_tok.number()?;
                line.keyword(3, "source")?;
                let source_tok = line.token(4, "source size")?;
                let source = source_tok.number()?;
                line.keyword(5, "target")?;
                let target = line.token(6, "target size")?.number()?;
                line.no_more(7)?;
                if arity == 0 {
                    return Err(arity_tok.error("relation arity must be at least 1"));
                }
                Signature::new(source, target, 1).map_err(|e| source_tok.error(e.to_string()))?;
                current = Some(Pending {
                    arity,
                    source,
                    target,
                    p: Vec::new(),
                    q: Vec::new(),
                    line: line.number,
                });
            }
            "P" | "Q" => {
                let Some(p) = current.as_mut() else {
                    return Err(head.error("relation line before any 'pair' header"));
                };
                let (size, dest) = if head.text == "P" {
                    (p.source, &mut p.p)
                } else {
                    (p.target, &mut p.q)
                };
                for t in &line.tokens[1..] {
                    dest.push(parse_tuple(t, size, p.arity)?);
                }
            }
            other => {
                return Err(head.error(format!("expected 'pair', 'P' or 'Q', found '{other}'")))
            }
        }
    }
    if let Some(p) = current.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}

fn parse_set_lines(ls: &[Line<'_>]) -> Result<FunctionSet> {
    let head = &ls[0];
    head.keyword(0, "set")?;
    head.keyword(1, "source")?;
    let source = head.token(2, "source size")?.number()?;
    head.keyword(3, "target")?;
    let target = head.token(4, "target size")?.number()?;
    head.keyword(5, "arity")?;
    let arity_tok = head.token(6, "arity")?;
    let arity = arity_tok.number()?;
    head.no_more(7)?;
    let sig = Signature::new(source, target, arity).map_err(|e| arity_tok.error(e.to_string()))?;
    let mut members = Vec::new();
    for line in &ls[1..] {
        line.keyword(0, "member")?;
        let table = parse_table(line, 1, target, sig.table_len())?;
        members.push(FiniteFunction::new(sig, table)?);
    }
    FunctionSet::new(sig, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_pq;

    #[test]
    fn algebra_example() {
        let a = parse_algebra("carrier 2\nop maj 3 00010111").unwrap();
        assert_eq!(a.carrier_size(), 2);
        assert_eq!(a.ops()[0].name, "maj");
        assert_eq!(a.ops()[0].function.table_string(), "00010111");
        assert_eq!(format_algebra(&a), "carrier 2\nop maj 3 00010111");
    }

    #[test]
    fn function_example() {
        let fs = parse_functions("fn e2 source 2 target 2 arity 2 table 0001").unwrap();
        assert_eq!(fs[0].name, "e2");
        assert_eq!(fs[0].function, crate::constructions::build_e(2, 2).unwrap());
        assert_eq!(
            format_function("e2", &fs[0].function),
            "fn e2 source 2 target 2 arity 2 table 0001"
        );
    }

    #[test]
    fn pair_example() {
        let ps = parse_pairs("pair n 2 source 2 target 2\nP 10 01\nQ 00 01 10").unwrap();
        assert_eq!(ps, vec![build_pq(2, 2, 2).unwrap()]);
        assert_eq!(
            format_pair(&ps[0]),
            "pair n 2 source 2 target 2\nP 01 10\nQ 00 01 10"
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# meet\ncarrier 2   # two elements\n\nop and 2 0001\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(format_algebra(&a), "carrier 2\nop and 2 0001");
    }

    #[test]
    fn large_carrier_tables() {
        let table: Vec<String> = (0..12).map(|v| ((v + 1) % 12).to_string()).collect();
        let text = format!("carrier 12\nop succ 1 {}", table.join(" "));
        let a = parse_algebra(&text).unwrap();
        assert_eq!(format_algebra(&a), text);
        let pair = "pair n 2 source 12 target 2\nP 0,11 10,3\nQ 01";
        let ps = parse_pairs(pair).unwrap();
        assert_eq!(ps[0].p(), &[vec![0, 11], vec![10, 3]]);
    }

    #[test]
    fn syntax_errors_are_located() {
        match parse_algebra("carrier 2\nop and 2 0021").unwrap_err() {
            Error::Syntax {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (2, 10));
                assert!(message.contains("0021"), "{message}");
            }
            e => panic!("{e}"),
        }
        match parse_algebra("carrier 2\nop and 2 000").unwrap_err() {
            Error::Syntax { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("expected 4"), "{message}");
            }
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_artifact("bogus 1"),
            Err(Error::Syntax {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(parse_artifact(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_pairs("pair n 2 source 2 target 2\nP 101"),
            Err(Error::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_algebra("carrier 2\nop f 1 01\nop f 1 10"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn kind_mismatch() {
        assert!(matches!(
            parse_algebra("fn e source 2 target 2 arity 1 table 01"),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn set_round_trip() {
        let text = "set source 2 target 2 arity 1\nmember 10\nmember 01";
        let s = parse_set(text).unwrap();
        assert_eq!(
            format_set(&s),
            "set source 2 target 2 arity 1\nmember 01\nmember 10"
        );
    }

    #[test]
    fn empty_relation_lines() {
        let ps = parse_pairs("pair n 1 source 2 target 2\nP\nQ 0").unwrap();
        assert!(ps[0].p().is_empty());
        assert_eq!(format_pair(&ps[0]), "pair n 1 source 2 target 2\nP\nQ 0");
        let again = parse_pairs(&format_pair(&ps[0])).unwrap();
        assert_eq!(again, ps);
    }
}
