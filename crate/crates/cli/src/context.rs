//! Context files: one universe plus named relations, covers, sequences,
//! fuzzy sets and granule families.
//!
//! ```text
//! # comment
//! universe a b c
//! relation R closure: refl sym
//!   pair a b
//! end
//! cover K
//!   block K1 a b
//!   block K2 c
//! end
//! sequence s1 c a b
//! fuzzy F
//!   level 1/2 : a b
//!   level 1 : a
//! end
//! granules G
//!   granule a b
//!   granule c
//! end
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rough_core::fuzzy::FuzzySet;
use rough_core::{ClosureKinds, CoverSystem, ElementSet, Error, Ratio, Relation, Result, Universe};

#[derive(Clone, Debug)]
pub struct Context {
    pub universe: Arc<Universe>,
    pub relations: BTreeMap<String, Relation>,
    pub covers: BTreeMap<String, CoverSystem>,
    pub sequences: BTreeMap<String, Vec<usize>>,
    pub fuzzy: BTreeMap<String, FuzzySet>,
    pub granules: BTreeMap<String, Vec<ElementSet>>,
}

#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn tokens(line_no: usize, line: &str) -> Vec<Tok<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let col_of = |byte: usize| line[..byte].chars().count() + 1;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok { text: &line[s..i], line: line_no, column: col_of(s) });
                start = None;
            }
            _ => {}
        }
    }
    out
}

enum Block {
    Relation { id: String, closure: ClosureKinds, pairs: Vec<(usize, usize)> },
    Cover { id: String, blocks: Vec<(String, ElementSet)> },
    Fuzzy { id: String, levels: Vec<(Ratio, ElementSet)> },
    Granules { id: String, sets: Vec<ElementSet> },
}

struct Parser {
    universe: Option<Arc<Universe>>,
    ctx: Context,
    open: Option<(Block, usize)>,
}

impl Parser {
    fn universe(&self, t: &Tok) -> Result<&Arc<Universe>> {
        self.universe.as_ref().ok_or_else(|| err(t.line, t.column, "`universe` must come first"))
    }

    fn element(&self, t: &Tok) -> Result<usize> {
        self.universe(t)?
            .index_of(t.text)
            .map_err(|_| err(t.line, t.column, format!("unknown element `{}`", t.text)))
    }

    fn set(&self, toks: &[Tok]) -> Result<ElementSet> {
        let width = self.universe.as_ref().map_or(0, |u| u.len());
        let mut s = ElementSet::empty(width);
        for t in toks {
            s.insert(self.element(t)?);
        }
        Ok(s)
    }

    fn fresh<T>(map: &BTreeMap<String, T>, t: &Tok) -> Result<String> {
        if map.contains_key(t.text) {
            return Err(err(t.line, t.column, format!("`{}` is declared twice", t.text)));
        }
        Ok(t.text.to_string())
    }

    fn id<'a>(toks: &[Tok<'a>], kw: &Tok) -> Result<Tok<'a>> {
        match toks.get(1) {
            Some(t) => Ok(*t),
            None => Err(err(kw.line, kw.column, format!("`{}` needs a name", kw.text))),
        }
    }

    fn line(&mut self, toks: &[Tok]) -> Result<()> {
        let Some(kw) = toks.first().copied() else { return Ok(()) };
        if let Some((block, opened)) = self.open.take() {
            return self.inside(block, opened, toks);
        }
        match kw.text {
            "universe" => {
                if self.universe.is_some() {
                    return Err(err(kw.line, kw.column, "only one `universe` line is allowed"));
                }
                let names: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();
                if let Some((_, t)) = toks[1..].iter().enumerate().find(|(i, t)| names[..*i].contains(&t.text)) {
                    return Err(err(t.line, t.column, format!("element `{}` declared twice", t.text)));
                }
                let u = Universe::new(names).map_err(|e| err(kw.line, kw.column, e.to_string()))?;
                self.ctx.universe = u.clone();
                self.universe = Some(u);
            }
            "relation" => {
                self.universe(&kw)?;
                let id = Self::id(toks, &kw)?;
                let name = Self::fresh(&self.ctx.relations, &id)?;
                let mut closure = ClosureKinds::default();
                let mut expect_kind = false;
                for t in &toks[2..] {
                    let word = match t.text.strip_prefix("closure:") {
                        Some(rest) => {
                            expect_kind = true;
                            if rest.is_empty() {
                                continue;
                            }
                            rest
                        }
                        None if expect_kind => t.text,
                        None => return Err(err(t.line, t.column, format!("unexpected `{}`", t.text))),
                    };
                    match word {
                        "refl" => closure.reflexive = true,
                        "sym" => closure.symmetric = true,
                        "trans" => closure.transitive = true,
                        _ => return Err(err(t.line, t.column, format!("unknown closure `{word}`"))),
                    }
                }
                self.open = Some((Block::Relation { id: name, closure, pairs: Vec::new() }, kw.line));
            }
            "cover" | "fuzzy" | "granules" => {
                self.universe(&kw)?;
                let id = Self::id(toks, &kw)?;
                if let Some(t) = toks.get(2) {
                    return Err(err(t.line, t.column, format!("unexpected `{}`", t.text)));
                }
                let block = match kw.text {
                    "cover" => Block::Cover { id: Self::fresh(&self.ctx.covers, &id)?, blocks: Vec::new() },
                    "fuzzy" => Block::Fuzzy { id: Self::fresh(&self.ctx.fuzzy, &id)?, levels: Vec::new() },
                    _ => Block::Granules { id: Self::fresh(&self.ctx.granules, &id)?, sets: Vec::new() },
                };
                self.open = Some((block, kw.line));
            }
            "sequence" => {
                self.universe(&kw)?;
                let id = Self::id(toks, &kw)?;
                let name = Self::fresh(&self.ctx.sequences, &id)?;
                let order = toks[2..].iter().map(|t| self.element(t)).collect::<Result<Vec<_>>>()?;
                self.ctx.sequences.insert(name, order);
            }
            other => return Err(err(kw.line, kw.column, format!("unknown keyword `{other}`"))),
        }
        Ok(())
    }

    fn inside(&mut self, mut block: Block, opened: usize, toks: &[Tok]) -> Result<()> {
        let kw = toks[0];
        if kw.text == "end" {
            if let Some(t) = toks.get(1) {
                return Err(err(t.line, t.column, "nothing may follow `end`"));
            }
            return self.close(block, &kw);
        }
        match (&mut block, kw.text) {
            (Block::Relation { pairs, .. }, "pair") => {
                if toks.len() != 3 {
                    return Err(err(kw.line, kw.column, "`pair` takes two elements"));
                }
                pairs.push((self.element(&toks[1])?, self.element(&toks[2])?));
            }
            (Block::Cover { blocks, .. }, "block") => {
                let id = Self::id(toks, &kw)?;
                if blocks.iter().any(|(n, _)| n == id.text) {
                    return Err(err(id.line, id.column, format!("block `{}` declared twice", id.text)));
                }
                blocks.push((id.text.to_string(), self.set(&toks[2..])?));
            }
            (Block::Fuzzy { levels, .. }, "level") => {
                let at = toks.get(1).ok_or_else(|| err(kw.line, kw.column, "`level` needs a value"))?;
                let a: Ratio = at.text.parse().map_err(|_| err(at.line, at.column, format!("bad level `{}`", at.text)))?;
                match toks.get(2) {
                    Some(t) if t.text == ":" => {}
                    Some(t) => return Err(err(t.line, t.column, "expected `:`")),
                    None => return Err(err(kw.line, kw.column, "expected `:`")),
                }
                levels.push((a, self.set(&toks[3..])?));
            }
            (Block::Granules { sets, .. }, "granule") => sets.push(self.set(&toks[1..])?),
            (_, other) => return Err(err(kw.line, kw.column, format!("unexpected `{other}` inside the block opened on line {opened}"))),
        }
        self.open = Some((block, opened));
        Ok(())
    }

    fn close(&mut self, block: Block, end: &Tok) -> Result<()> {
        let u = self.universe(end)?.clone();
        let wrap = |e: Error| err(end.line, end.column, e.to_string());
        match block {
            Block::Relation { id, closure, pairs } => {
                let r = Relation::from_pairs(&u, pairs).closure(closure);
                self.ctx.relations.insert(id, r);
            }
            Block::Cover { id, blocks } => {
                let c = CoverSystem::new(&u, blocks).map_err(wrap)?;
                self.ctx.covers.insert(id, c);
            }
            Block::Fuzzy { id, levels } => {
                let f = FuzzySet::new(u.len(), levels).map_err(wrap)?;
                self.ctx.fuzzy.insert(id, f);
            }
            Block::Granules { id, sets } => {
                self.ctx.granules.insert(id, sets);
            }
        }
        Ok(())
    }
}

pub fn parse_context(text: &str) -> Result<Context> {
    let empty = Universe::new(Vec::<String>::new())?;
    let mut p = Parser {
        universe: None,
        ctx: Context {
            universe: empty,
            relations: BTreeMap::new(),
            covers: BTreeMap::new(),
            sequences: BTreeMap::new(),
            fuzzy: BTreeMap::new(),
            granules: BTreeMap::new(),
        },
        open: None,
    };
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        last = i + 1;
        p.line(&tokens(i + 1, line))?;
    }
    if let Some((_, opened)) = p.open {
        return Err(err(last.max(1), 1, format!("block opened on line {opened} is missing `end`")));
    }
    Ok(p.ctx)
}

/// Reads and parses a file; I/O failures come back as `std::io::Error`.
pub fn read_context(path: &Path) -> std::io::Result<Result<Context>> {
    Ok(parse_context(&std::fs::read_to_string(path)?))
}

impl Context {
    fn lookup<'a, T>(map: &'a BTreeMap<String, T>, what: &'static str, name: &str) -> Result<&'a T> {
        map.get(name).ok_or_else(|| Error::KindMismatch { expected: what, found: format!("`{name}`") })
    }

    pub fn relation(&self, name: &str) -> Result<&Relation> {
        Self::lookup(&self.relations, "a declared relation", name)
    }

    pub fn cover(&self, name: &str) -> Result<&CoverSystem> {
        Self::lookup(&self.covers, "a declared cover", name)
    }

    pub fn sequence(&self, name: &str) -> Result<&Vec<usize>> {
        Self::lookup(&self.sequences, "a declared sequence", name)
    }

    pub fn fuzzy_set(&self, name: &str) -> Result<&FuzzySet> {
        Self::lookup(&self.fuzzy, "a declared fuzzy set", name)
    }

    pub fn granule_family(&self, name: &str) -> Result<&Vec<ElementSet>> {
        Self::lookup(&self.granules, "a declared granule family", name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# two relations
universe a b c d
relation R closure: refl sym trans
  pair a b
end
relation T closure:refl closure:sym
  pair b c
  pair c d
end
cover K
  block K1 a b
  block K2 b c d
end
sequence s d c b a
fuzzy F
  level 1/2 : a b
  level 1 : a
end
granules G
  granule a b
  granule c d
end
";

    #[test]
    fn parses_every_section() {
        let c = parse_context(SMALL).unwrap();
        assert_eq!(c.universe.len(), 4);
        assert!(c.relation("R").unwrap().is_equivalence());
        assert!(c.relation("T").unwrap().is_tolerance());
        assert!(!c.relation("T").unwrap().is_equivalence());
        assert_eq!(c.cover("K").unwrap().names(), ["K1", "K2"]);
        assert_eq!(c.sequence("s").unwrap(), &vec![3, 2, 1, 0]);
        assert_eq!(c.fuzzy_set("F").unwrap().membership(1), Ratio::new(1, 2));
        assert_eq!(c.granule_family("G").unwrap().len(), 2);
        assert!(c.relation("Q").is_err());
    }

    #[test]
    fn empty_files_are_valid() {
        assert_eq!(parse_context("").unwrap().universe.len(), 0);
        assert_eq!(parse_context("universe\n").unwrap().universe.len(), 0);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "universe a b\nrelation R\n  pair a z\nend\n";
        assert_eq!(parse_context(bad).unwrap_err(), Error::Parse { line: 3, column: 10, message: "unknown element `z`".into() });
        let cases = [
            ("universe a a\n", 1),
            ("universe a\nuniverse b\n", 2),
            ("relation R\nend\n", 1),
            ("universe a\nfrobnicate\n", 2),
            ("universe a\nrelation R closure: warp\nend\n", 2),
            ("universe a\ncover K\n block K1 a\n", 3),
            ("universe a\nfuzzy F\n level 1/2 a\nend\n", 3),
            ("universe a\nfuzzy F\n level 3/2 : a\nend\n", 4),
            ("universe a\nsequence s a\nsequence s a\n", 3),
        ];
        for (text, line) in cases {
            match parse_context(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
