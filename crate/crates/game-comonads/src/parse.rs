//! The line-oriented input format: one vocabulary block, named structure
//! blocks, optional forest blocks over structures, and point declarations.
//!
//! ```text
//! # comments run to end of line
//! vocabulary
//! E 2
//!
//! structure K2
//! elements a b
//! E a b
//! E b a
//!
//! forest F over K2 k 2 tag RE
//! parent b a
//!
//! point K2 a
//! ```
//!
//! `parent b a` declares `a` as the parent of `b`; unmentioned elements are
//! roots. The `k` and `tag` fields are optional: the tag defaults to `RE`
//! and the bound to the declared forest's height (tag `R` takes no bound).
//! Emitting a parsed document and reparsing yields an equal document.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::forest::{ForestStructure, Tag};
use crate::structure::{Structure, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecl {
    pub name: String,
    pub over: String,
    pub forest: ForestStructure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub vocab: Vocabulary,
    pub structures: Vec<(String, Structure)>,
    pub forests: Vec<ForestDecl>,
    pub points: Vec<(String, usize)>,
}

impl InputDocument {
    pub fn structure(&self, name: &str) -> Option<&Structure> {
        self.structures.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn forest(&self, name: &str) -> Option<&ForestDecl> {
        self.forests.iter().find(|f| f.name == name)
    }

    pub fn point_of(&self, structure: &str) -> Option<usize> {
        self.points.iter().find(|(n, _)| n == structure).map(|&(_, p)| p)
    }
}

const RESERVED: &[&str] = &[
    "vocabulary", "structure", "elements", "forest", "parent", "pebble", "point", "over", "k", "tag",
];

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn check_name(line: usize, word: &str) -> Result<String> {
    if RESERVED.contains(&word) {
        return Err(parse_err(line, format!("reserved word used as a name: {word}")));
    }
    Ok(word.to_string())
}

struct ForestBuilder {
    name: String,
    over: String,
    k: Option<usize>,
    tag: Tag,
    parents: Vec<(String, String, usize)>,
    pebbles: Vec<(String, usize, usize)>,
    line: usize,
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    enum Ctx {
        Start,
        Vocab,
        Structure,
        Forest,
    }
    let mut ctx = Ctx::Start;
    let mut vocab_symbols: Vec<(String, usize)> = Vec::new();
    let mut vocab: Option<Vocabulary> = None;
    let mut structures: Vec<(String, Structure)> = Vec::new();
    let mut element_names: Vec<Vec<String>> = Vec::new();
    let mut current_elements_seen = false;
    let mut builders: Vec<ForestBuilder> = Vec::new();
    let mut points: Vec<(String, usize, usize)> = Vec::new();
    let mut point_names: Vec<String> = Vec::new();

    // Closing the vocabulary block materializes it so later blocks can
    // resolve symbol names.
    macro_rules! seal_vocab {
        ($line:expr) => {
            if vocab.is_none() {
                vocab = Some(
                    Vocabulary::new(vocab_symbols.clone())
                        .map_err(|e| parse_err($line, e.to_string()))?,
                );
            }
        };
    }

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "vocabulary" => {
                if vocab.is_some() || !vocab_symbols.is_empty() {
                    return Err(parse_err(line, "duplicate vocabulary block"));
                }
                if tokens.len() != 1 {
                    return Err(parse_err(line, "vocabulary takes no arguments"));
                }
                ctx = Ctx::Vocab;
            }
            "structure" => {
                seal_vocab!(line);
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected: structure NAME"));
                }
                let name = check_name(line, tokens[1])?;
                if structures.iter().any(|(n, _)| *n == name) {
                    return Err(parse_err(line, format!("duplicate structure name {name}")));
                }
                structures.push((name, Structure::new(vocab.clone().unwrap(), 0)));
                element_names.push(Vec::new());
                current_elements_seen = false;
                ctx = Ctx::Structure;
            }
            "elements" => {
                if !matches!(ctx, Ctx::Structure) {
                    return Err(parse_err(line, "elements line outside a structure block"));
                }
                if current_elements_seen {
                    return Err(parse_err(line, "duplicate elements line"));
                }
                current_elements_seen = true;
                let mut names = Vec::new();
                for w in &tokens[1..] {
                    let name = check_name(line, w)?;
                    if names.contains(&name) {
                        return Err(parse_err(line, format!("duplicate element name {name}")));
                    }
                    names.push(name);
                }
                let (_, s) = structures.last_mut().unwrap();
                *s = Structure::with_names(vocab.clone().unwrap(), names.clone());
                *element_names.last_mut().unwrap() = names;
            }
            "forest" => {
                seal_vocab!(line);
                // forest NAME over STRUCT [k K] [tag T]
                if tokens.len() < 4 || tokens[2] != "over" {
                    return Err(parse_err(line, "expected: forest NAME over STRUCT [k K] [tag T]"));
                }
                let name = check_name(line, tokens[1])?;
                if builders.iter().any(|b| b.name == name) {
                    return Err(parse_err(line, format!("duplicate forest name {name}")));
                }
                let over = tokens[3].to_string();
                let mut k = None;
                let mut tag = Tag::Re;
                let mut rest = &tokens[4..];
                while !rest.is_empty() {
                    match rest[0] {
                        "k" if rest.len() >= 2 => {
                            k = Some(rest[1].parse::<usize>().map_err(|_| {
                                parse_err(line, format!("bad bound: {}", rest[1]))
                            })?);
                            rest = &rest[2..];
                        }
                        "tag" if rest.len() >= 2 => {
                            tag = Tag::parse(rest[1])
                                .ok_or_else(|| parse_err(line, format!("bad tag: {}", rest[1])))?;
                            rest = &rest[2..];
                        }
                        other => return Err(parse_err(line, format!("unexpected token {other}"))),
                    }
                }
                if tag == Tag::R && k.is_some() {
                    return Err(parse_err(line, "tag R takes no height bound"));
                }
                builders.push(ForestBuilder {
                    name,
                    over,
                    k,
                    tag,
                    parents: Vec::new(),
                    pebbles: Vec::new(),
                    line,
                });
                ctx = Ctx::Forest;
            }
            "parent" => {
                if !matches!(ctx, Ctx::Forest) {
                    return Err(parse_err(line, "parent line outside a forest block"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected: parent CHILD PARENT"));
                }
                let b = builders.last_mut().unwrap();
                b.parents.push((tokens[1].to_string(), tokens[2].to_string(), line));
            }
            "pebble" => {
                if !matches!(ctx, Ctx::Forest) {
                    return Err(parse_err(line, "pebble line outside a forest block"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected: pebble ELEM VALUE"));
                }
                let value = tokens[2]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad pebble value: {}", tokens[2])))?;
                let b = builders.last_mut().unwrap();
                b.pebbles.push((tokens[1].to_string(), value, line));
            }
            "point" => {
                seal_vocab!(line);
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected: point STRUCT ELEM"));
                }
                // element resolved below once all structures are known
                points.push((tokens[1].to_string(), 0, line));
                point_names.push(tokens[2].to_string());
                ctx = Ctx::Start;
            }
            word => match ctx {
                Ctx::Vocab => {
                    if tokens.len() != 2 {
                        return Err(parse_err(line, "expected: NAME ARITY"));
                    }
                    let name = check_name(line, word)?;
                    let arity = tokens[1]
                        .parse::<usize>()
                        .map_err(|_| parse_err(line, format!("bad arity: {}", tokens[1])))?;
                    if arity == 0 {
                        return Err(parse_err(line, "arity must be positive"));
                    }
                    vocab_symbols.push((name, arity));
                }
                Ctx::Structure => {
                    let v = vocab.as_ref().unwrap();
                    let sym = v
                        .index_of(word)
                        .ok_or_else(|| parse_err(line, format!("unknown symbol {word}")))?;
                    if tokens.len() - 1 != v.arity(sym) {
                        return Err(parse_err(
                            line,
                            format!("symbol {word} takes {} elements", v.arity(sym)),
                        ));
                    }
                    let names = element_names.last().unwrap();
                    let tuple: Result<Vec<usize>> = tokens[1..]
                        .iter()
                        .map(|w| {
                            names.iter().position(|n| n == w).ok_or_else(|| {
                                parse_err(line, format!("unknown element {w}"))
                            })
                        })
                        .collect();
                    structures.last_mut().unwrap().1.insert(sym, tuple?);
                }
                _ => return Err(parse_err(line, format!("unexpected token {word}"))),
            },
        }
    }
    seal_vocab!(text.lines().count());
    let vocab = vocab.unwrap();

    // Resolve forests against their base structures.
    let mut forests = Vec::new();
    for b in builders {
        let Some(base) = structures.iter().find(|(n, _)| *n == b.over).map(|(_, s)| s) else {
            return Err(parse_err(b.line, format!("forest over unknown structure {}", b.over)));
        };
        let names: Vec<String> = base.names().to_vec();
        let resolve = |w: &str, line: usize| {
            names
                .iter()
                .position(|n| n == w)
                .ok_or_else(|| parse_err(line, format!("unknown element {w}")))
        };
        let mut parent: Vec<Option<usize>> = vec![None; base.size()];
        for (child, par, line) in &b.parents {
            let c = resolve(child, *line)?;
            let p = resolve(par, *line)?;
            if parent[c].is_some() {
                return Err(parse_err(*line, format!("element {child} has two parents")));
            }
            if c == p {
                return Err(parse_err(*line, format!("element {child} cannot be its own parent")));
            }
            parent[c] = Some(p);
        }
        let mut forest = ForestStructure::new(base.clone(), parent, None, b.tag);
        if !forest.parent_acyclic() {
            return Err(parse_err(b.line, "parent relation has a cycle"));
        }
        if b.tag != Tag::Rp && !b.pebbles.is_empty() {
            let line = b.pebbles[0].2;
            return Err(parse_err(line, "pebble lines require tag RP"));
        }
        if b.tag == Tag::Rp {
            let mut pebbles = vec![0usize; base.size()];
            let mut seen = BTreeSet::new();
            for (elem, value, line) in &b.pebbles {
                let e = resolve(elem, *line)?;
                if !seen.insert(e) {
                    return Err(parse_err(*line, format!("duplicate pebble for {elem}")));
                }
                pebbles[e] = *value;
            }
            forest = forest.with_pebbles(pebbles);
        }
        // Defaulted bounds: height for RE/RM, largest pebble value for RP.
        forest.bound = match (b.tag, b.k) {
            (Tag::R, _) => None,
            (_, Some(k)) => Some(k),
            (Tag::Rp, None) => {
                Some(forest.pebble.as_ref().unwrap().iter().copied().max().unwrap_or(1).max(1))
            }
            (_, None) => Some(forest.height().max(1)),
        };
        forests.push(ForestDecl { name: b.name, over: b.over, forest });
    }

    // Resolve points.
    let mut resolved_points = Vec::new();
    for (i, (sname, _, line)) in points.iter().enumerate() {
        let Some(s) = structures.iter().find(|(n, _)| n == sname).map(|(_, s)| s) else {
            return Err(parse_err(*line, format!("point on unknown structure {sname}")));
        };
        if resolved_points.iter().any(|(n, _)| n == sname) {
            return Err(parse_err(*line, format!("duplicate point for {sname}")));
        }
        let ename = &point_names[i];
        let Some(e) = s.names().iter().position(|n| n == ename) else {
            return Err(parse_err(*line, format!("unknown element {ename}")));
        };
        resolved_points.push((sname.clone(), e));
    }

    Ok(InputDocument { vocab, structures, forests, points: resolved_points })
}

/// Canonical text for a document; reparses to an equal document.
pub fn emit(doc: &InputDocument) -> String {
    let mut out = String::new();
    out.push_str("vocabulary\n");
    for sym in doc.vocab.symbols() {
        out.push_str(&format!("{} {}\n", sym.name, sym.arity));
    }
    for (name, s) in &doc.structures {
        out.push_str(&format!("\nstructure {name}\nelements"));
        for e in 0..s.size() {
            out.push(' ');
            out.push_str(s.name(e));
        }
        out.push('\n');
        for sym in 0..doc.vocab.len() {
            for t in s.tuples(sym) {
                out.push_str(doc.vocab.name(sym));
                for &e in t {
                    out.push(' ');
                    out.push_str(s.name(e));
                }
                out.push('\n');
            }
        }
    }
    for f in &doc.forests {
        out.push_str(&format!("\nforest {} over {}", f.name, f.over));
        if f.forest.tag != Tag::R {
            if let Some(k) = f.forest.bound {
                out.push_str(&format!(" k {k}"));
            }
        }
        out.push_str(&format!(" tag {}\n", f.forest.tag));
        for e in 0..f.forest.size() {
            if let Some(p) = f.forest.parent[e] {
                out.push_str(&format!("parent {} {}\n", f.forest.base.name(e), f.forest.base.name(p)));
            }
        }
        if let Some(pebbles) = &f.forest.pebble {
            for (e, v) in pebbles.iter().enumerate() {
                out.push_str(&format!("pebble {} {}\n", f.forest.base.name(e), v));
            }
        }
    }
    if !doc.points.is_empty() {
        out.push('\n');
        for (name, e) in &doc.points {
            let s = doc.structure(name).expect("points reference known structures");
            out.push_str(&format!("point {} {}\n", name, s.name(*e)));
        }
    }
    out
}
