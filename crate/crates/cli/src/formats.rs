//! Line-based text formats for Muller conditions, games and morphisms.
//! Lines starting with `#` are comments.

use std::fmt::Write;

use acdkit::acceptance::Acceptance;
use acdkit::morphisms::Morphism;
use acdkit::{AcceptanceCondition, Edge, Game, MarkSet, Player, TransitionSystem};

use crate::error::{IoError, IoResult};
use crate::kind::{kind_text, parse_kind};
use crate::lexer::{tokenize, Cursor, Tok};

/// A Muller condition: named colours and the accepting sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub names: Vec<String>,
    pub family: Vec<MarkSet>,
}

impl Condition {
    pub fn alphabet(&self) -> MarkSet {
        MarkSet::full(self.names.len())
    }
}

fn words_on_line(c: &mut Cursor, line: usize) -> Vec<String> {
    let mut v = Vec::new();
    while c.peek_line() == Some(line) {
        let t = c.next().unwrap();
        let s = match t {
            Tok::Ident(s) | Tok::Str(s) => s,
            Tok::Int(n) => n.to_string(),
            _ => {
                c.pos_back();
                break;
            }
        };
        v.push(s);
    }
    v
}

/// Parse a condition file:
///
/// ```text
/// alphabet: a b c
/// accept: a b
/// accept: a c
/// accept: b
/// ```
pub fn parse_condition(text: &str) -> IoResult<Condition> {
    let mut c = Cursor::new(tokenize(text)?, text.lines().count().max(1));
    let mut names: Option<Vec<String>> = None;
    let mut family = Vec::new();
    while !c.at_end() {
        let line = c.peek_line().unwrap();
        match c.next() {
            Some(Tok::Header(h)) if h == "alphabet" => {
                if names.is_some() {
                    return Err(IoError::at(line, 1, "alphabet given twice"));
                }
                let ws = words_on_line(&mut c, line);
                if ws.is_empty() {
                    return Err(IoError::at(line, 1, "empty alphabet"));
                }
                let mut sorted = ws.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != ws.len() {
                    return Err(IoError::at(line, 1, "repeated colour in alphabet"));
                }
                names = Some(ws);
            }
            Some(Tok::Header(h)) if h == "accept" => {
                let alpha = names.as_ref().ok_or_else(|| IoError::at(line, 1, "accept before alphabet"))?;
                let mut set = MarkSet::new();
                for w in words_on_line(&mut c, line) {
                    let i = alpha
                        .iter()
                        .position(|x| *x == w)
                        .ok_or_else(|| IoError::at(line, 1, format!("unknown colour '{w}'")))?;
                    set.insert(i);
                }
                if set.is_empty() {
                    return Err(IoError::at(line, 1, "accepting sets must be non-empty"));
                }
                family.push(set);
            }
            _ => {
                c.pos_back();
                return Err(c.error("expected 'alphabet:' or 'accept:'"));
            }
        }
    }
    let names = names.ok_or_else(|| IoError::at(1, 1, "missing alphabet"))?;
    family.sort();
    family.dedup();
    Ok(Condition { names, family })
}

pub fn emit_condition(cond: &Condition) -> String {
    let mut s = format!("alphabet: {}\n", cond.names.join(" "));
    for set in &cond.family {
        let ws: Vec<&str> = set.iter().map(|m| cond.names[m].as_str()).collect();
        writeln!(s, "accept: {}", ws.join(" ")).unwrap();
    }
    s
}

/// Parse a game file:
///
/// ```text
/// marks: 3
/// acceptance: parity 0 1 2
/// initial: 0
/// 0 eve
/// 1 adam
/// 0 1 {0}
/// 1 0 {1 2}
/// ```
///
/// Vertex lines are `id owner`, edge lines `src tgt {marks}`. Vertices
/// must be listed as `0, 1, ..` in order. `acceptance:` uses the
/// structured syntax (`parity`, `muller`, `rabin`, `formula ..`, ..); a
/// bare `parity` colours mark `m` with `m`.
pub fn parse_game(text: &str) -> IoResult<Game> {
    let mut c = Cursor::new(tokenize(text)?, text.lines().count().max(1));
    let mut marks = None;
    let mut kind = None;
    let mut initial = Vec::new();
    let mut owner = Vec::new();
    let mut edges = Vec::new();
    while !c.at_end() {
        let line = c.peek_line().unwrap();
        match c.next() {
            Some(Tok::Header(h)) if h == "marks" => marks = Some(c.int()?),
            Some(Tok::Header(h)) if h == "acceptance" => kind = Some(parse_kind(&mut c, line)?),
            Some(Tok::Header(h)) if h == "initial" => {
                while c.peek_line() == Some(line) {
                    initial.push(c.int()?);
                }
            }
            Some(Tok::Int(a)) => match c.peek() {
                Some(Tok::Ident(w)) if c.peek_line() == Some(line) => {
                    let p = match w.as_str() {
                        "eve" => Player::Eve,
                        "adam" => Player::Adam,
                        _ => return Err(c.error("owner must be 'eve' or 'adam'")),
                    };
                    if a != owner.len() {
                        return Err(IoError::at(line, 1, format!("expected vertex {}", owner.len())));
                    }
                    c.next();
                    owner.push(p);
                }
                Some(Tok::Int(_)) if c.peek_line() == Some(line) => {
                    let b = c.int()?;
                    let m = c.mark_set()?;
                    edges.push((a, b, m, line));
                }
                _ => return Err(c.error("expected an owner or a target vertex")),
            },
            _ => {
                c.pos_back();
                return Err(c.error("expected a header, vertex line or edge line"));
            }
        }
    }
    let k = marks.ok_or_else(|| IoError::at(1, 1, "missing 'marks:'"))?;
    let kind = match kind.ok_or_else(|| IoError::at(1, 1, "missing 'acceptance:'"))? {
        Acceptance::Parity(cols) if cols.is_empty() => Acceptance::Parity((0..k as u32).collect()),
        other => other,
    };
    let n = owner.len();
    for &(a, b, _, line) in &edges {
        if a >= n || b >= n {
            return Err(IoError::at(line, 1, "edge endpoint is not a declared vertex"));
        }
    }
    if initial.is_empty() && n > 0 {
        initial.push(0);
    }
    let cond = AcceptanceCondition::new(k, kind)?;
    let edges = edges.into_iter().map(|(a, b, m, _)| Edge::new(a, b, m)).collect();
    let ts = TransitionSystem::new(n, edges, initial, cond)?;
    Ok(Game::new(ts, owner)?)
}

pub fn emit_game(g: &Game) -> String {
    let ts = &g.ts;
    let mut s = String::new();
    writeln!(s, "marks: {}", ts.acceptance().num_marks()).unwrap();
    writeln!(s, "acceptance: {}", kind_text(ts.acceptance().kind())).unwrap();
    let init: Vec<String> = ts.initial().iter().map(|v| v.to_string()).collect();
    writeln!(s, "initial: {}", init.join(" ")).unwrap();
    for v in 0..g.num_vertices() {
        let o = match g.owner(v) {
            Player::Eve => "eve",
            Player::Adam => "adam",
        };
        writeln!(s, "{v} {o}").unwrap();
    }
    for e in ts.edges() {
        let ms: Vec<String> = e.marks.iter().map(|m| m.to_string()).collect();
        writeln!(s, "{} {} {{{}}}", e.src, e.tgt, ms.join(" ")).unwrap();
    }
    s
}

/// Parse a morphism file:
///
/// ```text
/// vertices: 0 0 1
/// edges: 0 1 0 1 2 3
/// ```
pub fn parse_morphism(text: &str) -> IoResult<Morphism> {
    let mut c = Cursor::new(tokenize(text)?, text.lines().count().max(1));
    let mut vmap = None;
    let mut emap = None;
    while !c.at_end() {
        let line = c.peek_line().unwrap();
        let target = match c.next() {
            Some(Tok::Header(h)) if h == "vertices" => &mut vmap,
            Some(Tok::Header(h)) if h == "edges" => &mut emap,
            _ => {
                c.pos_back();
                return Err(c.error("expected 'vertices:' or 'edges:'"));
            }
        };
        let mut v = Vec::new();
        while c.peek_line() == Some(line) {
            v.push(c.int()?);
        }
        *target = Some(v);
    }
    match (vmap, emap) {
        (Some(v), Some(e)) => Ok(Morphism::new(v, e)),
        _ => Err(IoError::at(1, 1, "both 'vertices:' and 'edges:' are required")),
    }
}

pub fn emit_morphism(phi: &Morphism) -> String {
    let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    format!("vertices: {}\nedges: {}\n", j(&phi.vmap), j(&phi.emap))
}
