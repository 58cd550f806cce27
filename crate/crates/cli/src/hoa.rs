//! Reading and writing automata in the HOA v1 format (transition-based
//! acceptance, explicit labels).
//!
//! Letters are the valuations of the atomic propositions, read as binary
//! numbers with proposition 0 as the least significant bit. Two headers
//! of our own keep the model intact across a round trip: `acdkit-letters`
//! gives the number of letters and their names, `acdkit-kind` the
//! structured shape of the acceptance condition.

use std::fmt::Write;

use acdkit::acceptance::Acceptance;
use acdkit::{AcceptanceCondition, Automaton, Formula, MarkSet};

use crate::error::{IoError, IoResult};
use crate::kind::{kind_text, parse_kind, same_semantics};
use crate::lexer::{tokenize, Cursor, Tok};

const MAX_AP: usize = 16;

/// Boolean label over atomic propositions.
#[derive(Debug, Clone)]
enum Label {
    True,
    False,
    Ap(usize),
    Not(Box<Label>),
    And(Vec<Label>),
    Or(Vec<Label>),
}

impl Label {
    fn eval(&self, val: usize) -> bool {
        match self {
            Label::True => true,
            Label::False => false,
            Label::Ap(i) => val >> i & 1 == 1,
            Label::Not(l) => !l.eval(val),
            Label::And(ls) => ls.iter().all(|l| l.eval(val)),
            Label::Or(ls) => ls.iter().any(|l| l.eval(val)),
        }
    }

    fn max_ap(&self) -> Option<usize> {
        match self {
            Label::Ap(i) => Some(*i),
            Label::Not(l) => l.max_ap(),
            Label::And(ls) | Label::Or(ls) => ls.iter().filter_map(Label::max_ap).max(),
            _ => None,
        }
    }
}

fn label_or(c: &mut Cursor) -> IoResult<Label> {
    let mut v = vec![label_and(c)?];
    while c.eat_punct('|') {
        v.push(label_and(c)?);
    }
    Ok(if v.len() == 1 { v.pop().unwrap() } else { Label::Or(v) })
}

fn label_and(c: &mut Cursor) -> IoResult<Label> {
    let mut v = vec![label_atom(c)?];
    while c.eat_punct('&') {
        v.push(label_atom(c)?);
    }
    Ok(if v.len() == 1 { v.pop().unwrap() } else { Label::And(v) })
}

fn label_atom(c: &mut Cursor) -> IoResult<Label> {
    if c.eat_punct('!') {
        return Ok(Label::Not(Box::new(label_atom(c)?)));
    }
    if c.eat_punct('(') {
        let l = label_or(c)?;
        c.expect_punct(')')?;
        return Ok(l);
    }
    match c.peek() {
        Some(Tok::Int(_)) => Ok(Label::Ap(c.int()?)),
        Some(Tok::Ident(s)) if s == "t" => {
            c.next();
            Ok(Label::True)
        }
        Some(Tok::Ident(s)) if s == "f" => {
            c.next();
            Ok(Label::False)
        }
        Some(Tok::Ident(s)) if s.starts_with('@') => Err(IoError::Unsupported("label aliases".into())),
        _ => Err(c.error("expected a label")),
    }
}

/// Structured reading of a standard `acc-name`, if it is one we know.
fn named_acceptance(name: &[Tok], num_marks: usize) -> Option<Acceptance> {
    let words: Vec<String> = name
        .iter()
        .map(|t| match t {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            _ => String::new(),
        })
        .collect();
    let w: Vec<&str> = words.iter().map(String::as_str).collect();
    let arg = |i: usize| w.get(i).and_then(|s| s.parse::<usize>().ok());
    let singles = |n: usize, f: &dyn Fn(usize) -> usize| (0..n).map(|i| MarkSet::singleton(f(i))).collect::<Vec<_>>();
    Some(match w.as_slice() {
        ["parity", kind, order, _] => {
            let k = arg(3)?;
            let cols: Vec<u32> = match (*kind, *order) {
                ("min", "even") => (0..k).map(|m| m as u32).collect(),
                ("min", "odd") => (0..k).map(|m| m as u32 + 1).collect(),
                ("max", "even") => {
                    let top = (k.saturating_sub(1) + 1) / 2 * 2;
                    (0..k).map(|m| (top - m) as u32).collect()
                }
                ("max", "odd") => {
                    let top = k.saturating_sub(1) / 2 * 2 + 1;
                    (0..k).map(|m| (top - m) as u32).collect()
                }
                _ => return None,
            };
            Acceptance::Parity(cols)
        }
        ["Rabin", _] => Acceptance::Rabin(
            (0..arg(1)?)
                .map(|i| (MarkSet::singleton(2 * i + 1), MarkSet::singleton(2 * i)))
                .collect(),
        ),
        ["Streett", _] => Acceptance::Streett(
            (0..arg(1)?)
                .map(|i| (MarkSet::singleton(2 * i), MarkSet::singleton(2 * i + 1)))
                .collect(),
        ),
        ["Buchi"] => Acceptance::Buchi(MarkSet::singleton(0)),
        ["co-Buchi"] => Acceptance::CoBuchi(MarkSet::singleton(0)),
        ["generalized-Buchi", _] => Acceptance::GenBuchi(singles(arg(1)?, &|i| i)),
        ["generalized-co-Buchi", _] => Acceptance::GenCoBuchi(singles(arg(1)?, &|i| i)),
        _ => return None,
    })
    .filter(|_| num_marks > 0 || matches!(w.first(), Some(&"parity")))
}

/// Parse a single HOA v1 automaton.
pub fn parse_hoa(text: &str) -> IoResult<Automaton> {
    let end_line = text.lines().count().max(1);
    let mut c = Cursor::new(tokenize(text)?, end_line);
    match (c.next(), c.next()) {
        (Some(Tok::Header(h)), Some(Tok::Ident(v))) if h == "HOA" && v == "v1" => {}
        _ => return Err(crate::error::IoError::at(1, 1, "expected 'HOA: v1'")),
    }
    let mut states = None;
    let mut start = Vec::new();
    let mut num_ap = 0usize;
    let mut letters: Option<(usize, Vec<String>)> = None;
    let mut acc: Option<(usize, Formula)> = None;
    let mut acc_name: Option<Vec<Tok>> = None;
    let mut kind: Option<(Acceptance, usize)> = None;
    loop {
        let line = c.peek_line().unwrap_or(end_line);
        match c.next() {
            Some(Tok::Marker(m)) if m == "--BODY--" => break,
            Some(Tok::Header(h)) => match h.as_str() {
                "States" => states = Some(c.int()?),
                "Start" => {
                    start.push(c.int()?);
                    if matches!(c.peek(), Some(Tok::Punct('&'))) {
                        return Err(IoError::Unsupported("conjunctive initial states".into()));
                    }
                }
                "AP" => {
                    num_ap = c.int()?;
                    if num_ap > MAX_AP {
                        return Err(IoError::Unsupported(format!("more than {MAX_AP} atomic propositions")));
                    }
                    for _ in 0..num_ap {
                        match c.next() {
                            Some(Tok::Str(_)) => {}
                            _ => return Err(c.error("expected a proposition name")),
                        }
                    }
                }
                "Acceptance" => {
                    let m = c.int()?;
                    acc = Some((m, c.formula()?));
                }
                "acc-name" => {
                    let mut v = Vec::new();
                    while c.peek_line() == Some(line) && matches!(c.peek(), Some(Tok::Ident(_) | Tok::Int(_))) {
                        v.push(c.next().unwrap());
                    }
                    acc_name = Some(v);
                }
                "acdkit-letters" => {
                    let n = c.int()?;
                    let mut names = Vec::new();
                    while let Some(Tok::Str(_)) = c.peek() {
                        if let Some(Tok::Str(s)) = c.next() {
                            names.push(s);
                        }
                    }
                    letters = Some((n, names));
                }
                "acdkit-kind" => kind = Some((parse_kind(&mut c, line)?, line)),
                _ => {
                    while !matches!(c.peek(), None | Some(Tok::Header(_) | Tok::Marker(_))) {
                        c.next();
                    }
                }
            },
            _ => {
                c.pos_back();
                return Err(c.error("expected a header or --BODY--"));
            }
        }
    }
    let n = states.ok_or_else(|| c.error("missing States header"))?;
    let (num_marks, formula) = acc.ok_or_else(|| c.error("missing Acceptance header"))?;
    let (num_letters, names) = letters.unwrap_or((1usize << num_ap, Vec::new()));
    if num_letters > 1 << num_ap {
        return Err(c.error(format!("{num_letters} letters need more than {num_ap} propositions")));
    }

    let mut tr = Vec::new();
    let mut current: Option<usize> = None;
    loop {
        match c.peek() {
            Some(Tok::Marker(m)) if m == "--END--" => {
                c.next();
                break;
            }
            Some(Tok::Header(h)) if h == "State" => {
                c.next();
                if matches!(c.peek(), Some(Tok::Punct('['))) {
                    return Err(IoError::Unsupported("state labels".into()));
                }
                let q = c.int()?;
                if q >= n {
                    return Err(c.error(format!("state {q} out of range")));
                }
                if let Some(Tok::Str(_)) = c.peek() {
                    c.next();
                }
                if matches!(c.peek(), Some(Tok::Punct('{'))) {
                    return Err(IoError::Unsupported("state-based acceptance".into()));
                }
                current = Some(q);
            }
            Some(Tok::Punct('[')) => {
                let q = current.ok_or_else(|| c.error("edge before any State"))?;
                c.next();
                let label = label_or(&mut c)?;
                c.expect_punct(']')?;
                if label.max_ap().is_some_and(|i| i >= num_ap) {
                    return Err(c.error("label uses an undeclared proposition"));
                }
                let t = c.int()?;
                if matches!(c.peek(), Some(Tok::Punct('&'))) {
                    return Err(IoError::Unsupported("universal branching".into()));
                }
                if t >= n {
                    return Err(c.error(format!("state {t} out of range")));
                }
                let marks = if matches!(c.peek(), Some(Tok::Punct('{'))) { c.mark_set()? } else { MarkSet::new() };
                if let Some(m) = marks.last() {
                    if m >= num_marks {
                        return Err(c.error(format!("mark {m} outside the declared {num_marks} sets")));
                    }
                }
                for l in 0..num_letters {
                    if label.eval(l) {
                        tr.push((q, l, t, marks.clone()));
                    }
                }
            }
            Some(Tok::Int(_)) => return Err(IoError::Unsupported("implicit labels".into())),
            None => return Err(c.error("missing --END--")),
            _ => return Err(c.error("expected State, an edge or --END--")),
        }
    }
    if !c.at_end() {
        return Err(IoError::Unsupported("multiple automata in one stream".into()));
    }

    let generic = AcceptanceCondition::emerson_lei(num_marks, formula)?;
    let cond = if let Some((k, line)) = kind {
        let structured = AcceptanceCondition::new(num_marks, k)?;
        if !same_semantics(&structured, &generic) {
            return Err(IoError::at(line, 1, "acdkit-kind disagrees with the Acceptance formula"));
        }
        structured
    } else {
        acc_name
            .and_then(|name| named_acceptance(&name, num_marks))
            .and_then(|k| AcceptanceCondition::new(num_marks, k).ok())
            .filter(|s| same_semantics(s, &generic))
            .unwrap_or(generic)
    };
    if start.is_empty() {
        return Err(IoError::InvariantViolation(acdkit::Error::NoInitial));
    }
    let a = Automaton::from_transitions(n, num_letters, tr, start, cond)?;
    Ok(if names.is_empty() { a } else { a.with_letter_names(names) })
}

fn canonical_parity_formula(k: usize) -> Formula {
    let mut f = Formula::False;
    for i in (0..k).rev() {
        let atom = if i % 2 == 0 { Formula::Inf(i) } else { Formula::Fin(i) };
        f = if i + 1 == k {
            atom
        } else if i % 2 == 0 {
            Formula::or(vec![atom, f])
        } else {
            Formula::and(vec![atom, f])
        };
    }
    f
}

fn letter_label(l: usize, num_ap: usize) -> String {
    if num_ap == 0 {
        return "t".into();
    }
    (0..num_ap)
        .map(|i| if l >> i & 1 == 1 { i.to_string() } else { format!("!{i}") })
        .collect::<Vec<_>>()
        .join("&")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Emit an automaton as HOA v1. Identity-coloured parity conditions get
/// `acc-name: parity min even k`.
pub fn emit_hoa(a: &Automaton) -> String {
    let ts = &a.ts;
    let acc = ts.acceptance();
    let k = acc.num_marks();
    let num_letters = a.num_letters();
    let num_ap = (usize::BITS - num_letters.saturating_sub(1).leading_zeros()) as usize;
    let mut s = String::new();
    writeln!(s, "HOA: v1").unwrap();
    writeln!(s, "tool: \"acdkit\"").unwrap();
    writeln!(s, "States: {}", ts.num_vertices()).unwrap();
    for q in ts.initial() {
        writeln!(s, "Start: {q}").unwrap();
    }
    let aps: Vec<String> = (0..num_ap).map(|i| quote(&format!("p{i}"))).collect();
    writeln!(s, "AP: {num_ap}{}{}", if aps.is_empty() { "" } else { " " }, aps.join(" ")).unwrap();
    let names: Vec<String> = a.letter_names().map_or(Vec::new(), |n| n.iter().map(|x| quote(x)).collect());
    writeln!(s, "acdkit-letters: {num_letters}{}{}", if names.is_empty() { "" } else { " " }, names.join(" ")).unwrap();
    let identity_parity = matches!(acc.kind(), Acceptance::Parity(c) if c.iter().enumerate().all(|(m, &x)| x as usize == m));
    let formula = if identity_parity {
        writeln!(s, "acc-name: parity min even {k}").unwrap();
        canonical_parity_formula(k)
    } else {
        acc.to_emerson_lei()
    };
    writeln!(s, "Acceptance: {k} {formula}").unwrap();
    writeln!(s, "acdkit-kind: {}", kind_text(acc.kind())).unwrap();
    let mut props = vec!["trans-labels", "explicit-labels", "trans-acc"];
    if a.is_deterministic() {
        props.push("deterministic");
    }
    if a.is_complete() {
        props.push("complete");
    }
    writeln!(s, "properties: {}", props.join(" ")).unwrap();
    writeln!(s, "--BODY--").unwrap();
    for q in 0..ts.num_vertices() {
        writeln!(s, "State: {q}").unwrap();
        for &e in ts.out_edges(q) {
            let ed = ts.edge(e);
            write!(s, "[{}] {}", letter_label(a.letter(e), num_ap), ed.tgt).unwrap();
            if !ed.marks.is_empty() {
                let ms: Vec<String> = ed.marks.iter().map(|m| m.to_string()).collect();
                write!(s, " {{{}}}", ms.join(" ")).unwrap();
            }
            writeln!(s).unwrap();
        }
    }
    writeln!(s, "--END--").unwrap();
    s
}
