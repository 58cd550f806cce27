//! Structured acceptance syntax shared by HOA extensions and the game
//! format: `muller {..} ..`, `parity c0 c1 ..`, `rabin ({G} {R}) ..`,
//! `streett ({G} {R}) ..`, `buchi {..}`, `cobuchi {..}`,
//! `gen-buchi {..} ..`, `gen-cobuchi {..} ..`, `formula <Emerson-Lei>`.

use acdkit::acceptance::Acceptance;
use acdkit::{AcceptanceCondition, MarkSet};

use crate::error::{IoError, IoResult};
use crate::lexer::{Cursor, Tok};

pub(crate) fn parse_kind(c: &mut Cursor, line: usize) -> IoResult<Acceptance> {
    let word = c.ident()?;
    let on_line = |c: &Cursor| c.peek_line() == Some(line);
    let sets = |c: &mut Cursor| -> IoResult<Vec<MarkSet>> {
        let mut v = Vec::new();
        while on_line(c) && matches!(c.peek(), Some(Tok::Punct('{'))) {
            v.push(c.mark_set()?);
        }
        Ok(v)
    };
    let pairs = |c: &mut Cursor| -> IoResult<Vec<(MarkSet, MarkSet)>> {
        let mut v = Vec::new();
        while on_line(c) && c.eat_punct('(') {
            let g = c.mark_set()?;
            let r = c.mark_set()?;
            c.expect_punct(')')?;
            v.push((g, r));
        }
        Ok(v)
    };
    Ok(match word.as_str() {
        "muller" => Acceptance::Muller(sets(c)?),
        "parity" => {
            let mut cols = Vec::new();
            while on_line(c) && matches!(c.peek(), Some(Tok::Int(_))) {
                cols.push(c.int()? as u32);
            }
            Acceptance::Parity(cols)
        }
        "rabin" => Acceptance::Rabin(pairs(c)?),
        "streett" => Acceptance::Streett(pairs(c)?),
        "buchi" => Acceptance::Buchi(c.mark_set()?),
        "cobuchi" => Acceptance::CoBuchi(c.mark_set()?),
        "gen-buchi" => Acceptance::GenBuchi(sets(c)?),
        "gen-cobuchi" => Acceptance::GenCoBuchi(sets(c)?),
        "formula" => Acceptance::EmersonLei(c.formula()?),
        other => return Err(IoError::Unsupported(format!("acceptance kind '{other}'"))),
    })
}

fn set_text(s: &MarkSet) -> String {
    let inner: Vec<String> = s.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", inner.join(" "))
}

fn sets_text(v: &[MarkSet]) -> String {
    v.iter().map(set_text).collect::<Vec<_>>().join(" ")
}

fn pairs_text(v: &[(MarkSet, MarkSet)]) -> String {
    v.iter()
        .map(|(g, r)| format!("({} {})", set_text(g), set_text(r)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Text of an acceptance shape in the structured syntax.
pub fn kind_text(k: &Acceptance) -> String {
    let body = match k {
        Acceptance::Muller(f) => format!("muller {}", sets_text(f)),
        Acceptance::Parity(c) => {
            let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("parity {}", cs.join(" "))
        }
        Acceptance::Rabin(p) => format!("rabin {}", pairs_text(p)),
        Acceptance::Streett(p) => format!("streett {}", pairs_text(p)),
        Acceptance::Buchi(b) => format!("buchi {}", set_text(b)),
        Acceptance::CoBuchi(b) => format!("cobuchi {}", set_text(b)),
        Acceptance::GenBuchi(b) => format!("gen-buchi {}", sets_text(b)),
        Acceptance::GenCoBuchi(b) => format!("gen-cobuchi {}", sets_text(b)),
        Acceptance::EmersonLei(f) => format!("formula {f}"),
    };
    body.trim_end().to_string()
}

/// Whether two conditions accept the same non-empty mark sets. The empty
/// set is skipped: no run of a valid system sees it infinitely often.
/// Conditions over more than 16 marks are not compared.
pub fn same_semantics(a: &AcceptanceCondition, b: &AcceptanceCondition) -> bool {
    let k = a.num_marks();
    if k != b.num_marks() {
        return false;
    }
    if k > 16 {
        return true;
    }
    (1u32..1 << k).all(|bits| {
        let s: MarkSet = (0..k).filter(|i| bits >> i & 1 == 1).collect();
        a.accepts(&s) == b.accepts(&s)
    })
}
