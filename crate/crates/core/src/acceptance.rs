//! Acceptance conditions evaluated on the set of marks seen infinitely often.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::MarkSet;

/// Boolean combination of `Inf(m)` / `Fin(m)` atoms (Emerson-Lei condition).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Inf(usize),
    Fin(usize),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn eval(&self, c: &MarkSet) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Inf(m) => c.contains(*m),
            Formula::Fin(m) => !c.contains(*m),
            Formula::And(fs) => fs.iter().all(|f| f.eval(c)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(c)),
        }
    }

    /// Negation pushed down to the atoms.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Inf(m) => Formula::Fin(*m),
            Formula::Fin(m) => Formula::Inf(*m),
            Formula::And(fs) => Formula::Or(fs.iter().map(Formula::negate).collect()),
            Formula::Or(fs) => Formula::And(fs.iter().map(Formula::negate).collect()),
        }
    }

    /// Rename every mark `m` to `m + k`.
    pub fn shift(&self, k: usize) -> Formula {
        match self {
            Formula::Inf(m) => Formula::Inf(m + k),
            Formula::Fin(m) => Formula::Fin(m + k),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.shift(k)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.shift(k)).collect()),
            f => f.clone(),
        }
    }

    /// Largest mark mentioned, if any.
    pub fn max_mark(&self) -> Option<usize> {
        match self {
            Formula::True | Formula::False => None,
            Formula::Inf(m) | Formula::Fin(m) => Some(*m),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(Formula::max_mark).max(),
        }
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::True,
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::And(fs),
        }
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::False,
            1 => fs.into_iter().next().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    /// `Inf(m)` for some `m` in the set.
    pub fn inf_any(s: &MarkSet) -> Formula {
        Formula::or(s.iter().map(Formula::Inf).collect())
    }

    /// `Fin(m)` for every `m` in the set.
    pub fn fin_all(s: &MarkSet) -> Formula {
        Formula::and(s.iter().map(Formula::Fin).collect())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "t"),
            Formula::False => write!(f, "f"),
            Formula::Inf(m) => write!(f, "Inf({m})"),
            Formula::Fin(m) => write!(f, "Fin({m})"),
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                write!(f, "(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{op}")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The shape of an acceptance condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    /// Accepting iff the inf-set is one of the listed sets.
    Muller(Vec<MarkSet>),
    /// Colour of each mark; accepting iff the least colour seen is even.
    Parity(Vec<u32>),
    /// Pairs `(G, R)`: accepting iff some pair sees `G` and avoids `R`.
    Rabin(Vec<(MarkSet, MarkSet)>),
    /// Pairs `(G, R)`: accepting iff every pair that sees `G` also sees `R`.
    Streett(Vec<(MarkSet, MarkSet)>),
    Buchi(MarkSet),
    CoBuchi(MarkSet),
    /// Accepting iff every set is seen.
    GenBuchi(Vec<MarkSet>),
    /// Accepting iff some set is avoided.
    GenCoBuchi(Vec<MarkSet>),
    EmersonLei(Formula),
}

/// An acceptance condition over the mark alphabet `{0, .., num_marks-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptanceCondition {
    num_marks: usize,
    kind: Acceptance,
    names: Option<Vec<String>>,
}

impl AcceptanceCondition {
    /// Validates that every referenced mark lies in the alphabet.
    pub fn new(num_marks: usize, kind: Acceptance) -> Result<Self> {
        let check = |s: &MarkSet| match s.last() {
            Some(m) if m >= num_marks => Err(Error::UnknownMark(m)),
            _ => Ok(()),
        };
        match &kind {
            Acceptance::Muller(f) => {
                for s in f {
                    check(s)?;
                    if s.is_empty() {
                        return Err(Error::Invalid("empty set in Muller family".into()));
                    }
                }
            }
            Acceptance::Parity(cols) => {
                if cols.len() != num_marks {
                    return Err(Error::Invalid("parity map must colour every mark".into()));
                }
            }
            Acceptance::Rabin(ps) | Acceptance::Streett(ps) => {
                for (g, r) in ps {
                    check(g)?;
                    check(r)?;
                }
            }
            Acceptance::Buchi(b) | Acceptance::CoBuchi(b) => check(b)?,
            Acceptance::GenBuchi(bs) | Acceptance::GenCoBuchi(bs) => {
                for b in bs {
                    check(b)?;
                }
            }
            Acceptance::EmersonLei(f) => {
                if let Some(m) = f.max_mark() {
                    if m >= num_marks {
                        return Err(Error::UnknownMark(m));
                    }
                }
            }
        }
        Ok(AcceptanceCondition {
            num_marks,
            kind,
            names: None,
        })
    }

    pub fn muller(num_marks: usize, family: Vec<MarkSet>) -> Result<Self> {
        let mut family = family;
        family.sort();
        family.dedup();
        Self::new(num_marks, Acceptance::Muller(family))
    }

    /// Parity condition whose mark `c` has colour `c`.
    pub fn parity_identity(num_colours: usize) -> Self {
        Self::new(num_colours, Acceptance::Parity((0..num_colours as u32).collect())).unwrap()
    }

    pub fn emerson_lei(num_marks: usize, f: Formula) -> Result<Self> {
        Self::new(num_marks, Acceptance::EmersonLei(f))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of mark `m` (its index if unnamed).
    pub fn mark_name(&self, m: usize) -> String {
        self.names
            .as_ref()
            .and_then(|n| n.get(m).cloned())
            .unwrap_or_else(|| m.to_string())
    }

    pub fn num_marks(&self) -> usize {
        self.num_marks
    }

    pub fn kind(&self) -> &Acceptance {
        &self.kind
    }

    pub fn is_parity(&self) -> bool {
        matches!(self.kind, Acceptance::Parity(_))
    }

    /// Colour of mark `m` under a parity condition.
    pub fn parity_colour(&self, m: usize) -> Option<u32> {
        match &self.kind {
            Acceptance::Parity(c) => c.get(m).copied(),
            _ => None,
        }
    }

    /// Acceptance of any run whose set of marks seen infinitely often is `c`.
    pub fn accepts(&self, c: &MarkSet) -> bool {
        match &self.kind {
            Acceptance::Muller(f) => f.binary_search(c).is_ok(),
            Acceptance::Parity(cols) => c
                .iter()
                .map(|m| cols[m])
                .min()
                .is_some_and(|x| x % 2 == 0),
            Acceptance::Rabin(ps) => ps.iter().any(|(g, r)| c.intersects(g) && !c.intersects(r)),
            Acceptance::Streett(ps) => ps.iter().all(|(g, r)| !c.intersects(g) || c.intersects(r)),
            Acceptance::Buchi(b) => c.intersects(b),
            Acceptance::CoBuchi(b) => !c.intersects(b),
            Acceptance::GenBuchi(bs) => bs.iter().all(|b| c.intersects(b)),
            Acceptance::GenCoBuchi(bs) => bs.iter().any(|b| !c.intersects(b)),
            Acceptance::EmersonLei(f) => f.eval(c),
        }
    }

    /// Like [`accepts`](Self::accepts) but rejects sets escaping the alphabet.
    pub fn accepts_colour_set(&self, c: &MarkSet) -> Result<bool> {
        if let Some(m) = c.last() {
            if m >= self.num_marks {
                return Err(Error::UnknownMark(m));
            }
        }
        Ok(self.accepts(c))
    }

    /// The same condition written as an Emerson-Lei formula.
    pub fn to_emerson_lei(&self) -> Formula {
        let all = MarkSet::full(self.num_marks);
        match &self.kind {
            Acceptance::Muller(f) => Formula::or(
                f.iter()
                    .map(|s| {
                        let mut conj: Vec<Formula> = s.iter().map(Formula::Inf).collect();
                        conj.extend(all.difference(s).iter().map(Formula::Fin));
                        Formula::and(conj)
                    })
                    .collect(),
            ),
            Acceptance::Parity(cols) => {
                let mut disj = Vec::new();
                for (m, &c) in cols.iter().enumerate() {
                    if c % 2 == 0 {
                        let mut conj = vec![Formula::Inf(m)];
                        conj.extend(
                            cols.iter()
                                .enumerate()
                                .filter(|&(_, &c2)| c2 < c)
                                .map(|(m2, _)| Formula::Fin(m2)),
                        );
                        disj.push(Formula::and(conj));
                    }
                }
                Formula::or(disj)
            }
            Acceptance::Rabin(ps) => Formula::or(
                ps.iter()
                    .map(|(g, r)| Formula::and(vec![Formula::inf_any(g), Formula::fin_all(r)]))
                    .collect(),
            ),
            Acceptance::Streett(ps) => Formula::and(
                ps.iter()
                    .map(|(g, r)| Formula::or(vec![Formula::fin_all(g), Formula::inf_any(r)]))
                    .collect(),
            ),
            Acceptance::Buchi(b) => Formula::inf_any(b),
            Acceptance::CoBuchi(b) => Formula::fin_all(b),
            Acceptance::GenBuchi(bs) => Formula::and(bs.iter().map(Formula::inf_any).collect()),
            Acceptance::GenCoBuchi(bs) => Formula::or(bs.iter().map(Formula::fin_all).collect()),
            Acceptance::EmersonLei(f) => f.clone(),
        }
    }

    /// A condition accepting exactly the mark sets this one rejects.
    pub fn complement(&self) -> AcceptanceCondition {
        let kind = match &self.kind {
            Acceptance::Muller(f) if self.num_marks <= 12 => {
                let n = self.num_marks;
                let fam = (1u32..(1 << n))
                    .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<MarkSet>())
                    .filter(|s| f.binary_search(s).is_err())
                    .collect::<Vec<_>>();
                let mut fam = fam;
                fam.sort();
                Acceptance::Muller(fam)
            }
            Acceptance::Parity(cols) => Acceptance::Parity(cols.iter().map(|c| c + 1).collect()),
            Acceptance::Rabin(ps) => Acceptance::Streett(ps.clone()),
            Acceptance::Streett(ps) => Acceptance::Rabin(ps.clone()),
            Acceptance::Buchi(b) => Acceptance::CoBuchi(b.clone()),
            Acceptance::CoBuchi(b) => Acceptance::Buchi(b.clone()),
            Acceptance::GenBuchi(b) => Acceptance::GenCoBuchi(b.clone()),
            Acceptance::GenCoBuchi(b) => Acceptance::GenBuchi(b.clone()),
            _ => Acceptance::EmersonLei(self.to_emerson_lei().negate()),
        };
        AcceptanceCondition {
            num_marks: self.num_marks,
            kind,
            names: self.names.clone(),
        }
    }
}
