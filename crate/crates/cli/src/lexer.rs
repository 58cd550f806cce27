//! Tokeniser shared by the HOA reader and the bespoke line formats.

use crate::error::{IoError, IoResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// A word followed by `:`, such as `States:`.
    Header(String),
    Ident(String),
    Int(usize),
    Str(String),
    /// `--BODY--`, `--END--` and the like.
    Marker(String),
    Punct(char),
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str) -> IoResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                bump(&mut i, &mut line, &mut col);
            }
            if i >= chars.len() {
                return Err(IoError::at(l0, c0, "unterminated comment"));
            }
            bump(&mut i, &mut line, &mut col);
            bump(&mut i, &mut line, &mut col);
        } else if c == '#' && c0 == 1 {
            while i < chars.len() && chars[i] != '\n' {
                bump(&mut i, &mut line, &mut col);
            }
        } else if c == '"' {
            bump(&mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(IoError::at(l0, c0, "unterminated string")),
                    Some('"') => break,
                    Some('\\') if i + 1 < chars.len() => {
                        bump(&mut i, &mut line, &mut col);
                        s.push(chars[i]);
                    }
                    Some(&ch) => s.push(ch),
                }
                bump(&mut i, &mut line, &mut col);
            }
            bump(&mut i, &mut line, &mut col);
            out.push(Token { tok: Tok::Str(s), line: l0, col: c0 });
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            let mut s = String::new();
            while i < chars.len() && !chars[i].is_whitespace() {
                s.push(chars[i]);
                bump(&mut i, &mut line, &mut col);
            }
            out.push(Token { tok: Tok::Marker(s), line: l0, col: c0 });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                bump(&mut i, &mut line, &mut col);
            }
            let n = s.parse().map_err(|_| IoError::at(l0, c0, "integer out of range"))?;
            out.push(Token { tok: Tok::Int(n), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' || c == '@' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '-' | '.' | '@')) {
                s.push(chars[i]);
                bump(&mut i, &mut line, &mut col);
            }
            if chars.get(i) == Some(&':') {
                bump(&mut i, &mut line, &mut col);
                out.push(Token { tok: Tok::Header(s), line: l0, col: c0 });
            } else {
                out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            }
        } else if "[](){}!&|".contains(c) {
            bump(&mut i, &mut line, &mut col);
            out.push(Token { tok: Tok::Punct(c), line: l0, col: c0 });
        } else {
            return Err(IoError::at(l0, c0, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Cursor over a token list.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    /// Position reported at end of input.
    end: (usize, usize),
}

impl Cursor {
    pub fn new(toks: Vec<Token>, end_line: usize) -> Self {
        Cursor { toks, pos: 0, end: (end_line, 1) }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_line(&self) -> Option<usize> {
        self.toks.get(self.pos).map(|t| t.line)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn pos_back(&mut self) {
        self.pos = self.pos.saturating_sub(1);
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> IoError {
        let (l, c) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col));
        IoError::at(l, c, msg)
    }

    pub fn expect_punct(&mut self, c: char) -> IoResult<()> {
        match self.peek() {
            Some(Tok::Punct(p)) if *p == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected '{c}'"))),
        }
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Punct(p)) if *p == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn int(&mut self) -> IoResult<usize> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn ident(&mut self) -> IoResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a word")),
        }
    }

    /// `{m1 m2 ...}`
    pub fn mark_set(&mut self) -> IoResult<acdkit::MarkSet> {
        self.expect_punct('{')?;
        let mut s = acdkit::MarkSet::new();
        while !self.eat_punct('}') {
            s.insert(self.int()?);
        }
        Ok(s)
    }

    /// Acceptance formula over `Inf(m)`, `Fin(m)`, `t`, `f`, `&`, `|` and
    /// parentheses; `&` binds tighter than `|`.
    pub fn formula(&mut self) -> IoResult<acdkit::Formula> {
        let mut alts = vec![self.conj()?];
        while self.eat_punct('|') {
            alts.push(self.conj()?);
        }
        Ok(acdkit::Formula::or(alts))
    }

    fn conj(&mut self) -> IoResult<acdkit::Formula> {
        let mut parts = vec![self.atom()?];
        while self.eat_punct('&') {
            parts.push(self.atom()?);
        }
        Ok(acdkit::Formula::and(parts))
    }

    fn atom(&mut self) -> IoResult<acdkit::Formula> {
        use acdkit::Formula;
        if self.eat_punct('(') {
            let f = self.formula()?;
            self.expect_punct(')')?;
            return Ok(f);
        }
        let word = self.ident()?;
        match word.as_str() {
            "t" => Ok(Formula::True),
            "f" => Ok(Formula::False),
            "Inf" | "Fin" => {
                self.expect_punct('(')?;
                if matches!(self.peek(), Some(Tok::Punct('!'))) {
                    return Err(IoError::Unsupported("negated acceptance sets".into()));
                }
                let m = self.int()?;
                self.expect_punct(')')?;
                Ok(if word == "Inf" { Formula::Inf(m) } else { Formula::Fin(m) })
            }
            _ => {
                self.pos -= 1;
                Err(self.error(format!("unexpected '{word}' in acceptance formula")))
            }
        }
    }
}
