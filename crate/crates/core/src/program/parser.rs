//! Recursive-descent parser for program text.
//!
//! ```text
//! program   := rule*
//! rule      := [label ':'] literal [('<-' | ':-') item (',' item)*] '.' ['[' truth ']']
//! item      := 'not' literal | truth | literal
//! literal   := '-'* atom
//! atom      := ident ['(' term (',' term)* ')']
//! term      := Var | ident | integer | truth
//! truth     := ('ifn' | 'tfn' | 'trfn') '(' number (',' number)* ')'
//! number    := ['-'] decimal ['/' decimal]
//! ```
//!
//! `%` starts a comment running to the end of the line.

use crate::program::ast::{Atom, BodyItem, Literal, Program, Rule, Term};
use crate::program::ProgramError;
use crate::truth::FuzzyTruth;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Var(String),
    Num(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Arrow,
    Minus,
    Colon,
    Slash,
    Bang,
    Amp,
    Pipe,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Num(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`<-`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ProgramError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok| {
            out.push(Token {
                tok,
                line: start_line,
                col: start_col,
            })
        };
        match ch {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            '[' => push(Tok::LBracket),
            ']' => push(Tok::RBracket),
            ',' => push(Tok::Comma),
            '.' => push(Tok::Dot),
            '/' => push(Tok::Slash),
            '!' => push(Tok::Bang),
            '&' => push(Tok::Amp),
            '|' => push(Tok::Pipe),
            '-' => push(Tok::Minus),
            '<' if chars.get(i + 1) == Some(&'-') => {
                push(Tok::Arrow);
                i += 2;
                col += 2;
                continue;
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                push(Tok::Arrow);
                i += 2;
                col += 2;
                continue;
            }
            ':' => push(Tok::Colon),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '-' || chars[k] == '+') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                push(Tok::Num(chars[i..j].iter().collect()));
                col += j - i;
                i = j;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                if c.is_uppercase() || c == '_' {
                    push(Tok::Var(word));
                } else {
                    push(Tok::Ident(word));
                }
                col += j - i;
                i = j;
                continue;
            }
            other => {
                return Err(ProgramError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

pub(crate) const TRUTH_KEYWORDS: [&str; 3] = ["ifn", "tfn", "trfn"];

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, ProgramError> {
        Ok(Parser {
            tokens: lex(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ProgramError {
        let t = &self.tokens[self.pos];
        ProgramError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ProgramError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub(crate) fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ProgramError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn at_truth_literal(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if TRUTH_KEYWORDS.contains(&s.as_str()))
            && *self.peek_at(1) == Tok::LParen
    }

    fn program(&mut self) -> Result<Program, ProgramError> {
        let mut rules = Vec::new();
        while !self.at_eof() {
            rules.push(self.rule()?);
        }
        Ok(Program::new(rules))
    }

    fn rule(&mut self) -> Result<Rule, ProgramError> {
        let label = match (self.peek().clone(), self.peek_at(1)) {
            (Tok::Ident(name), Tok::Colon) => {
                self.bump();
                self.bump();
                Some(name)
            }
            _ => None,
        };
        if self.at_truth_literal() || *self.peek() == Tok::Ident("not".into()) {
            return Err(self.error("a rule head must be a literal"));
        }
        let head = self.literal()?;
        let (mut body, mut naf) = (Vec::new(), Vec::new());
        if *self.peek() == Tok::Arrow {
            self.bump();
            loop {
                match self.peek() {
                    Tok::Ident(s) if s == "not" => {
                        self.bump();
                        naf.push(self.literal()?);
                    }
                    Tok::LBracket => {
                        self.bump();
                        body.push(BodyItem::Const(self.truth()?));
                        self.expect(Tok::RBracket, "`]`")?;
                    }
                    _ if self.at_truth_literal() => body.push(BodyItem::Const(self.truth()?)),
                    _ => body.push(BodyItem::Lit(self.literal()?)),
                }
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`,` or `.`")?;
        let weight = if *self.peek() == Tok::LBracket {
            self.bump();
            let w = self.truth()?;
            self.expect(Tok::RBracket, "`]`")?;
            w
        } else {
            FuzzyTruth::TRUE
        };
        Ok(Rule {
            label,
            head,
            body,
            naf,
            weight,
        })
    }

    fn literal(&mut self) -> Result<Literal, ProgramError> {
        let mut negated = false;
        while *self.peek() == Tok::Minus {
            self.bump();
            negated = !negated;
        }
        let atom = self.atom()?;
        Ok(Literal { atom, negated })
    }

    fn atom(&mut self) -> Result<Atom, ProgramError> {
        let predicate = match self.peek().clone() {
            Tok::Ident(name) if name == "not" || TRUTH_KEYWORDS.contains(&name.as_str()) => {
                return Err(self.error(format!("`{name}` is reserved")))
            }
            Tok::Ident(name) => {
                self.bump();
                name
            }
            _ => return Err(self.unexpected("a predicate name")),
        };
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                args.push(self.term()?);
                match self.bump() {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("`,` or `)`"));
                    }
                }
            }
        }
        Ok(Atom { predicate, args })
    }

    fn term(&mut self) -> Result<Term, ProgramError> {
        if self.at_truth_literal() {
            return Ok(Term::Truth(self.truth()?));
        }
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Ident(c) => {
                if *self.peek_at(1) == Tok::LParen {
                    return Err(self.error(format!("function symbols are not allowed: `{c}(...)`")));
                }
                self.bump();
                Ok(Term::Const(c))
            }
            Tok::Num(n) if n.chars().all(|c| c.is_ascii_digit()) => {
                self.bump();
                Ok(Term::Const(n))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// A signed decimal or fraction.
    pub(crate) fn number(&mut self) -> Result<f64, ProgramError> {
        let sign = if *self.peek() == Tok::Minus {
            self.bump();
            -1.0
        } else {
            1.0
        };
        let numer = self.decimal()?;
        if *self.peek() == Tok::Slash {
            self.bump();
            let denom = self.decimal()?;
            if denom == 0.0 {
                return Err(self.error("division by zero in a fraction"));
            }
            return Ok(sign * numer / denom);
        }
        Ok(sign * numer)
    }

    fn decimal(&mut self) -> Result<f64, ProgramError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let v = n.parse::<f64>().map_err(|_| self.error(format!("bad number `{n}`")))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    /// `ifn(a,d)`, `tfn(a,b,c)` or `trfn(a,b,c,d)`.
    pub(crate) fn truth(&mut self) -> Result<FuzzyTruth, ProgramError> {
        let (line, col) = (self.tokens[self.pos].line, self.tokens[self.pos].col);
        let kind = match self.bump() {
            Tok::Ident(k) if TRUTH_KEYWORDS.contains(&k.as_str()) => k,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("`ifn`, `tfn` or `trfn`"));
            }
        };
        self.expect(Tok::LParen, "`(`")?;
        let mut params = vec![self.number()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            params.push(self.number()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        let arity = match kind.as_str() {
            "ifn" => 2,
            "tfn" => 3,
            _ => 4,
        };
        if params.len() != arity {
            return Err(ProgramError::Syntax {
                line,
                col,
                message: format!("`{kind}` takes {arity} parameters, got {}", params.len()),
            });
        }
        let value = match *params.as_slice() {
            [a, d] => FuzzyTruth::interval(a, d),
            [a, b, c] => FuzzyTruth::triangular(a, b, c),
            [a, b, c, d] => FuzzyTruth::new(a, b, c, d),
            _ => unreachable!(),
        };
        value.map_err(|reason| ProgramError::Domain { line, col, reason })
    }
}

/// Parses program text.
pub fn parse(src: &str) -> Result<Program, ProgramError> {
    Parser::new(src)?.program()
}

/// Parses a single truth literal such as `tfn(0,1/3,1)`.
pub fn parse_truth(src: &str) -> Result<FuzzyTruth, ProgramError> {
    let mut p = Parser::new(src)?;
    let x = p.truth()?;
    if !p.at_eof() {
        return Err(p.unexpected("end of input"));
    }
    Ok(x)
}
