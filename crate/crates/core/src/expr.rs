//! Connective expressions over truth literals, as accepted by `eval`.
//!
//! ```text
//! expr  := or ('agg' or)*
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := ('!' | '-') unary | 'not' unary | '(' expr ')' | '[' truth ']' | truth
//! ```
//!
//! `!` and `-` negate, `not` is negation as failure, `&` and `|` are
//! conjunction and disjunction, and `agg` keeps the more certain operand.
//! All binary operators associate to the left.

use std::fmt;

use thiserror::Error;

use crate::connectives::{conj, disj, kagg_tol, naf, negate, ConnectiveError};
use crate::program::parser::{Parser, Tok};
use crate::program::ProgramError;
use crate::truth::FuzzyTruth;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Value(FuzzyTruth),
    Negate(Box<Expr>),
    Naf(Box<Expr>),
    Conj(Box<Expr>, Box<Expr>),
    Disj(Box<Expr>, Box<Expr>),
    Agg(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ProgramError),
    #[error(transparent)]
    Connective(#[from] ConnectiveError),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Value(x) => write!(f, "{x}"),
            Expr::Negate(x) => write!(f, "!{x}"),
            Expr::Naf(x) => write!(f, "not {x}"),
            Expr::Conj(x, y) => write!(f, "({x} & {y})"),
            Expr::Disj(x, y) => write!(f, "({x} | {y})"),
            Expr::Agg(x, y) => write!(f, "({x} agg {y})"),
        }
    }
}

fn is_keyword(p: &Parser, word: &str) -> bool {
    matches!(p.peek(), Tok::Ident(s) if s == word)
}

fn agg(p: &mut Parser) -> Result<Expr, ProgramError> {
    let mut lhs = or(p)?;
    while is_keyword(p, "agg") {
        p.bump();
        lhs = Expr::Agg(Box::new(lhs), Box::new(or(p)?));
    }
    Ok(lhs)
}

fn or(p: &mut Parser) -> Result<Expr, ProgramError> {
    let mut lhs = and(p)?;
    while *p.peek() == Tok::Pipe {
        p.bump();
        lhs = Expr::Disj(Box::new(lhs), Box::new(and(p)?));
    }
    Ok(lhs)
}

fn and(p: &mut Parser) -> Result<Expr, ProgramError> {
    let mut lhs = unary(p)?;
    while *p.peek() == Tok::Amp {
        p.bump();
        lhs = Expr::Conj(Box::new(lhs), Box::new(unary(p)?));
    }
    Ok(lhs)
}

fn unary(p: &mut Parser) -> Result<Expr, ProgramError> {
    match p.peek() {
        Tok::Bang | Tok::Minus => {
            p.bump();
            Ok(Expr::Negate(Box::new(unary(p)?)))
        }
        Tok::Ident(s) if s == "not" => {
            p.bump();
            Ok(Expr::Naf(Box::new(unary(p)?)))
        }
        Tok::LParen => {
            p.bump();
            let inner = agg(p)?;
            p.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        }
        Tok::LBracket => {
            p.bump();
            let x = p.truth()?;
            p.expect(Tok::RBracket, "`]`")?;
            Ok(Expr::Value(x))
        }
        _ if p.at_truth_literal() => Ok(Expr::Value(p.truth()?)),
        _ => Err(p.unexpected("a truth literal, `!`, `not` or `(`")),
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ProgramError> {
    let mut p = Parser::new(src)?;
    let e = agg(&mut p)?;
    if !p.at_eof() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, tol: f64) -> Result<FuzzyTruth, ConnectiveError> {
        Ok(match self {
            Expr::Value(x) => *x,
            Expr::Negate(x) => negate(&x.eval(tol)?),
            Expr::Naf(x) => naf(&x.eval(tol)?),
            Expr::Conj(x, y) => conj(&x.eval(tol)?, &y.eval(tol)?),
            Expr::Disj(x, y) => disj(&x.eval(tol)?, &y.eval(tol)?),
            Expr::Agg(x, y) => kagg_tol(&x.eval(tol)?, &y.eval(tol)?, tol)?,
        })
    }
}

/// Parses and evaluates `src`.
pub fn eval_str(src: &str, tol: f64) -> Result<FuzzyTruth, ExprError> {
    Ok(parse_expr(src)?.eval(tol)?)
}
