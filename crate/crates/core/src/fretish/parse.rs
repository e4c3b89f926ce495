//! Parser for requirement sentences:
//!
//! `[In <Mode> [mode]] [if|upon|whenever <cond>] <Component> shall
//!  [with probability <op> <p>] <timing> <response>`, members joined by `+`.
//!
//! Keywords are case-insensitive. The component is the identifier right
//! before `shall`, so the condition is everything between its keyword and
//! the component. An `until`/`before` payload ends where two operands meet
//! without an operator between them.

use thiserror::Error;

use super::ast::*;
use crate::ltl::lexer::{tokenize, Pos, SyntaxError, Tok, Token};
use crate::ltl::{is_identifier, ExprParser, Formula, KEYWORDS};
use crate::numeric::parse_decimal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FretishError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: missing {field}")]
    MissingField { field: Field, pos: Pos },
    #[error("{pos}: unknown timing {found}")]
    UnknownTiming { found: String, pos: Pos },
    #[error("{pos}: temporal operator in {field}")]
    TemporalOperator { field: Field, pos: Pos },
    #[error("{pos}: malformed probability: {message}")]
    MalformedProbability { message: String, pos: Pos },
    #[error("{pos}: {message}")]
    Unexpected { message: String, pos: Pos },
}

impl FretishError {
    pub fn pos(&self) -> Pos {
        match self {
            FretishError::Syntax(e) => e.pos(),
            FretishError::MissingField { pos, .. }
            | FretishError::UnknownTiming { pos, .. }
            | FretishError::TemporalOperator { pos, .. }
            | FretishError::MalformedProbability { pos, .. }
            | FretishError::Unexpected { pos, .. } => *pos,
        }
    }
}

/// Parses one requirement group.
pub fn parse_fretish(text: &str) -> Result<RequirementGroup, FretishError> {
    let (tokens, end) = tokenize(text)?;
    if tokens.is_empty() {
        return Err(FretishError::Unexpected { message: "empty requirement".into(), pos: end });
    }
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.tok == Tok::Plus {
            parts.push(Member::new(&tokens[start..i], t.pos).parse()?);
            start = i + 1;
        }
    }
    parts.push(Member::new(&tokens[start..], end).parse()?);
    Ok(RequirementGroup { parts })
}

struct Member<'t> {
    tokens: &'t [Token],
    end: Pos,
    idx: usize,
}

fn name_token(t: &Token) -> Option<&str> {
    match &t.tok {
        Tok::Ident(s) if is_identifier(s) && !KEYWORDS.contains(&s.as_str()) => Some(s),
        _ => None,
    }
}

impl<'t> Member<'t> {
    fn new(tokens: &'t [Token], end: Pos) -> Self {
        Member { tokens, end, idx: 0 }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.idx)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn at_word(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.tok.is_word(word))
    }

    fn expect_word(&mut self, word: &str) -> bool {
        if self.at_word(word) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Requirement, FretishError> {
        if self.tokens.is_empty() {
            return Err(FretishError::MissingField { field: Field::Component, pos: self.end });
        }
        let scope = self.scope()?;
        let shall = self.tokens[self.idx..]
            .iter()
            .position(|t| t.tok.is_word("shall"))
            .map(|off| self.idx + off)
            .ok_or(FretishError::MissingField { field: Field::Shall, pos: self.end })?;
        if shall == self.idx {
            return Err(FretishError::MissingField { field: Field::Component, pos: self.tokens[shall].pos });
        }
        let component_tok = &self.tokens[shall - 1];

        let condition = match self.condition_keyword() {
            Some(keyword) => {
                let kw_pos = self.tokens[self.idx].pos;
                self.idx += 1;
                if shall <= self.idx {
                    return Err(FretishError::MissingField { field: Field::Component, pos: self.tokens[shall].pos });
                }
                let slice = &self.tokens[self.idx..shall - 1];
                if slice.is_empty() {
                    return Err(FretishError::MissingField { field: Field::Condition, pos: kw_pos });
                }
                let expr = propositional(slice, component_tok.pos, Field::Condition)?;
                Some(Condition { keyword, expr })
            }
            None => {
                if shall - 1 != self.idx {
                    let t = &self.tokens[self.idx];
                    return Err(FretishError::Unexpected {
                        message: format!("expected a condition keyword or the component, found {}", t.tok.describe()),
                        pos: t.pos,
                    });
                }
                None
            }
        };
        let component = name_token(component_tok).ok_or_else(|| FretishError::Unexpected {
            message: format!("expected a component name, found {}", component_tok.tok.describe()),
            pos: component_tok.pos,
        })?;
        if component.eq_ignore_ascii_case("shall") {
            return Err(FretishError::MissingField { field: Field::Component, pos: component_tok.pos });
        }
        self.idx = shall + 1;

        let probability = self.probability()?;
        let timing = self.timing()?;
        let rest = &self.tokens[self.idx..];
        if rest.is_empty() {
            return Err(FretishError::MissingField { field: Field::Response, pos: self.end });
        }
        let response = propositional(rest, self.end, Field::Response)?;
        Ok(Requirement { scope, condition, component: component.to_owned(), probability, timing, response })
    }

    fn scope(&mut self) -> Result<Option<String>, FretishError> {
        if !self.at_word("in") {
            return Ok(None);
        }
        self.idx += 1;
        let pos = self.pos();
        let mode = match self.peek().and_then(name_token) {
            Some(m) if !m.eq_ignore_ascii_case("shall") => m.to_owned(),
            _ => return Err(FretishError::MissingField { field: Field::Scope, pos }),
        };
        self.idx += 1;
        let followed_by_shall = self.tokens.get(self.idx + 1).is_some_and(|t| t.tok.is_word("shall"));
        if self.at_word("mode") && !followed_by_shall {
            self.idx += 1;
        }
        Ok(Some(mode))
    }

    fn condition_keyword(&self) -> Option<ConditionKeyword> {
        let t = self.peek()?;
        [ConditionKeyword::If, ConditionKeyword::Upon, ConditionKeyword::Whenever]
            .into_iter()
            .find(|k| t.tok.is_word(k.as_str()))
    }

    fn probability(&mut self) -> Result<Option<Probability>, FretishError> {
        if !self.at_word("with") {
            return Ok(None);
        }
        let start = self.pos();
        self.idx += 1;
        let malformed = |message: &str, pos| FretishError::MalformedProbability { message: message.into(), pos };
        if !self.expect_word("probability") {
            return Err(malformed("expected `probability` after `with`", self.pos()));
        }
        let op = match self.peek().map(|t| &t.tok) {
            Some(Tok::Ge) => ProbOp::Ge,
            Some(Tok::Gt) => ProbOp::Gt,
            Some(Tok::Le) => ProbOp::Le,
            Some(Tok::Lt) => ProbOp::Lt,
            Some(Tok::Eq) => ProbOp::Eq,
            _ => return Err(malformed("expected a comparison operator", self.pos())),
        };
        self.idx += 1;
        let value = match self.peek().map(|t| &t.tok) {
            Some(Tok::Number(text)) => parse_decimal(text).ok_or_else(|| malformed("bad number", start))?,
            _ => return Err(malformed("expected a number", self.pos())),
        };
        self.idx += 1;
        Ok(Some(Probability { op, value }))
    }

    fn timing(&mut self) -> Result<Timing, FretishError> {
        let pos = self.pos();
        let Some(t) = self.peek() else {
            return Err(FretishError::MissingField { field: Field::Timing, pos });
        };
        let unknown = |t: &Token| FretishError::UnknownTiming { found: t.tok.describe(), pos: t.pos };
        let simple = [
            ("immediately", Timing::Immediately),
            ("eventually", Timing::Eventually),
            ("always", Timing::Always),
            ("never", Timing::Never),
        ];
        for (word, timing) in simple {
            if t.tok.is_word(word) {
                self.idx += 1;
                return Ok(timing);
            }
        }
        if t.tok.is_word("at") {
            self.idx += 1;
            for word in ["the", "next", "timepoint"] {
                if !self.expect_word(word) {
                    return Err(match self.peek() {
                        Some(t) => unknown(t),
                        None => FretishError::MissingField { field: Field::Timing, pos: self.end },
                    });
                }
            }
            return Ok(Timing::NextTimepoint);
        }
        if t.tok.is_word("until") || t.tok.is_word("before") {
            let is_until = t.tok.is_word("until");
            self.idx += 1;
            let rest = &self.tokens[self.idx..];
            if rest.is_empty() {
                return Err(FretishError::MissingField { field: Field::Timing, pos: self.end });
            }
            let mut parser = ExprParser::new(rest, self.end);
            let payload = parser.implication()?;
            if !payload.is_propositional() {
                return Err(FretishError::TemporalOperator { field: Field::Timing, pos: rest[0].pos });
            }
            self.idx += parser.consumed();
            return Ok(if is_until { Timing::Until(payload) } else { Timing::Before(payload) });
        }
        Err(unknown(t))
    }
}

fn propositional(tokens: &[Token], end: Pos, field: Field) -> Result<Formula, FretishError> {
    let mut parser = ExprParser::new(tokens, end);
    let f = parser.implication()?;
    parser.expect_end()?;
    if !f.is_propositional() {
        return Err(FretishError::TemporalOperator { field, pos: tokens[0].pos });
    }
    Ok(f)
}
