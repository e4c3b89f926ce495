//! Recursive-descent parser for the formula syntax.
//!
//! Precedence, tightest first: unary `!` `G` `F` `X`; `U` and `W`
//! (right-associative); `&`; `|`; `->` (right-associative).

use super::formula::{is_identifier, CmpOp, Formula, Operand, Predicate, KEYWORDS};
use super::lexer::{tokenize, Pos, SyntaxError, Tok, Token};
use crate::numeric::parse_decimal;

/// Parses a complete formula.
pub fn parse_ltl(text: &str) -> Result<Formula, SyntaxError> {
    let (tokens, end) = tokenize(text)?;
    if tokens.is_empty() {
        return Err(SyntaxError::at(end, "empty formula"));
    }
    let mut parser = ExprParser::new(&tokens, end);
    let f = parser.implication()?;
    parser.expect_end()?;
    Ok(f)
}

pub(crate) struct ExprParser<'t> {
    tokens: &'t [Token],
    idx: usize,
    end: Pos,
}

impl<'t> ExprParser<'t> {
    pub(crate) fn new(tokens: &'t [Token], end: Pos) -> Self {
        ExprParser { tokens, idx: 0, end }
    }

    pub(crate) fn consumed(&self) -> usize {
        self.idx
    }

    fn peek(&self) -> Option<&'t Tok> {
        self.tokens.get(self.idx).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.idx).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.idx);
        self.idx += 1;
        t
    }

    pub(crate) fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.tokens.get(self.idx) {
            None => Ok(()),
            Some(t) => Err(SyntaxError::at(t.pos, format!("unexpected {}", t.tok.describe()))),
        }
    }

    pub(crate) fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.until()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            lhs = lhs.and(self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        match self.peek() {
            Some(t) if t.is_ident("U") => {
                self.bump();
                Ok(lhs.until(self.until()?))
            }
            Some(t) if t.is_ident("W") => {
                self.bump();
                Ok(lhs.weak_until(self.until()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Some(t) if t.is_ident("G") => {
                self.bump();
                Ok(self.unary()?.globally())
            }
            Some(t) if t.is_ident("F") => {
                self.bump();
                Ok(self.unary()?.eventually())
            }
            Some(t) if t.is_ident("X") => {
                self.bump();
                Ok(self.unary()?.next())
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        let Some(token) = self.bump() else {
            return Err(SyntaxError::at(pos, "expected a formula, found end of input"));
        };
        match &token.tok {
            Tok::LParen => {
                let inner = self.implication()?;
                match self.bump() {
                    Some(Token { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(t) => Err(SyntaxError::at(t.pos, format!("expected `)`, found {}", t.tok.describe()))),
                    None => Err(SyntaxError::UnbalancedParens { pos }),
                }
            }
            Tok::Ident(w) if w == "true" => Ok(Formula::True),
            Tok::Ident(w) if w == "false" => Ok(Formula::False),
            Tok::Ident(w) if KEYWORDS.contains(&w.as_str()) => {
                Err(SyntaxError::at(pos, format!("operator `{w}` is missing its operand")))
            }
            Tok::Ident(name) => {
                if let Some(op) = self.peek().and_then(cmp_op) {
                    self.bump();
                    let rhs = self.operand()?;
                    return Ok(Formula::Atom(Predicate::Comparison { var: name.clone(), op, rhs }));
                }
                Ok(Formula::Atom(Predicate::BoolAtom(name.clone())))
            }
            other => Err(SyntaxError::at(pos, format!("expected a formula, found {}", other.describe()))),
        }
    }

    fn operand(&mut self) -> Result<Operand, SyntaxError> {
        let pos = self.pos();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump().map(|t| &t.tok) {
            Some(Tok::Number(text)) => {
                let literal = if negative { format!("-{text}") } else { text.clone() };
                parse_decimal(&literal)
                    .map(Operand::Const)
                    .ok_or_else(|| SyntaxError::at(pos, format!("malformed number `{literal}`")))
            }
            Some(Tok::Ident(name)) if !negative && is_identifier(name) && !KEYWORDS.contains(&name.as_str()) => {
                Ok(Operand::Var(name.clone()))
            }
            Some(other) => Err(SyntaxError::at(pos, format!("expected a number or identifier, found {}", other.describe()))),
            None => Err(SyntaxError::at(pos, "expected a number or identifier, found end of input")),
        }
    }
}

fn cmp_op(tok: &Tok) -> Option<CmpOp> {
    Some(match tok {
        Tok::Lt => CmpOp::Lt,
        Tok::Le => CmpOp::Le,
        Tok::Gt => CmpOp::Gt,
        Tok::Ge => CmpOp::Ge,
        Tok::Eq => CmpOp::Eq,
        Tok::Ne => CmpOp::Ne,
        _ => return None,
    })
}
