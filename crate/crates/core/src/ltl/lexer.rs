//! Tokens shared by the formula and requirement grammars.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    Plus,
    Minus,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Eq => "`==`".into(),
            Tok::Ne => "`!=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
        }
    }

    pub fn is_ident(&self, word: &str) -> bool {
        matches!(self, Tok::Ident(s) if s == word)
    }

    /// Case-insensitive keyword match.
    pub fn is_word(&self, word: &str) -> bool {
        matches!(self, Tok::Ident(s) if s.eq_ignore_ascii_case(word))
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: unknown token `{token}`")]
    UnknownToken { pos: Pos, token: String },
    #[error("{pos}: unbalanced parentheses")]
    UnbalancedParens { pos: Pos },
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::UnknownToken { pos, .. }
            | SyntaxError::UnbalancedParens { pos }
            | SyntaxError::Syntax { pos, .. } => *pos,
        }
    }

    pub(crate) fn at(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError::Syntax { pos, message: message.into() }
    }
}

/// Splits `text` into tokens. Also returns the position just past the input.
pub fn tokenize(text: &str) -> Result<(Vec<Token>, Pos), SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut column = 1;

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            i = scan_number(&chars, i);
            Tok::Number(chars[start..i].iter().collect())
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, width) = match (c, next) {
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('!', Some('=')) => (Tok::Ne, 2),
                ('!', _) => (Tok::Bang, 1),
                ('&', _) => (Tok::Amp, 1),
                ('|', _) => (Tok::Pipe, 1),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('-', _) => (Tok::Minus, 1),
                ('<', Some('=')) => (Tok::Le, 2),
                ('<', _) => (Tok::Lt, 1),
                ('>', Some('=')) => (Tok::Ge, 2),
                ('>', _) => (Tok::Gt, 1),
                ('=', Some('=')) => (Tok::Eq, 2),
                ('=', _) => (Tok::Eq, 1),
                ('+', _) => (Tok::Plus, 1),
                _ => return Err(SyntaxError::UnknownToken { pos, token: c.to_string() }),
            };
            i += width;
            tok
        };
        column += i - start;
        tokens.push(Token { tok, pos });
    }
    check_balance(&tokens)?;
    Ok((tokens, Pos { line, column }))
}

fn scan_number(chars: &[char], mut i: usize) -> usize {
    let digits = |chars: &[char], mut i: usize| {
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    i = digits(chars, i);
    for sep in ['.', '/'] {
        if chars.get(i) == Some(&sep) && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
            i = digits(chars, i + 1);
        }
    }
    i
}

fn check_balance(tokens: &[Token]) -> Result<(), SyntaxError> {
    let mut open = Vec::new();
    for t in tokens {
        match t.tok {
            Tok::LParen => open.push(t.pos),
            Tok::RParen if open.pop().is_none() => return Err(SyntaxError::UnbalancedParens { pos: t.pos }),
            _ => {}
        }
    }
    match open.pop() {
        Some(pos) => Err(SyntaxError::UnbalancedParens { pos }),
        None => Ok(()),
    }
}
