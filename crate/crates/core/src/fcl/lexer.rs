use std::iter::Peekable;
use std::str::Chars;

use super::FclError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    VarInput,
    EndVar,
    Fuzzify,
    EndFuzzify,
    Term,
    Ling,
}

impl Keyword {
    fn lookup(word: &str) -> Option<Keyword> {
        Some(match word {
            "VAR_INPUT" => Keyword::VarInput,
            "END_VAR" => Keyword::EndVar,
            "FUZZIFY" => Keyword::Fuzzify,
            "END_FUZZIFY" => Keyword::EndFuzzify,
            "TERM" => Keyword::Term,
            "LING" => Keyword::Ling,
            _ => return None,
        })
    }

    pub fn text(self) -> &'static str {
        match self {
            Keyword::VarInput => "VAR_INPUT",
            Keyword::EndVar => "END_VAR",
            Keyword::Fuzzify => "FUZZIFY",
            Keyword::EndFuzzify => "END_FUZZIFY",
            Keyword::Term => "TERM",
            Keyword::Ling => "LING",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Keyword(Keyword),
    Ident(String),
    Number(f64),
    Colon,
    Assign,
    Semicolon,
    LParen,
    RParen,
    Comma,
    Bar,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Keyword(k) => format!("keyword `{}`", k.text()),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Colon => "`:`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::Semicolon => "`;`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek_second(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') if self.peek_second() == Some('/') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn take_digits(&mut self, out: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
            n += 1;
        }
        n
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, FclError> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let mut digits = self.take_digits(&mut text);
        if self.peek() == Some('.') {
            text.push('.');
            self.bump();
            digits += self.take_digits(&mut text);
        }
        if digits == 0 {
            return Err(FclError::syntax(pos, format!("malformed number `{text}`")));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let mut probe = self.chars.clone();
            probe.next();
            let mut next = probe.next();
            if matches!(next, Some('+' | '-')) {
                next = probe.next();
            }
            if next.is_some_and(|c| c.is_ascii_digit()) {
                text.push(e);
                self.bump();
                if let Some(s @ ('+' | '-')) = self.peek() {
                    text.push(s);
                    self.bump();
                }
                self.take_digits(&mut text);
            }
        }
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Tok::Number(v)),
            _ => Err(FclError::syntax(
                pos,
                format!("number `{text}` is out of range"),
            )),
        }
    }

    pub fn next_token(&mut self) -> Result<Token, FclError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(Token { tok: Tok::Eof, pos });
        };
        let tok = match c {
            ':' => {
                self.bump();
                if self.peek() == Some('=') {
                    self.bump();
                    Tok::Assign
                } else {
                    Tok::Colon
                }
            }
            ';' => {
                self.bump();
                Tok::Semicolon
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '|' => {
                self.bump();
                Tok::Bar
            }
            c if c.is_ascii_digit() || c == '.' || c == '+' || c == '-' => self.number(pos)?,
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(c) = self
                    .peek()
                    .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    word.push(c);
                    self.bump();
                }
                match Keyword::lookup(&word) {
                    Some(k) => Tok::Keyword(k),
                    None => Tok::Ident(word),
                }
            }
            other => {
                return Err(FclError::syntax(
                    pos,
                    format!("unexpected character `{}`", other.escape_debug()),
                ));
            }
        };
        Ok(Token { tok, pos })
    }
}
