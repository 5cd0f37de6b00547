//! Concrete syntax for sentences.
//!
//! ```text
//! sentence := or
//! or       := and ( '|' and )*
//! and      := unary ( '&' unary )*
//! unary    := '!' unary | QUANT var unary | primary
//! primary  := '(' or ')' | 'E' '(' var ',' var ')' | var '=' var
//! QUANT    := 'exists' | 'forall' | 'exists>=' NAT | 'exists=' NAT
//!           | 'exists[' NAT 'mod' NAT ']'
//! ```
//!
//! `E`, `exists`, `forall` and `mod` are reserved words.

use crate::error::{Error, Result};
use crate::logic::ast::{Formula, Sentence};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LParen,
    RParen,
    Amp,
    Pipe,
    Bang,
    Equals,
    Comma,
    Ident(String),
    Exists,
    Forall,
    ExistsGeq(u64),
    ExistsEq(u64),
    ExistsMod(u64, u64),
    EdgeKw,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn read_nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn read_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn tokens(mut self) -> Result<Vec<(usize, Token)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                return Ok(out);
            }
            let at = self.pos;
            let c = self.src[self.pos];
            let token = match c {
                b'(' => {
                    self.pos += 1;
                    Token::LParen
                }
                b')' => {
                    self.pos += 1;
                    Token::RParen
                }
                b'&' => {
                    self.pos += 1;
                    Token::Amp
                }
                b'|' => {
                    self.pos += 1;
                    Token::Pipe
                }
                b'!' => {
                    self.pos += 1;
                    Token::Bang
                }
                b'=' => {
                    self.pos += 1;
                    Token::Equals
                }
                b',' => {
                    self.pos += 1;
                    Token::Comma
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let word = self.read_ident();
                    match word.as_str() {
                        "forall" => Token::Forall,
                        "mod" => return Err(self.err("unexpected keyword: mod")),
                        "E" => Token::EdgeKw,
                        "exists" => {
                            self.skip_ws();
                            match self.src.get(self.pos) {
                                Some(b'>') => {
                                    self.pos += 1;
                                    if self.src.get(self.pos) != Some(&b'=') {
                                        return Err(self.err("expected >= after exists"));
                                    }
                                    self.pos += 1;
                                    Token::ExistsGeq(self.read_nat()?)
                                }
                                Some(b'=') => {
                                    self.pos += 1;
                                    Token::ExistsEq(self.read_nat()?)
                                }
                                Some(b'[') => {
                                    self.pos += 1;
                                    let j = self.read_nat()?;
                                    self.skip_ws();
                                    let kw = self.read_ident();
                                    if kw != "mod" {
                                        return Err(self.err("expected 'mod' in exists[..]"));
                                    }
                                    let l = self.read_nat()?;
                                    self.skip_ws();
                                    if self.src.get(self.pos) != Some(&b']') {
                                        return Err(self.err("expected ] closing exists[..]"));
                                    }
                                    self.pos += 1;
                                    Token::ExistsMod(j, l)
                                }
                                _ => Token::Exists,
                            }
                        }
                        _ => Token::Ident(word),
                    }
                }
                other => return Err(self.err(format!("unexpected character: {}", other as char))),
            };
            out.push((at, token));
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(usize::MAX)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.at().min(1 << 20), msg: msg.into() }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse {
                pos: self.at().min(1 << 20),
                msg: format!("expected {t:?}, got {got:?}"),
            }),
        }
    }

    fn var(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Ident(name)) => Ok(name),
            got => Err(Error::Parse {
                pos: self.at().min(1 << 20),
                msg: format!("expected a variable, got {got:?}"),
            }),
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut left = self.and()?;
        while self.peek() == Some(&Token::Pipe) {
            self.next();
            let right = self.and()?;
            left = Formula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::Amp) {
            self.next();
            let right = self.unary()?;
            left = Formula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Token::Bang) => {
                self.next();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Token::Exists) => {
                self.next();
                let v = self.var()?;
                Ok(Formula::Exists(v, Box::new(self.unary()?)))
            }
            Some(Token::Forall) => {
                self.next();
                let v = self.var()?;
                Ok(Formula::Forall(v, Box::new(self.unary()?)))
            }
            Some(&Token::ExistsGeq(m)) => {
                self.next();
                let v = self.var()?;
                Ok(Formula::CountGeq(m, v, Box::new(self.unary()?)))
            }
            Some(&Token::ExistsEq(m)) => {
                self.next();
                let v = self.var()?;
                Ok(Formula::CountEq(m, v, Box::new(self.unary()?)))
            }
            Some(&Token::ExistsMod(j, l)) => {
                self.next();
                let var = self.var()?;
                Ok(Formula::CountMod { j, l, var, body: Box::new(self.unary()?) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Token::LParen) => {
                let inner = self.or()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::EdgeKw) => {
                self.expect(Token::LParen)?;
                let a = self.var()?;
                self.expect(Token::Comma)?;
                let b = self.var()?;
                self.expect(Token::RParen)?;
                Ok(Formula::Edge(a, b))
            }
            Some(Token::Ident(a)) => {
                self.expect(Token::Equals)?;
                let b = self.var()?;
                Ok(Formula::Eq(a, b))
            }
            got => Err(Error::Parse {
                pos: self.at().min(1 << 20),
                msg: format!("expected a formula, got {got:?}"),
            }),
        }
    }
}

/// Parse a sentence; free variables and malformed moduli are rejected.
pub fn parse_sentence(text: &str) -> Result<Sentence> {
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.or()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input after sentence"));
    }
    Sentence::new(formula)
}
