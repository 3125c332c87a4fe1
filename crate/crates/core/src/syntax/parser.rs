use std::collections::HashMap;

use thiserror::Error;

use super::{validate_safety, Atom, Position, Program, Rule, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: &'static str, found: String },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEof(&'static str),
    #[error("predicate {predicate} used with arity {found}, previously with arity {expected}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("unsafe variable(s) {} in rule `{rule}`", variables.join(", "))]
    Unsafe { rule: String, variables: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Constant(String),
    Variable(String),
    Not,
    If,
    LParen,
    RParen,
    Comma,
    Dot,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Constant(s) | Token::Variable(s) => format!("`{s}`"),
            Token::Not => "`not`".into(),
            Token::If => "`:-`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);

    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '(' | ')' | ',' | '.' => {
                bump(&mut chars);
                tokens.push((
                    match c {
                        '(' => Token::LParen,
                        ')' => Token::RParen,
                        ',' => Token::Comma,
                        _ => Token::Dot,
                    },
                    pos,
                ));
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    tokens.push((Token::If, pos));
                } else {
                    return Err(ParseError {
                        position: pos,
                        kind: ParseErrorKind::UnexpectedChar(':'),
                    });
                }
            }
            c if c.is_ascii_digit() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    word.push(d);
                    bump(&mut chars);
                }
                tokens.push((Token::Constant(word), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    word.push(d);
                    bump(&mut chars);
                }
                let token = if word == "not" {
                    Token::Not
                } else if c.is_ascii_lowercase() {
                    Token::Constant(word)
                } else {
                    Token::Variable(word)
                };
                tokens.push((token, pos));
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    cursor: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> Position {
        self.tokens
            .get(self.cursor)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let kind = match self.peek() {
            Some(tok) => ParseErrorKind::UnexpectedToken {
                expected,
                found: tok.describe(),
            },
            None => ParseErrorKind::UnexpectedEof(expected),
        };
        ParseError {
            position: self.position(),
            kind,
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: Token, expected: &'static str) -> Result<(), ParseError> {
        if self.eat(&token) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let term = match self.peek() {
            Some(Token::Constant(s)) => Term::Constant(s.clone()),
            Some(Token::Variable(s)) => Term::Variable(s.clone()),
            _ => return Err(self.error("a term")),
        };
        self.cursor += 1;
        Ok(term)
    }

    fn atom(&mut self) -> Result<(Atom, Position), ParseError> {
        let pos = self.position();
        let predicate = match self.peek() {
            Some(Token::Constant(s)) if !s.starts_with(|c: char| c.is_ascii_digit()) => s.clone(),
            _ => return Err(self.error("an atom")),
        };
        self.cursor += 1;
        let mut terms = Vec::new();
        if self.eat(&Token::LParen) {
            loop {
                terms.push(self.term()?);
                if self.eat(&Token::RParen) {
                    break;
                }
                self.expect(Token::Comma, "`,` or `)`")?;
            }
        }
        Ok((Atom { predicate, terms }, pos))
    }

    fn body(&mut self, rule: &mut Rule, atoms: &mut Vec<(Position, usize)>) -> Result<(), ParseError> {
        if self.peek() == Some(&Token::Dot) {
            return Ok(());
        }
        loop {
            let negated = self.eat(&Token::Not);
            let (atom, pos) = self.atom()?;
            if negated {
                atoms.push((pos, 2));
                rule.negative_body.push(atom);
            } else {
                atoms.push((pos, 1));
                rule.positive_body.push(atom);
            }
            if !self.eat(&Token::Comma) {
                return Ok(());
            }
        }
    }

    fn rule(&mut self) -> Result<(Rule, Vec<(Position, usize)>), ParseError> {
        let start = self.position();
        let mut rule = Rule::new(None, Vec::new(), Vec::new());
        rule.position = start;
        // (position, slot) per atom for arity diagnostics: 0 head, 1 positive, 2 negative
        let mut atoms = Vec::new();
        if self.eat(&Token::If) {
            self.body(&mut rule, &mut atoms)?;
        } else {
            let (head, pos) = self.atom()?;
            atoms.push((pos, 0));
            rule.head = Some(head);
            if self.eat(&Token::If) {
                self.body(&mut rule, &mut atoms)?;
            }
        }
        self.expect(Token::Dot, "`.`")?;
        Ok((rule, atoms))
    }
}

/// Parses program text into a [`Program`] of safe rules.
///
/// Fails on the first syntax error, on a predicate used with two different arities, or on an
/// unsafe rule.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(text)?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map(|(i, l)| Position {
            line: i + 1,
            column: l.chars().count() + 1,
        })
        .unwrap_or(Position { line: 1, column: 1 });
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end,
    };

    let mut arities: HashMap<String, usize> = HashMap::new();
    let mut rules = Vec::new();
    while parser.peek().is_some() {
        let (rule, positions) = parser.rule()?;
        let mut positive = rule.positive_body.iter();
        let mut negative = rule.negative_body.iter();
        for (pos, slot) in positions {
            let atom = match slot {
                0 => rule.head.as_ref(),
                1 => positive.next(),
                _ => negative.next(),
            }
            .expect("atom positions match the rule");
            let expected = *arities
                .entry(atom.predicate.clone())
                .or_insert(atom.arity());
            if expected != atom.arity() {
                return Err(ParseError {
                    position: pos,
                    kind: ParseErrorKind::ArityMismatch {
                        predicate: atom.predicate.clone(),
                        expected,
                        found: atom.arity(),
                    },
                });
            }
        }
        if let Err(violation) = validate_safety(&rule) {
            return Err(ParseError {
                position: rule.position,
                kind: ParseErrorKind::Unsafe {
                    rule: rule.to_string(),
                    variables: violation.variables,
                },
            });
        }
        rules.push(rule);
    }
    Ok(Program { rules })
}
