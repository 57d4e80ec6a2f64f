//! Lexer for the property-graph schema DDL.
//!
//! Produces a flat token stream ending in [`TokenKind::Eof`]. Lines
//! starting a `#` comment are skipped through the end of the line.
//! String literals accept straight double quotes as well as the
//! typographic double quotes that show up in copy-pasted documents.

use crate::token::{Keyword, Pos, Token, TokenKind};
use std::fmt;

/// A lexical error with the position it occurred at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for LexError {}

const CURLY_OPEN: char = '\u{201C}';
const CURLY_CLOSE: char = '\u{201D}';

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Lexer<'a> {
    rest: &'a str,
    line: u32,
    column: u32,
    offset: usize,
}

impl<'a> Lexer<'a> {
    fn new(source: &'a str) -> Self {
        Lexer {
            rest: source,
            line: 1,
            column: 1,
            offset: 0,
        }
    }

    fn pos(&self) -> Pos {
        Pos::new(self.line, self.column, self.offset)
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.chars().next()?;
        let len = c.len_utf8();
        self.rest = &self.rest[len..];
        self.offset += len;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.rest;
        let mut len = 0;
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            len += c.len_utf8();
            self.bump();
        }
        &start[..len]
    }

    fn string_literal(&mut self, open: char, pos: Pos) -> Result<Token, LexError> {
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return Err(LexError {
                        message: "unterminated string literal".to_string(),
                        pos,
                    });
                }
                Some(c) => {
                    let closes = if open == '"' {
                        c == '"'
                    } else {
                        c == CURLY_OPEN || c == CURLY_CLOSE
                    };
                    self.bump();
                    if closes {
                        break;
                    }
                    value.push(c);
                }
            }
        }
        Ok(Token {
            lexeme: format!("\"{}\"", value),
            kind: TokenKind::Str(value),
            pos,
        })
    }
}

/// Tokenizes DDL source text. The result always ends with an
/// [`TokenKind::Eof`] token, even for empty input.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer::new(source);
    let mut tokens = Vec::new();

    loop {
        let pos = lx.pos();
        let c = match lx.peek() {
            None => break,
            Some(c) => c,
        };

        match c {
            ' ' | '\t' | '\r' => {
                lx.bump();
            }
            '#' => {
                lx.take_while(|c| c != '\n');
            }
            '\n' => {
                lx.bump();
                tokens.push(Token {
                    kind: TokenKind::Newline,
                    lexeme: "\n".to_string(),
                    pos,
                });
            }
            '"' | CURLY_OPEN | CURLY_CLOSE => {
                lx.bump();
                tokens.push(lx.string_literal(c, pos)?);
            }
            c if is_ident_start(c) => {
                let word = lx.take_while(is_ident_continue);
                let kind = match Keyword::from_ident(word) {
                    Some(kw) => TokenKind::Keyword(kw),
                    None => TokenKind::Ident(word.to_string()),
                };
                tokens.push(Token {
                    kind,
                    lexeme: word.to_string(),
                    pos,
                });
            }
            c if c.is_ascii_digit() => {
                let digits = lx.take_while(|c| c.is_ascii_digit());
                let value: u64 = digits.parse().map_err(|_| LexError {
                    message: format!("integer literal '{}' out of range", digits),
                    pos,
                })?;
                tokens.push(Token {
                    kind: TokenKind::Int(value),
                    lexeme: digits.to_string(),
                    pos,
                });
            }
            _ => {
                let kind = match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '<' => TokenKind::Lt,
                    '>' => TokenKind::Gt,
                    ',' => TokenKind::Comma,
                    '*' => TokenKind::Star,
                    '|' => TokenKind::Pipe,
                    '=' => TokenKind::Eq,
                    '.' => TokenKind::Dot,
                    _ => {
                        return Err(LexError {
                            message: format!("illegal character '{}'", c),
                            pos,
                        });
                    }
                };
                lx.bump();
                tokens.push(Token {
                    kind,
                    lexeme: c.to_string(),
                    pos,
                });
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        lexeme: String::new(),
        pos: lx.pos(),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(source: &str) -> Vec<TokenKind> {
        tokenize(source).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn keywords_and_identifiers() {
        let toks = kinds("CREATE VERTEX person");
        assert_eq!(
            toks,
            vec![
                TokenKind::Keyword(Keyword::Create),
                TokenKind::Keyword(Keyword::Vertex),
                TokenKind::Ident("person".to_string()),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn empty_input_is_just_eof() {
        assert_eq!(kinds(""), vec![TokenKind::Eof]);
    }

    #[test]
    fn comment_then_statement() {
        let toks = kinds("#a person schema object is created\nDROP VERTEX *");
        assert_eq!(
            toks,
            vec![
                TokenKind::Newline,
                TokenKind::Keyword(Keyword::Drop),
                TokenKind::Keyword(Keyword::Vertex),
                TokenKind::Star,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn keywords_are_case_insensitive_identifiers_keep_spelling() {
        let toks = tokenize("create Vertex PerSon").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Keyword(Keyword::Create));
        assert_eq!(toks[1].kind, TokenKind::Keyword(Keyword::Vertex));
        assert_eq!(toks[2].kind, TokenKind::Ident("PerSon".to_string()));
        assert_eq!(toks[2].lexeme, "PerSon");
    }

    #[test]
    fn curly_quotes_are_accepted() {
        let toks = tokenize("WITH REVERSE_EDGE=\u{201D}supervised_by\u{201D}").unwrap();
        assert_eq!(toks[3].kind, TokenKind::Str("supervised_by".to_string()));
    }

    #[test]
    fn unterminated_string_reports_position() {
        let err = tokenize("CREATE LABEL c DESCRIPTION \"oops").unwrap_err();
        assert!(err.message.contains("unterminated"));
        assert_eq!(err.pos.line, 1);
        assert_eq!(err.pos.column, 28);
    }

    #[test]
    fn illegal_character_reports_position() {
        let err = tokenize("CREATE VERTEX p;").unwrap_err();
        assert!(err.message.contains("illegal character"));
        assert_eq!(err.pos.column, 16);
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("CREATE VERTEX a\nDROP VERTEX a").unwrap();
        let drop = toks.iter().find(|t| t.is_keyword(Keyword::Drop)).unwrap();
        assert_eq!(drop.pos.line, 2);
        assert_eq!(drop.pos.column, 1);
    }
}
