//! Recursive-descent parser for the schema DDL.
//!
//! A statement ends at a newline outside parentheses or at end of
//! input. Two exceptions let statements span lines the way they do in
//! real scripts: newlines inside an open parenthesis are ignored, and
//! a line break directly before a `WITH` clause continues the
//! statement (a `WITH` can never start one).

use crate::ast::*;
use crate::datatype::parse_data_type;
use crate::lexer::{tokenize, LexError};
use crate::token::{Keyword, Pos, Token, TokenKind};
use std::fmt;

/// A parse error carrying the expected-token set and the position of
/// the offending token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub expected: Vec<String>,
    pub found: String,
    pub pos: Pos,
}

impl ParseError {
    fn new(expected: Vec<&str>, found: String, pos: Pos) -> Self {
        ParseError {
            expected: expected.into_iter().map(str::to_string).collect(),
            found,
            pos,
        }
    }

    fn custom(message: impl Into<String>, pos: Pos) -> Self {
        ParseError {
            expected: Vec::new(),
            found: message.into(),
            pos,
        }
    }

    /// The diagnostic text without the position prefix.
    pub fn message(&self) -> String {
        if self.expected.is_empty() {
            self.found.clone()
        } else {
            format!("expected {}, found {}", self.expected.join(" or "), self.found)
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message())
    }
}

impl std::error::Error for ParseError {}

/// Either kind of syntax failure, as surfaced by [`parse_script`].
#[derive(Clone, Debug, PartialEq)]
pub enum SyntaxError {
    Lex(LexError),
    Parse(ParseError),
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::Lex(e) => e.pos,
            SyntaxError::Parse(e) => e.pos,
        }
    }

    /// The diagnostic text without the position prefix.
    pub fn message(&self) -> String {
        match self {
            SyntaxError::Lex(e) => e.message.clone(),
            SyntaxError::Parse(e) => e.message(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxError::Lex(e) => e.fmt(f),
            SyntaxError::Parse(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for SyntaxError {}

impl From<LexError> for SyntaxError {
    fn from(e: LexError) -> Self {
        SyntaxError::Lex(e)
    }
}

impl From<ParseError> for SyntaxError {
    fn from(e: ParseError) -> Self {
        SyntaxError::Parse(e)
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    depth: u32,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        Parser {
            tokens,
            pos: 0,
            depth: 0,
        }
    }

    fn raw(&self) -> &Token {
        // tokenize always appends Eof, so indexing is safe while we
        // never step past it
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    /// Next significant token. Newlines are transparent inside
    /// parentheses.
    fn peek(&mut self) -> &Token {
        while self.depth > 0 && self.raw().kind == TokenKind::Newline {
            self.pos += 1;
        }
        self.raw()
    }

    fn advance(&mut self) -> Token {
        let tok = self.peek().clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        match tok.kind {
            TokenKind::LParen => self.depth += 1,
            TokenKind::RParen => self.depth = self.depth.saturating_sub(1),
            _ => {}
        }
        tok
    }

    fn err_expected<T>(&mut self, expected: Vec<&str>) -> PResult<T> {
        let tok = self.peek().clone();
        Err(ParseError::new(expected, tok.kind.describe(), tok.pos))
    }

    fn check_kw(&mut self, kw: Keyword) -> bool {
        self.peek().is_keyword(kw)
    }

    fn eat_kw(&mut self, kw: Keyword) -> bool {
        if self.check_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: Keyword) -> PResult<Token> {
        if self.check_kw(kw) {
            Ok(self.advance())
        } else {
            self.err_expected(vec![kw.as_str()])
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().kind == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<Token> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            self.err_expected(vec![what])
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, Pos)> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let pos = self.peek().pos;
                self.advance();
                Ok((name, pos))
            }
            _ => self.err_expected(vec!["identifier"]),
        }
    }

    /// A possibly dot-qualified name such as `G1.C`.
    fn parse_name(&mut self) -> PResult<String> {
        let (mut name, _) = self.expect_ident()?;
        while self.eat(TokenKind::Dot) {
            let (part, _) = self.expect_ident()?;
            name.push('.');
            name.push_str(&part);
        }
        Ok(name)
    }

    fn parse_name_list(&mut self) -> PResult<Vec<String>> {
        let mut names = vec![self.parse_name()?];
        while self.eat(TokenKind::Comma) {
            names.push(self.parse_name()?);
        }
        Ok(names)
    }

    fn skip_newlines(&mut self) {
        while self.raw().kind == TokenKind::Newline {
            self.pos += 1;
        }
    }

    /// True when the next significant token after any newlines is
    /// `WITH`; used for the line-continuation rule.
    fn with_follows(&self) -> bool {
        let mut i = self.pos;
        while i < self.tokens.len() && self.tokens[i].kind == TokenKind::Newline {
            i += 1;
        }
        i < self.tokens.len() && self.tokens[i].is_keyword(Keyword::With)
    }

    fn expect_statement_end(&mut self) -> PResult<()> {
        match self.raw().kind {
            TokenKind::Newline => {
                self.pos += 1;
                Ok(())
            }
            TokenKind::Eof => Ok(()),
            _ => self.err_expected(vec!["end of statement"]),
        }
    }

    /// Consumes a data type from the token stream and returns its
    /// canonical text, validating it along the way.
    fn parse_data_type_text(&mut self) -> PResult<String> {
        let start = self.peek().pos;
        let name = match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                self.advance();
                name
            }
            _ => return self.err_expected(vec!["data type"]),
        };
        let mut text = name;
        if self.peek().kind == TokenKind::LParen {
            self.advance();
            text.push('(');
            match self.peek().kind {
                TokenKind::Int(n) => {
                    self.advance();
                    text.push_str(&n.to_string());
                }
                _ => return self.err_expected(vec!["integer length"]),
            }
            self.expect(TokenKind::RParen, "')'")?;
            text.push(')');
        } else if self.peek().kind == TokenKind::Lt {
            let mut angle = 0u32;
            loop {
                match self.peek().kind.clone() {
                    TokenKind::Lt => {
                        self.advance();
                        text.push('<');
                        angle += 1;
                    }
                    TokenKind::Gt => {
                        self.advance();
                        text.push('>');
                        angle -= 1;
                        if angle == 0 {
                            break;
                        }
                    }
                    TokenKind::Comma => {
                        self.advance();
                        text.push(',');
                    }
                    TokenKind::Ident(word) => {
                        self.advance();
                        text.push_str(&word);
                    }
                    TokenKind::Int(n) => {
                        self.advance();
                        text.push_str(&n.to_string());
                    }
                    TokenKind::LParen => {
                        self.advance();
                        text.push('(');
                    }
                    TokenKind::RParen => {
                        self.advance();
                        text.push(')');
                    }
                    _ => return self.err_expected(vec!["data type parameter"]),
                }
            }
        }
        match parse_data_type(&text) {
            Ok(ty) => Ok(ty.to_string()),
            Err(e) => Err(ParseError::custom(e.message, start)),
        }
    }

    fn parse_attribute_spec(&mut self, allow_inline_pk: bool) -> PResult<AttributeSpec> {
        let (name, _) = match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let pos = self.peek().pos;
                self.advance();
                (name, pos)
            }
            _ => return self.err_expected(vec!["attribute name"]),
        };
        let data_type_text = self.parse_data_type_text()?;
        let mut not_null = false;
        if self.check_kw(Keyword::Not) {
            self.advance();
            self.expect_kw(Keyword::Null)?;
            not_null = true;
        }
        let mut inline_primary_key = false;
        if self.check_kw(Keyword::Primary) {
            let pos = self.peek().pos;
            if !allow_inline_pk {
                return Err(ParseError::custom("PRIMARY KEY is not allowed here", pos));
            }
            self.advance();
            self.expect_kw(Keyword::Key)?;
            inline_primary_key = true;
        }
        Ok(AttributeSpec {
            name,
            data_type_text,
            not_null,
            inline_primary_key,
        })
    }

    // ---- CREATE ----------------------------------------------------

    fn parse_create(&mut self) -> PResult<Statement> {
        if self.eat_kw(Keyword::Vertex) {
            return self.parse_create_vertex();
        }
        if self.eat_kw(Keyword::Directed) {
            self.expect_kw(Keyword::Edge)?;
            return self.parse_create_edge(true);
        }
        if self.eat_kw(Keyword::Undirected) {
            self.expect_kw(Keyword::Edge)?;
            return self.parse_create_edge(false);
        }
        if self.eat_kw(Keyword::Graph) {
            return self.parse_create_graph();
        }
        if self.eat_kw(Keyword::Label) {
            return self.parse_create_label();
        }
        self.err_expected(vec![
            "VERTEX",
            "DIRECTED EDGE",
            "UNDIRECTED EDGE",
            "GRAPH",
            "LABEL",
        ])
    }

    fn parse_create_vertex(&mut self) -> PResult<Statement> {
        let (name, name_pos) = self.expect_ident()?;
        let extends = if self.eat_kw(Keyword::Extends) {
            Some(self.parse_name()?)
        } else {
            None
        };

        let mut attributes = Vec::new();
        let mut key_clause = None;
        if self.peek().kind == TokenKind::LParen {
            let lparen_pos = self.peek().pos;
            self.advance();
            if self.peek().kind != TokenKind::RParen {
                loop {
                    if self.check_kw(Keyword::Primary) {
                        let pos = self.peek().pos;
                        self.advance();
                        self.expect_kw(Keyword::Key)?;
                        if key_clause.is_some() {
                            return Err(ParseError::custom(
                                "multiple primary-key designations",
                                pos,
                            ));
                        }
                        if self.eat_kw(Keyword::Uuid) {
                            key_clause = Some(KeyClause::Uuid);
                        } else if self.eat(TokenKind::LParen) {
                            let mut cols = vec![self.expect_ident()?.0];
                            while self.eat(TokenKind::Comma) {
                                cols.push(self.expect_ident()?.0);
                            }
                            self.expect(TokenKind::RParen, "')'")?;
                            key_clause = Some(KeyClause::Columns(cols));
                        } else {
                            return self.err_expected(vec!["'('", "UUID"]);
                        }
                    } else {
                        attributes.push(self.parse_attribute_spec(true)?);
                    }
                    if !self.eat(TokenKind::Comma) {
                        break;
                    }
                }
            }
            self.expect(TokenKind::RParen, "')'")?;

            if extends.is_none() && attributes.is_empty() {
                return Err(ParseError::custom(
                    "a vertex type requires at least one attribute",
                    lparen_pos,
                ));
            }
        } else if extends.is_none() {
            return self.err_expected(vec!["'('"]);
        }

        let inline_keys = attributes.iter().filter(|a| a.inline_primary_key).count();
        if inline_keys + key_clause.is_some() as usize > 1 {
            return Err(ParseError::custom(
                "multiple primary-key designations",
                name_pos,
            ));
        }

        Ok(Statement::CreateVertex(CreateVertex {
            name,
            extends,
            attributes,
            key_clause,
        }))
    }

    fn parse_endpoint_set(&mut self) -> PResult<EndpointSet> {
        if self.eat(TokenKind::Star) {
            return Ok(EndpointSet::Wildcard);
        }
        let mut names = vec![self.parse_name()?];
        while self.eat(TokenKind::Pipe) {
            names.push(self.parse_name()?);
        }
        Ok(EndpointSet::Named(names))
    }

    fn parse_endpoint_pair(&mut self) -> PResult<EndpointPairSpec> {
        self.expect_kw(Keyword::From)?;
        let from = self.parse_endpoint_set()?;
        self.expect(TokenKind::Comma, "','")?;
        self.expect_kw(Keyword::To)?;
        let to = self.parse_endpoint_set()?;
        Ok(EndpointPairSpec { from, to })
    }

    fn parse_create_edge(&mut self, directed: bool) -> PResult<Statement> {
        let (name, _) = self.expect_ident()?;
        let extends = if self.eat_kw(Keyword::Extends) {
            Some(self.parse_name()?)
        } else {
            None
        };

        let mut pairs = Vec::new();
        let mut attributes = Vec::new();
        let mut discriminator = None;
        if self.peek().kind == TokenKind::LParen {
            self.advance();
            if self.peek().kind != TokenKind::RParen {
                // grouped pairs: ((FROM a, TO b), (FROM c, TO d), attrs...)
                // inline single pair: (FROM a, TO b, attrs...)
                let mut want_more = true;
                if self.peek().kind == TokenKind::LParen {
                    loop {
                        self.expect(TokenKind::LParen, "'('")?;
                        pairs.push(self.parse_endpoint_pair()?);
                        self.expect(TokenKind::RParen, "')'")?;
                        if !self.eat(TokenKind::Comma) {
                            want_more = false;
                            break;
                        }
                        if self.peek().kind != TokenKind::LParen {
                            break;
                        }
                    }
                } else if self.check_kw(Keyword::From) {
                    pairs.push(self.parse_endpoint_pair()?);
                    want_more = self.eat(TokenKind::Comma);
                }
                if want_more {
                    loop {
                        if self.check_kw(Keyword::Discriminator) {
                            let pos = self.peek().pos;
                            self.advance();
                            if discriminator.is_some() {
                                return Err(ParseError::custom(
                                    "duplicate DISCRIMINATOR clause",
                                    pos,
                                ));
                            }
                            self.expect(TokenKind::LParen, "'('")?;
                            let mut cols = vec![self.expect_ident()?.0];
                            while self.eat(TokenKind::Comma) {
                                cols.push(self.expect_ident()?.0);
                            }
                            self.expect(TokenKind::RParen, "')'")?;
                            discriminator = Some(cols);
                        } else {
                            attributes.push(self.parse_attribute_spec(false)?);
                        }
                        if !self.eat(TokenKind::Comma) {
                            break;
                        }
                    }
                }
            }
            self.expect(TokenKind::RParen, "')'")?;
        } else if extends.is_none() {
            return self.err_expected(vec!["'('"]);
        }

        if extends.is_none() && pairs.is_empty() {
            let tok = self.peek().clone();
            return Err(ParseError::custom(
                "an edge type requires at least one FROM/TO endpoint pair",
                tok.pos,
            ));
        }

        let reverse_edge = self.parse_with_clause()?;

        Ok(Statement::CreateEdge(CreateEdge {
            name,
            directed,
            extends,
            pairs,
            attributes,
            discriminator,
            reverse_edge,
        }))
    }

    /// `WITH KEY=VALUE (',' KEY=VALUE)*`; only REVERSE_EDGE is a known
    /// key. May be preceded by line breaks.
    fn parse_with_clause(&mut self) -> PResult<Option<String>> {
        if !self.with_follows() {
            return Ok(None);
        }
        self.skip_newlines();
        self.expect_kw(Keyword::With)?;
        let mut reverse = None;
        loop {
            let (key, key_pos) = self.expect_ident()?;
            self.expect(TokenKind::Eq, "'='")?;
            let value_tok = self.peek().clone();
            let value = match value_tok.kind {
                TokenKind::Str(s) => {
                    self.advance();
                    s
                }
                _ => return self.err_expected(vec!["string literal"]),
            };
            if key.eq_ignore_ascii_case("REVERSE_EDGE") {
                if reverse.is_some() {
                    return Err(ParseError::custom("duplicate REVERSE_EDGE key", key_pos));
                }
                if !is_identifier(&value) {
                    return Err(ParseError::custom(
                        format!("REVERSE_EDGE value '{}' is not a valid identifier", value),
                        value_tok.pos,
                    ));
                }
                reverse = Some(value);
            } else {
                return Err(ParseError::custom(
                    format!("unknown WITH key '{}'", key),
                    key_pos,
                ));
            }
            if !self.eat(TokenKind::Comma) {
                break;
            }
        }
        Ok(reverse)
    }

    fn parse_create_graph(&mut self) -> PResult<Statement> {
        let (name, _) = self.expect_ident()?;
        if self.eat_kw(Keyword::As) {
            let type_name = self.parse_name()?;
            return Ok(Statement::CreateGraph(CreateGraph {
                name,
                form: GraphForm::AsType(type_name),
            }));
        }

        let extends = if self.eat_kw(Keyword::Extends) {
            Some(self.parse_name()?)
        } else {
            None
        };
        let owns = if self.check_kw(Keyword::Owns) {
            let pos = self.peek().pos;
            self.advance();
            if extends.is_some() {
                return Err(ParseError::custom(
                    "OWNS cannot be combined with EXTENDS",
                    pos,
                ));
            }
            true
        } else {
            false
        };

        self.expect(TokenKind::LParen, "'('")?;
        let mut members = Vec::new();
        if self.peek().kind != TokenKind::RParen {
            loop {
                let reference = if self.check_kw(Keyword::References) {
                    let pos = self.peek().pos;
                    self.advance();
                    if owns {
                        return Err(ParseError::custom(
                            "REFERENCES cannot appear in an OWNS member list",
                            pos,
                        ));
                    }
                    true
                } else {
                    false
                };
                let member = self.parse_name()?;
                members.push(MemberSpec {
                    reference,
                    name: member,
                });
                if !self.eat(TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen, "')'")?;

        Ok(Statement::CreateGraph(CreateGraph {
            name,
            form: GraphForm::Members {
                extends,
                owns,
                members,
            },
        }))
    }

    fn parse_create_label(&mut self) -> PResult<Statement> {
        let (name, _) = self.expect_ident()?;
        let description = if self.eat_kw(Keyword::Description) {
            let tok = self.peek().clone();
            match tok.kind {
                TokenKind::Str(s) => {
                    self.advance();
                    Some(s)
                }
                _ => return self.err_expected(vec!["string literal"]),
            }
        } else {
            None
        };
        let extends = if self.eat_kw(Keyword::Extends) {
            self.parse_name_list()?
        } else {
            Vec::new()
        };
        let mut attributes = Vec::new();
        if self.eat(TokenKind::LParen) {
            if self.peek().kind != TokenKind::RParen {
                loop {
                    attributes.push(self.parse_attribute_spec(false)?);
                    if !self.eat(TokenKind::Comma) {
                        break;
                    }
                }
            }
            self.expect(TokenKind::RParen, "')'")?;
        }
        Ok(Statement::CreateLabel(CreateLabel {
            name,
            description,
            extends,
            attributes,
        }))
    }

    // ---- DROP ------------------------------------------------------

    fn parse_drop(&mut self) -> PResult<Statement> {
        if self.eat_kw(Keyword::Vertex) {
            let targets = if self.eat(TokenKind::Star) {
                DropTargets::Star
            } else {
                DropTargets::Names(self.parse_name_list()?)
            };
            let cascade = self.eat_kw(Keyword::Cascade);
            return Ok(Statement::DropVertex(DropVertex { targets, cascade }));
        }
        if self.eat_kw(Keyword::Edge) {
            let targets = if self.eat(TokenKind::Star) {
                DropTargets::Star
            } else {
                DropTargets::Names(self.parse_name_list()?)
            };
            return Ok(Statement::DropEdge(DropEdge { targets }));
        }
        if self.eat_kw(Keyword::Graph) {
            return Ok(Statement::DropGraph(DropGraph {
                names: self.parse_name_list()?,
            }));
        }
        if self.eat_kw(Keyword::Label) {
            return Ok(Statement::DropLabel(DropLabel {
                names: self.parse_name_list()?,
            }));
        }
        self.err_expected(vec!["VERTEX", "EDGE", "GRAPH", "LABEL"])
    }

    // ---- ALTER -----------------------------------------------------

    fn parse_alter_attr_action(&mut self) -> PResult<AlterAttrAction> {
        if self.eat_kw(Keyword::Add) {
            self.expect(TokenKind::LParen, "'('")?;
            let mut specs = vec![self.parse_attribute_spec(false)?];
            while self.eat(TokenKind::Comma) {
                specs.push(self.parse_attribute_spec(false)?);
            }
            self.expect(TokenKind::RParen, "')'")?;
            return Ok(AlterAttrAction::Add(specs));
        }
        if self.eat_kw(Keyword::Drop) {
            self.expect(TokenKind::LParen, "'('")?;
            let mut names = Vec::new();
            loop {
                let (name, _) = self.expect_ident()?;
                names.push(name);
                // a data type may follow the name; accepted and ignored
                if matches!(self.peek().kind, TokenKind::Ident(_)) {
                    self.parse_data_type_text()?;
                }
                if !self.eat(TokenKind::Comma) {
                    break;
                }
            }
            self.expect(TokenKind::RParen, "')'")?;
            return Ok(AlterAttrAction::Drop(names));
        }
        self.err_expected(vec!["ADD", "DROP"])
    }

    fn parse_alter(&mut self) -> PResult<Statement> {
        if self.eat_kw(Keyword::Vertex) {
            let name = self.parse_name()?;
            let action = self.parse_alter_attr_action()?;
            return Ok(Statement::AlterVertex(AlterVertex { name, action }));
        }
        if self.eat_kw(Keyword::Edge) {
            let name = self.parse_name()?;
            let action = self.parse_alter_attr_action()?;
            return Ok(Statement::AlterEdge(AlterEdge { name, action }));
        }
        if self.eat_kw(Keyword::Graph) {
            let name = self.parse_name()?;
            let add = if self.eat_kw(Keyword::Add) {
                true
            } else if self.eat_kw(Keyword::Drop) {
                false
            } else {
                return self.err_expected(vec!["ADD", "DROP"]);
            };
            let vertex = if self.eat_kw(Keyword::Vertex) {
                true
            } else if self.eat_kw(Keyword::Edge) {
                false
            } else {
                return self.err_expected(vec!["VERTEX", "EDGE"]);
            };
            self.expect(TokenKind::LParen, "'('")?;
            let names = self.parse_name_list()?;
            self.expect(TokenKind::RParen, "')'")?;
            let action = match (add, vertex) {
                (true, true) => AlterGraphAction::AddVertex(names),
                (true, false) => AlterGraphAction::AddEdge(names),
                (false, true) => {
                    let cascade = self.eat_kw(Keyword::Cascade);
                    AlterGraphAction::DropVertex { names, cascade }
                }
                (false, false) => AlterGraphAction::DropEdge(names),
            };
            return Ok(Statement::AlterGraph(AlterGraph { name, action }));
        }
        self.err_expected(vec!["VERTEX", "EDGE", "GRAPH"])
    }

    // ---- dispatch --------------------------------------------------

    fn parse_statement_inner(&mut self) -> PResult<Statement> {
        if self.eat_kw(Keyword::Create) {
            return self.parse_create();
        }
        if self.eat_kw(Keyword::Drop) {
            return self.parse_drop();
        }
        if self.eat_kw(Keyword::Alter) {
            return self.parse_alter();
        }
        if self.eat_kw(Keyword::Use) {
            self.expect_kw(Keyword::Graph)?;
            let name = self.parse_name()?;
            return Ok(Statement::UseGraph(UseGraph { name }));
        }
        self.err_expected(vec!["CREATE", "DROP", "ALTER", "USE"])
    }
}

fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Streaming statement parser over a token slice. Yields each parsed
/// statement with the position it starts at; stops after the first
/// error.
pub struct StatementStream<'a> {
    parser: Parser<'a>,
    failed: bool,
}

impl<'a> StatementStream<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        StatementStream {
            parser: Parser::new(tokens),
            failed: false,
        }
    }
}

impl<'a> Iterator for StatementStream<'a> {
    type Item = Result<(Statement, Pos), ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.parser.tokens.is_empty() {
            return None;
        }
        self.parser.skip_newlines();
        if self.parser.raw().is_eof() {
            return None;
        }
        let start = self.parser.raw().pos;
        let result = self
            .parser
            .parse_statement_inner()
            .and_then(|stmt| self.parser.expect_statement_end().map(|_| (stmt, start)));
        if result.is_err() {
            self.failed = true;
        }
        Some(result)
    }
}

/// Parses one statement from a token stream positioned at a statement
/// start. Returns the statement and the number of tokens consumed
/// (including the terminating newline).
pub fn parse_statement(tokens: &[Token]) -> Result<(Statement, usize), ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::custom("empty token stream", Pos::new(1, 1, 0)));
    }
    let mut parser = Parser::new(tokens);
    parser.skip_newlines();
    let stmt = parser.parse_statement_inner()?;
    parser.expect_statement_end()?;
    Ok((stmt, parser.pos))
}

/// Parses a whole script into statements, in source order. Comment-only
/// or blank input yields an empty list; the first error aborts.
pub fn parse_script(source: &str) -> Result<Vec<Statement>, SyntaxError> {
    let tokens = tokenize(source)?;
    let mut statements = Vec::new();
    for item in StatementStream::new(&tokens) {
        let (stmt, _) = item?;
        statements.push(stmt);
    }
    Ok(statements)
}

/// Parses exactly one statement from source text.
pub fn parse_one(source: &str) -> Result<Statement, SyntaxError> {
    let statements = parse_script(source)?;
    match statements.len() {
        1 => Ok(statements.into_iter().next().unwrap()),
        n => Err(SyntaxError::Parse(ParseError::custom(
            format!("expected exactly one statement, got {}", n),
            Pos::new(1, 1, 0),
        ))),
    }
}
