//! Tokens and source positions produced by the DDL lexer.

use std::fmt;

/// A position in the source text. Lines and columns are 1-based;
/// `offset` is the byte offset into the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
    pub offset: usize,
}

impl Pos {
    pub const fn new(line: u32, column: u32, offset: usize) -> Self {
        Pos {
            line,
            column,
            offset,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Reserved words of the DDL. Keywords are matched case-insensitively;
/// everything else lexes as an identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Keyword {
    Create,
    Drop,
    Alter,
    Use,
    Vertex,
    Edge,
    Graph,
    Label,
    Directed,
    Undirected,
    From,
    To,
    Not,
    Null,
    Primary,
    Key,
    Extends,
    With,
    Cascade,
    Add,
    Description,
    Discriminator,
    References,
    As,
    Owns,
    Uuid,
}

impl Keyword {
    pub fn from_ident(text: &str) -> Option<Keyword> {
        use Keyword::*;
        let kw = match text.to_ascii_uppercase().as_str() {
            "CREATE" => Create,
            "DROP" => Drop,
            "ALTER" => Alter,
            "USE" => Use,
            "VERTEX" => Vertex,
            "EDGE" => Edge,
            "GRAPH" => Graph,
            "LABEL" => Label,
            "DIRECTED" => Directed,
            "UNDIRECTED" => Undirected,
            "FROM" => From,
            "TO" => To,
            "NOT" => Not,
            "NULL" => Null,
            "PRIMARY" => Primary,
            "KEY" => Key,
            "EXTENDS" => Extends,
            "WITH" => With,
            "CASCADE" => Cascade,
            "ADD" => Add,
            "DESCRIPTION" => Description,
            "DISCRIMINATOR" => Discriminator,
            "REFERENCES" => References,
            "AS" => As,
            "OWNS" => Owns,
            "UUID" => Uuid,
            _ => return None,
        };
        Some(kw)
    }

    pub fn as_str(&self) -> &'static str {
        use Keyword::*;
        match self {
            Create => "CREATE",
            Drop => "DROP",
            Alter => "ALTER",
            Use => "USE",
            Vertex => "VERTEX",
            Edge => "EDGE",
            Graph => "GRAPH",
            Label => "LABEL",
            Directed => "DIRECTED",
            Undirected => "UNDIRECTED",
            From => "FROM",
            To => "TO",
            Not => "NOT",
            Null => "NULL",
            Primary => "PRIMARY",
            Key => "KEY",
            Extends => "EXTENDS",
            With => "WITH",
            Cascade => "CASCADE",
            Add => "ADD",
            Description => "DESCRIPTION",
            Discriminator => "DISCRIMINATOR",
            References => "REFERENCES",
            As => "AS",
            Owns => "OWNS",
            Uuid => "UUID",
        }
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Keyword(Keyword),
    /// An identifier, original spelling preserved.
    Ident(String),
    /// A string literal, without the surrounding quotes.
    Str(String),
    /// An unsigned integer literal.
    Int(u64),
    LParen,
    RParen,
    Lt,
    Gt,
    Comma,
    Star,
    Pipe,
    Eq,
    Dot,
    /// A line break outside a string literal. Statement terminator
    /// when no parenthesis is open.
    Newline,
    /// End-of-input marker; always the last token of a stream.
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Keyword(kw) => format!("keyword {}", kw),
            TokenKind::Ident(name) => format!("identifier '{}'", name),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::Int(n) => format!("integer {}", n),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::Lt => "'<'".to_string(),
            TokenKind::Gt => "'>'".to_string(),
            TokenKind::Comma => "','".to_string(),
            TokenKind::Star => "'*'".to_string(),
            TokenKind::Pipe => "'|'".to_string(),
            TokenKind::Eq => "'='".to_string(),
            TokenKind::Dot => "'.'".to_string(),
            TokenKind::Newline => "end of line".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

/// A single token with its source position and original spelling.
#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: Pos,
}

impl Token {
    pub fn is_keyword(&self, kw: Keyword) -> bool {
        self.kind == TokenKind::Keyword(kw)
    }

    pub fn is_eof(&self) -> bool {
        self.kind == TokenKind::Eof
    }
}
