//! Parsed DDL statements and their canonical single-line rendering.
//!
//! The `Display` impl on [`Statement`] is the pretty-printer: parsing
//! its output yields an AST equal to the original (round-trip at the
//! AST level, not byte level).

use std::fmt;

/// One attribute declaration: name, raw data type spec, and flags.
///
/// `data_type_text` holds the canonical text of the type as accepted
/// by [`crate::datatype::parse_data_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributeSpec {
    pub name: String,
    pub data_type_text: String,
    pub not_null: bool,
    pub inline_primary_key: bool,
}

impl fmt::Display for AttributeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.data_type_text)?;
        if self.not_null {
            f.write_str(" NOT NULL")?;
        }
        if self.inline_primary_key {
            f.write_str(" PRIMARY KEY")?;
        }
        Ok(())
    }
}

/// One side of an endpoint pair: a wildcard or a non-empty list of
/// vertex type names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndpointSet {
    Wildcard,
    Named(Vec<String>),
}

impl fmt::Display for EndpointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndpointSet::Wildcard => f.write_str("*"),
            EndpointSet::Named(names) => f.write_str(&names.join(" | ")),
        }
    }
}

/// A `(FROM ..., TO ...)` source/target pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointPairSpec {
    pub from: EndpointSet,
    pub to: EndpointSet,
}

impl fmt::Display for EndpointPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FROM {}, TO {}", self.from, self.to)
    }
}

/// Trailing primary-key designation of a vertex type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyClause {
    /// `PRIMARY KEY (a, b)`
    Columns(Vec<String>),
    /// `PRIMARY KEY UUID`: auto-assigned key.
    Uuid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreateVertex {
    pub name: String,
    pub extends: Option<String>,
    pub attributes: Vec<AttributeSpec>,
    pub key_clause: Option<KeyClause>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreateEdge {
    pub name: String,
    pub directed: bool,
    pub extends: Option<String>,
    pub pairs: Vec<EndpointPairSpec>,
    pub attributes: Vec<AttributeSpec>,
    pub discriminator: Option<Vec<String>>,
    pub reverse_edge: Option<String>,
}

/// One member entry of a `CREATE GRAPH` member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberSpec {
    /// True when spelled `references name`.
    pub reference: bool,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphForm {
    /// `CREATE GRAPH g [EXTENDS h] (members...)` or `CREATE GRAPH g OWNS (members...)`
    Members {
        extends: Option<String>,
        owns: bool,
        members: Vec<MemberSpec>,
    },
    /// `CREATE GRAPH g AS h`: a new instance of an existing graph type.
    AsType(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreateGraph {
    pub name: String,
    pub form: GraphForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CreateLabel {
    pub name: String,
    pub description: Option<String>,
    pub extends: Vec<String>,
    pub attributes: Vec<AttributeSpec>,
}

/// Target list of a `DROP VERTEX`/`DROP EDGE`: `*` or explicit names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DropTargets {
    Star,
    Names(Vec<String>),
}

impl fmt::Display for DropTargets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropTargets::Star => f.write_str("*"),
            DropTargets::Names(names) => f.write_str(&names.join(", ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropVertex {
    pub targets: DropTargets,
    pub cascade: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropEdge {
    pub targets: DropTargets,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropGraph {
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropLabel {
    pub names: Vec<String>,
}

/// Attribute change of an `ALTER VERTEX`/`ALTER EDGE`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlterAttrAction {
    Add(Vec<AttributeSpec>),
    /// Attribute names to drop. A data type may follow each name in
    /// the source; it is accepted and discarded.
    Drop(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlterVertex {
    pub name: String,
    pub action: AlterAttrAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlterEdge {
    pub name: String,
    pub action: AlterAttrAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlterGraphAction {
    AddVertex(Vec<String>),
    AddEdge(Vec<String>),
    DropVertex { names: Vec<String>, cascade: bool },
    DropEdge(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlterGraph {
    pub name: String,
    pub action: AlterGraphAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UseGraph {
    pub name: String,
}

/// One parsed DDL statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    CreateVertex(CreateVertex),
    CreateEdge(CreateEdge),
    CreateGraph(CreateGraph),
    CreateLabel(CreateLabel),
    DropVertex(DropVertex),
    DropEdge(DropEdge),
    DropGraph(DropGraph),
    DropLabel(DropLabel),
    AlterVertex(AlterVertex),
    AlterEdge(AlterEdge),
    AlterGraph(AlterGraph),
    UseGraph(UseGraph),
}

/// Quotes a string literal for output. Values containing a straight
/// quote are wrapped in typographic quotes instead; the lexer accepts
/// both, so this always reparses.
fn quote(value: &str) -> String {
    if value.contains('"') {
        format!("\u{201C}{}\u{201D}", value)
    } else {
        format!("\"{}\"", value)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::CreateVertex(v) => {
                write!(f, "CREATE VERTEX {}", v.name)?;
                if let Some(super_name) = &v.extends {
                    write!(f, " EXTENDS {}", super_name)?;
                }
                let mut items: Vec<String> =
                    v.attributes.iter().map(|a| a.to_string()).collect();
                match &v.key_clause {
                    Some(KeyClause::Columns(cols)) => {
                        items.push(format!("PRIMARY KEY ({})", cols.join(", ")));
                    }
                    Some(KeyClause::Uuid) => items.push("PRIMARY KEY UUID".to_string()),
                    None => {}
                }
                if !items.is_empty() {
                    write!(f, " ({})", items.join(", "))?;
                }
                Ok(())
            }
            Statement::CreateEdge(e) => {
                let dir = if e.directed { "DIRECTED" } else { "UNDIRECTED" };
                write!(f, "CREATE {} EDGE {}", dir, e.name)?;
                if let Some(super_name) = &e.extends {
                    write!(f, " EXTENDS {}", super_name)?;
                }
                let mut items: Vec<String> = Vec::new();
                if e.pairs.len() == 1 {
                    items.push(e.pairs[0].to_string());
                } else {
                    items.extend(e.pairs.iter().map(|p| format!("({})", p)));
                }
                items.extend(e.attributes.iter().map(|a| a.to_string()));
                if let Some(disc) = &e.discriminator {
                    items.push(format!("DISCRIMINATOR ({})", disc.join(", ")));
                }
                if !items.is_empty() {
                    write!(f, " ({})", items.join(", "))?;
                }
                if let Some(reverse) = &e.reverse_edge {
                    write!(f, " WITH REVERSE_EDGE={}", quote(reverse))?;
                }
                Ok(())
            }
            Statement::CreateGraph(g) => {
                write!(f, "CREATE GRAPH {}", g.name)?;
                match &g.form {
                    GraphForm::AsType(type_name) => write!(f, " AS {}", type_name),
                    GraphForm::Members {
                        extends,
                        owns,
                        members,
                    } => {
                        if let Some(super_name) = extends {
                            write!(f, " EXTENDS {}", super_name)?;
                        }
                        if *owns {
                            f.write_str(" OWNS")?;
                        }
                        let rendered: Vec<String> = members
                            .iter()
                            .map(|m| {
                                if m.reference {
                                    format!("REFERENCES {}", m.name)
                                } else {
                                    m.name.clone()
                                }
                            })
                            .collect();
                        write!(f, " ({})", rendered.join(", "))
                    }
                }
            }
            Statement::CreateLabel(l) => {
                write!(f, "CREATE LABEL {}", l.name)?;
                if let Some(desc) = &l.description {
                    write!(f, " DESCRIPTION {}", quote(desc))?;
                }
                if !l.extends.is_empty() {
                    write!(f, " EXTENDS {}", l.extends.join(", "))?;
                }
                if !l.attributes.is_empty() {
                    let rendered: Vec<String> =
                        l.attributes.iter().map(|a| a.to_string()).collect();
                    write!(f, " ({})", rendered.join(", "))?;
                }
                Ok(())
            }
            Statement::DropVertex(d) => {
                write!(f, "DROP VERTEX {}", d.targets)?;
                if d.cascade {
                    f.write_str(" CASCADE")?;
                }
                Ok(())
            }
            Statement::DropEdge(d) => write!(f, "DROP EDGE {}", d.targets),
            Statement::DropGraph(d) => write!(f, "DROP GRAPH {}", d.names.join(", ")),
            Statement::DropLabel(d) => write!(f, "DROP LABEL {}", d.names.join(", ")),
            Statement::AlterVertex(a) => {
                write!(f, "ALTER VERTEX {} {}", a.name, render_attr_action(&a.action))
            }
            Statement::AlterEdge(a) => {
                write!(f, "ALTER EDGE {} {}", a.name, render_attr_action(&a.action))
            }
            Statement::AlterGraph(a) => {
                write!(f, "ALTER GRAPH {} ", a.name)?;
                match &a.action {
                    AlterGraphAction::AddVertex(names) => {
                        write!(f, "ADD VERTEX ({})", names.join(", "))
                    }
                    AlterGraphAction::AddEdge(names) => {
                        write!(f, "ADD EDGE ({})", names.join(", "))
                    }
                    AlterGraphAction::DropVertex { names, cascade } => {
                        write!(f, "DROP VERTEX ({})", names.join(", "))?;
                        if *cascade {
                            f.write_str(" CASCADE")?;
                        }
                        Ok(())
                    }
                    AlterGraphAction::DropEdge(names) => {
                        write!(f, "DROP EDGE ({})", names.join(", "))
                    }
                }
            }
            Statement::UseGraph(u) => write!(f, "USE GRAPH {}", u.name),
        }
    }
}

fn render_attr_action(action: &AlterAttrAction) -> String {
    match action {
        AlterAttrAction::Add(specs) => {
            let rendered: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
            format!("ADD ({})", rendered.join(", "))
        }
        AlterAttrAction::Drop(names) => format!("DROP ({})", names.join(", ")),
    }
}
