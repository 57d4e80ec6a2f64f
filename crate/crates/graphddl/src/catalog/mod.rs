//! The schema catalog: named schema objects bound to types and
//! storage containers, executed against by DDL statements.
//!
//! A CREATE makes both a type and a schema object. Top-level objects
//! use bare names; objects created inside a `USE GRAPH g` scope get
//! dotted names (`g.name`). Graph objects track their members as
//! (alias, target) references: an owned member's alias equals its
//! target (a real child object such as `G2.A`), a referenced member
//! points at an object elsewhere in the catalog.

mod describe;
mod exec;
mod persist;

pub use persist::{load_catalog, save_catalog, LoadError};

use crate::typesys::{TypeError, TypeKind, TypeRegistry};
use std::collections::BTreeMap;
use std::fmt;

/// Opaque id of an owned storage container.
pub type ContainerId = u64;

/// One member slot of a graph object: the dotted alias under the
/// graph, and the qualified name of the object it designates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberRef {
    pub alias: String,
    pub target: String,
}

/// A named catalog entry binding a type to an owned or referenced
/// storage container.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaObject {
    /// Globally unique, dot-chained for graph-scoped objects.
    pub name: String,
    pub kind: TypeKind,
    /// Name of the schema type this object instantiates.
    pub type_ref: String,
    /// Owned storage container, if any. Label objects and graph
    /// objects built purely from references own none.
    pub container: Option<ContainerId>,
    /// Members of a graph object; empty for other kinds.
    pub members: Vec<MemberRef>,
}

impl SchemaObject {
    pub fn member_target(&self, alias: &str) -> Option<&str> {
        self.members
            .iter()
            .find(|m| m.alias == alias)
            .map(|m| m.target.as_str())
    }
}

/// Execution context: the current graph scope set by USE GRAPH.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub current_graph: Option<String>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Outcome of one executed statement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExecResult {
    pub created: Vec<String>,
    pub dropped: Vec<String>,
    pub modified: Vec<String>,
    pub messages: Vec<String>,
}

impl ExecResult {
    /// One-line summary for display.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.created.is_empty() {
            parts.push(format!("created {}", self.created.join(", ")));
        }
        if !self.dropped.is_empty() {
            parts.push(format!("dropped {}", self.dropped.join(", ")));
        }
        if !self.modified.is_empty() {
            parts.push(format!("modified {}", self.modified.join(", ")));
        }
        if parts.is_empty() {
            self.messages.join("; ")
        } else {
            parts.join("; ")
        }
    }
}

/// Errors raised while executing a statement. A failed statement
/// leaves the catalog unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExecError {
    Type(TypeError),
    UnknownObject { name: String, kind: TypeKind },
    DuplicateObject { name: String },
    UnknownGraph { name: String },
    UnknownMember { graph: String, name: String },
    ReferencedByEdge { vertex: String, edge: String },
    ReferencedByGraph { name: String, referrer: String },
    HasSubtypes { name: String, subtype: String },
    InheritedMember { graph: String, member: String, origin: String },
    DuplicateAttribute { type_name: String, attribute: String },
    UnknownAttribute { type_name: String, attribute: String },
    InheritedAttribute { type_name: String, attribute: String, origin: String },
    PrimaryKeyAttribute { type_name: String, attribute: String },
    DiscriminatorAttribute { type_name: String, attribute: String },
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExecError::*;
        match self {
            Type(e) => e.fmt(f),
            UnknownObject { name, kind } => {
                write!(f, "no {} schema object named '{}'", kind, name)
            }
            DuplicateObject { name } => {
                write!(f, "schema object '{}' already exists", name)
            }
            UnknownGraph { name } => write!(f, "no graph named '{}'", name),
            UnknownMember { graph, name } => {
                write!(f, "graph '{}': unknown member '{}'", graph, name)
            }
            ReferencedByEdge { vertex, edge } => write!(
                f,
                "vertex type '{}' is referenced by edge type '{}'; drop it with CASCADE",
                vertex, edge
            ),
            ReferencedByGraph { name, referrer } => write!(
                f,
                "'{}' is referenced by graph '{}'",
                name, referrer
            ),
            HasSubtypes { name, subtype } => write!(
                f,
                "'{}' has subtypes (e.g. '{}'); drop them first",
                name, subtype
            ),
            InheritedMember {
                graph,
                member,
                origin,
            } => write!(
                f,
                "graph '{}' inherits member '{}' from '{}'; it cannot be changed here",
                graph, member, origin
            ),
            DuplicateAttribute {
                type_name,
                attribute,
            } => write!(
                f,
                "attribute '{}' already exists on '{}' or a descendant",
                attribute, type_name
            ),
            UnknownAttribute {
                type_name,
                attribute,
            } => write!(
                f,
                "type '{}' has no attribute named '{}'",
                type_name, attribute
            ),
            InheritedAttribute {
                type_name,
                attribute,
                origin,
            } => write!(
                f,
                "attribute '{}' of '{}' is inherited from '{}' and cannot be changed here",
                attribute, type_name, origin
            ),
            PrimaryKeyAttribute {
                type_name,
                attribute,
            } => write!(
                f,
                "attribute '{}' is part of the primary key of '{}'",
                attribute, type_name
            ),
            DiscriminatorAttribute {
                type_name,
                attribute,
            } => write!(
                f,
                "attribute '{}' is the discriminator of '{}'",
                attribute, type_name
            ),
        }
    }
}

impl std::error::Error for ExecError {}

impl From<TypeError> for ExecError {
    fn from(e: TypeError) -> Self {
        ExecError::Type(e)
    }
}

/// One catalog entry, as enumerated by introspection: a type or a
/// schema object with its reference structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogEntry {
    Type {
        name: String,
        kind: TypeKind,
    },
    Object {
        name: String,
        kind: TypeKind,
        type_ref: String,
        refs: Vec<(String, String)>,
    },
}

/// The global registry of schema types and schema objects.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    types: TypeRegistry,
    objects: BTreeMap<String, SchemaObject>,
    next_container_id: ContainerId,
}

/// Equality is over persistent contents. The container id counter is
/// derived state (max live id + 1 after a load) and takes no part.
impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.types == other.types && self.objects == other.objects
    }
}

impl Eq for Catalog {}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn types(&self) -> &TypeRegistry {
        &self.types
    }

    pub fn object(&self, name: &str) -> Option<&SchemaObject> {
        self.objects.get(name)
    }

    /// Iterates objects in name order.
    pub fn objects(&self) -> impl Iterator<Item = &SchemaObject> {
        self.objects.values()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty() && self.objects.is_empty()
    }

    /// All catalog entries (types then objects, each in name order).
    pub fn entries(&self) -> Vec<CatalogEntry> {
        let mut entries = Vec::new();
        for ty in self.types.iter() {
            entries.push(CatalogEntry::Type {
                name: ty.name().to_string(),
                kind: ty.kind(),
            });
        }
        for obj in self.objects.values() {
            entries.push(CatalogEntry::Object {
                name: obj.name.clone(),
                kind: obj.kind,
                type_ref: obj.type_ref.clone(),
                refs: obj
                    .members
                    .iter()
                    .map(|m| (m.alias.clone(), m.target.clone()))
                    .collect(),
            });
        }
        entries
    }
}
