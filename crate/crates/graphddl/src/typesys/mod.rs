//! The four-kind schema type system: vertex, edge, graph, and label
//! types, with inheritance.
//!
//! Vertex, edge, and graph types support single inheritance; labels
//! may extend multiple supers. Subtypes inherit attributes (and for
//! edges: endpoint pairs, direction, and discriminator) from their
//! supers; inherited parts are stored only on the declaring type and
//! resolved on demand, so a change to a supertype is visible in every
//! descendant immediately.

mod build;
mod inherit;

pub use build::{
    build_edge_type, build_graph_type, build_label_type, build_vertex_type, qualify,
    resolve_type_name, ClosurePolicy, ResolvedMember,
};
pub use inherit::{
    effective_attributes, effective_discriminator, effective_edge_key, effective_graph_members,
    effective_pairs, reverse_of, root_primary_key, EdgeKeyPart, GraphMembers,
};

use crate::datatype::DataType;
use std::collections::BTreeMap;
use std::fmt;

/// Name of the built-in label attribute present on every vertex,
/// edge, and graph type. It is implicit: never part of
/// `own_attributes` and not user-declarable.
pub const LABEL_ATTRIBUTE: &str = "_label";

/// The implicit label attribute carried by every vertex, edge, and
/// graph type.
pub fn label_attribute(origin: &str) -> Attribute {
    Attribute {
        name: LABEL_ATTRIBUTE.to_string(),
        data_type: DataType::Set(Box::new(DataType::String)),
        not_null: false,
        origin: origin.to_string(),
    }
}

/// A named, typed attribute, tagged with the type that declared it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub data_type: DataType,
    pub not_null: bool,
    /// Name of the type that declared this attribute (self or an
    /// ancestor).
    pub origin: String,
}

/// Primary key of a vertex type: named attributes or the auto-assigned
/// UUID key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimaryKey {
    Attributes(Vec<String>),
    Uuid,
}

impl fmt::Display for PrimaryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimaryKey::Attributes(names) => f.write_str(&names.join(", ")),
            PrimaryKey::Uuid => f.write_str("UUID"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexType {
    pub name: String,
    pub super_name: Option<String>,
    pub own_attributes: Vec<Attribute>,
    /// For subtypes this is a copy of the root ancestor's key.
    pub primary_key: PrimaryKey,
}

impl VertexType {
    pub fn has_label_attribute(&self) -> bool {
        true
    }
}

/// One side of an endpoint pair: resolved vertex type names or a
/// wildcard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoints {
    Wildcard,
    Types(Vec<String>),
}

impl Endpoints {
    pub fn mentions(&self, vertex_type: &str) -> bool {
        match self {
            Endpoints::Wildcard => false,
            Endpoints::Types(names) => names.iter().any(|n| n == vertex_type),
        }
    }
}

impl fmt::Display for Endpoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoints::Wildcard => f.write_str("*"),
            Endpoints::Types(names) => f.write_str(&names.join(" | ")),
        }
    }
}

/// A (source, target) vertex type pair of an edge type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointPair {
    pub from: Endpoints,
    pub to: Endpoints,
}

impl EndpointPair {
    pub fn mentions(&self, vertex_type: &str) -> bool {
        self.from.mentions(vertex_type) || self.to.mentions(vertex_type)
    }

    pub fn swapped(&self) -> EndpointPair {
        EndpointPair {
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeType {
    pub name: String,
    pub super_name: Option<String>,
    pub directed: bool,
    /// Declared pairs; empty on subtypes, which inherit the super's.
    pub pairs: Vec<EndpointPair>,
    pub own_attributes: Vec<Attribute>,
    /// Declared discriminator; None on subtypes, which inherit it.
    pub discriminator: Option<Vec<String>>,
    /// Optional secondary key attribute sets. Recorded and validated,
    /// not otherwise used.
    pub secondary_keys: Vec<Vec<String>>,
    /// Name of the reverse twin edge type, when one exists. The twin's
    /// own `reverse_name` points back here.
    pub reverse_name: Option<String>,
}

impl EdgeType {
    pub fn has_label_attribute(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphType {
    pub name: String,
    pub super_name: Option<String>,
    pub member_vertex_types: Vec<String>,
    pub member_edge_types: Vec<String>,
    pub member_graph_types: Vec<String>,
}

impl GraphType {
    pub fn has_label_attribute(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelType {
    pub name: String,
    pub description: Option<String>,
    /// Labels support multiple inheritance; the supers relation over
    /// all labels must stay acyclic.
    pub super_names: Vec<String>,
    pub own_attributes: Vec<Attribute>,
}

/// Which of the four kinds a type (or schema object) is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeKind {
    Vertex,
    Edge,
    Graph,
    Label,
}

impl TypeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeKind::Vertex => "vertex",
            TypeKind::Edge => "edge",
            TypeKind::Graph => "graph",
            TypeKind::Label => "label",
        }
    }

    pub fn parse(text: &str) -> Option<TypeKind> {
        match text {
            "vertex" => Some(TypeKind::Vertex),
            "edge" => Some(TypeKind::Edge),
            "graph" => Some(TypeKind::Graph),
            "label" => Some(TypeKind::Label),
            _ => None,
        }
    }
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Any of the four schema types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaType {
    Vertex(VertexType),
    Edge(EdgeType),
    Graph(GraphType),
    Label(LabelType),
}

impl SchemaType {
    pub fn name(&self) -> &str {
        match self {
            SchemaType::Vertex(t) => &t.name,
            SchemaType::Edge(t) => &t.name,
            SchemaType::Graph(t) => &t.name,
            SchemaType::Label(t) => &t.name,
        }
    }

    pub fn kind(&self) -> TypeKind {
        match self {
            SchemaType::Vertex(_) => TypeKind::Vertex,
            SchemaType::Edge(_) => TypeKind::Edge,
            SchemaType::Graph(_) => TypeKind::Graph,
            SchemaType::Label(_) => TypeKind::Label,
        }
    }

    /// Direct super type names (zero or one, except labels).
    pub fn super_names(&self) -> Vec<&str> {
        match self {
            SchemaType::Vertex(t) => t.super_name.iter().map(String::as_str).collect(),
            SchemaType::Edge(t) => t.super_name.iter().map(String::as_str).collect(),
            SchemaType::Graph(t) => t.super_name.iter().map(String::as_str).collect(),
            SchemaType::Label(t) => t.super_names.iter().map(String::as_str).collect(),
        }
    }
}

/// All schema types known to a catalog, keyed by qualified name.
/// Names are unique across the four kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeRegistry {
    types: BTreeMap<String, SchemaType>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.types.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Option<&SchemaType> {
        self.types.get(name)
    }

    pub fn insert(&mut self, ty: SchemaType) {
        self.types.insert(ty.name().to_string(), ty);
    }

    pub fn remove(&mut self, name: &str) -> Option<SchemaType> {
        self.types.remove(name)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Iterates types in name order.
    pub fn iter(&self) -> impl Iterator<Item = &SchemaType> {
        self.types.values()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut SchemaType> {
        self.types.values_mut()
    }

    pub fn vertex(&self, name: &str) -> Option<&VertexType> {
        match self.types.get(name) {
            Some(SchemaType::Vertex(t)) => Some(t),
            _ => None,
        }
    }

    pub fn edge(&self, name: &str) -> Option<&EdgeType> {
        match self.types.get(name) {
            Some(SchemaType::Edge(t)) => Some(t),
            _ => None,
        }
    }

    pub fn edge_mut(&mut self, name: &str) -> Option<&mut EdgeType> {
        match self.types.get_mut(name) {
            Some(SchemaType::Edge(t)) => Some(t),
            _ => None,
        }
    }

    pub fn vertex_mut(&mut self, name: &str) -> Option<&mut VertexType> {
        match self.types.get_mut(name) {
            Some(SchemaType::Vertex(t)) => Some(t),
            _ => None,
        }
    }

    pub fn graph(&self, name: &str) -> Option<&GraphType> {
        match self.types.get(name) {
            Some(SchemaType::Graph(t)) => Some(t),
            _ => None,
        }
    }

    pub fn graph_mut(&mut self, name: &str) -> Option<&mut GraphType> {
        match self.types.get_mut(name) {
            Some(SchemaType::Graph(t)) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self, name: &str) -> Option<&LabelType> {
        match self.types.get(name) {
            Some(SchemaType::Label(t)) => Some(t),
            _ => None,
        }
    }

    /// Names of types that directly extend `name`, in name order.
    pub fn subtypes_of(&self, name: &str) -> Vec<&str> {
        self.types
            .values()
            .filter(|t| t.super_names().contains(&name))
            .map(|t| t.name())
            .collect()
    }
}

/// Validation errors raised while building or resolving types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeError {
    DuplicateType { name: String },
    UnknownSuper { name: String },
    UnknownType { name: String },
    MissingPrimaryKey { type_name: String },
    MultiplePrimaryKeys { type_name: String },
    PrimaryKeyOverride { type_name: String },
    AttributeShadowing { type_name: String, attribute: String },
    DuplicateAttributeName { type_name: String, attribute: String },
    UnknownAttribute { type_name: String, attribute: String },
    ReservedAttributeName { attribute: String },
    InvalidDataType { attribute: String, message: String },
    NoAttributes { type_name: String },
    UnknownEndpointType { name: String },
    MissingEndpointPairs { type_name: String },
    PairsOnSubtype { type_name: String },
    DiscriminatorOnSubtype { type_name: String },
    DirectionMismatch { type_name: String, super_name: String },
    ReverseOnUndirected { type_name: String },
    MissingReverseName { type_name: String },
    InvalidReverseName { type_name: String, reverse: String },
    UnknownMember { name: String },
    LabelMember { graph: String, label: String },
    OwnedGraphMember { graph: String, member: String },
    ClosureViolation { graph: String, edge: String, endpoint: String },
    InheritanceCycle { name: String },
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TypeError::*;
        match self {
            DuplicateType { name } => write!(f, "type '{}' already exists", name),
            UnknownSuper { name } => write!(f, "unknown super type '{}'", name),
            UnknownType { name } => write!(f, "unknown type '{}'", name),
            MissingPrimaryKey { type_name } => {
                write!(f, "vertex type '{}' declares no primary key", type_name)
            }
            MultiplePrimaryKeys { type_name } => {
                write!(f, "vertex type '{}' declares more than one primary key", type_name)
            }
            PrimaryKeyOverride { type_name } => write!(
                f,
                "subtype '{}' cannot declare its own primary key; it shares the root ancestor's",
                type_name
            ),
            AttributeShadowing {
                type_name,
                attribute,
            } => write!(
                f,
                "attribute '{}' of '{}' shadows an inherited attribute",
                attribute, type_name
            ),
            DuplicateAttributeName {
                type_name,
                attribute,
            } => write!(
                f,
                "duplicate attribute name '{}' in type '{}'",
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
            ReservedAttributeName { attribute } => write!(
                f,
                "attribute name '{}' is reserved for the built-in label attribute",
                attribute
            ),
            InvalidDataType { attribute, message } => {
                write!(f, "attribute '{}': {}", attribute, message)
            }
            NoAttributes { type_name } => write!(
                f,
                "vertex type '{}' must declare at least one attribute",
                type_name
            ),
            UnknownEndpointType { name } => {
                write!(f, "unknown endpoint vertex type '{}'", name)
            }
            MissingEndpointPairs { type_name } => write!(
                f,
                "edge type '{}' declares no endpoint pairs",
                type_name
            ),
            PairsOnSubtype { type_name } => write!(
                f,
                "edge subtype '{}' cannot re-specify FROM/TO pairs; they are inherited",
                type_name
            ),
            DiscriminatorOnSubtype { type_name } => write!(
                f,
                "edge subtype '{}' cannot re-specify a discriminator; it is inherited",
                type_name
            ),
            DirectionMismatch {
                type_name,
                super_name,
            } => write!(
                f,
                "edge subtype '{}' must have the same direction as its super '{}'",
                type_name, super_name
            ),
            ReverseOnUndirected { type_name } => write!(
                f,
                "edge type '{}' is undirected and cannot have a reverse edge",
                type_name
            ),
            MissingReverseName { type_name } => {
                write!(f, "edge type '{}' declares no reverse edge name", type_name)
            }
            InvalidReverseName { type_name, reverse } => write!(
                f,
                "reverse edge name '{}' must differ from the edge type name '{}'",
                reverse, type_name
            ),
            UnknownMember { name } => write!(f, "unknown member '{}'", name),
            LabelMember { graph, label } => write!(
                f,
                "label '{}' cannot be a member of graph '{}'",
                label, graph
            ),
            OwnedGraphMember { graph, member } => write!(
                f,
                "graph '{}' cannot own graph member '{}'; only vertex and edge members can be owned",
                graph, member
            ),
            ClosureViolation {
                graph,
                edge,
                endpoint,
            } => write!(
                f,
                "graph '{}' includes edge type '{}' but not its endpoint vertex type '{}'",
                graph, edge, endpoint
            ),
            InheritanceCycle { name } => {
                write!(f, "inheritance cycle involving type '{}'", name)
            }
        }
    }
}

impl std::error::Error for TypeError {}
