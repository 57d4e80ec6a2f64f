//! Deterministic text persistence for the catalog.
//!
//! The format is line-oriented UTF-8 with a version header and two
//! sections, `[types]` and `[objects]`, each holding one record block
//! per entry in name order. Attribute and member lines keep their
//! declaration order. Re-serializing an unchanged catalog is
//! byte-identical; the container id counter is not stored and is
//! rederived as max(owned id) + 1 on load.
//!
//! ```text
//! graphddl-catalog v1
//!
//! [types]
//!
//! vertex person
//!   attr name STRING not_null
//!   attr age INT
//!   key name
//!
//! edge supervise directed
//!   pair person -> person
//!   attr connect_day DATETIME
//!   discriminator connect_day
//!   reverse supervised_by
//!
//! [objects]
//!
//! object person vertex of person container 0
//! ```

use super::{Catalog, MemberRef, SchemaObject};
use crate::datatype::parse_data_type;
use crate::typesys::{
    effective_attributes, effective_pairs, Attribute, EdgeType, Endpoints, EndpointPair,
    GraphType, LabelType, PrimaryKey, SchemaType, TypeError, TypeKind, TypeRegistry, VertexType,
    LABEL_ATTRIBUTE,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

const HEADER: &str = "graphddl-catalog v1";

/// Errors raised by [`load_catalog`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadError {
    /// The document is malformed.
    Format { line: usize, message: String },
    /// The document parsed but violates a catalog invariant.
    Integrity { message: String },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Format { line, message } => {
                write!(f, "line {}: {}", line, message)
            }
            LoadError::Integrity { message } => write!(f, "integrity: {}", message),
        }
    }
}

impl std::error::Error for LoadError {}

fn integrity(message: impl Into<String>) -> LoadError {
    LoadError::Integrity {
        message: message.into(),
    }
}

// ---- writing --------------------------------------------------------

fn quote(value: &str) -> String {
    if value.contains('"') {
        format!("\u{201C}{}\u{201D}", value)
    } else {
        format!("\"{}\"", value)
    }
}

fn write_attr(out: &mut String, attr: &Attribute) {
    out.push_str("  attr ");
    out.push_str(&attr.name);
    out.push(' ');
    out.push_str(&attr.data_type.to_string());
    if attr.not_null {
        out.push_str(" not_null");
    }
    out.push('\n');
}

fn endpoints_text(side: &Endpoints) -> String {
    match side {
        Endpoints::Wildcard => "*".to_string(),
        Endpoints::Types(names) => names.join("|"),
    }
}

fn write_type(out: &mut String, ty: &SchemaType) {
    match ty {
        SchemaType::Vertex(v) => {
            out.push_str(&format!("vertex {}\n", v.name));
            if let Some(s) = &v.super_name {
                out.push_str(&format!("  extends {}\n", s));
            }
            for attr in &v.own_attributes {
                write_attr(out, attr);
            }
            match &v.primary_key {
                PrimaryKey::Attributes(names) => {
                    out.push_str(&format!("  key {}\n", names.join(" ")));
                }
                PrimaryKey::Uuid => out.push_str("  key-uuid\n"),
            }
        }
        SchemaType::Edge(e) => {
            let dir = if e.directed { "directed" } else { "undirected" };
            out.push_str(&format!("edge {} {}\n", e.name, dir));
            if let Some(s) = &e.super_name {
                out.push_str(&format!("  extends {}\n", s));
            }
            for pair in &e.pairs {
                out.push_str(&format!(
                    "  pair {} -> {}\n",
                    endpoints_text(&pair.from),
                    endpoints_text(&pair.to)
                ));
            }
            for attr in &e.own_attributes {
                write_attr(out, attr);
            }
            if let Some(disc) = &e.discriminator {
                out.push_str(&format!("  discriminator {}\n", disc.join(" ")));
            }
            for key in &e.secondary_keys {
                out.push_str(&format!("  secondary-key {}\n", key.join(" ")));
            }
            if let Some(reverse) = &e.reverse_name {
                out.push_str(&format!("  reverse {}\n", reverse));
            }
        }
        SchemaType::Graph(g) => {
            out.push_str(&format!("graph {}\n", g.name));
            if let Some(s) = &g.super_name {
                out.push_str(&format!("  extends {}\n", s));
            }
            for member in &g.member_vertex_types {
                out.push_str(&format!("  member-vertex {}\n", member));
            }
            for member in &g.member_edge_types {
                out.push_str(&format!("  member-edge {}\n", member));
            }
            for member in &g.member_graph_types {
                out.push_str(&format!("  member-graph {}\n", member));
            }
        }
        SchemaType::Label(l) => {
            out.push_str(&format!("label {}\n", l.name));
            if let Some(desc) = &l.description {
                out.push_str(&format!("  description {}\n", quote(desc)));
            }
            if !l.super_names.is_empty() {
                out.push_str(&format!("  extends {}\n", l.super_names.join(" ")));
            }
            for attr in &l.own_attributes {
                write_attr(out, attr);
            }
        }
    }
}

fn write_object(out: &mut String, obj: &SchemaObject) {
    out.push_str(&format!("object {} {} of {}", obj.name, obj.kind, obj.type_ref));
    if let Some(id) = obj.container {
        out.push_str(&format!(" container {}", id));
    }
    out.push('\n');
    for member in &obj.members {
        out.push_str(&format!("  ref {} -> {}\n", member.alias, member.target));
    }
}

/// Serializes a catalog to its canonical text form: types then
/// objects, each sorted by name. Deterministic and byte-stable.
pub fn save_catalog(catalog: &Catalog) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push('\n');
    out.push_str("[types]\n");
    for ty in catalog.types().iter() {
        out.push('\n');
        write_type(&mut out, ty);
    }
    out.push('\n');
    out.push_str("[objects]\n");
    for obj in catalog.objects() {
        out.push('\n');
        write_object(&mut out, obj);
    }
    out
}

// ---- reading --------------------------------------------------------

struct LineReader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        LineReader {
            lines: text.lines().enumerate(),
        }
    }

    /// Next non-blank line as (1-based number, trimmed text).
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.lines.by_ref() {
            let trimmed = raw.trim();
            if !trimmed.is_empty() {
                return Some((idx + 1, trimmed));
            }
        }
        None
    }
}

fn format_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Format {
        line,
        message: message.into(),
    }
}

fn parse_quoted(line: usize, text: &str) -> Result<String, LoadError> {
    let mut chars = text.chars();
    let open = chars
        .next()
        .ok_or_else(|| format_err(line, "expected a quoted string"))?;
    let closes: &[char] = match open {
        '"' => &['"'],
        '\u{201C}' | '\u{201D}' => &['\u{201C}', '\u{201D}'],
        _ => return Err(format_err(line, "expected a quoted string")),
    };
    let rest: String = chars.collect();
    match rest.char_indices().next_back() {
        Some((idx, last)) if closes.contains(&last) => Ok(rest[..idx].to_string()),
        _ => Err(format_err(line, "unterminated quoted string")),
    }
}

fn parse_attr_line(line: usize, rest: &str) -> Result<Attribute, LoadError> {
    let mut parts = rest.split_whitespace();
    let name = parts
        .next()
        .ok_or_else(|| format_err(line, "attr: missing name"))?;
    let type_text = parts
        .next()
        .ok_or_else(|| format_err(line, "attr: missing data type"))?;
    let not_null = match parts.next() {
        None => false,
        Some("not_null") => true,
        Some(other) => return Err(format_err(line, format!("attr: unexpected '{}'", other))),
    };
    let data_type = parse_data_type(type_text)
        .map_err(|e| format_err(line, format!("attr '{}': {}", name, e.message)))?;
    Ok(Attribute {
        name: name.to_string(),
        data_type,
        not_null,
        origin: String::new(), // filled by the caller
    })
}

fn parse_endpoints(line: usize, text: &str) -> Result<Endpoints, LoadError> {
    if text == "*" {
        return Ok(Endpoints::Wildcard);
    }
    let names: Vec<String> = text.split('|').map(str::to_string).collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(format_err(line, "pair: empty endpoint name"));
    }
    Ok(Endpoints::Types(names))
}

#[derive(Default)]
struct TypeDraft {
    kind: Option<TypeKind>,
    name: String,
    directed: bool,
    extends: Vec<String>,
    attrs: Vec<Attribute>,
    key: Option<PrimaryKey>,
    pairs: Vec<EndpointPair>,
    discriminator: Option<Vec<String>>,
    secondary_keys: Vec<Vec<String>>,
    reverse: Option<String>,
    description: Option<String>,
    members_vertex: Vec<String>,
    members_edge: Vec<String>,
    members_graph: Vec<String>,
}

impl TypeDraft {
    fn finish(mut self, line: usize) -> Result<SchemaType, LoadError> {
        let name = self.name.clone();
        for attr in &mut self.attrs {
            attr.origin = name.clone();
        }
        match self.kind {
            Some(TypeKind::Vertex) => {
                if self.extends.len() > 1 {
                    return Err(format_err(line, "vertex: multiple supers"));
                }
                let key = self
                    .key
                    .ok_or_else(|| format_err(line, format!("vertex {}: missing key line", name)))?;
                Ok(SchemaType::Vertex(VertexType {
                    name,
                    super_name: self.extends.pop(),
                    own_attributes: self.attrs,
                    primary_key: key,
                }))
            }
            Some(TypeKind::Edge) => {
                if self.extends.len() > 1 {
                    return Err(format_err(line, "edge: multiple supers"));
                }
                Ok(SchemaType::Edge(EdgeType {
                    name,
                    super_name: self.extends.pop(),
                    directed: self.directed,
                    pairs: self.pairs,
                    own_attributes: self.attrs,
                    discriminator: self.discriminator,
                    secondary_keys: self.secondary_keys,
                    reverse_name: self.reverse,
                }))
            }
            Some(TypeKind::Graph) => {
                if self.extends.len() > 1 {
                    return Err(format_err(line, "graph: multiple supers"));
                }
                Ok(SchemaType::Graph(GraphType {
                    name,
                    super_name: self.extends.pop(),
                    member_vertex_types: self.members_vertex,
                    member_edge_types: self.members_edge,
                    member_graph_types: self.members_graph,
                }))
            }
            Some(TypeKind::Label) => Ok(SchemaType::Label(LabelType {
                name,
                description: self.description,
                super_names: self.extends,
                own_attributes: self.attrs,
            })),
            None => Err(format_err(line, "detail line outside a record")),
        }
    }
}

/// Parses and validates a catalog document produced by
/// [`save_catalog`] (or hand-authored in the same format). All
/// catalog invariants are re-checked.
pub fn load_catalog(text: &str) -> Result<Catalog, LoadError> {
    let mut reader = LineReader::new(text);
    let (line, header) = reader
        .next_line()
        .ok_or_else(|| format_err(1, "empty document"))?;
    if header != HEADER {
        return Err(format_err(
            line,
            format!("bad header; expected '{}'", HEADER),
        ));
    }
    let (line, section) = reader
        .next_line()
        .ok_or_else(|| format_err(line, "missing [types] section"))?;
    if section != "[types]" {
        return Err(format_err(line, "expected [types]"));
    }

    let mut types = TypeRegistry::new();
    let mut objects: BTreeMap<String, SchemaObject> = BTreeMap::new();
    let mut in_types = true;
    let mut draft: Option<(usize, TypeDraft)> = None;
    let mut current_object: Option<String> = None;

    macro_rules! flush_draft {
        () => {
            if let Some((start, d)) = draft.take() {
                let ty = d.finish(start)?;
                if types.contains(ty.name()) {
                    return Err(integrity(format!("duplicate type '{}'", ty.name())));
                }
                types.insert(ty);
            }
        };
    }

    while let Some((line, text)) = reader.next_line() {
        if text == "[objects]" {
            if !in_types {
                return Err(format_err(line, "repeated [objects] section"));
            }
            flush_draft!();
            in_types = false;
            continue;
        }
        let (word, rest) = match text.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (text, ""),
        };
        if in_types {
            match word {
                "vertex" | "edge" | "graph" | "label" => {
                    flush_draft!();
                    let kind = TypeKind::parse(word).expect("matched above");
                    let mut parts = rest.split_whitespace();
                    let name = parts
                        .next()
                        .ok_or_else(|| format_err(line, "missing type name"))?;
                    let mut d = TypeDraft {
                        kind: Some(kind),
                        name: name.to_string(),
                        ..Default::default()
                    };
                    if kind == TypeKind::Edge {
                        match parts.next() {
                            Some("directed") => d.directed = true,
                            Some("undirected") => d.directed = false,
                            _ => {
                                return Err(format_err(
                                    line,
                                    "edge: expected 'directed' or 'undirected'",
                                ))
                            }
                        }
                    }
                    if parts.next().is_some() {
                        return Err(format_err(line, "unexpected trailing text"));
                    }
                    draft = Some((line, d));
                }
                _ => {
                    let Some((_, d)) = draft.as_mut() else {
                        return Err(format_err(line, format!("unexpected line '{}'", text)));
                    };
                    match word {
                        "extends" => {
                            d.extends = rest.split_whitespace().map(str::to_string).collect();
                            if d.extends.is_empty() {
                                return Err(format_err(line, "extends: missing name"));
                            }
                        }
                        "attr" => d.attrs.push(parse_attr_line(line, rest)?),
                        "key" => {
                            let names: Vec<String> =
                                rest.split_whitespace().map(str::to_string).collect();
                            if names.is_empty() {
                                return Err(format_err(line, "key: missing attribute names"));
                            }
                            d.key = Some(PrimaryKey::Attributes(names));
                        }
                        "key-uuid" => d.key = Some(PrimaryKey::Uuid),
                        "pair" => {
                            let (from, to) = rest
                                .split_once("->")
                                .ok_or_else(|| format_err(line, "pair: expected '->'"))?;
                            d.pairs.push(EndpointPair {
                                from: parse_endpoints(line, from.trim())?,
                                to: parse_endpoints(line, to.trim())?,
                            });
                        }
                        "discriminator" => {
                            d.discriminator =
                                Some(rest.split_whitespace().map(str::to_string).collect());
                        }
                        "secondary-key" => {
                            d.secondary_keys
                                .push(rest.split_whitespace().map(str::to_string).collect());
                        }
                        "reverse" => d.reverse = Some(rest.to_string()),
                        "description" => d.description = Some(parse_quoted(line, rest)?),
                        "member-vertex" => d.members_vertex.push(rest.to_string()),
                        "member-edge" => d.members_edge.push(rest.to_string()),
                        "member-graph" => d.members_graph.push(rest.to_string()),
                        _ => {
                            return Err(format_err(line, format!("unknown record line '{}'", word)))
                        }
                    }
                }
            }
        } else {
            match word {
                "object" => {
                    let mut parts = rest.split_whitespace();
                    let name = parts
                        .next()
                        .ok_or_else(|| format_err(line, "object: missing name"))?;
                    let kind = parts
                        .next()
                        .and_then(TypeKind::parse)
                        .ok_or_else(|| format_err(line, "object: missing kind"))?;
                    if parts.next() != Some("of") {
                        return Err(format_err(line, "object: expected 'of'"));
                    }
                    let type_ref = parts
                        .next()
                        .ok_or_else(|| format_err(line, "object: missing type"))?;
                    let container = match parts.next() {
                        None => None,
                        Some("container") => {
                            let id = parts
                                .next()
                                .and_then(|t| t.parse::<u64>().ok())
                                .ok_or_else(|| format_err(line, "object: bad container id"))?;
                            Some(id)
                        }
                        Some(other) => {
                            return Err(format_err(
                                line,
                                format!("object: unexpected '{}'", other),
                            ))
                        }
                    };
                    if objects.contains_key(name) {
                        return Err(integrity(format!("duplicate object '{}'", name)));
                    }
                    objects.insert(
                        name.to_string(),
                        SchemaObject {
                            name: name.to_string(),
                            kind,
                            type_ref: type_ref.to_string(),
                            container,
                            members: Vec::new(),
                        },
                    );
                    current_object = Some(name.to_string());
                }
                "ref" => {
                    let Some(obj_name) = &current_object else {
                        return Err(format_err(line, "ref line outside an object"));
                    };
                    let (alias, target) = rest
                        .split_once("->")
                        .ok_or_else(|| format_err(line, "ref: expected '->'"))?;
                    objects
                        .get_mut(obj_name)
                        .expect("tracked")
                        .members
                        .push(MemberRef {
                            alias: alias.trim().to_string(),
                            target: target.trim().to_string(),
                        });
                }
                _ => return Err(format_err(line, format!("unexpected line '{}'", text))),
            }
        }
    }
    if in_types {
        return Err(format_err(0, "missing [objects] section"));
    }

    let next_container_id = objects
        .values()
        .filter_map(|o| o.container)
        .max()
        .map(|id| id + 1)
        .unwrap_or(0);

    let catalog = Catalog {
        types,
        objects,
        next_container_id,
    };
    validate(&catalog)?;
    Ok(catalog)
}

// ---- validation -----------------------------------------------------

fn type_error(e: TypeError) -> LoadError {
    integrity(e.to_string())
}

fn validate(catalog: &Catalog) -> Result<(), LoadError> {
    let types = catalog.types();

    for ty in types.iter() {
        match ty {
            SchemaType::Vertex(v) => validate_vertex(types, v)?,
            SchemaType::Edge(e) => validate_edge(types, e)?,
            SchemaType::Graph(g) => validate_graph(types, g)?,
            SchemaType::Label(l) => validate_label(types, l)?,
        }
        // effective attribute lists must exist (acyclic) and be
        // duplicate-free
        if !matches!(ty, SchemaType::Graph(_)) {
            let attrs = effective_attributes(types, ty.name()).map_err(type_error)?;
            let mut seen = BTreeSet::new();
            for attr in &attrs {
                if attr.name == LABEL_ATTRIBUTE {
                    return Err(integrity(format!(
                        "type '{}': attribute name '{}' is reserved",
                        ty.name(),
                        LABEL_ATTRIBUTE
                    )));
                }
                if !seen.insert(attr.name.clone()) {
                    return Err(integrity(format!(
                        "type '{}': duplicate effective attribute '{}'",
                        ty.name(),
                        attr.name
                    )));
                }
            }
        }
    }

    let mut containers = BTreeSet::new();
    for obj in catalog.objects() {
        let ty = types
            .get(&obj.type_ref)
            .ok_or_else(|| integrity(format!("object '{}': unknown type '{}'", obj.name, obj.type_ref)))?;
        if ty.kind() != obj.kind {
            return Err(integrity(format!(
                "object '{}' has kind {} but its type '{}' is a {} type",
                obj.name,
                obj.kind,
                obj.type_ref,
                ty.kind()
            )));
        }
        match obj.kind {
            TypeKind::Vertex | TypeKind::Edge => {
                if obj.container.is_none() {
                    return Err(integrity(format!(
                        "{} object '{}' owns no container",
                        obj.kind, obj.name
                    )));
                }
            }
            TypeKind::Label => {
                if obj.container.is_some() {
                    return Err(integrity(format!(
                        "label object '{}' cannot own a container",
                        obj.name
                    )));
                }
            }
            TypeKind::Graph => {}
        }
        if let Some(id) = obj.container {
            if !containers.insert(id) {
                return Err(integrity(format!("duplicate container id {}", id)));
            }
        }
        if obj.kind != TypeKind::Graph && !obj.members.is_empty() {
            return Err(integrity(format!(
                "{} object '{}' cannot have members",
                obj.kind, obj.name
            )));
        }
        let mut aliases = BTreeSet::new();
        for member in &obj.members {
            if !member.alias.starts_with(&format!("{}.", obj.name)) {
                return Err(integrity(format!(
                    "object '{}': member alias '{}' is outside its namespace",
                    obj.name, member.alias
                )));
            }
            if !aliases.insert(member.alias.clone()) {
                return Err(integrity(format!(
                    "object '{}': duplicate member alias '{}'",
                    obj.name, member.alias
                )));
            }
            if catalog.object(&member.target).is_none() {
                return Err(integrity(format!(
                    "object '{}': member '{}' points at missing object '{}'",
                    obj.name, member.alias, member.target
                )));
            }
        }
    }

    Ok(())
}

fn find<'a>(types: &'a TypeRegistry, name: &str) -> Result<&'a SchemaType, LoadError> {
    types
        .get(name)
        .ok_or_else(|| integrity(format!("unknown type '{}'", name)))
}

fn validate_vertex(types: &TypeRegistry, v: &VertexType) -> Result<(), LoadError> {
    if let Some(super_name) = &v.super_name {
        if types.vertex(super_name).is_none() {
            return Err(integrity(format!(
                "vertex '{}': super '{}' is not a vertex type",
                v.name, super_name
            )));
        }
        let root_key =
            crate::typesys::root_primary_key(types, &v.name).map_err(type_error)?;
        if root_key != v.primary_key {
            return Err(integrity(format!(
                "vertex '{}': primary key differs from its root ancestor's",
                v.name
            )));
        }
    } else {
        if v.own_attributes.is_empty() {
            return Err(integrity(format!("vertex '{}' has no attributes", v.name)));
        }
        if let PrimaryKey::Attributes(names) = &v.primary_key {
            if names.is_empty() {
                return Err(integrity(format!("vertex '{}' has an empty key", v.name)));
            }
            for key_attr in names {
                let attr = v
                    .own_attributes
                    .iter()
                    .find(|a| &a.name == key_attr)
                    .ok_or_else(|| {
                        integrity(format!(
                            "vertex '{}': key attribute '{}' does not exist",
                            v.name, key_attr
                        ))
                    })?;
                if !attr.not_null {
                    return Err(integrity(format!(
                        "vertex '{}': key attribute '{}' must be not_null",
                        v.name, key_attr
                    )));
                }
            }
        }
    }
    if let DataTypeBound::Bad(attr) = check_varchar_bounds(&v.own_attributes) {
        return Err(integrity(format!(
            "vertex '{}': attribute '{}' has a zero-length VARCHAR",
            v.name, attr
        )));
    }
    Ok(())
}

enum DataTypeBound {
    Ok,
    Bad(String),
}

fn check_varchar_bounds(attrs: &[Attribute]) -> DataTypeBound {
    fn bad(ty: &crate::datatype::DataType) -> bool {
        use crate::datatype::DataType::*;
        match ty {
            Varchar(0) => true,
            Map(k, v) => bad(k) || bad(v),
            List(t) | Set(t) | Order(t) => bad(t),
            _ => false,
        }
    }
    for attr in attrs {
        if bad(&attr.data_type) {
            return DataTypeBound::Bad(attr.name.clone());
        }
    }
    DataTypeBound::Ok
}

fn validate_edge(types: &TypeRegistry, e: &EdgeType) -> Result<(), LoadError> {
    if let Some(super_name) = &e.super_name {
        let super_edge = types.edge(super_name).ok_or_else(|| {
            integrity(format!(
                "edge '{}': super '{}' is not an edge type",
                e.name, super_name
            ))
        })?;
        if super_edge.directed != e.directed {
            return Err(integrity(format!(
                "edge '{}': direction differs from its super '{}'",
                e.name, super_name
            )));
        }
        if !e.pairs.is_empty() {
            return Err(integrity(format!(
                "edge subtype '{}' must not declare its own pairs",
                e.name
            )));
        }
        if e.discriminator.is_some() {
            return Err(integrity(format!(
                "edge subtype '{}' must not declare its own discriminator",
                e.name
            )));
        }
    } else if e.pairs.is_empty() {
        return Err(integrity(format!("edge '{}' declares no pairs", e.name)));
    }
    for pair in &e.pairs {
        for side in [&pair.from, &pair.to] {
            if let Endpoints::Types(names) = side {
                if names.is_empty() {
                    return Err(integrity(format!("edge '{}': empty endpoint set", e.name)));
                }
                for name in names {
                    if types.vertex(name).is_none() {
                        return Err(integrity(format!(
                            "edge '{}': endpoint '{}' is not a vertex type",
                            e.name, name
                        )));
                    }
                }
            }
        }
    }
    let effective = effective_attributes(types, &e.name).map_err(type_error)?;
    if let Some(disc) = &e.discriminator {
        for col in disc {
            if !effective.iter().any(|a| &a.name == col) {
                return Err(integrity(format!(
                    "edge '{}': discriminator attribute '{}' does not exist",
                    e.name, col
                )));
            }
        }
    }
    for key in &e.secondary_keys {
        for col in key {
            if !effective.iter().any(|a| &a.name == col) {
                return Err(integrity(format!(
                    "edge '{}': secondary key attribute '{}' does not exist",
                    e.name, col
                )));
            }
        }
    }
    if let Some(reverse) = &e.reverse_name {
        if !e.directed {
            return Err(integrity(format!(
                "undirected edge '{}' cannot have a reverse edge",
                e.name
            )));
        }
        let twin = types.edge(reverse).ok_or_else(|| {
            integrity(format!(
                "edge '{}': reverse twin '{}' is missing",
                e.name, reverse
            ))
        })?;
        if twin.reverse_name.as_deref() != Some(e.name.as_str()) {
            return Err(integrity(format!(
                "edge '{}': reverse twin '{}' does not point back",
                e.name, reverse
            )));
        }
        let forward_pairs = effective_pairs(types, &e.name).map_err(type_error)?;
        let twin_pairs = effective_pairs(types, reverse).map_err(type_error)?;
        let swapped: Vec<EndpointPair> =
            forward_pairs.iter().map(EndpointPair::swapped).collect();
        if twin_pairs != swapped {
            return Err(integrity(format!(
                "edge '{}': reverse twin '{}' has mismatched pairs",
                e.name, reverse
            )));
        }
    }
    if let DataTypeBound::Bad(attr) = check_varchar_bounds(&e.own_attributes) {
        return Err(integrity(format!(
            "edge '{}': attribute '{}' has a zero-length VARCHAR",
            e.name, attr
        )));
    }
    Ok(())
}

fn validate_graph(types: &TypeRegistry, g: &GraphType) -> Result<(), LoadError> {
    if let Some(super_name) = &g.super_name {
        if types.graph(super_name).is_none() {
            return Err(integrity(format!(
                "graph '{}': super '{}' is not a graph type",
                g.name, super_name
            )));
        }
    }
    for member in &g.member_vertex_types {
        if types.vertex(member).is_none() {
            return Err(integrity(format!(
                "graph '{}': member '{}' is not a vertex type",
                g.name, member
            )));
        }
    }
    for member in &g.member_edge_types {
        if types.edge(member).is_none() {
            return Err(integrity(format!(
                "graph '{}': member '{}' is not an edge type",
                g.name, member
            )));
        }
    }
    for member in &g.member_graph_types {
        if types.graph(member).is_none() {
            return Err(integrity(format!(
                "graph '{}': member '{}' is not a graph type",
                g.name, member
            )));
        }
    }
    // the closure rule, strictly: the file must already be closed
    let members =
        crate::typesys::effective_graph_members(types, &g.name).map_err(type_error)?;
    for edge_name in &members.edge_types {
        for pair in effective_pairs(types, edge_name).map_err(type_error)? {
            for side in [&pair.from, &pair.to] {
                if let Endpoints::Types(endpoint_types) = side {
                    for endpoint in endpoint_types {
                        if !members.vertex_types.contains(endpoint) {
                            return Err(integrity(format!(
                                "graph '{}': edge '{}' endpoint '{}' is not a member",
                                g.name, edge_name, endpoint
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn validate_label(types: &TypeRegistry, l: &LabelType) -> Result<(), LoadError> {
    for super_name in &l.super_names {
        match find(types, super_name)? {
            SchemaType::Label(_) => {}
            _ => {
                return Err(integrity(format!(
                    "label '{}': super '{}' is not a label type",
                    l.name, super_name
                )));
            }
        }
    }
    Ok(())
}
