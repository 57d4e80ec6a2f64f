//! Validation of CREATE payloads into schema types.

use super::{
    effective_attributes, effective_graph_members, effective_pairs, root_primary_key, Attribute,
    EdgeType, Endpoints, EndpointPair, GraphType, LabelType, PrimaryKey, TypeError, TypeKind,
    TypeRegistry, VertexType, LABEL_ATTRIBUTE,
};
use crate::ast::{AttributeSpec, CreateEdge, CreateLabel, CreateVertex, EndpointSet, MemberSpec};
use crate::datatype::parse_data_type;

/// Prefixes `name` with the current graph scope, when inside one.
pub fn qualify(scope: Option<&str>, name: &str) -> String {
    match scope {
        Some(graph) => format!("{}.{}", graph, name),
        None => name.to_string(),
    }
}

/// Resolves a referenced type name: a plain name inside a graph scope
/// tries the scoped spelling first, then global; dotted names resolve
/// exactly.
pub fn resolve_type_name(
    registry: &TypeRegistry,
    scope: Option<&str>,
    name: &str,
) -> Option<String> {
    if !name.contains('.') {
        if let Some(graph) = scope {
            let scoped = format!("{}.{}", graph, name);
            if registry.contains(&scoped) {
                return Some(scoped);
            }
        }
    }
    if registry.contains(name) {
        Some(name.to_string())
    } else {
        None
    }
}

fn convert_attributes(
    type_name: &str,
    specs: &[AttributeSpec],
    inherited: &[Attribute],
) -> Result<Vec<Attribute>, TypeError> {
    let mut attrs: Vec<Attribute> = Vec::with_capacity(specs.len());
    for spec in specs {
        if spec.name == LABEL_ATTRIBUTE {
            return Err(TypeError::ReservedAttributeName {
                attribute: spec.name.clone(),
            });
        }
        let data_type =
            parse_data_type(&spec.data_type_text).map_err(|e| TypeError::InvalidDataType {
                attribute: spec.name.clone(),
                message: e.message,
            })?;
        if attrs.iter().any(|a| a.name == spec.name) {
            return Err(TypeError::DuplicateAttributeName {
                type_name: type_name.to_string(),
                attribute: spec.name.clone(),
            });
        }
        if inherited.iter().any(|a| a.name == spec.name) {
            return Err(TypeError::AttributeShadowing {
                type_name: type_name.to_string(),
                attribute: spec.name.clone(),
            });
        }
        attrs.push(Attribute {
            name: spec.name.clone(),
            data_type,
            not_null: spec.not_null || spec.inline_primary_key,
            origin: type_name.to_string(),
        });
    }
    Ok(attrs)
}

/// Validates a CREATE VERTEX payload. With an EXTENDS clause the
/// primary key is copied from the root ancestor and the new type only
/// declares its additional attributes.
pub fn build_vertex_type(
    stmt: &CreateVertex,
    registry: &TypeRegistry,
    scope: Option<&str>,
) -> Result<VertexType, TypeError> {
    let name = qualify(scope, &stmt.name);
    if registry.contains(&name) {
        return Err(TypeError::DuplicateType { name });
    }

    let super_name = match &stmt.extends {
        Some(raw) => {
            let resolved = resolve_type_name(registry, scope, raw)
                .filter(|n| registry.vertex(n).is_some())
                .ok_or(TypeError::UnknownSuper { name: raw.clone() })?;
            Some(resolved)
        }
        None => None,
    };

    let inherited = match &super_name {
        Some(s) => effective_attributes(registry, s)?,
        None => Vec::new(),
    };
    let mut own_attributes = convert_attributes(&name, &stmt.attributes, &inherited)?;

    let inline_keys: Vec<String> = stmt
        .attributes
        .iter()
        .filter(|a| a.inline_primary_key)
        .map(|a| a.name.clone())
        .collect();
    let has_designation = !inline_keys.is_empty() || stmt.key_clause.is_some();

    let primary_key = match &super_name {
        Some(s) => {
            if has_designation {
                return Err(TypeError::PrimaryKeyOverride { type_name: name });
            }
            root_primary_key(registry, s)?
        }
        None => {
            if own_attributes.is_empty() {
                return Err(TypeError::NoAttributes { type_name: name });
            }
            if !inline_keys.is_empty() && stmt.key_clause.is_some() {
                return Err(TypeError::MultiplePrimaryKeys { type_name: name });
            }
            match &stmt.key_clause {
                Some(crate::ast::KeyClause::Uuid) => PrimaryKey::Uuid,
                Some(crate::ast::KeyClause::Columns(cols)) => {
                    let mut seen = Vec::new();
                    for col in cols {
                        if seen.contains(col) {
                            return Err(TypeError::DuplicateAttributeName {
                                type_name: name,
                                attribute: col.clone(),
                            });
                        }
                        seen.push(col.clone());
                        let attr = own_attributes
                            .iter_mut()
                            .find(|a| &a.name == col)
                            .ok_or_else(|| TypeError::UnknownAttribute {
                                type_name: name.clone(),
                                attribute: col.clone(),
                            })?;
                        attr.not_null = true;
                    }
                    PrimaryKey::Attributes(cols.clone())
                }
                None => {
                    if inline_keys.is_empty() {
                        return Err(TypeError::MissingPrimaryKey { type_name: name });
                    }
                    PrimaryKey::Attributes(inline_keys)
                }
            }
        }
    };

    Ok(VertexType {
        name,
        super_name,
        own_attributes,
        primary_key,
    })
}

fn resolve_endpoint_set(
    set: &EndpointSet,
    registry: &TypeRegistry,
    scope: Option<&str>,
) -> Result<Endpoints, TypeError> {
    match set {
        EndpointSet::Wildcard => Ok(Endpoints::Wildcard),
        EndpointSet::Named(names) => {
            let mut resolved = Vec::with_capacity(names.len());
            for raw in names {
                let name = resolve_type_name(registry, scope, raw)
                    .filter(|n| registry.vertex(n).is_some())
                    .ok_or(TypeError::UnknownEndpointType { name: raw.clone() })?;
                resolved.push(name);
            }
            Ok(Endpoints::Types(resolved))
        }
    }
}

/// Validates a CREATE EDGE payload. With EXTENDS the pairs, direction,
/// and discriminator come from the super and must not be re-specified.
/// A reverse edge name is recorded here; materializing the twin is the
/// catalog's job.
pub fn build_edge_type(
    stmt: &CreateEdge,
    registry: &TypeRegistry,
    scope: Option<&str>,
) -> Result<EdgeType, TypeError> {
    let name = qualify(scope, &stmt.name);
    if registry.contains(&name) {
        return Err(TypeError::DuplicateType { name });
    }

    let super_name = match &stmt.extends {
        Some(raw) => {
            let resolved = resolve_type_name(registry, scope, raw)
                .filter(|n| registry.edge(n).is_some())
                .ok_or(TypeError::UnknownSuper { name: raw.clone() })?;
            let super_edge = registry.edge(&resolved).expect("checked above");
            if super_edge.directed != stmt.directed {
                return Err(TypeError::DirectionMismatch {
                    type_name: name,
                    super_name: resolved,
                });
            }
            Some(resolved)
        }
        None => None,
    };

    let pairs = if super_name.is_some() {
        if !stmt.pairs.is_empty() {
            return Err(TypeError::PairsOnSubtype { type_name: name });
        }
        Vec::new()
    } else {
        if stmt.pairs.is_empty() {
            return Err(TypeError::MissingEndpointPairs { type_name: name });
        }
        let mut pairs = Vec::with_capacity(stmt.pairs.len());
        for pair in &stmt.pairs {
            pairs.push(EndpointPair {
                from: resolve_endpoint_set(&pair.from, registry, scope)?,
                to: resolve_endpoint_set(&pair.to, registry, scope)?,
            });
        }
        pairs
    };

    let inherited = match &super_name {
        Some(s) => effective_attributes(registry, s)?,
        None => Vec::new(),
    };
    let own_attributes = convert_attributes(&name, &stmt.attributes, &inherited)?;

    let discriminator = match &stmt.discriminator {
        Some(cols) => {
            if super_name.is_some() {
                return Err(TypeError::DiscriminatorOnSubtype { type_name: name });
            }
            let mut seen = Vec::new();
            for col in cols {
                if seen.contains(col) {
                    return Err(TypeError::DuplicateAttributeName {
                        type_name: name,
                        attribute: col.clone(),
                    });
                }
                seen.push(col.clone());
                if !own_attributes.iter().any(|a| &a.name == col) {
                    return Err(TypeError::UnknownAttribute {
                        type_name: name,
                        attribute: col.clone(),
                    });
                }
            }
            Some(cols.clone())
        }
        None => None,
    };

    let reverse_name = match &stmt.reverse_edge {
        Some(raw) => {
            if !stmt.directed {
                return Err(TypeError::ReverseOnUndirected { type_name: name });
            }
            let reverse = qualify(scope, raw);
            if reverse == name {
                return Err(TypeError::InvalidReverseName {
                    type_name: name,
                    reverse,
                });
            }
            Some(reverse)
        }
        None => None,
    };

    Ok(EdgeType {
        name,
        super_name,
        directed: stmt.directed,
        pairs,
        own_attributes,
        discriminator,
        secondary_keys: Vec::new(),
        reverse_name,
    })
}

/// What to do when a graph member edge type names an endpoint vertex
/// type that is not itself a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosurePolicy {
    /// Silently include the endpoint vertex types as members.
    AutoInclude,
    /// Raise [`TypeError::ClosureViolation`].
    Strict,
}

/// A classified member of a new graph type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedMember {
    pub type_name: String,
    pub kind: TypeKind,
    /// True in the OWNS form: the graph gets its own container for
    /// this member.
    pub owned: bool,
    /// True when pulled in by the closure rule rather than listed.
    pub auto_included: bool,
}

/// Validates the member-list form of CREATE GRAPH, classifying each
/// member by registry lookup and enforcing the closure rule over the
/// effective (inherited + own) member set.
pub fn build_graph_type(
    graph_name: &str,
    extends: Option<&str>,
    owns: bool,
    members: &[MemberSpec],
    registry: &TypeRegistry,
    scope: Option<&str>,
    policy: ClosurePolicy,
) -> Result<(GraphType, Vec<ResolvedMember>), TypeError> {
    let name = qualify(scope, graph_name);
    if registry.contains(&name) {
        return Err(TypeError::DuplicateType { name });
    }

    let super_name = match extends {
        Some(raw) => {
            let resolved = resolve_type_name(registry, scope, raw)
                .filter(|n| registry.graph(n).is_some())
                .ok_or(TypeError::UnknownSuper {
                    name: raw.to_string(),
                })?;
            Some(resolved)
        }
        None => None,
    };

    let mut resolved_members: Vec<ResolvedMember> = Vec::new();
    let mut member_vertex_types = Vec::new();
    let mut member_edge_types = Vec::new();
    let mut member_graph_types = Vec::new();
    for member in members {
        let resolved = resolve_type_name(registry, scope, &member.name).ok_or(
            TypeError::UnknownMember {
                name: member.name.clone(),
            },
        )?;
        if resolved_members.iter().any(|m| m.type_name == resolved) {
            continue;
        }
        let kind = registry.get(&resolved).expect("resolved above").kind();
        match kind {
            TypeKind::Vertex => member_vertex_types.push(resolved.clone()),
            TypeKind::Edge => member_edge_types.push(resolved.clone()),
            TypeKind::Graph => {
                if owns {
                    return Err(TypeError::OwnedGraphMember {
                        graph: name,
                        member: resolved,
                    });
                }
                member_graph_types.push(resolved.clone());
            }
            TypeKind::Label => {
                return Err(TypeError::LabelMember {
                    graph: name,
                    label: resolved,
                });
            }
        }
        resolved_members.push(ResolvedMember {
            type_name: resolved,
            kind,
            owned: owns,
            auto_included: false,
        });
    }

    // closure rule over the effective member set
    let inherited = match &super_name {
        Some(s) => effective_graph_members(registry, s)?,
        None => Default::default(),
    };
    let mut vertex_set: Vec<String> = inherited
        .vertex_types
        .iter()
        .chain(member_vertex_types.iter())
        .cloned()
        .collect();
    let effective_edges: Vec<String> = inherited
        .edge_types
        .iter()
        .chain(member_edge_types.iter())
        .cloned()
        .collect();
    for edge_name in &effective_edges {
        for pair in effective_pairs(registry, edge_name)? {
            for side in [&pair.from, &pair.to] {
                let Endpoints::Types(endpoint_types) = side else {
                    continue;
                };
                for endpoint in endpoint_types {
                    if vertex_set.iter().any(|v| v == endpoint) {
                        continue;
                    }
                    match policy {
                        ClosurePolicy::Strict => {
                            return Err(TypeError::ClosureViolation {
                                graph: name,
                                edge: edge_name.clone(),
                                endpoint: endpoint.clone(),
                            });
                        }
                        ClosurePolicy::AutoInclude => {
                            vertex_set.push(endpoint.clone());
                            member_vertex_types.push(endpoint.clone());
                            resolved_members.push(ResolvedMember {
                                type_name: endpoint.clone(),
                                kind: TypeKind::Vertex,
                                owned: owns,
                                auto_included: true,
                            });
                        }
                    }
                }
            }
        }
    }

    Ok((
        GraphType {
            name,
            super_name,
            member_vertex_types,
            member_edge_types,
            member_graph_types,
        },
        resolved_members,
    ))
}

/// Validates a CREATE LABEL payload. Labels live in the global
/// namespace and may extend multiple supers; a name collision between
/// the attribute groups of two supers is an error here.
pub fn build_label_type(
    stmt: &CreateLabel,
    registry: &TypeRegistry,
) -> Result<LabelType, TypeError> {
    let name = stmt.name.clone();
    if registry.contains(&name) {
        return Err(TypeError::DuplicateType { name });
    }

    let mut super_names: Vec<String> = Vec::new();
    for raw in &stmt.extends {
        if registry.label(raw).is_none() {
            return Err(TypeError::UnknownSuper { name: raw.clone() });
        }
        if !super_names.contains(raw) {
            super_names.push(raw.clone());
        }
    }

    // merge supers in declaration order; a duplicate attribute name
    // across two supers' groups is an error
    let mut inherited: Vec<Attribute> = Vec::new();
    for super_name in &super_names {
        for attr in effective_attributes(registry, super_name)? {
            if inherited.iter().any(|a| a.name == attr.name) {
                return Err(TypeError::DuplicateAttributeName {
                    type_name: name,
                    attribute: attr.name,
                });
            }
            inherited.push(attr);
        }
    }

    let own_attributes = convert_attributes(&name, &stmt.attributes, &inherited)?;

    Ok(LabelType {
        name,
        description: stmt.description.clone(),
        super_names,
        own_attributes,
    })
}
