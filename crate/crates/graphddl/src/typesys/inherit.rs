//! Inheritance resolution: effective attributes, endpoint pairs,
//! discriminators, keys, and reverse twins.

use super::{
    Attribute, EdgeType, EndpointPair, PrimaryKey, SchemaType, TypeError, TypeRegistry,
};
use std::collections::HashSet;

/// Walks the single-inheritance chain of a vertex, edge, or graph
/// type, returning names root-first (the type itself last).
fn ancestry<'a>(
    registry: &'a TypeRegistry,
    type_name: &str,
) -> Result<Vec<&'a SchemaType>, TypeError> {
    let mut chain = Vec::new();
    let mut seen = HashSet::new();
    let mut current = type_name.to_string();
    loop {
        if !seen.insert(current.clone()) {
            return Err(TypeError::InheritanceCycle { name: current });
        }
        let ty = registry.get(&current).ok_or(TypeError::UnknownType {
            name: current.clone(),
        })?;
        chain.push(ty);
        let supers = ty.super_names();
        match supers.first() {
            Some(super_name) => current = super_name.to_string(),
            None => break,
        }
    }
    chain.reverse();
    Ok(chain)
}

/// Effective attribute list of a vertex, edge, or label type:
/// ancestor attributes first (root-to-leaf), then own. Each attribute
/// carries its origin. The built-in label attribute is not included.
pub fn effective_attributes(
    registry: &TypeRegistry,
    type_name: &str,
) -> Result<Vec<Attribute>, TypeError> {
    match registry.get(type_name) {
        Some(SchemaType::Vertex(_)) | Some(SchemaType::Edge(_)) => {
            let mut attrs = Vec::new();
            for ty in ancestry(registry, type_name)? {
                match ty {
                    SchemaType::Vertex(v) => attrs.extend(v.own_attributes.iter().cloned()),
                    SchemaType::Edge(e) => attrs.extend(e.own_attributes.iter().cloned()),
                    _ => unreachable!("vertex/edge ancestry stays within its kind"),
                }
            }
            Ok(attrs)
        }
        Some(SchemaType::Label(_)) => {
            let mut attrs = Vec::new();
            let mut visiting = HashSet::new();
            collect_label_attributes(registry, type_name, &mut visiting, &mut attrs)?;
            Ok(attrs)
        }
        _ => Err(TypeError::UnknownType {
            name: type_name.to_string(),
        }),
    }
}

/// Depth-first over label supers in declaration order, supers before
/// own attributes. Duplicate names across supers surface as build
/// errors; this walk just concatenates.
fn collect_label_attributes(
    registry: &TypeRegistry,
    name: &str,
    visiting: &mut HashSet<String>,
    out: &mut Vec<Attribute>,
) -> Result<(), TypeError> {
    if !visiting.insert(name.to_string()) {
        return Err(TypeError::InheritanceCycle {
            name: name.to_string(),
        });
    }
    let label = registry.label(name).ok_or(TypeError::UnknownType {
        name: name.to_string(),
    })?;
    for super_name in &label.super_names {
        collect_label_attributes(registry, super_name, visiting, out)?;
    }
    out.extend(label.own_attributes.iter().cloned());
    visiting.remove(name);
    Ok(())
}

/// The primary key a vertex type shares with its root ancestor.
pub fn root_primary_key(
    registry: &TypeRegistry,
    vertex_name: &str,
) -> Result<PrimaryKey, TypeError> {
    if registry.vertex(vertex_name).is_none() {
        return Err(TypeError::UnknownType {
            name: vertex_name.to_string(),
        });
    }
    let chain = ancestry(registry, vertex_name)?;
    match chain.first() {
        Some(SchemaType::Vertex(root)) => Ok(root.primary_key.clone()),
        _ => Err(TypeError::UnknownType {
            name: vertex_name.to_string(),
        }),
    }
}

/// Effective endpoint pairs of an edge type; subtypes inherit the
/// root's declared pairs.
pub fn effective_pairs(
    registry: &TypeRegistry,
    edge_name: &str,
) -> Result<Vec<EndpointPair>, TypeError> {
    if registry.edge(edge_name).is_none() {
        return Err(TypeError::UnknownType {
            name: edge_name.to_string(),
        });
    }
    for ty in ancestry(registry, edge_name)?.iter().rev() {
        if let SchemaType::Edge(e) = ty {
            if !e.pairs.is_empty() {
                return Ok(e.pairs.clone());
            }
        }
    }
    Ok(Vec::new())
}

/// Effective discriminator of an edge type, own or inherited.
pub fn effective_discriminator(
    registry: &TypeRegistry,
    edge_name: &str,
) -> Result<Option<Vec<String>>, TypeError> {
    if registry.edge(edge_name).is_none() {
        return Err(TypeError::UnknownType {
            name: edge_name.to_string(),
        });
    }
    for ty in ancestry(registry, edge_name)?.iter().rev() {
        if let SchemaType::Edge(e) = ty {
            if let Some(disc) = &e.discriminator {
                return Ok(Some(disc.clone()));
            }
        }
    }
    Ok(None)
}

/// One component of an edge key description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKeyPart {
    SourcePrimaryKey,
    TargetPrimaryKey,
    Attribute(String),
}

/// Key of an edge type: (source pk, target pk) by default, extended
/// by the discriminator attributes when one is declared or inherited.
pub fn effective_edge_key(
    registry: &TypeRegistry,
    edge_name: &str,
) -> Result<Vec<EdgeKeyPart>, TypeError> {
    let mut key = vec![EdgeKeyPart::SourcePrimaryKey, EdgeKeyPart::TargetPrimaryKey];
    if let Some(disc) = effective_discriminator(registry, edge_name)? {
        key.extend(disc.into_iter().map(EdgeKeyPart::Attribute));
    }
    Ok(key)
}

/// Effective member type names of a graph type, inherited members
/// first, deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphMembers {
    pub vertex_types: Vec<String>,
    pub edge_types: Vec<String>,
    pub graph_types: Vec<String>,
}

impl GraphMembers {
    fn push_unique(list: &mut Vec<String>, name: &str) {
        if !list.iter().any(|n| n == name) {
            list.push(name.to_string());
        }
    }
}

pub fn effective_graph_members(
    registry: &TypeRegistry,
    graph_name: &str,
) -> Result<GraphMembers, TypeError> {
    if registry.graph(graph_name).is_none() {
        return Err(TypeError::UnknownType {
            name: graph_name.to_string(),
        });
    }
    let mut members = GraphMembers::default();
    for ty in ancestry(registry, graph_name)? {
        if let SchemaType::Graph(g) = ty {
            for v in &g.member_vertex_types {
                GraphMembers::push_unique(&mut members.vertex_types, v);
            }
            for e in &g.member_edge_types {
                GraphMembers::push_unique(&mut members.edge_types, e);
            }
            for gm in &g.member_graph_types {
                GraphMembers::push_unique(&mut members.graph_types, gm);
            }
        }
    }
    Ok(members)
}

/// Builds the reverse twin of a directed edge type: same attributes
/// and discriminator, every endpoint pair swapped, with `reverse_name`
/// pointing back at the forward type. Applying this twice returns the
/// original pairs and attributes.
pub fn reverse_of(edge: &EdgeType) -> Result<EdgeType, TypeError> {
    if !edge.directed {
        return Err(TypeError::ReverseOnUndirected {
            type_name: edge.name.clone(),
        });
    }
    let reverse_name = edge
        .reverse_name
        .clone()
        .ok_or(TypeError::MissingReverseName {
            type_name: edge.name.clone(),
        })?;
    let mut attributes = edge.own_attributes.clone();
    for attr in &mut attributes {
        if attr.origin == edge.name {
            attr.origin = reverse_name.clone();
        }
    }
    Ok(EdgeType {
        name: reverse_name,
        super_name: None,
        directed: true,
        pairs: edge.pairs.iter().map(EndpointPair::swapped).collect(),
        own_attributes: attributes,
        discriminator: edge.discriminator.clone(),
        secondary_keys: edge.secondary_keys.clone(),
        reverse_name: Some(edge.name.clone()),
    })
}
