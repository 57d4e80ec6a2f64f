//! Human-readable catalog introspection, shared by the CLI's
//! `describe` and `list` commands.

use super::Catalog;
use crate::typesys::{
    effective_attributes, effective_discriminator, effective_edge_key, effective_graph_members,
    effective_pairs, Attribute, EdgeKeyPart, PrimaryKey, SchemaType, TypeKind,
};
use std::fmt::Write;

fn push_attr_lines(out: &mut String, type_name: &str, attrs: &[Attribute]) {
    let _ = writeln!(out, "  attributes:");
    for attr in attrs {
        let mut line = format!("    {} {}", attr.name, attr.data_type);
        if attr.not_null {
            line.push_str(" NOT NULL");
        }
        if attr.origin != type_name {
            line.push_str(&format!(" (from {})", attr.origin));
        }
        out.push_str(&line);
        out.push('\n');
    }
}

impl Catalog {
    /// Sorted names of the schema objects of one kind.
    pub fn list(&self, kind: TypeKind) -> Vec<String> {
        self.objects()
            .filter(|o| o.kind == kind)
            .map(|o| o.name.clone())
            .collect()
    }

    /// Describes a schema object or type by name, or None when the
    /// name resolves to neither.
    pub fn describe(&self, name: &str) -> Option<String> {
        let mut out = String::new();
        if let Some(obj) = self.object(name) {
            let _ = writeln!(
                out,
                "schema object {} of {} type {}",
                obj.name, obj.kind, obj.type_ref
            );
            if let Some(id) = obj.container {
                let _ = writeln!(out, "  container: {}", id);
            }
            if !obj.members.is_empty() {
                let _ = writeln!(out, "  members:");
                for member in &obj.members {
                    let _ = writeln!(out, "    {} -> {}", member.alias, member.target);
                }
            }
            out.push_str(&self.describe_type(&obj.type_ref).unwrap_or_default());
            return Some(out);
        }
        self.describe_type(name)
    }

    fn describe_type(&self, name: &str) -> Option<String> {
        let ty = self.types().get(name)?;
        let mut out = String::new();
        match ty {
            SchemaType::Vertex(v) => {
                let _ = write!(out, "vertex type {}", v.name);
                if let Some(s) = &v.super_name {
                    let _ = write!(out, " extends {}", s);
                }
                out.push('\n');
                match &v.primary_key {
                    PrimaryKey::Attributes(names) => {
                        let _ = writeln!(out, "  primary key: {}", names.join(", "));
                    }
                    PrimaryKey::Uuid => {
                        let _ = writeln!(out, "  primary key: UUID (auto-assigned)");
                    }
                }
                let attrs = effective_attributes(self.types(), name).ok()?;
                push_attr_lines(&mut out, name, &attrs);
            }
            SchemaType::Edge(e) => {
                let dir = if e.directed { "directed" } else { "undirected" };
                let _ = write!(out, "edge type {} ({})", e.name, dir);
                if let Some(s) = &e.super_name {
                    let _ = write!(out, " extends {}", s);
                }
                out.push('\n');
                if let Some(reverse) = &e.reverse_name {
                    let _ = writeln!(out, "  reverse edge: {}", reverse);
                }
                let _ = writeln!(out, "  pairs:");
                for pair in effective_pairs(self.types(), name).ok()? {
                    let _ = writeln!(out, "    {} -> {}", pair.from, pair.to);
                }
                if let Some(disc) = effective_discriminator(self.types(), name).ok()? {
                    let _ = writeln!(out, "  discriminator: {}", disc.join(", "));
                }
                let key: Vec<String> = effective_edge_key(self.types(), name)
                    .ok()?
                    .into_iter()
                    .map(|part| match part {
                        EdgeKeyPart::SourcePrimaryKey => "source key".to_string(),
                        EdgeKeyPart::TargetPrimaryKey => "target key".to_string(),
                        EdgeKeyPart::Attribute(a) => a,
                    })
                    .collect();
                let _ = writeln!(out, "  key: ({})", key.join(", "));
                let attrs = effective_attributes(self.types(), name).ok()?;
                push_attr_lines(&mut out, name, &attrs);
            }
            SchemaType::Graph(g) => {
                let _ = write!(out, "graph type {}", g.name);
                if let Some(s) = &g.super_name {
                    let _ = write!(out, " extends {}", s);
                }
                out.push('\n');
                let members = effective_graph_members(self.types(), name).ok()?;
                let _ = writeln!(out, "  vertex members: {}", join_or_none(&members.vertex_types));
                let _ = writeln!(out, "  edge members: {}", join_or_none(&members.edge_types));
                if !members.graph_types.is_empty() {
                    let _ = writeln!(out, "  graph members: {}", members.graph_types.join(", "));
                }
            }
            SchemaType::Label(l) => {
                let _ = write!(out, "label type {}", l.name);
                if !l.super_names.is_empty() {
                    let _ = write!(out, " extends {}", l.super_names.join(", "));
                }
                out.push('\n');
                if let Some(desc) = &l.description {
                    let _ = writeln!(out, "  description: {}", desc);
                }
                let attrs = effective_attributes(self.types(), name).ok()?;
                if !attrs.is_empty() {
                    push_attr_lines(&mut out, name, &attrs);
                }
            }
        }
        Some(out)
    }

    /// The whole catalog as one entry per line: every type, then
    /// every schema object with its references.
    pub fn describe_catalog(&self) -> String {
        let mut out = String::new();
        for ty in self.types().iter() {
            let _ = writeln!(out, "{} type {}", ty.kind(), ty.name());
        }
        for obj in self.objects() {
            let _ = write!(out, "schema object {} of {} type {}", obj.name, obj.kind, obj.type_ref);
            if !obj.members.is_empty() {
                let refs: Vec<String> = obj
                    .members
                    .iter()
                    .map(|m| format!("{} -> {}", m.alias, m.target))
                    .collect();
                let _ = write!(out, " (members: {})", refs.join(", "));
            }
            out.push('\n');
        }
        out
    }
}

fn join_or_none(names: &[String]) -> String {
    if names.is_empty() {
        "(none)".to_string()
    } else {
        names.join(", ")
    }
}
