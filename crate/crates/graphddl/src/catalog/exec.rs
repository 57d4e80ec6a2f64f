//! Statement execution against the catalog.
//!
//! `execute` is transactional per statement: it applies the statement
//! to a working copy and swaps it in only on success, so a failed
//! statement leaves the catalog (and session) untouched.

use super::{Catalog, ContainerId, ExecError, ExecResult, MemberRef, SchemaObject, Session};
use crate::ast::*;
use crate::typesys::{
    build_edge_type, build_graph_type, build_label_type, build_vertex_type,
    effective_attributes, effective_discriminator, effective_graph_members, effective_pairs,
    resolve_type_name, reverse_of, ClosurePolicy, Endpoints, PrimaryKey, SchemaType, TypeError,
    TypeKind,
};
use std::collections::BTreeSet;

fn last_segment(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

impl Catalog {
    /// Executes one parsed statement. On error the catalog and session
    /// are left exactly as they were.
    pub fn execute(
        &mut self,
        stmt: &Statement,
        session: &mut Session,
    ) -> Result<ExecResult, ExecError> {
        let mut next = self.clone();
        let mut next_session = session.clone();
        let mut result = next.apply(stmt, &mut next_session)?;
        result
            .modified
            .retain(|n| !result.created.contains(n) && !result.dropped.contains(n));
        *self = next;
        *session = next_session;
        Ok(result)
    }

    fn apply(&mut self, stmt: &Statement, session: &mut Session) -> Result<ExecResult, ExecError> {
        match stmt {
            Statement::CreateVertex(s) => self.create_vertex(s, session),
            Statement::CreateEdge(s) => self.create_edge(s, session),
            Statement::CreateGraph(s) => self.create_graph(s, session),
            Statement::CreateLabel(s) => self.create_label(s),
            Statement::DropVertex(s) => self.drop_vertex(s, session),
            Statement::DropEdge(s) => self.drop_edge(s, session),
            Statement::DropGraph(s) => self.drop_graph(s, session),
            Statement::DropLabel(s) => self.drop_label(s),
            Statement::AlterVertex(s) => self.alter_vertex(s, session),
            Statement::AlterEdge(s) => self.alter_edge(s, session),
            Statement::AlterGraph(s) => self.alter_graph(s, session),
            Statement::UseGraph(s) => self.use_graph(s, session),
        }
    }

    fn fresh_container(&mut self) -> ContainerId {
        let id = self.next_container_id;
        self.next_container_id += 1;
        id
    }

    /// Resolves an object name: inside a graph scope a plain name
    /// tries the scoped spelling first, then global.
    fn resolve_object(
        &self,
        session: &Session,
        name: &str,
        kind: TypeKind,
    ) -> Result<String, ExecError> {
        if !name.contains('.') {
            if let Some(graph) = &session.current_graph {
                let scoped = format!("{}.{}", graph, name);
                if let Some(obj) = self.objects.get(&scoped) {
                    if obj.kind == kind {
                        return Ok(scoped);
                    }
                }
            }
        }
        match self.objects.get(name) {
            Some(obj) if obj.kind == kind => Ok(name.to_string()),
            _ => Err(ExecError::UnknownObject {
                name: name.to_string(),
                kind,
            }),
        }
    }

    fn insert_object(&mut self, object: SchemaObject) {
        self.objects.insert(object.name.clone(), object);
    }

    /// A scoped creation may not reuse a member alias of the current
    /// graph (e.g. `g.x` already referencing a global `x`).
    fn check_scoped_alias_free(&self, session: &Session, name: &str) -> Result<(), ExecError> {
        if let Some(graph_name) = &session.current_graph {
            if let Some(graph) = self.objects.get(graph_name) {
                if graph.members.iter().any(|m| m.alias == name) {
                    return Err(ExecError::DuplicateObject {
                        name: name.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Records a newly created object as a member of the current graph
    /// scope, both on the graph object and (when the graph owns its
    /// type) on the graph type.
    fn add_scoped_member(&mut self, session: &Session, member_name: &str, kind: TypeKind) {
        let Some(graph_name) = &session.current_graph else {
            return;
        };
        let member_type = match self.objects.get(member_name) {
            Some(member) => member.type_ref.clone(),
            None => return,
        };
        let type_ref = {
            let Some(graph) = self.objects.get_mut(graph_name) else {
                return;
            };
            graph.members.push(MemberRef {
                alias: member_name.to_string(),
                target: member_name.to_string(),
            });
            graph.type_ref.clone()
        };
        // instance graphs (created with AS) share a type; scoped
        // creations inside them stay object-level
        if type_ref == *graph_name {
            if let Some(gt) = self.types.graph_mut(&type_ref) {
                let list = match kind {
                    TypeKind::Vertex => &mut gt.member_vertex_types,
                    TypeKind::Edge => &mut gt.member_edge_types,
                    TypeKind::Graph => &mut gt.member_graph_types,
                    TypeKind::Label => return,
                };
                if !list.contains(&member_type) {
                    list.push(member_type);
                }
            }
        }
    }

    // ---- CREATE ----------------------------------------------------

    fn create_vertex(
        &mut self,
        stmt: &CreateVertex,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let scope = session.current_graph.clone();
        let vertex = build_vertex_type(stmt, &self.types, scope.as_deref())?;
        let name = vertex.name.clone();
        if self.objects.contains_key(&name) {
            return Err(ExecError::DuplicateObject { name });
        }
        self.check_scoped_alias_free(session, &name)?;
        self.types.insert(SchemaType::Vertex(vertex));
        let container = self.fresh_container();
        self.insert_object(SchemaObject {
            name: name.clone(),
            kind: TypeKind::Vertex,
            type_ref: name.clone(),
            container: Some(container),
            members: Vec::new(),
        });
        self.add_scoped_member(session, &name, TypeKind::Vertex);
        Ok(ExecResult {
            created: vec![name.clone()],
            messages: vec![format!("created vertex type {0} and schema object {0}", name)],
            ..Default::default()
        })
    }

    fn create_edge(
        &mut self,
        stmt: &CreateEdge,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let scope = session.current_graph.clone();
        let edge = build_edge_type(stmt, &self.types, scope.as_deref())?;
        let name = edge.name.clone();
        let reverse_name = edge.reverse_name.clone();
        if self.objects.contains_key(&name) {
            return Err(ExecError::DuplicateObject { name });
        }
        self.check_scoped_alias_free(session, &name)?;
        if let Some(reverse) = &reverse_name {
            if self.types.contains(reverse) {
                return Err(TypeError::DuplicateType {
                    name: reverse.clone(),
                }
                .into());
            }
            if self.objects.contains_key(reverse) {
                return Err(ExecError::DuplicateObject {
                    name: reverse.clone(),
                });
            }
            self.check_scoped_alias_free(session, reverse)?;
        }
        let super_name = edge.super_name.clone();
        self.types.insert(SchemaType::Edge(edge));

        let mut created = vec![name.clone()];
        if reverse_name.is_some() {
            let forward = self.types.edge(&name).expect("just inserted");
            let mut twin = reverse_of(forward)?;
            if let Some(super_name) = &super_name {
                let super_reverse = self
                    .types
                    .edge(super_name)
                    .and_then(|s| s.reverse_name.clone());
                match super_reverse {
                    // mirror the inheritance chain on the reverse side
                    Some(super_twin) => twin.super_name = Some(super_twin),
                    // the super has no twin: materialize this twin from
                    // the forward type's effective schema
                    None => {
                        let twin_name = twin.name.clone();
                        twin.pairs = effective_pairs(&self.types, &name)?
                            .iter()
                            .map(|p| p.swapped())
                            .collect();
                        twin.own_attributes = effective_attributes(&self.types, &name)?
                            .into_iter()
                            .map(|mut a| {
                                a.origin = twin_name.clone();
                                a
                            })
                            .collect();
                        twin.discriminator = effective_discriminator(&self.types, &name)?;
                    }
                }
            }
            let twin_name = twin.name.clone();
            self.types.insert(SchemaType::Edge(twin));
            let container = self.fresh_container();
            self.insert_object(SchemaObject {
                name: twin_name.clone(),
                kind: TypeKind::Edge,
                type_ref: twin_name.clone(),
                container: Some(container),
                members: Vec::new(),
            });
            created.push(twin_name);
        }

        let container = self.fresh_container();
        self.insert_object(SchemaObject {
            name: name.clone(),
            kind: TypeKind::Edge,
            type_ref: name.clone(),
            container: Some(container),
            members: Vec::new(),
        });
        let mut result = ExecResult::default();
        for member in &created {
            self.add_scoped_member(session, member, TypeKind::Edge);
        }
        // a scoped edge joins the current graph, so the closure rule
        // pulls its endpoint types in as members too
        if let Some(graph_name) = session.current_graph.clone() {
            for member in created.clone() {
                self.include_edge_endpoints(&graph_name, &member, &mut result)?;
            }
        }
        created.sort();
        created.dedup();
        result
            .messages
            .push(format!("created edge type(s) {}", created.join(", ")));
        result.created = created;
        Ok(result)
    }

    fn create_graph(
        &mut self,
        stmt: &CreateGraph,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        match &stmt.form {
            GraphForm::AsType(type_name) => self.create_graph_instance(stmt, type_name, session),
            GraphForm::Members {
                extends,
                owns,
                members,
            } => self.create_graph_members(stmt, extends.as_deref(), *owns, members, session),
        }
    }

    /// `CREATE GRAPH g AS h`: a new schema object of the existing
    /// graph type `h`, with references mirroring the type's member
    /// list. No new type is created.
    fn create_graph_instance(
        &mut self,
        stmt: &CreateGraph,
        type_name: &str,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let scope = session.current_graph.clone();
        let name = match &scope {
            Some(graph) => format!("{}.{}", graph, stmt.name),
            None => stmt.name.clone(),
        };
        if self.objects.contains_key(&name) {
            return Err(ExecError::DuplicateObject { name });
        }
        self.check_scoped_alias_free(session, &name)?;
        let source_type = resolve_type_name(&self.types, scope.as_deref(), type_name)
            .filter(|n| self.types.graph(n).is_some())
            .ok_or(ExecError::UnknownGraph {
                name: type_name.to_string(),
            })?;

        let source_members = effective_graph_members(&self.types, &source_type)?;
        let mut members = Vec::new();
        for member_type in source_members
            .vertex_types
            .iter()
            .chain(source_members.edge_types.iter())
            .chain(source_members.graph_types.iter())
        {
            if !self.objects.contains_key(member_type) {
                return Err(ExecError::UnknownMember {
                    graph: name,
                    name: member_type.clone(),
                });
            }
            let alias = format!("{}.{}", name, last_segment(member_type));
            if members.iter().any(|m: &MemberRef| m.alias == alias) {
                return Err(ExecError::DuplicateObject { name: alias });
            }
            members.push(MemberRef {
                alias,
                target: member_type.clone(),
            });
        }

        self.insert_object(SchemaObject {
            name: name.clone(),
            kind: TypeKind::Graph,
            type_ref: source_type.clone(),
            container: None,
            members,
        });
        self.add_scoped_member(session, &name, TypeKind::Graph);
        Ok(ExecResult {
            created: vec![name.clone()],
            messages: vec![format!(
                "created schema object {} of graph type {}",
                name, source_type
            )],
            ..Default::default()
        })
    }

    fn create_graph_members(
        &mut self,
        stmt: &CreateGraph,
        extends: Option<&str>,
        owns: bool,
        member_specs: &[MemberSpec],
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let scope = session.current_graph.clone();
        let (graph_type, resolved) = build_graph_type(
            &stmt.name,
            extends,
            owns,
            member_specs,
            &self.types,
            scope.as_deref(),
            ClosurePolicy::AutoInclude,
        )?;
        let name = graph_type.name.clone();
        if self.objects.contains_key(&name) {
            return Err(ExecError::DuplicateObject { name });
        }
        self.check_scoped_alias_free(session, &name)?;
        self.types.insert(SchemaType::Graph(graph_type));

        let mut created = vec![name.clone()];
        let mut members = Vec::new();
        for member in &resolved {
            if member.owned {
                // a fresh container of the member type, owned by this graph
                let child_name = format!("{}.{}", name, last_segment(&member.type_name));
                if self.objects.contains_key(&child_name) {
                    return Err(ExecError::DuplicateObject { name: child_name });
                }
                if members.iter().any(|m: &MemberRef| m.alias == child_name) {
                    return Err(ExecError::DuplicateObject { name: child_name });
                }
                let container = self.fresh_container();
                self.insert_object(SchemaObject {
                    name: child_name.clone(),
                    kind: member.kind,
                    type_ref: member.type_name.clone(),
                    container: Some(container),
                    members: Vec::new(),
                });
                members.push(MemberRef {
                    alias: child_name.clone(),
                    target: child_name.clone(),
                });
                created.push(child_name);
            } else {
                // a reference to the existing object of that name
                if !self.objects.contains_key(&member.type_name) {
                    return Err(ExecError::UnknownMember {
                        graph: name,
                        name: member.type_name.clone(),
                    });
                }
                let alias = format!("{}.{}", name, last_segment(&member.type_name));
                if members.iter().any(|m: &MemberRef| m.alias == alias) {
                    return Err(ExecError::DuplicateObject { name: alias });
                }
                members.push(MemberRef {
                    alias,
                    target: member.type_name.clone(),
                });
            }
        }

        let container = if owns { Some(self.fresh_container()) } else { None };
        self.insert_object(SchemaObject {
            name: name.clone(),
            kind: TypeKind::Graph,
            type_ref: name.clone(),
            container,
            members,
        });
        self.add_scoped_member(session, &name, TypeKind::Graph);
        Ok(ExecResult {
            messages: vec![format!("created graph type {0} and schema object {0}", name)],
            created,
            ..Default::default()
        })
    }

    fn create_label(&mut self, stmt: &CreateLabel) -> Result<ExecResult, ExecError> {
        // labels are global: they tag elements across graphs and are
        // never graph members
        let label = build_label_type(stmt, &self.types)?;
        let name = label.name.clone();
        if self.objects.contains_key(&name) {
            return Err(ExecError::DuplicateObject { name });
        }
        self.types.insert(SchemaType::Label(label));
        self.insert_object(SchemaObject {
            name: name.clone(),
            kind: TypeKind::Label,
            type_ref: name.clone(),
            container: None,
            members: Vec::new(),
        });
        Ok(ExecResult {
            created: vec![name.clone()],
            messages: vec![format!("created label type {0} and schema object {0}", name)],
            ..Default::default()
        })
    }

    // ---- USE -------------------------------------------------------

    fn use_graph(&mut self, stmt: &UseGraph, session: &mut Session) -> Result<ExecResult, ExecError> {
        match self.objects.get(&stmt.name) {
            Some(obj) if obj.kind == TypeKind::Graph => {
                session.current_graph = Some(stmt.name.clone());
                Ok(ExecResult {
                    messages: vec![format!("using graph {}", stmt.name)],
                    ..Default::default()
                })
            }
            _ => Err(ExecError::UnknownGraph {
                name: stmt.name.clone(),
            }),
        }
    }

    // ---- DROP ------------------------------------------------------

    /// Depth of a type's inheritance chain, for leaf-first ordering.
    fn type_depth(&self, name: &str) -> usize {
        let mut depth = 0;
        let mut current = name.to_string();
        while let Some(ty) = self.types.get(&current) {
            match ty.super_names().first() {
                Some(s) if depth < self.types.len() => {
                    current = s.to_string();
                    depth += 1;
                }
                _ => break,
            }
        }
        depth
    }

    /// All type-owning objects of a kind, deepest subtypes first.
    fn star_targets(&self, kind: TypeKind) -> Vec<String> {
        let mut names: Vec<String> = self
            .objects
            .values()
            .filter(|o| o.kind == kind && o.name == o.type_ref)
            .map(|o| o.name.clone())
            .collect();
        names.sort_by_key(|n| (usize::MAX - self.type_depth(n), n.clone()));
        names
    }

    fn drop_vertex(
        &mut self,
        stmt: &DropVertex,
        session: &mut Session,
    ) -> Result<ExecResult, ExecError> {
        let mut result = ExecResult::default();
        match &stmt.targets {
            DropTargets::Star => {
                for name in self.star_targets(TypeKind::Vertex) {
                    if !self.objects.contains_key(&name) {
                        continue; // removed by an earlier cascade
                    }
                    self.drop_vertex_object(&name, stmt.cascade, &mut result)?;
                }
            }
            DropTargets::Names(names) => {
                for raw in names {
                    let name = self.resolve_object(session, raw, TypeKind::Vertex)?;
                    self.drop_vertex_object(&name, stmt.cascade, &mut result)?;
                }
            }
        }
        Ok(result)
    }

    fn drop_vertex_object(
        &mut self,
        obj_name: &str,
        cascade: bool,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let obj = self.objects.get(obj_name).expect("resolved").clone();
        if obj.name != obj.type_ref {
            // a graph-owned member container: membership removal only
            return self.drop_member_object(&obj, cascade, result);
        }
        let type_name = obj.type_ref;

        if let Some(subtype) = self.types.subtypes_of(&type_name).first() {
            return Err(ExecError::HasSubtypes {
                name: type_name.clone(),
                subtype: subtype.to_string(),
            });
        }

        // root edge types declaring pairs that mention this vertex type
        let referencing: Vec<String> = self
            .types
            .iter()
            .filter_map(|t| match t {
                SchemaType::Edge(e) if e.pairs.iter().any(|p| p.mentions(&type_name)) => {
                    Some(e.name.clone())
                }
                _ => None,
            })
            .collect();
        if !referencing.is_empty() && !cascade {
            return Err(ExecError::ReferencedByEdge {
                vertex: type_name.clone(),
                edge: referencing[0].clone(),
            });
        }
        for edge_name in referencing {
            if !self.types.contains(&edge_name) {
                continue; // removed together with an earlier twin
            }
            let twin = self
                .types
                .edge(&edge_name)
                .and_then(|e| e.reverse_name.clone());
            let emptied = {
                let edge = self.types.edge_mut(&edge_name).expect("filtered above");
                edge.pairs.retain(|p| !p.mentions(&type_name));
                edge.pairs.is_empty()
            };
            if let Some(twin_name) = &twin {
                if let Some(twin_edge) = self.types.edge_mut(twin_name) {
                    twin_edge.pairs.retain(|p| !p.mentions(&type_name));
                }
            }
            if emptied {
                // every remaining pair mentioned only the dropped type
                self.drop_edge_type_full(&edge_name, result)?;
            } else {
                result.modified.push(edge_name.clone());
                if let Some(twin_name) = twin {
                    result.modified.push(twin_name);
                }
            }
        }

        self.remove_type_and_objects(&type_name, result);
        Ok(())
    }

    fn drop_edge(
        &mut self,
        stmt: &DropEdge,
        session: &mut Session,
    ) -> Result<ExecResult, ExecError> {
        let mut result = ExecResult::default();
        match &stmt.targets {
            DropTargets::Star => {
                for name in self.star_targets(TypeKind::Edge) {
                    if !self.objects.contains_key(&name) {
                        continue; // removed together with its twin
                    }
                    self.drop_edge_type_full(&name, &mut result)?;
                }
            }
            DropTargets::Names(names) => {
                for raw in names {
                    let name = self.resolve_object(session, raw, TypeKind::Edge)?;
                    let obj = self.objects.get(&name).expect("resolved").clone();
                    if obj.name != obj.type_ref {
                        self.drop_member_object(&obj, false, &mut result)?;
                    } else {
                        self.drop_edge_type_full(&name, &mut result)?;
                    }
                }
            }
        }
        Ok(result)
    }

    /// Drops an edge type, its objects, and its reverse twin.
    fn drop_edge_type_full(
        &mut self,
        edge_name: &str,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let twin = self
            .types
            .edge(edge_name)
            .and_then(|e| e.reverse_name.clone());
        for name in std::iter::once(edge_name).chain(twin.as_deref()) {
            if let Some(subtype) = self.types.subtypes_of(name).first() {
                return Err(ExecError::HasSubtypes {
                    name: name.to_string(),
                    subtype: subtype.to_string(),
                });
            }
        }
        self.remove_type_and_objects(edge_name, result);
        if let Some(twin_name) = twin {
            if self.types.contains(&twin_name) {
                self.remove_type_and_objects(&twin_name, result);
            }
        }
        Ok(())
    }

    /// Removes a type and every schema object instantiating it,
    /// pruning graph memberships that pointed at those objects.
    fn remove_type_and_objects(&mut self, type_name: &str, result: &mut ExecResult) {
        self.types.remove(type_name);
        let doomed: Vec<String> = self
            .objects
            .values()
            .filter(|o| o.type_ref == type_name)
            .map(|o| o.name.clone())
            .collect();
        for obj_name in &doomed {
            self.objects.remove(obj_name);
            result.dropped.push(obj_name.clone());
        }
        for graph in self.objects.values_mut() {
            graph
                .members
                .retain(|m| !doomed.contains(&m.target) && !doomed.contains(&m.alias));
        }
        for ty in self.types.iter_mut() {
            if let SchemaType::Graph(g) = ty {
                g.member_vertex_types.retain(|n| n != type_name);
                g.member_edge_types.retain(|n| n != type_name);
                g.member_graph_types.retain(|n| n != type_name);
            }
        }
    }

    /// Removes a graph-owned member object (such as `G2.A`) through
    /// the same path as `ALTER GRAPH ... DROP`.
    fn drop_member_object(
        &mut self,
        obj: &SchemaObject,
        cascade: bool,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let owner = self
            .objects
            .values()
            .find(|g| {
                g.kind == TypeKind::Graph
                    && g.members
                        .iter()
                        .any(|m| m.alias == obj.name && m.target == obj.name)
            })
            .map(|g| g.name.clone());
        match owner {
            Some(graph_name) => match obj.kind {
                TypeKind::Vertex => {
                    self.graph_drop_vertex_member(&graph_name, &obj.name, cascade, result)
                }
                _ => {
                    self.check_own_membership(&graph_name, &obj.type_ref, obj.kind)?;
                    let alias = obj.name.clone();
                    self.graph_remove_member(&graph_name, &alias, result)
                }
            },
            None => {
                // orphan container; just remove it
                self.objects.remove(&obj.name);
                result.dropped.push(obj.name.clone());
                Ok(())
            }
        }
    }

    fn drop_graph(
        &mut self,
        stmt: &DropGraph,
        session: &mut Session,
    ) -> Result<ExecResult, ExecError> {
        let mut result = ExecResult::default();
        for raw in &stmt.names {
            let name = self.resolve_object(session, raw, TypeKind::Graph)?;
            self.drop_graph_object(&name, session, &mut result)?;
        }
        Ok(result)
    }

    fn drop_graph_object(
        &mut self,
        obj_name: &str,
        session: &mut Session,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let obj = self.objects.get(obj_name).expect("resolved").clone();
        let prefix = format!("{}.", obj_name);

        // the graph object and every object in its namespace go away
        let doomed_objects: BTreeSet<String> = self
            .objects
            .keys()
            .filter(|n| *n == obj_name || n.starts_with(&prefix))
            .cloned()
            .collect();

        for graph in self.objects.values() {
            if graph.kind != TypeKind::Graph || doomed_objects.contains(&graph.name) {
                continue;
            }
            if let Some(hit) = graph
                .members
                .iter()
                .find(|m| doomed_objects.contains(&m.target))
            {
                return Err(ExecError::ReferencedByGraph {
                    name: hit.target.clone(),
                    referrer: graph.name.clone(),
                });
            }
        }

        // scoped types die with the graph; the graph's own type dies
        // when this was its last instance and no graph type refers to it
        let mut doomed_types: BTreeSet<String> = self
            .types
            .iter()
            .map(|t| t.name().to_string())
            .filter(|n| n.starts_with(&prefix))
            .collect();
        let instances_left = self
            .objects
            .values()
            .filter(|o| {
                o.kind == TypeKind::Graph
                    && o.type_ref == obj.type_ref
                    && !doomed_objects.contains(&o.name)
            })
            .count();
        let type_referenced = self.types.iter().any(|t| match t {
            SchemaType::Graph(g) => {
                g.name != obj.type_ref && g.member_graph_types.contains(&obj.type_ref)
            }
            _ => false,
        });
        if instances_left == 0 && !type_referenced && self.types.contains(&obj.type_ref) {
            doomed_types.insert(obj.type_ref.clone());
        }

        for type_name in &doomed_types {
            if let Some(subtype) = self
                .types
                .subtypes_of(type_name)
                .iter()
                .find(|s| !doomed_types.contains(**s))
            {
                return Err(ExecError::HasSubtypes {
                    name: type_name.clone(),
                    subtype: subtype.to_string(),
                });
            }
            // a surviving edge type must not lose an endpoint type
            if self.types.vertex(type_name).is_some() {
                for ty in self.types.iter() {
                    if let SchemaType::Edge(e) = ty {
                        if !doomed_types.contains(&e.name)
                            && e.pairs.iter().any(|p| p.mentions(type_name))
                        {
                            return Err(ExecError::ReferencedByEdge {
                                vertex: type_name.clone(),
                                edge: e.name.clone(),
                            });
                        }
                    }
                }
            }
        }

        for name in &doomed_objects {
            self.objects.remove(name);
            result.dropped.push(name.clone());
        }
        for type_name in &doomed_types {
            self.types.remove(type_name);
            result
                .messages
                .push(format!("removed type {}", type_name));
        }
        for ty in self.types.iter_mut() {
            if let SchemaType::Graph(g) = ty {
                g.member_vertex_types.retain(|n| !doomed_types.contains(n));
                g.member_edge_types.retain(|n| !doomed_types.contains(n));
                g.member_graph_types.retain(|n| !doomed_types.contains(n));
            }
        }

        if let Some(current) = &session.current_graph {
            if current == obj_name || current.starts_with(&prefix) {
                session.current_graph = None;
            }
        }
        Ok(())
    }

    fn drop_label(&mut self, stmt: &DropLabel) -> Result<ExecResult, ExecError> {
        let mut result = ExecResult::default();
        for name in &stmt.names {
            match self.objects.get(name) {
                Some(obj) if obj.kind == TypeKind::Label => {}
                _ => {
                    return Err(ExecError::UnknownObject {
                        name: name.clone(),
                        kind: TypeKind::Label,
                    });
                }
            }
            if let Some(subtype) = self.types.subtypes_of(name).first() {
                return Err(ExecError::HasSubtypes {
                    name: name.clone(),
                    subtype: subtype.to_string(),
                });
            }
            self.types.remove(name);
            self.objects.remove(name);
            result.dropped.push(name.clone());
        }
        Ok(result)
    }

    // ---- ALTER -----------------------------------------------------

    /// Transitive subtypes of a type, in name order.
    fn descendants(&self, type_name: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut frontier = vec![type_name.to_string()];
        while let Some(current) = frontier.pop() {
            for sub in self.types.subtypes_of(&current) {
                if !out.contains(&sub.to_string()) {
                    out.push(sub.to_string());
                    frontier.push(sub.to_string());
                }
            }
        }
        out.sort();
        out
    }

    fn check_add_specs(
        &self,
        type_name: &str,
        specs: &[AttributeSpec],
    ) -> Result<Vec<crate::typesys::Attribute>, ExecError> {
        let effective = effective_attributes(&self.types, type_name)?;
        let descendants = self.descendants(type_name);
        let mut new_attrs = Vec::new();
        for spec in specs {
            if spec.name == crate::typesys::LABEL_ATTRIBUTE {
                return Err(TypeError::ReservedAttributeName {
                    attribute: spec.name.clone(),
                }
                .into());
            }
            let data_type = crate::datatype::parse_data_type(&spec.data_type_text)
                .map_err(|e| TypeError::InvalidDataType {
                    attribute: spec.name.clone(),
                    message: e.message,
                })?;
            let clash_here = effective.iter().any(|a| a.name == spec.name)
                || new_attrs
                    .iter()
                    .any(|a: &crate::typesys::Attribute| a.name == spec.name);
            let clash_below = descendants.iter().any(|d| {
                self.own_attribute_names(d)
                    .iter()
                    .any(|n| n == &spec.name)
            });
            if clash_here || clash_below {
                return Err(ExecError::DuplicateAttribute {
                    type_name: type_name.to_string(),
                    attribute: spec.name.clone(),
                });
            }
            new_attrs.push(crate::typesys::Attribute {
                name: spec.name.clone(),
                data_type,
                not_null: spec.not_null,
                origin: type_name.to_string(),
            });
        }
        Ok(new_attrs)
    }

    fn own_attribute_names(&self, type_name: &str) -> Vec<String> {
        match self.types.get(type_name) {
            Some(SchemaType::Vertex(v)) => {
                v.own_attributes.iter().map(|a| a.name.clone()).collect()
            }
            Some(SchemaType::Edge(e)) => e.own_attributes.iter().map(|a| a.name.clone()).collect(),
            Some(SchemaType::Label(l)) => {
                l.own_attributes.iter().map(|a| a.name.clone()).collect()
            }
            _ => Vec::new(),
        }
    }

    fn alter_vertex(
        &mut self,
        stmt: &AlterVertex,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let obj_name = self.resolve_object(session, &stmt.name, TypeKind::Vertex)?;
        let type_name = self.objects.get(&obj_name).expect("resolved").type_ref.clone();
        match &stmt.action {
            AlterAttrAction::Add(specs) => {
                let new_attrs = self.check_add_specs(&type_name, specs)?;
                let vertex = self.types.vertex_mut(&type_name).ok_or_else(|| {
                    ExecError::UnknownObject {
                        name: type_name.clone(),
                        kind: TypeKind::Vertex,
                    }
                })?;
                vertex.own_attributes.extend(new_attrs);
            }
            AlterAttrAction::Drop(names) => {
                for attr_name in names {
                    let vertex = self.types.vertex(&type_name).ok_or_else(|| {
                        ExecError::UnknownObject {
                            name: type_name.clone(),
                            kind: TypeKind::Vertex,
                        }
                    })?;
                    if !vertex.own_attributes.iter().any(|a| &a.name == attr_name) {
                        let effective = effective_attributes(&self.types, &type_name)?;
                        return match effective.iter().find(|a| &a.name == attr_name) {
                            Some(attr) => Err(ExecError::InheritedAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                                origin: attr.origin.clone(),
                            }),
                            None => Err(ExecError::UnknownAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                            }),
                        };
                    }
                    if let PrimaryKey::Attributes(pk) = &vertex.primary_key {
                        if pk.contains(attr_name) {
                            return Err(ExecError::PrimaryKeyAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                            });
                        }
                    }
                    self.types
                        .vertex_mut(&type_name)
                        .expect("checked above")
                        .own_attributes
                        .retain(|a| &a.name != attr_name);
                }
            }
        }
        Ok(ExecResult {
            modified: vec![obj_name],
            ..Default::default()
        })
    }

    fn alter_edge(
        &mut self,
        stmt: &AlterEdge,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let obj_name = self.resolve_object(session, &stmt.name, TypeKind::Edge)?;
        let type_name = self.objects.get(&obj_name).expect("resolved").type_ref.clone();
        let twin_name = self
            .types
            .edge(&type_name)
            .and_then(|e| e.reverse_name.clone())
            .filter(|t| self.types.contains(t));

        match &stmt.action {
            AlterAttrAction::Add(specs) => {
                let new_attrs = self.check_add_specs(&type_name, specs)?;
                if let Some(twin) = &twin_name {
                    self.check_add_specs(twin, specs)?;
                }
                self.types
                    .edge_mut(&type_name)
                    .expect("resolved")
                    .own_attributes
                    .extend(new_attrs.clone());
                if let Some(twin) = &twin_name {
                    let mirrored = new_attrs.into_iter().map(|mut a| {
                        a.origin = twin.clone();
                        a
                    });
                    self.types
                        .edge_mut(twin)
                        .expect("filtered")
                        .own_attributes
                        .extend(mirrored);
                }
            }
            AlterAttrAction::Drop(names) => {
                for attr_name in names {
                    let edge = self.types.edge(&type_name).expect("resolved");
                    if !edge.own_attributes.iter().any(|a| &a.name == attr_name) {
                        let effective = effective_attributes(&self.types, &type_name)?;
                        return match effective.iter().find(|a| &a.name == attr_name) {
                            Some(attr) => Err(ExecError::InheritedAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                                origin: attr.origin.clone(),
                            }),
                            None => Err(ExecError::UnknownAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                            }),
                        };
                    }
                    if let Some(disc) = effective_discriminator(&self.types, &type_name)? {
                        if disc.contains(attr_name) {
                            return Err(ExecError::DiscriminatorAttribute {
                                type_name: type_name.clone(),
                                attribute: attr_name.clone(),
                            });
                        }
                    }
                    for side in std::iter::once(&type_name).chain(twin_name.as_ref()) {
                        if let Some(edge) = self.types.edge_mut(side) {
                            edge.own_attributes.retain(|a| &a.name != attr_name);
                            edge.secondary_keys.iter_mut().for_each(|k| {
                                k.retain(|n| n != attr_name);
                            });
                            edge.secondary_keys.retain(|k| !k.is_empty());
                        }
                    }
                }
            }
        }
        let mut modified = vec![obj_name];
        if let Some(twin) = twin_name {
            if self.objects.contains_key(&twin) {
                modified.push(twin);
            }
        }
        Ok(ExecResult {
            modified,
            ..Default::default()
        })
    }

    fn alter_graph(
        &mut self,
        stmt: &AlterGraph,
        session: &Session,
    ) -> Result<ExecResult, ExecError> {
        let graph_name = self.resolve_object(session, &stmt.name, TypeKind::Graph)?;
        let mut result = ExecResult::default();
        match &stmt.action {
            AlterGraphAction::AddVertex(names) => {
                for raw in names {
                    self.graph_add_member(&graph_name, raw, TypeKind::Vertex, session, &mut result)?;
                }
            }
            AlterGraphAction::AddEdge(names) => {
                for raw in names {
                    let edge_type =
                        self.graph_add_member(&graph_name, raw, TypeKind::Edge, session, &mut result)?;
                    if let Some(edge_type) = edge_type {
                        self.include_edge_endpoints(&graph_name, &edge_type, &mut result)?;
                    }
                }
            }
            AlterGraphAction::DropVertex { names, cascade } => {
                for raw in names {
                    self.graph_drop_vertex_member(&graph_name, raw, *cascade, &mut result)?;
                }
            }
            AlterGraphAction::DropEdge(names) => {
                for raw in names {
                    let member = self
                        .find_member(&graph_name, raw)
                        .filter(|m| {
                            self.objects
                                .get(&m.target)
                                .is_some_and(|o| o.kind == TypeKind::Edge)
                        })
                        .ok_or_else(|| {
                            self.missing_member_error(&graph_name, raw, TypeKind::Edge)
                        })?;
                    let member_type = self
                        .objects
                        .get(&member.target)
                        .expect("filtered")
                        .type_ref
                        .clone();
                    self.check_own_membership(&graph_name, &member_type, TypeKind::Edge)?;
                    let alias = member.alias;
                    self.graph_remove_member(&graph_name, &alias, &mut result)?;
                }
            }
        }
        self.verify_graph_closure(&self.objects.get(&graph_name).expect("resolved").type_ref.clone())?;
        result.modified.push(graph_name);
        result.modified.sort();
        result.modified.dedup();
        Ok(result)
    }

    /// Finds a graph member by local name, full alias, or target name.
    fn find_member(&self, graph_name: &str, name: &str) -> Option<MemberRef> {
        let graph = self.objects.get(graph_name)?;
        graph
            .members
            .iter()
            .find(|m| last_segment(&m.alias) == name || m.alias == name || m.target == name)
            .cloned()
    }

    /// Error for a member name that is not on the graph object:
    /// either it is inherited from a super graph type (and cannot be
    /// changed here) or it is unknown.
    fn missing_member_error(&self, graph_name: &str, raw: &str, kind: TypeKind) -> ExecError {
        let gtype = &self.objects.get(graph_name).expect("resolved").type_ref;
        if let Ok(members) = effective_graph_members(&self.types, gtype) {
            let list = match kind {
                TypeKind::Vertex => &members.vertex_types,
                TypeKind::Edge => &members.edge_types,
                _ => &members.graph_types,
            };
            if let Some(member_type) = list
                .iter()
                .find(|m| last_segment(m) == raw || m.as_str() == raw)
            {
                if let Err(e) = self.check_own_membership(graph_name, member_type, kind) {
                    return e;
                }
            }
        }
        ExecError::UnknownMember {
            graph: graph_name.to_string(),
            name: raw.to_string(),
        }
    }

    /// Errors when `member_type` is a membership the graph type only
    /// inherits: inherited members cannot be changed in the subtype.
    fn check_own_membership(
        &self,
        graph_name: &str,
        member_type: &str,
        kind: TypeKind,
    ) -> Result<(), ExecError> {
        let gtype_name = &self.objects.get(graph_name).expect("resolved").type_ref;
        let mut current = gtype_name.clone();
        let mut first = true;
        loop {
            let Some(gt) = self.types.graph(&current) else {
                return Ok(());
            };
            let own = match kind {
                TypeKind::Vertex => &gt.member_vertex_types,
                TypeKind::Edge => &gt.member_edge_types,
                _ => &gt.member_graph_types,
            };
            if own.iter().any(|n| n == member_type) {
                if first {
                    return Ok(());
                }
                return Err(ExecError::InheritedMember {
                    graph: graph_name.to_string(),
                    member: member_type.to_string(),
                    origin: current,
                });
            }
            match &gt.super_name {
                Some(s) => {
                    current = s.clone();
                    first = false;
                }
                None => return Ok(()),
            }
        }
    }

    /// Adds a reference member to a graph object and its type. Returns
    /// the member's type name, or None when it already was a member.
    fn graph_add_member(
        &mut self,
        graph_name: &str,
        raw: &str,
        kind: TypeKind,
        session: &Session,
        result: &mut ExecResult,
    ) -> Result<Option<String>, ExecError> {
        let target = self
            .resolve_object(session, raw, kind)
            .map_err(|_| ExecError::UnknownMember {
                graph: graph_name.to_string(),
                name: raw.to_string(),
            })?;
        self.graph_add_member_exact(graph_name, &target, kind, result)
    }

    /// As [`Self::graph_add_member`], but `target` is an exact object
    /// name (already resolved).
    fn graph_add_member_exact(
        &mut self,
        graph_name: &str,
        target: &str,
        kind: TypeKind,
        result: &mut ExecResult,
    ) -> Result<Option<String>, ExecError> {
        let target = match self.objects.get(target) {
            Some(obj) if obj.kind == kind => obj.name.clone(),
            _ => {
                return Err(ExecError::UnknownMember {
                    graph: graph_name.to_string(),
                    name: target.to_string(),
                });
            }
        };
        let graph = self.objects.get(graph_name).expect("resolved");
        let member_type = self.objects.get(&target).expect("resolved").type_ref.clone();
        let gtype_name = graph.type_ref.clone();
        let already = graph.members.iter().any(|m| m.target == target);
        if !already {
            let alias = format!("{}.{}", graph_name, last_segment(&target));
            if graph.members.iter().any(|m| m.alias == alias) {
                return Err(ExecError::DuplicateObject { name: alias });
            }
            self.objects
                .get_mut(graph_name)
                .expect("resolved")
                .members
                .push(MemberRef {
                    alias,
                    target: target.clone(),
                });
        }
        // keep the type-level member list in sync even when the
        // object-level membership was already there
        if let Some(gt) = self.types.graph_mut(&gtype_name) {
            let list = match kind {
                TypeKind::Vertex => &mut gt.member_vertex_types,
                TypeKind::Edge => &mut gt.member_edge_types,
                _ => &mut gt.member_graph_types,
            };
            if !list.iter().any(|n| n == &member_type) {
                list.push(member_type.clone());
            }
        }
        let message = if already {
            format!("{} is already a member of {}", target, graph_name)
        } else {
            format!("added {} to {}", target, graph_name)
        };
        result.messages.push(message);
        Ok(Some(member_type))
    }

    /// The closure rule on membership changes: every non-wildcard
    /// endpoint vertex type of a member edge type becomes a member.
    fn include_edge_endpoints(
        &mut self,
        graph_name: &str,
        edge_type: &str,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let gtype = self.objects.get(graph_name).expect("resolved").type_ref.clone();
        let member_vertices = effective_graph_members(&self.types, &gtype)?.vertex_types;
        for pair in effective_pairs(&self.types, edge_type)? {
            for side in [&pair.from, &pair.to] {
                let Endpoints::Types(endpoint_types) = side else {
                    continue;
                };
                for endpoint in endpoint_types {
                    if !member_vertices.contains(endpoint) {
                        // a type-owning vertex object shares its
                        // type's name
                        self.graph_add_member_exact(
                            graph_name,
                            endpoint,
                            TypeKind::Vertex,
                            result,
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Drops a vertex membership from a graph. Without CASCADE it is
    /// an error while a member edge type still references the vertex
    /// type; with CASCADE those edge memberships are dropped first.
    fn graph_drop_vertex_member(
        &mut self,
        graph_name: &str,
        raw: &str,
        cascade: bool,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let member = self
            .find_member(graph_name, raw)
            .filter(|m| {
                self.objects
                    .get(&m.target)
                    .is_some_and(|o| o.kind == TypeKind::Vertex)
            })
            .ok_or_else(|| self.missing_member_error(graph_name, raw, TypeKind::Vertex))?;
        let vertex_type = self
            .objects
            .get(&member.target)
            .expect("filtered")
            .type_ref
            .clone();
        self.check_own_membership(graph_name, &vertex_type, TypeKind::Vertex)?;

        // member edge types whose pairs mention the vertex type
        let graph = self.objects.get(graph_name).expect("resolved");
        let mut referencing: Vec<MemberRef> = Vec::new();
        for m in &graph.members {
            let Some(target) = self.objects.get(&m.target) else {
                continue;
            };
            if target.kind != TypeKind::Edge {
                continue;
            }
            let pairs = effective_pairs(&self.types, &target.type_ref)?;
            if pairs.iter().any(|p| p.mentions(&vertex_type)) {
                referencing.push(m.clone());
            }
        }
        if !referencing.is_empty() {
            if !cascade {
                let edge_type = self
                    .objects
                    .get(&referencing[0].target)
                    .expect("filtered")
                    .type_ref
                    .clone();
                return Err(ExecError::ReferencedByEdge {
                    vertex: vertex_type,
                    edge: edge_type,
                });
            }
            for edge_member in referencing {
                let edge_type = self
                    .objects
                    .get(&edge_member.target)
                    .expect("filtered")
                    .type_ref
                    .clone();
                self.check_own_membership(graph_name, &edge_type, TypeKind::Edge)?;
                self.graph_remove_member(graph_name, &edge_member.alias, result)?;
            }
        }
        self.graph_remove_member(graph_name, &member.alias, result)?;
        let gtype = self.objects.get(graph_name).expect("resolved").type_ref.clone();
        self.verify_graph_closure(&gtype)
    }

    /// Removes one membership entry; an owned member's container
    /// object is removed with it.
    fn graph_remove_member(
        &mut self,
        graph_name: &str,
        alias: &str,
        result: &mut ExecResult,
    ) -> Result<(), ExecError> {
        let graph = self.objects.get_mut(graph_name).expect("resolved");
        let Some(idx) = graph.members.iter().position(|m| m.alias == alias) else {
            return Ok(());
        };
        let member = graph.members.remove(idx);
        let gtype_name = graph.type_ref.clone();

        let target = self.objects.get(&member.target).cloned();
        if let Some(target) = &target {
            if let Some(gt) = self.types.graph_mut(&gtype_name) {
                gt.member_vertex_types.retain(|n| n != &target.type_ref);
                gt.member_edge_types.retain(|n| n != &target.type_ref);
                gt.member_graph_types.retain(|n| n != &target.type_ref);
            }
        }

        if member.alias == member.target {
            // owned container object: it lives and dies with the graph
            if let Some(referrer) = self
                .objects
                .values()
                .find(|g| {
                    g.kind == TypeKind::Graph
                        && g.name != graph_name
                        && g.members.iter().any(|m| m.target == member.target)
                })
                .map(|g| g.name.clone())
            {
                return Err(ExecError::ReferencedByGraph {
                    name: member.target,
                    referrer,
                });
            }
            self.objects.remove(&member.target);
            result.dropped.push(member.target.clone());
        }
        Ok(())
    }

    /// Re-checks the closure rule for a graph type and all graph types
    /// that inherit from it.
    fn verify_graph_closure(&self, gtype_name: &str) -> Result<(), ExecError> {
        if self.types.graph(gtype_name).is_none() {
            return Ok(());
        }
        let mut to_check = vec![gtype_name.to_string()];
        to_check.extend(
            self.descendants(gtype_name)
                .into_iter()
                .filter(|d| self.types.graph(d).is_some()),
        );
        for name in to_check {
            let members = effective_graph_members(&self.types, &name)?;
            for edge_name in &members.edge_types {
                for pair in effective_pairs(&self.types, edge_name)? {
                    for side in [&pair.from, &pair.to] {
                        let Endpoints::Types(endpoint_types) = side else {
                            continue;
                        };
                        for endpoint in endpoint_types {
                            if !members.vertex_types.contains(endpoint) {
                                return Err(TypeError::ClosureViolation {
                                    graph: name.clone(),
                                    edge: edge_name.clone(),
                                    endpoint: endpoint.clone(),
                                }
                                .into());
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{save_catalog, CatalogEntry};
    use crate::parser::parse_script;
    use crate::typesys::effective_attributes;

    fn exec_all(catalog: &mut Catalog, session: &mut Session, script: &str) {
        for stmt in parse_script(script).unwrap() {
            catalog
                .execute(&stmt, session)
                .unwrap_or_else(|e| panic!("'{}' failed: {}", stmt, e));
        }
    }

    fn setup(script: &str) -> (Catalog, Session) {
        let mut catalog = Catalog::new();
        let mut session = Session::new();
        exec_all(&mut catalog, &mut session, script);
        (catalog, session)
    }

    fn exec_err(catalog: &mut Catalog, session: &mut Session, source: &str) -> ExecError {
        let stmt = crate::parser::parse_one(source).unwrap();
        catalog.execute(&stmt, session).unwrap_err()
    }

    const PEOPLE: &str = "\
CREATE VERTEX animal (name STRING PRIMARY KEY)
CREATE VERTEX person (name STRING NOT NULL PRIMARY KEY, age INT, gender STRING, state STRING)
";

    const SECTION_36: &str = "\
CREATE VERTEX animal (name STRING PRIMARY KEY)
CREATE VERTEX person (name STRING NOT NULL PRIMARY KEY, age INT, gender STRING, state STRING)
CREATE VERTEX professor EXTENDS person (position STRING)
CREATE UNDIRECTED EDGE friendship ((FROM person, TO person), (FROM person, TO animal), (FROM animal, TO animal), connect_day DATETIME)
CREATE DIRECTED EDGE supervise (FROM person, TO person, connect_day DATETIME, DISCRIMINATOR (connect_day)) WITH REVERSE_EDGE=\"supervised_by\"
CREATE DIRECTED EDGE mentorship EXTENDS supervise(end_day DATETIME) WITH REVERSE_EDGE=\"mentored_by\"
CREATE GRAPH social (person, friendship)
CREATE GRAPH company (person, supervise)
CREATE UNDIRECTED EDGE alumni_relation (FROM person, TO person)
CREATE GRAPH facebook EXTENDS social (alumni_relation)
";

    #[test]
    fn create_makes_type_and_object() {
        let (catalog, _) = setup(PEOPLE);
        assert!(catalog.types().vertex("person").is_some());
        let obj = catalog.object("person").unwrap();
        assert_eq!(obj.kind, TypeKind::Vertex);
        assert_eq!(obj.type_ref, "person");
        assert!(obj.container.is_some());
    }

    #[test]
    fn duplicate_create_fails_and_catalog_is_unchanged() {
        let (mut catalog, mut session) = setup(PEOPLE);
        let before = save_catalog(&catalog);
        let err = exec_err(
            &mut catalog,
            &mut session,
            "CREATE VERTEX person (name STRING PRIMARY KEY)",
        );
        assert!(matches!(err, ExecError::Type(TypeError::DuplicateType { .. })));
        assert_eq!(save_catalog(&catalog), before);
    }

    #[test]
    fn reverse_twin_is_materialized() {
        let (catalog, _) = setup(SECTION_36);
        let twin = catalog.types().edge("supervised_by").unwrap();
        assert!(twin.directed);
        assert_eq!(twin.reverse_name.as_deref(), Some("supervise"));
        assert!(catalog.object("supervised_by").is_some());
        // the subtype's twin mirrors the inheritance chain
        let mentored = catalog.types().edge("mentored_by").unwrap();
        assert_eq!(mentored.super_name.as_deref(), Some("supervised_by"));
        let attrs = effective_attributes(catalog.types(), "mentored_by").unwrap();
        let names: Vec<&str> = attrs.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["connect_day", "end_day"]);
    }

    #[test]
    fn graph_members_are_references_with_auto_included_endpoints() {
        let (catalog, _) = setup(SECTION_36);
        let social = catalog.object("social").unwrap();
        assert_eq!(social.container, None);
        let targets: Vec<&str> = social.members.iter().map(|m| m.target.as_str()).collect();
        assert_eq!(targets, vec!["person", "friendship", "animal"]);
        let gt = catalog.types().graph("social").unwrap();
        assert_eq!(gt.member_vertex_types, vec!["person", "animal"]);
        // company shares the person object
        let company = catalog.object("company").unwrap();
        assert!(company.members.iter().any(|m| m.target == "person"));
    }

    #[test]
    fn graph_subtype_inherits_members() {
        let (catalog, _) = setup(SECTION_36);
        let members = effective_graph_members(catalog.types(), "facebook").unwrap();
        assert!(members.vertex_types.contains(&"person".to_string()));
        assert!(members.edge_types.contains(&"friendship".to_string()));
        assert!(members.edge_types.contains(&"alumni_relation".to_string()));
    }

    const SECTION_4: &str = "\
CREATE VERTEX A (id INT PRIMARY KEY)
CREATE UNDIRECTED EDGE B (FROM A, TO A)
CREATE GRAPH G1 (references A, references B)
CREATE GRAPH G2 OWNS (A, B)
CREATE GRAPH G3 AS G1
CREATE GRAPH G4 (references G1)
USE GRAPH G1
CREATE VERTEX C (id INT PRIMARY KEY)
";

    #[test]
    fn multi_graph_script_builds_the_expected_entries() {
        let (catalog, session) = setup(SECTION_4);
        assert_eq!(session.current_graph.as_deref(), Some("G1"));
        assert_eq!(catalog.entries().len(), 15);

        let g1 = catalog.object("G1").unwrap();
        let refs: Vec<(&str, &str)> = g1
            .members
            .iter()
            .map(|m| (m.alias.as_str(), m.target.as_str()))
            .collect();
        assert_eq!(refs, vec![("G1.A", "A"), ("G1.B", "B"), ("G1.C", "G1.C")]);
        assert_eq!(g1.container, None);

        let g2a = catalog.object("G2.A").unwrap();
        assert_eq!(g2a.type_ref, "A");
        assert!(g2a.container.is_some());

        let g3 = catalog.object("G3").unwrap();
        assert_eq!(g3.type_ref, "G1");
        let g3_refs: Vec<(&str, &str)> = g3
            .members
            .iter()
            .map(|m| (m.alias.as_str(), m.target.as_str()))
            .collect();
        assert_eq!(g3_refs, vec![("G3.A", "A"), ("G3.B", "B")]);
        assert!(catalog.types().graph("G3").is_none());

        let g4 = catalog.object("G4").unwrap();
        assert_eq!(
            g4.members
                .iter()
                .map(|m| (m.alias.as_str(), m.target.as_str()))
                .collect::<Vec<_>>(),
            vec![("G4.G1", "G1")]
        );

        assert!(catalog.types().vertex("G1.C").is_some());
        let c = catalog.object("G1.C").unwrap();
        assert_eq!(c.type_ref, "G1.C");
    }

    #[test]
    fn scoped_create_twice_is_a_duplicate() {
        let (mut catalog, mut session) = setup(SECTION_4);
        let err = exec_err(
            &mut catalog,
            &mut session,
            "CREATE VERTEX C (id INT PRIMARY KEY)",
        );
        assert!(matches!(err, ExecError::Type(TypeError::DuplicateType { .. })));
    }

    #[test]
    fn use_graph_semantics() {
        let (mut catalog, mut session) = setup(SECTION_4);
        let err = exec_err(&mut catalog, &mut session, "USE GRAPH nosuch");
        assert!(matches!(err, ExecError::UnknownGraph { .. }));
        // last writer wins
        let stmt = crate::parser::parse_one("USE GRAPH G2").unwrap();
        catalog.execute(&stmt, &mut session).unwrap();
        assert_eq!(session.current_graph.as_deref(), Some("G2"));
    }

    #[test]
    fn drop_vertex_without_cascade_is_blocked_by_edges() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "DROP VERTEX animal");
        assert!(
            matches!(err, ExecError::ReferencedByEdge { ref vertex, ref edge }
                if vertex == "animal" && edge == "friendship")
        );
    }

    #[test]
    fn drop_vertex_cascade_trims_pairs() {
        // §3.7 by hand: friendship pairs {(p,p),(p,a),(a,a)} minus
        // pairs mentioning person leaves {(a,a)}
        let (mut catalog, mut session) = setup(SECTION_36);
        exec_all(
            &mut catalog,
            &mut session,
            "DROP GRAPH facebook\nDROP GRAPH social, company\nDROP EDGE mentorship\nDROP EDGE supervise\nDROP VERTEX professor\nDROP VERTEX person CASCADE",
        );
        let friendship = catalog.types().edge("friendship").unwrap();
        assert_eq!(friendship.pairs.len(), 1);
        assert!(friendship.pairs[0].mentions("animal"));
        assert!(!friendship.pairs[0].mentions("person"));
        assert!(catalog.object("friendship").is_some());
    }

    #[test]
    fn drop_vertex_cascade_drops_fully_mentioning_edges() {
        let (mut catalog, mut session) = setup(
            "CREATE VERTEX a (id INT PRIMARY KEY)\nCREATE UNDIRECTED EDGE e (FROM a, TO a)\n",
        );
        exec_all(&mut catalog, &mut session, "DROP VERTEX a CASCADE");
        assert!(catalog.types().edge("e").is_none());
        assert!(catalog.object("e").is_none());
        assert!(catalog.is_empty());
    }

    #[test]
    fn drop_vertex_with_subtypes_is_an_error() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "DROP VERTEX person CASCADE");
        assert!(matches!(err, ExecError::HasSubtypes { .. }));
    }

    #[test]
    fn drop_vertex_star_requires_no_edges() {
        let (mut catalog, mut session) = setup(PEOPLE);
        exec_all(&mut catalog, &mut session, "DROP VERTEX *");
        assert!(catalog.is_empty());
    }

    #[test]
    fn drop_vertex_star_handles_subtype_order() {
        let (mut catalog, mut session) = setup(
            "CREATE VERTEX person (name STRING PRIMARY KEY)\nCREATE VERTEX professor EXTENDS person (position STRING)\n",
        );
        exec_all(&mut catalog, &mut session, "DROP VERTEX *");
        assert!(catalog.is_empty());
    }

    #[test]
    fn drop_edge_list_removes_reverse_twin() {
        let (mut catalog, mut session) = setup(SECTION_36);
        exec_all(&mut catalog, &mut session, "DROP EDGE mentorship");
        assert!(catalog.types().edge("mentored_by").is_none());
        exec_all(&mut catalog, &mut session, "DROP EDGE friendship, supervise");
        assert!(catalog.types().edge("supervised_by").is_none());
        assert!(catalog.object("supervised_by").is_none());
        assert!(catalog.types().edge("friendship").is_none());
        // graphs shed the dropped memberships
        let social = catalog.object("social").unwrap();
        assert!(!social.members.iter().any(|m| m.target == "friendship"));
    }

    #[test]
    fn drop_edge_with_subtype_is_an_error() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "DROP EDGE supervise");
        assert!(
            matches!(err, ExecError::HasSubtypes { ref name, ref subtype }
                if name == "supervise" && subtype == "mentorship")
        );
    }

    #[test]
    fn drop_edge_star_clears_all_edges() {
        let (mut catalog, mut session) = setup(SECTION_36);
        exec_all(&mut catalog, &mut session, "DROP EDGE *");
        assert!(catalog.list(TypeKind::Edge).is_empty());
        assert!(catalog.types().iter().all(|t| t.kind() != TypeKind::Edge));
    }

    #[test]
    fn drop_graph_removes_owned_children_only() {
        let (mut catalog, mut session) = setup(SECTION_4);
        exec_all(&mut catalog, &mut session, "DROP GRAPH G2");
        assert!(catalog.object("G2").is_none());
        assert!(catalog.object("G2.A").is_none());
        assert!(catalog.object("G2.B").is_none());
        assert!(catalog.types().graph("G2").is_none());
        assert!(catalog.object("A").is_some());
        assert!(catalog.object("B").is_some());
    }

    #[test]
    fn drop_graph_blocked_by_references() {
        let (mut catalog, mut session) = setup(SECTION_4);
        let err = exec_err(&mut catalog, &mut session, "DROP GRAPH G1");
        assert!(
            matches!(err, ExecError::ReferencedByGraph { ref referrer, .. } if referrer == "G4")
        );
    }

    #[test]
    fn drop_graph_keeps_shared_type_until_last_instance() {
        let (mut catalog, mut session) = setup(SECTION_4);
        exec_all(&mut catalog, &mut session, "DROP GRAPH G4");
        assert!(catalog.types().graph("G4").is_none());
        // G3 still instantiates graph type G1
        exec_all(&mut catalog, &mut session, "DROP GRAPH G1");
        assert!(catalog.object("G1").is_none());
        assert!(catalog.types().graph("G1").is_some());
        assert!(catalog.object("G1.C").is_none());
        assert!(catalog.types().vertex("G1.C").is_none());
        exec_all(&mut catalog, &mut session, "DROP GRAPH G3");
        assert!(catalog.types().graph("G1").is_none());
    }

    #[test]
    fn drop_graph_clears_session_scope() {
        let (mut catalog, mut session) = setup(SECTION_4);
        exec_all(&mut catalog, &mut session, "DROP GRAPH G4");
        assert_eq!(session.current_graph.as_deref(), Some("G1"));
        exec_all(&mut catalog, &mut session, "DROP GRAPH G1");
        assert_eq!(session.current_graph, None);
    }

    #[test]
    fn drop_graph_with_subtype_is_an_error() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "DROP GRAPH social");
        assert!(matches!(err, ExecError::HasSubtypes { .. }));
        exec_all(&mut catalog, &mut session, "DROP GRAPH facebook");
        exec_all(&mut catalog, &mut session, "DROP GRAPH social, company");
        assert!(catalog.object("person").is_some());
    }

    const LABELS: &str = "\
CREATE LABEL color DESCRIPTION \"color super class\"
CREATE LABEL car DESCRIPTION \"car super class\"
CREATE LABEL redcar EXTENDS color, car
";

    #[test]
    fn label_lifecycle() {
        let (mut catalog, mut session) = setup(LABELS);
        let err = exec_err(&mut catalog, &mut session, "DROP LABEL color");
        assert!(matches!(err, ExecError::HasSubtypes { .. }));
        exec_all(&mut catalog, &mut session, "DROP LABEL redcar\nDROP LABEL color");
        assert!(catalog.object("redcar").is_none());
        let err = exec_err(&mut catalog, &mut session, "DROP LABEL nosuch");
        assert!(matches!(err, ExecError::UnknownObject { .. }));
    }

    #[test]
    fn alter_vertex_add_propagates_to_descendants() {
        let (mut catalog, mut session) = setup(SECTION_36);
        exec_all(&mut catalog, &mut session, "ALTER VERTEX person ADD (ssn VARCHAR(9))");
        let attrs = effective_attributes(catalog.types(), "professor").unwrap();
        let names: Vec<&str> = attrs.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["name", "age", "gender", "state", "ssn", "position"]);
        exec_all(&mut catalog, &mut session, "ALTER VERTEX person DROP (ssn VARCHAR(9))");
        let attrs = effective_attributes(catalog.types(), "professor").unwrap();
        assert!(!attrs.iter().any(|a| a.name == "ssn"));
    }

    #[test]
    fn alter_vertex_guards() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "ALTER VERTEX professor DROP (name)");
        assert!(
            matches!(err, ExecError::InheritedAttribute { ref origin, .. } if origin == "person")
        );
        let err = exec_err(&mut catalog, &mut session, "ALTER VERTEX person DROP (name)");
        assert!(matches!(err, ExecError::PrimaryKeyAttribute { .. }));
        let err = exec_err(&mut catalog, &mut session, "ALTER VERTEX person ADD (age INT)");
        assert!(matches!(err, ExecError::DuplicateAttribute { .. }));
        // adding a name held by a descendant's own attributes
        let err = exec_err(&mut catalog, &mut session, "ALTER VERTEX person ADD (position STRING)");
        assert!(matches!(err, ExecError::DuplicateAttribute { .. }));
        let err = exec_err(&mut catalog, &mut session, "ALTER VERTEX person DROP (nosuch)");
        assert!(matches!(err, ExecError::UnknownAttribute { .. }));
    }

    #[test]
    fn alter_edge_mirrors_reverse_twin() {
        let (mut catalog, mut session) = setup(SECTION_36);
        exec_all(&mut catalog, &mut session, "ALTER EDGE supervise ADD (note STRING)");
        let twin_attrs = effective_attributes(catalog.types(), "supervised_by").unwrap();
        assert!(twin_attrs.iter().any(|a| a.name == "note"));
        // and descendants of both sides see it
        let attrs = effective_attributes(catalog.types(), "mentored_by").unwrap();
        assert!(attrs.iter().any(|a| a.name == "note"));
        exec_all(&mut catalog, &mut session, "ALTER EDGE supervised_by DROP (note)");
        let attrs = effective_attributes(catalog.types(), "supervise").unwrap();
        assert!(!attrs.iter().any(|a| a.name == "note"));
    }

    #[test]
    fn alter_edge_discriminator_cannot_be_dropped() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(&mut catalog, &mut session, "ALTER EDGE supervise DROP (connect_day)");
        assert!(matches!(err, ExecError::DiscriminatorAttribute { .. }));
    }

    const SCHOOL: &str = "\
CREATE VERTEX student (name STRING PRIMARY KEY)
CREATE VERTEX professor (name STRING PRIMARY KEY)
CREATE VERTEX class (code STRING PRIMARY KEY)
CREATE DIRECTED EDGE teach_class (FROM professor, TO class)
CREATE GRAPH school (student)
";

    #[test]
    fn alter_graph_add_edge_auto_includes_endpoints() {
        let (mut catalog, mut session) = setup(SCHOOL);
        exec_all(&mut catalog, &mut session, "ALTER GRAPH school ADD EDGE (teach_class)");
        let gt = catalog.types().graph("school").unwrap();
        assert!(gt.member_edge_types.contains(&"teach_class".to_string()));
        assert!(gt.member_vertex_types.contains(&"professor".to_string()));
        assert!(gt.member_vertex_types.contains(&"class".to_string()));
        let school = catalog.object("school").unwrap();
        assert!(school.members.iter().any(|m| m.target == "professor"));
    }

    #[test]
    fn alter_graph_drop_vertex_cascades_member_edges() {
        let (mut catalog, mut session) = setup(SCHOOL);
        exec_all(&mut catalog, &mut session, "ALTER GRAPH school ADD EDGE (teach_class)");
        let err = exec_err(
            &mut catalog,
            &mut session,
            "ALTER GRAPH school DROP VERTEX (professor)",
        );
        assert!(matches!(err, ExecError::ReferencedByEdge { .. }));
        exec_all(
            &mut catalog,
            &mut session,
            "ALTER GRAPH school DROP VERTEX (professor) CASCADE",
        );
        let gt = catalog.types().graph("school").unwrap();
        assert!(!gt.member_vertex_types.contains(&"professor".to_string()));
        assert!(!gt.member_edge_types.contains(&"teach_class".to_string()));
        // the types themselves survive; only membership changed
        assert!(catalog.types().edge("teach_class").is_some());
        assert!(catalog.object("professor").is_some());
    }

    #[test]
    fn alter_graph_drop_edge_removes_only_membership() {
        let (mut catalog, mut session) = setup(SCHOOL);
        exec_all(&mut catalog, &mut session, "ALTER GRAPH school ADD EDGE (teach_class)");
        exec_all(&mut catalog, &mut session, "ALTER GRAPH school DROP EDGE (teach_class)");
        let gt = catalog.types().graph("school").unwrap();
        assert!(gt.member_edge_types.is_empty());
        assert!(gt.member_vertex_types.contains(&"professor".to_string()));
        assert!(catalog.types().edge("teach_class").is_some());
    }

    #[test]
    fn alter_graph_inherited_member_cannot_be_dropped() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let err = exec_err(
            &mut catalog,
            &mut session,
            "ALTER GRAPH facebook DROP VERTEX (animal) CASCADE",
        );
        assert!(matches!(err, ExecError::InheritedMember { .. }));
    }

    #[test]
    fn entries_match_paper_enumeration_shape() {
        let (catalog, _) = setup(SECTION_4);
        let has_type = |name: &str, kind: TypeKind| {
            catalog.entries().iter().any(|e| {
                matches!(e, CatalogEntry::Type { name: n, kind: k } if n == name && *k == kind)
            })
        };
        assert!(has_type("A", TypeKind::Vertex));
        assert!(has_type("B", TypeKind::Edge));
        assert!(has_type("G1", TypeKind::Graph));
        assert!(has_type("G2", TypeKind::Graph));
        assert!(has_type("G4", TypeKind::Graph));
        assert!(has_type("G1.C", TypeKind::Vertex));
        assert!(!has_type("G3", TypeKind::Graph));
    }

    #[test]
    fn edge_key_descriptions() {
        use crate::typesys::{effective_edge_key, EdgeKeyPart};
        let (catalog, _) = setup(SECTION_36);
        // a discriminator extends the default (source pk, target pk) key
        assert_eq!(
            effective_edge_key(catalog.types(), "supervise").unwrap(),
            vec![
                EdgeKeyPart::SourcePrimaryKey,
                EdgeKeyPart::TargetPrimaryKey,
                EdgeKeyPart::Attribute("connect_day".to_string())
            ]
        );
        assert_eq!(
            effective_edge_key(catalog.types(), "friendship").unwrap(),
            vec![EdgeKeyPart::SourcePrimaryKey, EdgeKeyPart::TargetPrimaryKey]
        );
        // subtypes share the super's key description
        assert_eq!(
            effective_edge_key(catalog.types(), "mentorship").unwrap(),
            effective_edge_key(catalog.types(), "supervise").unwrap()
        );
    }

    #[test]
    fn builtin_label_attribute_is_reported() {
        use crate::datatype::DataType;
        use crate::typesys::{label_attribute, LABEL_ATTRIBUTE};
        let (catalog, _) = setup(SECTION_36);
        assert!(catalog.types().vertex("person").unwrap().has_label_attribute());
        assert!(catalog.types().edge("friendship").unwrap().has_label_attribute());
        assert!(catalog.types().graph("social").unwrap().has_label_attribute());
        let attr = label_attribute("person");
        assert_eq!(attr.name, LABEL_ATTRIBUTE);
        assert_eq!(attr.data_type, DataType::Set(Box::new(DataType::String)));
        // never part of the effective list and never declarable
        let attrs = effective_attributes(catalog.types(), "person").unwrap();
        assert!(attrs.iter().all(|a| a.name != LABEL_ATTRIBUTE));
    }

    #[test]
    fn create_then_drop_restores_the_serialized_catalog() {
        let (mut catalog, mut session) = setup(SECTION_36);
        let before = save_catalog(&catalog);
        for (create, drop) in [
            ("CREATE VERTEX extra (id INT PRIMARY KEY)", "DROP VERTEX extra"),
            (
                "CREATE DIRECTED EDGE extra (FROM person, TO person) WITH REVERSE_EDGE=\"extra_rev\"",
                "DROP EDGE extra",
            ),
            ("CREATE GRAPH extra (person)", "DROP GRAPH extra"),
            ("CREATE LABEL extra", "DROP LABEL extra"),
        ] {
            exec_all(&mut catalog, &mut session, create);
            assert_ne!(save_catalog(&catalog), before, "{} changed nothing", create);
            exec_all(&mut catalog, &mut session, drop);
            assert_eq!(
                save_catalog(&catalog),
                before,
                "{} then {} did not restore the catalog",
                create,
                drop
            );
        }
    }

    #[test]
    fn reverse_name_collisions_are_rejected() {
        let (mut catalog, mut session) = setup(PEOPLE);
        let err = exec_err(
            &mut catalog,
            &mut session,
            "CREATE DIRECTED EDGE e (FROM person, TO person) WITH REVERSE_EDGE=\"e\"",
        );
        assert!(matches!(err, ExecError::Type(TypeError::InvalidReverseName { .. })));
        let err = exec_err(
            &mut catalog,
            &mut session,
            "CREATE DIRECTED EDGE e (FROM person, TO person) WITH REVERSE_EDGE=\"person\"",
        );
        assert!(matches!(err, ExecError::Type(TypeError::DuplicateType { .. })));
    }

    #[test]
    fn dropping_a_dotted_member_object_uses_membership_semantics() {
        let (mut catalog, mut session) = setup(SECTION_4);
        // G2.B (of type B) references type A, so the owned member G2.A
        // cannot leave without CASCADE
        let err = exec_err(&mut catalog, &mut session, "DROP VERTEX G2.A");
        assert!(matches!(err, ExecError::ReferencedByEdge { .. }));
        exec_all(&mut catalog, &mut session, "DROP VERTEX G2.A CASCADE");
        assert!(catalog.object("G2.A").is_none());
        assert!(catalog.object("G2.B").is_none());
        // only membership went away: the global types and objects stay
        assert!(catalog.object("A").is_some());
        assert!(catalog.object("B").is_some());
        assert!(catalog.types().vertex("A").is_some());
        let g2 = catalog.object("G2").unwrap();
        assert!(g2.members.is_empty());
    }

    #[test]
    fn altering_a_dotted_member_object_changes_its_type() {
        let (mut catalog, mut session) = setup(SECTION_4);
        exec_all(&mut catalog, &mut session, "ALTER VERTEX G2.A ADD (extra INT)");
        let attrs = effective_attributes(catalog.types(), "A").unwrap();
        assert!(attrs.iter().any(|a| a.name == "extra"));
    }

    #[test]
    fn owned_and_reference_container_split() {
        let (catalog, _) = setup(SECTION_4);
        // reference/instance graphs own nothing; owned members and the
        // OWNS graph itself have fresh containers
        assert_eq!(catalog.object("G1").unwrap().container, None);
        assert_eq!(catalog.object("G3").unwrap().container, None);
        assert_eq!(catalog.object("G4").unwrap().container, None);
        assert!(catalog.object("G2").unwrap().container.is_some());
        let a = catalog.object("G2.A").unwrap().container.unwrap();
        let b = catalog.object("G2.B").unwrap().container.unwrap();
        assert_ne!(a, b);
    }
}
