//! Property suites: parser round-trips, persistence round-trips,
//! referential integrity, statement atomicity, and inheritance
//! invariants, each over 1000 randomized cases.

use graphddl::ast::*;
use graphddl::catalog::{load_catalog, save_catalog};
use graphddl::token::Keyword;
use graphddl::typesys::{
    effective_attributes, effective_graph_members, effective_pairs, Endpoints, SchemaType,
};
use graphddl::{parse_one, parse_script, Catalog, Session, Statement, TypeKind};
use proptest::prelude::*;

// ---- statement strategies -------------------------------------------

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,5}".prop_filter("keywords are not identifiers", |s| {
        Keyword::from_ident(s).is_none()
    })
}

fn dotted_name() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => ident(),
        1 => (ident(), ident()).prop_map(|(a, b)| format!("{}.{}", a, b)),
    ]
}

fn data_type_text() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("INT".to_string()),
        Just("UINT".to_string()),
        Just("FLOAT".to_string()),
        Just("DOUBLE".to_string()),
        Just("BOOL".to_string()),
        Just("STRING".to_string()),
        Just("DATETIME".to_string()),
        (1u32..200).prop_map(|n| format!("VARCHAR({})", n)),
        Just("MAP<STRING,INT>".to_string()),
        Just("LIST<MAP<STRING,INT>>".to_string()),
        Just("SET<VARCHAR(3)>".to_string()),
        Just("ORDER<DOUBLE>".to_string()),
    ]
}

fn attr_spec() -> impl Strategy<Value = AttributeSpec> {
    (ident(), data_type_text(), any::<bool>()).prop_map(|(name, data_type_text, not_null)| {
        AttributeSpec {
            name,
            data_type_text,
            not_null,
            inline_primary_key: false,
        }
    })
}

fn create_vertex() -> impl Strategy<Value = Statement> {
    let rooted = (
        ident(),
        prop::collection::vec(attr_spec(), 1..4),
        prop_oneof![Just(0u8), Just(1), Just(2)],
        any::<prop::sample::Index>(),
    )
        .prop_map(|(name, mut attributes, mode, index)| {
            let key_clause = match mode {
                0 => {
                    let i = index.index(attributes.len());
                    attributes[i].inline_primary_key = true;
                    None
                }
                1 => {
                    let i = index.index(attributes.len());
                    Some(KeyClause::Columns(vec![attributes[i].name.clone()]))
                }
                _ => Some(KeyClause::Uuid),
            };
            Statement::CreateVertex(CreateVertex {
                name,
                extends: None,
                attributes,
                key_clause,
            })
        });
    let subtype = (ident(), dotted_name(), prop::collection::vec(attr_spec(), 0..3)).prop_map(
        |(name, super_name, attributes)| {
            Statement::CreateVertex(CreateVertex {
                name,
                extends: Some(super_name),
                attributes,
                key_clause: None,
            })
        },
    );
    prop_oneof![3 => rooted, 1 => subtype]
}

fn endpoint_set() -> impl Strategy<Value = EndpointSet> {
    prop_oneof![
        1 => Just(EndpointSet::Wildcard),
        4 => prop::collection::vec(dotted_name(), 1..3).prop_map(EndpointSet::Named),
    ]
}

fn create_edge() -> impl Strategy<Value = Statement> {
    let pair = (endpoint_set(), endpoint_set())
        .prop_map(|(from, to)| EndpointPairSpec { from, to });
    let rooted = (
        ident(),
        any::<bool>(),
        prop::collection::vec(pair, 1..3),
        prop::collection::vec(attr_spec(), 0..3),
        prop::option::of(prop::collection::vec(ident(), 1..3)),
        prop::option::of(ident()),
    )
        .prop_map(
            |(name, directed, pairs, attributes, discriminator, reverse_edge)| {
                Statement::CreateEdge(CreateEdge {
                    name,
                    directed,
                    extends: None,
                    pairs,
                    attributes,
                    discriminator,
                    reverse_edge,
                })
            },
        );
    let subtype = (
        ident(),
        any::<bool>(),
        dotted_name(),
        prop::collection::vec(attr_spec(), 0..3),
        prop::option::of(ident()),
    )
        .prop_map(|(name, directed, super_name, attributes, reverse_edge)| {
            Statement::CreateEdge(CreateEdge {
                name,
                directed,
                extends: Some(super_name),
                pairs: Vec::new(),
                attributes,
                discriminator: None,
                reverse_edge,
            })
        });
    prop_oneof![3 => rooted, 1 => subtype]
}

fn create_graph() -> impl Strategy<Value = Statement> {
    let member = (any::<bool>(), dotted_name()).prop_map(|(reference, name)| MemberSpec {
        reference,
        name,
    });
    let members_form = (
        ident(),
        prop_oneof![
            2 => Just((None::<String>, false)),
            1 => dotted_name().prop_map(|s| (Some(s), false)),
            1 => Just((None, true)),
        ],
        prop::collection::vec(member, 0..4),
    )
        .prop_map(|(name, (extends, owns), mut members)| {
            if owns {
                for m in &mut members {
                    m.reference = false;
                }
            }
            Statement::CreateGraph(CreateGraph {
                name,
                form: GraphForm::Members {
                    extends,
                    owns,
                    members,
                },
            })
        });
    let as_form = (ident(), dotted_name()).prop_map(|(name, source)| {
        Statement::CreateGraph(CreateGraph {
            name,
            form: GraphForm::AsType(source),
        })
    });
    prop_oneof![3 => members_form, 1 => as_form]
}

fn description() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-zA-Z0-9 _.,!-]{0,16}",
        "[a-zA-Z ]{0,8}".prop_map(|s| format!("say \"{}\" twice", s)),
    ]
}

fn create_label() -> impl Strategy<Value = Statement> {
    (
        ident(),
        prop::option::of(description()),
        prop::collection::vec(ident(), 0..3),
        prop::collection::vec(attr_spec(), 0..3),
    )
        .prop_map(|(name, description, extends, attributes)| {
            Statement::CreateLabel(CreateLabel {
                name,
                description,
                extends,
                attributes,
            })
        })
}

fn drop_targets() -> impl Strategy<Value = DropTargets> {
    prop_oneof![
        1 => Just(DropTargets::Star),
        4 => prop::collection::vec(dotted_name(), 1..3).prop_map(DropTargets::Names),
    ]
}

fn alter_attr_action() -> impl Strategy<Value = AlterAttrAction> {
    prop_oneof![
        prop::collection::vec(attr_spec(), 1..3).prop_map(AlterAttrAction::Add),
        prop::collection::vec(ident(), 1..3).prop_map(AlterAttrAction::Drop),
    ]
}

fn statement() -> impl Strategy<Value = Statement> {
    prop_oneof![
        create_vertex(),
        create_edge(),
        create_graph(),
        create_label(),
        (drop_targets(), any::<bool>()).prop_map(|(targets, cascade)| {
            Statement::DropVertex(DropVertex { targets, cascade })
        }),
        drop_targets().prop_map(|targets| Statement::DropEdge(DropEdge { targets })),
        prop::collection::vec(dotted_name(), 1..3)
            .prop_map(|names| Statement::DropGraph(DropGraph { names })),
        prop::collection::vec(ident(), 1..3)
            .prop_map(|names| Statement::DropLabel(DropLabel { names })),
        (dotted_name(), alter_attr_action())
            .prop_map(|(name, action)| Statement::AlterVertex(AlterVertex { name, action })),
        (dotted_name(), alter_attr_action())
            .prop_map(|(name, action)| Statement::AlterEdge(AlterEdge { name, action })),
        (
            dotted_name(),
            prop_oneof![
                prop::collection::vec(dotted_name(), 1..3).prop_map(AlterGraphAction::AddVertex),
                prop::collection::vec(dotted_name(), 1..3).prop_map(AlterGraphAction::AddEdge),
                (prop::collection::vec(dotted_name(), 1..3), any::<bool>())
                    .prop_map(|(names, cascade)| AlterGraphAction::DropVertex { names, cascade }),
                prop::collection::vec(dotted_name(), 1..3).prop_map(AlterGraphAction::DropEdge),
            ]
        )
            .prop_map(|(name, action)| Statement::AlterGraph(AlterGraph { name, action })),
        dotted_name().prop_map(|name| Statement::UseGraph(UseGraph { name })),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// parse(print(s)) == s for arbitrary well-formed statements.
    #[test]
    fn parse_print_round_trip(stmt in statement()) {
        let printed = stmt.to_string();
        let reparsed = parse_one(&printed)
            .unwrap_or_else(|e| panic!("printed form {:?} failed to parse: {}", printed, e));
        prop_assert_eq!(&reparsed, &stmt, "printed form was {:?}", printed);
        // and printing is a fixed point after one round
        prop_assert_eq!(reparsed.to_string(), printed);
    }
}

// ---- randomized DDL sequences ---------------------------------------

/// One abstract action; the driver turns it into a concrete statement
/// against the current catalog, so most actions are valid while some
/// are deliberate failures.
#[derive(Clone, Debug)]
enum Action {
    CreateVertex(u8),
    CreateSubVertex(u8, u8),
    CreateEdge(u8, u8, u8, bool, bool),
    CreateGraph(u8, Vec<u8>, bool),
    CreateGraphAs(u8, u8),
    CreateLabel(u8, Option<u8>),
    UseGraph(u8),
    DropVertex(u8, bool),
    DropEdge(u8),
    DropGraph(u8),
    DropLabel(u8),
    AlterVertexAdd(u8, u8),
    AlterVertexDrop(u8, u8),
    AlterEdgeAdd(u8, u8),
    AlterGraphAddEdge(u8, u8),
    AlterGraphDropVertex(u8, u8, bool),
    InjectDuplicateCreate(u8),
    InjectDropMissing,
    InjectUnknownAlter(u8),
}

fn action() -> impl Strategy<Value = Action> {
    use Action::*;
    prop_oneof![
        6 => any::<u8>().prop_map(CreateVertex),
        3 => (any::<u8>(), any::<u8>()).prop_map(|(a, b)| CreateSubVertex(a, b)),
        5 => (any::<u8>(), any::<u8>(), any::<u8>(), any::<bool>(), any::<bool>())
            .prop_map(|(n, f, t, d, r)| CreateEdge(n, f, t, d, r)),
        3 => (any::<u8>(), prop::collection::vec(any::<u8>(), 0..4), any::<bool>())
            .prop_map(|(n, m, o)| CreateGraph(n, m, o)),
        1 => (any::<u8>(), any::<u8>()).prop_map(|(n, s)| CreateGraphAs(n, s)),
        2 => (any::<u8>(), prop::option::of(any::<u8>())).prop_map(|(n, s)| CreateLabel(n, s)),
        1 => any::<u8>().prop_map(UseGraph),
        2 => (any::<u8>(), any::<bool>()).prop_map(|(n, c)| DropVertex(n, c)),
        2 => any::<u8>().prop_map(DropEdge),
        1 => any::<u8>().prop_map(DropGraph),
        1 => any::<u8>().prop_map(DropLabel),
        2 => (any::<u8>(), any::<u8>()).prop_map(|(t, a)| AlterVertexAdd(t, a)),
        1 => (any::<u8>(), any::<u8>()).prop_map(|(t, a)| AlterVertexDrop(t, a)),
        1 => (any::<u8>(), any::<u8>()).prop_map(|(t, a)| AlterEdgeAdd(t, a)),
        1 => (any::<u8>(), any::<u8>()).prop_map(|(g, e)| AlterGraphAddEdge(g, e)),
        1 => (any::<u8>(), any::<u8>(), any::<bool>())
            .prop_map(|(g, v, c)| AlterGraphDropVertex(g, v, c)),
        1 => any::<u8>().prop_map(InjectDuplicateCreate),
        1 => Just(InjectDropMissing),
        1 => any::<u8>().prop_map(InjectUnknownAlter),
    ]
}

fn pick(names: &[String], index: u8) -> Option<&str> {
    if names.is_empty() {
        None
    } else {
        Some(names[index as usize % names.len()].as_str())
    }
}

/// Renders an action into concrete DDL against the current state.
fn realize(action: &Action, catalog: &Catalog) -> String {
    let vertices = catalog.list(TypeKind::Vertex);
    let edges = catalog.list(TypeKind::Edge);
    let graphs = catalog.list(TypeKind::Graph);
    let labels = catalog.list(TypeKind::Label);
    match action {
        Action::CreateVertex(n) => {
            format!("CREATE VERTEX v{} (k{} INT PRIMARY KEY, d{} STRING)", n, n, n)
        }
        Action::CreateSubVertex(n, s) => match pick(&vertices, *s) {
            Some(super_name) => format!("CREATE VERTEX s{} EXTENDS {} (x{} INT)", n, super_name, n),
            None => format!("CREATE VERTEX v{} (k{} INT PRIMARY KEY)", n, n),
        },
        Action::CreateEdge(n, f, t, directed, reverse) => {
            match (pick(&vertices, *f), pick(&vertices, *t)) {
                (Some(from), Some(to)) => {
                    let dir = if *directed { "DIRECTED" } else { "UNDIRECTED" };
                    let with = if *directed && *reverse {
                        format!(" WITH REVERSE_EDGE=\"e{}_rev\"", n)
                    } else {
                        String::new()
                    };
                    format!(
                        "CREATE {} EDGE e{} (FROM {}, TO {}, w{} INT){}",
                        dir, n, from, to, n, with
                    )
                }
                _ => format!("CREATE VERTEX v{} (k{} INT PRIMARY KEY)", n, n),
            }
        }
        Action::CreateGraph(n, members, owns) => {
            let pool: Vec<String> = vertices.iter().chain(edges.iter()).cloned().collect();
            let chosen: Vec<String> = members
                .iter()
                .filter_map(|i| pick(&pool, *i).map(str::to_string))
                .collect();
            let owns = *owns && !chosen.is_empty();
            format!(
                "CREATE GRAPH g{}{} ({})",
                n,
                if owns { " OWNS" } else { "" },
                chosen.join(", ")
            )
        }
        Action::CreateGraphAs(n, s) => match pick(&graphs, *s) {
            Some(source) => format!("CREATE GRAPH i{} AS {}", n, source),
            None => format!("CREATE GRAPH g{} ()", n),
        },
        Action::CreateLabel(n, super_idx) => {
            match super_idx.and_then(|i| pick(&labels, i)) {
                Some(super_name) => format!("CREATE LABEL l{} EXTENDS {}", n, super_name),
                None => format!("CREATE LABEL l{} DESCRIPTION \"tag {}\"", n, n),
            }
        }
        Action::UseGraph(n) => match pick(&graphs, *n) {
            Some(graph) => format!("USE GRAPH {}", graph),
            None => "USE GRAPH nowhere".to_string(),
        },
        Action::DropVertex(n, cascade) => match pick(&vertices, *n) {
            Some(name) => format!(
                "DROP VERTEX {}{}",
                name,
                if *cascade { " CASCADE" } else { "" }
            ),
            None => "DROP VERTEX missing".to_string(),
        },
        Action::DropEdge(n) => match pick(&edges, *n) {
            Some(name) => format!("DROP EDGE {}", name),
            None => "DROP EDGE missing".to_string(),
        },
        Action::DropGraph(n) => match pick(&graphs, *n) {
            Some(name) => format!("DROP GRAPH {}", name),
            None => "DROP GRAPH missing".to_string(),
        },
        Action::DropLabel(n) => match pick(&labels, *n) {
            Some(name) => format!("DROP LABEL {}", name),
            None => "DROP LABEL missing".to_string(),
        },
        Action::AlterVertexAdd(t, a) => match pick(&vertices, *t) {
            Some(name) => format!("ALTER VERTEX {} ADD (n{} INT)", name, a),
            None => "ALTER VERTEX missing ADD (x INT)".to_string(),
        },
        Action::AlterVertexDrop(t, a) => match pick(&vertices, *t) {
            Some(name) => format!("ALTER VERTEX {} DROP (n{})", name, a),
            None => "ALTER VERTEX missing DROP (x)".to_string(),
        },
        Action::AlterEdgeAdd(t, a) => match pick(&edges, *t) {
            Some(name) => format!("ALTER EDGE {} ADD (m{} INT)", name, a),
            None => "ALTER EDGE missing ADD (x INT)".to_string(),
        },
        Action::AlterGraphAddEdge(g, e) => match (pick(&graphs, *g), pick(&edges, *e)) {
            (Some(graph), Some(edge)) => format!("ALTER GRAPH {} ADD EDGE ({})", graph, edge),
            _ => "ALTER GRAPH missing ADD EDGE (x)".to_string(),
        },
        Action::AlterGraphDropVertex(g, v, cascade) => {
            match (pick(&graphs, *g), pick(&vertices, *v)) {
                (Some(graph), Some(vertex)) => format!(
                    "ALTER GRAPH {} DROP VERTEX ({}){}",
                    graph,
                    vertex,
                    if *cascade { " CASCADE" } else { "" }
                ),
                _ => "ALTER GRAPH missing DROP VERTEX (x)".to_string(),
            }
        }
        Action::InjectDuplicateCreate(n) => {
            // CREATE takes a plain name, so only top-level objects
            // can be duplicated this way
            let plain: Vec<String> = vertices
                .iter()
                .filter(|v| !v.contains('.'))
                .cloned()
                .collect();
            match pick(&plain, *n) {
                // guaranteed duplicate
                Some(name) => format!("CREATE VERTEX {} (k INT PRIMARY KEY)", name),
                None => "DROP VERTEX missing".to_string(),
            }
        }
        Action::InjectDropMissing => "DROP GRAPH never_created".to_string(),
        Action::InjectUnknownAlter(t) => match pick(&vertices, *t) {
            Some(name) => format!("ALTER VERTEX {} DROP (no_such_attribute)", name),
            None => "ALTER VERTEX missing DROP (x)".to_string(),
        },
    }
}

/// No dangling references: every type_ref, member target, super,
/// endpoint, and the session scope resolve; graph closure holds. This
/// re-derives everything from scratch rather than trusting the
/// engine's bookkeeping.
fn assert_no_dangling(catalog: &Catalog, session: &Session) {
    for obj in catalog.objects() {
        let ty = catalog
            .types()
            .get(&obj.type_ref)
            .unwrap_or_else(|| panic!("object {} has dangling type {}", obj.name, obj.type_ref));
        assert_eq!(ty.kind(), obj.kind, "object {} kind mismatch", obj.name);
        for member in &obj.members {
            assert!(
                catalog.object(&member.target).is_some(),
                "member {} of {} dangles",
                member.alias,
                obj.name
            );
        }
    }
    for ty in catalog.types().iter() {
        for super_name in ty.super_names() {
            assert!(
                catalog.types().get(super_name).is_some(),
                "type {} has dangling super {}",
                ty.name(),
                super_name
            );
        }
        if let SchemaType::Edge(e) = ty {
            for pair in &e.pairs {
                for side in [&pair.from, &pair.to] {
                    if let Endpoints::Types(names) = side {
                        for name in names {
                            assert!(
                                catalog.types().vertex(name).is_some(),
                                "edge {} endpoint {} dangles",
                                e.name,
                                name
                            );
                        }
                    }
                }
            }
            if let Some(reverse) = &e.reverse_name {
                assert!(
                    catalog.types().edge(reverse).is_some(),
                    "edge {} reverse {} dangles",
                    e.name,
                    reverse
                );
            }
        }
        if let SchemaType::Graph(g) = ty {
            let members = effective_graph_members(catalog.types(), &g.name).unwrap();
            for edge_name in &members.edge_types {
                for pair in effective_pairs(catalog.types(), edge_name).unwrap() {
                    for side in [&pair.from, &pair.to] {
                        if let Endpoints::Types(names) = side {
                            for endpoint in names {
                                assert!(
                                    members.vertex_types.contains(endpoint),
                                    "graph {} lost closure over {} via {}",
                                    g.name,
                                    endpoint,
                                    edge_name
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    if let Some(current) = &session.current_graph {
        assert!(
            catalog.object(current).is_some(),
            "session scope {} dangles",
            current
        );
    }
}

fn drive(
    actions: &[Action],
    mut on_success: impl FnMut(&Catalog, &Session),
    mut on_failure: impl FnMut(&str, &Catalog, &str),
) {
    let mut catalog = Catalog::new();
    let mut session = Session::new();
    for action in actions {
        let source = realize(action, &catalog);
        let stmt = parse_one(&source)
            .unwrap_or_else(|e| panic!("generated DDL {:?} failed to parse: {}", source, e));
        let before = save_catalog(&catalog);
        match catalog.execute(&stmt, &mut session) {
            Ok(_) => on_success(&catalog, &session),
            Err(_) => on_failure(&before, &catalog, &source),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Saving, loading, and re-saving is byte-identical and loads to
    /// an equal catalog, at every point of a random DDL sequence.
    #[test]
    fn save_load_round_trip(actions in prop::collection::vec(action(), 1..12)) {
        drive(
            &actions,
            |catalog, _| {
                let text = save_catalog(catalog);
                let loaded = load_catalog(&text)
                    .unwrap_or_else(|e| panic!("saved catalog failed to load: {}\n{}", e, text));
                assert_eq!(&loaded, catalog, "reloaded catalog differs");
                assert_eq!(save_catalog(&loaded), text, "re-save not byte-identical");
            },
            |_, _, _| {},
        );
    }

    /// No reachable statement sequence leaves a dangling reference or
    /// breaks graph closure.
    #[test]
    fn no_dangling_references(actions in prop::collection::vec(action(), 1..14)) {
        drive(
            &actions,
            assert_no_dangling,
            |_, _, _| {},
        );
    }

    /// A failed statement leaves the serialized catalog byte-identical.
    #[test]
    fn statement_atomicity(actions in prop::collection::vec(action(), 1..14)) {
        drive(
            &actions,
            |_, _| {},
            |before, catalog, source| {
                assert_eq!(
                    before,
                    save_catalog(catalog),
                    "failed statement {:?} mutated the catalog",
                    source
                );
            },
        );
    }
}

// ---- inheritance chains ----------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Primary-key stability and effective-attribute monotonicity
    /// along inheritance chains of depth <= 5, including after ALTERs
    /// at random levels.
    #[test]
    fn inheritance_chain_invariants(
        depth in 1usize..=5,
        attr_counts in prop::collection::vec(1usize..3, 5),
        alter_level in any::<prop::sample::Index>(),
    ) {
        let mut catalog = Catalog::new();
        let mut session = Session::new();
        let mut script = String::from("CREATE VERTEX t0 (a0_0 INT PRIMARY KEY)\n");
        #[allow(clippy::needless_range_loop)]
        for level in 1..depth {
            let attrs: Vec<String> = (0..attr_counts[level])
                .map(|i| format!("a{}_{} INT", level, i))
                .collect();
            script.push_str(&format!(
                "CREATE VERTEX t{} EXTENDS t{} ({})\n",
                level,
                level - 1,
                attrs.join(", ")
            ));
        }
        for stmt in parse_script(&script).unwrap() {
            catalog.execute(&stmt, &mut session).unwrap();
        }
        let altered = alter_level.index(depth);
        let alter = parse_one(&format!("ALTER VERTEX t{} ADD (extra INT)", altered)).unwrap();
        catalog.execute(&alter, &mut session).unwrap();

        let root_pk = catalog.types().vertex("t0").unwrap().primary_key.clone();
        for level in 0..depth {
            let name = format!("t{}", level);
            let vt = catalog.types().vertex(&name).unwrap();
            // stability: every type in the chain shares the root's key
            prop_assert_eq!(&vt.primary_key, &root_pk, "{} diverged from the root key", &name);

            let attrs = effective_attributes(catalog.types(), &name).unwrap();
            let names: Vec<String> = attrs.iter().map(|a| a.name.clone()).collect();
            let unique: std::collections::BTreeSet<&String> = names.iter().collect();
            prop_assert_eq!(unique.len(), names.len(), "duplicate attribute in {}", &name);

            if level > 0 {
                // monotonicity: the super's list is a prefix
                let super_attrs =
                    effective_attributes(catalog.types(), &format!("t{}", level - 1)).unwrap();
                let super_names: Vec<String> =
                    super_attrs.iter().map(|a| a.name.clone()).collect();
                prop_assert!(
                    names.starts_with(&super_names),
                    "{:?} does not extend {:?}",
                    names,
                    super_names
                );
            }
            // an independent oracle: concatenate own attributes along
            // the chain by hand
            let mut expected = Vec::new();
            for ancestor in 0..=level {
                let at = catalog.types().vertex(&format!("t{}", ancestor)).unwrap();
                expected.extend(at.own_attributes.iter().map(|a| a.name.clone()));
            }
            prop_assert_eq!(names, expected, "chain walk mismatch at {}", &name);
        }
    }
}

// ---- fuzzing ----------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Arbitrary input up to ~1 KB never panics the parser or the
    /// engine; it either parses and executes or reports an error.
    #[test]
    fn fuzzed_input_never_panics(input in prop::collection::vec(any::<char>(), 0..256)) {
        let source: String = input.into_iter().collect();
        if let Ok(statements) = parse_script(&source) {
            let mut catalog = Catalog::new();
            let mut session = Session::new();
            for stmt in statements {
                let _ = catalog.execute(&stmt, &mut session);
            }
        }
    }

    /// Truncating valid statements at arbitrary points never panics.
    #[test]
    fn truncated_statements_never_panic(cut in 0usize..400, which in 0usize..6) {
        let sources = [
            "CREATE VERTEX person (name STRING NOT NULL PRIMARY KEY, age INT, gender STRING, state STRING)",
            "CREATE DIRECTED EDGE supervise (FROM person, TO person, connect_day DATETIME, DISCRIMINATOR (connect_day)) WITH REVERSE_EDGE=\"supervised_by\"",
            "CREATE GRAPH social (person, friendship)",
            "CREATE LABEL redcar EXTENDS color, car",
            "ALTER GRAPH school DROP VERTEX (professor) CASCADE",
            "DROP VERTEX person, city, school CASCADE",
        ];
        let source = sources[which % sources.len()];
        let cut = cut.min(source.len());
        if let Some(prefix) = source.get(..cut) {
            let _ = parse_script(prefix);
        }
    }
}
