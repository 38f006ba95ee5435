//! Diagram validation rules.
//!
//! [`validate_diagram`] checks a structurally well-formed [`Diagram`] and
//! returns every violation as a diagnostic; it never throws and never
//! mutates its input. Rules, each with its own stable code:
//!
//! - `DuplicateClassName` — class names must be pairwise unique.
//! - `UnknownTarget` — every relationship target names a class present in
//!   the diagram.
//! - `BadCardinality` — non-generalization relationships carry a
//!   cardinality, generalizations do not (guaranteed after parsing,
//!   re-checked for programmatically built diagrams).
//! - `SelfGeneralization` / `GeneralizationCycle` — the generalization edge
//!   set (child to parent) must be acyclic; the cycle diagnostic names one
//!   witness cycle.
//! - `DuplicateMember` — attribute names and method names are unique within
//!   a class.
//! - `SelfRelationWarning` (warning) — a non-generalization relationship
//!   pointing back at its own class is legal UML, but suspicious enough to
//!   flag.
//!
//! Diagnostics come out in (class input order, rule order) and the result is
//! deterministic.

use std::collections::{HashMap, HashSet};

use crate::diagnostics::{Diagnostic, DiagnosticCode, Location};
use crate::model::{Diagram, RelationKind};

/// Checks every rule and returns the complete list of findings; an empty
/// list means the diagram is valid.
pub fn validate_diagram(diagram: &Diagram) -> Vec<Diagnostic> {
    let classes = &diagram.classes;
    let mut first_index: HashMap<&str, usize> = HashMap::new();
    for (index, class) in classes.iter().enumerate() {
        first_index.entry(class.name.as_str()).or_insert(index);
    }
    let cycles = generalization_cycles(diagram, &first_index);

    let mut diagnostics = Vec::new();
    for (index, class) in classes.iter().enumerate() {
        // R1: unique class names.
        if first_index[class.name.as_str()] != index {
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::DuplicateClassName,
                    format!("duplicate class name \"{}\"", class.name),
                )
                .at(Location::class(&class.name)),
            );
        }

        // R2: relationship targets exist.
        for (rel_index, relationship) in class.relationships.iter().enumerate() {
            if !first_index.contains_key(relationship.target.as_str()) {
                diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::UnknownTarget,
                        format!(
                            "relationship target \"{}\" is not a class in this diagram",
                            relationship.target
                        ),
                    )
                    .at(Location::class_field(
                        &class.name,
                        format!("relationships[{rel_index}]"),
                    )),
                );
            }
        }

        // R3: kind and cardinality are paired correctly.
        for (rel_index, relationship) in class.relationships.iter().enumerate() {
            let location =
                Location::class_field(&class.name, format!("relationships[{rel_index}]"));
            match (relationship.kind, relationship.cardinality) {
                (RelationKind::Generalization, Some(_)) => diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::BadCardinality,
                        format!(
                            "generalization to \"{}\" must not carry a cardinality",
                            relationship.target
                        ),
                    )
                    .at(location),
                ),
                (kind, None) if kind != RelationKind::Generalization => diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::BadCardinality,
                        format!(
                            "{} relationship to \"{}\" is missing a cardinality",
                            kind.label(),
                            relationship.target
                        ),
                    )
                    .at(location),
                ),
                _ => {}
            }
        }

        // R4: generalizations are acyclic, including no self-edges.
        if class
            .relationships
            .iter()
            .any(|r| r.kind == RelationKind::Generalization && r.target == class.name)
        {
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::SelfGeneralization,
                    format!("class \"{}\" generalizes itself", class.name),
                )
                .at(Location::class(&class.name)),
            );
        }
        if let Some(witness) = cycles.get(&index) {
            let mut rendering = witness.join(" -> ");
            rendering.push_str(" -> ");
            rendering.push_str(&witness[0]);
            diagnostics.push(
                Diagnostic::error(
                    DiagnosticCode::GeneralizationCycle,
                    format!("generalization cycle: {rendering}"),
                )
                .at(Location::class(&class.name)),
            );
        }

        // R5: member names are unique within the class.
        let mut seen_attributes: HashSet<&str> = HashSet::new();
        for (attr_index, attribute) in class.attributes.iter().enumerate() {
            if !seen_attributes.insert(attribute.name.as_str()) {
                diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::DuplicateMember,
                        format!(
                            "duplicate attribute name \"{}\" in class \"{}\"",
                            attribute.name, class.name
                        ),
                    )
                    .at(Location::class_field(
                        &class.name,
                        format!("attributes[{attr_index}]"),
                    )),
                );
            }
        }
        let mut seen_methods: HashSet<&str> = HashSet::new();
        for (meth_index, method) in class.methods.iter().enumerate() {
            if !seen_methods.insert(method.name.as_str()) {
                diagnostics.push(
                    Diagnostic::error(
                        DiagnosticCode::DuplicateMember,
                        format!(
                            "duplicate method name \"{}\" in class \"{}\"",
                            method.name, class.name
                        ),
                    )
                    .at(Location::class_field(
                        &class.name,
                        format!("methods[{meth_index}]"),
                    )),
                );
            }
        }

        // R6: self-referencing non-generalization relationships (warning).
        for (rel_index, relationship) in class.relationships.iter().enumerate() {
            if relationship.kind != RelationKind::Generalization
                && relationship.target == class.name
            {
                diagnostics.push(
                    Diagnostic::warning(
                        DiagnosticCode::SelfRelationWarning,
                        format!(
                            "class \"{}\" has a {} relationship to itself",
                            class.name,
                            relationship.kind.label()
                        ),
                    )
                    .at(Location::class_field(
                        &class.name,
                        format!("relationships[{rel_index}]"),
                    )),
                );
            }
        }
    }
    diagnostics
}

/// Finds generalization cycles and keys each by its anchor: the cycle member
/// with the smallest input index. The witness lists class names in edge
/// order starting at the anchor.
///
/// Self-edges are excluded here; they get their own `SelfGeneralization`
/// diagnostic. Unknown targets contribute no edges (`UnknownTarget` covers
/// them).
fn generalization_cycles(
    diagram: &Diagram,
    first_index: &HashMap<&str, usize>,
) -> HashMap<usize, Vec<String>> {
    let class_count = diagram.classes.len();
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); class_count];
    for (index, class) in diagram.classes.iter().enumerate() {
        for relationship in &class.relationships {
            if relationship.kind != RelationKind::Generalization {
                continue;
            }
            match first_index.get(relationship.target.as_str()) {
                Some(&parent) if parent != index => parents[index].push(parent),
                _ => {}
            }
        }
    }

    let mut cycles = HashMap::new();
    for start in 0..class_count {
        if let Some(path) = cycle_through(start, &parents) {
            if path.iter().min() == Some(&start) {
                let witness = path
                    .iter()
                    .map(|&i| diagram.classes[i].name.clone())
                    .collect();
                cycles.insert(start, witness);
            }
        }
    }
    cycles
}

/// Depth-first search for a path `start -> ... -> start` along parent edges.
/// Returns the node sequence without the closing repetition.
fn cycle_through(start: usize, parents: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    let mut path: Vec<usize> = vec![start];
    let mut visited: HashSet<usize> = HashSet::new();

    while let Some((node, child_pos)) = stack.last_mut() {
        let node = *node;
        match parents[node].get(*child_pos) {
            None => {
                stack.pop();
                path.pop();
                visited.insert(node);
            }
            Some(&parent) => {
                *child_pos += 1;
                if parent == start {
                    return Some(path.clone());
                }
                if !visited.contains(&parent) && !path.contains(&parent) {
                    stack.push((parent, 0));
                    path.push(parent);
                }
            }
        }
    }
    None
}
