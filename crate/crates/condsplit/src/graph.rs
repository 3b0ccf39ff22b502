//! Process-model fragments from split sentences: plain steps chain
//! along a solid main flow; a conditional sentence inserts a condition
//! gateway (diamond) whose resultant hangs off a dashed branch. Action
//! resultants rejoin the main flow (the process continues through the
//! performed action); Consequence resultants are terminal — the main
//! flow bypasses them and continues from the gateway.

use crate::model::{AnnotatedSentence, Label, SplitResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Step,
    Condition,
}

/// One process node. Condition nodes carry the condition clause text;
/// step nodes carry resultant or whole-sentence text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessNode {
    pub id: String,
    pub kind: NodeKind,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStyle {
    Solid,
    Dashed,
}

/// Directed edge. Dashed edges (condition → resultant) originate only
/// at condition nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessEdge {
    pub from: String,
    pub to: String,
    pub style: EdgeStyle,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessGraph {
    pub nodes: Vec<ProcessNode>,
    pub edges: Vec<ProcessEdge>,
}

impl ProcessGraph {
    pub fn node(&self, id: &str) -> Option<&ProcessNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Check structural invariants; returns one message per violation.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for edge in &self.edges {
            for endpoint in [&edge.from, &edge.to] {
                if self.node(endpoint).is_none() {
                    problems.push(format!("edge endpoint {endpoint:?} is not a node"));
                }
            }
            if edge.style == EdgeStyle::Dashed {
                if let Some(origin) = self.node(&edge.from) {
                    if origin.kind != NodeKind::Condition {
                        problems.push(format!(
                            "dashed edge from non-condition node {:?}",
                            edge.from
                        ));
                    }
                }
            }
        }
        let mut ids: Vec<&str> = self.nodes.iter().map(|n| n.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.nodes.len() {
            problems.push("duplicate node ids".to_string());
        }
        problems
    }
}

/// Build the process graph from split sentences in document order.
pub fn build_graph(results: &[(String, SplitResult)]) -> ProcessGraph {
    let mut graph = ProcessGraph::default();
    // Tail of the solid main flow; the next node links from here.
    let mut cursor: Option<String> = None;
    for (index, (text, result)) in results.iter().enumerate() {
        match (&result.condition, &result.resultant) {
            (Some(condition), resultant) => {
                let cond_id = format!("s{index}.cond");
                graph.nodes.push(ProcessNode {
                    id: cond_id.clone(),
                    kind: NodeKind::Condition,
                    text: condition.slice(text),
                });
                link_solid(&mut graph, &mut cursor, &cond_id);
                if let Some(resultant) = resultant {
                    let step_id = format!("s{index}.step");
                    graph.nodes.push(ProcessNode {
                        id: step_id.clone(),
                        kind: NodeKind::Step,
                        text: resultant.slice(text),
                    });
                    graph.edges.push(ProcessEdge {
                        from: cond_id.clone(),
                        to: step_id.clone(),
                        style: EdgeStyle::Dashed,
                    });
                    if resultant.label == crate::model::Label::Action {
                        // The flow continues through the performed action.
                        cursor = Some(step_id);
                    }
                    // A consequence is terminal: cursor stays at the
                    // condition node and the main flow bypasses it.
                }
            }
            (None, _) => {
                let step_id = format!("s{index}.step");
                graph.nodes.push(ProcessNode {
                    id: step_id.clone(),
                    kind: NodeKind::Step,
                    text: text.clone(),
                });
                link_solid(&mut graph, &mut cursor, &step_id);
            }
        }
    }
    graph
}

/// Recover a [`SplitResult`] from stored span annotations so annotated
/// corpora can drive graph building. The first condition span becomes
/// the condition; the first action or consequence span becomes the
/// resultant. Sentences without a condition span (including ones
/// carrying only unconditional actions) become plain steps.
pub fn annotated_to_result(sentence: &AnnotatedSentence) -> SplitResult {
    let condition = sentence
        .spans
        .iter()
        .find(|s| s.label == Label::Condition)
        .cloned();
    if condition.is_none() {
        return SplitResult::no_condition();
    }
    let resultant = sentence
        .spans
        .iter()
        .find(|s| matches!(s.label, Label::Action | Label::Consequence))
        .cloned();
    SplitResult {
        condition,
        resultant,
        low_confidence: false,
        multi_clause: false,
    }
}

fn link_solid(graph: &mut ProcessGraph, cursor: &mut Option<String>, to: &str) {
    if let Some(from) = cursor.replace(to.to_string()) {
        graph.edges.push(ProcessEdge {
            from,
            to: to.to_string(),
            style: EdgeStyle::Solid,
        });
    }
}

/// Sort key: generated ids ("s<index>.<role>") order numerically by
/// sentence index; foreign ids sort after them, lexically.
fn id_key(id: &str) -> (usize, String) {
    let parsed = id
        .strip_prefix('s')
        .and_then(|rest| rest.split_once('.'))
        .and_then(|(num, _)| num.parse::<usize>().ok());
    match parsed {
        Some(n) => (n, id.to_string()),
        None => (usize::MAX, id.to_string()),
    }
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

/// Render as DOT graph-description text: diamonds for conditions,
/// boxes for steps, dashed resultant edges. Deterministic ordering.
pub fn export_dot(graph: &ProcessGraph) -> String {
    let mut nodes: Vec<&ProcessNode> = graph.nodes.iter().collect();
    nodes.sort_by_key(|n| id_key(&n.id));
    let mut edges: Vec<&ProcessEdge> = graph.edges.iter().collect();
    edges.sort_by_key(|e| (id_key(&e.from), id_key(&e.to)));
    let mut out = String::from("digraph process {\n");
    for node in nodes {
        let shape = match node.kind {
            NodeKind::Step => "box",
            NodeKind::Condition => "diamond",
        };
        out.push_str(&format!(
            "  \"{}\" [shape={shape}, label=\"{}\"];\n",
            dot_escape(&node.id),
            dot_escape(&node.text)
        ));
    }
    for edge in edges {
        let style = match edge.style {
            EdgeStyle::Solid => "",
            EdgeStyle::Dashed => " [style=dashed]",
        };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\"{style};\n",
            dot_escape(&edge.from),
            dot_escape(&edge.to)
        ));
    }
    out.push_str("}\n");
    out
}

/// Lossless JSON form: `{"nodes":[{id,kind,text}],"edges":[{from,to,style}]}`.
pub fn export_json(graph: &ProcessGraph) -> String {
    serde_json::to_string_pretty(graph).expect("graph serializes")
}

/// Parse a graph previously produced by [`export_json`].
pub fn graph_from_json(json: &str) -> Result<ProcessGraph, serde_json::Error> {
    serde_json::from_str(json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ClauseSpan, Label};

    fn nc(text: &str) -> (String, SplitResult) {
        (text.to_string(), SplitResult::no_condition())
    }

    fn split(
        text: &str,
        condition: (usize, usize),
        resultant: Option<(usize, usize, Label)>,
    ) -> (String, SplitResult) {
        (
            text.to_string(),
            SplitResult {
                condition: Some(ClauseSpan::new(condition.0, condition.1, Label::Condition)),
                resultant: resultant.map(|(s, e, l)| ClauseSpan::new(s, e, l)),
                low_confidence: false,
                multi_clause: false,
            },
        )
    }

    /// "Greet the guest." + an Action conditional.
    fn greet_then_refer() -> Vec<(String, SplitResult)> {
        let refer =
            "Refer to the author if you are in any doubt about the currency of this document.";
        vec![
            nc("Greet the guest."),
            split(refer, (20, 79), Some((0, 19, Label::Action))),
        ]
    }

    #[test]
    fn empty_input_yields_empty_graph() {
        let graph = build_graph(&[]);
        assert!(graph.nodes.is_empty());
        assert!(graph.edges.is_empty());
        assert_eq!(export_dot(&graph), "digraph process {\n}\n");
    }

    #[test]
    fn single_plain_sentence_is_one_step_without_edges() {
        let graph = build_graph(&[nc("Greet the guest.")]);
        assert_eq!(graph.nodes.len(), 1);
        assert_eq!(graph.nodes[0].id, "s0.step");
        assert_eq!(graph.nodes[0].kind, NodeKind::Step);
        assert!(graph.edges.is_empty());
    }

    #[test]
    fn action_conditional_after_step_makes_three_nodes() {
        let graph = build_graph(&greet_then_refer());
        assert_eq!(graph.nodes.len(), 3);
        let cond = graph.node("s1.cond").unwrap();
        assert_eq!(cond.kind, NodeKind::Condition);
        assert_eq!(
            cond.text,
            "if you are in any doubt about the currency of this document"
        );
        let step = graph.node("s1.step").unwrap();
        assert_eq!(step.text, "Refer to the author");
        // Solid into the gateway, dashed out to the action.
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s0.step".into(),
            to: "s1.cond".into(),
            style: EdgeStyle::Solid,
        }));
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s1.cond".into(),
            to: "s1.step".into(),
            style: EdgeStyle::Dashed,
        }));
        assert!(graph.validate().is_empty());
    }

    #[test]
    fn action_resultant_continues_the_main_flow() {
        let mut input = greet_then_refer();
        input.push(nc("File the report."));
        let graph = build_graph(&input);
        // The next step chains from the action step, not the gateway.
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s1.step".into(),
            to: "s2.step".into(),
            style: EdgeStyle::Solid,
        }));
    }

    #[test]
    fn consequence_resultant_is_terminal_and_bypassed() {
        let password = "If the entered password is matched with the one stored in system, the user is authenticated.";
        let input = vec![
            split(password, (0, 65), Some((67, 92, Label::Consequence))),
            nc("Close the ticket."),
        ];
        let graph = build_graph(&input);
        // Dashed into the consequence; no solid edge leaves it.
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s0.cond".into(),
            to: "s0.step".into(),
            style: EdgeStyle::Dashed,
        }));
        assert!(graph
            .edges
            .iter()
            .all(|e| !(e.from == "s0.step" && e.style == EdgeStyle::Solid)));
        // The following step connects from the gateway instead.
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s0.cond".into(),
            to: "s1.step".into(),
            style: EdgeStyle::Solid,
        }));
        assert!(graph.validate().is_empty());
    }

    #[test]
    fn only_condition_sentence_chains_through_its_gateway() {
        let input = vec![
            split("1. Otherwise, they can go out.", (3, 12), None),
            nc("Log the decision."),
        ];
        let graph = build_graph(&input);
        assert_eq!(graph.nodes.len(), 2);
        assert_eq!(graph.node("s0.cond").unwrap().text, "Otherwise");
        assert!(graph.edges.contains(&ProcessEdge {
            from: "s0.cond".into(),
            to: "s1.step".into(),
            style: EdgeStyle::Solid,
        }));
    }

    #[test]
    fn dot_output_uses_the_visual_conventions() {
        let dot = export_dot(&build_graph(&greet_then_refer()));
        assert_eq!(dot.matches("shape=diamond").count(), 1);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(dot.starts_with("digraph process {"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn dot_output_counts_one_diamond_per_condition() {
        let input = vec![
            split("If A, do B.", (0, 4), Some((6, 10, Label::Action))),
            split("If C, do D.", (0, 4), Some((6, 10, Label::Action))),
        ];
        let dot = export_dot(&build_graph(&input));
        assert_eq!(dot.matches("shape=diamond").count(), 2);
    }

    #[test]
    fn dot_node_order_is_numeric_by_sentence_index() {
        let input: Vec<(String, SplitResult)> =
            (0..12).map(|i| nc(&format!("Step {i}."))).collect();
        let dot = export_dot(&build_graph(&input));
        let s2 = dot.find("\"s2.step\"").unwrap();
        let s10 = dot.find("\"s10.step\"").unwrap();
        assert!(s2 < s10, "numeric index order expected:\n{dot}");
    }

    #[test]
    fn dot_escapes_quotes_in_labels() {
        let graph = build_graph(&[nc(r#"Send the "final" notice."#)]);
        let dot = export_dot(&graph);
        assert!(dot.contains(r#"Send the \"final\" notice."#), "{dot}");
    }

    #[test]
    fn json_round_trip_is_identity() {
        for graph in [
            build_graph(&[]),
            build_graph(&greet_then_refer()),
            build_graph(&[split(
                "If the entered password is matched, the user is authenticated.",
                (0, 35),
                Some((37, 62, Label::Consequence)),
            )]),
        ] {
            let parsed = graph_from_json(&export_json(&graph)).unwrap();
            assert_eq!(parsed, graph);
        }
    }

    #[test]
    fn annotated_sentences_map_back_to_results() {
        let text = "Include the date if the opt-out period expires.";
        let annotated = crate::model::AnnotatedSentence::new(
            908,
            text,
            vec![
                ClauseSpan::new(0, 16, Label::Action),
                ClauseSpan::new(17, 46, Label::Condition),
            ],
        );
        let result = annotated_to_result(&annotated);
        assert_eq!(
            result.condition.as_ref().unwrap().slice(text),
            "if the opt-out period expires"
        );
        assert_eq!(result.resultant.as_ref().unwrap().label, Label::Action);

        let plain = crate::model::AnnotatedSentence::with_sentence_label(
            1,
            "Greet the guest.",
            Label::NoCondition,
        );
        assert!(annotated_to_result(&plain).condition.is_none());

        // Unconditional actions do not hang off a condition gateway.
        let ua_only = crate::model::AnnotatedSentence::new(
            2,
            "File the report separately.",
            vec![ClauseSpan::new(0, 26, Label::UnconditionalAction)],
        );
        let ua_result = annotated_to_result(&ua_only);
        assert!(ua_result.condition.is_none() && ua_result.resultant.is_none());

        let oc = crate::model::AnnotatedSentence::new(
            3,
            "1. Otherwise, they can go out.",
            vec![ClauseSpan::new(3, 12, Label::Condition)],
        );
        let oc_result = annotated_to_result(&oc);
        assert!(oc_result.condition.is_some());
        assert!(oc_result.resultant.is_none());
    }

    #[test]
    fn validate_reports_broken_graphs() {
        let graph = ProcessGraph {
            nodes: vec![ProcessNode {
                id: "a".into(),
                kind: NodeKind::Step,
                text: "step".into(),
            }],
            edges: vec![
                ProcessEdge {
                    from: "a".into(),
                    to: "ghost".into(),
                    style: EdgeStyle::Solid,
                },
                ProcessEdge {
                    from: "a".into(),
                    to: "a".into(),
                    style: EdgeStyle::Dashed,
                },
            ],
        };
        let problems = graph.validate();
        assert!(problems.iter().any(|p| p.contains("ghost")), "{problems:?}");
        assert!(
            problems
                .iter()
                .any(|p| p.contains("dashed edge from non-condition")),
            "{problems:?}"
        );
    }
}
