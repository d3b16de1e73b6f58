//! Poset JSON, move-graph JSON, and DOT export.

use biplab_core::moves::MoveGraph;
use biplab_core::SkeletonPoset;
use serde_json::json;

/// Poset as JSON: element labels, Hasse edges, and (optionally) full meet
/// and join tables.
pub fn poset_json(poset: &SkeletonPoset, with_tables: bool) -> serde_json::Value {
    let elements: Vec<&str> = (0..poset.len()).map(|i| poset.label(i)).collect();
    let hasse: Vec<[&str; 2]> = poset
        .hasse_edges()
        .iter()
        .map(|&(a, b)| [poset.label(a), poset.label(b)])
        .collect();
    let mut out = json!({
        "elements": elements,
        "hasse": hasse,
        "source": poset.label(poset.source()),
        "sink": poset.label(poset.sink()),
    });
    if with_tables {
        let table = |op: &dyn Fn(usize, usize) -> Option<usize>| -> Vec<Vec<Option<String>>> {
            (0..poset.len())
                .map(|x| {
                    (0..poset.len())
                        .map(|y| op(x, y).map(|z| poset.label(z).to_string()))
                        .collect()
                })
                .collect()
        };
        out["meet"] = json!(table(&|x, y| poset.meet(x, y).ok()));
        out["join"] = json!(table(&|x, y| poset.join(x, y).ok()));
    }
    out
}

/// Move graph as JSON: chains by node labels, edges with polygon sizes.
pub fn move_graph_json(poset: &SkeletonPoset, graph: &MoveGraph) -> serde_json::Value {
    let nodes: Vec<Vec<String>> = graph.chains().iter().map(|c| c.labels(poset)).collect();
    let edges: Vec<serde_json::Value> = graph
        .edges()
        .iter()
        .map(|&(i, j, size)| json!({"a": i, "b": j, "polygon": size}))
        .collect();
    json!({
        "interval": [poset.label(graph.u), poset.label(graph.v)],
        "nodes": nodes,
        "edges": edges,
    })
}

/// Move graph in DOT form for external rendering.
pub fn move_graph_dot(poset: &SkeletonPoset, graph: &MoveGraph) -> String {
    let mut out = String::from("graph moves {\n  node [shape=box];\n");
    for (i, chain) in graph.chains().iter().enumerate() {
        out.push_str(&format!(
            "  c{} [label=\"{}\"];\n",
            i,
            chain.label_string(poset)
        ));
    }
    for &(i, j, size) in graph.edges() {
        out.push_str(&format!("  c{i} -- c{j} [label=\"{size}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use biplab_core::moves::move_graph;
    use biplab_core::skeleton::build_bip_poset;

    #[test]
    fn hexagon_exports() {
        let poset = build_bip_poset(&"321".parse().unwrap()).unwrap();
        let js = poset_json(&poset, true);
        assert_eq!(js["elements"].as_array().unwrap().len(), 6);
        assert_eq!(js["hasse"].as_array().unwrap().len(), 6);
        assert_eq!(js["join"][0][5], serde_json::json!("321"));

        let graph = move_graph(&poset, poset.source(), poset.sink(), 100).unwrap();
        let dot = move_graph_dot(&poset, &graph);
        assert!(dot.contains("c0 -- c1 [label=\"6\"]"));
        let js = move_graph_json(&poset, &graph);
        assert_eq!(js["nodes"].as_array().unwrap().len(), 2);
    }
}
