//! Construct stratifold graphs in code and inspect their structure.
//!
//! Run with: cargo run --example build_and_validate

use stratifold::graph::{GraphBuilder, Locus, VertexRef};

fn main() {
    // A sphere: one white vertex of genus 0, no singular circles.
    let sphere = stratifold::LabelledGraph::single_white("s", 0);
    let report = sphere.structure();
    println!("sphere: betti1 = {}, tree = {}", report.betti1, report.is_tree);

    // Two disks attached to one singular circle with degrees 2 and 3.
    let mut b = GraphBuilder::new();
    b.white("w1", 0).white("w2", 0).black("b");
    b.edge("w1", "b", 2).edge("w2", "b", 3);
    let tree = b.build().expect("valid graph");
    println!(
        "two-disk tree: trivalent = {}, terminals = {:?}",
        tree.is_trivalent(),
        tree.structure()
            .terminal_vertices
            .iter()
            .map(|v| tree.vertex_name(*v))
            .collect::<Vec<_>>()
    );

    // The 6-edge alternating cycle: three annuli glued around three circles.
    let mut b = GraphBuilder::new();
    for i in 0..3 {
        b.white(format!("w{i}"), 0);
        b.black(format!("b{i}"));
    }
    b.edge("w0", "b0", 1).edge("w1", "b0", 2);
    b.edge("w1", "b1", 1).edge("w2", "b1", 2);
    b.edge("w2", "b2", 1).edge("w0", "b2", 2);
    let cycle_graph = b.build().expect("valid graph");
    let report = cycle_graph.structure();
    let cycle = report.cycle.as_ref().expect("betti1 = 1");
    println!(
        "alternating cycle: betti1 = {}, trivalent = {}, cycle walk = {}",
        report.betti1,
        report.trivalent,
        cycle
            .vertices
            .iter()
            .map(|v| cycle_graph.vertex_name(*v))
            .collect::<Vec<_>>()
            .join(" ")
    );

    // Distances: every edge at odd distance to the cycle in a reduced graph
    // must carry label 1; here we just measure one.
    let targets: Vec<Locus> = cycle.vertices.iter().map(|v| Locus::Vertex(*v)).collect();
    let w0 = cycle_graph.whites().next().unwrap();
    let d = cycle_graph.distance(Locus::Vertex(VertexRef::White(w0)), &targets);
    println!("distance of w0 to the cycle: {d:?}");

    // Invalid input is reported, not silently fixed.
    let mut b = GraphBuilder::new();
    b.white("w", 0).black("b").edge("w", "b", 2);
    match b.build() {
        Err(errors) => {
            for e in errors {
                println!("rejected: {e}");
            }
        }
        Ok(_) => unreachable!("label sum 2 is below 3"),
    }
}
