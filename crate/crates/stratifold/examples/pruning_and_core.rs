//! Group-preserving reductions: terminal-string pruning and the iterated
//! core reduction with its audit trail.
//!
//! Run with: cargo run --example pruning_and_core

use stratifold::classify::{build_echinus, EchinusParams, EchinusTriple, LayeredOracle};
use stratifold::graph::GraphBuilder;
use stratifold::homology::h1;
use stratifold::reduction::{core_reduce, prune, CoreStatus};

fn main() {
    // A linear graph with labels 1,2,2,1 is 1-connected and prunes away
    // completely (from both ends).
    let mut b = GraphBuilder::new();
    b.white("w0", 0).white("w1", 0).white("w2", 0);
    b.black("b0").black("b1");
    b.edge("w0", "b0", 1).edge("w1", "b0", 2);
    b.edge("w1", "b1", 2).edge("w2", "b1", 1);
    let g = b.build().unwrap();
    let p = prune(&g);
    println!("L(1,1): {} vertices -> {} after pruning (H1 {} -> {})",
        g.vertex_count(), p.vertex_count(), h1(&g), h1(&p));

    // Hang extra structure off an echinus arm: an off-cycle branch vertex
    // adjacent to two terminal whites. The core reduction certifies the
    // hanging piece 1-connected, removes the branch star, and re-prunes.
    let e = build_echinus(&EchinusParams::new(
        vec![EchinusTriple { p: 1, q: 0, r: 1 }],
        stratifold::Sign::Plus,
    ));
    let mut b = GraphBuilder::new();
    for w in e.whites() {
        b.white(e.white_name(w), e.genus(w));
    }
    for bl in e.blacks() {
        b.black(e.black_name(bl));
    }
    for edge_id in e.edge_ids() {
        let edge = e.edge(edge_id);
        b.edge(e.white_name(edge.white), e.black_name(edge.black), edge.label);
    }
    // Replace the arm tip: grow a branch vertex with two terminal disks
    // below the arm's terminal white a0w1.
    b.black("x").white("t0", 0).white("t1", 0);
    b.edge("a0w1", "x", 1).edge("t0", "x", 1).edge("t1", "x", 1);
    let e = b.build().unwrap();
    println!("decorated echinus: {} vertices", e.vertex_count());
    let oracle = LayeredOracle::default();
    let result = core_reduce(&e, &oracle);
    for step in &result.steps {
        println!("  move: {step}");
    }
    match result.status {
        CoreStatus::Core(core) => {
            println!("core: {} vertices, H1 = {}", core.vertex_count(), h1(&core));
            assert_eq!(h1(&core), h1(&e));
        }
        CoreStatus::Empty => println!("core: empty (a hanging piece was not 1-connected)"),
        CoreStatus::Undetermined(reason) => println!("core: undetermined ({reason})"),
    }
}
