//! The full decision pipeline: is the fundamental group infinite cyclic?
//!
//! Run with: cargo run --example decide_infinite_cyclic

use stratifold::classify::{build_echinus, build_pure_cycle, decide_pi1_z, EchinusParams, EchinusTriple};
use stratifold::graph::{GraphBuilder, Sign};

fn main() {
    let e101 = build_echinus(&EchinusParams::new(
        vec![EchinusTriple { p: 1, q: 0, r: 1 }],
        Sign::Plus,
    ));
    println!("== E(1,0,1)");
    print!("{}", decide_pi1_z(&e101));

    // A pure cycle has H1 = Z for labels 1,2 — but its group is BS(2,1),
    // and the trace pins the homeomorphic-to-a-circle obstruction.
    let cycle = build_pure_cycle(&[(1, 2)], Sign::Plus).unwrap();
    println!("== pure cycle, labels 1,2");
    print!("{}", decide_pi1_z(&cycle));

    // Any nonzero genus is fatal.
    let mut b = GraphBuilder::new();
    b.white("w0", 1).black("b0");
    b.edge("w0", "b0", 1).edge("w0", "b0", 2);
    b.white("a0", 0);
    b.edge("a0", "b0", 1);
    println!("== genus-carrying cycle graph");
    print!("{}", decide_pi1_z(&b.build().unwrap()));

    // Non-trivalent graphs go through the splitting route: a degree-4
    // branch vertex whose class dies against a terminal disk.
    let mut b = GraphBuilder::new();
    b.white("c0", 0).white("c1", 0).black("v");
    b.edge("c0", "v", 1).edge("c0", "v", 1);
    b.edge("c1", "v", 1);
    b.white("t", 0);
    b.edge("t", "v", 1);
    println!("== degree-4 branch vertex");
    print!("{}", decide_pi1_z(&b.build().unwrap()));
}
