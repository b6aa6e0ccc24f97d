//! Fundamental-group presentations read off the graph.
//!
//! Run with: cargo run --example group_presentation

use stratifold::classify::build_pure_cycle;
use stratifold::graph::{GraphBuilder, Sign};
use stratifold::presentation::pi1_presentation;

fn main() {
    // One annulus around one circle, attaching degrees 1 and 2: the
    // Baumslag-Solitar group BS(2,1).
    let g = build_pure_cycle(&[(1, 2)], Sign::Plus).unwrap();
    println!("-- one-annulus cycle, labels 1,2:");
    print!("{}", pi1_presentation(&g).unwrap());

    // Two disks with coprime degrees: a trivial group in disguise.
    let mut b = GraphBuilder::new();
    b.white("w1", 0).white("w2", 0).black("b");
    b.edge("w1", "b", 2).edge("w2", "b", 3);
    println!("-- coprime disks:");
    print!("{}", pi1_presentation(&b.build().unwrap()).unwrap());

    // Presentations require genus-0 whites; homology handles the rest.
    let torus = stratifold::LabelledGraph::single_white("t", 1);
    match pi1_presentation(&torus) {
        Err(e) => println!("-- genus 1 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
