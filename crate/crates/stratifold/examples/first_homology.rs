//! First homology of stratifolds, exactly.
//!
//! Run with: cargo run --example first_homology

use stratifold::graph::{GraphBuilder, Sign};
use stratifold::homology::h1;

fn main() {
    // A pure cycle of k annuli has H1 = Z + G_d with |G_d| = |n1…nk − ε·m1…mk|.
    for (pairs, eps) in [
        (vec![(1u32, 2u32)], Sign::Plus),   // d = 2 − 1 = 1
        (vec![(1, 2), (1, 2)], Sign::Plus), // d = 4 − 1 = 3
        (vec![(1, 2)], Sign::Minus),        // d = 2 + 1 = 3
        (vec![(2, 2), (2, 2)], Sign::Plus), // d = 0: extra free rank
    ] {
        let g = stratifold::classify::build_pure_cycle(&pairs, eps).expect("valid labels");
        println!("cycle {pairs:?} ({eps}): H1 = {}", h1(&g));
    }

    // Genus contributes: orientable genus g adds 2g free generators, a
    // non-orientable white couples its generators by a factor 2.
    let mut b = GraphBuilder::new();
    b.white("torus", 1).white("cap", 0).black("c");
    b.edge("torus", "c", 2).edge("cap", "c", 1);
    println!("torus piece: H1 = {}", h1(&b.build().unwrap()));

    let mut b = GraphBuilder::new();
    b.white("klein", -2).white("cap", 0).black("c");
    b.edge("klein", "c", 2).edge("cap", "c", 1);
    println!("klein-bottle piece: H1 = {}", h1(&b.build().unwrap()));

    // Disks with coprime attaching degrees kill the circle class entirely.
    let mut b = GraphBuilder::new();
    b.white("w1", 0).white("w2", 0).black("c");
    b.edge("w1", "c", 2).edge("w2", "c", 3);
    println!("coprime disks: H1 = {}", h1(&b.build().unwrap()));
}
