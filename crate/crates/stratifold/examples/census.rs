//! Sweep the census of small stratifold graphs and tally the verdicts.
//!
//! Run with: cargo run --release --example census

use stratifold::classify::{decide_pi1_z, simply_connected, Answer};
use stratifold::enumerate::{enumerate_graphs, EnumBounds};
use stratifold::homology::h1;

fn main() {
    let bounds = EnumBounds::new(2, 3);
    let mut total = 0usize;
    let mut yes_z = 0usize;
    let mut yes_sc = 0usize;
    let mut h1_z = 0usize;
    enumerate_graphs(&bounds, |g| {
        total += 1;
        let group = h1(g);
        if group.is_infinite_cyclic() {
            h1_z += 1;
        }
        match decide_pi1_z(g).answer {
            Answer::Yes => {
                yes_z += 1;
                // Soundness on display: a yes-verdict forces H1 = Z.
                assert!(group.is_infinite_cyclic());
            }
            Answer::No | Answer::Undetermined => {}
        }
        if simply_connected(g).is_yes() {
            yes_sc += 1;
            assert!(group.is_trivial());
        }
    })
    .expect("bounds in range");
    println!("census (≤ {} blacks, labels ≤ {}):", bounds.max_blacks, bounds.max_label);
    println!("  graphs:                {total}");
    println!("  H1 = Z:                {h1_z}");
    println!("  fundamental group Z:   {yes_z}");
    println!("  simply connected:      {yes_sc}");
}
