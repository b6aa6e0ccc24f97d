//! The text format and DOT export.
//!
//! Run with: cargo run --example parse_and_export

use stratifold::io::{export_dot, parse, serialize};

const DOCUMENT: &str = "
# a projective plane glued to a disk along a singular circle
white rp2 genus=-1
white disk
black circle
edge rp2 circle label=2
edge disk circle label=1
";

fn main() {
    let g = parse(DOCUMENT).expect("well-formed document");
    println!("parsed {} whites / {} blacks / {} edges", g.white_count(), g.black_count(), g.edge_count());

    // Serialization is canonical: sorted ids, explicit fields, bit-stable
    // under reparsing.
    let text = serialize(&g);
    print!("{text}");
    assert_eq!(serialize(&parse(&text).unwrap()), text);

    println!("--- DOT ---");
    print!("{}", export_dot(&g));
}
