//! Untrusted users and wiretapped edges reduce to a plain source on the
//! trusted part: compromised users drop out, tapped edges lose their weight.

use skalc::capacity::{cs_unconstrained, CapacityOptions};
use skalc::model::{Edge, HypergraphSource, SubsetMask};
use skalc::rat::{format_rational, rat, rint};
use std::collections::BTreeSet;

fn main() {
    let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let edges = vec![
        Edge::new(SubsetMask::from_indices([0, 1]), rint(1)),
        Edge::new(SubsetMask::from_indices([1, 2]), rat(3, 2)),
        Edge::new(SubsetMask::from_indices([2, 3]), rint(1)),
        Edge::new(SubsetMask::from_indices([0, 2]), rat(1, 2)),
    ];
    // d cooperates with the eavesdropper, and edge 0 is tapped directly.
    let src = HypergraphSource::new(
        labels,
        edges,
        SubsetMask::from_indices([0, 1, 2]),
        SubsetMask::singleton(3),
        BTreeSet::from([0]),
    )
    .unwrap();

    let reduced = src.reduce_for_adversaries().unwrap();
    println!("original: {} vertices, {} edges", src.vertex_count(), src.edge_count());
    println!("reduced:  {} vertices, {} edges", reduced.vertex_count(), reduced.edge_count());
    for e in reduced.edges() {
        println!(
            "  edge {} with weight {}",
            reduced.set_to_string(e.incidence),
            format_rational(&e.weight)
        );
    }

    // Capacity routines reduce internally, so both views agree.
    let opts = CapacityOptions::default();
    let with_adversaries = cs_unconstrained(&src, &opts).unwrap();
    let on_reduced = cs_unconstrained(&reduced, &opts).unwrap();
    assert_eq!(with_adversaries, on_reduced);
    println!("C_S = {}", format_rational(&with_adversaries));
}
