//! The full rate-constrained capacity curve of a small source: piecewise
//! linear, concave, flat at C_S beyond the omniscience rate.

use skalc::capacity::{capacity_curve, cs_at_rate, CapacityOptions};
use skalc::model::{Edge, HypergraphSource, SubsetMask};
use skalc::rat::{decimal, format_rational, rat, rint};

fn main() {
    // Four users; a mix of pair and triple edges with uneven weights.
    let src = HypergraphSource::numbered(
        4,
        vec![
            Edge::new(SubsetMask::from_indices([0, 1]), rint(2)),
            Edge::new(SubsetMask::from_indices([1, 2]), rat(1, 2)),
            Edge::new(SubsetMask::from_indices([2, 3]), rint(1)),
            Edge::new(SubsetMask::from_indices([0, 2, 3]), rat(3, 2)),
        ],
        SubsetMask::from_indices([0, 1, 2, 3]),
    )
    .unwrap();

    let opts = CapacityOptions::default();
    let curve = capacity_curve(&src, &opts).unwrap();

    println!("breakpoints (R, C_S(R)):");
    for (r, v) in curve.breakpoints() {
        println!("  ({}, {})  ~ ({}, {})", format_rational(r), format_rational(v), decimal(r), decimal(v));
    }
    println!("segment slopes: {}",
        curve.slopes().iter().map(format_rational).collect::<Vec<_>>().join(", "));
    println!("saturates at R = {} with C_S = {}",
        format_rational(curve.total_rate()), format_rational(curve.total_value()));

    // Pointwise evaluation agrees with solving the LP at that rate.
    for rate in [rint(0), rat(1, 3), rint(1), rint(4)] {
        let direct = cs_at_rate(&src, &rate, &opts).unwrap().value;
        assert_eq!(curve.value_at(&rate), direct);
        println!("C_S({}) = {}", format_rational(&rate), format_rational(&direct));
    }
}
