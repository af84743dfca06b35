//! The closed-form bound family evaluated against the exact capacity at a
//! fixed discussion rate, plus the helper-set lower bound on helper rates.

use skalc::bounds::{best_helper_set_bound, max_alpha, standard_family, BoundOutcome};
use skalc::capacity::{cs_at_rate, CapacityOptions};
use skalc::model::{HypergraphSource, SubsetMask};
use skalc::rat::{format_rational, rat, rint};

fn main() {
    // Complete 3-uniform hypergraph on 4 vertices, unit weights: the case
    // where the slope bound meets 1/alpha* - 1 exactly.
    let triples: Vec<_> = (0..4u32)
        .flat_map(|i| (i + 1..4).flat_map(move |j| (j + 1..4).map(move |k| (i, j, k))))
        .map(|(i, j, k)| {
            skalc::model::Edge::new(
                SubsetMask::from_indices([i as usize, j as usize, k as usize]),
                rint(1),
            )
        })
        .collect();
    let src = HypergraphSource::numbered(4, triples, SubsetMask::full(4)).unwrap();

    let rate = rat(1, 2);
    let exact = cs_at_rate(&src, &rate, &CapacityOptions::default()).unwrap().value;
    println!("exact C_S({}) = {}", format_rational(&rate), format_rational(&exact));

    for report in standard_family(&src, &rate).unwrap() {
        match &report.outcome {
            BoundOutcome::Bound(v) => {
                let tight = match report.tight {
                    Some(true) => " (tight)",
                    Some(false) => "",
                    None => "",
                };
                println!("{:12} {}{}", report.name, format_rational(v), tight);
                for (k, v) in &report.params {
                    println!("{:12}   {k} = {v}", "");
                }
            }
            BoundOutcome::NotApplicable(why) => println!("{:12} n/a: {why}", report.name),
        }
    }

    let (alpha_star, lam) = max_alpha(&src).unwrap();
    println!("alpha* = {} from {}", format_rational(&alpha_star),
        lam.iter().map(|(b, w)| format!("{}:{}", src.set_to_string(b), format_rational(w)))
            .collect::<Vec<_>>().join(" "));

    // How much must helpers talk, given the others want a key rate of 1/2?
    let helpers = SubsetMask::from_indices([3]);
    let report = best_helper_set_bound(&src, helpers, &rat(1, 2)).unwrap();
    println!(
        "helper rate >= {} for S = {}",
        format_rational(report.value().unwrap()),
        src.set_to_string(helpers)
    );
}
