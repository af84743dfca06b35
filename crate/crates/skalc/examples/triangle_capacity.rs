//! Omniscience rate and secrecy capacity of the triangle pairwise source:
//! three users, one independent uniform bit on each pair.

use skalc::capacity::{cs_unconstrained, rco_with_dual, CapacityOptions};
use skalc::model::HypergraphSource;
use skalc::rat::format_rational;

fn main() {
    let src = HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let opts = CapacityOptions::default();

    let (total, rates, lambda) = rco_with_dual(&src, &opts).unwrap();
    println!("H(Z_V) = {}", format_rational(&src.total_entropy()));
    println!("R_CO   = {}", format_rational(&total));
    for (i, r) in rates.iter().enumerate() {
        println!("  r[{}] = {}", src.label(i), format_rational(r));
    }

    // The dual is a fractional partition certifying optimality: R_CO equals
    // H(Z_V) minus the weighted sum of conditional entropies.
    println!("optimal fractional partition:");
    for (b, w) in lambda.iter() {
        println!("  lambda[{}] = {}", src.set_to_string(b), format_rational(w));
    }

    let cs = cs_unconstrained(&src, &opts).unwrap();
    println!("C_S    = {}", format_rational(&cs));
    assert_eq!(cs, src.total_entropy() - total);
}
