//! The five-user linear source whose communication complexity exceeds every
//! key-rate lower bound obtainable from auxiliary random variables.

use skalc::linear_source::{counterexample_report, rho_of_w, Gf2Matrix};
use skalc::rat::format_rational;

fn main() {
    let rep = counterexample_report().unwrap();

    for (i, label) in rep.source.labels().iter().enumerate() {
        let rows = rep.source.observer(i).row_count();
        println!("user {label} observes {rows} bit(s)");
    }
    println!("H(Z_V) = {}", format_rational(&rep.total_entropy));
    println!("R_CO   = {}", format_rational(&rep.rco));
    println!("C_S    = {}", format_rational(&rep.capacity));
    println!("R_S at full key rate = {} (known for this source)", format_rational(&rep.rs_stated));

    println!("key-rate lower bounds through auxiliary variables:");
    for probe in &rep.probes {
        if probe.feasible {
            println!("  W = {:22} bound {}", probe.label, format_rational(&probe.value));
        } else {
            println!("  W = {:22} infeasible", probe.label);
        }
    }

    let headline = rep.headline_probe();
    println!(
        "best probe gives {}, still {} short of the true complexity",
        format_rational(&headline.value),
        format_rational(&rep.gap())
    );

    // The headline W = (a, b, c) is cheap to reconstruct: rho counts the
    // discussion its observers need before W becomes common knowledge.
    let w = Gf2Matrix::from_bits(
        4,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
    )
    .unwrap();
    let rho = rho_of_w(&rep.source, &w).unwrap();
    println!("rho(W) = {}", format_rational(&rho));
}
