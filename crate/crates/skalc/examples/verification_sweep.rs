//! The self-check sweeps: duality, the partition floor, achievability of
//! every curve point, and lazy/eager equivalence over one random ensemble.

use skalc::rat::format_rational;
use skalc::verify::{run_all, RandomEnsembleSpec};

fn main() {
    let spec = RandomEnsembleSpec::with_seed(2024);
    let reports = run_all(&spec, 60).unwrap();

    for rep in &reports {
        let status = if rep.passed() { "pass" } else { "FAIL" };
        let floor = rep
            .min_observed
            .as_ref()
            .map(|m| format!(", smallest value seen {}", format_rational(m)))
            .unwrap_or_default();
        println!(
            "{:24} {status}: {} checks over {} instances{floor}",
            rep.what, rep.checks, rep.instances
        );
        for f in &rep.failures {
            println!("  instance {}: {}", f.instance, f.what);
        }
    }
    assert!(reports.iter().all(|r| r.passed()));
}
