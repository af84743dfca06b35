//! Smallest discussion rate that still achieves a wanted key rate,
//! by inverting the capacity curve.

use skalc::capacity::{cs_unconstrained, rco, rs_at_key_rate, CapacityOptions};
use skalc::model::HypergraphSource;
use skalc::rat::{format_rational, rat, rint};

fn main() {
    let src = HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let opts = CapacityOptions::default();

    let cs = cs_unconstrained(&src, &opts).unwrap();
    let (omniscience, _) = rco(&src, &opts).unwrap();
    println!("C_S = {}, R_CO = {}", format_rational(&cs), format_rational(&omniscience));

    for r_k in [rint(0), rat(1, 2), rint(1), rat(3, 2)] {
        let (rate, point) = rs_at_key_rate(&src, &r_k, &opts).unwrap();
        println!(
            "R_S({}) = {}   (witness achieves key rate {})",
            format_rational(&r_k),
            format_rational(&rate),
            format_rational(&point.value)
        );
        assert!(point.value >= r_k);
    }

    // Full key rate costs the most discussion; here the whole curve is one
    // segment of slope 1 so R_S(C_S) = C_S = R_CO... not in general though.
    let (at_capacity, _) = rs_at_key_rate(&src, &cs, &opts).unwrap();
    assert_eq!(at_capacity, rat(3, 2));

    // Asking beyond the capacity is refused.
    let err = rs_at_key_rate(&src, &rint(2), &opts).unwrap_err();
    println!("asking for key rate 2: {err}");
}
