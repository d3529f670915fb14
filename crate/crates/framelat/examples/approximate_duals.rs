//! Epsilon-approximate duals: membership, decomposition and the exactness
//! threshold for rational data.

use framelat::approx::{
    approx_dual_decompose, approx_dual_member, dual_membership_threshold, FiniteSet,
};
use framelat::exactnum::{rational_to_f64, ratio};

fn main() {
    // F = {1/3}: its exact dual lattice is 3Z
    let f = FiniteSet::from_rational(vec![vec![ratio(1, 3)]]);
    for (x, eps) in [(3.0, 0.0), (3.1, 0.0), (3.1, 0.05)] {
        println!(
            "x = {x}, eps = {eps}: member of the eps-dual? {}",
            approx_dual_member(&f, eps, &[x])
        );
    }

    // decompose x = z + y with z integer and y in the eps-dual
    let z = approx_dual_decompose(&f, 0.0, &[5.0], 10).unwrap();
    println!("5 decomposes with integer part z = {} (5 - z in 3Z + [0])", z[0]);

    // below this threshold, approximate membership agrees with the exact one
    let probes: Vec<Vec<_>> = (1..=20).map(|k| vec![ratio(k, 7)]).collect();
    let thr = dual_membership_threshold(&f, &probes).unwrap().unwrap();
    println!(
        "threshold over probes k/7: {} ({} as float)",
        thr,
        rational_to_f64(&thr)
    );

    // an irrational finite set only has the float route
    let s = FiniteSet::from_float(vec![vec![2f64.sqrt()]]);
    println!(
        "sqrt(2) set, x = 1/sqrt(2): member at eps 0.01? {}",
        approx_dual_member(&s, 0.01, &[1.0 / 2f64.sqrt()])
    );
}
