//! The oversampling conditions for scalar and matrix dilations: strong and
//! weak checks, certificates, and the six-way equivalence battery.

use framelat::conditions::{
    certificate_1d, check_strong, check_weak, prop36_battery, DilationSpec,
};
use framelat::exactnum::{rat, ratio};
use framelat::lattice::Lattice;

fn main() {
    let a32 = DilationSpec::scalar(3, 2).unwrap();
    println!("dilation a = 3/2, lattices (1/lambda)Z:");
    for lambda in 1..=12 {
        let lat = Lattice::line(ratio(1, lambda)).unwrap();
        let strong = check_strong(&a32, &lat, 6).unwrap();
        let weak = check_weak(&a32, &lat, 6).unwrap();
        let cert = certificate_1d(3, 2, lambda as u64).unwrap();
        println!(
            "  lambda = {lambda:>2}: strong {:<14} weak {:<14} gcd certificate {}",
            format!("{:?}", strong.status),
            format!("{:?}", weak.status),
            cert
        );
    }

    // a violated instance comes with an exact witness
    let bad = check_strong(&a32, &Lattice::line(ratio(1, 2)).unwrap(), 6).unwrap();
    let w = bad.witness.unwrap();
    println!("lambda = 2 witness: scale j = {}, point m = {}", w.j, w.m[0]);

    // integer dilation in 2-D: the battery of equivalent formulations
    let quincunx = DilationSpec::new(framelat::exactnum::RatMatrix::from_rows(vec![
        vec![rat(1), rat(1)],
        vec![rat(-1), rat(1)],
    ]))
    .unwrap();
    let third = Lattice::diagonal(&[ratio(1, 3), ratio(1, 3)]).unwrap();
    let rep = prop36_battery(&quincunx, &third, 6).unwrap();
    println!(
        "quincunx with (1/3)Z^2: battery all equal = {}, all true = {}",
        rep.all_equal(),
        rep.all_true()
    );
}
