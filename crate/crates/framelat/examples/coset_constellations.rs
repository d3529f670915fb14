//! Coset transversals, Smith bases and multi-quotient constellations.

use framelat::approx::{build_constellation, coverage_counts};
use framelat::exactnum::{format_rational, ratio};
use framelat::lattice::{exact_transversal, smith_basis, Lattice};

fn main() {
    let parent = Lattice::line(ratio(1, 6)).unwrap();
    let sub = Lattice::line(ratio(1, 2)).unwrap();

    let sm = smith_basis(&parent, &sub).unwrap();
    println!("elementary divisors of (1/2)Z inside (1/6)Z: {:?}", sm.alphas);

    let t = exact_transversal(&parent, &sub).unwrap();
    let reps: Vec<String> = t.points.iter().map(|p| format_rational(&p[0])).collect();
    println!("coset representatives: {}", reps.join(", "));

    // one constellation serving two quotients at once
    let pairs = vec![
        (parent.clone(), Lattice::standard(1)),
        (parent.clone(), Lattice::line(ratio(1, 2)).unwrap()),
    ];
    let k = build_constellation(&pairs, 0.0).unwrap();
    println!("constellation size: {}", k.len());
    for (p, s) in &k.pairs {
        let counts = coverage_counts(&k.points, p, s, 1e-9).unwrap();
        println!(
            "pair d(parent)={} d(sub)={}: coverage per coset {:?}",
            p.det(),
            s.det(),
            counts
        );
    }
}
