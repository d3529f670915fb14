//! Exact lattice algebra: canonical bases, duals, sums and intersections.

use framelat::exactnum::{ratio, RatMatrix};
use framelat::lattice::{self, Lattice};

fn main() {
    // two 1-D lattices and their common refinement
    let a = Lattice::line(ratio(1, 4)).unwrap();
    let b = Lattice::line(ratio(1, 6)).unwrap();
    let meet = lattice::intersect(&a, &b).unwrap();
    let join = lattice::sum(&a, &b).unwrap();
    println!("(1/4)Z  n (1/6)Z = {}Z", meet.generator_1d());
    println!("(1/4)Z  + (1/6)Z = {}Z", join.generator_1d());

    // the duality identities: (L n M)* = L* + M* and d(L) d(L*) = 1
    assert_eq!(meet.dual(), lattice::sum(&a.dual(), &b.dual()).unwrap());
    println!("dual of the intersection matches the sum of the duals");

    // a 2-D example: the quincunx sublattice of Z^2
    let q = RatMatrix::from_rows(vec![
        vec![ratio(1, 1), ratio(1, 1)],
        vec![ratio(-1, 1), ratio(1, 1)],
    ]);
    let quincunx = Lattice::standard(2).transform(&q).unwrap();
    let basis: Vec<Vec<String>> = quincunx
        .basis()
        .columns()
        .iter()
        .map(|c| c.iter().map(|e| e.to_string()).collect())
        .collect();
    println!("quincunx basis columns (canonical): {basis:?}");
    println!("det = {}", quincunx.det());
    println!(
        "index in Z^2 = {}",
        lattice::quotient_order(&Lattice::standard(2), &quincunx).unwrap()
    );
    assert!(quincunx.is_sublattice(&Lattice::standard(2)).unwrap());
}
