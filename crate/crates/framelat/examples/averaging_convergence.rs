//! Translational averaging: the lattice frame functional recovered as a
//! constellation average of integer-lattice functionals.

use framelat::builtins;
use framelat::exactnum::rat;
use framelat::frames::{averaging_experiment, frame_functional, StepFunction};

fn main() {
    let psi = builtins::fig1();
    let f = StepFunction::indicator(rat(1), rat(2));

    let exact = frame_functional(&f, &psi, 5).unwrap();
    println!(
        "exact N(f, (1/5)Z) = {}   (||f||^2 = {})",
        exact.n, exact.norm_sq
    );

    let table = averaging_experiment(&f, &psi, 5, &[1, 2, 4, 6], &[1e-2, 1e-4, 1e-6]).unwrap();
    println!("{:>3} {:>8} {:>12} {:>14} {:>12} {:>12}", "J", "eps", "|K|", "average", "error", "bound");
    for row in &table.rows {
        println!(
            "{:>3} {:>8.0e} {:>12} {:>14.9} {:>12.3e} {:>12.3e}",
            row.j, row.eps, row.constellation_size, row.average, row.error, row.bound
        );
    }
}
