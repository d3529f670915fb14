//! Oversampling a Parseval wavelet frame can destroy the Parseval property
//! for rational dilations: the exact sweep of the shipped a = 3/2 generator.

use framelat::builtins;
use framelat::frames::{bessel_bound, check_parseval, t_alpha};

fn main() {
    let psi = builtins::fig1();
    println!("generator: a = 3/2, Bessel bound = {}", bessel_bound(&psi).unwrap());

    for lambda in 1..=7 {
        let v = check_parseval(&psi, lambda).unwrap();
        match &v.witness {
            None => println!("lambda = {lambda}: Parseval"),
            Some(w) => println!(
                "lambda = {lambda}: violated at alpha = {}, t = {} on [{}, {})",
                w.alpha, w.value, w.interval.0, w.interval.1
            ),
        }
    }

    // the offending t function at lambda = 2, printed piece by piece
    let t = t_alpha(&psi, &psi, 2, 2).unwrap();
    println!("t_2 for lambda = 2:");
    for (lo, hi, v) in t.function.pieces() {
        println!("  [{lo}, {hi}) -> {v}");
    }

    // integer dilations with MSF generators survive every oversampling
    let shannon = builtins::shannon();
    for lambda in [1, 2, 4, 8] {
        let v = check_parseval(&shannon, lambda).unwrap();
        println!("shannon, lambda = {lambda}: holds = {}", v.holds());
    }
}
