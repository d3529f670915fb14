//! Shift-invariance gain: exact support overlaps, the invariance class of a
//! wavelet support, and the oversampled-Parseval cross-check.

use framelat::builtins;
use framelat::conditions::DilationSpec;
use framelat::exactnum::rat;
use framelat::lattice::Lattice;
use framelat::sigain::{behera_class, overlap_measure, oversample_crosscheck, si_gain_check};

fn main() {
    let fig1 = builtins::region_by_name("fig1").unwrap();
    for k in 1..=4 {
        let m = overlap_measure(&fig1, &[rat(k)]).unwrap();
        println!("fig1 support, shift {k}: overlap measure {m}");
    }

    let half = Lattice::line(framelat::exactnum::ratio(1, 2)).unwrap();
    let v = si_gain_check(&fig1, &half).unwrap();
    match v.witness {
        Some((k, m)) => println!("(1/2)Z invariance fails: k = {}, measure {m}", k[0]),
        None => println!("(1/2)Z invariance holds"),
    }

    let a2 = DilationSpec::scalar(2, 1).unwrap();
    for name in ["shannon", "journe", "box-pair"] {
        let region = builtins::region_by_name(name).unwrap();
        let class = behera_class(&region, &a2, 5).unwrap();
        println!("invariance class of {name}: {:?}", class);
    }

    for name in ["shannon", "journe"] {
        let psi = builtins::generator_by_name(name).unwrap();
        let rep = oversample_crosscheck(&psi, 3).unwrap();
        println!(
            "{name}: class {:?}, oversampled Parseval s=1..3 {:?}, agreement = {}",
            rep.class,
            rep.rows.iter().map(|r| r.parseval).collect::<Vec<_>>(),
            rep.agreement
        );
    }
}
