//! The acceptance battery: one line of output per criterion.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use framelat::approx::{
    approx_dual_member_exact, build_constellation, dual_membership_threshold, exp_sum_average,
    FiniteSet,
};
use framelat::builtins;
use framelat::conditions::{
    certificate_1d, check_strong, check_weak, prop36_battery, DilationSpec, Status,
};
use framelat::exactnum::{rat, ratio, ComplexQuad, QuadScalar, RatMatrix, Rational};
use framelat::frames::{averaging_experiment, check_parseval, frame_functional, StepFunction};
use framelat::lattice::{self, Lattice};
use framelat::sigain::{behera_class, oversample_crosscheck, BeheraClass};

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn record(&mut self, idx: usize, name: &str, pass: bool) {
        println!("criterion {idx:>2} {name}: {}", if pass { "pass" } else { "FAIL" });
        if !pass {
            self.failures.push(format!("{idx} {name}"));
        }
    }
}

fn rand_rational(rng: &mut ChaCha8Rng, num_abs: i64, den_max: i64) -> Rational {
    ratio(rng.gen_range(-num_abs..=num_abs), rng.gen_range(1..=den_max))
}

fn rand_lattice(rng: &mut ChaCha8Rng, n: usize) -> Lattice {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| rand_rational(rng, 5, 6)).collect())
            .collect();
        let m = RatMatrix::from_rows(rows);
        if let Ok(l) = Lattice::from_basis(m) {
            return l;
        }
    }
}

fn criterion_1(r: &mut Report) {
    let psi = builtins::fig1();
    let mut pass = check_parseval(&psi, 1).unwrap().holds();
    let v2 = check_parseval(&psi, 2).unwrap();
    pass &= !v2.holds();
    if let Some(w) = &v2.witness {
        pass &= w.alpha.abs() == 2
            && w.value == ComplexQuad::from_rational(ratio(1, 2))
            && w.interval.0 >= rat(-1)
            && w.interval.1 <= ratio(-2, 3);
    } else {
        pass = false;
    }
    for lambda in [4, 5, 7] {
        pass &= check_parseval(&psi, lambda).unwrap().holds();
    }
    r.record(1, "counterexample reproduction", pass);
}

fn criterion_2(r: &mut Report) {
    let mut pass = true;
    for p in 2..=7u64 {
        for q in 1..p {
            if num::integer::gcd(p, q) != 1 {
                continue;
            }
            let dil = DilationSpec::scalar(p as i64, q as i64).unwrap();
            for lambda in 1..=30u64 {
                let lat = Lattice::line(ratio(1, lambda as i64)).unwrap();
                let cert = certificate_1d(p, q, lambda).unwrap();
                let v = check_strong(&dil, &lat, 5).unwrap();
                pass &= cert == v.holds();
                if num::integer::gcd(lambda, p * q) > 1 {
                    let early = check_strong(&dil, &lat, 1).unwrap();
                    pass &= early.status == Status::Violated && early.witness.is_some();
                }
            }
        }
    }
    r.record(2, "1-D condition sweep", pass);
}

fn criterion_3(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pass = true;
    let mut done = 0;
    while done < 500 {
        let rows: Vec<Vec<Rational>> = (0..2)
            .map(|_| (0..2).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = RatMatrix::from_rows(rows);
        let det = m.det();
        if det.numer().magnitude() > &8u32.into() || det.is_zero() {
            continue;
        }
        let Ok(dil) = DilationSpec::new(m) else { continue };
        // random Lambda with Z^2 inside Lambda inside (1/6)Z^2
        let gens = RatMatrix::from_rows(vec![
            vec![ratio(rng.gen_range(-6..=6), 6), ratio(rng.gen_range(-6..=6), 6)],
            vec![ratio(rng.gen_range(-6..=6), 6), ratio(rng.gen_range(-6..=6), 6)],
        ]);
        let extra = match Lattice::from_generators(&gens) {
            Ok(l) => l,
            Err(_) => continue,
        };
        let lambda = lattice::sum(&Lattice::standard(2), &extra).unwrap();
        let rep = prop36_battery(&dil, &lambda, 6).unwrap();
        pass &= rep.all_equal();
        done += 1;
    }
    r.record(3, "equivalence battery on random dilations", pass);
}

fn criterion_4(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pass = true;
    for i in 0..200 {
        let n = 1 + i % 3;
        let a = rand_lattice(&mut rng, n);
        let b = rand_lattice(&mut rng, n);
        let lhs = lattice::intersect(&a, &b).unwrap().dual();
        let rhs = lattice::sum(&a.dual(), &b.dual()).unwrap();
        pass &= lhs == rhs;
    }
    r.record(4, "duality exchanges intersection and sum", pass);
}

fn criterion_5(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pass = true;
    let mut done = 0;
    while done < 100 {
        let n = 1 + done % 2;
        let sub = rand_lattice(&mut rng, n);
        // parent refines the sub by an integer factor per axis
        let factor = ratio(1, rng.gen_range(1..=4));
        let parent = sub.scale(&factor);
        if !sub.is_sublattice(&parent).unwrap() {
            continue;
        }
        let eps = rng.gen_range(0.000_1..=0.01);
        let k = match build_constellation(&[(parent.clone(), sub.clone())], eps) {
            Ok(k) => k,
            Err(_) => continue,
        };
        // random m in the dual of the sub
        let m_exact: Vec<Rational> = {
            let coeffs: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-8..=8))).collect();
            sub.dual().basis().mul_vec(&coeffs)
        };
        let norm: f64 = m_exact
            .iter()
            .map(|x| framelat::exactnum::rational_to_f64(x).powi(2))
            .sum::<f64>()
            .sqrt();
        if norm > 20.0 {
            continue;
        }
        let m_f: Vec<f64> = m_exact.iter().map(framelat::exactnum::rational_to_f64).collect();
        let avg = exp_sum_average(&k.points, &m_f);
        let indicator = if parent.dual().member(&m_exact).unwrap() { 1.0 } else { 0.0 };
        let bound = 2.0 * std::f64::consts::PI * norm * eps + 1e-12;
        pass &= (avg - num_complex::Complex64::new(indicator, 0.0)).norm() <= bound;
        done += 1;
    }
    r.record(5, "exponential sum average bound", pass);
}

fn criterion_6(r: &mut Report) {
    let start = std::time::Instant::now();
    let psi = builtins::fig1();
    let f = StepFunction::indicator(rat(1), rat(2));
    let exact = frame_functional(&f, &psi, 5).unwrap();
    let table = averaging_experiment(&f, &psi, 5, &[1, 2, 4, 6], &[1e-2, 1e-4, 1e-6]).unwrap();
    let mut pass = true;
    let mut prev = f64::INFINITY;
    for row in &table.rows {
        pass &= row.error <= prev + 1e-12;
        prev = row.error;
    }
    let target = exact.n.to_f64();
    let last = table.rows.last().unwrap();
    pass &= last.error <= 1e-6 * target.abs();
    pass &= start.elapsed().as_secs() < 60;
    r.record(6, "averaging convergence", pass);
}

fn rand_step(rng: &mut ChaCha8Rng) -> StepFunction {
    // supports kept away from zero on both sides
    let mut pieces = Vec::new();
    for sign in [-1i64, 1] {
        let mut lo = ratio(rng.gen_range(1..=3), rng.gen_range(1..=3));
        for _ in 0..rng.gen_range(1..=3) {
            let width = ratio(rng.gen_range(1..=6), rng.gen_range(1..=4));
            let hi = &lo + width;
            let v = ComplexQuad::new(
                QuadScalar::new(
                    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)),
                    ratio(rng.gen_range(-2..=2), 2),
                    2,
                ),
                QuadScalar::from_rational(ratio(rng.gen_range(-2..=2), 3)),
            );
            if sign < 0 {
                pieces.push((-hi.clone(), -lo.clone(), v));
            } else {
                pieces.push((lo.clone(), hi.clone(), v));
            }
            lo = hi;
        }
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0));
    StepFunction::from_pieces(&pieces)
}

fn criterion_7(r: &mut Report) {
    let psi = builtins::fig1();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pass = true;
    for _ in 0..20 {
        let f = rand_step(&mut rng);
        let rep = frame_functional(&f, &psi, 1).unwrap();
        pass &= rep.n == rep.norm_sq;
    }
    r.record(7, "Parseval functional identity on random spectra", pass);
}

fn criterion_8(r: &mut Report) {
    let a2 = DilationSpec::scalar(2, 1).unwrap();
    let shannon = builtins::region_by_name("shannon").unwrap();
    let pair = builtins::box_pair();
    let mut pass = behera_class(&shannon, &a2, 6).unwrap() == BeheraClass::Infinite;
    pass &= behera_class(&pair, &a2, 6).unwrap() == BeheraClass::Finite(1);
    let rep = oversample_crosscheck(&builtins::shannon(), 3).unwrap();
    pass &= rep.agreement && rep.rows.iter().all(|row| row.parseval);
    r.record(8, "shift-invariance gain", pass);
}

fn criterion_9(r: &mut Report) {
    let psi = builtins::fig1();
    let dil = DilationSpec::scalar(3, 2).unwrap();
    let mut pass = true;
    for lambda in [5u64, 7] {
        let lat = Lattice::line(ratio(1, lambda as i64)).unwrap();
        pass &= check_strong(&dil, &lat, 6).unwrap().status == Status::CertifiedHolds;
        pass &= check_parseval(&psi, lambda).unwrap().holds();
    }
    let two = Lattice::line(ratio(1, 2)).unwrap();
    pass &= check_weak(&dil, &two, 6).unwrap().status == Status::Violated;
    pass &= !check_parseval(&psi, 2).unwrap().holds();
    // the sufficient condition is never contradicted
    for lambda in 1..=12u64 {
        let lat = Lattice::line(ratio(1, lambda as i64)).unwrap();
        if check_strong(&dil, &lat, 6).unwrap().status == Status::CertifiedHolds {
            pass &= check_parseval(&psi, lambda).unwrap().holds();
        }
    }
    r.record(9, "end-to-end oversampling validation", pass);
}

fn criterion_10(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pass = true;
    let floor = ratio(1, 1_000_000);
    for i in 0..50 {
        let n = 1 + i % 3;
        let l = rand_lattice(&mut rng, n);
        let f = FiniteSet::from_lattice_basis(&l);
        let probes: Vec<Vec<Rational>> = (0..100)
            .map(|_| (0..n).map(|_| rand_rational(&mut rng, 20, 10)).collect())
            .collect();
        // any eps strictly below the smallest nonzero distance keeps the
        // approximate test faithful; denominators are controlled, so the
        // threshold stays comfortably above 1e-6
        let eps = match dual_membership_threshold(&f, &probes).unwrap() {
            Some(t) => t / rat(2),
            None => Rational::one(),
        };
        pass &= eps >= floor;
        let dual = l.dual();
        for x in &probes {
            let approx = approx_dual_member_exact(&f, &eps, x).unwrap();
            let exact = dual.member(x).unwrap();
            pass &= approx == exact;
        }
    }
    r.record(10, "approximate dual threshold", pass);
}

#[test]
fn acceptance() {
    let mut r = Report { failures: Vec::new() };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    assert!(r.failures.is_empty(), "failed criteria: {:?}", r.failures);
}
