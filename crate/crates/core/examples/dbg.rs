use epsense_core::*;
use num_complex::Complex64;

fn main() {
    let p = SystemParams::default();
    let ep = locate_ep(&p, (1.0, 1000.0), DetuningMode::Bare).unwrap();
    let p = p.with_alpha_in(ep.alpha_in_ep);
    let d = derive(&p).unwrap();
    let s = solve_ideal(&p, &d, DetuningMode::Bare).unwrap();
    let m = build_full_matrix(&p, &d, &s);
    let mut eigs = m.eigenvalues();
    eigs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    for e in &eigs {
        println!("{:.16e} {:+.16e}i", e.re, e.im);
    }
    println!("weighted:");
    for (l, w) in m.weighted_eigenvalues() {
        println!("  {l}  w={w:.9}");
    }
    let p350 = SystemParams::default().with_alpha_in(350.0);
    let d = derive(&p350).unwrap();
    let s = solve_ideal(&p350, &d, DetuningMode::Bare).unwrap();
    let m = build_full_matrix(&p350, &d, &s);
    let pair = mechanical_branch(&m).unwrap();
    println!("mech branch: {} {}", pair.lambda_plus, pair.lambda_minus);
    let state = [Complex64::new(0.0,0.0), Complex64::new(1.0,0.0), Complex64::new(0.0,0.0), Complex64::new(0.0,0.0)];
    let dt = 0.5;
    let samples: Vec<f64> = (0..800).map(|k| propagate(&m, &state, dt*k as f64)[1].norm()).collect();
    let minima: Vec<usize> = (1..samples.len()-1).filter(|&i| samples[i] < samples[i-1] && samples[i] < samples[i+1]).collect();
    println!("minima idx: {:?}", &minima[..minima.len().min(6)]);
}
