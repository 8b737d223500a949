use blref_core::algebra::{rat, rat_to_f64, Polynomial};
use blref_core::refine;
use blref_core::threshold::quartic_potential;

fn main() {
    let pot = quartic_potential(&rat(1, 1), &rat(1, 20)).unwrap();
    let seq = refine::build_sequence(&pot, 4).unwrap();
    let f = Polynomial::from_integers(&[1, 2, -1, 3, 0, 1, 2]);
    let series = refine::build_term_series(&f, &seq, 4).unwrap();
    let g4 = &series.integrands[3];
    // compare f64 evaluation of the canonical expanded form vs exact
    for &x in &[0.5f64, 2.0, 5.0, 8.0, 12.0, 20.0] {
        let xr = rat((x * 16.0) as i64, 16);
        let exact = g4.eval_rat(&xr).map(|v| rat_to_f64(&v)).unwrap_or(f64::NAN);
        let fast = g4.eval_f64(x).unwrap_or(f64::NAN);
        let rel = ((fast - exact) / exact.abs().max(1e-300)).abs();
        println!("x={x:5}: exact={exact:.6e} f64={fast:.6e} rel_err={rel:.2e}");
    }
    // coefficient magnitude spread
    let nmax = g4.num().coeffs_f64().iter().fold(0f64, |m, c| m.max(c.abs()));
    let nmin = g4.num().coeffs_f64().iter().filter(|c| **c != 0.0).fold(f64::INFINITY, |m, c| m.min(c.abs()));
    println!("num coeff magnitude range: {nmin:.2e} ..= {nmax:.2e}");
}
