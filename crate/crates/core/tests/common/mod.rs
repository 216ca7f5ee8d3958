use std::f64::consts::PI;

use fpn_core::{BoundedFunction, Coset};

/// max over r of |E_{x∈C} (f(x) − mean) ω^{r·x}|, summed directly.
pub fn naive_max_modulus(f: &BoundedFunction, c: &Coset) -> f64 {
    let space = f.space();
    let p = space.p();
    let pts = c.member_indices(&space).unwrap();
    let vals: Vec<f64> = pts.iter().map(|&x| f.value_f64(x)).collect();
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let mut best = 0.0f64;
    for r in 0..space.size() {
        let (mut re, mut im) = (0.0, 0.0);
        for (&x, &v) in pts.iter().zip(&vals) {
            let t = f64::from(space.dot(r, x)) * 2.0 * PI / f64::from(p);
            re += (v - mean) * t.cos();
            im += (v - mean) * t.sin();
        }
        best = best.max((re * re + im * im).sqrt() / pts.len() as f64);
    }
    best
}
