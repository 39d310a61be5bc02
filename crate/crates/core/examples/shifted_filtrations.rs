//! Hilbert coefficients, postulation and reduction numbers of the filtrations
//! `I^n + m^{n+t}` on the hypersurfaces `ΣX_i^r`.
//!
//! ```text
//! cargo run --release --example shifted_filtrations
//! ```

use tighthilbert::hilbert::{binomial_coefficients_check, expected_h_vector};
use tighthilbert::scenarios::SHIFTED_GRID_PRIME;

fn main() -> tighthilbert::Result<()> {
    println!(
        "{:>2} {:>2} {:>2}  {:<24} {:>5} {:>5}  h-vector",
        "r", "t", "d", "e", "post", "red"
    );
    for r in 2..=5 {
        for t in 0..=r - 2 {
            for d in 1..=2 {
                let rep = binomial_coefficients_check(SHIFTED_GRID_PRIME, r, t, d, 3)?;
                let post = rep.postulation.map_or("-".into(), |p| p.to_string());
                let red = rep.reduction.map_or("-".into(), |m| m.to_string());
                println!(
                    "{r:>2} {t:>2} {d:>2}  {:<24} {post:>5} {red:>5}  {:?}{}",
                    format!("{:?}", rep.fitted.coeffs()),
                    expected_h_vector(r, t),
                    if rep.passed() { "" } else { "  MISMATCH" }
                );
            }
        }
    }
    Ok(())
}
