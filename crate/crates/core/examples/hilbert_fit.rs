//! Lengths of `R/(I^n)*`, the fitted Hilbert polynomial and its h-vector.
//!
//! ```text
//! cargo run --release --example hilbert_fit -- 5 4 4
//! ```

use tighthilbert::hilbert::{default_window, filtration_series, fit_filtration, lengths, FiltrationSpec};
use tighthilbert::scenarios::{build_scenario, predicted_polynomial};

fn main() -> tighthilbert::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, r, v) = match args[..] {
        [p, r, v] => (p, r, v as usize),
        _ => (5, 4, 4),
    };
    let s = build_scenario(p, r, v)?;
    let d = s.d();

    for (name, f) in [
        ("I^n", FiltrationSpec::adic(&s, s.hsop())),
        ("(I^n)*", FiltrationSpec::tight(&s)),
    ] {
        let window = default_window(r, d);
        let ls = lengths(&f, 1..=window.1)?;
        let fitted = fit_filtration(&f, window)?;
        println!("{name:8} lengths {:?}", ls.values().collect::<Vec<_>>());
        println!("{name:8} e = {:?}  ({fitted})", fitted.coeffs());
        if let Ok(series) = filtration_series(&f, d) {
            println!("{name:8} h-vector {:?}", series.numerator);
        }
    }
    if let Ok(predicted) = predicted_polynomial(&s) {
        println!("predicted e = {:?}", predicted.coeffs());
    }
    Ok(())
}
