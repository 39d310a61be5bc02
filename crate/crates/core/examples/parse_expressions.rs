//! Parsing polynomial expressions and what the parser rejects.
//!
//! ```text
//! cargo run --example parse_expressions
//! ```

use tighthilbert::cli::{parse_expr, parse_polynomial};
use tighthilbert::groebner::ring_with;

fn main() -> tighthilbert::Result<()> {
    let ring = ring_with(5, &["X", "Y", "Z"])?;
    let ast = parse_expr("(X + 2*Y)^5 - X^5")?;
    println!("ast       {ast:?}");
    println!("value     {}", ast.eval(&ring)?);
    println!("reduced   {}", parse_polynomial("7*X*Y - 2*X*Y + Z^0", &ring)?);

    for bad in ["2X", "X^-1", "X^2^3", "W + 1", "X # Y"] {
        match parse_polynomial(bad, &ring) {
            Ok(f) => println!("{bad:8} -> {f}"),
            Err(e) => println!("{bad:8} -> error: {e}"),
        }
    }
    Ok(())
}
