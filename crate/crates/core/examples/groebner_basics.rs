//! Gröbner bases, normal forms and ideal operations over F_p.
//!
//! ```text
//! cargo run --example groebner_basics
//! ```

use tighthilbert::cli::{parse_polynomial, parse_polynomial_list};
use tighthilbert::groebner::{ring_with, Ideal};
use tighthilbert::polyring::MonomialOrder;

fn main() -> tighthilbert::Result<()> {
    let ring = ring_with(7, &["X", "Y", "Z"])?;
    let gens = parse_polynomial_list("X^2 - Y*Z, X*Y - Z^2, Y^2 - X*Z", &ring)?;
    let i = Ideal::new(&ring, gens)?;

    println!("ideal     {}", i.render());
    for g in i.basis()?.iter() {
        println!("  gb      {g}");
    }

    let f = parse_polynomial("X^3 + Y^3 + Z^3", &ring)?;
    println!("NF(f)     {}", i.normal_form(&f)?);
    println!(
        "X^3 - X*Y*Z in I? {}",
        i.contains(&parse_polynomial("X^3 - Y*Z*X", &ring)?)?
    );

    // a different ranking of the variables changes the basis, not the ideal
    let other = MonomialOrder::grevlex_ranked(vec![2, 1, 0])?;
    println!("basis under {other}: {} elements", i.groebner_basis(&other)?.len());
    println!("initial ideal {}", i.initial_ideal(ring.order())?.render());

    let j = Ideal::new(&ring, parse_polynomial_list("X, Y", &ring)?)?;
    println!("I ∩ (X, Y)  {}", i.intersection(&j)?.render());
    println!("I : X       {}", i.colon(&parse_polynomial("X", &ring)?)?.render());
    println!("I^2 has {} generators", i.power(2).gens().len());
    Ok(())
}
