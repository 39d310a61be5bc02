//! Tight closures of powers of a parameter ideal in `F_p[X_1..X_v]/(ΣX_i^r)`,
//! with finite inclusion evidence and an exclusion certificate.
//!
//! ```text
//! cargo run --example tight_closure -- 3 4 4
//! ```

use tighthilbert::frobenius::{inclusion_evidence, search_exclusion, test_elements};
use tighthilbert::scenarios::{applicable_routes, build_scenario, just_outside_monomial, tight_closure_powers};

fn main() -> tighthilbert::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, r, v) = match args[..] {
        [p, r, v] => (p, r, v as usize),
        _ => (3, 4, 4),
    };
    let s = build_scenario(p, r, v)?;
    println!("scenario {s}: relation {}", s.relation());
    println!(
        "routes {:?}",
        applicable_routes(&s).iter().map(|r| r.tag()).collect::<Vec<_>>()
    );

    let tests = test_elements(&s)?;
    println!("test elements: {}", tests.justification);

    for n in 1..=2 {
        let c = tight_closure_powers(&s, n)?;
        println!("\n(I^{n})* = {}   [{}]", c.formula, c.route);

        // a generator of the closure outside I^n should satisfy c u^q ∈ (I^n)^[q]
        let q_list: Vec<u64> = (1..=2).map(|e| (p as u64).pow(e)).collect();
        if let Some(u) = c
            .closure
            .gens()
            .iter()
            .find(|g| !s.context().contains(&c.base, g).unwrap_or(true))
        {
            let ev = inclusion_evidence(u, &c.base, &tests.elements[0], &q_list, Some(s.context()))?;
            println!("  {u}: {}", ev.verdict());
        }

        let Some(t) = c.shift else { continue };
        let outside = just_outside_monomial(&s, n, t);
        match search_exclusion(&outside, &c.base, &tests, 3, Some(s.context()))? {
            Some(cert) => println!(
                "  {} not in (I^{n})*: {} * u^{} reduces to {}",
                cert.element, cert.multiplier, cert.q, cert.witness
            ),
            None => println!("  no certificate for {outside} up to q = {p}^3"),
        }
    }
    Ok(())
}
