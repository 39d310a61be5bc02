use super::Scenario;
use crate::error::{Error, Result};
use crate::frobenius::{
    charp_degp1_closure, fpure_power_closure, minimal_prime_closure, power_closure_shift, ClosureDescription, Route,
};

/// Routes whose hypotheses hold for the scenario, in dispatch priority.
pub fn applicable_routes(s: &Scenario) -> Vec<Route> {
    let mut routes = Vec::new();
    if s.v() < 2 {
        return routes;
    }
    if s.is_minimal_prime_case() {
        routes.push(Route::MinimalPrime);
    }
    if s.is_degree_p_plus_1() {
        routes.push(Route::CharPDegP1);
    }
    if s.fpure_colon_applies() {
        routes.push(Route::FPureColon);
    }
    if s.strong_vanishing_applies() {
        routes.push(Route::ResolutionShift);
    }
    routes
}

pub fn closure_by_route(s: &Scenario, route: Route, n: u32) -> Result<ClosureDescription> {
    match route {
        Route::MinimalPrime => minimal_prime_closure(s, n),
        Route::CharPDegP1 => charp_degp1_closure(s, n),
        Route::FPureColon => fpure_power_closure(s, n),
        Route::ResolutionShift | Route::StrongVanishing => power_closure_shift(s, n),
        Route::ColonComputed => Err(Error::NoRoute("colon-computed closures are not dispatched".into())),
    }
}

/// `(I^n)*` from the highest-priority applicable route. Every other
/// applicable route is evaluated too and must give the same ideal.
pub fn tight_closure_powers(s: &Scenario, n: u32) -> Result<ClosureDescription> {
    let routes = applicable_routes(s);
    let Some((&first, rest)) = routes.split_first() else {
        return Err(Error::NoRoute(format!(
            "no closure route covers (p, r, v) = ({})",
            s.label()
        )));
    };
    let primary = closure_by_route(s, first, n)?;
    for &route in rest {
        let other = closure_by_route(s, route, n)?;
        if !primary.closure.equals(&other.closure)? {
            return Err(Error::Verification(format!(
                "routes {first} and {route} disagree for n = {n}: {} vs {}",
                primary.formula, other.formula
            )));
        }
    }
    Ok(primary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::build_scenario;

    #[test]
    fn dispatch_examples() {
        let c = tight_closure_powers(&build_scenario(7, 4, 4).unwrap(), 2).unwrap();
        assert_eq!((c.route, c.formula.as_str()), (Route::ResolutionShift, "I^2 + m^4"));
        let c = tight_closure_powers(&build_scenario(3, 4, 4).unwrap(), 2).unwrap();
        assert_eq!((c.route, c.formula.as_str()), (Route::CharPDegP1, "I^2 + m^3"));
        let s = build_scenario(2, 4, 4).unwrap();
        let c = tight_closure_powers(&s, 1).unwrap();
        assert!(c.closure.equals(&s.maximal()).unwrap());
        assert!(matches!(
            tight_closure_powers(&build_scenario(2, 6, 4).unwrap(), 1),
            Err(Error::NoRoute(_))
        ));
    }

    #[test]
    fn overlapping_routes_agree() {
        // r = p + 1 and strong vanishing both hold for (3, 4, 3)
        let s = build_scenario(3, 4, 3).unwrap();
        assert_eq!(applicable_routes(&s), vec![Route::CharPDegP1, Route::ResolutionShift]);
        for n in 1..=3 {
            tight_closure_powers(&s, n).unwrap();
        }
    }
}
