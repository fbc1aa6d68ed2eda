//! Hom(X, Abar) against the colinear maps X -> A (x) Abar: the maps
//! f -> (f (x) id) Delta and phi -> (id (x) eps) phi are mutually inverse.

use braidhopf::coideal::QuotientCoalgebra;
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::hom::{GradedGSpace, HomSolver};

fn main() -> braidhopf::Result<()> {
    let s = elaborate::<Rational>(&fk(3), None)?;
    for name in ["K12", "K13", "K23"] {
        let k = s.coideal(name).expect("FK3 declares this coideal");
        let q = QuotientCoalgebra::new(k)?;
        for x in [GradedGSpace::unit(&s.group), GradedGSpace::of_algebra(&s.algebra)] {
            let r = HomSolver::new(&q, &x).report();
            println!(
                "{name}, X = {}: dim Hom {} = dim Hom^colinear {}, inverse pair: {}",
                r.x,
                r.dim_hom,
                r.dim_hom_colinear,
                r.alpha_beta_identity && r.beta_alpha_identity
            );
        }
    }
    Ok(())
}
