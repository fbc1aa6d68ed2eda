//! Relative Hopf modules in the category of right K-modules and left
//! A-comodules: A itself, U (x) K for comodules U, and a counterexample.

use std::sync::Arc;

use braidhopf::coideal::CoidealSubalgebra;
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::hopf_module::{find_free_basis, HopfModuleData, LeftComodule};
use braidhopf::word::FreeElement;

fn report(d: &HopfModuleData<Rational>) -> braidhopf::Result<()> {
    match d.check()? {
        None => {
            let free = find_free_basis(d)?;
            println!(
                "{}: dims {:?}, Hopf module, free over K with N {:?}",
                d.name,
                d.dims(),
                braidhopf::report::trim(&free.hilbert_n)
            );
        }
        Some(w) => println!(
            "{}: dims {:?}, not a Hopf module: {} fails at {} . {} in degree {}",
            d.name,
            d.dims(),
            w.law,
            w.element,
            w.k.unwrap_or_default(),
            w.degree
        ),
    }
    Ok(())
}

fn main() -> braidhopf::Result<()> {
    let session = elaborate::<Rational>(&fk(3), None)?;
    let alg = session.algebra.clone();
    let k = Arc::new(CoidealSubalgebra::generate(alg.clone(), &[FreeElement::letter(0)])?);

    report(&HopfModuleData::of_algebra(&k))?;
    for m in 0..=2 {
        report(&HopfModuleData::induced(&LeftComodule::trivial_coaction(&alg, m), &k)?)?;
    }
    for m in 1..=2 {
        report(&HopfModuleData::induced(&LeftComodule::truncated_algebra(&alg, m), &k)?)?;
    }
    report(&HopfModuleData::with_trivial_action(&k))?;
    Ok(())
}
