//! Parse, print and elaborate a `.bha` document.
//!
//! ```text
//! cargo run --example dsl_roundtrip [file.bha]
//! ```

use braidhopf::dsl::{elaborate, fk, parse, print};
use braidhopf::field::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)?;
            parse(&text)?
        }
        None => fk(3),
    };
    let printed = print(&doc);
    print!("{printed}");
    assert_eq!(parse(&printed)?, doc, "printing is not stable");

    let s = elaborate::<Rational>(&doc, None)?;
    println!("-- group of order {}, algebra hilbert {:?}", s.group.order(), s.algebra.hilbert());
    for (name, k) in &s.coideals {
        println!("-- coideal {name}: hilbert {:?}", k.hilbert());
    }

    let err = parse("group G = S3;\nmodule V over G { basis v12 : (1 2) }").unwrap_err();
    println!("-- malformed input: {err}");
    Ok(())
}
