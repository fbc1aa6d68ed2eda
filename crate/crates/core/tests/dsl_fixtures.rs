mod common;

use braidhopf::dsl::{elaborate, fk, parse, print};
use braidhopf::field::Rational;
use common::*;

#[test]
fn fk_fixtures_are_canonical() {
    for n in [2, 3, 4] {
        let on_disk = std::fs::read_to_string(fixture(&format!("fk{n}.bha"))).unwrap();
        assert_eq!(print(&fk(n)), on_disk, "fk{n}.bha differs from the builtin");
    }
}

#[test]
fn parsed_fk3_equals_builtin() {
    let text = std::fs::read_to_string(fixture("fk3.bha")).unwrap();
    let doc = parse(&text).unwrap();
    assert_eq!(doc, fk(3));
    let a = elaborate::<Rational>(&doc, None).unwrap();
    let b = elaborate::<Rational>(&fk(3), None).unwrap();
    assert_eq!(a.algebra.hilbert(), b.algebra.hilbert());
    assert_eq!(a.algebra.relations(), b.algebra.relations());
}

#[test]
fn round_trip_on_all_fixtures() {
    let mut parsed = 0;
    for path in all_documents() {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = match parse(&text) {
            Ok(doc) => doc,
            Err(e) => {
                let rejected = ["syntax.bha", "undeclared.bha", "unknown_coideal.bha"];
                assert!(
                    rejected.iter().any(|r| path.ends_with(format!("negative/{r}"))),
                    "{} does not parse: {e}",
                    path.display()
                );
                continue;
            }
        };
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc, "{}", path.display());
        assert_eq!(print(&parse(&printed).unwrap()), printed);
        parsed += 1;
    }
    assert!(parsed >= 8, "only {parsed} fixtures parsed");
}

#[test]
fn hand_written_fixtures_are_in_printed_form() {
    for name in ["broken.bha", "free3.bha"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(print(&parse(&text).unwrap()), text, "{name}");
    }
}
