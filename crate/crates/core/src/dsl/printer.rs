use std::fmt::Write;

use super::ast::*;

/// Canonical text of a document. Parsing the output yields an equal
/// document.
pub fn print(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let labels = doc.labels();
    if let Some(g) = &doc.group {
        let gens: Vec<String> = g.generators.iter().map(|p| p.to_string()).collect();
        let _ = write!(
            out,
            "group {} permutation degree {} generators",
            g.name, g.degree
        );
        if !gens.is_empty() {
            let _ = write!(out, " {}", gens.join(", "));
        }
        out.push_str(";\n");
    }
    if let Some(m) = &doc.module {
        let _ = writeln!(out, "module {} {{", m.name);
        for b in &m.basis {
            let _ = writeln!(out, "  basis {} deg {};", b.label, b.degree);
        }
        for a in &m.actions {
            match &a.images {
                ActionImages::Signed(images) => {
                    let parts: Vec<String> = images
                        .iter()
                        .map(|&(s, neg, t)| {
                            format!("{} -> {}{}", labels[s], if neg { "-" } else { "" }, labels[t])
                        })
                        .collect();
                    let _ = writeln!(out, "  action {}: {};", a.generator, parts.join(", "));
                }
                ActionImages::Matrix(rows) => {
                    let _ = writeln!(out, "  matrix {} {{", a.generator);
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(out, "    {};", cells.join(" "));
                    }
                    out.push_str("  }\n");
                }
            }
        }
        out.push_str("}\n");
    }
    if let Some(a) = &doc.algebra {
        let _ = write!(out, "algebra {} = T({})", a.name, a.module);
        if !a.relations.is_empty() {
            out.push_str(" / relations {\n");
            for r in &a.relations {
                let _ = writeln!(out, "  {};", r.expr.render(&labels));
            }
            out.push('}');
        }
        let _ = writeln!(out, " truncate {};", a.truncate);
    }
    for c in &doc.coideals {
        let gens: Vec<String> = c.generators.iter().map(|g| g.expr.render(&labels)).collect();
        if gens.is_empty() {
            let _ = writeln!(out, "coideal {} = subalgebra {{ }};", c.name);
        } else {
            let _ = writeln!(out, "coideal {} = subalgebra {{ {} }};", c.name, gens.join(", "));
        }
    }
    for t in &doc.tasks {
        out.push_str("task ");
        out.push_str(t.kind.keyword());
        for a in &t.args {
            out.push(' ');
            out.push_str(a);
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn round_trip_with_matrix_block() {
        let src = "group C2 permutation degree 2 generators (1 2);\n\
                   module W {\n  basis x deg (1 2);\n  basis y deg ();\n  \
                   matrix (1 2) {\n    -1 0;\n    0 1/3;\n  }\n}\n\
                   algebra B = T(W) / relations {\n  x*x;\n  1/2*y*x - y*x*1/2;\n} truncate 4;\n\
                   coideal Kx = subalgebra { x };\ntask check;\ntask freeness Kx;\n";
        let doc = parse(src).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(print(&parse(&text).unwrap()), text);
    }
}
