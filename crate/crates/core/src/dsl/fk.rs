//! The Fomin-Kirillov family.

use itertools::Itertools;

use super::ast::*;
use crate::field::{Field, Rational};
use crate::group::Perm;
use crate::word::{FreeElement, Word};

/// Default truncation degree of `fk(n)`: one past the top degree for the
/// algebras whose dimension is known, with an extra zero degree for `n = 3`.
pub fn fk_default_truncation(n: usize) -> usize {
    match n {
        0..=2 => 4,
        3 => 6,
        4 => 13,
        _ => n * (n - 1),
    }
}

fn label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("v{i}{j}")
    } else {
        format!("v{i}_{j}")
    }
}

/// Basis labels `v_ij`, `i < j`, in lexicographic order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).tuple_combinations().collect()
}

/// `v_ab` as `(negative, basis index)` using `v_ba = -v_ab`.
fn signed(pairs: &[(usize, usize)], a: usize, b: usize) -> (bool, usize) {
    let key = if a < b { (a, b) } else { (b, a) };
    let idx = pairs.iter().position(|&p| p == key).expect("pair exists");
    (a > b, idx)
}

fn monomial(pairs: &[(usize, usize)], x: (usize, usize), y: (usize, usize)) -> FreeElement<Rational> {
    let (nx, ix) = signed(pairs, x.0, x.1);
    let (ny, iy) = signed(pairs, y.0, y.1);
    let c = if nx != ny { -1 } else { 1 };
    FreeElement::term(
        Word::letter(ix).concat(&Word::letter(iy)),
        Rational::from_i64(c),
    )
}

/// The Fomin-Kirillov document for `S_n`: the transposition module, the
/// squares, the triangle relation for both cyclic orientations of every
/// 3-subset, and the commutators of disjoint transpositions. Each
/// transposition generates a coideal `K<ij>`.
pub fn fk(n: usize) -> SpecDocument {
    assert!(n >= 2, "fk(n) needs n >= 2");
    let ps = pairs(n);
    let labels: Vec<String> = ps.iter().map(|&(i, j)| label(n, i, j)).collect();
    let transposition = |i: usize, j: usize| Perm::from_cycles(n, &[vec![i, j]]).expect("valid");
    let mut generators = vec![transposition(1, 2)];
    if n > 2 {
        generators.push(Perm::from_cycles(n, &[(1..=n).collect()]).expect("valid"));
    }

    let basis = ps
        .iter()
        .zip(&labels)
        .map(|(&(i, j), l)| BasisDecl {
            label: l.clone(),
            degree: transposition(i, j),
            span: Span::default(),
        })
        .collect();
    let actions = generators
        .iter()
        .map(|g| {
            let images = ps
                .iter()
                .enumerate()
                .map(|(src, &(i, j))| {
                    let (neg, dst) = signed(&ps, g.apply(i - 1) + 1, g.apply(j - 1) + 1);
                    (src, neg, dst)
                })
                .collect();
            ActionDecl {
                generator: g.clone(),
                images: ActionImages::Signed(images),
                span: Span::default(),
            }
        })
        .collect();

    let mut relations = Vec::new();
    for &p in &ps {
        relations.push(monomial(&ps, p, p));
    }
    for (a, b, c) in (1..=n).tuple_combinations() {
        for (i, j, k) in [(a, b, c), (a, c, b)] {
            // v_ij v_jk + v_jk v_ki + v_ki v_ij
            let r = monomial(&ps, (i, j), (j, k))
                .add(&monomial(&ps, (j, k), (k, i)))
                .add(&monomial(&ps, (k, i), (i, j)));
            relations.push(r);
        }
    }
    for (x, y) in ps.iter().tuple_combinations() {
        if x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1 {
            relations.push(monomial(&ps, *x, *y).sub(&monomial(&ps, *y, *x)));
        }
    }

    let coideals: Vec<CoidealDecl> = ps
        .iter()
        .enumerate()
        .map(|(idx, _)| CoidealDecl {
            name: format!("K{}", &labels[idx][1..]),
            generators: vec![RelationDecl {
                expr: FreeElement::letter(idx),
                span: Span::default(),
            }],
            span: Span::default(),
        })
        .collect();
    let first = coideals[0].name.clone();
    let task = |kind, args: &[&String]| TaskDecl {
        kind,
        args: args.iter().map(|s| s.to_string()).collect(),
        span: Span::default(),
    };
    let tasks = vec![
        task(TaskKind::Check, &[]),
        task(TaskKind::Hilbert, &[]),
        task(TaskKind::Decompose, &[&first]),
        task(TaskKind::Canmap, &[&first]),
        task(TaskKind::Freeness, &[&first]),
        task(TaskKind::Hopfmod, &[&first]),
    ];

    SpecDocument {
        group: Some(GroupDecl {
            name: format!("S{n}"),
            degree: n,
            generators,
            span: Span::default(),
        }),
        module: Some(ModuleDecl {
            name: "V".into(),
            basis,
            actions,
            span: Span::default(),
        }),
        algebra: Some(AlgebraDecl {
            name: format!("FK{n}"),
            module: "V".into(),
            relations: relations
                .into_iter()
                .map(|expr| RelationDecl {
                    expr,
                    span: Span::default(),
                })
                .collect(),
            truncate: fk_default_truncation(n),
            span: Span::default(),
        }),
        coideals,
        tasks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: usize) -> (usize, usize) {
        let doc = fk(n);
        (
            doc.module.unwrap().basis.len(),
            doc.algebra.unwrap().relations.len(),
        )
    }

    #[test]
    fn relation_counts() {
        assert_eq!(counts(2), (1, 1));
        assert_eq!(counts(3), (3, 5));
        assert_eq!(counts(4), (6, 6 + 8 + 3));
    }

    #[test]
    fn fk3_relations_frozen() {
        let doc = fk(3);
        let labels = doc.labels();
        let rels: Vec<String> = doc
            .algebra
            .unwrap()
            .relations
            .iter()
            .map(|r| r.expr.render(&labels))
            .collect();
        assert_eq!(
            rels,
            vec![
                "v12*v12",
                "v13*v13",
                "v23*v23",
                "v12*v23 - v13*v12 - v23*v13",
                "-v12*v13 - v13*v23 + v23*v12",
            ]
        );
    }

    #[test]
    fn action_signs() {
        let doc = fk(3);
        let m = doc.module.unwrap();
        // (1 2): v12 -> -v12, v13 -> v23, v23 -> v13
        assert_eq!(
            m.actions[0].images,
            ActionImages::Signed(vec![(0, true, 0), (1, false, 2), (2, false, 1)])
        );
        // (1 2 3): v12 -> v23, v13 -> -v12 (v21), v23 -> -v13 (v31)
        assert_eq!(
            m.actions[1].images,
            ActionImages::Signed(vec![(0, false, 2), (1, true, 0), (2, true, 1)])
        );
    }
}
