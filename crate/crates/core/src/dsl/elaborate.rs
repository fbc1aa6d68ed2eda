use std::sync::Arc;

use super::ast::*;
use crate::algebra::GradedAlgebra;
use crate::coideal::CoidealSubalgebra;
use crate::field::{Field, Rational};
use crate::group::FiniteGroup;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::word::FreeElement;
use crate::yd::{YdModule, YdWitness};
use crate::{Error, Pos, Result};

/// Everything a document declares, built and checked.
#[derive(Debug)]
pub struct Session<F> {
    pub group: FiniteGroup,
    pub algebra: Arc<GradedAlgebra<F>>,
    pub coideals: Vec<(String, Arc<CoidealSubalgebra<F>>)>,
}

impl<F: Field> Session<F> {
    pub fn module(&self) -> &YdModule<F> {
        self.algebra.module()
    }

    pub fn coideal(&self, name: &str) -> Option<&Arc<CoidealSubalgebra<F>>> {
        self.coideals.iter().find(|(n, _)| n == name).map(|(_, k)| k)
    }
}

fn convert<F: Field>(r: &Rational, pos: Pos) -> Result<F> {
    r.to_field::<F>().ok_or_else(|| {
        Error::Field(format!("{r} has no image in {}", F::field_name())).at(pos)
    })
}

fn convert_element<F: Field>(x: &FreeElement<Rational>, pos: Pos) -> Result<FreeElement<F>> {
    let mut out = FreeElement::zero();
    for (w, c) in x.terms() {
        out.add_term(w.clone(), convert(c, pos)?);
    }
    Ok(out)
}

/// Builds the declared objects, checking in order: group laws, the
/// Yetter-Drinfeld condition, relation homogeneity, the quotient and the
/// coideal subalgebras. `max_degree` overrides the declared truncation.
pub fn elaborate<F: Field>(doc: &SpecDocument, max_degree: Option<usize>) -> Result<Session<F>> {
    let origin = Pos { line: 1, col: 1 };
    let gdecl = doc.group.as_ref().ok_or(Error::Name {
        pos: origin,
        name: "group".into(),
    })?;
    let gpos = gdecl.span.0;
    let group = FiniteGroup::from_permutation_generators(gdecl.degree, &gdecl.generators)
        .map_err(|e| e.at(gpos))?;
    group.check_laws().map_err(|e| e.at(gpos))?;

    let mdecl = doc.module.as_ref().ok_or(Error::Name {
        pos: gpos,
        name: "module".into(),
    })?;
    let mpos = mdecl.span.0;
    let dim = mdecl.basis.len();
    let labels: Vec<String> = mdecl.basis.iter().map(|b| b.label.clone()).collect();
    let degrees = mdecl
        .basis
        .iter()
        .map(|b| {
            group.index_of(&b.degree).ok_or_else(|| {
                Error::InvalidModule(format!("degree {} of {} is not in the group", b.degree, b.label))
                    .at(b.span.0)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gens = group.generators().unwrap_or(&[]).to_vec();
    let mut matrices = Vec::with_capacity(gens.len());
    for g in &gens {
        let decl = mdecl.actions.iter().find(|a| a.generator == *g);
        let m = match decl.map(|a| &a.images) {
            None if dim == 0 => SparseMatrix::zero(0, 0),
            None => {
                return Err(Error::Arity {
                    pos: mpos,
                    detail: format!("no action given for generator {g}"),
                })
            }
            Some(ActionImages::Signed(images)) => {
                let mut rows = vec![SparseVec::zero(); dim];
                for &(src, neg, dst) in images {
                    let c = if neg { F::one().neg() } else { F::one() };
                    rows[src] = SparseVec::single(dst, c);
                }
                SparseMatrix::from_rows(dim, rows)
            }
            Some(ActionImages::Matrix(rows)) => {
                let pos = decl.expect("matched").span.0;
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| convert::<F>(c, pos))
                            .collect::<Result<Vec<F>>>()
                            .map(|d| SparseVec::from_dense(&d))
                    })
                    .collect::<Result<Vec<_>>>()?;
                SparseMatrix::from_rows(dim, rows)
            }
        };
        matrices.push(m);
    }
    let module = YdModule::from_generator_action(group.clone(), labels, degrees, matrices)
        .map_err(|e| e.at(mpos))?;
    if let Some(w) = module.check_yd() {
        let detail = match w {
            YdWitness::NotHomomorphism { g, h } => {
                format!("the generator action does not define a group action ({g}, {h})")
            }
            YdWitness::Grading { g, basis, component } => {
                format!("{g} . {basis} has a component {component} of the wrong degree")
            }
        };
        return Err(Error::InvalidModule(detail).at(mpos));
    }

    let adecl = doc.algebra.as_ref().ok_or(Error::Name {
        pos: mpos,
        name: "algebra".into(),
    })?;
    let mut relations = Vec::with_capacity(adecl.relations.len());
    for r in &adecl.relations {
        let pos = r.span.0;
        let x = convert_element::<F>(&r.expr, pos)?;
        if !x.is_zero() {
            let text = x.render(module.labels());
            match x.degree() {
                Some(n) if n > 0 => {}
                _ => {
                    return Err(Error::NotHomogeneous(format!(
                        "relation {text} is not homogeneous of positive degree"
                    ))
                    .at(pos))
                }
            }
            if x.g_degree(&module).is_none() {
                return Err(Error::NotHomogeneous(format!("relation {text} is not G-homogeneous")).at(pos));
            }
        }
        relations.push(x);
    }
    let truncate = max_degree.unwrap_or(adecl.truncate);
    let algebra = GradedAlgebra::build_quotient(module, relations, truncate)
        .map_err(|e| e.at(adecl.span.0))?;
    let algebra = Arc::new(algebra);

    let mut coideals = Vec::with_capacity(doc.coideals.len());
    for c in &doc.coideals {
        let gens = c
            .generators
            .iter()
            .map(|g| convert_element::<F>(&g.expr, g.span.0))
            .collect::<Result<Vec<_>>>()?;
        let k = CoidealSubalgebra::generate(algebra.clone(), &gens).map_err(|e| e.at(c.span.0))?;
        coideals.push((c.name.clone(), Arc::new(k)));
    }
    Ok(Session {
        group,
        algebra,
        coideals,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{fk, parse};
    use super::*;

    #[test]
    fn fk_hilbert_series() {
        let s = elaborate::<Rational>(&fk(2), None).unwrap();
        assert_eq!(s.algebra.hilbert(), vec![1, 1, 0, 0, 0]);
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        assert_eq!(s.algebra.hilbert(), vec![1, 3, 4, 3, 1, 0, 0]);
        assert_eq!(s.coideals.len(), 3);
    }

    #[test]
    fn inhomogeneous_relation_is_located() {
        let src = "group S2 permutation degree 2 generators (1 2);\n\
                   module V { basis x deg (1 2); basis y deg (); action (1 2): x -> -x, y -> y; }\n\
                   algebra A = T(V) / relations {\n  x*x;\n  x*y + y;\n} truncate 3;\n";
        let doc = parse(src).unwrap();
        match elaborate::<Rational>(&doc, None) {
            Err(Error::Located { pos, source }) => {
                assert_eq!(pos, Pos { line: 5, col: 3 });
                assert!(matches!(*source, Error::NotHomogeneous(_)));
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn non_g_homogeneous_relation() {
        let src = "group S2 permutation degree 2 generators (1 2);\n\
                   module V { basis x deg (1 2); basis y deg (); action (1 2): x -> -x, y -> y; }\n\
                   algebra A = T(V) / relations { x + y; } truncate 3;\n";
        let doc = parse(src).unwrap();
        let err = elaborate::<Rational>(&doc, None).unwrap_err();
        assert!(err.is_input_error());
        assert!(err.to_string().contains("G-homogeneous"), "{err}");
    }
}
