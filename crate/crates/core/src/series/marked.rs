//! Multigraph family generating functions carrying a degree mark on each
//! vertex. A family is a finite list of monomial terms; substituting the
//! degree-set polynomial's derivatives for the marks produces an ordinary
//! series in (z, w, x).

use super::{TruncSeries, Var, XPoly};
use crate::graph::patterns::PatternShape;
use crate::graph::LabeledMultigraph;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// One monomial of a degree-marked family generating function:
/// coeff * z^vertices * w^edges * prod_v delta_{deg(v)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTerm {
    pub coeff: BigRational,
    pub vertices: u32,
    pub edges: u64,
    /// Required vertex degrees (one entry per vertex, sorted).
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMarkedGF {
    terms: Vec<MarkedTerm>,
}

impl DegreeMarkedGF {
    pub fn new(terms: Vec<MarkedTerm>) -> Self {
        DegreeMarkedGF { terms }
    }

    /// Family of the copies of one multigraph pattern: coefficient 1/aut.
    pub fn from_pattern(pattern: &LabeledMultigraph) -> Self {
        let shape = PatternShape::of_multigraph(pattern);
        DegreeMarkedGF {
            terms: vec![MarkedTerm {
                coeff: BigRational::new(
                    BigInt::one(),
                    BigInt::from(shape.automorphisms),
                ),
                vertices: shape.vertices,
                edges: shape.edges,
                degrees: shape.degrees,
            }],
        }
    }

    /// Union of several patterns (assumed pairwise non-isomorphic).
    pub fn from_patterns(patterns: &[LabeledMultigraph]) -> Self {
        let mut terms = Vec::new();
        for p in patterns {
            terms.extend(Self::from_pattern(p).terms);
        }
        DegreeMarkedGF { terms }
    }

    /// All multigraphs with a single edge: the 2-vertex edge and the loop.
    /// Every edge of every multigraph is a copy of exactly one of the two.
    pub fn one_edge_family() -> Self {
        let edge = LabeledMultigraph::new(2, vec![(1, 2)]).expect("static pattern");
        let lp = LabeledMultigraph::new(1, vec![(1, 1)]).expect("static pattern");
        Self::from_patterns(&[edge, lp])
    }

    pub fn terms(&self) -> &[MarkedTerm] {
        &self.terms
    }

    /// Substitute delta_s <- the s-th derivative of `delta`, yielding a
    /// series in (z, w, x) truncated at x^trunc_x. Derivative orders past
    /// the polynomial degree contribute the zero polynomial, killing the
    /// whole term (a pattern vertex demands a degree the set cannot supply).
    pub fn substitute_degree_marks(&self, delta: &XPoly, trunc_x: u16) -> TruncSeries {
        let mut result = TruncSeries::zero()
            .with_trunc(Var::X, trunc_x);
        for term in &self.terms {
            let mut xpart = XPoly::one();
            for &d in &term.degrees {
                let deriv = delta.nth_derivative(d);
                if deriv.is_zero() {
                    xpart = XPoly::zero();
                    break;
                }
                xpart = xpart.mul_trunc(&deriv, trunc_x as usize);
            }
            if xpart.is_zero() {
                continue;
            }
            for (i, c) in xpart.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mono = TruncSeries::monomial(
                    &term.coeff * c,
                    [term.vertices as u16, term.edges as u16, 0, i as u16],
                );
                result = result.add(&mono);
            }
        }
        result.with_trunc(Var::X, trunc_x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::patterns::{pattern_multigraph, PatternName};
    use crate::series::rational;

    #[test]
    fn one_degree_two_vertex() {
        // delta_2 w z under Delta = x^2/2: second derivative is 1
        let g = DegreeMarkedGF::new(vec![MarkedTerm {
            coeff: rational(1, 1),
            vertices: 1,
            edges: 1,
            degrees: vec![2],
        }]);
        let delta = XPoly::monomial(rational(1, 2), 2);
        let s = g.substitute_degree_marks(&delta, 4);
        assert_eq!(s.extract([1, 1, 0, 0]).unwrap(), rational(1, 1));
        assert_eq!(s.terms().count(), 1);
    }

    #[test]
    fn degree_one_slot_with_linear_delta() {
        let g = DegreeMarkedGF::new(vec![MarkedTerm {
            coeff: rational(1, 1),
            vertices: 1,
            edges: 0,
            degrees: vec![1],
        }]);
        let delta = XPoly::monomial(rational(1, 1), 1); // Delta = x
        let s = g.substitute_degree_marks(&delta, 4);
        assert_eq!(s.extract([1, 0, 0, 0]).unwrap(), rational(1, 1));
    }

    #[test]
    fn excessive_derivative_vanishes() {
        let g = DegreeMarkedGF::new(vec![MarkedTerm {
            coeff: rational(1, 1),
            vertices: 1,
            edges: 1,
            degrees: vec![5],
        }]);
        let delta = XPoly::monomial(rational(1, 2), 2);
        assert!(g.substitute_degree_marks(&delta, 4).is_zero());
    }

    #[test]
    fn cycle_family_term() {
        // triangle as a multigraph: coefficient 1/6, three degree-2 marks
        let c3 = pattern_multigraph(PatternName::C3).unwrap();
        let g = DegreeMarkedGF::from_pattern(&c3);
        assert_eq!(g.terms().len(), 1);
        let t = &g.terms()[0];
        assert_eq!(t.coeff, rational(1, 6));
        assert_eq!((t.vertices, t.edges), (3, 3));
        assert_eq!(t.degrees, vec![2, 2, 2]);

        // under Delta = x + x^3/6 each mark becomes Delta'' = x
        let delta = XPoly::monomial(rational(1, 1), 1).add(&XPoly::monomial(rational(1, 6), 3));
        let s = g.substitute_degree_marks(&delta, 6);
        assert_eq!(s.extract([3, 3, 0, 3]).unwrap(), rational(1, 6));
    }

    #[test]
    fn one_edge_family_terms() {
        let fam = DegreeMarkedGF::one_edge_family();
        assert_eq!(fam.terms().len(), 2);
        // 2-vertex edge: 1/2 z^2 w delta_1^2; loop: 1/2 z w delta_2
        assert_eq!(fam.terms()[0].coeff, rational(1, 2));
        assert_eq!(fam.terms()[0].degrees, vec![1, 1]);
        assert_eq!(fam.terms()[1].coeff, rational(1, 2));
        assert_eq!(fam.terms()[1].degrees, vec![2]);
    }
}
