//! Truncated local rings: Q[x1..xk] / (m^{N+1} + monomial relations).
//!
//! Every base ring the deformation calculus needs is of this shape (dual
//! numbers, one-variable jets, multivariable truncations), so elements are
//! plain polynomials and reduction just drops dead monomials.

use num::traits::Zero;

use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArtinRing {
    ring: PolyRing,
    /// m^{order+1} = 0: monomials of total degree > order vanish.
    order: usize,
    /// Extra monomial relations; any multiple of one of these vanishes.
    relations: Vec<Monomial>,
}

impl ArtinRing {
    pub fn new(vars: Vec<String>, order: usize, relations: Vec<Vec<u32>>) -> Result<Self> {
        let ring = PolyRing::new(vars)?;
        let mut rels = Vec::new();
        for r in relations {
            if r.len() != ring.nvars() {
                return Err(Error::Dimension("relation exponent length".into()));
            }
            let m = Monomial(r);
            if m.degree() == 0 {
                return Err(Error::Invalid("a degree-0 relation would kill the unit".into()));
            }
            rels.push(m);
        }
        Ok(ArtinRing { ring, order, relations: rels })
    }

    /// Q[eps]/eps^2.
    pub fn dual_numbers() -> ArtinRing {
        ArtinRing::new(vec!["eps".into()], 1, vec![]).expect("valid")
    }

    /// Q[t]/t^{order+1}.
    pub fn jet_line(order: usize) -> ArtinRing {
        ArtinRing::new(vec!["t".into()], order, vec![]).expect("valid")
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn monomial_survives(&self, m: &Monomial) -> bool {
        m.degree() <= self.order && !self.relations.iter().any(|r| r.divides(m))
    }

    /// Canonical form: dead monomials dropped.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.ring.nvars());
        for (m, c) in p.terms() {
            if self.monomial_survives(m) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b))
    }

    /// Element of the maximal ideal: zero constant term once reduced.
    pub fn in_max_ideal(&self, p: &Polynomial) -> bool {
        self.reduce(p)
            .coefficient(&Monomial::constant(self.ring.nvars()))
            .is_zero()
    }

    /// Surviving monomials, graded-lex ascending; their count is the
    /// Q-dimension of the ring.
    pub fn monomial_basis(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            out.extend(
                self.ring
                    .monomials_of_degree(d)
                    .into_iter()
                    .filter(|m| self.monomial_survives(m)),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn dual_numbers_square_to_zero() {
        let a = ArtinRing::dual_numbers();
        let eps = Polynomial::var(1, 0);
        assert!(a.mul(&eps, &eps).is_zero());
        assert_eq!(a.monomial_basis().len(), 2);
        assert!(a.in_max_ideal(&eps));
        assert!(!a.in_max_ideal(&Polynomial::constant(1, rat(1))));
    }

    #[test]
    fn jet_line_truncates_at_order() {
        let a = ArtinRing::jet_line(2);
        let t = Polynomial::var(1, 0);
        let t2 = a.mul(&t, &t);
        assert!(!t2.is_zero());
        assert!(a.mul(&t2, &t).is_zero());
    }

    #[test]
    fn monomial_relations_kill_their_multiples() {
        // Q[x,y]/(m^4, x^2): x^2 and x^2*y die, x*y^2 survives
        let a = ArtinRing::new(vec!["x".into(), "y".into()], 3, vec![vec![2, 0]]).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert!(a.mul(&x, &x).is_zero());
        assert!(a.reduce(&x.mul(&x).mul(&y)).is_zero());
        assert!(!a.reduce(&x.mul(&y).mul(&y)).is_zero());
        // 1, x, y, xy, y^2, xy^2, y^3
        assert_eq!(a.monomial_basis().len(), 7);
    }
}
