//! Multivariate polynomials over the rationals.
//!
//! Terms are keyed by dense exponent vectors under graded-lexicographic
//! order: lower total degree first, ties broken lexicographically with
//! earlier variables weighing more. Degrees stay small here (the cost guard
//! on Hilbert functions is 6) while variable counts can reach the hundreds,
//! which is exactly what a dense exponent key is good at.

use std::collections::BTreeMap;

use num::traits::Zero;
use serde_json::{json, Value};

use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// Dense exponent vector. Ordering is graded-lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered variable names for one polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(vars: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(Error::Invalid(format!("duplicate variable {v:?}")));
            }
        }
        Ok(PolyRing { vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// All monomials of total degree d, sorted ascending in graded-lex.
    pub fn monomials_of_degree(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.nvars()];
        fn rec(slot: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if slot + 1 == current.len() {
                current[slot] = remaining;
                out.push(Monomial(current.clone()));
                return;
            }
            for e in 0..=remaining {
                current[slot] = e;
                rec(slot + 1, remaining - e, current, out);
            }
            current[slot] = 0;
        }
        if self.nvars() == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, d as u32, &mut current, &mut out);
        out.sort();
        out
    }

    pub fn monomial_count(&self, d: usize) -> u64 {
        // binomial(nvars + d - 1, d)
        if self.nvars() == 0 {
            return if d == 0 { 1 } else { 0 };
        }
        num::integer::binomial((self.nvars() + d - 1) as u64, d as u64)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>, // no zero coefficients
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*x^{:?}", c, m.0))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::constant(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::from_integer(1.into()));
        p
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Rat)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::Dimension("exponent vector length".into()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * c);
        }
        out
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Some(d) if every term has total degree d; zero counts as homogeneous
    /// of no particular degree (returns None but see `is_zero`).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point length");
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = &v * &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for variable i; images live in a common target
    /// ring with `target_nvars` variables.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&images[i]);
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Re-indexes variables: old variable i becomes new variable perm[i].
    pub fn rename(&self, perm: &[usize], target_nvars: usize) -> Polynomial {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target_nvars];
            for (i, &exp) in m.0.iter().enumerate() {
                e[perm[i]] += exp;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Drops every term of total degree strictly above `maxdeg`.
    pub fn truncate_above(&self, maxdeg: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() <= maxdeg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Indices of variables that actually occur.
    pub fn variables_used(&self) -> std::collections::BTreeSet<usize> {
        let mut used = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used.insert(i);
                }
            }
        }
        used
    }

    /// Human-readable form with ring names, highest terms last.
    pub fn display(&self, ring: &PolyRing) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", ring.vars[i], e)),
                }
            }
            let mono = if factors.is_empty() {
                String::new()
            } else {
                factors.join("*")
            };
            let part = match (format_rat(c).as_str(), mono.is_empty()) {
                (cs, true) => cs.to_string(),
                ("1", false) => mono,
                ("-1", false) => format!("-{mono}"),
                (cs, false) => format!("{cs}*{mono}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// JSON form: list of [exponent-vector, "p/q"] pairs in graded-lex order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!([m.0, format_rat(c)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Polynomial> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial: expected array of terms".into()))?;
        let mut terms = Vec::new();
        for t in arr {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("polynomial term: expected [exponents, coeff]".into()))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| Error::Parse("polynomial term: expected exponent array".into()))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .map(|x| x as u32)
                        .ok_or_else(|| Error::Parse("exponent must be a nonnegative integer".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            let coeff = parse_rat(
                pair[1]
                    .as_str()
                    .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?,
            )?;
            terms.push((Monomial(exps), coeff));
        }
        Polynomial::from_terms(nvars, terms)
    }
}

/// Ideal given by a generator list; zero generators are dropped at
/// construction so generator counts are meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    pub ring: PolyRing,
    pub generators: Vec<Polynomial>,
}

/// One graded piece of a homogeneous ideal.
pub struct DegreePiece {
    pub dimension: usize,
    pub basis: Vec<Polynomial>,
    pub monomials: Vec<Monomial>,
}

impl PolyIdeal {
    pub fn new(ring: PolyRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != ring.nvars() {
                return Err(Error::Dimension("generator in the wrong ring".into()));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(PolyIdeal { ring, generators })
    }

    fn require_homogeneous(&self) -> Result<()> {
        for (index, g) in self.generators.iter().enumerate() {
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous { index });
            }
        }
        Ok(())
    }

    /// Dimension and reduced basis of the degree-d piece, computed as the row
    /// space of {monomial * generator} over the degree-d monomial basis.
    pub fn degree_piece(&self, d: usize) -> Result<DegreePiece> {
        self.require_homogeneous()?;
        let monomials = self.ring.monomials_of_degree(d);
        let col_of: BTreeMap<&Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut span = crate::matrix::Span::new(monomials.len());
        for g in &self.generators {
            let gdeg = g.homogeneous_degree().expect("checked above");
            if gdeg > d {
                continue;
            }
            for m in self.ring.monomials_of_degree(d - gdeg) {
                let prod = g.mul_monomial(&m, &Rat::from_integer(1.into()));
                let mut row = vec![Rat::zero(); monomials.len()];
                for (pm, c) in prod.terms() {
                    row[col_of[pm]] = c.clone();
                }
                span.insert(&row);
            }
        }
        let basis = span
            .rows()
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(self.ring.nvars());
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        p.add_term(monomials[j].clone(), c.clone());
                    }
                }
                p
            })
            .collect();
        Ok(DegreePiece {
            dimension: span.rank(),
            basis,
            monomials,
        })
    }

    /// Quotient-ring dimensions in degrees 0..=dmax.
    pub fn hilbert(&self, dmax: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            let total = self.ring.monomial_count(d);
            let piece = self.degree_piece(d)?;
            out.push(total - piece.dimension as u64);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variables": self.ring.vars(),
            "generators": self.generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        // 1 < y < x < y^2 < xy < x^2 (x earlier variable, ascending grlex)
        let one = Monomial(vec![0, 0]);
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        let y2 = Monomial(vec![0, 2]);
        let mut v = vec![x2.clone(), y.clone(), xy.clone(), one.clone(), y2.clone(), x.clone()];
        v.sort();
        assert_eq!(v, vec![one, y, x, y2, xy, x2]);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(r.nvars(), 0);
        let y = Polynomial::var(r.nvars(), 1);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Monomial(vec![2, 0])), rat(1));
        assert_eq!(p.coefficient(&Monomial(vec![0, 2])), rat(-1));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.evaluate(&[rat(3), rat(2)]), rat(5));
        assert_eq!(p.display(&r), "-y^2 + x^2");
    }

    #[test]
    fn substitution_composes() {
        // p = x*y, substitute x -> u + v, y -> u: (u+v)*u = u^2 + uv
        let p = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
        let u = Polynomial::var(2, 0);
        let v = Polynomial::var(2, 1);
        let q = p.substitute(&[u.add(&v), u], 2);
        assert_eq!(q.coefficient(&Monomial(vec![2, 0])), rat(1));
        assert_eq!(q.coefficient(&Monomial(vec![1, 1])), rat(1));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y + 3x) = 2xy + 3
        let r = 2;
        let x = Polynomial::var(r, 0);
        let y = Polynomial::var(r, 1);
        let p = x.mul(&x).mul(&y).add(&x.scale(&rat(3)));
        let dp = p.partial(0);
        assert_eq!(dp.coefficient(&Monomial(vec![1, 1])), rat(2));
        assert_eq!(dp.coefficient(&Monomial(vec![0, 0])), rat(3));
    }

    #[test]
    fn degree_piece_independent_generators() {
        // (x^2, xy) in 2 vars, degree 2 -> dimension 2
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let ideal = PolyIdeal::new(r, vec![x.mul(&x), x.mul(&y)]).unwrap();
        assert_eq!(ideal.degree_piece(2).unwrap().dimension, 2);
    }

    #[test]
    fn degree_piece_principal() {
        // (x^2) in 1 var, degree 5 -> dimension 1 (x^5)
        let r = ring(&["x"]);
        let x = Polynomial::var(1, 0);
        let ideal = PolyIdeal::new(r, vec![x.mul(&x)]).unwrap();
        let piece = ideal.degree_piece(5).unwrap();
        assert_eq!(piece.dimension, 1);
        assert_eq!(piece.basis[0].coefficient(&Monomial(vec![5])), rat(1));
    }

    #[test]
    fn non_homogeneous_rejected() {
        let r = ring(&["x"]);
        let x = Polynomial::var(1, 0);
        let p = x.mul(&x).add(&x); // x^2 + x
        let ideal = PolyIdeal::new(r, vec![p]).unwrap();
        assert!(matches!(
            ideal.degree_piece(2),
            Err(Error::NotHomogeneous { index: 0 })
        ));
    }

    #[test]
    fn hilbert_of_zero_ideal_counts_monomials() {
        let r = ring(&["x", "y"]);
        let ideal = PolyIdeal::new(r, vec![]).unwrap();
        assert_eq!(ideal.hilbert(2).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn json_round_trip() {
        let mut p = Polynomial::zero(2);
        p.add_term(Monomial(vec![2, 0]), rat_frac(3, 2));
        p.add_term(Monomial(vec![0, 1]), rat(-1));
        let v = p.to_json();
        assert_eq!(v, serde_json::json!([[[0, 1], "-1"], [[2, 0], "3/2"]]));
        assert_eq!(Polynomial::from_json(&v, 2).unwrap(), p);
    }
}
