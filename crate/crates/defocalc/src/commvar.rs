//! Commuting varieties C(q, g): the scheme of q-tuples of pairwise commuting
//! elements of a Lie algebra, presented by its quadratic bracket ideal.
//! Includes Hilbert functions, tangent-space dimensions at rational points,
//! the closed-form irreducibility bounds with their proof-level inequality,
//! splitting over direct sums, and the rank-one determinantal description of
//! pairs in sl(2).

use std::collections::BTreeMap;

use num::traits::Zero;
use serde_json::{json, Value};

use crate::dgla::{build_sl, direct_sum, Dgla};
use crate::matrix::{Matrix, Span};
use crate::poly::{PolyIdeal, PolyRing, Polynomial};
use crate::rational::{format_rat, rat, Rat};
use crate::{Error, Result};

pub struct CommutingVariety {
    pub q: usize,
    pub algebra: Dgla,
    /// Quadrics in q * dim(g) variables x{k}_{name}, slot-major.
    pub ideal: PolyIdeal,
}

pub(crate) fn require_plain_lie(g: &Dgla) -> Result<()> {
    if g.basis().elements().iter().any(|e| e.degree != 0) {
        return Err(Error::Invalid(
            "commuting varieties need an algebra concentrated in degree 0".into(),
        ));
    }
    if !g.has_zero_differential() {
        return Err(Error::Invalid(
            "commuting varieties need a zero differential".into(),
        ));
    }
    Ok(())
}

/// One quadric per slot pair k < l and basis coordinate m: the m-th
/// coordinate of [a_k, a_l] for generic tuple entries a_k. Zero quadrics are
/// dropped.
pub fn commuting_ideal(q: usize, g: &Dgla) -> Result<CommutingVariety> {
    if q == 0 {
        return Err(Error::Invalid("need at least one tuple slot".into()));
    }
    require_plain_lie(g)?;
    let n = g.dim();
    let names: Vec<String> = (1..=q)
        .flat_map(|k| {
            g.basis()
                .elements()
                .iter()
                .map(move |e| format!("x{k}_{}", e.name))
        })
        .collect();
    let ring = PolyRing::new(names)?;
    let nv = q * n;
    let mut gens = Vec::new();
    for k in 0..q {
        for l in (k + 1)..q {
            let mut target = vec![Polynomial::zero(nv); n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let lie = g.bracket_of(i, j);
                    if lie.is_empty() {
                        continue;
                    }
                    let mono = Polynomial::var(nv, k * n + i).mul(&Polynomial::var(nv, l * n + j));
                    for (&m, c) in &lie {
                        target[m] = target[m].add(&mono.scale(c));
                    }
                }
            }
            gens.extend(target);
        }
    }
    let ideal = PolyIdeal::new(ring, gens)?;
    Ok(CommutingVariety { q, algebra: g.clone(), ideal })
}

const HILBERT_DEGREE_LIMIT: usize = 6;

/// Quotient-ring dimensions in degrees 0..=max_degree, guarded against
/// accidentally huge monomial enumerations.
pub fn hilbert_function(v: &CommutingVariety, max_degree: usize) -> Result<Vec<u64>> {
    if max_degree > HILBERT_DEGREE_LIMIT {
        return Err(Error::DegreeGuard { requested: max_degree, limit: HILBERT_DEGREE_LIMIT });
    }
    v.ideal.hilbert(max_degree)
}

pub fn hilbert_function_unchecked(v: &CommutingVariety, max_degree: usize) -> Result<Vec<u64>> {
    v.ideal.hilbert(max_degree)
}

/// Zariski tangent dimension at a rational point of the variety: number of
/// variables minus the Jacobian rank of the generators at the point.
pub fn tangent_dimension(v: &CommutingVariety, point: &[Rat]) -> Result<usize> {
    let nv = v.ideal.ring.nvars();
    if point.len() != nv {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, expected {nv}",
            point.len()
        )));
    }
    for (index, g) in v.ideal.generators.iter().enumerate() {
        let value = g.evaluate(point);
        if !value.is_zero() {
            return Err(Error::NotOnVariety { index, value: format_rat(&value) });
        }
    }
    let mut jac = Matrix::zeros(v.ideal.generators.len(), nv);
    for (r, g) in v.ideal.generators.iter().enumerate() {
        for c in 0..nv {
            jac.set(r, c, g.partial(c).evaluate(point));
        }
    }
    Ok(nv - jac.rank())
}

/// Closed-form necessary condition for irreducibility of C(q, sl(n)),
/// together with the dimension-count inequality it is distilled from.
pub struct BoundReport {
    pub q: usize,
    pub n: usize,
    /// "even" or "odd", after the parity of n.
    pub parity: String,
    /// q must stay strictly below this; None means no constraint.
    pub bound: Option<Rat>,
    pub necessary_condition_holds: bool,
    /// r(n-r)(q-1) < n^2 - 1 + (n-1)(q-1) - 2r(n-r) with r = floor(n/2):
    /// the generic fiber dimension stays below the smooth component's.
    pub proof_inequality_holds: bool,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "parity": self.parity,
            "bound": self.bound.as_ref().map(format_rat),
            "necessary_condition_holds": self.necessary_condition_holds,
            "proof_inequality_holds": self.proof_inequality_holds,
        })
    }
}

pub fn irreducibility_bound(q: usize, n: usize) -> Result<BoundReport> {
    if n < 2 || q < 1 {
        return Err(Error::Invalid("need n >= 2 and q >= 1".into()));
    }
    let (qn, nn) = (rat(q as i64), rat(n as i64));
    let parity = if n.is_multiple_of(2) { "even" } else { "odd" };
    let bound = if n.is_multiple_of(2) {
        (n > 2).then(|| {
            let den = (&nn - rat(2)) * (&nn - rat(2));
            rat(3) + (rat(8) * &nn - rat(12)) / den
        })
    } else {
        (n > 3).then(|| rat(3) + rat(8) / (&nn - rat(3)))
    };
    let necessary_condition_holds = bound.as_ref().is_none_or(|b| &qn < b);
    let r = rat((n / 2) as i64);
    let rn = &r * (&nn - &r);
    let lhs = &rn * (&qn - rat(1));
    let rhs = &nn * &nn - rat(1) + (&nn - rat(1)) * (&qn - rat(1)) - rat(2) * &rn;
    Ok(BoundReport {
        q,
        n,
        parity: parity.to_string(),
        bound,
        necessary_condition_holds,
        proof_inequality_holds: lhs < rhs,
    })
}

fn monic(p: &Polynomial) -> Polynomial {
    match p.terms().last() {
        None => p.clone(),
        Some((_, lead)) => p.scale(&(rat(1) / lead)),
    }
}

fn same_generator_set(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let an: Vec<Polynomial> = a.iter().map(monic).collect();
    let bn: Vec<Polynomial> = b.iter().map(monic).collect();
    an.len() == bn.len() && bn.iter().all(|p| an.contains(p))
}

/// The ideal of C(q, g + h) is the union of the two factor ideals in
/// disjoint variable blocks; checked by exact generator-set comparison.
pub fn product_split_check(q: usize, g: &Dgla, h: &Dgla) -> Result<bool> {
    let sum = direct_sum(g, h);
    let whole = commuting_ideal(q, &sum)?;
    let left = commuting_ideal(q, g)?;
    let right = commuting_ideal(q, h)?;
    let (ng, nh) = (g.dim(), h.dim());
    let nv = q * (ng + nh);
    // slot-major renaming into the sum's variable order
    let left_perm: Vec<usize> = (0..q).flat_map(|k| (0..ng).map(move |i| k * (ng + nh) + i)).collect();
    let right_perm: Vec<usize> =
        (0..q).flat_map(|k| (0..nh).map(move |j| k * (ng + nh) + ng + j)).collect();
    let mut expected: Vec<Polynomial> = left
        .ideal
        .generators
        .iter()
        .map(|p| p.rename(&left_perm, nv))
        .collect();
    expected.extend(right.ideal.generators.iter().map(|p| p.rename(&right_perm, nv)));
    Ok(same_generator_set(&whole.ideal.generators, &expected))
}

/// Identification of C(2, sl(2)) with rank-at-most-1 2x3 matrices.
pub struct DeterminantalMatch {
    /// Matrix entry label -> commuting-variety variable name, row-major.
    pub entries: Vec<(String, String)>,
    /// The coordinate change as a matrix over the 6 common variables.
    pub map: Matrix,
    pub verified: bool,
    pub hilbert_commuting: Vec<u64>,
    pub hilbert_minors: Vec<u64>,
    /// Closed-form degree-d dimensions (d+1) * binomial(d+2, 2) of the cone
    /// over the Segre embedding of P^1 x P^2.
    pub hilbert_segre_cone: Vec<u64>,
}

impl DeterminantalMatch {
    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter().map(|(m, v)| json!([m, v])).collect::<Vec<_>>(),
            "verified": self.verified,
            "hilbert_commuting": self.hilbert_commuting,
            "hilbert_minors": self.hilbert_minors,
            "hilbert_segre_cone": self.hilbert_segre_cone,
        })
    }
}

/// Reading the two tuple slots as the rows of a generic 2x3 matrix (in the
/// basis order E12, E21, H1) already matches the bracket quadrics with the
/// 2x2 minors, so the coordinate change is the identity; everything else is
/// verification.
pub fn determinantal_match_sl2() -> Result<DeterminantalMatch> {
    let g = build_sl(2)?;
    let variety = commuting_ideal(2, &g)?;
    let ring = variety.ideal.ring.clone();
    let nv = ring.nvars();
    let entries: Vec<(String, String)> = (0..2)
        .flat_map(|r| (0..3).map(move |c| (format!("m{}{}", r + 1, c + 1), r * 3 + c)))
        .map(|(label, idx)| (label, ring.vars()[idx].clone()))
        .collect();
    let var = |i: usize| Polynomial::var(nv, i);
    let minor = |a: usize, b: usize| {
        // columns a < b of the matrix [vars 0..3 / vars 3..6]
        var(a).mul(&var(3 + b)).sub(&var(b).mul(&var(3 + a)))
    };
    let minors = vec![minor(0, 1), minor(0, 2), minor(1, 2)];
    let minors_ideal = PolyIdeal::new(ring.clone(), minors)?;

    let piece_a = variety.ideal.degree_piece(2)?;
    let piece_b = minors_ideal.degree_piece(2)?;
    let row_of = |p: &Polynomial, monomials: &[crate::poly::Monomial]| -> Vec<Rat> {
        let col: BTreeMap<_, _> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut row = vec![Rat::zero(); monomials.len()];
        for (m, c) in p.terms() {
            row[col[m]] = c.clone();
        }
        row
    };
    let mut span_a = Span::new(piece_a.monomials.len());
    for p in &piece_a.basis {
        span_a.insert(&row_of(p, &piece_a.monomials));
    }
    let mut span_b = Span::new(piece_b.monomials.len());
    for p in &piece_b.basis {
        span_b.insert(&row_of(p, &piece_b.monomials));
    }
    let degree2_equal = span_a.same_span(&span_b);

    let hilbert_commuting = variety.ideal.hilbert(4)?;
    let hilbert_minors = minors_ideal.hilbert(4)?;
    let hilbert_segre_cone: Vec<u64> = (0..=4u64)
        .map(|d| (d + 1) * num::integer::binomial(d + 2, 2))
        .collect();
    let verified = degree2_equal
        && hilbert_commuting == hilbert_minors
        && hilbert_commuting == hilbert_segre_cone;
    Ok(DeterminantalMatch {
        entries,
        map: Matrix::identity(nv),
        verified,
        hilbert_commuting,
        hilbert_minors,
        hilbert_segre_cone,
    })
}
