//! The product models: exterior-algebra tensor DGLAs with zero differential
//! controlling deformations of torus x Y products, their reduced quotients,
//! and the end-to-end reports that tie deformation equations to commuting
//! varieties and to the surface scenario checks.

use serde_json::{json, Value};

use crate::commvar::{
    commuting_ideal, determinantal_match_sl2, irreducibility_bound, require_plain_lie, BoundReport,
};
use crate::costability::{surface_scenario_check, ScenarioCheck};
use crate::defo::{def_equations, primary_obstruction};
use crate::dgla::{
    abelian, build_sl, direct_sum, quotient_by_ideal, tensor_with_algebra, Dgla,
};
use crate::graded::{exterior_truncated, sv_unit, SparseVec};
use crate::morphism::DglaMorphism;
use crate::poly::{Monomial, PolyIdeal, Polynomial};
use crate::rational::{rat, rat_frac, Rat};
use crate::{Error, Result};

/// Lambda*(q) tensor (torus directions + g), zero differential. Degree 1
/// splits as a q x q torus block plus q copies of g.
pub fn product_model(q: usize, g: &Dgla) -> Result<Dgla> {
    product_model_truncated(q, g, q)
}

/// Same model with the exterior factor cut at the given degree. Degrees
/// above 2 never enter the deformation equations or the quadratic
/// obstruction, so cap = 2 is enough for every report and keeps the basis
/// polynomial in q instead of exponential.
pub fn product_model_truncated(q: usize, g: &Dgla, cap: usize) -> Result<Dgla> {
    if q == 0 {
        return Err(Error::Invalid("need at least one torus direction".into()));
    }
    require_plain_lie(g)?;
    let sum = direct_sum(&abelian(q), g);
    Ok(tensor_with_algebra(&sum, &exterior_truncated(q, cap.min(q))))
}

pub struct QuotientModel {
    pub total: Dgla,
    /// The total model with the degree-1 torus block quotiented away.
    pub reduced: Dgla,
    pub projection: DglaMorphism,
}

/// Quotient of the product model for sl(n+1) by the degree-1 torus block,
/// which brackets to zero with everything and is therefore an ideal.
pub fn quotient_model(q: usize, n: usize) -> Result<QuotientModel> {
    if q == 0 || n == 0 {
        return Err(Error::Invalid("need q >= 1 and n >= 1".into()));
    }
    let g = build_sl(n + 1)?;
    let total = product_model(q, &g)?;
    let exterior_len = total.dim() / (q + g.dim());
    // index of t_l (x) z_k is l * exterior_len + k: singleton subsets sit at
    // positions 1..=q of the exterior basis
    let ideal: Vec<SparseVec> = (0..q)
        .flat_map(|l| (1..=q).map(move |k| sv_unit(l * exterior_len + k)))
        .collect();
    let quotient = quotient_by_ideal(&total, &ideal)?;
    let projection = DglaMorphism::new(total.clone(), quotient.dgla.clone(), quotient.projection)?;
    Ok(QuotientModel { total, reduced: quotient.dgla, projection })
}

fn term_list(p: &Polynomial) -> Vec<(Monomial, Rat)> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn exact_same_set(a: &[Polynomial], b: &[Polynomial]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ka: Vec<_> = a.iter().map(term_list).collect();
    let mut kb: Vec<_> = b.iter().map(term_list).collect();
    ka.sort();
    kb.sort();
    ka == kb
}

/// Deformation equations of the product model for sl(n+1), checked against
/// the commuting variety: the q^2 torus variables appear in no equation, and
/// the rest is the commuting ideal on the nose.
pub struct DeformationSpaceReport {
    pub q: usize,
    /// Projective dimension; the algebra is sl(n+1) and reports say so
    /// explicitly to keep the rank visible.
    pub n: usize,
    pub sl_rank: usize,
    /// Number of variables no equation touches.
    pub torus_block: usize,
    pub split_verified: bool,
    pub smooth: bool,
    pub singular: bool,
    /// The closed-form reducibility threshold q >= 3 + 8/(n-2) for n >= 3.
    pub reducible: bool,
    pub bound: BoundReport,
    /// The sl-block equations in slot-major commuting-variety coordinates.
    pub equations: PolyIdeal,
}

impl DeformationSpaceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "sl_rank": self.sl_rank,
            "torus_block": self.torus_block,
            "split_verified": self.split_verified,
            "smooth": self.smooth,
            "singular": self.singular,
            "reducible": self.reducible,
            "bound": self.bound.to_json(),
            "generator_count": self.equations.generators.len(),
        })
    }
}

pub fn deformation_space_report(q: usize, n: usize) -> Result<DeformationSpaceReport> {
    if q == 0 || n == 0 {
        return Err(Error::Invalid("need q >= 1 and n >= 1".into()));
    }
    let g = build_sl(n + 1)?;
    let s = g.dim();
    let model = product_model_truncated(q, &g, 2)?;
    let ideal = def_equations(&model)?;
    let nv = ideal.ring.nvars();
    // degree-1 variable p corresponds to algebra element p / q tensor z_{p % q + 1}
    let torus_used = ideal
        .generators
        .iter()
        .any(|gen| gen.variables_used().iter().any(|&v| v / q < q));
    if torus_used {
        return Err(Error::Invalid(
            "model equations unexpectedly touch the torus block".into(),
        ));
    }
    let perm: Vec<usize> = (0..nv)
        .map(|p| {
            let (l, k) = (p / q, p % q);
            if l < q { 0 } else { k * s + (l - q) }
        })
        .collect();
    let renamed: Vec<Polynomial> =
        ideal.generators.iter().map(|p| p.rename(&perm, q * s)).collect();
    let commuting = commuting_ideal(q, &g)?;
    let split_verified = exact_same_set(&renamed, &commuting.ideal.generators);
    let smooth = renamed.is_empty();
    let equations = PolyIdeal::new(commuting.ideal.ring.clone(), renamed)?;
    Ok(DeformationSpaceReport {
        q,
        n,
        sl_rank: n + 1,
        torus_block: q * q,
        split_verified,
        smooth,
        singular: !smooth,
        reducible: n >= 3 && rat(q as i64) >= rat(3) + rat_frac(8, n as i64 - 2),
        bound: irreducibility_bound(q, n + 1)?,
        equations,
    })
}

/// Scenario check plus model-level evidence: the quadratic obstruction of
/// the product model for sl(n) and the irreducibility bound, attached only
/// when every hypothesis passes.
pub struct ScenarioReport {
    pub check: ScenarioCheck,
    pub obstruction_nonzero: Option<bool>,
    pub obstruction_components: Option<usize>,
    pub bound: Option<BoundReport>,
    pub determinantal_tag: Option<String>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check.to_json(),
            "obstruction_nonzero": self.obstruction_nonzero,
            "obstruction_components": self.obstruction_components,
            "bound": self.bound.as_ref().map(|b| b.to_json()),
            "determinantal_tag": self.determinantal_tag,
        })
    }
}

pub fn scenario_report(q: usize, n: usize, d: i64, m: Option<usize>) -> Result<ScenarioReport> {
    let check = surface_scenario_check(q, n, d, m, None)?;
    if !check.passed {
        return Ok(ScenarioReport {
            check,
            obstruction_nonzero: None,
            obstruction_components: None,
            bound: None,
            determinantal_tag: None,
        });
    }
    let g = build_sl(n)?;
    let model = product_model_truncated(q, &g, 2)?;
    let ob = primary_obstruction(&model);
    let determinantal_tag = if q == 2 && n == 2 {
        determinantal_match_sl2()?.verified.then(|| {
            "C(2,sl(2)) = cone over the Segre embedding of P1 x P2 (rank <= 1 2x3 matrices)"
                .to_string()
        })
    } else {
        None
    };
    Ok(ScenarioReport {
        check,
        obstruction_nonzero: Some(!ob.is_zero()),
        obstruction_components: Some(ob.components.iter().filter(|c| !c.is_zero()).count()),
        bound: Some(irreducibility_bound(q, n)?),
        determinantal_tag,
    })
}
