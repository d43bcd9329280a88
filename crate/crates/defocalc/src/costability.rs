//! Costability checker for complete intersections of ample divisors in
//! X = torus_q x P^{n-1}, and the combined hypothesis checker for the
//! obstructed-surface construction built on it.
//!
//! All divisors share one positive-definite hermitian unit class; a divisor
//! is (character, degree) and a sum of divisors adds characters, degrees,
//! and hermitian coefficients. The checker sweeps every nonempty subset A of
//! the chosen divisors and asks the two vanishing families
//!   (1) H^{|A|+1}(T_X(-D_A)) = 0,
//!   (2) H^{|A|}(O_X(D_i - D_A)) = 0 for A not in {empty, {i}},
//! reporting each violation with its subset, degree, and dimension.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohom::{
    definite_multiple, product_line_cohomology, product_tangent_twist_cohomology, AhBundle,
    Character,
};
use crate::rational::{rat, rat_frac};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub character: Character,
    pub degree: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CostabilityWitness {
    /// 1 for the tangent conditions, 2 for the difference-bundle conditions.
    pub condition: u8,
    /// 1-based indices of the subset A.
    pub subset: Vec<usize>,
    /// The divisor index i of a condition-2 witness.
    pub index: Option<usize>,
    /// Cohomological degree of the surviving group.
    pub degree: usize,
    pub dimension: u64,
    /// Rendered name, e.g. "H2(T_X(-D_1))".
    pub group: String,
}

impl CostabilityWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "condition": self.condition,
            "subset": self.subset,
            "index": self.index,
            "degree": self.degree,
            "dimension": self.dimension,
            "group": self.group,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CostabilityReport {
    pub q: usize,
    pub n: usize,
    pub divisors: usize,
    pub passed: bool,
    pub witnesses: Vec<CostabilityWitness>,
}

impl CostabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "divisors": self.divisors,
            "passed": self.passed,
            "witnesses": self.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn subset_label(subset: &[usize]) -> String {
    if subset.len() == 1 {
        format!("D_{}", subset[0])
    } else {
        let parts: Vec<String> = subset.iter().map(|i| format!("D_{i}")).collect();
        format!("({})", parts.join("+"))
    }
}

/// Nonempty subsets of 1..=m, ordered by size then lexicographically.
fn subsets(m: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u64..(1 << m))
        .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn character_sum(divisors: &[DivisorSpec], subset: &[usize], negate: bool) -> Character {
    let width = divisors.iter().map(|d| d.character.len()).max().unwrap_or(0);
    let mut out = vec![0i64; width];
    for &i in subset {
        for (k, c) in divisors[i - 1].character.iter().enumerate() {
            out[k] += if negate { -c } else { *c };
        }
    }
    out
}

fn character_add(a: &Character, b: &Character) -> Character {
    let width = a.len().max(b.len());
    (0..width)
        .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
        .collect()
}

/// Equality in the lattice: trailing zeros do not matter.
fn characters_equal(a: &Character, b: &Character) -> bool {
    let width = a.len().max(b.len());
    (0..width).all(|k| a.get(k).copied().unwrap_or(0) == b.get(k).copied().unwrap_or(0))
}

/// X = torus_q x P^{n-1}; m divisors must fit the window 1 <= m <= q+n-3 so
/// that the complete intersection is a surface or higher with torus excess.
pub fn costability_check(q: usize, n: usize, divisors: &[DivisorSpec]) -> Result<CostabilityReport> {
    if q < 1 || n < 2 {
        return Err(Error::Invalid("need q >= 1 and n >= 2".into()));
    }
    let max = (q + n).saturating_sub(3);
    let m = divisors.len();
    if m < 1 || m > max {
        return Err(Error::Window { m, max });
    }
    for d in divisors {
        if d.degree < 1 {
            return Err(Error::Invalid("divisor degrees must be at least 1".into()));
        }
    }
    let np = n - 1;
    let mut witnesses = Vec::new();
    let all_subsets = subsets(m);
    for subset in &all_subsets {
        let a = subset.len();
        let character = character_sum(divisors, subset, true);
        let degree: i64 = -subset.iter().map(|&i| divisors[i - 1].degree).sum::<i64>();
        let bundle = AhBundle { character, hermitian: definite_multiple(q, -(a as i64)) };
        let groups = product_tangent_twist_cohomology(q, np, &bundle, degree)?;
        let dim = groups[a + 1];
        if dim != 0 {
            witnesses.push(CostabilityWitness {
                condition: 1,
                subset: subset.clone(),
                index: None,
                degree: a + 1,
                dimension: dim,
                group: format!("H{}(T_X(-{}))", a + 1, subset_label(subset)),
            });
        }
    }
    for i in 1..=m {
        for subset in &all_subsets {
            if subset.len() == 1 && subset[0] == i {
                continue;
            }
            let a = subset.len();
            let character =
                character_add(&divisors[i - 1].character, &character_sum(divisors, subset, true));
            let degree =
                divisors[i - 1].degree - subset.iter().map(|&j| divisors[j - 1].degree).sum::<i64>();
            let coefficient = 1 - a as i64;
            let bundle = AhBundle { character, hermitian: definite_multiple(q, coefficient) };
            let groups = product_line_cohomology(q, np, &bundle, degree)?;
            let dim = groups[a];
            if dim != 0 {
                witnesses.push(CostabilityWitness {
                    condition: 2,
                    subset: subset.clone(),
                    index: Some(i),
                    degree: a,
                    dimension: dim,
                    group: format!("H{}(O_X(D_{}-{}))", a, i, subset_label(subset)),
                });
            }
        }
    }
    Ok(CostabilityReport { q, n, divisors: m, passed: witnesses.is_empty(), witnesses })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisFlags {
    /// d >= 2.
    pub degree_at_least_two: bool,
    /// d * m >= n + 1.
    pub degree_window: bool,
    pub characters_distinct: bool,
    /// q, n, d >= 2 and q + n + d >= 7: the hypersurface-construction range,
    /// tracked separately because it neither implies nor follows from the
    /// degree window at m = 1.
    pub hypersurface_range: bool,
    /// H^1 of each divisor bundle vanishes, so sections extend sideways.
    pub h1_extension: bool,
    /// 1 <= m <= q + n - 3.
    pub m_in_window: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.degree_at_least_two
            && self.degree_window
            && self.characters_distinct
            && self.h1_extension
            && self.m_in_window
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree_at_least_two": self.degree_at_least_two,
            "degree_window": self.degree_window,
            "characters_distinct": self.characters_distinct,
            "hypersurface_range": self.hypersurface_range,
            "h1_extension": self.h1_extension,
            "m_in_window": self.m_in_window,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScenarioCheck {
    pub q: usize,
    pub n: usize,
    pub d: i64,
    pub m: usize,
    pub flags: HypothesisFlags,
    pub costability: Option<CostabilityReport>,
    pub passed: bool,
    /// Tag like "C(2,sl(2))", present only when every check passes.
    pub singularity_type: Option<String>,
    pub obstructed: Option<bool>,
    pub reducible: Option<bool>,
}

impl ScenarioCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "flags": self.flags.to_json(),
            "costability": self.costability.as_ref().map(|c| c.to_json()),
            "passed": self.passed,
            "singularity_type": self.singularity_type,
            "obstructed": self.obstructed,
            "reducible": self.reducible,
        })
    }
}

/// Full hypothesis check for the obstructed-surface construction on
/// torus_q x P^{n-1}: m divisors of degree d with distinct characters, cut
/// down to a surface-with-torus-directions, must satisfy the arithmetic
/// window and the costability vanishing. Flag failures are data, not errors.
pub fn surface_scenario_check(
    q: usize,
    n: usize,
    d: i64,
    m: Option<usize>,
    characters: Option<Vec<Character>>,
) -> Result<ScenarioCheck> {
    if q < 1 || n < 2 {
        return Err(Error::Invalid("need q >= 1 and n >= 2".into()));
    }
    if d < 1 {
        return Err(Error::Invalid("divisor degree must be at least 1".into()));
    }
    let window_max = (q + n).saturating_sub(3);
    let m = m.unwrap_or(window_max.max(1));
    let characters: Vec<Character> = match characters {
        Some(cs) => {
            if cs.len() != m {
                return Err(Error::Invalid(format!(
                    "got {} characters for {m} divisors",
                    cs.len()
                )));
            }
            cs
        }
        None => (0..m)
            .map(|i| {
                let mut c = vec![0i64; m];
                c[i] = 1;
                c
            })
            .collect(),
    };
    let mut distinct = true;
    for i in 0..characters.len() {
        for j in (i + 1)..characters.len() {
            if characters_equal(&characters[i], &characters[j]) {
                distinct = false;
            }
        }
    }
    let m_in_window = (1..=window_max).contains(&m);
    let divisors: Vec<DivisorSpec> = characters
        .iter()
        .map(|c| DivisorSpec { character: c.clone(), degree: d })
        .collect();
    let mut h1_extension = true;
    for div in &divisors {
        let bundle =
            AhBundle { character: div.character.clone(), hermitian: definite_multiple(q, 1) };
        let groups = product_line_cohomology(q, n - 1, &bundle, div.degree)?;
        if groups[1] != 0 {
            h1_extension = false;
        }
    }
    let flags = HypothesisFlags {
        degree_at_least_two: d >= 2,
        degree_window: d * m as i64 >= n as i64 + 1,
        characters_distinct: distinct,
        hypersurface_range: q >= 2 && n >= 2 && d >= 2 && q + n + (d as usize) >= 7,
        h1_extension,
        m_in_window,
    };
    let costability = if m_in_window {
        Some(costability_check(q, n, &divisors)?)
    } else {
        None
    };
    let passed = flags.all() && costability.as_ref().is_some_and(|c| c.passed);
    let (singularity_type, obstructed, reducible) = if passed {
        let red = n >= 4 && rat(q as i64) >= rat(3) + rat_frac(8, n as i64 - 3);
        (
            Some(format!("C({q},sl({n}))")),
            Some(q >= 2 && n >= 2),
            Some(red),
        )
    } else {
        (None, None, None)
    };
    Ok(ScenarioCheck {
        q,
        n,
        d,
        m,
        flags,
        costability,
        passed,
        singularity_type,
        obstructed,
        reducible,
    })
}
