//! Differential graded Lie algebras over the rationals.
//!
//! Structure constants are stored sparsely and canonically: only the
//! orientation i <= j of each bracket pair is kept, the other is implied by
//! graded antisymmetry [x,y] = -(-1)^{|x||y|}[y,x]. The constructor validates
//! shape (indices, degrees, duplicate pairs); the mathematical identities are
//! checked by [`Dgla::check_axioms`], which reports violations as data so
//! that deliberately broken inputs can be inspected.

use std::collections::BTreeMap;

use num::traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graded::{
    koszul_sign, sv_add_entry, sv_add_scaled, sv_scale, sv_to_dense, sv_unit, BasisElement,
    GcAlgebra, GradedBasis, SparseVec,
};
use crate::matrix::{extend_basis, Matrix, Span};
use crate::rational::{format_rat, parse_rat, rat, Rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dgla {
    basis: GradedBasis,
    /// d[i] = image of the i-th basis element; degree +1.
    d: Vec<SparseVec>,
    /// Canonical bracket table, keys (i, j) with i <= j only.
    bracket: BTreeMap<(usize, usize), SparseVec>,
}

impl Dgla {
    /// Builds a DGLA from one orientation of each bracket pair. Shape errors
    /// (bad indices, wrong degrees, both orientations given) are rejected
    /// here; identity violations are left to `check_axioms`.
    pub fn new(
        basis: GradedBasis,
        differential: Vec<(usize, SparseVec)>,
        brackets: Vec<(usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut d = vec![SparseVec::new(); n];
        for (i, v) in differential {
            if i >= n {
                return Err(Error::Invalid("differential references a missing index".into()));
            }
            for (&k, c) in &v {
                if k >= n {
                    return Err(Error::Invalid("differential value references a missing index".into()));
                }
                if c.is_zero() {
                    return Err(Error::Invalid("differential stores a zero coefficient".into()));
                }
                if basis.degree(k) != basis.degree(i) + 1 {
                    return Err(Error::Invalid(format!(
                        "d({}) has a component of the wrong degree",
                        basis.name(i)
                    )));
                }
            }
            if !d[i].is_empty() {
                return Err(Error::Invalid(format!("d({}) given twice", basis.name(i))));
            }
            d[i] = v;
        }
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, v) in brackets {
            if i >= n || j >= n {
                return Err(Error::Invalid("bracket references a missing index".into()));
            }
            let want = basis.degree(i) + basis.degree(j);
            for (&k, c) in &v {
                if k >= n {
                    return Err(Error::Invalid("bracket value references a missing index".into()));
                }
                if c.is_zero() {
                    return Err(Error::Invalid("bracket stores a zero coefficient".into()));
                }
                if basis.degree(k) != want {
                    return Err(Error::Invalid(format!(
                        "[{}, {}] has a component of the wrong degree",
                        basis.name(i),
                        basis.name(j)
                    )));
                }
            }
            if v.is_empty() {
                continue;
            }
            let (key, value) = if i <= j {
                ((i, j), v)
            } else {
                // [e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j]
                let sign = -koszul_sign(basis.degree(i), basis.degree(j));
                ((j, i), sv_scale(&v, &rat(sign)))
            };
            if table.insert(key, value).is_some() {
                return Err(Error::Invalid(format!(
                    "bracket pair ({}, {}) given twice",
                    basis.name(key.0),
                    basis.name(key.1)
                )));
            }
        }
        Ok(Dgla { basis, d, bracket: table })
    }

    pub fn zero() -> Dgla {
        Dgla {
            basis: GradedBasis::new(vec![]).expect("empty basis"),
            d: vec![],
            bracket: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis.degree(i)
    }

    pub fn d_of(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn d_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            sv_add_scaled(&mut out, &self.d[i], c);
        }
        out
    }

    /// The canonical (i <= j) bracket entries, for re-export and surgery.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.bracket.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn differential_entries(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.d.iter().enumerate().filter(|(_, v)| !v.is_empty())
    }

    fn has_bracket(&self, i: usize, j: usize) -> bool {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.bracket.contains_key(&key)
    }

    /// dst += scale * [e_i, e_j], resolving the stored orientation.
    pub fn bracket_scaled_into(&self, dst: &mut SparseVec, i: usize, j: usize, scale: &Rat) {
        if i <= j {
            if let Some(v) = self.bracket.get(&(i, j)) {
                sv_add_scaled(dst, v, scale);
            }
        } else if let Some(v) = self.bracket.get(&(j, i)) {
            let sign = -koszul_sign(self.degree(i), self.degree(j));
            sv_add_scaled(dst, v, &(scale * rat(sign)));
        }
    }

    pub fn bracket_of(&self, i: usize, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        self.bracket_scaled_into(&mut out, i, j, &rat(1));
        out
    }

    pub fn bracket_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, ca) in a {
            for (&j, cb) in b {
                self.bracket_scaled_into(&mut out, i, j, &(ca * cb));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|v| v.is_empty())
    }

    /// Exhaustive check of the four identities. Antisymmetry holds by
    /// construction for distinct indices (only one orientation is stored), so
    /// the only representable antisymmetry failure is a nonzero self-bracket
    /// in even degree; Jacobi is checked on ordered triples i <= j <= k,
    /// which suffices because the Jacobiator only changes sign under
    /// transpositions once antisymmetry holds.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.dim();
        let mut violations = Vec::new();
        for (&(i, j), v) in &self.bracket {
            if i == j && self.degree(i).is_multiple_of(2) && !v.is_empty() {
                violations.push(AxiomViolation::SelfBracket {
                    element: self.basis.name(i).to_string(),
                });
            }
        }
        for i in 0..n {
            let dd = self.d_vec(&self.d[i]);
            if !dd.is_empty() {
                violations.push(AxiomViolation::DSquared {
                    element: self.basis.name(i).to_string(),
                    defect: self.basis.describe(&dd),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                // d[x,y] - [dx,y] - (-1)^{|x|} [x,dy]
                let mut defect = self.d_vec(&self.bracket_of(i, j));
                let minus_one = rat(-1);
                for (&a, ca) in &self.d[i] {
                    self.bracket_scaled_into(&mut defect, a, j, &(ca * &minus_one));
                }
                let sign = rat(-koszul_sign(self.degree(i), 1));
                for (&b, cb) in &self.d[j] {
                    self.bracket_scaled_into(&mut defect, i, b, &(cb * &sign));
                }
                if !defect.is_empty() {
                    violations.push(AxiomViolation::Leibniz {
                        left: self.basis.name(i).to_string(),
                        right: self.basis.name(j).to_string(),
                        defect: self.basis.describe(&defect),
                    });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    if !self.has_bracket(j, k) && !self.has_bracket(i, j) && !self.has_bracket(i, k)
                    {
                        continue;
                    }
                    // [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
                    let mut defect = SparseVec::new();
                    for (&a, ca) in &self.bracket_of(j, k) {
                        self.bracket_scaled_into(&mut defect, i, a, ca);
                    }
                    let minus_one = rat(-1);
                    for (&a, ca) in &self.bracket_of(i, j) {
                        self.bracket_scaled_into(&mut defect, a, k, &(ca * &minus_one));
                    }
                    let sign = rat(-koszul_sign(self.degree(i), self.degree(j)));
                    for (&a, ca) in &self.bracket_of(i, k) {
                        self.bracket_scaled_into(&mut defect, j, a, &(ca * &sign));
                    }
                    if !defect.is_empty() {
                        violations.push(AxiomViolation::Jacobi {
                            x: self.basis.name(i).to_string(),
                            y: self.basis.name(j).to_string(),
                            z: self.basis.name(k).to_string(),
                            defect: self.basis.describe(&defect),
                        });
                    }
                }
            }
        }
        violations
    }

    /// Matrix of d restricted to the degree-i slice, rows over degree i+1.
    pub fn slice_matrix_of_d(&self, i: usize) -> Matrix {
        let cols = self.basis.indices_of_degree(i);
        let rows = self.basis.indices_of_degree(i + 1);
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(r, &g)| (g, r)).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (c, &g) in cols.iter().enumerate() {
            for (&t, coeff) in &self.d[g] {
                m.set(pos[&t], c, coeff.clone());
            }
        }
        m
    }

    /// Kernel-mod-image at degree i, with representatives and boundaries as
    /// vectors over the full basis. Representatives follow the deterministic
    /// complement rule: kernel vectors (earliest-pivot order) that extend the
    /// boundary span.
    pub fn cohomology(&self, i: usize) -> CohomologySpace {
        let slice = self.basis.indices_of_degree(i);
        let kernel = self.slice_matrix_of_d(i).kernel_basis();
        let boundaries = if i == 0 {
            Vec::new()
        } else {
            self.slice_matrix_of_d(i - 1).column_space_basis()
        };
        let mut bspan = Span::new(slice.len());
        for b in &boundaries {
            bspan.insert(b);
        }
        let reps = extend_basis(&bspan, &kernel);
        let lift = |v: &Vec<Rat>| -> SparseVec {
            let mut out = SparseVec::new();
            for (p, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out.insert(slice[p], c.clone());
                }
            }
            out
        };
        let representatives = reps.iter().map(&lift).collect();
        let boundaries = boundaries.iter().map(&lift).collect();
        CohomologySpace {
            degree: i,
            dimension: reps.len(),
            slice,
            representatives,
            boundaries,
        }
    }

    pub fn to_json(&self) -> Value {
        let dto = DglaDto {
            basis: self
                .basis
                .elements()
                .iter()
                .map(|e| BasisDto { name: e.name.clone(), degree: e.degree })
                .collect(),
            differential: self
                .differential_entries()
                .map(|(i, v)| DifferentialDto {
                    from: self.basis.name(i).to_string(),
                    to: self.terms_dto(v),
                })
                .collect(),
            bracket: self
                .bracket_entries()
                .map(|(i, j, v)| BracketDto {
                    left: self.basis.name(i).to_string(),
                    right: self.basis.name(j).to_string(),
                    value: self.terms_dto(v),
                })
                .collect(),
        };
        serde_json::to_value(dto).expect("serializable")
    }

    fn terms_dto(&self, v: &SparseVec) -> Vec<(String, String)> {
        v.iter()
            .map(|(&k, c)| (self.basis.name(k).to_string(), format_rat(c)))
            .collect()
    }

    pub fn from_json(value: &Value) -> Result<Dgla> {
        let dto: DglaDto = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("DGLA file: {e}")))?;
        let basis = GradedBasis::new(
            dto.basis
                .into_iter()
                .map(|b| BasisElement { name: b.name, degree: b.degree })
                .collect(),
        )?;
        let resolve = |name: &str| -> Result<usize> {
            basis
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown basis name {name:?}")))
        };
        let parse_terms = |terms: &[(String, String)]| -> Result<SparseVec> {
            let mut v = SparseVec::new();
            for (name, coeff) in terms {
                sv_add_entry(&mut v, resolve(name)?, parse_rat(coeff)?);
            }
            Ok(v)
        };
        let mut differential = Vec::new();
        for entry in &dto.differential {
            differential.push((resolve(&entry.from)?, parse_terms(&entry.to)?));
        }
        let mut brackets = Vec::new();
        for entry in &dto.bracket {
            brackets.push((
                resolve(&entry.left)?,
                resolve(&entry.right)?,
                parse_terms(&entry.value)?,
            ));
        }
        Dgla::new(basis, differential, brackets)
    }
}

/// Human-readable linear combination, e.g. "2*h + -1/2*E12".
pub fn format_combo(pairs: &[(String, Rat)]) -> String {
    if pairs.is_empty() {
        return "0".into();
    }
    pairs
        .iter()
        .map(|(name, c)| match format_rat(c).as_str() {
            "1" => name.clone(),
            "-1" => format!("-{name}"),
            cs => format!("{cs}*{name}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// [x, x] != 0 for x of even degree.
    SelfBracket { element: String },
    DSquared { element: String, defect: Vec<(String, Rat)> },
    Leibniz { left: String, right: String, defect: Vec<(String, Rat)> },
    Jacobi { x: String, y: String, z: String, defect: Vec<(String, Rat)> },
}

impl AxiomViolation {
    pub fn to_json(&self) -> Value {
        let (identity, witness, defect) = match self {
            AxiomViolation::SelfBracket { element } => {
                ("antisymmetry", vec![element.clone()], vec![])
            }
            AxiomViolation::DSquared { element, defect } => {
                ("d_squared", vec![element.clone()], defect.clone())
            }
            AxiomViolation::Leibniz { left, right, defect } => {
                ("leibniz", vec![left.clone(), right.clone()], defect.clone())
            }
            AxiomViolation::Jacobi { x, y, z, defect } => (
                "jacobi",
                vec![x.clone(), y.clone(), z.clone()],
                defect.clone(),
            ),
        };
        serde_json::json!({
            "identity": identity,
            "witness": witness,
            "defect": defect.iter().map(|(n, c)| (n.clone(), format_rat(c))).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::SelfBracket { element } => {
                write!(f, "antisymmetry: [{element}, {element}] != 0 in even degree")
            }
            AxiomViolation::DSquared { element, defect } => {
                write!(f, "d^2({element}) = {}", format_combo(defect))
            }
            AxiomViolation::Leibniz { left, right, defect } => {
                write!(f, "Leibniz defect on ({left}, {right}): {}", format_combo(defect))
            }
            AxiomViolation::Jacobi { x, y, z, defect } => {
                write!(f, "Jacobi defect on ({x}, {y}, {z}): {}", format_combo(defect))
            }
        }
    }
}

pub struct CohomologySpace {
    pub degree: usize,
    pub dimension: usize,
    /// Basis indices of the underlying degree slice, ascending.
    pub slice: Vec<usize>,
    /// Cocycle representatives over the full basis, one per cohomology class.
    pub representatives: Vec<SparseVec>,
    /// Reduced basis of the boundary space, over the full basis.
    pub boundaries: Vec<SparseVec>,
}

#[derive(Serialize, Deserialize)]
struct DglaDto {
    basis: Vec<BasisDto>,
    differential: Vec<DifferentialDto>,
    bracket: Vec<BracketDto>,
}

#[derive(Serialize, Deserialize)]
struct BasisDto {
    name: String,
    degree: usize,
}

#[derive(Serialize, Deserialize)]
struct DifferentialDto {
    from: String,
    to: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct BracketDto {
    left: String,
    right: String,
    value: Vec<(String, String)>,
}

/// L tensor B with d(x@b) = dx@b and [x@b, y@c] = (-1)^{|b||y|} [x,y]@(b^c).
/// Basis pairs are ordered L-major; the pair (x, unit) keeps x's name, other
/// pairs are named "x*b".
pub fn tensor_with_algebra(l: &Dgla, b: &GcAlgebra) -> Dgla {
    let bn = b.basis().len();
    let idx = |li: usize, bi: usize| li * bn + bi;
    let mut elements = Vec::with_capacity(l.dim() * bn);
    for li in 0..l.dim() {
        for bi in 0..bn {
            let name = if bi == b.unit_index() {
                l.basis().name(li).to_string()
            } else {
                format!("{}*{}", l.basis().name(li), b.basis().name(bi))
            };
            elements.push(BasisElement {
                name,
                degree: l.degree(li) + b.basis().degree(bi),
            });
        }
    }
    let basis = GradedBasis::new(elements).expect("tensor basis names are unique");
    let mut differential = Vec::new();
    for (li, dv) in l.differential_entries() {
        for bi in 0..bn {
            let mut v = SparseVec::new();
            for (&t, c) in dv {
                v.insert(idx(t, bi), c.clone());
            }
            differential.push((idx(li, bi), v));
        }
    }
    let mut brackets = Vec::new();
    let total = l.dim() * bn;
    for p in 0..total {
        let (li, bi) = (p / bn, p % bn);
        for q in p..total {
            let (lj, bj) = (q / bn, q % bn);
            let lie = l.bracket_of(li, lj);
            if lie.is_empty() {
                continue;
            }
            let wedge = b.mul_basis(bi, bj);
            if wedge.is_empty() {
                continue;
            }
            let sign = rat(koszul_sign(b.basis().degree(bi), l.degree(lj)));
            let mut v = SparseVec::new();
            for (&t, ct) in &lie {
                for (&u, cu) in &wedge {
                    sv_add_entry(&mut v, idx(t, u), ct * cu * &sign);
                }
            }
            if !v.is_empty() {
                brackets.push((p, q, v));
            }
        }
    }
    Dgla::new(basis, differential, brackets).expect("tensor structure is well formed")
}

/// Quotient of a DGLA by the span of the given homogeneous vectors, after
/// mechanically verifying that the span is closed under d and under bracket
/// with every basis element. The quotient basis is the deterministic
/// complement (unit vectors in ascending index order), so quotient elements
/// keep the names of their representatives.
#[derive(Debug)]
pub struct Quotient {
    pub dgla: Dgla,
    /// Kept basis indices of the source, ascending; entry r represents the
    /// r-th quotient basis element.
    pub kept: Vec<usize>,
    /// Projection matrix (quotient dim x source dim) onto the kept
    /// coordinates along the ideal.
    pub projection: Matrix,
}

pub fn quotient_by_ideal(l: &Dgla, ideal: &[SparseVec]) -> Result<Quotient> {
    let n = l.dim();
    let mut span = Span::new(n);
    let mut generators = Vec::new();
    for v in ideal {
        if v.is_empty() {
            continue;
        }
        let mut degrees = v.keys().map(|&k| l.degree(k));
        let first = degrees.next().expect("nonempty");
        if degrees.any(|x| x != first) {
            return Err(Error::Invalid(format!(
                "ideal vector {} mixes degrees",
                format_combo(&l.basis().describe(v))
            )));
        }
        span.insert(&sv_to_dense(v, n));
        generators.push(v.clone());
    }
    for v in &generators {
        let dv = l.d_vec(v);
        if !span.contains(&sv_to_dense(&dv, n)) {
            return Err(Error::Invalid(format!(
                "span is not d-closed: d({}) = {} escapes",
                format_combo(&l.basis().describe(v)),
                format_combo(&l.basis().describe(&dv))
            )));
        }
    }
    for x in 0..n {
        for v in &generators {
            let w = l.bracket_vec(&sv_unit(x), v);
            if !span.contains(&sv_to_dense(&w, n)) {
                return Err(Error::NotAnIdeal {
                    element: l.basis().name(x).to_string(),
                    ideal_vector: format_combo(&l.basis().describe(v)),
                });
            }
        }
    }
    let units: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut e = vec![Rat::zero(); n];
            e[i] = rat(1);
            e
        })
        .collect();
    let kept: Vec<usize> = {
        let mut probe = span.clone();
        (0..n).filter(|&i| probe.insert(&units[i])).collect()
    };
    // Change of basis: ideal span rows first, then kept unit vectors.
    let mut columns: Vec<Vec<Rat>> = span.rows().to_vec();
    columns.extend(kept.iter().map(|&i| units[i].clone()));
    let mut m = Matrix::zeros(n, n);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n {
            m.set(r, c, col[r].clone());
        }
    }
    let m_inv = m.inverse().expect("columns form a basis");
    let rank = span.rank();
    let mut projection = Matrix::zeros(kept.len(), n);
    for r in 0..kept.len() {
        for c in 0..n {
            projection.set(r, c, m_inv.get(rank + r, c).clone());
        }
    }
    let project = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, c) in v {
            for r in 0..kept.len() {
                let a = projection.get(r, k);
                if !a.is_zero() {
                    sv_add_entry(&mut out, r, a * c);
                }
            }
        }
        out
    };
    let elements = kept
        .iter()
        .map(|&i| BasisElement {
            name: l.basis().name(i).to_string(),
            degree: l.degree(i),
        })
        .collect();
    let basis = GradedBasis::new(elements).expect("kept names stay unique");
    let mut differential = Vec::new();
    for (r, &i) in kept.iter().enumerate() {
        let img = project(l.d_of(i));
        if !img.is_empty() {
            differential.push((r, img));
        }
    }
    let mut brackets = Vec::new();
    for (r, &i) in kept.iter().enumerate() {
        for (s, &j) in kept.iter().enumerate().skip(r) {
            let img = project(&l.bracket_of(i, j));
            if !img.is_empty() {
                brackets.push((r, s, img));
            }
        }
    }
    let dgla = Dgla::new(basis, differential, brackets)?;
    Ok(Quotient { dgla, kept, projection })
}

/// Componentwise direct sum; cross brackets vanish. Names are kept when the
/// two sides are disjoint, otherwise every name is prefixed "a." / "b.".
pub fn direct_sum(a: &Dgla, b: &Dgla) -> Dgla {
    let collide = a
        .basis()
        .elements()
        .iter()
        .any(|e| b.basis().index_of(&e.name).is_some());
    let rename = |side: &str, name: &str| {
        if collide {
            format!("{side}.{name}")
        } else {
            name.to_string()
        }
    };
    let mut elements = Vec::with_capacity(a.dim() + b.dim());
    for e in a.basis().elements() {
        elements.push(BasisElement { name: rename("a", &e.name), degree: e.degree });
    }
    for e in b.basis().elements() {
        elements.push(BasisElement { name: rename("b", &e.name), degree: e.degree });
    }
    let basis = GradedBasis::new(elements).expect("prefixed names are unique");
    let off = a.dim();
    let shift = |v: &SparseVec, by: usize| -> SparseVec {
        v.iter().map(|(&k, c)| (k + by, c.clone())).collect()
    };
    let mut differential = Vec::new();
    for (i, v) in a.differential_entries() {
        differential.push((i, v.clone()));
    }
    for (i, v) in b.differential_entries() {
        differential.push((i + off, shift(v, off)));
    }
    let mut brackets = Vec::new();
    for (i, j, v) in a.bracket_entries() {
        brackets.push((i, j, v.clone()));
    }
    for (i, j, v) in b.bracket_entries() {
        brackets.push((i + off, j + off, shift(v, off)));
    }
    Dgla::new(basis, differential, brackets).expect("sum structure is well formed")
}

/// Abelian Lie algebra of the given dimension, basis t1..tn in degree 0.
pub fn abelian(n: usize) -> Dgla {
    let elements = (1..=n)
        .map(|i| BasisElement { name: format!("t{i}"), degree: 0 })
        .collect();
    Dgla::new(GradedBasis::new(elements).expect("unique"), vec![], vec![]).expect("abelian")
}

/// The solvable algebra with basis x, y and [x, y] = y.
pub fn two_dim_nonabelian() -> Dgla {
    let elements = vec![
        BasisElement { name: "x".into(), degree: 0 },
        BasisElement { name: "y".into(), degree: 0 },
    ];
    let basis = GradedBasis::new(elements).expect("unique");
    Dgla::new(basis, vec![], vec![(0, 1, sv_unit(1))]).expect("well formed")
}

/// Traceless n x n matrices with the elementary basis: E_ij (i != j) in
/// row-major order, then H_k = E_kk - E_{k+1,k+1}. Structure constants come
/// from actual matrix commutators.
pub fn build_sl(n: usize) -> Result<Dgla> {
    if n < 2 {
        return Err(Error::Invalid("sl(n) needs n >= 2".into()));
    }
    let e_name = |i: usize, j: usize| {
        if n <= 9 {
            format!("E{i}{j}")
        } else {
            format!("E{i}_{j}")
        }
    };
    let mut elements = Vec::new();
    let mut mats: Vec<Vec<Vec<Rat>>> = Vec::new();
    let zero_mat = || vec![vec![Rat::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            elements.push(BasisElement { name: e_name(i, j), degree: 0 });
            let mut m = zero_mat();
            m[i - 1][j - 1] = rat(1);
            mats.push(m);
        }
    }
    for k in 1..n {
        elements.push(BasisElement { name: format!("H{k}"), degree: 0 });
        let mut m = zero_mat();
        m[k - 1][k - 1] = rat(1);
        m[k][k] = rat(-1);
        mats.push(m);
    }
    let dim = elements.len();
    let basis = GradedBasis::new(elements)?;
    // coordinates of a traceless matrix: off-diagonal entries on E_ij,
    // prefix sums of the diagonal on H_k
    let decompose = |m: &Vec<Vec<Rat>>| -> SparseVec {
        let mut v = SparseVec::new();
        let mut pos = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                sv_add_entry(&mut v, pos, m[i][j].clone());
                pos += 1;
            }
        }
        let mut prefix = Rat::zero();
        for k in 0..n - 1 {
            prefix += &m[k][k];
            sv_add_entry(&mut v, pos + k, prefix.clone());
        }
        v
    };
    let commutator = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        let mut out = zero_mat();
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for k in 0..n {
                    s += &a[i][k] * &b[k][j];
                    s -= &b[i][k] * &a[k][j];
                }
                out[i][j] = s;
            }
        }
        out
    };
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let v = decompose(&commutator(&mats[i], &mats[j]));
            if !v.is_empty() {
                brackets.push((i, j, v));
            }
        }
    }
    Dgla::new(basis, vec![], brackets)
}

/// Six-dimensional DGLA with a rank-one differential, small enough to trace
/// by hand: d(u) = w, [v,v] = w + s, [u,v] = s, everything else zero.
/// H^0..H^3 are each one-dimensional, spanned by z, v, s, t.
pub fn sixdim_with_differential() -> Dgla {
    let elements = vec![
        BasisElement { name: "z".into(), degree: 0 },
        BasisElement { name: "u".into(), degree: 1 },
        BasisElement { name: "v".into(), degree: 1 },
        BasisElement { name: "w".into(), degree: 2 },
        BasisElement { name: "s".into(), degree: 2 },
        BasisElement { name: "t".into(), degree: 3 },
    ];
    let basis = GradedBasis::new(elements).expect("unique");
    let (u, v, w, s) = (1, 2, 3, 4);
    let mut vv = SparseVec::new();
    vv.insert(w, rat(1));
    vv.insert(s, rat(1));
    Dgla::new(
        basis,
        vec![(u, sv_unit(w))],
        vec![(v, v, vv), (u, v, sv_unit(s))],
    )
    .expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{exterior, unit_algebra};

    #[test]
    fn sl2_classical_presentation() {
        let sl2 = build_sl(2).unwrap();
        let b = sl2.basis();
        assert_eq!(sl2.dim(), 3);
        let e = b.index_of("E12").unwrap();
        let f = b.index_of("E21").unwrap();
        let h = b.index_of("H1").unwrap();
        assert_eq!(sl2.bracket_of(e, f), sv_unit(h));
        assert_eq!(sl2.bracket_of(h, e), sv_scale(&sv_unit(e), &rat(2)));
        assert_eq!(sl2.bracket_of(h, f), sv_scale(&sv_unit(f), &rat(-2)));
        assert_eq!(sl2.bracket_of(f, e), sv_scale(&sv_unit(h), &rat(-1)));
        assert!(sl2.check_axioms().is_empty());
    }

    #[test]
    fn sl_dimensions_and_axioms() {
        for n in 2..=5 {
            let sl = build_sl(n).unwrap();
            assert_eq!(sl.dim(), n * n - 1);
            assert!(sl.check_axioms().is_empty(), "sl({n}) axioms");
        }
        assert!(build_sl(1).is_err());
    }

    #[test]
    fn sl_center_is_trivial() {
        // kernel of v -> ([v, e_1], ..., [v, e_dim])
        for n in 2..=4 {
            let sl = build_sl(n).unwrap();
            let dim = sl.dim();
            let mut rows = Vec::new();
            for j in 0..dim {
                // row block: for each target coordinate t, entries over v-coords
                for t in 0..dim {
                    let mut row = Vec::with_capacity(dim);
                    for i in 0..dim {
                        row.push(
                            sl.bracket_of(i, j)
                                .get(&t)
                                .cloned()
                                .unwrap_or_else(Rat::zero),
                        );
                    }
                    rows.push(row);
                }
            }
            let ad = Matrix::from_rows(rows).unwrap();
            assert_eq!(ad.rank(), dim, "center of sl({n})");
        }
    }

    #[test]
    fn abelian_axioms() {
        let a = abelian(5);
        assert_eq!(a.dim(), 5);
        assert!(a.is_abelian());
        assert!(a.check_axioms().is_empty());
    }

    #[test]
    fn corrupted_sl2_fails_jacobi() {
        let sl2 = build_sl(2).unwrap();
        let mut brackets: Vec<_> = sl2
            .bracket_entries()
            .map(|(i, j, v)| (i, j, v.clone()))
            .collect();
        // scale one structure constant: [E12, H1] becomes -3*E12
        let e = sl2.basis().index_of("E12").unwrap();
        let h = sl2.basis().index_of("H1").unwrap();
        let entry = brackets
            .iter_mut()
            .find(|(i, j, _)| (*i, *j) == (e.min(h), e.max(h)))
            .unwrap();
        entry.2 = sv_scale(&entry.2, &rat_frac_32());
        let bad = Dgla::new(sl2.basis().clone(), vec![], brackets).unwrap();
        let violations = bad.check_axioms();
        assert!(violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Jacobi { .. })));
    }

    fn rat_frac_32() -> Rat {
        crate::rational::rat_frac(3, 2)
    }

    #[test]
    fn cohomology_of_zero_differential_is_everything() {
        let sl2 = build_sl(2).unwrap();
        let h0 = sl2.cohomology(0);
        assert_eq!(h0.dimension, 3);
        assert_eq!(h0.representatives.len(), 3);
        assert_eq!(sl2.cohomology(1).dimension, 0);
    }

    #[test]
    fn cohomology_of_acyclic_two_term_complex() {
        let elements = vec![
            BasisElement { name: "a".into(), degree: 0 },
            BasisElement { name: "b".into(), degree: 1 },
        ];
        let basis = GradedBasis::new(elements).unwrap();
        let l = Dgla::new(basis, vec![(0, sv_unit(1))], vec![]).unwrap();
        assert!(l.check_axioms().is_empty());
        assert_eq!(l.cohomology(0).dimension, 0);
        assert_eq!(l.cohomology(1).dimension, 0);
    }

    #[test]
    fn sixdim_example_is_valid_with_line_cohomology() {
        let l = sixdim_with_differential();
        assert!(l.check_axioms().is_empty());
        for i in 0..=3 {
            assert_eq!(l.cohomology(i).dimension, 1, "H^{i}");
        }
        let h1 = l.cohomology(1);
        assert_eq!(h1.representatives[0], sv_unit(2)); // v
        let h2 = l.cohomology(2);
        assert_eq!(h2.representatives[0], sv_unit(4)); // s
        assert_eq!(h2.boundaries, vec![sv_unit(3)]); // w
    }

    #[test]
    fn tensor_with_unit_algebra_is_identity() {
        let sl2 = build_sl(2).unwrap();
        assert_eq!(tensor_with_algebra(&sl2, &unit_algebra()), sl2);
    }

    #[test]
    fn tensor_of_abelian_stays_abelian() {
        let t = tensor_with_algebra(&abelian(3), &exterior(2));
        assert!(t.is_abelian());
        assert!(t.check_axioms().is_empty());
    }

    #[test]
    fn tensor_sl2_with_exterior2() {
        let sl2 = build_sl(2).unwrap();
        let t = tensor_with_algebra(&sl2, &exterior(2));
        assert_eq!(t.basis().dims(), vec![3, 6, 3]);
        assert!(t.check_axioms().is_empty());
        let b = t.basis();
        let e1 = b.index_of("E12*z1").unwrap();
        let f2 = b.index_of("E21*z2").unwrap();
        let h12 = b.index_of("H1*z1z2").unwrap();
        // [e@z1, f@z2] = [e,f]@z1^z2, |z1|*|f| even so no extra sign
        assert_eq!(t.bracket_of(e1, f2), sv_unit(h12));
        let e2 = b.index_of("E12*z2").unwrap();
        let f1 = b.index_of("E21*z1").unwrap();
        assert_eq!(t.bracket_of(e2, f1), sv_scale(&sv_unit(h12), &rat(-1)));
        assert!(t.bracket_of(e1, f1).is_empty());
    }

    #[test]
    fn quotient_by_everything_and_by_nothing() {
        let sl2 = build_sl(2).unwrap();
        let all: Vec<SparseVec> = (0..3).map(sv_unit).collect();
        let q = quotient_by_ideal(&sl2, &all).unwrap();
        assert_eq!(q.dgla.dim(), 0);
        let q0 = quotient_by_ideal(&sl2, &[]).unwrap();
        assert_eq!(q0.dgla, sl2);
        assert_eq!(q0.projection, Matrix::identity(3));
    }

    #[test]
    fn quotient_rejects_non_ideals() {
        let sl2 = build_sl(2).unwrap();
        let e = sl2.basis().index_of("E12").unwrap();
        let err = quotient_by_ideal(&sl2, &[sv_unit(e)]).unwrap_err();
        assert!(matches!(err, Error::NotAnIdeal { .. }), "{err}");
    }

    #[test]
    fn quotient_of_sixdim_by_top_degree() {
        // span(t) is an ideal: all brackets with t vanish, d(t) = 0
        let l = sixdim_with_differential();
        let q = quotient_by_ideal(&l, &[sv_unit(5)]).unwrap();
        assert_eq!(q.dgla.dim(), 5);
        assert!(q.dgla.check_axioms().is_empty());
        assert_eq!(q.kept, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn direct_sum_with_zero_and_collisions() {
        let sl2 = build_sl(2).unwrap();
        assert_eq!(direct_sum(&sl2, &Dgla::zero()), sl2);
        let s = direct_sum(&abelian(2), &abelian(2));
        assert!(s.is_abelian());
        assert_eq!(s.basis().name(0), "a.t1");
        assert_eq!(s.basis().name(2), "b.t1");
        let mixed = direct_sum(&abelian(2), &sl2);
        assert_eq!(mixed.basis().name(0), "t1");
        assert_eq!(mixed.basis().name(2), "E12");
        assert!(mixed.check_axioms().is_empty());
    }

    #[test]
    fn json_round_trip() {
        for l in [
            build_sl(2).unwrap(),
            sixdim_with_differential(),
            tensor_with_algebra(&build_sl(2).unwrap(), &exterior(2)),
        ] {
            let back = Dgla::from_json(&l.to_json()).unwrap();
            assert_eq!(back, l);
        }
    }

    #[test]
    fn json_accepts_either_bracket_orientation() {
        let text = r#"{
            "basis": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}],
            "differential": [],
            "bracket": [{"left": "y", "right": "x", "value": [["y", "-1"]]}]
        }"#;
        let l = Dgla::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(l, two_dim_nonabelian());
        let dup = r#"{
            "basis": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0}],
            "differential": [],
            "bracket": [
                {"left": "x", "right": "y", "value": [["y", "1"]]},
                {"left": "y", "right": "x", "value": [["y", "-1"]]}
            ]
        }"#;
        assert!(Dgla::from_json(&serde_json::from_str(dup).unwrap()).is_err());
    }
}
