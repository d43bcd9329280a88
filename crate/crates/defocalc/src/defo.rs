//! Deformation calculus: Maurer-Cartan residuals, gauge transformations,
//! splittings with homotopies, Kuranishi maps, obstruction maps, and the
//! symbolic deformation equations of a DGLA.
//!
//! Elements of L tensor (base ring) are maps from basis index to ring
//! element ([`PolyVec`]). The homotopy-transfer recursion only ever needs the
//! splitting L^i = boundaries + harmonic + coexact with d invertible from
//! coexact onto the next boundaries; over Q there is no metric, so the
//! complements are fixed by the deterministic pivot rule of the matrix layer,
//! and every reported fact is independent of that choice.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::Zero;

use crate::artin::ArtinRing;
use crate::dgla::Dgla;
use crate::graded::{sv_unit, SparseVec};
use crate::matrix::{extend_basis, Matrix, Span};
use crate::poly::{PolyIdeal, PolyRing, Polynomial};
use crate::rational::{rat, rat_frac, Rat};
use crate::{Error, Result};

/// Element of L tensor R for a base ring R, keyed by basis index.
/// Invariant: no zero polynomials stored.
pub type PolyVec = BTreeMap<usize, Polynomial>;

pub fn pv_add_poly(dst: &mut PolyVec, idx: usize, p: Polynomial) {
    if p.is_zero() {
        return;
    }
    match dst.entry(idx) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&p);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

pub fn pv_add_scaled(dst: &mut PolyVec, src: &PolyVec, scale: &Rat) {
    for (&i, p) in src {
        pv_add_poly(dst, i, p.scale(scale));
    }
}

pub fn pv_d(l: &Dgla, x: &PolyVec) -> PolyVec {
    let mut out = PolyVec::new();
    for (&i, p) in x {
        for (&t, c) in l.d_of(i) {
            pv_add_poly(&mut out, t, p.scale(c));
        }
    }
    out
}

/// [x, y] with ring-truncated coefficient products.
pub fn pv_bracket(l: &Dgla, a: &ArtinRing, x: &PolyVec, y: &PolyVec) -> PolyVec {
    let mut out = PolyVec::new();
    for (&i, p) in x {
        for (&j, q) in y {
            let lie = l.bracket_of(i, j);
            if lie.is_empty() {
                continue;
            }
            let pq = a.mul(p, q);
            if pq.is_zero() {
                continue;
            }
            for (&t, c) in &lie {
                pv_add_poly(&mut out, t, pq.scale(c));
            }
        }
    }
    out
}

pub fn pv_reduce(a: &ArtinRing, x: &PolyVec) -> PolyVec {
    let mut out = PolyVec::new();
    for (&i, p) in x {
        pv_add_poly(&mut out, i, a.reduce(p));
    }
    out
}

/// Degree-1 element with coefficients in the maximal ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct McElement {
    pub value: PolyVec,
}

impl McElement {
    pub fn new(l: &Dgla, a: &ArtinRing, value: PolyVec) -> Result<Self> {
        let mut reduced = PolyVec::new();
        for (&i, p) in &value {
            if i >= l.dim() {
                return Err(Error::Invalid("MC element references a missing index".into()));
            }
            if l.degree(i) != 1 {
                return Err(Error::Dimension(format!(
                    "MC element must live in degree 1, found {}",
                    l.basis().name(i)
                )));
            }
            if !a.in_max_ideal(p) {
                return Err(Error::Invalid(format!(
                    "coefficient of {} has a constant term",
                    l.basis().name(i)
                )));
            }
            pv_add_poly(&mut reduced, i, a.reduce(p));
        }
        Ok(McElement { value: reduced })
    }

    pub fn zero() -> Self {
        McElement { value: PolyVec::new() }
    }
}

/// dx + (1/2)[x, x], exactly, with ring truncation.
pub fn mc_residual(l: &Dgla, a: &ArtinRing, x: &McElement) -> PolyVec {
    let mut out = pv_reduce(a, &pv_d(l, &x.value));
    let bracket = pv_bracket(l, a, &x.value, &x.value);
    pv_add_scaled(&mut out, &bracket, &rat_frac(1, 2));
    out
}

/// x' = exp(ad_a)(x) - sum_{k>=0} ad_a^k / (k+1)! (da). The series stops on
/// its own: each ad_a raises the ring order, and the ring is nilpotent.
pub fn gauge_transform(
    l: &Dgla,
    a: &ArtinRing,
    gauge: &PolyVec,
    x: &McElement,
) -> Result<McElement> {
    for (&i, p) in gauge {
        if i >= l.dim() || l.degree(i) != 0 {
            return Err(Error::Dimension(
                "gauge parameter must live in degree 0".into(),
            ));
        }
        if !a.in_max_ideal(p) {
            return Err(Error::Invalid(
                "gauge coefficients must lie in the maximal ideal".into(),
            ));
        }
    }
    let mut out = PolyVec::new();
    let mut term = pv_reduce(a, &x.value);
    let mut factorial = rat(1);
    let mut k: i64 = 0;
    while !term.is_empty() {
        pv_add_scaled(&mut out, &term, &(rat(1) / &factorial));
        k += 1;
        factorial *= rat(k);
        term = pv_bracket(l, a, gauge, &term);
    }
    let mut term = pv_reduce(a, &pv_d(l, gauge));
    let mut factorial = rat(1); // (k+1)! starting at k = 0
    let mut k: i64 = 0;
    while !term.is_empty() {
        pv_add_scaled(&mut out, &term, &(rat(-1) / &factorial));
        k += 1;
        factorial *= rat(k + 1);
        term = pv_bracket(l, a, gauge, &term);
    }
    McElement::new(l, a, out)
}

/// One degree slice of the splitting L^i = boundaries + harmonic + coexact.
pub struct DegreeSplitting {
    pub degree: usize,
    /// Basis indices of this degree, ascending.
    pub slice: Vec<usize>,
    /// Reduced basis of im d, over the full basis.
    pub boundaries: Vec<SparseVec>,
    /// Chosen complement of the boundaries inside ker d; its classes are the
    /// cohomology representatives.
    pub harmonic: Vec<SparseVec>,
    /// Chosen complement of ker d; d maps it bijectively onto the next
    /// boundaries.
    pub coexact: Vec<SparseVec>,
    /// Inverse of the column matrix [boundaries | harmonic | coexact] in
    /// slice coordinates.
    minv: Matrix,
    /// h(b) for each boundary basis vector, one degree down, full basis.
    h_of_boundaries: Vec<SparseVec>,
}

pub struct SplittingData {
    /// One entry per degree 0..=max_degree.
    pub degrees: Vec<DegreeSplitting>,
    /// Basis index -> (degree, position in slice).
    slot: BTreeMap<usize, (usize, usize)>,
}

fn lift(slice: &[usize], v: &[Rat]) -> SparseVec {
    let mut out = SparseVec::new();
    for (p, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.insert(slice[p], c.clone());
        }
    }
    out
}

fn to_slice_dense(slice: &[usize], v: &SparseVec) -> Vec<Rat> {
    let pos: BTreeMap<usize, usize> = slice.iter().enumerate().map(|(p, &g)| (g, p)).collect();
    let mut out = vec![Rat::zero(); slice.len()];
    for (&g, c) in v {
        out[pos[&g]] = c.clone();
    }
    out
}

impl SplittingData {
    pub fn new(l: &Dgla) -> SplittingData {
        let max_degree = l.basis().max_degree();
        let mut degrees: Vec<DegreeSplitting> = Vec::with_capacity(max_degree + 1);
        let mut slot = BTreeMap::new();
        for i in 0..=max_degree {
            let slice = l.basis().indices_of_degree(i);
            for (p, &g) in slice.iter().enumerate() {
                slot.insert(g, (i, p));
            }
            let boundaries_slice = if i == 0 {
                Vec::new()
            } else {
                l.slice_matrix_of_d(i - 1).column_space_basis()
            };
            let kernel = l.slice_matrix_of_d(i).kernel_basis();
            let mut span = Span::new(slice.len());
            for b in &boundaries_slice {
                span.insert(b);
            }
            let harmonic_slice = extend_basis(&span, &kernel);
            for h in &harmonic_slice {
                span.insert(h);
            }
            let units: Vec<Vec<Rat>> = (0..slice.len())
                .map(|p| {
                    let mut e = vec![Rat::zero(); slice.len()];
                    e[p] = rat(1);
                    e
                })
                .collect();
            let coexact_slice = extend_basis(&span, &units);
            let n = slice.len();
            let mut m = Matrix::zeros(n, n);
            for (c, col) in boundaries_slice
                .iter()
                .chain(&harmonic_slice)
                .chain(&coexact_slice)
                .enumerate()
            {
                for r in 0..n {
                    m.set(r, c, col[r].clone());
                }
            }
            let minv = m.inverse().expect("splitting columns form a basis");
            degrees.push(DegreeSplitting {
                degree: i,
                boundaries: boundaries_slice.iter().map(|v| lift(&slice, v)).collect(),
                harmonic: harmonic_slice.iter().map(|v| lift(&slice, v)).collect(),
                coexact: coexact_slice.iter().map(|v| lift(&slice, v)).collect(),
                slice,
                minv,
                h_of_boundaries: Vec::new(),
            });
        }
        // d maps the coexact part of degree i-1 bijectively onto the
        // boundaries of degree i; invert that restriction column by column.
        for i in 1..=max_degree {
            let (lower, upper) = degrees.split_at_mut(i);
            let prev = &lower[i - 1];
            let cur = &mut upper[0];
            let cols: Vec<Vec<Rat>> = prev
                .coexact
                .iter()
                .map(|c| to_slice_dense(&cur.slice, &l.d_vec(c)))
                .collect();
            let mut dmat = Matrix::zeros(cur.slice.len(), cols.len());
            for (c, col) in cols.iter().enumerate() {
                for r in 0..cur.slice.len() {
                    dmat.set(r, c, col[r].clone());
                }
            }
            cur.h_of_boundaries = cur
                .boundaries
                .iter()
                .map(|b| {
                    let rhs = to_slice_dense(&cur.slice, b);
                    let sol = dmat.solve(&rhs).expect("d is onto the boundaries");
                    let mut out = SparseVec::new();
                    for (k, c) in sol.iter().enumerate() {
                        if !c.is_zero() {
                            for (&g, cc) in &prev.coexact[k] {
                                crate::graded::sv_add_entry(&mut out, g, c * cc);
                            }
                        }
                    }
                    out
                })
                .collect();
        }
        SplittingData { degrees, slot }
    }

    pub fn at(&self, degree: usize) -> Option<&DegreeSplitting> {
        self.degrees.get(degree)
    }

    pub fn harmonic_at(&self, degree: usize) -> &[SparseVec] {
        self.at(degree).map_or(&[], |d| &d.harmonic)
    }

    /// Coordinates of a degree-homogeneous vector in the
    /// boundaries/harmonic/coexact column order.
    fn decompose(&self, degree: usize, v: &SparseVec) -> Vec<Rat> {
        let ds = &self.degrees[degree];
        let dense = to_slice_dense(&ds.slice, v);
        ds.minv.mul_vec(&dense).expect("square inverse")
    }

    fn split_by_degree(&self, v: &SparseVec) -> BTreeMap<usize, SparseVec> {
        let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&g, c) in v {
            let (deg, _) = self.slot[&g];
            parts.entry(deg).or_default().insert(g, c.clone());
        }
        parts
    }

    /// The homotopy h: inverse of d on boundaries, zero on harmonic and
    /// coexact vectors. Lowers degree by one.
    pub fn homotopy(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (deg, part) in self.split_by_degree(&v.clone()) {
            let ds = &self.degrees[deg];
            let coords = self.decompose(deg, &part);
            for (k, hb) in ds.h_of_boundaries.iter().enumerate() {
                crate::graded::sv_add_scaled(&mut out, hb, &coords[k]);
            }
        }
        out
    }

    /// Projection onto the harmonic part along boundaries + coexact.
    pub fn harmonic_projection(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (deg, part) in self.split_by_degree(&v.clone()) {
            let ds = &self.degrees[deg];
            let coords = self.decompose(deg, &part);
            let nb = ds.boundaries.len();
            for (k, h) in ds.harmonic.iter().enumerate() {
                crate::graded::sv_add_scaled(&mut out, h, &coords[nb + k]);
            }
        }
        out
    }

    /// Coefficients of a degree-homogeneous vector on the harmonic basis of
    /// that degree (the vector may also have boundary/coexact parts; those
    /// are discarded).
    pub fn harmonic_coords(&self, degree: usize, v: &SparseVec) -> Vec<Rat> {
        if v.is_empty() {
            return vec![Rat::zero(); self.harmonic_at(degree).len()];
        }
        let ds = &self.degrees[degree];
        let coords = self.decompose(degree, v);
        coords[ds.boundaries.len()..ds.boundaries.len() + ds.harmonic.len()].to_vec()
    }

    /// dh + hd = id - (inclusion of harmonic) . (harmonic projection),
    /// checked on every basis element.
    pub fn verify_homotopy_identity(&self, l: &Dgla) -> bool {
        for g in 0..l.dim() {
            let e = sv_unit(g);
            let mut lhs = l.d_vec(&self.homotopy(&e));
            for (k, c) in self.homotopy(&l.d_vec(&e)) {
                crate::graded::sv_add_entry(&mut lhs, k, c);
            }
            let mut rhs = e.clone();
            crate::graded::sv_add_scaled(&mut rhs, &self.harmonic_projection(&e), &rat(-1));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// (degree, dim boundaries, dim harmonic, dim coexact) per degree.
    pub fn summary(&self) -> Vec<(usize, usize, usize, usize)> {
        self.degrees
            .iter()
            .map(|d| (d.degree, d.boundaries.len(), d.harmonic.len(), d.coexact.len()))
            .collect()
    }
}

/// Formal map from the degree-1 harmonic space to the degree-2 harmonic
/// space, truncated at the given order. Components start at order 2.
pub struct KuranishiMap {
    pub coordinates: Vec<String>,
    pub truncation: usize,
    /// One polynomial per harmonic degree-2 basis vector.
    pub components: Vec<Polynomial>,
}

pub struct KuranishiData {
    pub map: KuranishiMap,
    pub splitting: SplittingData,
    /// Q[coordinates] / m^{truncation+1}; the home of the solution.
    pub ring: ArtinRing,
    /// The fixed point of x = x1 - (1/2) h[x, x], truncated.
    pub solution: PolyVec,
}

/// Names for the degree-1 harmonic coordinates: the basis name when the
/// representative is a plain basis vector, h1_{k} otherwise.
fn h1_coordinate_names(l: &Dgla, splitting: &SplittingData) -> Vec<String> {
    let h1 = splitting.harmonic_at(1);
    let mut names: Vec<String> = h1
        .iter()
        .enumerate()
        .map(|(k, rep)| {
            if rep.len() == 1 {
                let (&g, c) = rep.iter().next().expect("nonempty");
                if *c == rat(1) {
                    return l.basis().name(g).to_string();
                }
            }
            format!("h1_{k}")
        })
        .collect();
    let unique: BTreeSet<&String> = names.iter().collect();
    if unique.len() != names.len() {
        names = (0..names.len()).map(|k| format!("h1_{k}")).collect();
    }
    names
}

fn generic_harmonic_element(splitting: &SplittingData, nvars: usize) -> PolyVec {
    let mut x = PolyVec::new();
    for (k, rep) in splitting.harmonic_at(1).iter().enumerate() {
        let var = Polynomial::var(nvars, k);
        for (&g, c) in rep {
            pv_add_poly(&mut x, g, var.scale(c));
        }
    }
    x
}

fn homotopy_of_polyvec(splitting: &SplittingData, v: &PolyVec) -> PolyVec {
    let mut out = PolyVec::new();
    for (&g, p) in v {
        for (&t, c) in &splitting.homotopy(&sv_unit(g)) {
            pv_add_poly(&mut out, t, p.scale(c));
        }
    }
    out
}

/// Kuranishi map by homotopy transfer: iterate x_{k+1} = x1 - (1/2) h[x_k,
/// x_k] to the requested order, then project the residual of the fixed point
/// onto the degree-2 harmonic space. When d = 0 the homotopy vanishes, the
/// iteration stops at x1, and the map is exactly the quadratic obstruction.
pub fn kuranishi(l: &Dgla, order: usize) -> Result<KuranishiData> {
    if order < 2 {
        return Err(Error::Invalid("truncation order must be at least 2".into()));
    }
    let splitting = SplittingData::new(l);
    let names = h1_coordinate_names(l, &splitting);
    let ring = ArtinRing::new(names.clone(), order, vec![])?;
    let x1 = generic_harmonic_element(&splitting, names.len());
    let mut x = x1.clone();
    // each round multiplies the correction order, so the fixed point is
    // reached after at most `order` rounds
    for _ in 0..=order {
        let bracket = pv_bracket(l, &ring, &x, &x);
        let mut next = x1.clone();
        pv_add_scaled(&mut next, &homotopy_of_polyvec(&splitting, &bracket), &rat_frac(-1, 2));
        let next = pv_reduce(&ring, &next);
        if next == x {
            break;
        }
        x = next;
    }
    let solution = x;
    let mc = McElement { value: solution.clone() };
    let residual = mc_residual(l, &ring, &mc);
    let h2_count = splitting.harmonic_at(2).len();
    let mut components = vec![Polynomial::zero(names.len()); h2_count];
    for (&g, p) in &residual {
        let coords = splitting.harmonic_coords(2, &sv_unit(g));
        for (m, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                components[m] = components[m].add(&p.scale(c));
            }
        }
    }
    for c in &components {
        debug_assert!(
            c.terms().all(|(m, _)| m.degree() >= 2),
            "Kuranishi components start at order 2"
        );
    }
    Ok(KuranishiData {
        map: KuranishiMap { coordinates: names, truncation: order, components },
        splitting,
        ring,
        solution,
    })
}

/// The quadratic map theta -> projection of (1/2)[theta, theta] onto the
/// degree-2 harmonic space, with theta generic in the degree-1 harmonic
/// space. Uses the same representatives and coordinate names as `kuranishi`.
pub struct ObstructionMap {
    pub coordinates: Vec<String>,
    pub components: Vec<Polynomial>,
}

impl ObstructionMap {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

pub fn primary_obstruction(l: &Dgla) -> ObstructionMap {
    if l.has_zero_differential() {
        return obstruction_zero_differential(l);
    }
    obstruction_via_splitting(l)
}

fn obstruction_via_splitting(l: &Dgla) -> ObstructionMap {
    let splitting = SplittingData::new(l);
    let names = h1_coordinate_names(l, &splitting);
    // order 2 suffices: the result is quadratic by construction
    let ring = ArtinRing::new(names.clone(), 2, vec![]).expect("fresh variables");
    let theta = generic_harmonic_element(&splitting, names.len());
    let bracket = pv_bracket(l, &ring, &theta, &theta);
    let h2_count = splitting.harmonic_at(2).len();
    let mut components = vec![Polynomial::zero(names.len()); h2_count];
    for (&g, p) in &bracket {
        let coords = splitting.harmonic_coords(2, &sv_unit(g));
        for (m, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                components[m] = components[m].add(&p.scale(&(c * rat_frac(1, 2))));
            }
        }
    }
    ObstructionMap { coordinates: names, components }
}

/// With d = 0 the harmonic spaces are the degree slices on the nose, so the
/// quadratic map is written directly on basis coordinates. Matches the
/// splitting-based path exactly, without building any splitting; this is
/// what keeps the large truncated models tractable.
fn obstruction_zero_differential(l: &Dgla) -> ObstructionMap {
    let slice1 = l.basis().indices_of_degree(1);
    let slice2 = l.basis().indices_of_degree(2);
    let names: Vec<String> =
        slice1.iter().map(|&g| l.basis().name(g).to_string()).collect();
    let nv = names.len();
    let pos2: BTreeMap<usize, usize> = slice2.iter().enumerate().map(|(p, &g)| (g, p)).collect();
    let mut components = vec![Polynomial::zero(nv); slice2.len()];
    for p in 0..nv {
        for q in p..nv {
            let lie = l.bracket_of(slice1[p], slice1[q]);
            if lie.is_empty() {
                continue;
            }
            let scale = if p == q { rat_frac(1, 2) } else { rat(1) };
            let mono = Polynomial::var(nv, p).mul(&Polynomial::var(nv, q));
            for (&t, c) in &lie {
                if let Some(&m) = pos2.get(&t) {
                    components[m] = components[m].add(&mono.scale(&(c * &scale)));
                }
            }
        }
    }
    ObstructionMap { coordinates: names, components }
}

/// The coordinates of dx + (1/2)[x, x] as polynomials: one variable per
/// degree-1 basis element (named after it), one generator per degree-2 basis
/// element. Zero generators are dropped by the ideal constructor.
pub fn def_equations(l: &Dgla) -> Result<PolyIdeal> {
    let slice1 = l.basis().indices_of_degree(1);
    let slice2 = l.basis().indices_of_degree(2);
    let names: Vec<String> = slice1.iter().map(|&g| l.basis().name(g).to_string()).collect();
    let ring = PolyRing::new(names)?;
    let nv = slice1.len();
    let pos2: BTreeMap<usize, usize> = slice2.iter().enumerate().map(|(p, &g)| (g, p)).collect();
    let mut gens = vec![Polynomial::zero(nv); slice2.len()];
    for (col, &i) in slice1.iter().enumerate() {
        for (&t, c) in l.d_of(i) {
            gens[pos2[&t]] = gens[pos2[&t]].add(&Polynomial::var(nv, col).scale(c));
        }
    }
    for (p, &i) in slice1.iter().enumerate() {
        for (q, &j) in slice1.iter().enumerate().skip(p) {
            let lie = l.bracket_of(i, j);
            if lie.is_empty() {
                continue;
            }
            // [e_j, e_i] = [e_i, e_j] in odd degree, so the (1/2) of the
            // quadratic term cancels against double counting when i != j
            let scale = if p == q { rat_frac(1, 2) } else { rat(1) };
            let mono = Polynomial::var(nv, p).mul(&Polynomial::var(nv, q));
            for (&t, c) in &lie {
                gens[pos2[&t]] = gens[pos2[&t]].add(&mono.scale(&(c * &scale)));
            }
        }
    }
    PolyIdeal::new(ring, gens)
}

/// For a zero-differential DGLA: the deformation functor is prorepresentable
/// iff the pairing of degree 0 against degree 1 vanishes identically (the
/// gauge action is trivial).
pub fn prorepresentable_formal(l: &Dgla) -> Result<bool> {
    if let Some((i, _)) = l.differential_entries().next() {
        return Err(Error::NonzeroDifferential {
            element: l.basis().name(i).to_string(),
        });
    }
    for (i, j, _) in l.bracket_entries() {
        let (a, b) = (l.degree(i), l.degree(j));
        if (a == 0 && b == 1) || (a == 1 && b == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::{
        abelian, build_sl, sixdim_with_differential, tensor_with_algebra, two_dim_nonabelian,
        Dgla,
    };
    use crate::graded::{exterior, BasisElement, GradedBasis};
    use crate::poly::Monomial;

    fn sl2_ext2() -> Dgla {
        tensor_with_algebra(&build_sl(2).unwrap(), &exterior(2))
    }

    #[test]
    fn residual_of_zero_is_zero() {
        let l = sixdim_with_differential();
        let a = ArtinRing::dual_numbers();
        assert!(mc_residual(&l, &a, &McElement::zero()).is_empty());
    }

    #[test]
    fn residual_over_square_zero_base_sees_only_d() {
        let l = sixdim_with_differential();
        let a = ArtinRing::dual_numbers();
        let eps = Polynomial::var(1, 0);
        let v = l.basis().index_of("v").unwrap();
        let u = l.basis().index_of("u").unwrap();
        let x = McElement::new(&l, &a, PolyVec::from([(v, eps.clone())])).unwrap();
        assert!(mc_residual(&l, &a, &x).is_empty());
        let y = McElement::new(&l, &a, PolyVec::from([(u, eps)])).unwrap();
        let r = mc_residual(&l, &a, &y);
        let w = l.basis().index_of("w").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&w], Polynomial::var(1, 0));
    }

    #[test]
    fn residual_detects_noncommuting_pair() {
        // x = t(e@z1 + f@z2) over Q[t]/t^3: residual is t^2 * h@z1z2
        let l = sl2_ext2();
        let a = ArtinRing::jet_line(2);
        let t = Polynomial::var(1, 0);
        let e1 = l.basis().index_of("E12*z1").unwrap();
        let f2 = l.basis().index_of("E21*z2").unwrap();
        let x = McElement::new(
            &l,
            &a,
            PolyVec::from([(e1, t.clone()), (f2, t.clone())]),
        )
        .unwrap();
        let r = mc_residual(&l, &a, &x);
        let h12 = l.basis().index_of("H1*z1z2").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&h12], a.mul(&t, &t));
    }

    #[test]
    fn gauge_by_zero_fixes_everything() {
        let l = sl2_ext2();
        let a = ArtinRing::jet_line(2);
        let e1 = l.basis().index_of("E12*z1").unwrap();
        let x = McElement::new(&l, &a, PolyVec::from([(e1, Polynomial::var(1, 0))])).unwrap();
        let moved = gauge_transform(&l, &a, &PolyVec::new(), &x).unwrap();
        assert_eq!(moved, x);
    }

    #[test]
    fn first_order_gauge_subtracts_da() {
        // two-term abelian complex d(a0) = b1, gauge from x = 0
        let basis = GradedBasis::new(vec![
            BasisElement { name: "a0".into(), degree: 0 },
            BasisElement { name: "b1".into(), degree: 1 },
        ])
        .unwrap();
        let l = Dgla::new(basis, vec![(0, sv_unit(1))], vec![]).unwrap();
        let a = ArtinRing::dual_numbers();
        let eps = Polynomial::var(1, 0);
        let moved =
            gauge_transform(&l, &a, &PolyVec::from([(0, eps.clone())]), &McElement::zero())
                .unwrap();
        assert_eq!(moved.value, PolyVec::from([(1, eps.scale(&rat(-1)))]));
    }

    #[test]
    fn gauge_preserves_solutions() {
        // x = t(e@z1 + e@z2) commutes with itself; gauge by t*H1
        let l = sl2_ext2();
        let a = ArtinRing::jet_line(2);
        let t = Polynomial::var(1, 0);
        let e1 = l.basis().index_of("E12*z1").unwrap();
        let e2 = l.basis().index_of("E12*z2").unwrap();
        let h = l.basis().index_of("H1").unwrap();
        let x = McElement::new(&l, &a, PolyVec::from([(e1, t.clone()), (e2, t.clone())]))
            .unwrap();
        assert!(mc_residual(&l, &a, &x).is_empty());
        let moved = gauge_transform(&l, &a, &PolyVec::from([(h, t.clone())]), &x).unwrap();
        assert_ne!(moved, x);
        assert!(mc_residual(&l, &a, &moved).is_empty());
        // exp(ad_{tH1}) scales e-parts by 1 + 2t (t^3 = 0 kills the rest)
        let expected = t.add(&a.mul(&t, &t).scale(&rat(2)));
        assert_eq!(moved.value[&e1], expected);
    }

    #[test]
    fn splitting_identity_holds() {
        for l in [sixdim_with_differential(), sl2_ext2(), abelian(4)] {
            let s = SplittingData::new(&l);
            assert!(s.verify_homotopy_identity(&l));
        }
    }

    #[test]
    fn splitting_of_sixdim() {
        let l = sixdim_with_differential();
        let s = SplittingData::new(&l);
        assert_eq!(
            s.summary(),
            vec![(0, 0, 1, 0), (1, 0, 1, 1), (2, 1, 1, 0), (3, 0, 1, 0)]
        );
        // h(w) = u, h(s) = 0
        let w = l.basis().index_of("w").unwrap();
        let u = l.basis().index_of("u").unwrap();
        let s_idx = l.basis().index_of("s").unwrap();
        assert_eq!(s.homotopy(&sv_unit(w)), sv_unit(u));
        assert!(s.homotopy(&sv_unit(s_idx)).is_empty());
    }

    #[test]
    fn kuranishi_of_abelian_is_zero() {
        let l = tensor_with_algebra(&abelian(2), &exterior(2));
        let data = kuranishi(&l, 4).unwrap();
        assert_eq!(data.map.coordinates.len(), 4);
        assert_eq!(data.map.components.len(), 2);
        assert!(data.map.components.iter().all(|c| c.is_zero()));
        assert_eq!(data.solution.len(), 4); // x stays x1
    }

    #[test]
    fn kuranishi_of_sixdim_frozen() {
        let l = sixdim_with_differential();
        let data = kuranishi(&l, 4).unwrap();
        assert_eq!(data.map.coordinates, vec!["v".to_string()]);
        // K = (1/2) v^2 - (1/2) v^3 on the single harmonic degree-2 class s
        let mut expected = Polynomial::zero(1);
        expected.add_term(Monomial(vec![2]), rat_frac(1, 2));
        expected.add_term(Monomial(vec![3]), rat_frac(-1, 2));
        assert_eq!(data.map.components, vec![expected]);
        // solution: v - (1/2) v^2 u
        let u = l.basis().index_of("u").unwrap();
        let v = l.basis().index_of("v").unwrap();
        let mut u_part = Polynomial::zero(1);
        u_part.add_term(Monomial(vec![2]), rat_frac(-1, 2));
        assert_eq!(data.solution[&u], u_part);
        assert_eq!(data.solution[&v], Polynomial::var(1, 0));
        // the residual of the solution is exactly the pullback of K here
        let mc = McElement { value: data.solution.clone() };
        let r = mc_residual(&l, &data.ring, &mc);
        let s_idx = l.basis().index_of("s").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&s_idx], data.map.components[0]);
    }

    #[test]
    fn kuranishi_matches_obstruction_when_d_is_zero() {
        for l in [sl2_ext2(), tensor_with_algebra(&two_dim_nonabelian(), &exterior(2))] {
            let ob = primary_obstruction(&l);
            for order in [2, 3, 5] {
                let data = kuranishi(&l, order).unwrap();
                assert_eq!(data.map.coordinates, ob.coordinates);
                assert_eq!(data.map.components, ob.components);
            }
        }
    }

    #[test]
    fn obstruction_vanishes_for_abelian_or_no_h2() {
        assert!(primary_obstruction(&tensor_with_algebra(&abelian(3), &exterior(2))).is_zero());
        assert!(primary_obstruction(&build_sl(2).unwrap()).is_zero());
    }

    #[test]
    fn obstruction_of_sl2_ext2_is_three_quadrics() {
        let ob = primary_obstruction(&sl2_ext2());
        assert_eq!(ob.coordinates.len(), 6);
        assert_eq!(ob.components.len(), 3);
        for c in &ob.components {
            assert_eq!(c.homogeneous_degree(), Some(2));
        }
    }

    #[test]
    fn obstruction_paths_agree_when_d_is_zero() {
        for l in [sl2_ext2(), tensor_with_algebra(&two_dim_nonabelian(), &exterior(2))] {
            let fast = obstruction_zero_differential(&l);
            let slow = obstruction_via_splitting(&l);
            assert_eq!(fast.coordinates, slow.coordinates);
            assert_eq!(fast.components.len(), slow.components.len());
            for (a, b) in fast.components.iter().zip(&slow.components) {
                assert!(a.sub(b).is_zero());
            }
        }
    }

    #[test]
    fn def_equations_of_abelian_are_empty() {
        let l = tensor_with_algebra(&abelian(3), &exterior(2));
        let ideal = def_equations(&l).unwrap();
        assert_eq!(ideal.ring.nvars(), 6);
        assert!(ideal.generators.is_empty());
    }

    #[test]
    fn def_equations_evaluate_to_residual() {
        // symbolic generators at a numeric point vs mc_residual of c*t
        let l = sixdim_with_differential();
        let ideal = def_equations(&l).unwrap();
        assert_eq!(ideal.ring.vars(), ["u", "v"]);
        let a = ArtinRing::jet_line(2);
        let t = Polynomial::var(1, 0);
        let (cu, cv) = (rat(3), rat_frac(-1, 2));
        let u = l.basis().index_of("u").unwrap();
        let v = l.basis().index_of("v").unwrap();
        let x = McElement::new(
            &l,
            &a,
            PolyVec::from([(u, t.scale(&cu)), (v, t.scale(&cv))]),
        )
        .unwrap();
        let r = mc_residual(&l, &a, &x);
        let one = rat(1);
        for (p, &g) in l.basis().indices_of_degree(2).iter().enumerate() {
            let symbolic = ideal.generators[p].evaluate(&[cu.clone(), cv.clone()]);
            // setting t = 1 in the residual coefficient sums its orders
            let numeric = r
                .get(&g)
                .map(|poly| poly.evaluate(std::slice::from_ref(&one)))
                .unwrap_or_else(Rat::zero);
            let expect = match l.basis().name(g) {
                "w" => cu.clone() + &cv * &cv * rat_frac(1, 2),
                "s" => &cu * &cv + &cv * &cv * rat_frac(1, 2),
                _ => unreachable!(),
            };
            assert_eq!(numeric, expect, "component {p}");
            assert_eq!(symbolic, expect, "component {p}");
        }
    }

    #[test]
    fn prorepresentability_detects_degree_pairing() {
        assert!(prorepresentable_formal(&tensor_with_algebra(&abelian(2), &exterior(3))).unwrap());
        assert!(
            !prorepresentable_formal(&tensor_with_algebra(&two_dim_nonabelian(), &exterior(2)))
                .unwrap()
        );
        assert!(matches!(
            prorepresentable_formal(&sixdim_with_differential()),
            Err(Error::NonzeroDifferential { .. })
        ));
    }
}
