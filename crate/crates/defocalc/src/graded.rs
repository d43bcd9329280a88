//! Graded bases, sparse coefficient vectors, and graded-commutative algebras.
//!
//! The algebras here carry no differential: the only instances the rest of
//! the crate needs are cohomology algebras and exterior algebras, which are
//! plain graded-commutative rings. The constructor checks commutativity,
//! associativity, and the unit law exactly over the basis, so a value of
//! [`GcAlgebra`] is valid by construction.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Coefficient vector over a basis, keyed by basis index. Invariant: no zero
/// entries are stored, so emptiness means the zero vector.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn sv_unit(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, rat(1));
    v
}

/// dst += scale * src.
pub fn sv_add_scaled(dst: &mut SparseVec, src: &SparseVec, scale: &Rat) {
    if scale.is_zero() {
        return;
    }
    for (&k, c) in src {
        sv_add_entry(dst, k, c * scale);
    }
}

pub fn sv_add_entry(dst: &mut SparseVec, k: usize, c: Rat) {
    if c.is_zero() {
        return;
    }
    match dst.entry(k) {
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

pub fn sv_scale(v: &SparseVec, scale: &Rat) -> SparseVec {
    let mut out = SparseVec::new();
    sv_add_scaled(&mut out, v, scale);
    out
}

pub fn sv_from_dense(dense: &[Rat]) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in dense.iter().enumerate() {
        if !c.is_zero() {
            out.insert(i, c.clone());
        }
    }
    out
}

pub fn sv_to_dense(v: &SparseVec, len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (&k, c) in v {
        out[k] = c.clone();
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

/// Ordered list of named basis elements with nonnegative degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
    by_name: BTreeMap<String, usize>,
}

impl GradedBasis {
    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        let mut by_name = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.name.is_empty() {
                return Err(Error::Invalid("empty basis name".into()));
            }
            if by_name.insert(e.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis name {:?}", e.name)));
            }
        }
        Ok(GradedBasis { elements, by_name })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elements[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn max_degree(&self) -> usize {
        self.elements.iter().map(|e| e.degree).max().unwrap_or(0)
    }

    /// Indices of the degree-d slice, in basis order.
    pub fn indices_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) == d).collect()
    }

    /// Dimension of each degree 0..=max_degree.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.max_degree() + 1];
        for e in &self.elements {
            dims[e.degree] += 1;
        }
        dims
    }

    /// Renders a coefficient vector as name-tagged pairs, basis order.
    pub fn describe(&self, v: &SparseVec) -> Vec<(String, Rat)> {
        v.iter()
            .map(|(&k, c)| (self.name(k).to_string(), c.clone()))
            .collect()
    }
}

/// Finite-dimensional graded-commutative associative algebra with unit,
/// given by structure constants over a graded basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GcAlgebra {
    basis: GradedBasis,
    unit: usize,
    /// product[(i, j)] = e_i * e_j; absent pairs multiply to zero.
    product: BTreeMap<(usize, usize), SparseVec>,
}

impl GcAlgebra {
    pub fn new(
        basis: GradedBasis,
        unit: usize,
        product: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self> {
        if unit >= basis.len() || basis.degree(unit) != 0 {
            return Err(Error::Invalid("unit must be a degree-0 basis element".into()));
        }
        for (&(i, j), v) in &product {
            if i >= basis.len() || j >= basis.len() {
                return Err(Error::Invalid("product table references a missing index".into()));
            }
            let want = basis.degree(i) + basis.degree(j);
            for (&k, c) in v {
                if c.is_zero() {
                    return Err(Error::Invalid("product table stores a zero coefficient".into()));
                }
                if k >= basis.len() {
                    return Err(Error::Invalid("product value references a missing index".into()));
                }
                if basis.degree(k) != want {
                    return Err(Error::Invalid(format!(
                        "product {} * {} has a component of the wrong degree",
                        basis.name(i),
                        basis.name(j)
                    )));
                }
            }
        }
        let alg = GcAlgebra { basis, unit, product };
        alg.check()?;
        Ok(alg)
    }

    /// Graded commutativity, associativity, and the unit law on all basis
    /// tuples. Run by the constructor.
    fn check(&self) -> Result<()> {
        let n = self.basis.len();
        for i in 0..n {
            let left = self.mul_basis(self.unit, i);
            if left != sv_unit(i) {
                return Err(Error::Invalid(format!(
                    "unit law fails on {}",
                    self.basis.name(i)
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                // e_i e_j = (-1)^{|i||j|} e_j e_i
                let sign = koszul_sign(self.basis.degree(i), self.basis.degree(j));
                let lhs = self.mul_basis(i, j);
                let rhs = sv_scale(&self.mul_basis(j, i), &rat(sign));
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "graded commutativity fails on ({}, {})",
                        self.basis.name(i),
                        self.basis.name(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul_vec(&ij, &sv_unit(k));
                    let rhs = self.mul_vec(&sv_unit(i), &self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis.name(i),
                            self.basis.name(j),
                            self.basis.name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        self.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, ca) in a {
            for (&j, cb) in b {
                if let Some(v) = self.product.get(&(i, j)) {
                    sv_add_scaled(&mut out, v, &(ca * cb));
                }
            }
        }
        out
    }
}

/// (-1)^{ab} as an i64.
pub fn koszul_sign(a: usize, b: usize) -> i64 {
    if (a * b).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The one-dimensional algebra spanned by its unit.
pub fn unit_algebra() -> GcAlgebra {
    exterior(0)
}

/// Exterior algebra on q degree-1 generators z1..zq. Basis elements are
/// subsets, named by concatenation ("1", "z1", "z1z3", ...), ordered by
/// (degree, lexicographic subset).
pub fn exterior(q: usize) -> GcAlgebra {
    exterior_truncated(q, q)
}

/// Exterior algebra on q generators with all forms of degree > cap cut off
/// (the quotient by the span of higher-degree forms, which is an ideal).
/// Same structure as `exterior(q)` through degree cap; products that would
/// exceed the cap are zero.
pub fn exterior_truncated(q: usize, cap: usize) -> GcAlgebra {
    let cap = cap.min(q);
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for size in 0..=cap {
        let mut acc = Vec::new();
        enumerate_subsets(q, size, &mut Vec::new(), &mut acc);
        subsets.extend(acc);
    }
    let elements = subsets
        .iter()
        .map(|s| BasisElement {
            name: subset_name(s),
            degree: s.len(),
        })
        .collect();
    let basis = GradedBasis::new(elements).expect("subset names are unique");
    let index: BTreeMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut product = BTreeMap::new();
    for (i, s) in subsets.iter().enumerate() {
        for (j, t) in subsets.iter().enumerate() {
            if s.len() + t.len() > cap {
                continue;
            }
            if s.iter().any(|x| t.contains(x)) {
                continue;
            }
            let mut u: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
            // sign of the permutation sorting s ++ t: one transposition per
            // inverted pair across the split
            let inversions = s
                .iter()
                .map(|x| t.iter().filter(|y| x > y).count())
                .sum::<usize>();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            u.sort_unstable();
            let mut v = SparseVec::new();
            v.insert(index[u.as_slice()], rat(sign));
            product.insert((i, j), v);
        }
    }
    GcAlgebra::new(basis, 0, product).expect("exterior algebra is valid")
}

fn enumerate_subsets(q: usize, size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == size {
        out.push(prefix.clone());
        return;
    }
    let start = prefix.last().map_or(1, |&x| x + 1);
    for next in start..=q {
        prefix.push(next);
        enumerate_subsets(q, size, prefix, out);
        prefix.pop();
    }
}

fn subset_name(s: &[usize]) -> String {
    if s.is_empty() {
        "1".to_string()
    } else {
        s.iter().map(|i| format!("z{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_rejects_duplicates() {
        let dup = vec![
            BasisElement { name: "a".into(), degree: 0 },
            BasisElement { name: "a".into(), degree: 1 },
        ];
        assert!(GradedBasis::new(dup).is_err());
    }

    #[test]
    fn exterior_dims_are_binomials() {
        assert_eq!(exterior(0).basis().dims(), vec![1]);
        assert_eq!(exterior(2).basis().dims(), vec![1, 2, 1]);
        assert_eq!(exterior(3).basis().dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn exterior_anticommutes() {
        let e = exterior(2);
        let b = e.basis();
        let z1 = b.index_of("z1").unwrap();
        let z2 = b.index_of("z2").unwrap();
        let z12 = b.index_of("z1z2").unwrap();
        assert_eq!(e.mul_basis(z1, z2), sv_unit(z12));
        assert_eq!(e.mul_basis(z2, z1), sv_scale(&sv_unit(z12), &rat(-1)));
        assert!(e.mul_basis(z1, z1).is_empty());
    }

    #[test]
    fn exterior_triple_product_sign() {
        let e = exterior(3);
        let b = e.basis();
        let z2 = b.index_of("z2").unwrap();
        let z13 = b.index_of("z1z3").unwrap();
        let z123 = b.index_of("z1z2z3").unwrap();
        // z2 * (z1 z3): sorting z2,z1,z3 costs one inversion
        assert_eq!(e.mul_basis(z2, z13), sv_scale(&sv_unit(z123), &rat(-1)));
        assert_eq!(e.mul_basis(z13, z2), sv_scale(&sv_unit(z123), &rat(-1)));
    }

    #[test]
    fn truncated_exterior_cuts_high_degrees() {
        let e = exterior_truncated(4, 2);
        assert_eq!(e.basis().dims(), vec![1, 4, 6]);
        let b = e.basis();
        let z1 = b.index_of("z1").unwrap();
        let z23 = b.index_of("z2z3").unwrap();
        assert!(e.mul_basis(z1, z23).is_empty());
        assert_eq!(
            e.mul_basis(z1, b.index_of("z2").unwrap()),
            sv_unit(b.index_of("z1z2").unwrap())
        );
    }

    #[test]
    fn invalid_product_rejected() {
        // force z1 * z2 = z2 z1 with the wrong sign on one orientation
        let full = exterior(2);
        let mut product = BTreeMap::new();
        for i in 0..full.basis().len() {
            for j in 0..full.basis().len() {
                let v = full.mul_basis(i, j);
                if !v.is_empty() {
                    product.insert((i, j), v);
                }
            }
        }
        let z1 = full.basis().index_of("z1").unwrap();
        let z2 = full.basis().index_of("z2").unwrap();
        let v = product.get_mut(&(z2, z1)).unwrap();
        *v = sv_scale(v, &rat(-1));
        assert!(GcAlgebra::new(full.basis().clone(), 0, product).is_err());
    }
}
