//! Morphisms of DGLAs and the induced maps on cohomology.
//!
//! A morphism is stored as one matrix over the full bases (degree blocks are
//! implicit: entries across degrees must vanish). Verification is exhaustive
//! over basis pairs, which is fine at the dimensions this crate targets.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::dgla::Dgla;
use crate::graded::{sv_add_entry, sv_unit, SparseVec};
use crate::matrix::Matrix;
use crate::rational::Rat;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DglaMorphism {
    source: Dgla,
    target: Dgla,
    /// target dim x source dim.
    matrix: Matrix,
    verified: bool,
}

impl DglaMorphism {
    /// Builds and verifies a morphism: degree 0, commutes with differentials,
    /// respects brackets.
    pub fn new(source: Dgla, target: Dgla, matrix: Matrix) -> Result<Self> {
        let m = DglaMorphism::new_unchecked(source, target, matrix)?;
        m.verify()?;
        Ok(DglaMorphism { verified: true, ..m })
    }

    /// Shape-checked only; `verify` (or `ss_criterion`, which insists on it)
    /// still has to pass before the map is trusted.
    pub fn new_unchecked(source: Dgla, target: Dgla, matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Dimension(format!(
                "morphism matrix must be {} x {}",
                target.dim(),
                source.dim()
            )));
        }
        Ok(DglaMorphism { source, target, matrix, verified: false })
    }

    pub fn identity(l: &Dgla) -> Self {
        DglaMorphism {
            source: l.clone(),
            target: l.clone(),
            matrix: Matrix::identity(l.dim()),
            verified: true,
        }
    }

    pub fn zero(source: Dgla, target: Dgla) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        DglaMorphism { source, target, matrix, verified: true }
    }

    pub fn source(&self) -> &Dgla {
        &self.source
    }

    pub fn target(&self) -> &Dgla {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&c, coeff) in v {
            for r in 0..self.target.dim() {
                let a = self.matrix.get(r, c);
                if !a.is_zero() {
                    sv_add_entry(&mut out, r, a * coeff);
                }
            }
        }
        out
    }

    pub fn verify(&self) -> Result<()> {
        for r in 0..self.target.dim() {
            for c in 0..self.source.dim() {
                if !self.matrix.get(r, c).is_zero()
                    && self.target.degree(r) != self.source.degree(c)
                {
                    return Err(Error::NotAMorphism(format!(
                        "degree is not preserved: {} appears in the image of {}",
                        self.target.basis().name(r),
                        self.source.basis().name(c)
                    )));
                }
            }
        }
        for i in 0..self.source.dim() {
            let lhs = self.apply(self.source.d_of(i));
            let rhs = self.target.d_vec(&self.apply(&sv_unit(i)));
            if lhs != rhs {
                return Err(Error::NotAMorphism(format!(
                    "does not commute with d on {}",
                    self.source.basis().name(i)
                )));
            }
        }
        for i in 0..self.source.dim() {
            let fi = self.apply(&sv_unit(i));
            for j in i..self.source.dim() {
                let fj = self.apply(&sv_unit(j));
                let lhs = self.apply(&self.source.bracket_of(i, j));
                let rhs = self.target.bracket_vec(&fi, &fj);
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!(
                        "does not respect the bracket on ({}, {})",
                        self.source.basis().name(i),
                        self.source.basis().name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// self after other (self . other).
    pub fn compose(&self, other: &DglaMorphism) -> Result<DglaMorphism> {
        if other.target != self.source {
            return Err(Error::NotAMorphism(
                "composition: inner target differs from outer source".into(),
            ));
        }
        Ok(DglaMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
            verified: self.verified && other.verified,
        })
    }

    /// Matrix of H^i(source) -> H^i(target) over the chosen representative
    /// bases: each mapped representative is re-expressed as boundary plus
    /// representative combination in the target.
    pub fn induced_cohomology_map(&self, i: usize) -> Result<Matrix> {
        let src = self.source.cohomology(i);
        let tgt = self.target.cohomology(i);
        let slice_pos: BTreeMap<usize, usize> =
            tgt.slice.iter().enumerate().map(|(p, &g)| (g, p)).collect();
        let ncols_b = tgt.boundaries.len();
        let ncols_h = tgt.representatives.len();
        let mut decomp = Matrix::zeros(tgt.slice.len(), ncols_b + ncols_h);
        for (c, v) in tgt.boundaries.iter().chain(&tgt.representatives).enumerate() {
            for (&g, coeff) in v {
                decomp.set(slice_pos[&g], c, coeff.clone());
            }
        }
        let mut induced = Matrix::zeros(ncols_h, src.representatives.len());
        for (c, rep) in src.representatives.iter().enumerate() {
            let image = self.apply(rep);
            let mut rhs = vec![Rat::zero(); tgt.slice.len()];
            for (&g, coeff) in &image {
                match slice_pos.get(&g) {
                    Some(&p) => rhs[p] = coeff.clone(),
                    None => {
                        return Err(Error::NotAMorphism(format!(
                            "image of a degree-{i} representative leaves the degree slice"
                        )))
                    }
                }
            }
            let sol = decomp.solve(&rhs).ok_or_else(|| {
                Error::NotAMorphism(format!(
                    "image of a degree-{i} cocycle is not a cocycle"
                ))
            })?;
            for r in 0..ncols_h {
                induced.set(r, c, sol[ncols_b + r].clone());
            }
        }
        Ok(induced)
    }

    /// Surjective on H^0, bijective on H^1, injective on H^2, computed by
    /// exact rank. Refuses to run on a morphism that has not passed `verify`.
    pub fn ss_criterion(&self) -> Result<SsReport> {
        if !self.verified {
            self.verify()?;
        }
        let mut dims_source = [0usize; 3];
        let mut dims_target = [0usize; 3];
        let mut ranks = [0usize; 3];
        for i in 0..3 {
            dims_source[i] = self.source.cohomology(i).dimension;
            dims_target[i] = self.target.cohomology(i).dimension;
            ranks[i] = self.induced_cohomology_map(i)?.rank();
        }
        let h0_surjective = ranks[0] == dims_target[0];
        let h1_bijective = ranks[1] == dims_source[1] && ranks[1] == dims_target[1];
        let h2_injective = ranks[2] == dims_source[2];
        Ok(SsReport {
            h0_surjective,
            h1_bijective,
            h2_injective,
            all: h0_surjective && h1_bijective && h2_injective,
            dims_source,
            dims_target,
            ranks,
        })
    }
}

/// Outcome of the cohomological equivalence criterion in degrees 0..2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsReport {
    pub h0_surjective: bool,
    pub h1_bijective: bool,
    pub h2_injective: bool,
    pub all: bool,
    pub dims_source: [usize; 3],
    pub dims_target: [usize; 3],
    pub ranks: [usize; 3],
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::{abelian, build_sl, sixdim_with_differential, tensor_with_algebra};
    use crate::graded::{exterior, BasisElement, GradedBasis};
    use crate::rational::rat;

    #[test]
    fn identity_satisfies_everything() {
        let l = tensor_with_algebra(&build_sl(2).unwrap(), &exterior(2));
        let report = DglaMorphism::identity(&l).ss_criterion().unwrap();
        assert!(report.all);
        assert_eq!(report.dims_source, [3, 6, 3]);
    }

    #[test]
    fn zero_map_fails_h1_when_h1_nonzero() {
        let elements = vec![BasisElement { name: "a".into(), degree: 1 }];
        let basis = GradedBasis::new(elements).unwrap();
        let l = Dgla::new(basis, vec![], vec![]).unwrap();
        let report = DglaMorphism::zero(l.clone(), l).ss_criterion().unwrap();
        assert!(report.h0_surjective);
        assert!(!report.h1_bijective);
        assert!(report.h2_injective);
        assert!(!report.all);
    }

    #[test]
    fn inclusion_composes_with_projection() {
        let small = abelian(2);
        let big = abelian(3);
        let mut inc = Matrix::zeros(3, 2);
        inc.set(0, 0, rat(1));
        inc.set(1, 1, rat(1));
        let inc = DglaMorphism::new(small.clone(), big.clone(), inc).unwrap();
        let mut proj = Matrix::zeros(2, 3);
        proj.set(0, 0, rat(1));
        proj.set(1, 1, rat(1));
        let proj = DglaMorphism::new(big, small, proj).unwrap();
        let round = proj.compose(&inc).unwrap();
        assert_eq!(round.matrix(), &Matrix::identity(2));
        assert!(round.ss_criterion().unwrap().all);
        assert!(!inc.ss_criterion().unwrap().h0_surjective);
    }

    #[test]
    fn verify_rejects_non_chain_maps() {
        let l = sixdim_with_differential();
        // swap u and v: d(v) = 0 but d(u) = w, so this cannot commute with d
        let mut m = Matrix::identity(6);
        m.set(1, 1, rat(0));
        m.set(2, 2, rat(0));
        m.set(1, 2, rat(1));
        m.set(2, 1, rat(1));
        let err = DglaMorphism::new(l.clone(), l, m).unwrap_err();
        assert!(matches!(err, Error::NotAMorphism(_)), "{err}");
    }

    #[test]
    fn verify_rejects_degree_mixing() {
        let l = sixdim_with_differential();
        let mut m = Matrix::zeros(6, 6);
        m.set(3, 0, rat(1)); // degree 0 element sent to degree 2
        let err = DglaMorphism::new(l.clone(), l, m).unwrap_err();
        assert!(matches!(err, Error::NotAMorphism(_)));
    }
}
