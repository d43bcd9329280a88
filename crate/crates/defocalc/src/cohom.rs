//! Closed-form cohomology of line bundles and twisted tangent bundles on
//! projective space, complex tori, and torus x projective products via the
//! Künneth convolution, plus the torus contraction pairing.
//!
//! Everything here is a finite formula: binomials for projective space, the
//! index-theorem concentration for nondegenerate hermitian classes on tori,
//! and convolutions of the two. Degenerate nonzero hermitian forms are out
//! of scope and unrepresentable.

use num::traits::Zero;

use crate::matrix::Matrix;
use crate::{Error, Result};

/// Character of the torus lattice, written additively; trivial iff zero.
pub type Character = Vec<i64>;

/// List of h^0..h^top.
pub type CohVector = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Hermitian {
    Zero,
    Nondegenerate { negative_eigenvalues: usize, pfaffian: u64 },
}

/// Appell-Humbert data for a line bundle on a q-torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AhBundle {
    pub character: Character,
    pub hermitian: Hermitian,
}

impl AhBundle {
    pub fn flat(character: Character) -> Self {
        AhBundle { character, hermitian: Hermitian::Zero }
    }

    pub fn trivial() -> Self {
        AhBundle::flat(Vec::new())
    }
}

/// The class c * H for a positive-definite unit H: only the sign of c
/// survives into cohomology, and the pfaffian is normalized to 1.
pub fn definite_multiple(q: usize, c: i64) -> Hermitian {
    match c.cmp(&0) {
        std::cmp::Ordering::Equal => Hermitian::Zero,
        std::cmp::Ordering::Less => {
            Hermitian::Nondegenerate { negative_eigenvalues: q, pfaffian: 1 }
        }
        std::cmp::Ordering::Greater => {
            Hermitian::Nondegenerate { negative_eigenvalues: 0, pfaffian: 1 }
        }
    }
}

fn binom(a: i64, k: i64) -> u64 {
    if k < 0 || a < k {
        return 0;
    }
    num::integer::binomial(a as u64, k as u64)
}

/// h^i(P^n, O(d)): sections for d >= 0, top cohomology for d <= -n-1,
/// nothing else.
pub fn proj_cohomology(n: usize, d: i64) -> CohVector {
    let nn = n as i64;
    let mut h = vec![0u64; n + 1];
    if d >= 0 {
        h[0] = binom(nn + d, nn);
    }
    if d <= -nn - 1 {
        h[n] = binom(-d - 1, nn);
    }
    h
}

/// The general rule for h^i(P^n, T(d)), n >= 1: sections for d >= -1, a
/// single class in degree n-1 at d = -n-1, and top cohomology (through the
/// cotangent sections of the dual twist) for d <= -n-2.
fn tangent_by_rule(n: usize, d: i64) -> CohVector {
    let nn = n as i64;
    let mut h = vec![0u64; n + 1];
    if d >= -1 {
        h[0] = (nn as u64 + 1) * binom(nn + d + 1, nn) - binom(nn + d, nn);
    }
    if d == -nn - 1 {
        h[n - 1] = 1;
    }
    if d <= -nn - 2 {
        let k = -d - nn - 1;
        h[n] = (nn as u64 + 1) * binom(nn + k - 1, nn) - binom(nn + k, nn);
    }
    h
}

/// h^i(P^n, T(d)). On the line the tangent bundle is O(2) and the values
/// come straight from proj_cohomology; the general rule agrees there, which
/// the tests pin down against the Euler-sequence characteristic.
pub fn proj_tangent_cohomology(n: usize, d: i64) -> Result<CohVector> {
    if n == 0 {
        return Err(Error::Invalid("tangent cohomology needs dimension >= 1".into()));
    }
    if n == 1 {
        return Ok(proj_cohomology(1, d + 2));
    }
    Ok(tangent_by_rule(n, d))
}

/// h^i of a line bundle on a q-torus from its Appell-Humbert data: the flat
/// trivial bundle carries the exterior algebra, flat nontrivial bundles are
/// invisible, and nondegenerate classes concentrate their pfaffian in the
/// degree of the negative eigenvalues.
pub fn torus_cohomology(q: usize, b: &AhBundle) -> Result<CohVector> {
    match &b.hermitian {
        Hermitian::Zero => {
            let qq = q as i64;
            if b.character.iter().all(|&c| c == 0) {
                Ok((0..=qq).map(|i| binom(qq, i)).collect())
            } else {
                Ok(vec![0; q + 1])
            }
        }
        Hermitian::Nondegenerate { negative_eigenvalues: s, pfaffian: p } => {
            if *s > q {
                return Err(Error::Invalid(format!(
                    "negative index {s} exceeds the torus dimension {q}"
                )));
            }
            if *p == 0 {
                return Err(Error::Invalid("pfaffian must be positive".into()));
            }
            let mut h = vec![0u64; q + 1];
            h[*s] = *p;
            Ok(h)
        }
    }
}

/// Convolution of cohomology vectors: the external product.
pub fn kunneth(u: &CohVector, v: &CohVector) -> CohVector {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; u.len() + v.len() - 1];
    for (i, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// h^i of L(alpha, H) boxtimes O(d) on torus_q x P^n.
pub fn product_line_cohomology(q: usize, n: usize, b: &AhBundle, d: i64) -> Result<CohVector> {
    Ok(kunneth(&torus_cohomology(q, b)?, &proj_cohomology(n, d)))
}

/// h^i of T_X tensor L(alpha, H, d) on X = torus_q x P^n: the tangent bundle
/// splits as q flat summands plus the projective tangent factor.
pub fn product_tangent_twist_cohomology(
    q: usize,
    n: usize,
    b: &AhBundle,
    d: i64,
) -> Result<CohVector> {
    let line = product_line_cohomology(q, n, b, d)?;
    let tangent = kunneth(&torus_cohomology(q, b)?, &proj_tangent_cohomology(n, d)?);
    Ok(line.iter().map(|h| h * q as u64).zip(tangent).map(|(a, b)| a + b).collect())
}

/// The contraction pairing H^1(T) -> H^2(O) of a q-torus with hermitian
/// matrix H. Rows are indexed by dzbar_i (x) d/dz_j, row-major in (i, j);
/// columns by wedge pairs (a, b) with a < b, lexicographic; the entry is the
/// coefficient of dzbar_a ^ dzbar_b in the image sum_s h_js dzbar_i ^
/// dzbar_s, using dzbar_b ^ dzbar_a = -dzbar_a ^ dzbar_b.
pub struct ContractionMap {
    pub q: usize,
    pub matrix: Matrix,
    pub surjective: bool,
}

pub fn contraction_map(h: &Matrix) -> Result<ContractionMap> {
    let q = h.nrows();
    if q == 0 || h.ncols() != q {
        return Err(Error::Dimension("hermitian matrix must be square and nonempty".into()));
    }
    let pairs = q * (q - 1) / 2;
    let mut col_of = vec![vec![usize::MAX; q]; q];
    let mut next = 0;
    for a in 0..q {
        for b in (a + 1)..q {
            col_of[a][b] = next;
            next += 1;
        }
    }
    let mut matrix = Matrix::zeros(q * q, pairs);
    for i in 0..q {
        for j in 0..q {
            let row = i * q + j;
            for s in 0..q {
                if s == i {
                    continue;
                }
                let c = h.get(j, s);
                if c.is_zero() {
                    continue;
                }
                if i < s {
                    matrix.set(row, col_of[i][s], c.clone());
                } else {
                    matrix.set(row, col_of[s][i], -c.clone());
                }
            }
        }
    }
    let surjective = matrix.rank() == pairs;
    Ok(ContractionMap { q, matrix, surjective })
}

/// Whether the product of two compact factors has no mixed first-order
/// deformations: both cross products of section/period counts must vanish.
pub fn product_alpha_iso(h0_tx: u64, h1_oy: u64, h1_ox: u64, h0_ty: u64) -> bool {
    h0_tx * h1_oy == 0 && h1_ox * h0_ty == 0
}
