//! Graded character of the coinvariant algebra `S(X)/S(X)^W_{>0}`.
//!
//! For `w ∈ W` the graded trace of `w` on the coinvariants is
//!
//! ```text
//! P_w(q) = ∏ (1 − q^{d_i}) / det(I − q·M_w)
//! ```
//!
//! where the `d_i` run over all `n` degrees (central directions contribute
//! `d = 1`). The coinvariants are the regular representation exactly when
//! `P_w(1) = |W|·[w = 1]`, and then the W-invariants of the coinvariants are
//! `(1/|W|) Σ_w P_w(q) = 1`.
//!
//! Lattice degree `k` sits in cohomological degree `2k`, so every invariant
//! class is even and the alternating sum of Betti numbers is a plain sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::polynomial::IntPolynomial;
use crate::root_datum::{degrees, generate_weyl, length_poly, RootDatum, WeylElement, WeylGroup};

/// `det(I − q·M)` by fraction-free elimination over `Z[q]`.
pub fn char_det(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut a: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPolynomial::new(vec![i64::from(i == j), -m.get(i, j)]))
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is exact over an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `∏ (1 − q^{d_i})`
pub fn degree_numerator(degrees: &[usize]) -> IntPolynomial {
    degrees.iter().map(|&d| IntPolynomial::one_minus_q_pow(d)).product()
}

/// Graded trace of `w` on the coinvariant algebra.
pub fn fake_degree(datum: &RootDatum, degrees: &[usize], w: &WeylElement) -> Result<IntPolynomial> {
    if degrees.len() != datum.n || w.matrix.dim() != datum.n {
        return Err(Error::InexactDivision(format!(
            "{} degrees for a rank-{} lattice",
            degrees.len(),
            datum.n
        )));
    }
    fake_degree_from(&degree_numerator(degrees), &w.matrix)
}

fn fake_degree_from(numerator: &IntPolynomial, m: &IntMatrix) -> Result<IntPolynomial> {
    let den = char_det(m);
    if den.is_zero() {
        return Err(Error::InexactDivision(format!("det(I - qM) vanishes for {m:?}")));
    }
    numerator
        .div_exact(&den)
        .ok_or_else(|| Error::InexactDivision(format!("{numerator} / ({den}) for {m:?}")))
}

/// `P_w` for every element, indexed like the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FakeDegreeTable {
    pub polys: Vec<IntPolynomial>,
}

impl FakeDegreeTable {
    pub fn build(datum: &RootDatum, w: &WeylGroup, degrees: &[usize]) -> Result<Self> {
        if degrees.len() != datum.n {
            return Err(Error::InexactDivision(format!(
                "{} degrees for a rank-{} lattice",
                degrees.len(),
                datum.n
            )));
        }
        let numerator = degree_numerator(degrees);
        let polys = w
            .elements()
            .iter()
            .map(|e| fake_degree_from(&numerator, &e.matrix))
            .collect::<Result<_>>()?;
        Ok(FakeDegreeTable { polys })
    }

    /// Elements whose value at `q = 1` breaks `P_w(1) = |W|·[w = 1]`.
    pub fn regular_character_defects(&self, w: &WeylGroup) -> Vec<usize> {
        let order = w.order() as i64;
        self.polys
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                let expected = if w.element(*i).matrix.is_identity() { order } else { 0 };
                p.eval(1) != expected
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_regular_representation(&self, w: &WeylGroup) -> bool {
        self.regular_character_defects(w).is_empty()
    }
}

/// Dimensions of the W-invariants in each graded piece of the coinvariant
/// algebra, from degree 0 through `ℓ(w₀)`.
pub fn graded_invariant_dims(datum: &RootDatum, w: &WeylGroup, degrees: &[usize]) -> Result<Vec<i64>> {
    let table = FakeDegreeTable::build(datum, w, degrees)?;
    invariant_dims_from_table(&table, w)
}

fn invariant_dims_from_table(table: &FakeDegreeTable, w: &WeylGroup) -> Result<Vec<i64>> {
    let order = w.order() as i64;
    let top = w.longest_length();
    let total: IntPolynomial = table.polys.iter().cloned().sum();
    if total.degree().is_some_and(|d| d > top) {
        return Err(Error::InexactDivision(format!("character sum {total} exceeds degree {top}")));
    }
    (0..=top)
        .map(|k| {
            let c = total.coeff(k);
            if c % order != 0 {
                Err(Error::InexactDivision(format!(
                    "coefficient {c} of q^{k} not divisible by |W| = {order}"
                )))
            } else {
                Ok(c / order)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degrees: Vec<usize>,
    pub poincare_poly: IntPolynomial,
    pub invariant_dims: Vec<i64>,
    /// Cohomological degree `2k` of each entry of `invariant_dims`.
    pub cohomological_degrees: Vec<usize>,
    pub total_dim_coinvariants: i64,
    pub regular_representation: bool,
    pub rank_euler: i64,
}

impl CohomologyReport {
    pub fn compute(datum: &RootDatum, w: &WeylGroup) -> Result<Self> {
        let degs = degrees(datum, w)?;
        let table = FakeDegreeTable::build(datum, w, &degs)?;
        Self::from_table(w, degs, &table)
    }

    pub fn from_table(w: &WeylGroup, degrees: Vec<usize>, table: &FakeDegreeTable) -> Result<Self> {
        let invariant_dims = invariant_dims_from_table(table, w)?;
        let identity = w
            .elements()
            .iter()
            .position(|e| e.matrix.is_identity())
            .expect("group contains the identity");
        let total_dim_coinvariants = table.polys[identity].coeffs().iter().sum();
        // Every invariant lives in even degree 2k, so no signs enter.
        let rank_euler = invariant_dims.iter().sum();
        Ok(CohomologyReport {
            degrees,
            poincare_poly: length_poly(w),
            cohomological_degrees: (0..invariant_dims.len()).map(|k| 2 * k).collect(),
            invariant_dims,
            total_dim_coinvariants,
            regular_representation: table.is_regular_representation(w),
            rank_euler,
        })
    }
}

/// Rank of the Euler characteristic of `G/N`: total dimension of the
/// W-invariant part of the coinvariant algebra.
pub fn rank_euler(datum: &RootDatum, limit: usize) -> Result<i64> {
    let w = generate_weyl(datum, limit)?;
    Ok(CohomologyReport::compute(datum, &w)?.rank_euler)
}

/// Euler characteristic of the flag manifold and of its quotient by the
/// free W-action: `(|W|, 1)`.
pub fn flag_euler(w: &WeylGroup) -> (i64, i64) {
    let chi = length_poly(w).eval(1);
    (chi, chi / w.order() as i64)
}
