//! Brute-force coinvariant algebra: the polynomial ring in the lattice
//! coordinates modulo the ideal generated by positive-degree W-invariants,
//! built degree by degree with exact rational linear algebra.
//!
//! Nothing here uses the closed-form fake degrees; only the matrices of
//! the group elements are shared with the library.

use std::collections::{BTreeMap, HashMap};

use chi_torus::linalg::IntMatrix;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i128>;
type Mono = Vec<u32>;
type Poly = BTreeMap<Mono, Q>;

/// Exponent vectors of total degree `k` in `n` variables, lexicographic.
pub fn monomials(n: usize, k: usize) -> Vec<Mono> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k as u32, &mut Vec::new(), &mut out);
    out
}

fn mul_poly(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Q::zero) += *ca * *cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Image of the monomial under `x_i ↦ Σ_j M[i][j] x_j`.
fn act(m: &IntMatrix, mono: &Mono) -> Poly {
    let n = m.dim();
    let mut out: Poly = BTreeMap::from([(vec![0; n], Q::one())]);
    for (i, &e) in mono.iter().enumerate() {
        let linear: Poly = (0..n)
            .filter(|&j| m.get(i, j) != 0)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                (v, Q::from_integer(m.get(i, j) as i128))
            })
            .collect();
        for _ in 0..e {
            out = mul_poly(&out, &linear);
        }
    }
    out
}

fn to_vector(p: &Poly, index: &HashMap<Mono, usize>, len: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    for (m, c) in p {
        v[index[m]] += *c;
    }
    v
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
fn rref(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                for c in 0..ncols {
                    let d = rows[r][c] * f;
                    rows[i][c] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub struct OracleResult {
    /// Graded dimension of the coinvariant algebra, degrees `0..=top+1`.
    pub dims: Vec<usize>,
    /// `traces[w][k]`: trace of element `w` on the degree-`k` piece.
    pub traces: Vec<Vec<Q>>,
}

/// Builds the quotient up to degree `top + 1` (the last piece must vanish).
pub fn coinvariant_oracle(elements: &[IntMatrix], top: usize) -> OracleResult {
    let n = elements[0].dim();
    let mut invariants_by_degree: Vec<Vec<Poly>> = vec![Vec::new()];
    let mut dims = Vec::new();
    let mut traces = vec![Vec::new(); elements.len()];

    for k in 0..=top + 1 {
        let basis = monomials(n, k);
        let index: HashMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        // Reynolds images of all degree-k monomials span the degree-k invariants.
        if k > 0 {
            let rows: Vec<Vec<Q>> = basis
                .iter()
                .map(|mono| {
                    let mut sum = Poly::new();
                    for g in elements {
                        for (m, c) in act(g, mono) {
                            *sum.entry(m).or_insert_with(Q::zero) += c;
                        }
                    }
                    to_vector(&sum, &index, basis.len())
                })
                .collect();
            let (rows, _) = rref(rows);
            let polys = rows
                .into_iter()
                .map(|row| {
                    basis
                        .iter()
                        .zip(row)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (m.clone(), c))
                        .collect::<Poly>()
                })
                .collect();
            invariants_by_degree.push(polys);
        }

        // Ideal in degree k: invariants of degree j ≥ 1 times monomials of degree k − j.
        let mut gens = Vec::new();
        for j in 1..=k {
            for f in &invariants_by_degree[j] {
                for m in monomials(n, k - j) {
                    let mono: Poly = BTreeMap::from([(m, Q::one())]);
                    gens.push(to_vector(&mul_poly(f, &mono), &index, basis.len()));
                }
            }
        }
        let (ideal, pivots) = rref(gens);
        let standard: Vec<usize> = (0..basis.len()).filter(|c| !pivots.contains(c)).collect();
        dims.push(standard.len());

        for (wi, g) in elements.iter().enumerate() {
            let mut tr = Q::zero();
            for &b in &standard {
                let mut v = to_vector(&act(g, &basis[b]), &index, basis.len());
                for (row, &p) in ideal.iter().zip(&pivots) {
                    let f = v[p];
                    if !f.is_zero() {
                        for c in 0..v.len() {
                            v[c] -= row[c] * f;
                        }
                    }
                }
                tr += v[b];
            }
            traces[wi].push(tr);
        }
    }
    OracleResult { dims, traces }
}
