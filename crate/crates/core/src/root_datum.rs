//! Root data of the classical and exceptional series, and their Weyl groups
//! as explicit groups of integer matrices on the character lattice.
//!
//! Cartan matrix convention: `cartan[i][j] = ⟨α_j, α_i^∨⟩` with Bourbaki
//! numbering of the simple roots. For B_n the short root is `α_n`, for C_n
//! the long root is `α_n`, for G_2 `α_1` is short, so
//! `G_2 = [[2, -3], [-1, 2]]`.
//!
//! Lattice basis: simply connected data use the fundamental weights, adjoint
//! data use the simple roots. Both make the reflections integral. Matrices
//! act on row vectors (see [`crate::linalg`]).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::polynomial::IntPolynomial;

/// Default cap on the number of generated group elements. Covers E_6
/// (51 840) and excludes E_7, E_8.
pub const DEFAULT_ELEMENT_LIMIT: usize = 60_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn rank_is_valid(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }

    /// Order of the Weyl group, saturating. Only used to refuse hopeless
    /// generations early.
    pub fn weyl_order(self, rank: usize) -> u128 {
        let fact = |n: usize| (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b));
        let pow2 = |n: usize| 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        match self {
            Series::A => fact(rank + 1),
            Series::B | Series::C => pow2(rank).saturating_mul(fact(rank)),
            Series::D => pow2(rank - 1).saturating_mul(fact(rank)),
            Series::E => match rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(Error::InvalidSpec(format!("unknown series {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    #[serde(rename = "sc", alias = "simply-connected")]
    SimplyConnected,
    #[serde(rename = "adj", alias = "adjoint")]
    Adjoint,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "adj",
        })
    }
}

impl FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sc" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            other => Err(Error::InvalidSpec(format!("unknown isogeny {other:?}"))),
        }
    }
}

/// A reductive group given by the type of its derived group, the isogeny
/// extreme, and the number of central torus directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanSpec {
    pub series: Series,
    pub rank: usize,
    #[serde(default = "default_isogeny")]
    pub isogeny: Isogeny,
    #[serde(default)]
    pub central_rank: usize,
}

fn default_isogeny() -> Isogeny {
    Isogeny::SimplyConnected
}

impl CartanSpec {
    pub fn new(series: Series, rank: usize, isogeny: Isogeny) -> Self {
        CartanSpec { series, rank, isogeny, central_rank: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.series.rank_is_valid(self.rank) {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "rank {} is not valid for series {}",
                self.rank, self.series
            )))
        }
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} ({})", self.series, self.rank, self.isogeny)?;
        if self.central_rank > 0 {
            write!(f, " x G_m^{}", self.central_rank)?;
        }
        Ok(())
    }
}

/// Which basis of the character lattice the matrices are written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisConvention {
    FundamentalWeights,
    SimpleRoots,
}

impl fmt::Display for BasisConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisConvention::FundamentalWeights => "fundamental-weights",
            BasisConvention::SimpleRoots => "simple-roots",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub spec: CartanSpec,
    /// Lattice rank: semisimple rank plus central rank.
    pub n: usize,
    pub basis: BasisConvention,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub cartan_matrix: Vec<Vec<i64>>,
}

/// Standard Cartan matrix, `a[i][j] = ⟨α_j, α_i^∨⟩`, Bourbaki numbering.
pub fn cartan_matrix(series: Series, rank: usize) -> Vec<Vec<i64>> {
    let r = rank;
    let mut a = vec![vec![0i64; r]; r];
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::F | Series::G => {
            for i in 0..r.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..r - 1 {
                link(i, i + 1);
            }
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match series {
        // α_n short
        Series::B => a[r - 1][r - 2] = -2,
        // α_n long
        Series::C => a[r - 2][r - 1] = -2,
        // α_3 short, α_2 long
        Series::F => a[2][1] = -2,
        // α_1 short
        Series::G => a[0][1] = -3,
        _ => {}
    }
    a
}

pub fn build_root_datum(spec: CartanSpec) -> Result<RootDatum> {
    spec.validate()?;
    let r = spec.rank;
    let n = r + spec.central_rank;
    let a = cartan_matrix(spec.series, r);
    let pad = |mut v: Vec<i64>| {
        v.resize(n, 0);
        v
    };
    let (basis, simple_roots, simple_coroots) = match spec.isogeny {
        Isogeny::SimplyConnected => {
            // α_j = Σ_k ⟨α_j, α_k^∨⟩ ω_k, coroots are the dual basis.
            let roots = (0..r).map(|j| pad((0..r).map(|k| a[k][j]).collect())).collect();
            let coroots = (0..r).map(|i| pad(unit(r, i))).collect();
            (BasisConvention::FundamentalWeights, roots, coroots)
        }
        Isogeny::Adjoint => {
            // α_i^∨ evaluated on the simple-root basis is row i of the Cartan matrix.
            let roots = (0..r).map(|j| pad(unit(r, j))).collect();
            let coroots = (0..r).map(|i| pad(a[i].clone())).collect();
            (BasisConvention::SimpleRoots, roots, coroots)
        }
    };
    Ok(RootDatum { spec, n, basis, simple_roots, simple_coroots, cartan_matrix: a })
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl RootDatum {
    pub fn semisimple_rank(&self) -> usize {
        self.spec.rank
    }

    /// `⟨x, α_i^∨⟩` for a character `x` written in the lattice basis.
    pub fn pair_with_coroot(&self, x: &[i64], i: usize) -> i64 {
        pairing(x, &self.simple_coroots[i])
    }

    /// Matrix of `σ_i(x) = x − ⟨x, α_i^∨⟩ α_i`, with `i` counted from 1.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        let r = self.semisimple_rank();
        if i == 0 || i > r {
            return Err(Error::IndexOutOfRange { index: i, rank: r });
        }
        Ok(WeylElement { matrix: self.reflection_matrix(i - 1), length: 1 })
    }

    fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let root = &self.simple_roots[i];
        let coroot = &self.simple_coroots[i];
        IntMatrix::from_fn(self.n, |row, col| {
            i64::from(row == col) - coroot[row] * root[col]
        })
    }

    /// All roots, as the orbit of the simple roots under the simple
    /// reflections, sorted.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let gens: Vec<_> = (0..self.semisimple_rank()).map(|i| self.reflection_matrix(i)).collect();
        let mut seen: std::collections::BTreeSet<Vec<i64>> = self.simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = seen.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for g in &gens {
                let w = g.act(&v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub length: usize,
}

/// The Weyl group as a complete list of matrices, ordered by
/// `(length, matrix entries)` so indices are reproducible.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    n: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<WeylElement>,
    inverse: Vec<usize>,
    index: HashMap<IntMatrix, usize>,
}

pub fn generate_weyl(datum: &RootDatum, limit: usize) -> Result<WeylGroup> {
    let r = datum.semisimple_rank();
    if r == 0 {
        return Err(Error::InvalidSpec("semisimple rank must be at least 1".into()));
    }
    if datum.spec.series.weyl_order(r) > limit as u128 {
        return Err(Error::GroupTooLarge { limit });
    }
    let gens: Vec<IntMatrix> = (0..r).map(|i| datum.reflection_matrix(i)).collect();

    // BFS from the identity; the layer is the word length.
    let id = IntMatrix::identity(datum.n);
    let mut mats = vec![id.clone()];
    let mut lengths = vec![0usize];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < mats.len() {
        for (g, s) in gens.iter().enumerate() {
            let y = mats[head].mul(s);
            if index.contains_key(&y) {
                continue;
            }
            if mats.len() >= limit {
                return Err(Error::GroupTooLarge { limit });
            }
            index.insert(y.clone(), mats.len());
            mats.push(y);
            lengths.push(lengths[head] + 1);
            parent.push(Some((head, g)));
        }
        head += 1;
    }

    // (x·s)^{-1} = s·x^{-1}; parents precede children in BFS order.
    let mut inverse = vec![0usize; mats.len()];
    for k in 1..mats.len() {
        let (p, g) = parent[k].expect("non-identity element has a parent");
        let inv = gens[g].mul(&mats[inverse[p]]);
        inverse[k] = index[&inv];
    }

    let mut order: Vec<usize> = (0..mats.len()).collect();
    order.sort_by(|&a, &b| (lengths[a], &mats[a]).cmp(&(lengths[b], &mats[b])));
    let mut new_pos = vec![0usize; mats.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_pos[old] = pos;
    }
    let elements: Vec<WeylElement> = order
        .iter()
        .map(|&old| WeylElement { matrix: mats[old].clone(), length: lengths[old] })
        .collect();
    let inverse = order.iter().map(|&old| new_pos[inverse[old]]).collect();
    let index = elements.iter().enumerate().map(|(i, e)| (e.matrix.clone(), i)).collect();

    Ok(WeylGroup { n: datum.n, generators: gens, elements, inverse, index })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of w₀. Elements are sorted by length, so it is the last one.
    pub fn longest_element(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn longest_length(&self) -> usize {
        self.elements[self.longest_element()].length
    }

    /// Number of elements of maximal length.
    pub fn maximal_length_count(&self) -> usize {
        let top = self.longest_length();
        self.elements.iter().filter(|e| e.length == top).count()
    }
}

/// Poincaré polynomial `Σ_w q^{ℓ(w)}`.
pub fn length_poly(w: &WeylGroup) -> IntPolynomial {
    let mut coeffs = vec![0i64; w.longest_length() + 1];
    for e in w.elements() {
        coeffs[e.length] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// Degrees of the basic invariants, ascending, followed by one `1` per
/// central direction.
///
/// The length polynomial is `∏ [d_i]_q`, so multiplying by `(1−q)^r` gives
/// `∏ (1 − q^{d_i})`, whose lowest non-constant term is `−m·q^{d_min}`.
/// Peeling off `1 − q^{d_min}` repeatedly recovers the multiset.
pub fn degrees(datum: &RootDatum, w: &WeylGroup) -> Result<Vec<usize>> {
    let r = datum.semisimple_rank();
    let one_minus_q = IntPolynomial::one_minus_q_pow(1);
    let mut rest = (0..r).fold(length_poly(w), |acc, _| &acc * &one_minus_q);
    let mut degs = Vec::with_capacity(datum.n);
    while rest != IntPolynomial::one() {
        if degs.len() >= r {
            return Err(Error::FactorizationFailed(format!(
                "more than {r} factors needed, leftover {rest}"
            )));
        }
        let Some(d) = (1..rest.coeffs().len()).find(|&k| rest.coeff(k) != 0) else {
            return Err(Error::FactorizationFailed(format!("leftover constant {rest}")));
        };
        if rest.coeff(d) > 0 {
            return Err(Error::FactorizationFailed(format!("positive lowest term in {rest}")));
        }
        rest = rest.div_exact(&IntPolynomial::one_minus_q_pow(d)).ok_or_else(|| {
            Error::FactorizationFailed(format!("1 - q^{d} does not divide {rest}"))
        })?;
        degs.push(d);
    }
    if degs.len() != r {
        return Err(Error::FactorizationFailed(format!(
            "found {} factors, expected {r}",
            degs.len()
        )));
    }
    degs.extend(std::iter::repeat_n(1, datum.spec.central_rank));
    Ok(degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(series: Series, rank: usize, iso: Isogeny) -> RootDatum {
        build_root_datum(CartanSpec::new(series, rank, iso)).unwrap()
    }

    fn group(series: Series, rank: usize) -> (RootDatum, WeylGroup) {
        let d = datum(series, rank, Isogeny::SimplyConnected);
        let w = generate_weyl(&d, DEFAULT_ELEMENT_LIMIT).unwrap();
        (d, w)
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(datum(Series::A, 1, Isogeny::SimplyConnected).cartan_matrix, vec![vec![2]]);
        assert_eq!(
            datum(Series::A, 2, Isogeny::SimplyConnected).cartan_matrix,
            vec![vec![2, -1], vec![-1, 2]]
        );
        // transpose of [[2,-1],[-3,2]]: α_1 is the short root
        assert_eq!(
            datum(Series::G, 2, Isogeny::Adjoint).cartan_matrix,
            vec![vec![2, -3], vec![-1, 2]]
        );
    }

    #[test]
    fn cartan_matrix_is_pairing_of_roots_and_coroots() {
        for (s, r) in [(Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::F, 4), (Series::E, 6)] {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let d = build_root_datum(CartanSpec { series: s, rank: r, isogeny: iso, central_rank: 1 })
                    .unwrap();
                for i in 0..r {
                    for j in 0..r {
                        assert_eq!(
                            d.pair_with_coroot(&d.simple_roots[j], i),
                            d.cartan_matrix[i][j],
                            "{s}{r} {iso} ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        for (s, r) in [(Series::A, 0), (Series::B, 1), (Series::D, 2), (Series::E, 5), (Series::F, 3), (Series::G, 3)] {
            assert!(matches!(
                build_root_datum(CartanSpec::new(s, r, Isogeny::SimplyConnected)),
                Err(Error::InvalidSpec(_))
            ));
        }
    }

    #[test]
    fn simple_reflections() {
        let a1 = datum(Series::A, 1, Isogeny::SimplyConnected);
        assert_eq!(a1.simple_reflection(1).unwrap().matrix.rows(), vec![vec![-1]]);
        let a2 = datum(Series::A, 2, Isogeny::SimplyConnected);
        assert_eq!(a2.simple_reflection(1).unwrap().matrix.rows(), vec![vec![-1, 1], vec![0, 1]]);
        assert_eq!(a2.simple_reflection(3), Err(Error::IndexOutOfRange { index: 3, rank: 2 }));
        assert!(a2.simple_reflection(0).is_err());
        let f4 = datum(Series::F, 4, Isogeny::Adjoint);
        for i in 1..=4 {
            let s = f4.simple_reflection(i).unwrap().matrix;
            assert!(s.is_involution());
            assert_eq!(s.sub(&IntMatrix::identity(4)).rank(), 1);
        }
    }

    #[test]
    fn group_orders() {
        for (s, r, ord) in [(Series::A, 1, 2), (Series::A, 2, 6), (Series::B, 2, 8), (Series::G, 2, 12), (Series::F, 4, 1152)] {
            assert_eq!(group(s, r).1.order(), ord, "{s}{r}");
        }
    }

    #[test]
    fn length_polynomials() {
        assert_eq!(length_poly(&group(Series::A, 1).1).coeffs(), &[1, 1]);
        assert_eq!(length_poly(&group(Series::A, 2).1).coeffs(), &[1, 2, 2, 1]);
        assert_eq!(length_poly(&group(Series::B, 2).1).coeffs(), &[1, 2, 2, 2, 1]);
    }

    #[test]
    fn degree_factorization() {
        let cases: [(Series, usize, &[usize]); 5] = [
            (Series::A, 1, &[2]),
            (Series::A, 2, &[2, 3]),
            (Series::G, 2, &[2, 6]),
            (Series::B, 3, &[2, 4, 6]),
            (Series::D, 4, &[2, 4, 4, 6]),
        ];
        for (s, r, expected) in cases {
            let (d, w) = group(s, r);
            assert_eq!(degrees(&d, &w).unwrap(), expected, "{s}{r}");
        }
    }

    #[test]
    fn central_directions_get_degree_one() {
        let d = build_root_datum(CartanSpec {
            series: Series::A,
            rank: 2,
            isogeny: Isogeny::Adjoint,
            central_rank: 2,
        })
        .unwrap();
        let w = generate_weyl(&d, DEFAULT_ELEMENT_LIMIT).unwrap();
        assert_eq!(d.n, 4);
        assert_eq!(w.order(), 6);
        assert_eq!(degrees(&d, &w).unwrap(), vec![2, 3, 1, 1]);
    }

    #[test]
    fn inverses_and_longest_element() {
        let (_, w) = group(Series::B, 3);
        for i in 0..w.order() {
            let prod = w.element(i).matrix.mul(&w.element(w.inverse_of(i)).matrix);
            assert!(prod.is_identity());
        }
        assert_eq!(w.maximal_length_count(), 1);
        assert_eq!(w.longest_length(), 9);
        assert!(w.element(0).matrix.is_identity());
    }

    #[test]
    fn limit_enforced() {
        let d = datum(Series::E, 7, Isogeny::SimplyConnected);
        assert_eq!(generate_weyl(&d, DEFAULT_ELEMENT_LIMIT).unwrap_err(), Error::GroupTooLarge { limit: 60_000 });
        let d = datum(Series::A, 4, Isogeny::SimplyConnected);
        assert!(matches!(generate_weyl(&d, 100), Err(Error::GroupTooLarge { limit: 100 })));
    }

    #[test]
    fn spec_json() {
        let s: CartanSpec = serde_json::from_str(r#"{"series":"A","rank":2,"isogeny":"sc","central_rank":0}"#).unwrap();
        assert_eq!(s, CartanSpec::new(Series::A, 2, Isogeny::SimplyConnected));
        let s: CartanSpec = serde_json::from_str(r#"{"series":"G","rank":2,"isogeny":"adjoint"}"#).unwrap();
        assert_eq!(s.isogeny, Isogeny::Adjoint);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"series":"G","rank":2,"isogeny":"adj","central_rank":0}"#);
    }
}
