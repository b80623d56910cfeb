//! Real tori as lattices with an involution, and the compact-rank census of
//! the maximal tori of a real form.
//!
//! A real torus is determined by its character lattice with the action `τ`
//! of complex conjugation. Every such lattice splits into copies of three
//! indecomposables: trivial (`G_m`, split), sign (`S¹`, anisotropic) and the
//! swap of two coordinates (`Res_{C/R} G_m`). With
//!
//! * `r⁺ = dim ker(τ − 1)`, `r⁻ = dim ker(τ + 1)` over Q,
//! * `c = rank_{F_2}(τ + 1)`,
//!
//! the multiplicities are `s = r⁺ − c`, `a = r⁻ − c`, and `c`. The compact
//! rank is `a + c = r⁻`.
//!
//! Maximal tori of the split form are enumerated as W-conjugacy classes of
//! elements `τ` with `τ² = 1`. The unique class of maximal compact rank
//! contributes Euler characteristic 1, every other class 0.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::root_datum::{generate_weyl, RootDatum, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisTorus {
    tau: IntMatrix,
}

impl GaloisTorus {
    pub fn new(tau: IntMatrix) -> Result<Self> {
        if tau.is_involution() {
            Ok(GaloisTorus { tau })
        } else {
            Err(Error::NotInvolution)
        }
    }

    pub fn rank(&self) -> usize {
        self.tau.dim()
    }

    pub fn tau(&self) -> &IntMatrix {
        &self.tau
    }

    pub fn decompose(&self) -> TorusDecomposition {
        let n = self.rank();
        let id = IntMatrix::identity(n);
        let plus = n - self.tau.sub(&id).rank();
        let tau_plus_one = self.tau.add(&id);
        let minus = n - tau_plus_one.rank();
        let c = tau_plus_one.rank_mod2();
        TorusDecomposition { s: plus - c, a: minus - c, c }
    }

    pub fn compact_rank(&self) -> usize {
        self.decompose().compact_rank()
    }
}

/// Multiplicities of the split, anisotropic and Weil-restriction summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusDecomposition {
    pub s: usize,
    pub a: usize,
    pub c: usize,
}

impl TorusDecomposition {
    pub fn rank(&self) -> usize {
        self.s + self.a + 2 * self.c
    }

    pub fn compact_rank(&self) -> usize {
        self.a + self.c
    }
}

pub fn decompose_torus(tau: &IntMatrix) -> Result<TorusDecomposition> {
    Ok(GaloisTorus::new(tau.clone())?.decompose())
}

pub fn compact_rank(tau: &IntMatrix) -> Result<usize> {
    Ok(GaloisTorus::new(tau.clone())?.compact_rank())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionClass {
    /// Smallest member in the group's element order (times the twist).
    #[serde(rename = "rep")]
    pub representative: IntMatrix,
    /// Index in the Weyl group of the untwisted factor of the representative.
    #[serde(skip)]
    pub rep_index: usize,
    #[serde(rename = "size")]
    pub class_size: usize,
    #[serde(flatten)]
    pub decomposition: TorusDecomposition,
    #[serde(rename = "rk_c")]
    pub compact_rank: usize,
}

/// Classes of `θ = twist·w` with `θ² = 1` under conjugation by `W`.
///
/// The twist must square to the identity and normalize `W`; without one the
/// split form is enumerated.
pub fn involution_classes(w: &WeylGroup, outer_twist: Option<&IntMatrix>) -> Result<Vec<InvolutionClass>> {
    let n = w.lattice_rank();
    let twist = match outer_twist {
        Some(t) => {
            validate_twist(w, t)?;
            t.clone()
        }
        None => IntMatrix::identity(n),
    };

    // candidate index (into W) -> class id
    let candidates: Vec<(usize, IntMatrix)> = w
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (i, twist.mul(&e.matrix)))
        .filter(|(_, m)| m.is_involution())
        .collect();
    let lookup: HashMap<&IntMatrix, usize> = candidates.iter().enumerate().map(|(k, (_, m))| (m, k)).collect();
    let mut class_of = vec![usize::MAX; candidates.len()];
    let mut classes = Vec::new();

    for k in 0..candidates.len() {
        if class_of[k] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let theta = &candidates[k].1;
        let mut size = 0;
        for v in 0..w.order() {
            let conj = w.element(v).matrix.mul(theta).mul(&w.element(w.inverse_of(v)).matrix);
            let j = *lookup
                .get(&conj)
                .expect("conjugate of a twisted involution is a twisted involution");
            if class_of[j] == usize::MAX {
                class_of[j] = id;
                size += 1;
            }
        }
        let decomposition = GaloisTorus::new(theta.clone())?.decompose();
        classes.push(InvolutionClass {
            representative: theta.clone(),
            rep_index: candidates[k].0,
            class_size: size,
            compact_rank: decomposition.compact_rank(),
            decomposition,
        });
    }
    Ok(classes)
}

fn validate_twist(w: &WeylGroup, t: &IntMatrix) -> Result<()> {
    if t.dim() != w.lattice_rank() {
        return Err(Error::InvalidTwist(format!("dimension {} != {}", t.dim(), w.lattice_rank())));
    }
    if !t.is_involution() {
        return Err(Error::InvalidTwist("twist does not square to the identity".into()));
    }
    for s in w.generators() {
        if !w.contains(&t.mul(s).mul(t)) {
            return Err(Error::InvalidTwist("twist does not normalize the Weyl group".into()));
        }
    }
    Ok(())
}

/// Euler characteristic of the orbit of tori in a class: 1 when the class
/// attains the maximal compact rank, 0 otherwise.
pub fn orbit_chi(class: &InvolutionClass, max_compact_rank: usize) -> i64 {
    i64::from(class.compact_rank == max_compact_rank)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusMode {
    /// Split real form, all involution classes.
    Split,
    /// Compact form: the only torus class is that of `−1` when it lies in
    /// `W`, otherwise the class of maximal compact rank.
    Compact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    #[serde(flatten)]
    pub class: InvolutionClass,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToriReport {
    pub mode: TorusMode,
    pub classes: Vec<ClassEntry>,
    #[serde(rename = "rk_c_G")]
    pub max_compact_rank: usize,
    pub maximizer_count: usize,
    pub involution_count: usize,
    pub total_chi: i64,
}

impl ToriReport {
    pub fn orbit_chis(&self) -> Vec<i64> {
        self.classes.iter().map(|c| c.chi).collect()
    }

    fn assemble(mode: TorusMode, classes: Vec<InvolutionClass>) -> Result<Self> {
        let max_compact_rank = classes.iter().map(|c| c.compact_rank).max().unwrap_or(0);
        let maximizer_count = classes.iter().filter(|c| c.compact_rank == max_compact_rank).count();
        if maximizer_count != 1 {
            return Err(Error::NonUniqueMaximizer { count: maximizer_count });
        }
        let involution_count = classes.iter().map(|c| c.class_size).sum();
        let classes: Vec<ClassEntry> = classes
            .into_iter()
            .map(|class| {
                let chi = orbit_chi(&class, max_compact_rank);
                ClassEntry { class, chi }
            })
            .collect();
        let total_chi = classes.iter().map(|c| c.chi).sum();
        Ok(ToriReport { mode, classes, max_compact_rank, maximizer_count, involution_count, total_chi })
    }
}

pub fn tori_report(datum: &RootDatum, limit: usize) -> Result<ToriReport> {
    let w = generate_weyl(datum, limit)?;
    tori_report_for(&w, TorusMode::Split)
}

pub fn tori_report_for(w: &WeylGroup, mode: TorusMode) -> Result<ToriReport> {
    let classes = involution_classes(w, None)?;
    match mode {
        TorusMode::Split => ToriReport::assemble(mode, classes),
        TorusMode::Compact => {
            let minus_one = IntMatrix::identity(w.lattice_rank()).neg();
            let pick = match classes.iter().position(|c| c.representative == minus_one) {
                Some(i) => i,
                None => {
                    let top = classes.iter().map(|c| c.compact_rank).max().unwrap_or(0);
                    let hits: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].compact_rank == top).collect();
                    if hits.len() != 1 {
                        return Err(Error::NonUniqueMaximizer { count: hits.len() });
                    }
                    hits[0]
                }
            };
            ToriReport::assemble(mode, vec![classes[pick].clone()])
        }
    }
}

/// Signature of the Euler characteristic of `G/N`: the topological Euler
/// characteristic of its real points, summed over torus classes.
pub fn sgn_euler(datum: &RootDatum, limit: usize) -> Result<i64> {
    Ok(tori_report(datum, limit)?.total_chi)
}
