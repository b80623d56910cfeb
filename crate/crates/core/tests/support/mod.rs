#![allow(dead_code)]

pub mod oracle;

use chi_torus::root_datum::{build_root_datum, generate_weyl, CartanSpec, Isogeny, RootDatum, Series, WeylGroup, DEFAULT_ELEMENT_LIMIT};

pub const TESTED_TYPES: [(Series, usize); 11] = [
    (Series::A, 1),
    (Series::A, 2),
    (Series::A, 3),
    (Series::A, 4),
    (Series::B, 2),
    (Series::B, 3),
    (Series::C, 2),
    (Series::C, 3),
    (Series::D, 4),
    (Series::G, 2),
    (Series::F, 4),
];

pub const ISOGENIES: [Isogeny; 2] = [Isogeny::SimplyConnected, Isogeny::Adjoint];

pub fn all_specs() -> Vec<CartanSpec> {
    TESTED_TYPES
        .iter()
        .flat_map(|&(s, r)| ISOGENIES.iter().map(move |&iso| CartanSpec::new(s, r, iso)))
        .collect()
}

pub fn setup(spec: CartanSpec) -> (RootDatum, WeylGroup) {
    let d = build_root_datum(spec).unwrap();
    let w = generate_weyl(&d, DEFAULT_ELEMENT_LIMIT).unwrap();
    (d, w)
}

use chi_torus::linalg::IntMatrix;
use rand::Rng;

/// Random unimodular matrix with its inverse, as a product of elementary
/// transvections and sign changes.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut g = IntMatrix::identity(n);
    let mut g_inv = IntMatrix::identity(n);
    for _ in 0..steps {
        if n == 1 || rng.gen_bool(0.2) {
            let i = rng.gen_range(0..n);
            let mut e = IntMatrix::identity(n);
            e.set(i, i, -1);
            g = e.mul(&g);
            g_inv = g_inv.mul(&e);
            continue;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(n);
        e.set(i, j, eps);
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, -eps);
        g = e.mul(&g);
        g_inv = g_inv.mul(&e_inv);
    }
    (g, g_inv)
}

/// Random involution `g·D·g⁻¹` with `D` block diagonal in the three
/// indecomposables, together with the block counts `(s, a, c)`.
pub fn random_involution<R: Rng>(rng: &mut R, n: usize) -> (IntMatrix, (usize, usize, usize)) {
    let c = rng.gen_range(0..=n / 2);
    let a = rng.gen_range(0..=n - 2 * c);
    let s = n - 2 * c - a;
    let mut d = IntMatrix::zero(n);
    let mut k = 0;
    for _ in 0..s {
        d.set(k, k, 1);
        k += 1;
    }
    for _ in 0..a {
        d.set(k, k, -1);
        k += 1;
    }
    for _ in 0..c {
        d.set(k, k + 1, 1);
        d.set(k + 1, k, 1);
        k += 2;
    }
    let (g, g_inv) = random_unimodular(rng, n, 3 * n + 2);
    (g.mul(&d).mul(&g_inv), (s, a, c))
}
