mod support;

use chi_torus::coinvariants::FakeDegreeTable;
use chi_torus::linalg::IntMatrix;
use chi_torus::root_datum::{degrees, CartanSpec, Isogeny, Series};
use support::oracle::{coinvariant_oracle, monomials, Q};

#[test]
fn monomial_counts() {
    assert_eq!(monomials(2, 3).len(), 4);
    assert_eq!(monomials(3, 2).len(), 6);
    assert_eq!(monomials(1, 5), vec![vec![5]]);
}

fn check(series: Series, rank: usize, iso: Isogeny) {
    let (d, w) = support::setup(CartanSpec::new(series, rank, iso));
    let degs = degrees(&d, &w).unwrap();
    let table = FakeDegreeTable::build(&d, &w, &degs).unwrap();
    let mats: Vec<IntMatrix> = w.elements().iter().map(|e| e.matrix.clone()).collect();
    let top = w.longest_length();
    let oracle = coinvariant_oracle(&mats, top);

    assert_eq!(oracle.dims[top + 1], 0, "{series}{rank}: quotient does not stop at ℓ(w₀)");
    assert_eq!(oracle.dims.iter().sum::<usize>(), w.order());
    for (i, p) in table.polys.iter().enumerate() {
        for k in 0..=top + 1 {
            assert_eq!(
                oracle.traces[i][k],
                Q::from_integer(p.coeff(k) as i128),
                "{series}{rank} {iso}: element {i}, degree {k}"
            );
        }
    }
}

#[test]
fn a1_matches_oracle() {
    check(Series::A, 1, Isogeny::SimplyConnected);
}

#[test]
fn a2_matches_oracle() {
    check(Series::A, 2, Isogeny::SimplyConnected);
    check(Series::A, 2, Isogeny::Adjoint);
}

#[test]
fn b2_matches_oracle() {
    check(Series::B, 2, Isogeny::SimplyConnected);
}

#[test]
fn g2_matches_oracle() {
    check(Series::G, 2, Isogeny::Adjoint);
}
