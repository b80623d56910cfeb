//! Grothendieck–Witt rings of a few field classes.
//!
//! An element is a virtual sum `Σ n_t ⟨t⟩` over square classes `t`, kept in
//! a normal form that depends on the field:
//!
//! * algebraically closed: only `⟨1⟩`, so `GW = Z` via the rank;
//! * real closed: `⟨1⟩` and `⟨−1⟩` are a Z-basis, `GW = Z[ε]/(ε² − 1)`;
//! * finite, odd: `2⟨u⟩ = 2⟨1⟩`, so the coefficient of `⟨u⟩` is reduced to
//!   0 or 1 and equality is equality of (rank, discriminant);
//! * rationals: free on square-free integers with cancellation only. This is
//!   not a decision procedure for equality in `GW(Q)`; only rank and the
//!   archimedean signature are meaningful there.

mod expr;
mod field;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use expr::parse_expression;
pub use field::{prime_power, square_free_part, FieldDescriptor, SquareClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GwElement {
    field: FieldDescriptor,
    terms: BTreeMap<SquareClass, i64>,
}

impl GwElement {
    pub fn zero(field: FieldDescriptor) -> Self {
        GwElement { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_class(field, SquareClass::ONE, 1)
    }

    /// `mult·⟨class⟩`. The class must already be normalized for `field`.
    pub fn from_class(field: FieldDescriptor, class: SquareClass, mult: i64) -> Self {
        assert!(field.admits(class), "{class} is not a square class of {field}");
        let mut e = Self::zero(field);
        e.terms.insert(class, mult);
        e.normalize();
        e
    }

    /// The diagonal form `⟨a_1, …, a_k⟩` for nonzero integers `a_i`.
    pub fn diagonal(field: FieldDescriptor, entries: &[i64]) -> Result<Self> {
        let mut e = Self::zero(field);
        for &a in entries {
            *e.terms.entry(field.square_class(a)?).or_insert(0) += 1;
        }
        e.normalize();
        Ok(e)
    }

    /// `⟨1⟩ + ⟨−1⟩`
    pub fn hyperbolic(field: FieldDescriptor) -> Self {
        Self::diagonal(field, &[1, -1]).expect("±1 are units in every supported field")
    }

    /// Builds `a⟨1⟩ + b⟨−1⟩` with `a = (rank + sgn)/2`, `b = (rank − sgn)/2`
    /// over a formally real field.
    pub fn from_rank_sgn(field: FieldDescriptor, rank: i64, sgn: i64) -> Result<Self> {
        if !field.is_formally_real() {
            return Err(Error::InvalidField(format!("{field} has no ordering")));
        }
        if (rank - sgn).rem_euclid(2) != 0 {
            return Err(Error::ParityViolation { rank, sgn });
        }
        let mut e = Self::zero(field);
        e.terms.insert(SquareClass::ONE, (rank + sgn) / 2);
        e.terms.insert(SquareClass::Int(-1), (rank - sgn) / 2);
        e.normalize();
        Ok(e)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// Nonzero coefficients in class order.
    pub fn terms(&self) -> impl Iterator<Item = (SquareClass, i64)> + '_ {
        self.terms.iter().map(|(&c, &n)| (c, n))
    }

    fn normalize(&mut self) {
        if let FieldDescriptor::FiniteOdd { .. } = self.field {
            let nu = self.terms.get(&SquareClass::NonSquare).copied().unwrap_or(0);
            let kept = nu.rem_euclid(2);
            if nu != kept {
                self.terms.insert(SquareClass::NonSquare, kept);
                *self.terms.entry(SquareClass::ONE).or_insert(0) += nu - kept;
            }
        }
        self.terms.retain(|_, n| *n != 0);
    }

    fn check_field(&self, other: &GwElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() })
        }
    }

    pub fn add(&self, other: &GwElement) -> Result<GwElement> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (&c, &n) in &other.terms {
            *out.terms.entry(c).or_insert(0) += n;
        }
        out.normalize();
        Ok(out)
    }

    pub fn neg(&self) -> GwElement {
        GwElement {
            field: self.field,
            terms: self.terms.iter().map(|(&c, &n)| (c, -n)).collect(),
        }
    }

    pub fn sub(&self, other: &GwElement) -> Result<GwElement> {
        self.add(&other.neg())
    }

    /// Tensor product, `⟨a⟩⊗⟨b⟩ = ⟨ab⟩`.
    pub fn mul(&self, other: &GwElement) -> Result<GwElement> {
        self.check_field(other)?;
        let mut out = Self::zero(self.field);
        for (&a, &m) in &self.terms {
            for (&b, &n) in &other.terms {
                *out.terms.entry(self.field.mul_classes(a, b)).or_insert(0) += m * n;
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> GwElement {
        let mut out = GwElement {
            field: self.field,
            terms: self.terms.iter().map(|(&c, &n)| (c, k * n)).collect(),
        };
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// One signature per ordering; empty unless the field is formally real.
    pub fn signatures(&self) -> Vec<i64> {
        if !self.field.is_formally_real() {
            return Vec::new();
        }
        let sgn = self
            .terms
            .iter()
            .map(|(&c, &n)| self.field.sign(c).expect("formally real class has a sign") * n)
            .sum();
        vec![sgn]
    }

    /// Plain (unsigned) discriminant: product of all diagonal entries as a
    /// square class. Classes are their own inverses, so negative
    /// coefficients count like positive ones.
    pub fn discriminant(&self) -> SquareClass {
        self.terms
            .iter()
            .filter(|(_, n)| n.rem_euclid(2) == 1)
            .fold(SquareClass::ONE, |acc, (&c, _)| self.field.mul_classes(acc, c))
    }

    pub fn invariants(&self) -> GwInvariants {
        GwInvariants {
            rank: self.rank(),
            signatures: self.signatures(),
            disc: self.discriminant(),
        }
    }

    /// Positive part as a multiset of classes.
    pub fn pos(&self) -> Vec<SquareClass> {
        self.expand(|n| n > 0)
    }

    /// Negative part as a multiset of classes.
    pub fn neg_part(&self) -> Vec<SquareClass> {
        self.expand(|n| n < 0)
    }

    fn expand(&self, keep: impl Fn(i64) -> bool) -> Vec<SquareClass> {
        self.terms
            .iter()
            .filter(|(_, &n)| keep(n))
            .flat_map(|(&c, &n)| std::iter::repeat_n(c, n.unsigned_abs() as usize))
            .collect()
    }

    /// Unit test by rank (and signature, when there is an ordering).
    ///
    /// Over a field that is not formally real the kernel of the rank is the
    /// nilradical, so `rank = ±1` suffices. Over a real closed field the units
    /// of `Z[ε]/(ε² − 1)` are `±1, ±ε`, which are exactly the elements with
    /// `rank, sgn ∈ {±1}`. Over the rationals an element is a unit iff it is
    /// one at every real closure; there is exactly one.
    pub fn is_unit(&self) -> UnitVerdict {
        let rank_ok = self.rank().abs() == 1;
        let sig_ok = self.signatures().iter().all(|s| s.abs() == 1);
        let justification = match self.field {
            FieldDescriptor::AlgClosed { .. } | FieldDescriptor::FiniteOdd { .. } => Justification::RankCriterion,
            FieldDescriptor::RealClosed => Justification::RealClosedExact,
            FieldDescriptor::Rational => Justification::AllOrderings,
        };
        UnitVerdict { is_unit: rank_ok && sig_ok, justification }
    }
}

impl fmt::Display for GwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, n)) in self.terms.iter().enumerate() {
            let mag = n.unsigned_abs();
            match (i, *n < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "<{c}>")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    field: FieldDescriptor,
    pos: Vec<SquareClass>,
    neg: Vec<SquareClass>,
}

impl Serialize for GwElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawElement { field: self.field, pos: self.pos(), neg: self.neg_part() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GwElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawElement::deserialize(d)?;
        let mut e = GwElement::zero(raw.field);
        for (list, sign) in [(&raw.pos, 1), (&raw.neg, -1)] {
            for &c in list {
                if !raw.field.admits(c) {
                    return Err(serde::de::Error::custom(format!("{c} is not a square class of {}", raw.field)));
                }
                *e.terms.entry(c).or_insert(0) += sign;
            }
        }
        e.normalize();
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GwInvariants {
    pub rank: i64,
    pub signatures: Vec<i64>,
    pub disc: SquareClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Not formally real: rank ±1 forces a unit.
    RankCriterion,
    /// Exact computation in `Z[ε]/(ε² − 1)`.
    RealClosedExact,
    /// Unit at every real closure plus the rank criterion.
    AllOrderings,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::RankCriterion => "rank-criterion",
            Justification::RealClosedExact => "real-closed-exact",
            Justification::AllOrderings => "all-orderings",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitVerdict {
    pub is_unit: bool,
    pub justification: Justification,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const R: FieldDescriptor = FieldDescriptor::RealClosed;

    fn diag(f: FieldDescriptor, e: &[i64]) -> GwElement {
        GwElement::diagonal(f, e).unwrap()
    }

    #[test]
    fn epsilon_squared_is_one() {
        let eps = diag(R, &[-1]);
        assert_eq!(eps.mul(&eps).unwrap(), GwElement::one(R));
    }

    #[test]
    fn unit_laws() {
        for f in [R, FieldDescriptor::Rational, FieldDescriptor::finite(5).unwrap(), FieldDescriptor::alg_closed(0).unwrap()] {
            let q = diag(f, &[1, 2, 3]);
            assert_eq!(q.add(&GwElement::zero(f)).unwrap(), q);
            assert_eq!(q.mul(&GwElement::one(f)).unwrap(), q);
        }
    }

    #[test]
    fn finite_field_minus_one_is_u() {
        let f = FieldDescriptor::finite(7).unwrap();
        assert_eq!(diag(f, &[-1]), GwElement::from_class(f, SquareClass::NonSquare, 1));
        // 2<u> = 2<1>
        assert_eq!(diag(f, &[3, 3]), diag(f, &[1, 1]));
        let f5 = FieldDescriptor::finite(5).unwrap();
        assert_eq!(diag(f5, &[-1]), GwElement::one(f5));
    }

    #[test]
    fn invariants_examples() {
        let h = diag(R, &[1, -1]);
        assert_eq!(h.invariants(), GwInvariants { rank: 2, signatures: vec![0], disc: SquareClass::Int(-1) });

        let q = FieldDescriptor::Rational;
        let e = diag(q, &[2, 3]).sub(&diag(q, &[6])).unwrap();
        assert_eq!(e.invariants(), GwInvariants { rank: 1, signatures: vec![1], disc: SquareClass::ONE });

        let c = FieldDescriptor::alg_closed(0).unwrap();
        let k = diag(c, &[1, 1, 1, 1]);
        assert_eq!(k.invariants(), GwInvariants { rank: 4, signatures: vec![], disc: SquareClass::ONE });
    }

    #[test]
    fn unit_examples() {
        assert!(GwElement::one(R).is_unit().is_unit);
        assert!(!GwElement::hyperbolic(R).is_unit().is_unit);
        let eps = diag(R, &[-1]);
        assert!(eps.is_unit().is_unit);
        assert_eq!(eps.is_unit().justification, Justification::RealClosedExact);
        let f = FieldDescriptor::finite(3).unwrap();
        let v = diag(f, &[1, 1, -1]).sub(&diag(f, &[1, 1])).unwrap();
        assert_eq!(v.is_unit(), UnitVerdict { is_unit: true, justification: Justification::RankCriterion });
        // rank 1 but signature 3 - 2·... : 2<1> - <-1> has rank 1, sgn 3
        let w = diag(R, &[1, 1]).sub(&diag(R, &[-1])).unwrap();
        assert!(!w.is_unit().is_unit);
    }

    #[test]
    fn from_rank_sgn_examples() {
        assert_eq!(GwElement::from_rank_sgn(R, 1, 1).unwrap(), GwElement::one(R));
        assert_eq!(GwElement::from_rank_sgn(R, 2, 0).unwrap(), GwElement::hyperbolic(R));
        assert!(GwElement::from_rank_sgn(R, 0, 0).unwrap().is_zero());
        let virt = GwElement::from_rank_sgn(R, 0, 2).unwrap();
        assert_eq!(virt.pos(), vec![SquareClass::ONE]);
        assert_eq!(virt.neg_part(), vec![SquareClass::Int(-1)]);
        assert_eq!(GwElement::from_rank_sgn(R, 1, 0), Err(Error::ParityViolation { rank: 1, sgn: 0 }));
        assert!(GwElement::from_rank_sgn(FieldDescriptor::finite(5).unwrap(), 1, 1).is_err());
    }

    #[test]
    fn field_mismatch() {
        let a = GwElement::one(R);
        let b = GwElement::one(FieldDescriptor::Rational);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn json_shape() {
        let f = FieldDescriptor::finite(7).unwrap();
        let e = diag(f, &[1, 3]).sub(&diag(f, &[1, 1, 1])).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v, serde_json::json!({"field": "finite:7", "pos": ["u"], "neg": [1, 1]}));
        let back: GwElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
        let bad = serde_json::json!({"field": "real-closed", "pos": [2], "neg": []});
        assert!(serde_json::from_value::<GwElement>(bad).is_err());
    }

    fn field_strategy() -> impl Strategy<Value = FieldDescriptor> {
        prop_oneof![
            Just(FieldDescriptor::RealClosed),
            Just(FieldDescriptor::Rational),
            Just(FieldDescriptor::FiniteOdd { q: 5 }),
            Just(FieldDescriptor::FiniteOdd { q: 7 }),
            Just(FieldDescriptor::FiniteOdd { q: 9 }),
            Just(FieldDescriptor::AlgClosed { characteristic: 0 }),
        ]
    }

    fn element(f: FieldDescriptor) -> impl Strategy<Value = GwElement> {
        let entry = prop_oneof![-12i64..-1, 1i64..12].prop_filter("unit mod 3, 5, 7", |a| a % 3 != 0 && a % 5 != 0 && a % 7 != 0);
        (prop::collection::vec(entry.clone(), 0..4), prop::collection::vec(entry, 0..4)).prop_map(
            move |(p, n)| {
                GwElement::diagonal(f, &p).unwrap().sub(&GwElement::diagonal(f, &n).unwrap()).unwrap()
            },
        )
    }

    fn triple() -> impl Strategy<Value = (GwElement, GwElement, GwElement)> {
        field_strategy().prop_flat_map(|f| (element(f), element(f), element(f)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        }

        #[test]
        fn disc_is_multiplicative_over_sums((a, b, _c) in triple()) {
            let f = a.field();
            prop_assert_eq!(a.add(&b).unwrap().discriminant(), f.mul_classes(a.discriminant(), b.discriminant()));
        }

        #[test]
        fn unit_times_b((a, b, _c) in triple()) {
            if a.is_unit().is_unit {
                prop_assert_eq!(a.mul(&b).unwrap().is_unit().is_unit, b.is_unit().is_unit);
            }
        }

        #[test]
        fn json_roundtrip((a, _b, _c) in triple()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<GwElement>(&s).unwrap(), a);
        }
    }
}
