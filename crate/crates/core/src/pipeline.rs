//! End-to-end certification for one group over one field class: rank from
//! the coinvariant algebra, signature from the real torus census, the
//! resulting Grothendieck–Witt class and its unit verdict.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::coinvariants::{flag_euler, CohomologyReport};
use crate::error::Result;
use crate::gw::{FieldDescriptor, GwElement, GwInvariants, Justification};
use crate::root_datum::{build_root_datum, generate_weyl, BasisConvention, CartanSpec, DEFAULT_ELEMENT_LIMIT};
use crate::tori::{tori_report_for, TorusMode};

pub const SCHEMA_VERSION: u32 = 1;

/// Which case of the main statement covers the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremClause {
    /// Characteristic zero: the class itself is a unit.
    #[serde(rename = "char0")]
    Char0,
    /// Characteristic `p`: the class with `Z[1/p]` coefficients is a unit.
    #[serde(rename = "charp-inverted")]
    CharpInverted,
    /// Characteristic `p`, integral coefficients; needs strong
    /// dualizability of `G/N`, which is not checked here.
    #[serde(rename = "charp-dualizable")]
    CharpDualizable,
}

impl TheoremClause {
    pub fn for_field(field: &FieldDescriptor) -> Self {
        if field.characteristic() == 0 {
            TheoremClause::Char0
        } else {
            TheoremClause::CharpInverted
        }
    }

    pub fn note(&self, field: &FieldDescriptor) -> String {
        match self {
            TheoremClause::Char0 => "characteristic 0: the Euler characteristic is a unit of GW(k)".into(),
            TheoremClause::CharpInverted | TheoremClause::CharpDualizable => format!(
                "characteristic {p}: unit of GW(k)[1/{p}]; integrally a unit if G/N is strongly dualizable (not checked)",
                p = field.characteristic()
            ),
        }
    }
}

impl fmt::Display for TheoremClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremClause::Char0 => "char0",
            TheoremClause::CharpInverted => "charp-inverted",
            TheoremClause::CharpDualizable => "charp-dualizable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: &'static str,
    pub millis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub limit: usize,
    /// Record per-stage wall time. Off by default so that reports are
    /// byte-for-byte reproducible.
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { limit: DEFAULT_ELEMENT_LIMIT, timings: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    pub schema: u32,
    pub spec: CartanSpec,
    pub field: FieldDescriptor,
    pub basis: BasisConvention,
    pub weyl_order: usize,
    pub degrees: Vec<usize>,
    pub rank_chi: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sgn_chi: Option<i64>,
    /// `(χ(G/B), χ(G/B)/|W|)`
    pub flag_euler: (i64, i64),
    pub gw_element: GwElement,
    pub invariants: GwInvariants,
    pub is_unit: bool,
    pub justification: Justification,
    pub theorem_clause: TheoremClause,
    pub clause_note: String,
    pub splitting_principle_applies: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Clock {
    enabled: bool,
    last: Instant,
    stages: Vec<StageTiming>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock { enabled, last: Instant::now(), stages: Vec::new() }
    }

    fn lap(&mut self, stage: &'static str) {
        if self.enabled {
            let now = Instant::now();
            self.stages.push(StageTiming { stage, millis: (now - self.last).as_secs_f64() * 1e3 });
            self.last = now;
        }
    }
}

pub fn compute_report(spec: CartanSpec, field: FieldDescriptor, opts: &ReportOptions) -> Result<EulerReport> {
    let mut clock = Clock::new(opts.timings);
    let datum = build_root_datum(spec)?;
    let w = generate_weyl(&datum, opts.limit)?;
    clock.lap("weyl");

    let coh = CohomologyReport::compute(&datum, &w)?;
    let rank_chi = coh.rank_euler;
    let flag = flag_euler(&w);
    clock.lap("coinvariants");

    let mut violations = Vec::new();
    if rank_chi != 1 {
        violations.push(format!("rank of the Euler characteristic is {rank_chi}, expected 1"));
    }
    if coh.invariant_dims.iter().skip(1).any(|&d| d != 0) || coh.invariant_dims.first() != Some(&1) {
        violations.push(format!("graded invariants {:?} are not [1, 0, ...]", coh.invariant_dims));
    }
    if !coh.regular_representation {
        violations.push("coinvariant algebra is not the regular representation".into());
    }
    if flag.1 != rank_chi {
        violations.push(format!("flag manifold covering gives {}, rank gives {rank_chi}", flag.1));
    }

    let (sgn_chi, gw_element) = if field.is_formally_real() {
        let tori = tori_report_for(&w, TorusMode::Split)?;
        clock.lap("tori");
        let sgn = tori.total_chi;
        if sgn != 1 {
            violations.push(format!("signature of the Euler characteristic is {sgn}, expected 1"));
        }
        (Some(sgn), GwElement::from_rank_sgn(field, rank_chi, sgn)?)
    } else {
        (None, GwElement::one(field).scale(rank_chi))
    };

    let verdict = gw_element.is_unit();
    if !verdict.is_unit {
        violations.push(format!("{gw_element} is not a unit"));
    }
    if field == FieldDescriptor::RealClosed && gw_element != GwElement::one(field) {
        violations.push(format!("{gw_element} is not the identity over a real closed field"));
    }
    let clause = TheoremClause::for_field(&field);
    clock.lap("assemble");

    Ok(EulerReport {
        schema: SCHEMA_VERSION,
        spec,
        field,
        basis: datum.basis,
        weyl_order: w.order(),
        degrees: coh.degrees,
        rank_chi,
        sgn_chi,
        flag_euler: flag,
        invariants: gw_element.invariants(),
        gw_element,
        is_unit: verdict.is_unit,
        justification: verdict.justification,
        theorem_clause: clause,
        clause_note: clause.note(&field),
        splitting_principle_applies: verdict.is_unit,
        violations,
        timings: opts.timings.then_some(clock.stages),
    })
}
