//! Structural invariants: diameter, connectivity, domination and colouring.

mod coloring;
mod connectivity;
mod diameter;
mod domination;

pub use coloring::{
    chromatic_number, chromatic_upper_bound, greedy_coloring, hero, is_acyclic_class,
    is_proper_coloring, verify_chi_step_theorems, ChiCheck, ChiMode, ChiStepReport, Coloring,
    Outcome, MAX_EXACT_CHI_NODES, MAX_HERO_INDEX,
};
pub use connectivity::{
    connectivity, connectivity_by_enumeration, remaining, separates, Connectivity,
    MAX_ENUM_CONNECTIVITY_NODES,
};
pub use diameter::{diameter, is_strong};
pub use domination::{
    check_minimal_indominating_clone_lift, domination, is_dominating, is_in_dominating,
    is_minimal_dominating, is_out_dominating, Direction, Domination, DOMINATION_SUBSET_BUDGET,
};

use serde::Serialize;

use crate::error::Result;
use crate::pursuit;
use crate::tournament::Tournament;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub chi: bool,
    pub cop: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopSummary {
    pub cop_number: usize,
    pub placement: Vec<usize>,
    pub strategy_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub strong: bool,
    /// `None` when not strong.
    pub diameter: Option<usize>,
    /// `None` below two nodes.
    pub kappa: Option<usize>,
    pub kappa_cut: Vec<usize>,
    pub gamma_in: usize,
    pub gamma_in_set: Vec<usize>,
    pub gamma_out: usize,
    pub gamma_out_set: Vec<usize>,
    pub source: Option<usize>,
    pub sink: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cop: Option<CopSummary>,
}

pub fn analyze(t: &Tournament, opts: AnalyzeOptions) -> Result<InvariantReport> {
    let conn = if t.n() >= 2 {
        Some(connectivity(t)?)
    } else {
        None
    };
    let din = domination(t, Direction::In)?;
    let dout = domination(t, Direction::Out)?;
    let chi = if opts.chi {
        Some(chromatic_number(t)?)
    } else {
        None
    };
    let cop = if opts.cop {
        let r = pursuit::cop_number(t)?;
        Some(CopSummary {
            cop_number: r.cop_number,
            placement: r.certificate.placement.clone().unwrap_or_default(),
            strategy_verified: pursuit::verify_strategy(t, &r.certificate),
        })
    } else {
        None
    };
    Ok(InvariantReport {
        n: t.n(),
        strong: is_strong(t),
        diameter: diameter(t),
        kappa: conn.as_ref().map(|c| c.kappa),
        kappa_cut: conn.map(|c| c.cut).unwrap_or_default(),
        gamma_in: din.gamma,
        gamma_in_set: din.set,
        gamma_out: dout.gamma,
        gamma_out_set: dout.set,
        source: t.source(),
        sink: t.sink(),
        chi,
        cop,
    })
}
