//! Batch evaluation of scenario pairs.
//!
//! Pairs are evaluated on the current rayon pool; results come back in input
//! order.

use rayon::prelude::*;

use ncc_core::almost_m2::{self, azimuth_gap, min_proper_time_m2};
use ncc_core::moyal::{coherent_causal, coherent_state, generalized_coherent_causal, ChainSearch};
use ncc_core::spacetime::{lorentzian_distance, SearchConfig};
use ncc_core::two_sheet::{causally_related_sheets, causally_related_sheets_higgs};
use ncc_core::verifier::{find_violation, WitnessSearch};
use ncc_core::{CausalVerdict, FockVector, GeneralizedCoherentState, MoyalParams};

use crate::error::{CliError, Result};
use crate::record::{Displacement, Provenance, ResultRecord, Verdict, VerifyFields, WitnessDump};
use crate::scenario::{Model, MoyalState, Pair, Scenario, TwoSheetField};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default)]
pub struct RunConfig {
    /// Adds reasons for optimizer-limited answers and witness matrices.
    pub verbose: bool,
}

fn pair_err(id: &str) -> impl Fn(ncc_core::Error) -> CliError + '_ {
    move |source| CliError::Pair { id: id.to_string(), source }
}

fn par_records<S: Sync>(
    pairs: &[Pair<S>],
    f: impl Fn(&Pair<S>) -> Result<ResultRecord> + Sync + Send,
) -> Result<Vec<ResultRecord>> {
    pairs.par_iter().map(f).collect()
}

/// Runs the closed-form predicate of the scenario's model on every pair.
pub fn check(scenario: &Scenario, config: &RunConfig) -> Result<Vec<ResultRecord>> {
    let opts = scenario.options;
    let seed = opts.seed.unwrap_or(0);
    match &scenario.model {
        Model::M2 { dirac, pairs } => {
            let tol = opts.tol.unwrap_or(almost_m2::DEFAULT_TOL);
            par_records(pairs, |p| {
                let related = almost_m2::causally_related_m2(&p.from, &p.to, dirac, tol);
                let mut r = ResultRecord::new(&p.id, Verdict::Related(related), Provenance::new(seed, None));
                r.distance = lorentzian_distance(p.from.base, p.to.base);
                let same_parallel = (p.from.internal.latitude() - p.to.internal.latitude()).abs() <= tol;
                if same_parallel {
                    let gap = azimuth_gap(&p.from.internal, &p.to.internal);
                    r.bound = Some(min_proper_time_m2(gap, dirac).map_err(pair_err(&p.id))?);
                }
                if !related {
                    r.reason = Some(
                        if r.distance.is_none() {
                            "bases not causally related"
                        } else if !same_parallel {
                            "different parallels of latitude"
                        } else {
                            "proper time below internal bound"
                        }
                        .into(),
                    );
                }
                Ok(r)
            })
        }
        Model::TwoSheet { field: TwoSheetField::Dirac(dirac), pairs } => {
            let tol = opts.tol.unwrap_or(DEFAULT_TOL);
            par_records(pairs, |p| {
                let related = causally_related_sheets(&p.from, &p.to, dirac, tol).map_err(pair_err(&p.id))?;
                let mut r = ResultRecord::new(&p.id, Verdict::Related(related), Provenance::new(seed, None));
                r.distance = lorentzian_distance(p.from.base, p.to.base);
                if p.from.sheet != p.to.sheet {
                    r.bound = Some(dirac.crossing_time().map_err(pair_err(&p.id))?);
                }
                Ok(r)
            })
        }
        Model::TwoSheet { field: TwoSheetField::Higgs(field), pairs } => {
            let tol = opts.tol.unwrap_or(DEFAULT_TOL);
            let defaults = SearchConfig::default();
            let search = SearchConfig {
                segments: opts.segments.unwrap_or(defaults.segments),
                budget: opts.budget.unwrap_or(defaults.budget),
                seed,
                ..defaults
            };
            par_records(pairs, |p| {
                let check = causally_related_sheets_higgs(&p.from, &p.to, field, &search, tol)
                    .map_err(pair_err(&p.id))?;
                let mut r = ResultRecord::new(&p.id, Verdict::Related(check.related), Provenance::new(seed, None));
                r.distance = lorentzian_distance(p.from.base, p.to.base);
                r.weighted_tau = check.weighted_tau;
                if p.from.sheet != p.to.sheet {
                    r.bound = Some(std::f64::consts::FRAC_PI_2);
                    if config.verbose && !check.related && check.weighted_tau.is_some() {
                        r.reason = Some(format!("not causal at budget {}", search.budget));
                    }
                }
                Ok(r)
            })
        }
        Model::Moyal { params, pairs } => {
            let chain = ChainSearch { tol: opts.tol.unwrap_or(ChainSearch::default().tol), ..ChainSearch::default() };
            par_records(pairs, |p| {
                let (verdict, bound) = moyal_closed_form(p, *params, &chain)?;
                let mut r = ResultRecord::new(&p.id, verdict, Provenance::new(seed, Some(params.truncation())));
                r.displacement = Some(Displacement::from(p.to.kappa() - p.from.kappa()));
                r.bound = bound;
                if let Verdict::Graded(CausalVerdict::Undetermined(reason)) = &r.verdict {
                    r.reason = Some(reason.clone());
                }
                Ok(r)
            })
        }
    }
}

fn as_generalized(s: &MoyalState, params: MoyalParams) -> ncc_core::Result<GeneralizedCoherentState> {
    match s {
        MoyalState::Generalized(g) => Ok(*g),
        MoyalState::Coherent(k) => GeneralizedCoherentState::new(0, *k, params),
    }
}

fn moyal_closed_form(
    p: &Pair<MoyalState>,
    params: MoyalParams,
    chain: &ChainSearch,
) -> Result<(Verdict, Option<f64>)> {
    if let (MoyalState::Coherent(a), MoyalState::Coherent(b)) = (&p.from, &p.to) {
        return Ok((Verdict::Related(coherent_causal(*a, *b)), None));
    }
    let a = as_generalized(&p.from, params).map_err(pair_err(&p.id))?;
    let b = as_generalized(&p.to, params).map_err(pair_err(&p.id))?;
    let outcome = generalized_coherent_causal(&a, &b, chain).map_err(pair_err(&p.id))?;
    Ok((Verdict::Graded(outcome.verdict), outcome.jump_budget))
}

fn state_vector(s: &MoyalState, params: MoyalParams) -> ncc_core::Result<FockVector> {
    match s {
        MoyalState::Coherent(k) => coherent_state(*k, params),
        MoyalState::Generalized(g) => g.vector(),
    }
}

/// Closed-form verdict next to a witness search for `from ⋠ to`.
pub fn verify(scenario: &Scenario, config: &RunConfig) -> Result<Vec<ResultRecord>> {
    let Model::Moyal { params, pairs } = &scenario.model else {
        return Err(CliError::schema("model", "verify needs a moyal scenario"));
    };
    let opts = scenario.options;
    let defaults = WitnessSearch::default();
    let search = WitnessSearch {
        budget: opts.budget.unwrap_or(defaults.budget),
        seed: opts.seed.unwrap_or(defaults.seed),
        tol: opts.tol.unwrap_or(defaults.tol),
        ..defaults
    };
    let chain = ChainSearch::default();
    par_records(pairs, |p| {
        let (closed, bound) = moyal_closed_form(p, *params, &chain)?;
        let from = state_vector(&p.from, *params).map_err(pair_err(&p.id))?;
        let to = state_vector(&p.to, *params).map_err(pair_err(&p.id))?;
        let witness = find_violation(&from, &to, &search).map_err(pair_err(&p.id))?;
        let agreement = closed.as_bool().map(|causal| causal == witness.is_none());
        if agreement == Some(false) {
            log::warn!("pair `{}`: closed form and witness search disagree", p.id);
        }
        let mut r = ResultRecord::new(&p.id, closed.clone(), Provenance::new(search.seed, Some(params.truncation())));
        r.displacement = Some(Displacement::from(p.to.kappa() - p.from.kappa()));
        r.bound = bound;
        r.margin = witness.as_ref().map(|w| w.margin);
        if let Verdict::Graded(CausalVerdict::Undetermined(reason)) = &closed {
            r.reason = Some(reason.clone());
        }
        let dump = witness.filter(|_| config.verbose).map(|w| WitnessDump {
            matrix: w
                .element
                .coeffs()
                .row_iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            lambda_max: w.lambda_max,
            spectrum: w.spectrum,
        });
        r.verify = Some(VerifyFields {
            closed_form: closed,
            operator: if r.margin.is_some() { "witness" } else { "no_witness" },
            agreement,
            witness: dump,
        });
        Ok(r)
    })
}

/// Whether any record should turn the exit code to 2.
pub fn any_undetermined(records: &[ResultRecord]) -> bool {
    records.iter().any(|r| r.verdict.is_undetermined())
}

