//! Randomized comparison of the tropical Sylvester permanent with the
//! tropicalized resultant.

use rayon::prelude::*;
use serde::Serialize;

use super::bivariate::{trop_resultant_wrt_x, trop_sylvester_permanent};
use super::CharMode;
use crate::error::{Error, Result};
use crate::random::full_support_pair;
use crate::trop::{Root, TropPoly1, TropPoly2};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub min_degree: u32,
    pub max_degree: u32,
    pub trials: usize,
    pub seed: u64,
    /// Degrees above 4 are refused unless set.
    pub allow_large: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub degree: u32,
    pub trial: usize,
    pub f: String,
    pub g: String,
    pub resultant: String,
    pub permanent: String,
    pub resultant_roots: Vec<Root>,
    pub permanent_roots: Vec<Root>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    /// `(degree, trials)` per degree swept.
    pub trials: Vec<(u32, usize)>,
    pub discrepancies: Vec<Discrepancy>,
    /// Instances where some resultant coefficient exceeds the permanent's.
    pub domination_failures: Vec<Discrepancy>,
}

fn dominated(r: &TropPoly1, p: &TropPoly1) -> bool {
    r.terms().iter().all(|(k, c)| p.coeff(*k).is_some_and(|pc| c <= pc))
}

fn check(degree: u32, trial: usize, f: &TropPoly2, g: &TropPoly2) -> Result<(Option<Discrepancy>, bool)> {
    let r = trop_resultant_wrt_x(f, g, CharMode::EquiCharZero)?;
    let p = trop_sylvester_permanent(f, g)?;
    let (rr, pr) = (r.roots(), p.roots());
    let d = Discrepancy {
        degree,
        trial,
        f: f.to_string(),
        g: g.to_string(),
        resultant: r.to_string(),
        permanent: p.to_string(),
        resultant_roots: rr.clone(),
        permanent_roots: pr.clone(),
    };
    Ok(((rr != pr).then_some(d), dominated(&r, &p)))
}

/// Sweeps `trials` random full-support pairs for every degree in the
/// range. Trials run in parallel and are merged in index order.
pub fn conjecture_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.min_degree == 0 || cfg.min_degree > cfg.max_degree {
        return Err(Error::UnsupportedSupport("degree range must be within 1..=max".into()));
    }
    if cfg.max_degree > 4 && !cfg.allow_large {
        return Err(Error::UnsupportedSupport(format!("degree {} exceeds 4", cfg.max_degree)));
    }
    let mut report = SweepReport::default();
    for degree in cfg.min_degree..=cfg.max_degree {
        let outcomes: Vec<Result<(Option<Discrepancy>, bool, Discrepancy)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let index = ((degree as u64) << 32) | trial as u64;
                let (f, g) = full_support_pair(cfg.seed, index, degree);
                let (d, dom) = check(degree, trial, &f, &g)?;
                let stub = Discrepancy {
                    degree,
                    trial,
                    f: f.to_string(),
                    g: g.to_string(),
                    resultant: String::new(),
                    permanent: String::new(),
                    resultant_roots: Vec::new(),
                    permanent_roots: Vec::new(),
                };
                Ok((d, dom, stub))
            })
            .collect();
        for o in outcomes {
            let (d, dom, stub) = o?;
            report.discrepancies.extend(d);
            if !dom {
                report.domination_failures.push(stub);
            }
        }
        report.trials.push((degree, cfg.trials));
    }
    Ok(report)
}
