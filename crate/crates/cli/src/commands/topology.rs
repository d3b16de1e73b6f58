//! `verify-topology`: per-interval sphere/contractible verdicts with
//! Möbius, Euler, and mod-2 Betti cross-checks.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use biplab_core::topology::{classify_interval, TopologyVerdict};

use crate::report::{CheckRecord, Report};
use crate::{config_json, resolve_subjects, CliError, Subject, TopologyArgs};

pub fn run(args: &TopologyArgs) -> Result<Report, CliError> {
    if args.max_complex_faces == 0 {
        return Err(CliError::Usage("--max-complex-faces must be positive".into()));
    }
    let subjects = resolve_subjects(&args.scope)?;
    let single = match (&args.u, &args.v) {
        (Some(u), Some(v)) => Some((u.clone(), v.clone())),
        _ => None,
    };
    let checks: Vec<CheckRecord> = subjects
        .par_iter()
        .map(|subject| check_subject(subject, args, single.as_ref()))
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Report::new("verify-topology", config_json(args), checks))
}

fn verdict_detail(v: &TopologyVerdict) -> String {
    let betti = match &v.betti {
        Some(b) => format!("{b:?}"),
        None => "capped".to_string(),
    };
    format!(
        "a={} predicted={} mu={} euler={} betti={}",
        v.atom_count, v.predicted, v.mobius, v.reduced_euler, betti
    )
}

fn check_subject(
    subject: &Subject,
    args: &TopologyArgs,
    single: Option<&(String, String)>,
) -> Result<Vec<CheckRecord>, CliError> {
    let poset = &subject.poset;
    let s = &subject.name;
    let mut recs = Vec::new();
    let intervals: Vec<(usize, usize)> = match single {
        Some((u, v)) => {
            let u = poset
                .element(u)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let v = poset
                .element(v)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if u == v || !poset.leq(u, v) {
                return Err(CliError::Usage(format!(
                    "not a strict interval: {} -> {}",
                    poset.label(u),
                    poset.label(v)
                )));
            }
            vec![(u, v)]
        }
        None => poset.strict_intervals(),
    };
    let mut capped = 0usize;
    for &(u, v) in &intervals {
        let name = format!("interval:{}->{}", poset.label(u), poset.label(v));
        match classify_interval(poset, u, v, args.max_complex_faces) {
            Ok(verdict) => {
                if verdict.betti.is_none() {
                    capped += 1;
                }
                let ok = verdict.euler_ok && verdict.betti_ok.unwrap_or(true);
                if ok {
                    recs.push(CheckRecord::pass(s, &name, Some(verdict_detail(&verdict))));
                } else {
                    recs.push(CheckRecord::fail(
                        s,
                        &name,
                        verdict_detail(&verdict),
                        json!({
                            "u": verdict.u,
                            "v": verdict.v,
                            "atoms": verdict.atom_count,
                            "predicted": verdict.predicted.to_string(),
                            "mobius": verdict.mobius,
                            "euler": verdict.reduced_euler,
                            "betti": verdict.betti,
                        }),
                    ));
                }
            }
            Err(e) => recs.push(CheckRecord::fail(
                s,
                &name,
                e.to_string(),
                json!({"error": e.to_string()}),
            )),
        }
    }
    if capped > 0 {
        recs.push(CheckRecord::skip(
            s,
            "betti-cap",
            format!(
                "{capped} of {} intervals over the {}-face cap; Euler/Möbius checks still ran",
                intervals.len(),
                args.max_complex_faces
            ),
        ));
    }
    if args.cross_validate_faces {
        recs.push(cross_validate(subject, args, &intervals));
    }
    Ok(recs)
}

/// Lattice face criterion vs the geometric face oracle, exhaustive up to
/// the sample budget and seeded-sampled beyond it.
fn cross_validate(
    subject: &Subject,
    args: &TopologyArgs,
    intervals: &[(usize, usize)],
) -> CheckRecord {
    let poset = &subject.poset;
    let s = &subject.name;
    let chosen: Vec<(usize, usize)> = if intervals.len() <= args.face_samples {
        intervals.to_vec()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
        let mut picks: Vec<usize> = sample(&mut rng, intervals.len(), args.face_samples).into_vec();
        picks.sort_unstable();
        picks.into_iter().map(|i| intervals[i]).collect()
    };
    for &(u, v) in &chosen {
        let lattice = match poset.is_face_interval(u, v) {
            Ok(b) => b,
            Err(e) => {
                return CheckRecord::fail(
                    s,
                    "face-criterion",
                    e.to_string(),
                    json!({"interval": [poset.label(u), poset.label(v)]}),
                )
            }
        };
        let members = poset.up_set(u).intersect(poset.down_set(v));
        let ids: Vec<usize> = members.iter().collect();
        let geometric = match poset.polytope().is_face_ids(&ids) {
            Ok(b) => b,
            Err(e) => {
                return CheckRecord::fail(
                    s,
                    "face-criterion",
                    e.to_string(),
                    json!({"interval": [poset.label(u), poset.label(v)]}),
                )
            }
        };
        if lattice != geometric {
            return CheckRecord::fail(
                s,
                "face-criterion",
                format!("lattice criterion {lattice} but geometric oracle {geometric}"),
                json!({"interval": [poset.label(u), poset.label(v)]}),
            );
        }
    }
    CheckRecord::pass(
        s,
        "face-criterion",
        Some(format!("{} intervals cross-validated", chosen.len())),
    )
}
