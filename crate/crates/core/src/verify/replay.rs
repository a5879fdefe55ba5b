//! Hand computations of `τ(z^{|Z|}·b⁻¹)` replayed step by step.

use std::time::Instant;

use heckekit_laurent::LaurentPoly;

use super::{tau, Failure, VerificationReport};
use crate::algebra::GroupName;
use crate::rewrite::{parse_element, Algebra, ReduceLimits, RuleSet};
use crate::Result;

/// A chain of elements with equal trace, ending at `value`.
#[derive(Clone, Debug)]
pub struct Replay {
    pub label: &'static str,
    pub steps: Vec<&'static str>,
    pub value: &'static str,
}

fn r(label: &'static str, steps: &[&'static str]) -> Replay {
    Replay {
        label,
        steps: steps.to_vec(),
        value: "0",
    }
}

/// Replays for G5 and G7; other groups have none.
pub fn replays(g: GroupName) -> Vec<Replay> {
    match g {
        GroupName::G5 => vec![
            r("b2", &["z^6 s^-1", "z^5 t s t", "z^5 s t^2"]),
            r("b3", &["z^6 s^-2", "z^4 t s t^2 s t", "z^4 s t^2 s t^2"]),
            r("b5", &["z^6 t^-2", "z^4 s t s^2 t s", "z^4 s^2 t s^2 t"]),
            r("b6", &["z^6 t^-1 s^-1", "z^5 s t"]),
            r("b7", &["z^6 t^-1 s^-2", "z^5 s t s^-1", "z^5 t"]),
            r("b8", &["z^6 t^-2 s^-1", "z^5 t s t^-1", "z^5 s"]),
            r(
                "b9",
                &[
                    "z^6 t^-2 s^-2",
                    "z^5 s t s t^-1 s^-2",
                    "z^5 t s t^-1 s^-1",
                    "z^4 t s^2 t",
                    "z^4 s^2 t^2",
                ],
            ),
            r("b10", &["z^6 s^-1 t", "z^5 t s t^2", "z^5 s t^3"]),
            r("b11", &["z^6 t^-1 s^-1 t", "z^5 s t^2"]),
            r(
                "b12",
                &["z^6 t^-2 s^-1 t", "z^5 s t s t^-1 s^-1 t", "z^5 t s t s t^-1 s^-1", "z^5 s t"],
            ),
        ],
        GroupName::G7 => vec![
            r(
                "b2",
                &[
                    "z^12 u^-1",
                    "z^11 s t",
                    "a*z^11 t + b*z^11 s^-1 t",
                    "a*z^11 t + b*z^10 t u t",
                    "b*z^10 u t^2",
                ],
            ),
            r(
                "b3",
                &[
                    "z^12 u^-2",
                    "h^-1*z^12 u - f*h^-1*z^12 - g*h^-1*z^12 u^-1",
                    "h^-1*z z^11 u - f*h^-1*z^6 z^6 - g*h^-1*z^12 u^-1",
                ],
            ),
            Replay {
                label: "b3: tau(b13 b134)",
                steps: vec!["z z^11 u"],
                value: "b^6*e^4*f*h^4",
            },
            Replay {
                label: "b3: tau(b73 b73)",
                steps: vec!["z^6 z^6"],
                value: "b^6*e^4*h^4",
            },
            r(
                "b4",
                &[
                    "z^12 t^-1",
                    "z^11 u s",
                    "a*z^11 u + b*z^11 u s^-1",
                    "a*z^11 u + b*z^10 u t u",
                    "b*z^10 u^2 t",
                ],
            ),
            r(
                "b5",
                &[
                    "z^12 t^-2",
                    "e^-1*z^12 t - c*e^-1*z^12 - d*e^-1*z^12 t^-1",
                    "e^-1*z z^11 t - c*e^-1*z^6 z^6 - d*e^-1*z^12 t^-1",
                ],
            ),
            Replay {
                label: "b5: tau(b13 b136)",
                steps: vec!["z z^11 t"],
                value: "b^6*c*e^4*h^4",
            },
            r(
                "b6",
                &["z^12 t^-1 u^-1", "z^11 s", "a*z^11 + b*z^11 s^-1", "a*z^11 + b*z^10 t u", "b*z^10 u t"],
            ),
            r(
                "b7",
                &[
                    "z^12 t^-1 u^-2",
                    "z^11 u^-1 s",
                    "z^11 s u^-1",
                    "a*z^11 u^-1 + b*z^11 s^-1 u^-1",
                    "a*z^11 u^-1 + b*z^10 t",
                    "b*z^10 t",
                ],
            ),
            r(
                "b8",
                &[
                    "z^12 t^-2 u^-1",
                    "z^11 s t^-1",
                    "z^11 t^-1 s",
                    "a*z^11 t^-1 + b*z^11 t^-1 s^-1",
                    "a*z^11 t^-1 + b*z^10 u",
                    "b*z^10 u",
                ],
            ),
            r(
                "b9",
                &[
                    "z^12 t^-2 u^-2",
                    "z^11 u^-1 s t^-1",
                    "a*z^11 u^-1 t^-1 + b*z^11 u^-1 s^-1 t^-1",
                    "a*z^11 t^-1 u^-1 + b*z^10 u^-1 t u t^-1",
                    "a*z^11 t^-1 u^-1 + b*z^10 t^-1 u^-1 t u",
                    "b*z^9 t^-1 s t^2 u",
                    "a*b*z^9 t u + b^2*z^9 t^-1 s^-1 t^2 u",
                    "a*b*z^9 u t + b^2*z^8 u t^2 u",
                    "a*b*z^9 u t + b^2*z^8 u^2 t^2",
                    "b^2*z^8 u^2 t^2",
                ],
            ),
            r("b10", &["z^12 u^-2 t^-1", "z^12 t^-1 u^-2"]),
            r("b11", &["z^12 t^-1 u^-2 t^-1", "z^12 t^-2 u^-2"]),
            r(
                "b12",
                &[
                    "z^12 t^-2 u^-2 t^-1",
                    "z^12 t^-3 u^-2",
                    "e^-1*z^12 u^-2 - c*e^-1*z^12 t^-1 u^-2 - d*e^-1*z^12 t^-2 u^-2",
                ],
            ),
        ],
        _ => Vec::new(),
    }
}

/// Every step of every replay has the trace the replay ends at.
pub fn check_replays(alg: &Algebra, rules: &RuleSet, limits: &ReduceLimits) -> Result<VerificationReport> {
    let start = Instant::now();
    let spec = &alg.spec;
    let mut failures = Vec::new();
    for rep in replays(spec.name) {
        let value: LaurentPoly = rep.value.parse()?;
        for (k, step) in rep.steps.iter().enumerate() {
            let e = parse_element(spec, step)?;
            let v = tau(alg, rules, &e, limits)?;
            if v != value {
                failures.push(Failure::new(
                    format!("{} step {}: {}", rep.label, k + 1, step),
                    value.pretty(),
                    v.pretty(),
                ));
            }
        }
    }
    Ok(VerificationReport::finish(spec.name, "replays", failures, start))
}
