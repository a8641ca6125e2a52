//! Semantic validation of a [`FusionModel`].
//!
//! Violations are data, not exceptions: a model that breaks an invariant is
//! still a value you can inspect, and [`validate_model`] returns the full
//! list of everything that is wrong with it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::model::{CurrentOrder, FusionModel};
use crate::phase::Phase;
use crate::rational::Rational;

/// A broken model invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The vacuum must have weight 0.
    VacuumWeight(Rational),
    /// The vacuum must have quantum dimension 1 when one is recorded.
    VacuumQdim(Phase),
    /// A current action is not a bijection on the labels.
    ActionNotPermutation {
        /// Offending current.
        current: String,
        /// What failed (totality, injectivity, or a dangling name).
        detail: String,
    },
    /// The permutation order of the action differs from the declared order.
    ActionOrderMismatch {
        /// Offending current.
        current: String,
        /// Declared order `N`.
        declared: u64,
        /// Actual order of the permutation.
        actual: u64,
    },
    /// The orbit of the vacuum does not have length `N`, so the powers
    /// `J⁰, …, J^{N−1}` do not form `N` distinct sectors.
    VacuumOrbitLength {
        /// Offending current.
        current: String,
        /// Declared order `N`.
        declared: u64,
        /// Observed orbit length.
        actual: usize,
    },
    /// `J⊠V` must carry the current's own weight (and quantum dimension).
    CurrentSectorMismatch {
        /// Offending current.
        current: String,
        /// The label `J⊠V`.
        label: String,
        /// What disagreed.
        detail: String,
    },
    /// `λ^N = 1` fails: `N·(h_{J⊠X} − h_J − h_X) ∉ ℤ` for a simple `X`.
    MonodromyOrder {
        /// Offending current.
        current: String,
        /// Simple label witnessing the failure.
        module: String,
        /// The monodromy phase in question.
        phase: Phase,
    },
    /// A name referenced from a current, indecomposable or diagram does not
    /// resolve.
    UnknownName {
        /// Where the reference sits.
        context: String,
        /// The dangling name.
        name: String,
    },
    /// A Loewy diagram has a directed cycle or malformed node ids.
    LoewyNotADag(String),
    /// A Loewy composition factor sits outside the module's weight coset.
    LoewyCosetMismatch {
        /// Indecomposable owning the diagram.
        module: String,
        /// Offending factor label.
        factor: String,
        /// Its weight minus the coset representative, reduced mod 1.
        offset: Phase,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VacuumWeight(w) => write!(f, "vacuum weight is {w}, expected 0"),
            Violation::VacuumQdim(q) => {
                write!(f, "vacuum quantum dimension has phase {q}, expected 1")
            }
            Violation::ActionNotPermutation { current, detail } => {
                write!(f, "action of {current:?} is not a permutation: {detail}")
            }
            Violation::ActionOrderMismatch {
                current,
                declared,
                actual,
            } => write!(
                f,
                "action order mismatch for {current:?}: declared {declared}, action has order {actual}"
            ),
            Violation::VacuumOrbitLength {
                current,
                declared,
                actual,
            } => write!(
                f,
                "vacuum orbit of {current:?} has length {actual}, expected the declared order {declared}"
            ),
            Violation::CurrentSectorMismatch {
                current,
                label,
                detail,
            } => write!(f, "sector J⊠V = {label:?} of {current:?} disagrees: {detail}"),
            Violation::MonodromyOrder {
                current,
                module,
                phase,
            } => write!(
                f,
                "lambda^N = 1 fails for {current:?} on {module:?}: N·{phase} ∉ ℤ"
            ),
            Violation::UnknownName { context, name } => {
                write!(f, "{context}: unknown name {name:?}")
            }
            Violation::LoewyNotADag(m) => {
                write!(f, "Loewy diagram of {m:?} is not a DAG with unique node ids")
            }
            Violation::LoewyCosetMismatch {
                module,
                factor,
                offset,
            } => write!(
                f,
                "Loewy factor {factor:?} of {module:?} sits off the weight coset by {offset}"
            ),
        }
    }
}

impl core::error::Error for Violation {}

/// Order of a permutation given as `label → label` over exactly the labels.
fn permutation_order(model: &FusionModel, current: &crate::model::SimpleCurrent) -> Option<u64> {
    let mut order: u64 = 1;
    let mut visited: BTreeSet<&str> = BTreeSet::new();
    for start in model.labels() {
        if visited.contains(start.as_str()) {
            continue;
        }
        let mut len: u64 = 0;
        let mut x = start.as_str();
        loop {
            if !visited.insert(x) {
                break;
            }
            len += 1;
            x = current.image(x)?;
            if x == start {
                break;
            }
        }
        order = num_integer::lcm(order, len);
    }
    Some(order)
}

/// Checks every invariant of the model and returns all violations found.
///
/// An empty report means: vacuum normalized, every finite-order current acts
/// as a permutation of the declared order with `N` distinct vacuum sectors,
/// `λ^N = 1` holds for every simple, and all indecomposable data (images,
/// Loewy diagrams, weight cosets) is coherent.
pub fn validate_model(model: &FusionModel) -> Vec<Violation> {
    let mut out = Vec::new();

    let vac = model.vacuum();
    if let Some(w) = model.weight(vac) {
        if !w.is_zero() {
            out.push(Violation::VacuumWeight(w.clone()));
        }
    }
    if let Some(q) = model.qdim(vac) {
        if !q.is_one() {
            out.push(Violation::VacuumQdim(q.clone()));
        }
    }

    for j in model.currents() {
        // Action structure.
        let mut dangling = false;
        for (from, to) in &j.action {
            for (name, side) in [(from, "domain"), (to, "image")] {
                if model.label(name).is_none() {
                    out.push(Violation::UnknownName {
                        context: format!("action of {:?} ({side})", j.name),
                        name: name.clone(),
                    });
                    dangling = true;
                }
            }
        }
        let values: BTreeSet<&String> = j.action.values().collect();
        let injective = values.len() == j.action.len();
        if !injective {
            out.push(Violation::ActionNotPermutation {
                current: j.name.clone(),
                detail: "two labels share an image".to_string(),
            });
        }
        let total = model.labels().iter().all(|l| j.action.contains_key(l));

        match j.order {
            CurrentOrder::Finite(n) => {
                if !total {
                    out.push(Violation::ActionNotPermutation {
                        current: j.name.clone(),
                        detail: "action is not total on the labels".to_string(),
                    });
                }
                if total && injective && !dangling {
                    if let Some(actual) = permutation_order(model, j) {
                        if actual != n {
                            out.push(Violation::ActionOrderMismatch {
                                current: j.name.clone(),
                                declared: n,
                                actual,
                            });
                        }
                    }
                    if let Ok(o) = crate::model::orbit(model, &j.name, vac, None) {
                        if o.elements.len() as u64 != n {
                            out.push(Violation::VacuumOrbitLength {
                                current: j.name.clone(),
                                declared: n,
                                actual: o.elements.len(),
                            });
                        }
                    }
                }
                // λ^N = 1 for every simple with a defined image.
                let nn = BigInt::from(n);
                for x in model.labels() {
                    let (Some(img), Some(hx)) = (j.image(x), model.weight(x)) else {
                        continue;
                    };
                    let Some(hjx) = model.weight(img) else { continue };
                    let phase = Phase::new(hjx - &j.weight - hx);
                    if !phase.pow_big(&nn).is_one() {
                        out.push(Violation::MonodromyOrder {
                            current: j.name.clone(),
                            module: x.clone(),
                            phase,
                        });
                    }
                }
            }
            CurrentOrder::Infinite => {
                // Partial actions are fine; injectivity already checked.
            }
        }

        // The sector J⊠V is the current itself: weights must agree exactly.
        if let Some(sector) = j.image(vac) {
            if let Some(w) = model.weight(sector) {
                if *w != j.weight {
                    out.push(Violation::CurrentSectorMismatch {
                        current: j.name.clone(),
                        label: sector.to_string(),
                        detail: format!("label weight {w} vs current weight {}", j.weight),
                    });
                }
            }
            if let (Some(lq), Some(cq)) = (model.qdim(sector), j.qdim.as_ref()) {
                if lq != cq {
                    out.push(Violation::CurrentSectorMismatch {
                        current: j.name.clone(),
                        label: sector.to_string(),
                        detail: format!("label qdim phase {lq} vs current qdim phase {cq}"),
                    });
                }
            }
        }
    }

    for p in model.indecomposables() {
        for (jname, img) in &p.images {
            if model.current(jname).is_none() {
                out.push(Violation::UnknownName {
                    context: format!("images of {:?}", p.name),
                    name: jname.clone(),
                });
            }
            if model.indecomposable(img).is_none() {
                out.push(Violation::UnknownName {
                    context: format!("image of {:?} under {jname:?}", p.name),
                    name: img.clone(),
                });
            }
        }
        if let Some(d) = &p.loewy {
            if !d.is_dag() {
                out.push(Violation::LoewyNotADag(p.name.clone()));
            }
            for (_, factor) in &d.nodes {
                match model.weight(factor) {
                    None => out.push(Violation::UnknownName {
                        context: format!("Loewy diagram of {:?}", p.name),
                        name: factor.clone(),
                    }),
                    Some(w) => {
                        let offset = Phase::new(w - &p.weight_coset);
                        if !offset.is_one() {
                            out.push(Violation::LoewyCosetMismatch {
                                module: p.name.clone(),
                                factor: factor.clone(),
                                offset,
                            });
                        }
                    }
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::model::SimpleCurrent;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    #[test]
    fn builtin_triplet_is_clean() {
        let m = library::triplet(2).unwrap();
        assert_eq!(validate_model(&m), vec![]);
    }

    fn z4_model_with_declared_order(n: u64) -> FusionModel {
        // Z_4 pointed model; the generator's action honestly has order 4.
        let labels: Vec<(String, crate::model::LabelData)> = (0..4)
            .map(|i| {
                (
                    format!("g{i}"),
                    crate::model::LabelData {
                        weight: if i == 0 { Rational::zero() } else { Rational::from_integer(i) },
                        qdim: Some(Phase::one()),
                    },
                )
            })
            .collect();
        let action: BTreeMap<String, String> =
            (0..4).map(|i| (format!("g{i}"), format!("g{}", (i + 1) % 4))).collect();
        FusionModel::new(
            "z4",
            "g0",
            labels,
            vec![SimpleCurrent {
                name: "g1".to_string(),
                order: CurrentOrder::Finite(n),
                weight: Rational::from_integer(1),
                qdim: Some(Phase::one()),
                action,
            }],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn action_order_mismatch_is_reported() {
        let m = z4_model_with_declared_order(2);
        let vs = validate_model(&m);
        assert!(vs.iter().any(|v| matches!(
            v,
            Violation::ActionOrderMismatch { declared: 2, actual: 4, .. }
        )));
    }

    #[test]
    fn honest_declared_order_is_clean() {
        let m = z4_model_with_declared_order(4);
        assert_eq!(validate_model(&m), vec![]);
    }

    #[test]
    fn monodromy_order_violation_names_the_lemma() {
        // Order-2 current with a contrived 1/3 monodromy phase on "x".
        let labels = vec![
            ("v".to_string(), crate::model::LabelData { weight: Rational::zero(), qdim: None }),
            ("j".to_string(), crate::model::LabelData { weight: Rational::zero(), qdim: None }),
            ("x".to_string(), crate::model::LabelData { weight: Rational::zero(), qdim: None }),
            ("y".to_string(), crate::model::LabelData { weight: Rational::new(1, 3), qdim: None }),
        ];
        let action: BTreeMap<String, String> = [("v", "j"), ("j", "v"), ("x", "y"), ("y", "x")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let m = FusionModel::new(
            "bad",
            "v",
            labels,
            vec![SimpleCurrent {
                name: "j".to_string(),
                order: CurrentOrder::Finite(2),
                weight: Rational::zero(),
                qdim: None,
                action,
            }],
            vec![],
        )
        .unwrap();
        let vs = validate_model(&m);
        let hit = vs
            .iter()
            .find(|v| matches!(v, Violation::MonodromyOrder { .. }))
            .expect("lambda^N violation");
        let text = alloc::format!("{hit}");
        assert!(text.contains("lambda^N = 1"), "{text}");
    }

    #[test]
    fn builtins_validate_over_parameter_ranges() {
        for p in 2..=12 {
            let m = library::triplet(p).unwrap();
            assert_eq!(validate_model(&m), vec![], "triplet({p})");
            let m = library::lattice_rank1(p).unwrap();
            assert_eq!(validate_model(&m), vec![], "lattice_rank1({p})");
        }
        for k in 1..=10 {
            let m = library::affine_sl2(k).unwrap();
            assert_eq!(validate_model(&m), vec![], "affine_sl2({k})");
        }
        for (u, v) in [(3, 4), (3, 5), (3, 7), (3, 8), (4, 5), (5, 7)] {
            let m = library::virasoro_minimal(u, v).unwrap();
            assert_eq!(validate_model(&m), vec![], "virasoro({u},{v})");
        }
    }
}
