//! Fusion/ribbon scalar data: simple labels with exact conformal weights,
//! optional unit quantum dimensions, simple-current actions and tracked
//! indecomposables with their Loewy diagrams.
//!
//! A [`FusionModel`] does not know full fusion coefficients; the lifting and
//! extension criteria only consume current actions and weights, so that is
//! all the model stores. Full fusion rows enter only through
//! [`detect_simple_currents`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::phase::Phase;
use crate::rational::Rational;

/// Weight and optional quantum dimension attached to a simple label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelData {
    /// Conformal weight `h` of the simple module.
    pub weight: Rational,
    /// Quantum dimension when it is a unit scalar and known.
    pub qdim: Option<Phase>,
}

/// Order of a simple current in the fusion ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurrentOrder {
    /// `J^N ≅ V` with `N` minimal.
    Finite(u64),
    /// `J` generates an infinite cyclic group; orbit listings are truncated.
    Infinite,
}

impl fmt::Display for CurrentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurrentOrder::Finite(n) => write!(f, "{n}"),
            CurrentOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// An invertible simple object together with the permutation `X ↦ J⊠X` it
/// induces on simple labels.
///
/// For an infinite-order current the action may be a partial map (only a
/// finite window of the module family can be stored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCurrent {
    /// Name used to reference the current.
    pub name: String,
    /// Order in the fusion ring.
    pub order: CurrentOrder,
    /// Conformal weight `h_J`.
    pub weight: Rational,
    /// Quantum dimension, when the category is ribbon and the value known.
    pub qdim: Option<Phase>,
    /// The permutation `X ↦ J⊠X` on simple labels.
    pub action: BTreeMap<String, String>,
}

impl SimpleCurrent {
    /// Image of a simple label under `J⊠·`, if recorded.
    pub fn image(&self, label: &str) -> Option<&str> {
        self.action.get(label).map(String::as_str)
    }
}

/// A reducible indecomposable module, recorded through exactly the data the
/// lifting criteria consume: a weight-coset representative and the images
/// under the currents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecomposableModule {
    /// Name used to reference the module.
    pub name: String,
    /// Representative of the single coset `μ + ℤ` carrying all generalized
    /// conformal weights.
    pub weight_coset: Rational,
    /// Map current name → name of `J⊠P`.
    pub images: BTreeMap<String, String>,
    /// Socle structure as composition factors, when known.
    pub loewy: Option<LoewyDiagram>,
    /// User attestation that `Hom(P,P)` is finite dimensional and `L(0)` has
    /// bounded Jordan blocks on `P` and `J⊠P`. Recorded, never verified.
    pub attested: bool,
    /// User attestation that `P` is a subquotient of a product of simples
    /// (the hypothesis needed when the current has infinite order).
    pub subquotient_of_simples: bool,
}

/// Finite DAG of composition-factor labels modelling socle structure.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LoewyDiagram {
    /// Nodes as `(id, simple label)` pairs.
    pub nodes: Vec<(u32, String)>,
    /// Directed edges `(from id, to id)`.
    pub edges: Vec<(u32, u32)>,
}

impl LoewyDiagram {
    /// True when the edge relation is acyclic and all edges reference nodes.
    pub fn is_dag(&self) -> bool {
        let ids: BTreeSet<u32> = self.nodes.iter().map(|(i, _)| *i).collect();
        if ids.len() != self.nodes.len() {
            return false;
        }
        if self.edges.iter().any(|(a, b)| !ids.contains(a) || !ids.contains(b)) {
            return false;
        }
        // Kahn toposort.
        let mut indeg: BTreeMap<u32, usize> = ids.iter().map(|&i| (i, 0)).collect();
        for (_, b) in &self.edges {
            *indeg.get_mut(b).unwrap() += 1;
        }
        let mut ready: Vec<u32> = indeg
            .iter()
            .filter_map(|(&i, &d)| (d == 0).then_some(i))
            .collect();
        let mut seen = 0usize;
        while let Some(i) = ready.pop() {
            seen += 1;
            for (a, b) in &self.edges {
                if *a == i {
                    let d = indeg.get_mut(b).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(*b);
                    }
                }
            }
        }
        seen == self.nodes.len()
    }
}

/// Scalar data of a braided (optionally ribbon) category with designated
/// vacuum, simple-current group actions and tracked indecomposables.
///
/// Immutable after construction; all queries are pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionModel {
    name: String,
    label_order: Vec<String>,
    labels: BTreeMap<String, LabelData>,
    vacuum: String,
    currents: Vec<SimpleCurrent>,
    indecomposables: Vec<IndecomposableModule>,
    central_charge: Option<Rational>,
}

/// Structural failure while assembling a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    /// Two labels, currents or indecomposables share a name.
    DuplicateName(String),
    /// The designated vacuum is not among the labels.
    VacuumNotALabel(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::DuplicateName(n) => write!(f, "duplicate name {n:?}"),
            ModelError::VacuumNotALabel(n) => write!(f, "vacuum {n:?} is not a label"),
        }
    }
}

impl core::error::Error for ModelError {}

impl FusionModel {
    /// Assembles a model, rejecting duplicate names and a dangling vacuum.
    /// Semantic constraints are the business of
    /// [`validate_model`](crate::validate::validate_model), which reports
    /// violations as data rather than refusing to construct.
    pub fn new(
        name: impl Into<String>,
        vacuum: impl Into<String>,
        labels: Vec<(String, LabelData)>,
        currents: Vec<SimpleCurrent>,
        indecomposables: Vec<IndecomposableModule>,
    ) -> Result<Self, ModelError> {
        let vacuum = vacuum.into();
        let mut order = Vec::with_capacity(labels.len());
        let mut map = BTreeMap::new();
        for (n, data) in labels {
            if map.insert(n.clone(), data).is_some() {
                return Err(ModelError::DuplicateName(n));
            }
            order.push(n);
        }
        if !map.contains_key(&vacuum) {
            return Err(ModelError::VacuumNotALabel(vacuum));
        }
        let mut seen = BTreeSet::new();
        for c in &currents {
            if !seen.insert(c.name.clone()) {
                return Err(ModelError::DuplicateName(c.name.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for p in &indecomposables {
            if !seen.insert(p.name.clone()) || map.contains_key(&p.name) {
                return Err(ModelError::DuplicateName(p.name.clone()));
            }
        }
        Ok(FusionModel {
            name: name.into(),
            label_order: order,
            labels: map,
            vacuum,
            currents,
            indecomposables,
            central_charge: None,
        })
    }

    /// Attaches a central charge (display metadata only).
    pub fn with_central_charge(mut self, c: Rational) -> Self {
        self.central_charge = Some(c);
        self
    }

    /// Display name of the model.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Simple labels in presentation order.
    pub fn labels(&self) -> &[String] {
        &self.label_order
    }

    /// The designated vacuum label.
    pub fn vacuum(&self) -> &str {
        &self.vacuum
    }

    /// Data attached to a simple label.
    pub fn label(&self, name: &str) -> Option<&LabelData> {
        self.labels.get(name)
    }

    /// Conformal weight of a simple label.
    pub fn weight(&self, name: &str) -> Option<&Rational> {
        self.labels.get(name).map(|d| &d.weight)
    }

    /// Quantum dimension of a simple label, when recorded.
    pub fn qdim(&self, name: &str) -> Option<&Phase> {
        self.labels.get(name).and_then(|d| d.qdim.as_ref())
    }

    /// All simple currents.
    pub fn currents(&self) -> &[SimpleCurrent] {
        &self.currents
    }

    /// Looks up a current by name.
    pub fn current(&self, name: &str) -> Option<&SimpleCurrent> {
        self.currents.iter().find(|c| c.name == name)
    }

    /// All tracked indecomposables.
    pub fn indecomposables(&self) -> &[IndecomposableModule] {
        &self.indecomposables
    }

    /// Looks up an indecomposable by name.
    pub fn indecomposable(&self, name: &str) -> Option<&IndecomposableModule> {
        self.indecomposables.iter().find(|p| p.name == name)
    }

    /// Central charge metadata, when attached.
    pub fn central_charge(&self) -> Option<&Rational> {
        self.central_charge.as_ref()
    }
}

/// Result of walking `x, J⊠x, J²⊠x, …` until the first repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Distinct modules in the order visited, starting from `x`.
    pub elements: Vec<String>,
    /// True when `Jⁱ⊠x ≅ x` for some `0 < i < N` (the orbit is not free).
    pub fixed_point: bool,
    /// True when an infinite-order walk was cut off by the truncation bound.
    pub truncated: bool,
}

/// Failure while resolving an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitError {
    /// The starting module is neither a label nor an indecomposable.
    UnknownModule(String),
    /// No current with this name.
    UnknownCurrent(String),
    /// The current action or image map is undefined at this module.
    ActionUndefined {
        /// Current being applied.
        current: String,
        /// Module with no recorded image.
        module: String,
    },
    /// An infinite-order current needs an explicit truncation bound.
    TruncationRequired(String),
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::UnknownModule(m) => write!(f, "unknown module {m:?}"),
            OrbitError::UnknownCurrent(c) => write!(f, "unknown current {c:?}"),
            OrbitError::ActionUndefined { current, module } => {
                write!(f, "action of {current:?} undefined on {module:?}")
            }
            OrbitError::TruncationRequired(c) => write!(
                f,
                "current {c:?} has infinite order: orbit listing needs a truncation bound"
            ),
        }
    }
}

impl core::error::Error for OrbitError {}

/// Lists the orbit `[x, J⊠x, J²⊠x, …]` of a simple label or indecomposable
/// under a current, up to the first repetition.
///
/// For infinite-order currents a truncation bound is mandatory; the listing
/// stops after `bound` elements (flagged in the result).
pub fn orbit(
    model: &FusionModel,
    current: &str,
    start: &str,
    truncation: Option<usize>,
) -> Result<Orbit, OrbitError> {
    let j = model
        .current(current)
        .ok_or_else(|| OrbitError::UnknownCurrent(current.to_string()))?;
    enum Kind {
        Simple,
        Indec,
    }
    let kind = if model.label(start).is_some() {
        Kind::Simple
    } else if model.indecomposable(start).is_some() {
        Kind::Indec
    } else {
        return Err(OrbitError::UnknownModule(start.to_string()));
    };
    let bound = match j.order {
        CurrentOrder::Finite(n) => n as usize,
        CurrentOrder::Infinite => {
            truncation.ok_or_else(|| OrbitError::TruncationRequired(current.to_string()))?
        }
    };
    let step = |x: &str| -> Result<String, OrbitError> {
        let img = match kind {
            Kind::Simple => j.image(x),
            Kind::Indec => model
                .indecomposable(x)
                .and_then(|p| p.images.get(current).map(String::as_str)),
        };
        img.map(str::to_string).ok_or_else(|| OrbitError::ActionUndefined {
            current: current.to_string(),
            module: x.to_string(),
        })
    };

    let mut elements = Vec::new();
    let mut seen = BTreeSet::new();
    let mut x = start.to_string();
    let mut truncated = false;
    let mut repeated = false;
    loop {
        seen.insert(x.clone());
        elements.push(x.clone());
        if matches!(j.order, CurrentOrder::Infinite) && elements.len() >= bound.max(1) {
            truncated = true;
            break;
        }
        let next = step(&x)?;
        if seen.contains(&next) {
            repeated = true;
            break;
        }
        x = next;
    }
    let fixed_point = match j.order {
        CurrentOrder::Finite(n) => (elements.len() as u64) < n,
        CurrentOrder::Infinite => repeated,
    };
    Ok(Orbit {
        elements,
        fixed_point,
        truncated,
    })
}

/// Failure of [`detect_simple_currents`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionRowError {
    /// A required fusion row `(a, b)` was not supplied.
    InsufficientData {
        /// Candidate label.
        a: String,
        /// Right tensor factor with no recorded row.
        b: String,
    },
}

impl fmt::Display for FusionRowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionRowError::InsufficientData { a, b } => {
                write!(f, "insufficient data: fusion row ({a:?}, {b:?}) missing")
            }
        }
    }
}

impl core::error::Error for FusionRowError {}

/// Finds the invertible labels among `labels` given fusion rows
/// `(a, b) ↦ multiset of simple summands of a⊠b`.
///
/// A label `a` is invertible exactly when every `a⊠b` is a single simple and
/// `b ↦ a⊠b` is a bijection on labels.
pub fn detect_simple_currents(
    labels: &[String],
    rows: &BTreeMap<(String, String), Vec<String>>,
) -> Result<Vec<String>, FusionRowError> {
    let mut out = Vec::new();
    for a in labels {
        let mut images = BTreeSet::new();
        let mut invertible = true;
        for b in labels {
            let row = rows.get(&(a.clone(), b.clone())).ok_or_else(|| {
                FusionRowError::InsufficientData {
                    a: a.clone(),
                    b: b.clone(),
                }
            })?;
            if row.len() != 1 {
                invertible = false;
                continue;
            }
            if !images.insert(row[0].clone()) {
                invertible = false;
            }
        }
        if invertible && images.len() == labels.len() {
            out.push(a.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn z2_rows() -> (Vec<String>, BTreeMap<(String, String), Vec<String>>) {
        let labels: Vec<String> = ["e", "g"].iter().map(|s| s.to_string()).collect();
        let mut rows = BTreeMap::new();
        for (a, b, c) in [("e", "e", "e"), ("e", "g", "g"), ("g", "e", "g"), ("g", "g", "e")] {
            rows.insert((a.to_string(), b.to_string()), alloc::vec![c.to_string()]);
        }
        (labels, rows)
    }

    #[test]
    fn group_ring_is_all_currents() {
        let (labels, rows) = z2_rows();
        assert_eq!(detect_simple_currents(&labels, &rows).unwrap(), labels);
    }

    #[test]
    fn non_permutation_row_excluded() {
        let (labels, mut rows) = z2_rows();
        rows.insert(
            ("g".to_string(), "g".to_string()),
            alloc::vec!["e".to_string(), "g".to_string()],
        );
        assert_eq!(
            detect_simple_currents(&labels, &rows).unwrap(),
            alloc::vec!["e".to_string()]
        );
    }

    #[test]
    fn missing_row_is_an_error() {
        let (labels, mut rows) = z2_rows();
        rows.remove(&("g".to_string(), "e".to_string()));
        assert!(matches!(
            detect_simple_currents(&labels, &rows),
            Err(FusionRowError::InsufficientData { .. })
        ));
    }

    #[test]
    fn lattice_labels_are_all_currents() {
        // Rank-one lattice at p = 2: four labels with a Z_4 fusion law.
        let m = library::lattice_rank1(2).unwrap();
        let labels: Vec<String> = m.labels().to_vec();
        let mut rows = BTreeMap::new();
        for i in 0..4u64 {
            for k in 0..4u64 {
                rows.insert(
                    (alloc::format!("j{i}"), alloc::format!("j{k}")),
                    alloc::vec![alloc::format!("j{}", (i + k) % 4)],
                );
            }
        }
        assert_eq!(detect_simple_currents(&labels, &rows).unwrap(), labels);
    }

    #[test]
    fn orbit_swaps_signs_in_triplet() {
        let m = library::triplet(3).unwrap();
        let o = orbit(&m, "X1-", "X2+", None).unwrap();
        assert_eq!(o.elements, alloc::vec!["X2+".to_string(), "X2-".to_string()]);
        assert!(!o.fixed_point);
    }

    #[test]
    fn orbit_of_vacuum_is_the_current_pair() {
        let m = library::triplet(2).unwrap();
        let o = orbit(&m, "X1-", "X1+", None).unwrap();
        assert_eq!(o.elements, alloc::vec!["X1+".to_string(), "X1-".to_string()]);
    }

    #[test]
    fn fixed_point_is_flagged() {
        // Level 2: the action t ↦ k - t fixes t = 1.
        let m = library::affine_sl2(2).unwrap();
        let o = orbit(&m, "K", "L(1)", None).unwrap();
        assert_eq!(o.elements, alloc::vec!["L(1)".to_string()]);
        assert!(o.fixed_point);
    }

    #[test]
    fn loewy_dag_detection() {
        let mut d = LoewyDiagram {
            nodes: alloc::vec![(0, "a".into()), (1, "b".into())],
            edges: alloc::vec![(0, 1)],
        };
        assert!(d.is_dag());
        d.edges.push((1, 0));
        assert!(!d.is_dag());
    }
}
