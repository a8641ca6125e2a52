//! Parametrized constructors for the standard building blocks and the
//! composite families, with the published lift lists and parity claims
//! attached as golden expectations.
//!
//! Building blocks: triplet algebras `W(p)`, Virasoro minimal models
//! `Vir(u,v)`, affine sl₂ at positive integer level, rank-one even lattices
//! `V_{√(2p)ℤ}`, and a two-label βγ-sector stand-in for affine sl₂ at level
//! −1/2. Families combine them by tensoring and extend along the diagonal
//! order-two current.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::extension::{build_extension, ExtendError, ExtensionOptions, ExtensionReport, ParityClass};
use crate::lifting::{induce, lifts, LiftError};
use crate::model::{
    CurrentOrder, FusionModel, IndecomposableModule, LabelData, LoewyDiagram, SimpleCurrent,
};
use crate::phase::Phase;
use crate::rational::Rational;

/// Failure of a library constructor or comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LibraryError {
    /// Parameter outside the constructor's domain.
    InvalidParameter(String),
    /// Extension analysis failed while comparing.
    Extend(ExtendError),
    /// Lift analysis failed while comparing.
    Lift(LiftError),
}

impl fmt::Display for LibraryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LibraryError::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            LibraryError::Extend(e) => write!(f, "{e}"),
            LibraryError::Lift(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LibraryError {}

impl From<ExtendError> for LibraryError {
    fn from(e: ExtendError) -> Self {
        LibraryError::Extend(e)
    }
}

impl From<LiftError> for LibraryError {
    fn from(e: LiftError) -> Self {
        LibraryError::Lift(e)
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn sign_phase(negative: bool) -> Phase {
    if negative {
        Phase::minus_one()
    } else {
        Phase::one()
    }
}

/// The triplet algebra `W(p)`, `p ≥ 2`.
///
/// Simples `X_s^±` for `s = 1..p` with
/// `h_s^+ = ((p−s)² − (p−1)²)/4p` and `h_s^- = ((2p−s)² − (p−1)²)/4p`,
/// projective covers `P_s^±` for `s = 1..p−1`, and the order-two current
/// `X_1^-` of weight `(3p−2)/4` and quantum dimension `−(−1)^p`.
pub fn triplet(p: u32) -> Result<FusionModel, LibraryError> {
    if p < 2 {
        return Err(LibraryError::InvalidParameter(format!("triplet needs p >= 2, got {p}")));
    }
    let pp = i64::from(p);
    let h_plus = |s: i64| r((pp - s) * (pp - s) - (pp - 1) * (pp - 1), 4 * pp);
    let h_minus = |s: i64| r((2 * pp - s) * (2 * pp - s) - (pp - 1) * (pp - 1), 4 * pp);
    let qdim_current = sign_phase(p % 2 == 0); // -(-1)^p

    let mut labels = Vec::new();
    for s in 1..=pp {
        let qdim = (s == 1).then(Phase::one);
        labels.push((format!("X{s}+"), LabelData { weight: h_plus(s), qdim }));
    }
    for s in 1..=pp {
        let qdim = (s == 1).then(|| qdim_current.clone());
        labels.push((format!("X{s}-"), LabelData { weight: h_minus(s), qdim }));
    }

    let mut action = BTreeMap::new();
    for s in 1..=pp {
        action.insert(format!("X{s}+"), format!("X{s}-"));
        action.insert(format!("X{s}-"), format!("X{s}+"));
    }
    let current = SimpleCurrent {
        name: "X1-".to_string(),
        order: CurrentOrder::Finite(2),
        weight: r(3 * pp - 2, 4),
        qdim: Some(qdim_current),
        action,
    };

    let mut indecs = Vec::new();
    for s in 1..pp {
        for (sig, other) in [('+', '-'), ('-', '+')] {
            let coset = if sig == '+' { h_plus(s) } else { h_minus(s) };
            // Socle structure: top and bottom X_s^sig, two middle factors
            // X_{p-s}^other (the unique coset-consistent diamond).
            let mid = format!("X{}{other}", pp - s);
            indecs.push(IndecomposableModule {
                name: format!("P{s}{sig}"),
                weight_coset: coset,
                images: [("X1-".to_string(), format!("P{s}{other}"))].into_iter().collect(),
                loewy: Some(LoewyDiagram {
                    nodes: vec![
                        (0, format!("X{s}{sig}")),
                        (1, mid.clone()),
                        (2, mid),
                        (3, format!("X{s}{sig}")),
                    ],
                    edges: vec![(0, 1), (0, 2), (1, 3), (2, 3)],
                }),
                attested: true,
                subquotient_of_simples: true,
            });
        }
    }

    let model = FusionModel::new(format!("triplet({p})"), "X1+", labels, vec![current], indecs)
        .expect("triplet construction is well-formed")
        .with_central_charge(r(1, 1) - r(6 * (pp - 1) * (pp - 1), pp));
    Ok(model)
}

/// Two-label current sector `{vacuum, J}` of `Vir(u,v)`: weight
/// `(u−2)(v−2)/4`, quantum dimension `(−1)^{u+v+1}`.
fn virasoro_current_sector(u: i64, v: i64, name: String) -> FusionModel {
    let h = r((u - 2) * (v - 2), 4);
    let qdim = sign_phase((u + v + 1) % 2 != 0);
    let labels = vec![
        ("vac".to_string(), LabelData { weight: Rational::zero(), qdim: Some(Phase::one()) }),
        ("J".to_string(), LabelData { weight: h.clone(), qdim: Some(qdim.clone()) }),
    ];
    let action: BTreeMap<String, String> =
        [("vac", "J"), ("J", "vac")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    FusionModel::new(
        name,
        "vac",
        labels,
        vec![SimpleCurrent {
            name: "J".to_string(),
            order: CurrentOrder::Finite(2),
            weight: h,
            qdim: Some(qdim),
            action,
        }],
        vec![],
    )
    .expect("current sector construction is well-formed")
    .with_central_charge(r(1, 1) - r(6 * (u - v) * (u - v), u * v))
}

/// The simple Virasoro minimal model `Vir(u,v)`, `u, v ≥ 3` coprime.
///
/// Always carries the self-dual current `J_{u,v}` of weight `(u−2)(v−2)/4`
/// and quantum dimension `(−1)^{u+v+1}`; when one of the parameters is 3 the
/// model carries the full `φ_{1,s}` ladder (`s = 1..v−1`, weights
/// `((v−3s)² − (v−3)²)/12v`) with the current acting by `s ↦ v−s`.
pub fn virasoro_minimal(u: u32, v: u32) -> Result<FusionModel, LibraryError> {
    let (mut u, mut v) = (i64::from(u), i64::from(v));
    if u < 3 || v < 3 {
        return Err(LibraryError::InvalidParameter(format!(
            "virasoro_minimal needs coprime u, v >= 3, got ({u}, {v})"
        )));
    }
    if u.gcd(&v) != 1 {
        return Err(LibraryError::InvalidParameter(format!(
            "virasoro_minimal needs gcd(u, v) = 1, got ({u}, {v})"
        )));
    }
    if v == 3 {
        core::mem::swap(&mut u, &mut v);
    }
    let name = format!("virasoro({u},{v})");
    if u != 3 {
        return Ok(virasoro_current_sector(u, v, name));
    }

    let h = |s: i64| r((v - 3 * s) * (v - 3 * s) - (v - 3) * (v - 3), 12 * v);
    let current_qdim = sign_phase(v % 2 != 0); // (-1)^{u+v+1} = (-1)^v
    let mut labels = Vec::new();
    for s in 1..v {
        let qdim = if s == 1 {
            Some(Phase::one())
        } else if s == v - 1 {
            Some(current_qdim.clone())
        } else {
            None
        };
        labels.push((format!("phi1_{s}"), LabelData { weight: h(s), qdim }));
    }
    let action: BTreeMap<String, String> =
        (1..v).map(|s| (format!("phi1_{s}"), format!("phi1_{}", v - s))).collect();
    let current = SimpleCurrent {
        name: format!("phi1_{}", v - 1),
        order: CurrentOrder::Finite(2),
        weight: h(v - 1),
        qdim: Some(current_qdim),
        action,
    };
    let model = FusionModel::new(name, "phi1_1", labels, vec![current], vec![])
        .expect("minimal model construction is well-formed")
        .with_central_charge(r(1, 1) - r(6 * (3 - v) * (3 - v), 3 * v));
    Ok(model)
}

/// The simple affine VOA `L_k(sl₂)`, `k ≥ 1`.
///
/// Simples `L(t)` (t the Λ₁-coefficient, `t = 0..k`) of weight
/// `t(t+2)/4(k+2)`; the self-dual current `K` of weight `k/4` acts by
/// `t ↦ k−t` and has quantum dimension 1 (the model is unitary).
pub fn affine_sl2(k: u32) -> Result<FusionModel, LibraryError> {
    if k < 1 {
        return Err(LibraryError::InvalidParameter(format!("affine_sl2 needs k >= 1, got {k}")));
    }
    let kk = i64::from(k);
    let h = |t: i64| r(t * (t + 2), 4 * (kk + 2));
    let mut labels = Vec::new();
    for t in 0..=kk {
        let qdim = (t == 0 || t == kk).then(Phase::one);
        labels.push((format!("L({t})"), LabelData { weight: h(t), qdim }));
    }
    let action: BTreeMap<String, String> =
        (0..=kk).map(|t| (format!("L({t})"), format!("L({})", kk - t))).collect();
    let current = SimpleCurrent {
        name: "K".to_string(),
        order: CurrentOrder::Finite(2),
        weight: r(kk, 4),
        qdim: Some(Phase::one()),
        action,
    };
    let model = FusionModel::new(format!("affine_sl2({k})"), "L(0)", labels, vec![current], vec![])
        .expect("affine construction is well-formed")
        .with_central_charge(r(3 * kk, kk + 2));
    Ok(model)
}

/// Two-label stand-in for affine sl₂ at level −1/2: the even and odd parts
/// of the rank-one βγ system. The current has weight 1/2 (the weight of the
/// lowest βγ states) and quantum dimension −1, since the βγ VOA is a
/// half-integer graded VOA of wrong statistics.
pub fn affine_sl2_half() -> FusionModel {
    let labels = vec![
        ("vac".to_string(), LabelData { weight: Rational::zero(), qdim: Some(Phase::one()) }),
        ("J".to_string(), LabelData { weight: r(1, 2), qdim: Some(Phase::minus_one()) }),
    ];
    let action: BTreeMap<String, String> =
        [("vac", "J"), ("J", "vac")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    FusionModel::new(
        "affine_sl2(-1/2)",
        "vac",
        labels,
        vec![SimpleCurrent {
            name: "J".to_string(),
            order: CurrentOrder::Finite(2),
            weight: r(1, 2),
            qdim: Some(Phase::minus_one()),
            action,
        }],
        vec![],
    )
    .expect("beta-gamma sector construction is well-formed")
    .with_central_charge(r(-1, 1))
}

/// The rank-one lattice VOA `V_{√(2p)ℤ}`, `p ≥ 1`.
///
/// `2p` simples `j_i` of weight `i²/4p` under the `ℤ_{2p}` fusion law; every
/// simple is a simple current of quantum dimension one. The distinguished
/// self-dual current is `j_p` of weight `p/4`.
pub fn lattice_rank1(p: u32) -> Result<FusionModel, LibraryError> {
    if p < 1 {
        return Err(LibraryError::InvalidParameter(format!("lattice_rank1 needs p >= 1, got {p}")));
    }
    let n = 2 * i64::from(p);
    let h = |i: i64| r(i * i, 2 * n);
    let labels: Vec<(String, LabelData)> = (0..n)
        .map(|i| (format!("j{i}"), LabelData { weight: h(i), qdim: Some(Phase::one()) }))
        .collect();
    let currents: Vec<SimpleCurrent> = (0..n)
        .map(|i| SimpleCurrent {
            name: format!("j{i}"),
            order: CurrentOrder::Finite((n / n.gcd(&i).max(1)) as u64),
            weight: h(i),
            qdim: Some(Phase::one()),
            action: (0..n).map(|m| (format!("j{m}"), format!("j{}", (m + i) % n))).collect(),
        })
        .collect();
    let model = FusionModel::new(format!("lattice_rank1({p})"), "j0", labels, currents, vec![])
        .expect("lattice construction is well-formed")
        .with_central_charge(Rational::one());
    Ok(model)
}

/// The one-label unit model for [`tensor_model`].
pub fn trivial_model() -> FusionModel {
    FusionModel::new(
        "trivial",
        "1",
        vec![("1".to_string(), LabelData { weight: Rational::zero(), qdim: Some(Phase::one()) })],
        vec![],
        vec![],
    )
    .expect("trivial construction is well-formed")
    .with_central_charge(Rational::zero())
}

fn pair(a: &str, b: &str) -> String {
    format!("{a}*{b}")
}

fn mul_qdim(a: &Option<Phase>, b: &Option<Phase>) -> Option<Phase> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.mul(y)),
        _ => None,
    }
}

/// Tensor product of two models: labels are pairs, weights add, quantum
/// dimensions multiply, currents act componentwise, and indecomposable
/// products are tracked for (indec ⊗ simple), (simple ⊗ indec) and
/// (indec ⊗ indec).
pub fn tensor_model(a: &FusionModel, b: &FusionModel) -> FusionModel {
    let mut labels = Vec::new();
    for la in a.labels() {
        for lb in b.labels() {
            let da = a.label(la).unwrap();
            let db = b.label(lb).unwrap();
            labels.push((
                pair(la, lb),
                LabelData {
                    weight: &da.weight + &db.weight,
                    qdim: mul_qdim(&da.qdim, &db.qdim),
                },
            ));
        }
    }

    let mut currents = Vec::new();
    for ja in a.currents() {
        for jb in b.currents() {
            let order = match (ja.order, jb.order) {
                (CurrentOrder::Finite(x), CurrentOrder::Finite(y)) => {
                    CurrentOrder::Finite(x.lcm(&y))
                }
                _ => CurrentOrder::Infinite,
            };
            let mut action = BTreeMap::new();
            for (fa, ta) in &ja.action {
                for (fb, tb) in &jb.action {
                    action.insert(pair(fa, fb), pair(ta, tb));
                }
            }
            currents.push(SimpleCurrent {
                name: pair(&ja.name, &jb.name),
                order,
                weight: &ja.weight + &jb.weight,
                qdim: mul_qdim(&ja.qdim, &jb.qdim),
                action,
            });
        }
    }

    let mut indecs = Vec::new();
    let product_images = |ia: Option<&IndecomposableModule>,
                          la: &str,
                          ib: Option<&IndecomposableModule>,
                          lb: &str|
     -> BTreeMap<String, String> {
        let mut images = BTreeMap::new();
        for ja in a.currents() {
            for jb in b.currents() {
                let img_a = match ia {
                    Some(p) => p.images.get(&ja.name).cloned(),
                    None => ja.image(la).map(str::to_string),
                };
                let img_b = match ib {
                    Some(p) => p.images.get(&jb.name).cloned(),
                    None => jb.image(lb).map(str::to_string),
                };
                if let (Some(x), Some(y)) = (img_a, img_b) {
                    images.insert(pair(&ja.name, &jb.name), pair(&x, &y));
                }
            }
        }
        images
    };
    for pa in a.indecomposables() {
        for lb in b.labels() {
            indecs.push(IndecomposableModule {
                name: pair(&pa.name, lb),
                weight_coset: &pa.weight_coset + &b.label(lb).unwrap().weight,
                images: product_images(Some(pa), "", None, lb),
                loewy: None,
                attested: pa.attested,
                subquotient_of_simples: pa.subquotient_of_simples,
            });
        }
    }
    for la in a.labels() {
        for pb in b.indecomposables() {
            indecs.push(IndecomposableModule {
                name: pair(la, &pb.name),
                weight_coset: &a.label(la).unwrap().weight + &pb.weight_coset,
                images: product_images(None, la, Some(pb), ""),
                loewy: None,
                attested: pb.attested,
                subquotient_of_simples: pb.subquotient_of_simples,
            });
        }
    }
    for pa in a.indecomposables() {
        for pb in b.indecomposables() {
            indecs.push(IndecomposableModule {
                name: pair(&pa.name, &pb.name),
                weight_coset: &pa.weight_coset + &pb.weight_coset,
                images: product_images(Some(pa), "", Some(pb), ""),
                loewy: None,
                attested: pa.attested && pb.attested,
                subquotient_of_simples: pa.subquotient_of_simples && pb.subquotient_of_simples,
            });
        }
    }

    let cc = match (a.central_charge(), b.central_charge()) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    let mut m = FusionModel::new(
        format!("{}*{}", a.name(), b.name()),
        pair(a.vacuum(), b.vacuum()),
        labels,
        currents,
        indecs,
    )
    .expect("tensor construction is well-formed");
    if let Some(c) = cc {
        m = m.with_central_charge(c);
    }
    m
}

/// Published expectations attached to a family: the parity claim and the
/// printed membership lists for lifting simples and indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedExpectations {
    /// Expected parity class of the extension.
    pub parity: ParityClass,
    /// Modules the printed simple list ranges over.
    pub simple_universe: Vec<String>,
    /// Members of the printed simple lift list.
    pub simple_members: BTreeSet<String>,
    /// Modules the printed indecomposable list ranges over.
    pub indec_universe: Vec<String>,
    /// Members of the printed indecomposable lift list.
    pub indec_members: BTreeSet<String>,
    /// Expected isomorphism classes of induced simples, when published.
    pub iso_classes: Option<Vec<BTreeSet<String>>>,
}

/// A composite model, its extension current and the published expectations.
#[derive(Clone, Debug)]
pub struct FamilySetup {
    /// Family tag, e.g. `A(4)`.
    pub name: String,
    /// The composite model.
    pub model: FusionModel,
    /// Name of the extension current.
    pub current: String,
    /// Published data to compare against.
    pub printed: PrintedExpectations,
}

/// Family `𝔄_p = W(p) ⊗ L_{p−2}(sl₂)` extended along `X_1^- ⊗ K`, `p ≥ 3`.
pub fn family_a(p: u32) -> Result<FamilySetup, LibraryError> {
    if p < 3 {
        return Err(LibraryError::InvalidParameter(format!("family A needs p >= 3, got {p}")));
    }
    let w = triplet(p)?;
    let aff = affine_sl2(p - 2)?;
    let model = tensor_model(&w, &aff);
    let k = p - 2;

    // Printed membership: the X_s^+ row pairs with t = u and requires
    // s − t ≢ p (mod 2); the X_s^- row pairs with t = k − u and requires the
    // same, which reduces to s + u odd.
    let memb = |sig: char, s: u32, u: u32| -> bool {
        match sig {
            '+' => (s + u + p) % 2 != 0,
            _ => (s + u) % 2 != 0,
        }
    };
    let mut simple_universe = Vec::new();
    let mut simple_members = BTreeSet::new();
    let mut indec_universe = Vec::new();
    let mut indec_members = BTreeSet::new();
    for sig in ['+', '-'] {
        for s in 1..=p {
            for u in 0..=k {
                let name = pair(&format!("X{s}{sig}"), &format!("L({u})"));
                simple_universe.push(name.clone());
                if memb(sig, s, u) {
                    simple_members.insert(name);
                }
                if s < p {
                    let name = pair(&format!("P{s}{sig}"), &format!("L({u})"));
                    indec_universe.push(name.clone());
                    if memb(sig, s, u) {
                        indec_members.insert(name);
                    }
                }
            }
        }
    }

    Ok(FamilySetup {
        name: format!("A({p})"),
        model,
        current: "X1-*K".to_string(),
        printed: PrintedExpectations {
            parity: if p % 2 == 1 {
                ParityClass::IntegerGradedVoa
            } else {
                ParityClass::IntegerGradedSvoa
            },
            simple_universe,
            simple_members,
            indec_universe,
            indec_members,
            iso_classes: None,
        },
    })
}

/// Family `𝔅_p = W(p) ⊗ Vir(3,p)` extended along `X_1^- ⊗ J_{p,3}`,
/// `p ≥ 4` coprime to 3.
pub fn family_b(p: u32) -> Result<FamilySetup, LibraryError> {
    if p < 4 || p % 3 == 0 {
        return Err(LibraryError::InvalidParameter(format!(
            "family B needs p >= 4 coprime to 3, got {p}"
        )));
    }
    let w = triplet(p)?;
    let vir = virasoro_minimal(3, p)?;
    let model = tensor_model(&w, &vir);

    // Printed membership: X_s^+ pairs with t = u and requires
    // s − t ≡ p (mod 2); X_s^- pairs with t = p − u, reducing to s + u even.
    let memb = |sig: char, s: u32, u: u32| -> bool {
        match sig {
            '+' => (s + u + p) % 2 == 0,
            _ => (s + u) % 2 == 0,
        }
    };
    let mut simple_universe = Vec::new();
    let mut simple_members = BTreeSet::new();
    let mut indec_universe = Vec::new();
    let mut indec_members = BTreeSet::new();
    for sig in ['+', '-'] {
        for s in 1..=p {
            for u in 1..p {
                let name = pair(&format!("X{s}{sig}"), &format!("phi1_{u}"));
                simple_universe.push(name.clone());
                if memb(sig, s, u) {
                    simple_members.insert(name);
                }
                if s < p {
                    let name = pair(&format!("P{s}{sig}"), &format!("phi1_{u}"));
                    indec_universe.push(name.clone());
                    if memb(sig, s, u) {
                        indec_members.insert(name);
                    }
                }
            }
        }
    }

    Ok(FamilySetup {
        name: format!("B({p})"),
        model,
        current: format!("X1-*phi1_{}", p - 1),
        printed: PrintedExpectations {
            parity: ParityClass::IntegerGradedSvoa,
            simple_universe,
            simple_members,
            indec_universe,
            indec_members,
            iso_classes: None,
        },
    })
}

/// Family `ℭ_p = W(p) ⊗ W(p)` extended along `X_1^- ⊗ X_1^-`, `p ≥ 2`.
///
/// At `p = 2` the model additionally carries the eight-factor
/// indecomposable `Q` that is not a product of indecomposables, with its
/// Loewy diagram (8 nodes, 16 edges).
pub fn family_c(p: u32) -> Result<FamilySetup, LibraryError> {
    if p < 2 {
        return Err(LibraryError::InvalidParameter(format!("family C needs p >= 2, got {p}")));
    }
    let w = triplet(p)?;
    let mut model = tensor_model(&w, &w);

    if p == 2 {
        // The non-product indecomposable at s = t = 1. Solid edges carry the
        // left tensorand action, dashed ones the right; both are plain
        // directed edges here.
        let a = "X1+";
        let b = "X1-";
        let nodes = vec![
            (0, pair(b, b)),
            (1, pair(a, a)),
            (2, pair(b, b)),
            (3, pair(a, a)),
            (4, pair(a, b)),
            (5, pair(a, b)),
            (6, pair(b, a)),
            (7, pair(b, a)),
        ];
        let edges = vec![
            (0, 4),
            (4, 2),
            (0, 5),
            (5, 2),
            (1, 6),
            (6, 3),
            (1, 7),
            (7, 3),
            (0, 7),
            (6, 2),
            (1, 5),
            (5, 3),
            (0, 6),
            (1, 4),
            (4, 3),
            (7, 2),
        ];
        let q = IndecomposableModule {
            name: "Q".to_string(),
            weight_coset: Rational::zero(),
            images: [("X1-*X1-".to_string(), "Q".to_string())].into_iter().collect(),
            loewy: Some(LoewyDiagram { nodes, edges }),
            attested: true,
            subquotient_of_simples: true,
        };
        let labels: Vec<_> = model
            .labels()
            .iter()
            .map(|l| (l.clone(), model.label(l).unwrap().clone()))
            .collect();
        let mut indecs = model.indecomposables().to_vec();
        indecs.push(q);
        let cc = model.central_charge().cloned();
        model = FusionModel::new(
            model.name().to_string(),
            model.vacuum().to_string(),
            labels,
            model.currents().to_vec(),
            indecs,
        )
        .expect("family C construction is well-formed");
        if let Some(c) = cc {
            model = model.with_central_charge(c);
        }
    }

    // Printed membership on a product with factor signs (ε, δ) at indices
    // (s, t): like signs need s + t ≡ p (mod 2), mixed signs need s ≡ t.
    let memb = |e1: char, e2: char, s: u32, t: u32| -> bool {
        if e1 == e2 {
            (s + t + p) % 2 == 0
        } else {
            (s + t) % 2 == 0
        }
    };
    let mut simple_universe = Vec::new();
    let mut simple_members = BTreeSet::new();
    let mut indec_universe = Vec::new();
    let mut indec_members = BTreeSet::new();
    for e1 in ['+', '-'] {
        for e2 in ['+', '-'] {
            for s in 1..=p {
                for t in 1..=p {
                    let name = pair(&format!("X{s}{e1}"), &format!("X{t}{e2}"));
                    simple_universe.push(name.clone());
                    if memb(e1, e2, s, t) {
                        simple_members.insert(name);
                    }
                    for (ka, kb) in [("P", "X"), ("X", "P"), ("P", "P")] {
                        let sa_ok = ka == "X" || s < p;
                        let sb_ok = kb == "X" || t < p;
                        if sa_ok && sb_ok {
                            let name = pair(&format!("{ka}{s}{e1}"), &format!("{kb}{t}{e2}"));
                            indec_universe.push(name.clone());
                            if memb(e1, e2, s, t) {
                                indec_members.insert(name);
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(FamilySetup {
        name: format!("C({p})"),
        model,
        current: "X1-*X1-".to_string(),
        printed: PrintedExpectations {
            parity: if p % 2 == 0 {
                ParityClass::IntegerGradedVoa
            } else {
                ParityClass::Vosa
            },
            simple_universe,
            simple_members,
            indec_universe,
            indec_members,
            iso_classes: None,
        },
    })
}

/// `L_1(sl₂) ⊗ Vir(3,5)` extended along `L(1) ⊗ φ_{1,4}`: the level-one
/// osp(1|2) super VOA. Exactly four of the eight simple product modules
/// lift, in two isomorphism classes.
pub fn osp_level1() -> FamilySetup {
    let aff = affine_sl2(1).expect("level 1 is valid");
    let vir = virasoro_minimal(3, 5).expect("(3,5) is valid");
    let model = tensor_model(&aff, &vir);
    let m1 = "L(0)*phi1_1".to_string();
    let m2 = "L(0)*phi1_3".to_string();
    let m3 = "L(1)*phi1_2".to_string();
    let m4 = "L(1)*phi1_4".to_string();
    let simple_universe: Vec<String> = model.labels().to_vec();
    FamilySetup {
        name: "osp_level1".to_string(),
        model,
        current: "K*phi1_4".to_string(),
        printed: PrintedExpectations {
            parity: ParityClass::IntegerGradedSvoa,
            simple_universe,
            simple_members: [m1.clone(), m2.clone(), m3.clone(), m4.clone()]
                .into_iter()
                .collect(),
            indec_universe: vec![],
            indec_members: BTreeSet::new(),
            iso_classes: Some(vec![
                [m1, m4].into_iter().collect(),
                [m2, m3].into_iter().collect(),
            ]),
        },
    }
}

/// `W(2) ⊗ (βγ sectors)` extended along `X_1^- ⊗ J`: the small N=4 super
/// Virasoro algebra at central charge −3.
pub fn n4_c_minus3() -> FamilySetup {
    let w = triplet(2).expect("p = 2 is valid");
    let bg = affine_sl2_half();
    let model = tensor_model(&w, &bg);
    let simple_universe: Vec<String> = model.labels().to_vec();
    FamilySetup {
        name: "n4_c_minus3".to_string(),
        model,
        current: "X1-*J".to_string(),
        printed: PrintedExpectations {
            parity: ParityClass::Vosa,
            simple_universe,
            simple_members: BTreeSet::new(),
            indec_universe: vec![],
            indec_members: BTreeSet::new(),
            iso_classes: None,
        },
    }
}

/// `Vir(3, 2+r) ⊗ V_{√(2r)ℤ}` extended along `J_{3,2+r} ⊗ j_r`, `r ≥ 2`:
/// a W-algebra candidate with two weight-`r/2` generators. The current has
/// quantum dimension `(−1)^r`, so the extension is always commutative.
///
/// When `3 | (2+r)` the minimal model does not exist as a simple VOA; the
/// Virasoro factor then degrades to its two-label current sector, which
/// carries the same scalar data.
pub fn walgebra_candidate(rr: u32) -> Result<FamilySetup, LibraryError> {
    if rr < 2 {
        return Err(LibraryError::InvalidParameter(format!(
            "walgebra_candidate needs r >= 2, got {rr}"
        )));
    }
    let v = rr + 2;
    let (vir, vir_current) = if v % 3 == 0 {
        (
            virasoro_current_sector(3, i64::from(v), format!("virasoro(3,{v})")),
            "J".to_string(),
        )
    } else {
        (virasoro_minimal(3, v)?, format!("phi1_{}", v - 1))
    };
    let lat = lattice_rank1(rr)?;
    let model = tensor_model(&vir, &lat);
    let simple_universe: Vec<String> = model.labels().to_vec();
    Ok(FamilySetup {
        name: format!("walgebra({rr})"),
        model,
        current: format!("{vir_current}*j{rr}"),
        printed: PrintedExpectations {
            parity: if rr % 2 == 0 {
                ParityClass::IntegerGradedVoa
            } else {
                ParityClass::HalfIntegerGradedVoa
            },
            simple_universe,
            simple_members: BTreeSet::new(),
            indec_universe: vec![],
            indec_members: BTreeSet::new(),
            iso_classes: None,
        },
    })
}

/// A module on which derived and printed membership disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// The module.
    pub module: String,
    /// In the derived lift set?
    pub derived: bool,
    /// In the printed list?
    pub printed: bool,
}

/// Derived vs printed membership over one universe of modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetComparison {
    /// Modules that lift by the monodromy criterion.
    pub derived: Vec<String>,
    /// Modules in the printed list.
    pub printed: Vec<String>,
    /// All disagreements.
    pub divergences: Vec<Divergence>,
}

impl SetComparison {
    /// No disagreements?
    pub fn matches(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Derived vs printed isomorphism classes of induced simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoComparison {
    /// Classes derived by grouping lifting simples along current orbits.
    pub derived: Vec<Vec<String>>,
    /// Published classes.
    pub printed: Vec<Vec<String>>,
    /// Equality as sets of sets.
    pub matches: bool,
}

/// Full comparison of a family against its published expectations.
#[derive(Clone, Debug)]
pub struct FamilyComparison {
    /// Family tag.
    pub family: String,
    /// Parity class claimed in print.
    pub printed_parity: ParityClass,
    /// Parity class derived from the scalar data.
    pub derived_parity: Option<ParityClass>,
    /// Agreement of the two.
    pub parity_matches: bool,
    /// Simple lift list comparison.
    pub simples: SetComparison,
    /// Indecomposable lift list comparison.
    pub indecomposables: SetComparison,
    /// Isomorphism-class comparison, when classes are published.
    pub iso_classes: Option<IsoComparison>,
    /// The underlying extension report.
    pub report: ExtensionReport,
}

fn compare_sets(
    model: &FusionModel,
    current: &str,
    universe: &[String],
    printed: &BTreeSet<String>,
) -> Result<SetComparison, LibraryError> {
    let mut derived = Vec::new();
    for module in universe {
        if lifts(model, current, module)?.lifts {
            derived.push(module.clone());
        }
    }
    let derived_set: BTreeSet<&String> = derived.iter().collect();
    let mut divergences = Vec::new();
    for module in universe {
        let d = derived_set.contains(module);
        let p = printed.contains(module);
        if d != p {
            divergences.push(Divergence {
                module: module.clone(),
                derived: d,
                printed: p,
            });
        }
    }
    Ok(SetComparison {
        derived,
        printed: printed.iter().cloned().collect(),
        divergences,
    })
}

/// Runs the extension analysis and the full lift sweep for a family and
/// compares everything against the published expectations.
pub fn compare_family(setup: &FamilySetup) -> Result<FamilyComparison, LibraryError> {
    let report = build_extension(&setup.model, &setup.current, &ExtensionOptions::default())?;
    let derived_parity = report.parity;
    let simples = compare_sets(
        &setup.model,
        &setup.current,
        &setup.printed.simple_universe,
        &setup.printed.simple_members,
    )?;
    let indecomposables = compare_sets(
        &setup.model,
        &setup.current,
        &setup.printed.indec_universe,
        &setup.printed.indec_members,
    )?;

    let iso_classes = match &setup.printed.iso_classes {
        None => None,
        Some(printed_classes) => {
            let mut by_key: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            for module in &simples.derived {
                let ind = induce(&setup.model, &setup.current, module, None)?;
                by_key.entry(ind.iso_key).or_default().insert(module.clone());
            }
            let derived: Vec<Vec<String>> =
                by_key.into_values().map(|s| s.into_iter().collect()).collect();
            let printed: Vec<Vec<String>> = printed_classes
                .iter()
                .map(|s| s.iter().cloned().collect())
                .collect();
            let derived_norm: BTreeSet<Vec<String>> = derived.iter().cloned().collect();
            let printed_norm: BTreeSet<Vec<String>> = printed.iter().cloned().collect();
            Some(IsoComparison {
                matches: derived_norm == printed_norm,
                derived,
                printed,
            })
        }
    };

    Ok(FamilyComparison {
        family: setup.name.clone(),
        printed_parity: setup.printed.parity,
        derived_parity,
        parity_matches: derived_parity == Some(setup.printed.parity),
        simples,
        indecomposables,
        iso_classes,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(m: &FusionModel, l: &str) -> Rational {
        m.weight(l).cloned().unwrap()
    }

    #[test]
    fn table_one_triplet_values() {
        let m = triplet(2).unwrap();
        assert_eq!(h(&m, "X2+"), r(-1, 8));
        assert_eq!(h(&m, "X1-"), r(1, 1));
        assert_eq!(h(&m, "X1+"), Rational::zero());
        assert_eq!(m.central_charge().unwrap(), &r(-2, 1));
        let m = triplet(3).unwrap();
        assert_eq!(m.qdim("X1-").unwrap(), &Phase::one());
        assert_eq!(h(&m, "X1-"), r(7, 4));
    }

    #[test]
    fn table_one_affine_values() {
        let m = affine_sl2(1).unwrap();
        assert_eq!(h(&m, "L(1)"), r(1, 4));
        let m = affine_sl2(2).unwrap();
        assert_eq!(h(&m, "L(1)"), r(3, 16));
        let m = affine_sl2(3).unwrap();
        assert_eq!(m.current("K").unwrap().weight, r(3, 4));
    }

    #[test]
    fn table_one_virasoro_values() {
        let m = virasoro_minimal(3, 5).unwrap();
        assert_eq!(h(&m, "phi1_4"), r(3, 4));
        assert_eq!(m.qdim("phi1_4").unwrap(), &Phase::minus_one());
        let m = virasoro_minimal(3, 4).unwrap();
        assert_eq!(m.current("phi1_3").unwrap().weight, r(1, 2));
        // General coprime parameters carry just the current sector.
        let m = virasoro_minimal(4, 5).unwrap();
        assert_eq!(m.current("J").unwrap().weight, r(3, 2));
        assert_eq!(m.qdim("J").unwrap(), &Phase::one()); // (-1)^{4+5+1}
    }

    #[test]
    fn lattice_values() {
        let m = lattice_rank1(1).unwrap();
        assert_eq!(h(&m, "j1"), r(1, 4));
        let m = lattice_rank1(2).unwrap();
        assert_eq!(h(&m, "j2"), r(1, 2));
        assert_eq!(h(&m, "j0"), Rational::zero());
    }

    #[test]
    fn tensor_weights_add_and_qdims_multiply() {
        for p in [2u32, 3, 4, 5] {
            let w = triplet(p).unwrap();
            let aff = affine_sl2(p - 2).ok();
            if let Some(aff) = aff {
                let t = tensor_model(&w, &aff);
                let j = t.current("X1-*K").unwrap();
                assert_eq!(j.weight, r(i64::from(p) - 1, 1));
                let expected = if p % 2 == 0 { Phase::minus_one() } else { Phase::one() };
                assert_eq!(j.qdim.as_ref().unwrap(), &expected);
            }
        }
    }

    #[test]
    fn tensor_unit_behaviour() {
        let a = triplet(2).unwrap();
        let u = trivial_model();
        let t = tensor_model(&a, &u);
        for l in a.labels() {
            assert_eq!(h(&t, &format!("{l}*1")), h(&a, l));
        }
        assert_eq!(t.central_charge(), a.central_charge());
    }

    #[test]
    fn parameter_domains() {
        assert!(triplet(1).is_err());
        assert!(virasoro_minimal(3, 6).is_err());
        assert!(virasoro_minimal(2, 5).is_err());
        assert!(affine_sl2(0).is_err());
        assert!(lattice_rank1(0).is_err());
        assert!(family_a(2).is_err());
        assert!(family_b(6).is_err());
        assert!(family_c(1).is_err());
        assert!(walgebra_candidate(1).is_err());
    }

    #[test]
    fn osp_current_weight() {
        let s = osp_level1();
        let j = s.model.current(&s.current).unwrap();
        assert_eq!(j.weight, Rational::one());
        assert_eq!(j.qdim.as_ref().unwrap(), &Phase::minus_one());
    }

    #[test]
    fn walgebra_current_data() {
        for rr in 2u32..=8 {
            let s = walgebra_candidate(rr).unwrap();
            let j = s.model.current(&s.current).unwrap();
            assert_eq!(j.weight, r(i64::from(rr), 2), "weight r/2 at r = {rr}");
            let expected = sign_phase(rr % 2 != 0); // (-1)^r
            assert_eq!(j.qdim.as_ref().unwrap(), &expected, "qdim (-1)^r at r = {rr}");
        }
    }

    #[test]
    fn family_c2_carries_the_eight_node_fixture() {
        let s = family_c(2).unwrap();
        let q = s.model.indecomposable("Q").unwrap();
        let d = q.loewy.as_ref().unwrap();
        assert_eq!(d.nodes.len(), 8);
        assert_eq!(d.edges.len(), 16);
        assert!(d.is_dag());
    }
}
