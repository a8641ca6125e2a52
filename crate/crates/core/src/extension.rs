//! Parity classification of simple-current extensions.
//!
//! For a self-dual current `J` with twist `θ_J = ±1`, balancing forces the
//! self-braiding `c_{J,J}` to a sign, and the pair of signs decides what
//! `V ⊕ J` is: a ℤ-graded VOA, a genuinely ½ℤ-graded VOA ("wrong
//! statistics"), a vertex operator superalgebra, or a ℤ-graded super VOA
//! ("wrong statistics"). For longer cyclic gradings the same data of the
//! generator decides the parity of `⊕ⱼ Jʲ`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::model::{CurrentOrder, FusionModel, Orbit};
use crate::phase::{Phase, Sign};
use crate::rational::Rational;

/// Algebraic type of the extension `⊕ⱼ Jʲ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityClass {
    /// ℤ-graded vertex operator algebra (correct statistics).
    IntegerGradedVoa,
    /// Genuinely ½ℤ-graded VOA: commutative, but with half-integer weights.
    HalfIntegerGradedVoa,
    /// Vertex operator superalgebra with the odd part in weights ½ + ℤ.
    Vosa,
    /// ℤ-graded super VOA: super-commutative with integer weights.
    IntegerGradedSvoa,
}

impl ParityClass {
    /// Commutative (a VOA in the broad, possibly ½ℤ-graded, sense)?
    pub fn is_voa(self) -> bool {
        matches!(self, ParityClass::IntegerGradedVoa | ParityClass::HalfIntegerGradedVoa)
    }

    /// Super-commutative?
    pub fn is_super(self) -> bool {
        !self.is_voa()
    }

    /// Stable identifier used in serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            ParityClass::IntegerGradedVoa => "IntegerGradedVOA",
            ParityClass::HalfIntegerGradedVoa => "HalfIntegerGradedVOA_WrongStatistics",
            ParityClass::Vosa => "VOSA",
            ParityClass::IntegerGradedSvoa => "IntegerGradedSVOA_WrongStatistics",
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Maps the twist sign and braiding sign to the extension type.
///
/// `(+,+)` integer-graded VOA; `(−,+)` half-integer-graded VOA (wrong
/// statistics); `(−,−)` VOSA; `(+,−)` integer-graded super VOA (wrong
/// statistics).
pub fn classify_extension(theta_sign: Sign, c_sign: Sign) -> ParityClass {
    match (theta_sign, c_sign) {
        (Sign::Plus, Sign::Plus) => ParityClass::IntegerGradedVoa,
        (Sign::Minus, Sign::Plus) => ParityClass::HalfIntegerGradedVoa,
        (Sign::Minus, Sign::Minus) => ParityClass::Vosa,
        (Sign::Plus, Sign::Minus) => ParityClass::IntegerGradedSvoa,
    }
}

/// Failure of the twist-sign hypothesis on the sector weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistViolation {
    /// `h_{Jᵏ} ∉ ½ℤ`, so `θ_{Jᵏ}` is not a sign.
    NotSign {
        /// First offending sector index `k`.
        index: usize,
        /// Its weight.
        weight: Rational,
    },
    /// The signs of `θ_{Jᵏ}` and `θ_{Jᵏ⁺²}` disagree.
    SignPeriod {
        /// First offending sector index `k`.
        index: usize,
    },
}

impl fmt::Display for TwistViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistViolation::NotSign { index, weight } => {
                write!(f, "twist at sector {index} is not ±1 (weight {weight})")
            }
            TwistViolation::SignPeriod { index } => write!(
                f,
                "twist signs at sectors {index} and {} disagree",
                index + 2
            ),
        }
    }
}

impl core::error::Error for TwistViolation {}

fn sector_signs(weights: &[Rational]) -> Result<Vec<Sign>, TwistViolation> {
    weights
        .iter()
        .enumerate()
        .map(|(index, h)| {
            Sign::of_weight(h).ok_or(TwistViolation::NotSign {
                index,
                weight: h.clone(),
            })
        })
        .collect()
}

/// Checks `θ_{Jᵏ} = ±1` with `θ_{Jᵏ⁺²}` carrying the same sign as `θ_{Jᵏ}`,
/// indices wrapping modulo the sector count.
pub fn twist_sign_pattern(weights: &[Rational]) -> Result<(), TwistViolation> {
    let signs = sector_signs(weights)?;
    let n = signs.len();
    if n == 0 {
        return Ok(());
    }
    for k in 0..n {
        if signs[k] != signs[(k + 2) % n] {
            return Err(TwistViolation::SignPeriod { index: k });
        }
    }
    Ok(())
}

/// Same check on a truncated prefix of an infinite grading (no wrap-around).
pub fn twist_sign_pattern_prefix(weights: &[Rational]) -> Result<(), TwistViolation> {
    let signs = sector_signs(weights)?;
    for k in 0..signs.len().saturating_sub(2) {
        if signs[k] != signs[k + 2] {
            return Err(TwistViolation::SignPeriod { index: k });
        }
    }
    Ok(())
}

/// The self-braiding from the spin-statistics identity
/// `c_{J,J}·qdim(J) = e^{2πih_J}`.
pub fn braiding_from_spin_statistics(h_j: &Rational, qdim: &Phase) -> Phase {
    Phase::from_weight(h_j).div(qdim)
}

/// Quantum dimension and self-braiding of a self-dual current from its
/// lowest weight `d` and the leading order `N` of the `J`–`J` operator
/// product: `qdim(J) = (−1)^N e^{−4πid}` and `c_{J,J} = (−1)^N e^{−2πid}`.
pub fn qdim_from_ope_order(d: &Rational, n_ope: i64) -> (Phase, Phase) {
    let half_n = Rational::new(n_ope, 2);
    let qdim = Phase::new(&half_n - &(d * &Rational::from_integer(2)));
    let c = Phase::new(&half_n - d);
    (qdim, c)
}

/// Violation of the balancing identity `c² · e^{4πih_J} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingViolation {
    /// The offending product `c² θ²` as a phase.
    pub defect: Phase,
}

impl fmt::Display for BalancingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "balancing fails: c²·θ² has phase {} instead of 0", self.defect)
    }
}

impl core::error::Error for BalancingViolation {}

/// Checks the balancing consequence for a self-dual current:
/// `2·(phase of c) + 2·h_J ≡ 0 (mod 1)`.
pub fn balancing_check(h_j: &Rational, c: &Phase) -> Result<(), BalancingViolation> {
    let defect = c.pow(2).mul(&Phase::from_weight(&(h_j * &Rational::from_integer(2))));
    if defect.is_one() {
        Ok(())
    } else {
        Err(BalancingViolation { defect })
    }
}

/// Grading group of the extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingGroup {
    /// Finite cyclic grading `ℤ_N`.
    Cyclic(u64),
    /// Infinite cyclic grading; the sector list is a truncated prefix.
    Integer,
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingGroup::Cyclic(n) => write!(f, "Z_{n}"),
            GradingGroup::Integer => write!(f, "Z"),
        }
    }
}

/// One sector `Jᵏ` of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    /// Label of `Jᵏ`.
    pub label: String,
    /// Its conformal weight.
    pub weight: Rational,
    /// ℤ₂-parity: true when the sector index lies outside `2G`.
    pub odd: bool,
}

/// Everything derived about the extension `V_e = ⊕ⱼ Jʲ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// The current generating the grading group.
    pub current: String,
    /// `ℤ_N` or `ℤ`.
    pub grading_group: GradingGroup,
    /// Sector list `J⁰, J¹, …` (truncated prefix for infinite gradings).
    pub sectors: Vec<Sector>,
    /// Labels of the even part (sector indices in the `2G`-coset of 0).
    pub even_part: Vec<String>,
    /// Sign of `θ_J` for the generator.
    pub theta_sign: Sign,
    /// Self-braiding of the generator, when determined.
    pub braiding: Option<Phase>,
    /// Quantum dimension of the generator, when known.
    pub qdim: Option<Phase>,
    /// Parity class; `None` when the braiding could not be determined.
    pub parity: Option<ParityClass>,
    /// Trace of which data determined the result.
    pub diagnostics: Vec<String>,
}

/// Optional extra inputs for [`build_extension`].
#[derive(Clone, Debug, Default)]
pub struct ExtensionOptions {
    /// Explicit self-braiding `c_{J,J}`; takes precedence over everything.
    pub braiding: Option<Phase>,
    /// `(d, N)`: lowest weight and leading OPE order, the fallback route for
    /// the braiding when no quantum dimension is recorded.
    pub ope_order: Option<(Rational, i64)>,
    /// Sector bound for infinite-order currents.
    pub truncation: Option<usize>,
}

/// Why an extension report could not be produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendError {
    /// Orbit resolution failed.
    Orbit(crate::model::OrbitError),
    /// A sector label has no recorded weight.
    MissingWeight(String),
    /// The twist-sign hypothesis fails on the sectors.
    Twist(TwistViolation),
    /// Balancing fails for the resolved braiding.
    Balancing(BalancingViolation),
}

impl fmt::Display for ExtendError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendError::Orbit(e) => write!(f, "{e}"),
            ExtendError::MissingWeight(l) => write!(f, "sector {l:?} has no weight"),
            ExtendError::Twist(e) => write!(f, "{e}"),
            ExtendError::Balancing(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ExtendError {}

impl From<crate::model::OrbitError> for ExtendError {
    fn from(e: crate::model::OrbitError) -> Self {
        ExtendError::Orbit(e)
    }
}

fn braiding_resolution(
    j: &crate::model::SimpleCurrent,
    opts: &ExtensionOptions,
    diagnostics: &mut Vec<String>,
) -> (Option<Phase>, Option<Phase>) {
    if let Some(c) = &opts.braiding {
        diagnostics.push("braiding: explicit user value".to_string());
        return (Some(c.clone()), j.qdim.clone());
    }
    if let Some(q) = &j.qdim {
        diagnostics.push("braiding: spin statistics from recorded qdim".to_string());
        return (
            Some(braiding_from_spin_statistics(&j.weight, q)),
            Some(q.clone()),
        );
    }
    if let Some((d, n)) = &opts.ope_order {
        diagnostics.push(format!("braiding: OPE-order route with d = {d}, N = {n}"));
        let (q, c) = qdim_from_ope_order(d, *n);
        return (Some(c), Some(q));
    }
    diagnostics.push(
        "braiding undetermined: supply a qdim, an explicit braiding, or OPE data".to_string(),
    );
    (None, None)
}

/// Builds the full extension report for `⊕ⱼ Jʲ`.
///
/// The braiding is resolved in the order: explicit value, spin statistics
/// (needs the current's quantum dimension), OPE-order formula. When none is
/// available the report carries no parity and a diagnostic. A twist-sign or
/// balancing failure aborts with an error.
pub fn build_extension(
    model: &FusionModel,
    current: &str,
    opts: &ExtensionOptions,
) -> Result<ExtensionReport, ExtendError> {
    let j = model
        .current(current)
        .ok_or_else(|| ExtendError::Orbit(crate::model::OrbitError::UnknownCurrent(current.to_string())))?;
    let Orbit {
        elements, truncated, ..
    } = crate::model::orbit(model, current, model.vacuum(), opts.truncation)?;

    let weights: Vec<Rational> = elements
        .iter()
        .map(|l| {
            model
                .weight(l)
                .cloned()
                .ok_or_else(|| ExtendError::MissingWeight(l.clone()))
        })
        .collect::<Result<_, _>>()?;

    let mut diagnostics = Vec::new();
    let grading = match j.order {
        CurrentOrder::Finite(_) => {
            twist_sign_pattern(&weights).map_err(ExtendError::Twist)?;
            GradingGroup::Cyclic(elements.len() as u64)
        }
        CurrentOrder::Infinite => {
            twist_sign_pattern_prefix(&weights).map_err(ExtendError::Twist)?;
            if truncated {
                diagnostics.push(format!(
                    "sector list truncated after {} entries",
                    elements.len()
                ));
            }
            GradingGroup::Integer
        }
    };

    // Parity of each sector index inside G: odd iff the index is odd and
    // 2G is a proper subgroup (always for Z; for Z_N only when N is even).
    let n = elements.len();
    let odd_exists = match grading {
        GradingGroup::Cyclic(n) => n % 2 == 0,
        GradingGroup::Integer => true,
    };
    let sectors: Vec<Sector> = elements
        .iter()
        .zip(&weights)
        .enumerate()
        .map(|(k, (label, weight))| Sector {
            label: label.clone(),
            weight: weight.clone(),
            odd: odd_exists && k % 2 == 1,
        })
        .collect();
    let even_part: Vec<String> = sectors
        .iter()
        .filter(|s| !s.odd)
        .map(|s| s.label.clone())
        .collect();

    // Trivial grading: the extension is V itself.
    if n == 1 && matches!(grading, GradingGroup::Cyclic(_)) {
        diagnostics.push("trivial current: extension is V itself".to_string());
        return Ok(ExtensionReport {
            current: current.to_string(),
            grading_group: grading,
            sectors,
            even_part,
            theta_sign: Sign::Plus,
            braiding: Some(Phase::one()),
            qdim: j.qdim.clone(),
            parity: Some(ParityClass::IntegerGradedVoa),
            diagnostics,
        });
    }

    let theta_sign = Sign::of_weight(&j.weight).ok_or(ExtendError::Twist(TwistViolation::NotSign {
        index: 1,
        weight: j.weight.clone(),
    }))?;

    let (braiding, qdim) = braiding_resolution(j, opts, &mut diagnostics);
    if let Some(c) = &braiding {
        balancing_check(&j.weight, c).map_err(ExtendError::Balancing)?;
    }

    let parity = if !odd_exists {
        // G = 2G: every sector is even and the extension is an honest
        // integer-graded VOA regardless of the generator's braiding.
        diagnostics.push("odd cyclic grading: G = 2G, all sectors even".to_string());
        Some(ParityClass::IntegerGradedVoa)
    } else {
        match braiding.as_ref().map(|c| c.as_sign()) {
            Some(Some(c_sign)) => Some(classify_extension(theta_sign, c_sign)),
            Some(None) => {
                diagnostics.push(format!(
                    "braiding phase {} is not ±1: no parity classification",
                    braiding.as_ref().unwrap()
                ));
                None
            }
            None => None,
        }
    };

    Ok(ExtensionReport {
        current: current.to_string(),
        grading_group: grading,
        sectors,
        even_part,
        theta_sign,
        braiding,
        qdim,
        parity,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn classification_is_total_and_distinct() {
        let all = [
            classify_extension(Sign::Plus, Sign::Plus),
            classify_extension(Sign::Minus, Sign::Plus),
            classify_extension(Sign::Minus, Sign::Minus),
            classify_extension(Sign::Plus, Sign::Minus),
        ];
        assert_eq!(all[0], ParityClass::IntegerGradedVoa);
        assert_eq!(all[1], ParityClass::HalfIntegerGradedVoa);
        assert_eq!(all[2], ParityClass::Vosa);
        assert_eq!(all[3], ParityClass::IntegerGradedSvoa);
        for i in 0..4 {
            for k in (i + 1)..4 {
                assert_ne!(all[i], all[k]);
            }
        }
    }

    #[test]
    fn twist_pattern_examples() {
        // Symplectic-fermion case h_J = 1.
        assert!(twist_sign_pattern(&[r(0, 1), r(1, 1)]).is_ok());
        // A non-sign twist is rejected at its index.
        assert_eq!(
            twist_sign_pattern(&[r(0, 1), r(3, 4)]),
            Err(TwistViolation::NotSign { index: 1, weight: r(3, 4) })
        );
        // Alternating signs with period 2 are fine.
        assert!(twist_sign_pattern(&[r(0, 1), r(1, 2), r(0, 1), r(1, 2)]).is_ok());
        // Odd wrap-around forces all signs equal.
        assert!(matches!(
            twist_sign_pattern(&[r(0, 1), r(1, 2), r(0, 1)]),
            Err(TwistViolation::SignPeriod { .. })
        ));
    }

    #[test]
    fn spin_statistics_examples() {
        // Symplectic fermion: h = 1, qdim = -1 gives c = -1.
        assert_eq!(
            braiding_from_spin_statistics(&r(1, 1), &Phase::minus_one()),
            Phase::minus_one()
        );
        assert_eq!(
            braiding_from_spin_statistics(&r(0, 1), &Phase::one()),
            Phase::one()
        );
        // h = p - 1 = 2 with qdim +1 stays +1.
        assert_eq!(
            braiding_from_spin_statistics(&r(2, 1), &Phase::one()),
            Phase::one()
        );
    }

    #[test]
    fn ope_order_examples() {
        // d = (3p-2)/4, N = 2p-1.
        let (q, _) = qdim_from_ope_order(&r(4, 4), 3); // p = 2
        assert_eq!(q, Phase::minus_one());
        let (q, _) = qdim_from_ope_order(&r(7, 4), 5); // p = 3
        assert_eq!(q, Phase::one());
        let (q, c) = qdim_from_ope_order(&r(0, 1), 0);
        assert_eq!((q, c), (Phase::one(), Phase::one()));
    }

    #[test]
    fn ope_routes_are_consistent() {
        // The two formulas always satisfy c = qdim · e^{2πid}.
        for (dn, dd, n) in [(3, 4, 5i64), (7, 4, 3), (1, 2, 2), (5, 8, 7), (-3, 4, 1)] {
            let d = r(dn, dd);
            let (q, c) = qdim_from_ope_order(&d, n);
            assert_eq!(c, q.mul(&Phase::from_weight(&d)));
        }
    }

    #[test]
    fn balancing_examples() {
        assert!(balancing_check(&r(1, 1), &Phase::minus_one()).is_ok());
        assert!(balancing_check(&r(1, 2), &Phase::one()).is_ok());
        assert!(balancing_check(&r(1, 4), &Phase::one()).is_err());
    }
}
