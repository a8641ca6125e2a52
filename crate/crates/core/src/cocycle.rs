//! A lab for normalized abelian 3-cocycles `(F, Ω)` on finite abelian
//! groups — the skeletal datum of a braided pointed category.
//!
//! `F : G³ → μ_m` and `Ω : G² → μ_m` satisfy the pentagon identity, the two
//! hexagon identities and the normalization `F = 1`, `Ω = 1` whenever an
//! argument is 0. The trace `q(i) = Ω(i,i)` is a quadratic form whose
//! polarization `B(i,j) = Ω(i,j)Ω(j,i)` is the scalar monodromy; the lab
//! enumerates all such cocycles with values in a fixed group of roots of
//! unity, checks the monodromy consequences exhaustively, and searches for
//! coboundary equivalences.
//!
//! Internally all table values are exponents `t` of `e^{2πit/m}`, so every
//! identity check is integer arithmetic modulo `m`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::phase::Phase;
use crate::rational::Rational;

/// A finite abelian group presented as a product of cyclic factors.
///
/// Elements are tuples reduced componentwise; internally they are indexed
/// `0..order` in mixed-radix order with the first factor least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

impl FiniteAbelianGroup {
    /// A product `ℤ_{n₁} × … × ℤ_{nᵣ}`; every factor order must be ≥ 1.
    pub fn new(orders: Vec<u32>) -> Option<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n == 0) {
            return None;
        }
        Some(FiniteAbelianGroup { orders })
    }

    /// The cyclic group `ℤ_n`.
    pub fn cyclic(n: u32) -> Option<Self> {
        Self::new(vec![n])
    }

    /// Cyclic factor orders.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    /// Decodes an index into a component tuple.
    pub fn element(&self, mut idx: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.orders.len());
        for &n in &self.orders {
            out.push((idx % n as usize) as u32);
            idx /= n as usize;
        }
        out
    }

    /// Encodes a component tuple (reduced modulo the factor orders).
    pub fn index(&self, components: &[u32]) -> Option<usize> {
        if components.len() != self.orders.len() {
            return None;
        }
        let mut idx = 0usize;
        for (&c, &n) in components.iter().zip(&self.orders).rev() {
            idx = idx * n as usize + (c % n) as usize;
        }
        Some(idx)
    }

    /// Index of the sum of two elements given by index.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &n in &self.orders {
            let n = n as usize;
            let ca = a % n;
            let cb = b % n;
            idx += ((ca + cb) % n) * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        idx
    }

    /// Index of the negation of an element given by index.
    pub fn neg(&self, a: usize) -> usize {
        let mut a = a;
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &n in &self.orders {
            let n = n as usize;
            let ca = a % n;
            idx += ((n - ca) % n) * stride;
            stride *= n;
            a /= n;
        }
        idx
    }

    /// Renders an element as a comma-joined tuple, e.g. `1,0`.
    pub fn format_element(&self, idx: usize) -> String {
        let parts: Vec<String> = self.element(idx).iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Failure inside the cocycle lab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleError {
    /// Enumeration or search size guard exceeded.
    GuardExceeded(String),
    /// The operation needs a specific group.
    WrongGroup(String),
    /// Malformed table data.
    BadTable(String),
}

impl fmt::Display for CocycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleError::GuardExceeded(s) => write!(f, "size guard exceeded: {s}"),
            CocycleError::WrongGroup(s) => write!(f, "wrong group: {s}"),
            CocycleError::BadTable(s) => write!(f, "bad table: {s}"),
        }
    }
}

impl core::error::Error for CocycleError {}

/// Tables `F : G³ → μ_m`, `Ω : G² → μ_m` stored as exponents of
/// `e^{2πi/m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCocycle {
    group: FiniteAbelianGroup,
    value_order: u32,
    f: Vec<u32>,
    omega: Vec<u32>,
}

impl AbelianCocycle {
    /// The trivial cocycle (all values 1).
    pub fn trivial(group: FiniteAbelianGroup, value_order: u32) -> Self {
        let n = group.order();
        AbelianCocycle {
            group,
            value_order: value_order.max(1),
            f: vec![0; n * n * n],
            omega: vec![0; n * n],
        }
    }

    /// Builds a cocycle from exponent tables (`f` of length `n³` indexed by
    /// `(i·n + j)·n + k`, `omega` of length `n²` indexed by `i·n + j`).
    /// The tables are not required to satisfy any identity; [`verify`] does
    /// that.
    pub fn from_exponents(
        group: FiniteAbelianGroup,
        value_order: u32,
        f: Vec<u32>,
        omega: Vec<u32>,
    ) -> Result<Self, CocycleError> {
        let n = group.order();
        if value_order == 0 {
            return Err(CocycleError::BadTable("value order must be >= 1".into()));
        }
        if f.len() != n * n * n || omega.len() != n * n {
            return Err(CocycleError::BadTable(format!(
                "expected {} F entries and {} Omega entries, got {} and {}",
                n * n * n,
                n * n,
                f.len(),
                omega.len()
            )));
        }
        if f.iter().chain(&omega).any(|&t| t >= value_order) {
            return Err(CocycleError::BadTable(format!(
                "exponents must lie in 0..{value_order}"
            )));
        }
        Ok(AbelianCocycle { group, value_order, f, omega })
    }

    /// The underlying group.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `m` such that all values lie in the `m`-th roots of unity.
    pub fn value_order(&self) -> u32 {
        self.value_order
    }

    /// Exponent of `F` at element indices.
    pub fn f_exp(&self, i: usize, j: usize, k: usize) -> u32 {
        let n = self.group.order();
        self.f[(i * n + j) * n + k]
    }

    /// Exponent of `Ω` at element indices.
    pub fn omega_exp(&self, i: usize, j: usize) -> u32 {
        self.omega[i * self.group.order() + j]
    }

    /// Turns an exponent into a phase `e^{2πi·t/m}`.
    pub fn phase(&self, exp: u32) -> Phase {
        Phase::new(Rational::new(i64::from(exp), i64::from(self.value_order)))
    }

    /// `F` as a phase at element indices.
    pub fn f_phase(&self, i: usize, j: usize, k: usize) -> Phase {
        self.phase(self.f_exp(i, j, k))
    }

    /// `Ω` as a phase at element indices.
    pub fn omega_phase(&self, i: usize, j: usize) -> Phase {
        self.phase(self.omega_exp(i, j))
    }

    /// Scalar monodromy exponent `M(i,j) = Ω(i,j)·Ω(j,i)`.
    pub fn monodromy_exp(&self, i: usize, j: usize) -> u32 {
        (self.omega_exp(i, j) + self.omega_exp(j, i)) % self.value_order
    }
}

/// First counterexample to an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Argument tuple (each entry an element of the group).
    pub args: Vec<Vec<u32>>,
    /// Left-hand side of the identity.
    pub lhs: Phase,
    /// Right-hand side of the identity.
    pub rhs: Phase,
}

/// Per-identity outcome of [`verify`]: `None` means the identity holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// `F(·) = 1` and `Ω(·) = 1` whenever an argument is 0.
    pub normalization: Option<Counterexample>,
    /// `F(i,j,k)F(i,j+k,l)F(j,k,l) = F(i+j,k,l)F(i,j,k+l)`.
    pub pentagon: Option<Counterexample>,
    /// `F(i,j,k)⁻¹ Ω(i,j+k) F(j,k,i)⁻¹ = Ω(i,j) F(j,i,k)⁻¹ Ω(i,k)`.
    pub hexagon1: Option<Counterexample>,
    /// `F(i,j,k) Ω(i+j,k) F(k,i,j) = Ω(j,k) F(i,k,j) Ω(i,k)`.
    pub hexagon2: Option<Counterexample>,
}

impl VerifyReport {
    /// All identities hold.
    pub fn passed(&self) -> bool {
        self.normalization.is_none()
            && self.pentagon.is_none()
            && self.hexagon1.is_none()
            && self.hexagon2.is_none()
    }
}

fn modm(x: i64, m: u32) -> u32 {
    (x.rem_euclid(i64::from(m))) as u32
}

/// Checks all cocycle identities exhaustively.
pub fn verify(c: &AbelianCocycle) -> VerifyReport {
    let g = &c.group;
    let n = g.order();
    let m = c.value_order;
    let ce = |args: &[usize], lhs: u32, rhs: u32| Counterexample {
        args: args.iter().map(|&a| g.element(a)).collect(),
        lhs: c.phase(lhs),
        rhs: c.phase(rhs),
    };

    let mut normalization = None;
    'norm: for i in 0..n {
        for j in 0..n {
            if c.omega_exp(i, j) != 0 && (i == 0 || j == 0) {
                normalization = Some(ce(&[i, j], c.omega_exp(i, j), 0));
                break 'norm;
            }
            for k in 0..n {
                if c.f_exp(i, j, k) != 0 && (i == 0 || j == 0 || k == 0) {
                    normalization = Some(ce(&[i, j, k], c.f_exp(i, j, k), 0));
                    break 'norm;
                }
            }
        }
    }

    let mut pentagon = None;
    'pent: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs = i64::from(c.f_exp(i, j, k))
                        + i64::from(c.f_exp(i, g.add(j, k), l))
                        + i64::from(c.f_exp(j, k, l));
                    let rhs = i64::from(c.f_exp(g.add(i, j), k, l))
                        + i64::from(c.f_exp(i, j, g.add(k, l)));
                    if modm(lhs, m) != modm(rhs, m) {
                        pentagon = Some(ce(&[i, j, k, l], modm(lhs, m), modm(rhs, m)));
                        break 'pent;
                    }
                }
            }
        }
    }

    let mut hexagon1 = None;
    let mut hexagon2 = None;
    'hex: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs1 = -i64::from(c.f_exp(i, j, k)) + i64::from(c.omega_exp(i, g.add(j, k)))
                    - i64::from(c.f_exp(j, k, i));
                let rhs1 = i64::from(c.omega_exp(i, j)) - i64::from(c.f_exp(j, i, k))
                    + i64::from(c.omega_exp(i, k));
                if hexagon1.is_none() && modm(lhs1, m) != modm(rhs1, m) {
                    hexagon1 = Some(ce(&[i, j, k], modm(lhs1, m), modm(rhs1, m)));
                }
                let lhs2 = i64::from(c.f_exp(i, j, k))
                    + i64::from(c.omega_exp(g.add(i, j), k))
                    + i64::from(c.f_exp(k, i, j));
                let rhs2 = i64::from(c.omega_exp(j, k)) + i64::from(c.f_exp(i, k, j))
                    + i64::from(c.omega_exp(i, k));
                if hexagon2.is_none() && modm(lhs2, m) != modm(rhs2, m) {
                    hexagon2 = Some(ce(&[i, j, k], modm(lhs2, m), modm(rhs2, m)));
                }
                if hexagon1.is_some() && hexagon2.is_some() {
                    break 'hex;
                }
            }
        }
    }

    VerifyReport {
        normalization,
        pentagon,
        hexagon1,
        hexagon2,
    }
}

/// `F(1,1,1) = Ω(1,1)²` on `ℤ₂`. Returns the first counterexample, or
/// `None` when the identity holds.
pub fn key_identity_z2(c: &AbelianCocycle) -> Result<Option<Counterexample>, CocycleError> {
    if c.group.orders() != [2] {
        return Err(CocycleError::WrongGroup(format!(
            "key identity needs Z2, got {}",
            c.group
        )));
    }
    let lhs = c.f_exp(1, 1, 1);
    let rhs = (2 * c.omega_exp(1, 1)) % c.value_order;
    if lhs == rhs {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            args: vec![vec![1], vec![1], vec![1]],
            lhs: c.phase(lhs),
            rhs: c.phase(rhs),
        }))
    }
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration.

struct Csp {
    m: u32,
    nvars: usize,
    // terms[c] = list of (var, coeff); bucket[v] = constraints whose last
    // variable is v; incidence[v] = (constraint, coeff) pairs.
    terms: Vec<Vec<(u32, i8)>>,
    incidence: Vec<Vec<(u32, i8)>>,
}

impl Csp {
    fn add_constraint(&mut self, raw: &[(Option<u32>, i8)]) {
        // Collapse repeated variables; constants are exponent 0 and drop out.
        let mut combined: Vec<(u32, i8)> = Vec::new();
        for &(v, coeff) in raw {
            let Some(v) = v else { continue };
            match combined.iter_mut().find(|(u, _)| *u == v) {
                Some((_, c)) => *c += coeff,
                None => combined.push((v, coeff)),
            }
        }
        combined.retain(|&(_, c)| c != 0);
        if combined.is_empty() {
            return;
        }
        let id = self.terms.len() as u32;
        for &(v, c) in &combined {
            self.incidence[v as usize].push((id, c));
        }
        self.terms.push(combined);
    }
}

struct Search<'a> {
    csp: &'a Csp,
    vals: Vec<i32>,        // -1 = unassigned
    remaining: Vec<u32>,   // unassigned vars per constraint
    acc: Vec<i64>,         // sum of assigned coeff·val per constraint
    trail: Vec<u32>,       // assignment order for undo
}

impl<'a> Search<'a> {
    fn new(csp: &'a Csp) -> Self {
        Search {
            vals: vec![-1; csp.nvars],
            remaining: csp.terms.iter().map(|t| t.len() as u32).collect(),
            acc: vec![0; csp.terms.len()],
            trail: Vec::new(),
            csp,
        }
    }

    /// Assigns `v = val` and propagates forced values. Returns false on
    /// conflict. Every assignment actually applied is recorded on the
    /// trail with its constraint bookkeeping fully updated, so the caller
    /// can always rewind by trail length.
    fn assign(&mut self, v: u32, val: u32) -> bool {
        let m = i64::from(self.csp.m);
        let mut queue: Vec<(u32, u32)> = vec![(v, val)];
        while let Some((v, val)) = queue.pop() {
            if self.vals[v as usize] >= 0 {
                if self.vals[v as usize] != val as i32 {
                    return false;
                }
                continue;
            }
            self.vals[v as usize] = val as i32;
            self.trail.push(v);
            let mut ok = true;
            for &(cid, coeff) in &self.csp.incidence[v as usize] {
                let cid = cid as usize;
                self.acc[cid] += i64::from(coeff) * i64::from(val);
                self.remaining[cid] -= 1;
                match self.remaining[cid] {
                    0 => {
                        if self.acc[cid].rem_euclid(m) != 0 {
                            ok = false;
                        }
                    }
                    1 if ok => {
                        // Solve for the single open variable when its
                        // coefficient is a unit (±1); otherwise leave it to
                        // the final check.
                        let (u, uc) = *self
                            .csp
                            .terms[cid]
                            .iter()
                            .find(|(u, _)| self.vals[*u as usize] < 0)
                            .expect("one variable open");
                        if uc == 1 {
                            queue.push((u, (-self.acc[cid]).rem_euclid(m) as u32));
                        } else if uc == -1 {
                            queue.push((u, self.acc[cid].rem_euclid(m) as u32));
                        }
                    }
                    _ => {}
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn unwind(&mut self, to: usize) {
        while self.trail.len() > to {
            let v = self.trail.pop().unwrap() as usize;
            let val = self.vals[v];
            self.vals[v] = -1;
            for &(cid, coeff) in &self.csp.incidence[v] {
                let cid = cid as usize;
                self.acc[cid] -= i64::from(coeff) * i64::from(val);
                self.remaining[cid] += 1;
            }
        }
    }
}

fn build_csp(group: &FiniteAbelianGroup, m: u32) -> (Csp, Vec<Option<u32>>, Vec<Option<u32>>, usize) {
    let n = group.order();
    // Variables: the F entries with all arguments nonzero come first, then
    // the Ω entries with both arguments nonzero. Normalized entries are
    // constants.
    let mut fvar = vec![None; n * n * n];
    let mut next = 0u32;
    for i in 1..n {
        for j in 1..n {
            for k in 1..n {
                fvar[(i * n + j) * n + k] = Some(next);
                next += 1;
            }
        }
    }
    let mut ovar = vec![None; n * n];
    for i in 1..n {
        for j in 1..n {
            ovar[i * n + j] = Some(next);
            next += 1;
        }
    }
    let nvars = next as usize;
    let mut csp = Csp {
        m,
        nvars,
        terms: Vec::new(),
        incidence: vec![Vec::new(); nvars],
    };
    let fv = |i: usize, j: usize, k: usize| fvar[(i * n + j) * n + k];
    let ov = |i: usize, j: usize| ovar[i * n + j];

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    csp.add_constraint(&[
                        (fv(i, j, k), 1),
                        (fv(i, group.add(j, k), l), 1),
                        (fv(j, k, l), 1),
                        (fv(group.add(i, j), k, l), -1),
                        (fv(i, j, group.add(k, l)), -1),
                    ]);
                }
                csp.add_constraint(&[
                    (fv(i, j, k), -1),
                    (ov(i, group.add(j, k)), 1),
                    (fv(j, k, i), -1),
                    (ov(i, j), -1),
                    (fv(j, i, k), 1),
                    (ov(i, k), -1),
                ]);
                csp.add_constraint(&[
                    (fv(i, j, k), 1),
                    (ov(group.add(i, j), k), 1),
                    (fv(k, i, j), 1),
                    (ov(j, k), -1),
                    (fv(i, k, j), -1),
                    (ov(i, k), -1),
                ]);
            }
        }
    }
    (csp, fvar, ovar, nvars)
}

/// Streaming exhaustive enumeration of all valid cocycles on `group` with
/// values in the `m`-th roots of unity, in lexicographic table order.
/// Returns the number of cocycles visited.
///
/// Guard: `|G| ≤ 4` and `m ≤ 8`.
pub fn enumerate_with<V: FnMut(&AbelianCocycle)>(
    group: &FiniteAbelianGroup,
    m: u32,
    mut visit: V,
) -> Result<u64, CocycleError> {
    if group.order() > 4 || m > 8 || m == 0 {
        return Err(CocycleError::GuardExceeded(format!(
            "enumeration needs |G| <= 4 and 1 <= m <= 8, got |G| = {} and m = {m}",
            group.order()
        )));
    }
    let (csp, fvar, ovar, nvars) = build_csp(group, m);
    let mut search = Search::new(&csp);
    let mut count = 0u64;

    // Scratch cocycle reused for every solution.
    let mut scratch = AbelianCocycle::trivial(group.clone(), m);
    let mut emit = |search: &Search, count: &mut u64, scratch: &mut AbelianCocycle| {
        for (pos, v) in fvar.iter().enumerate() {
            scratch.f[pos] = v.map_or(0, |v| search.vals[v as usize] as u32);
        }
        for (pos, v) in ovar.iter().enumerate() {
            scratch.omega[pos] = v.map_or(0, |v| search.vals[v as usize] as u32);
        }
        *count += 1;
        visit(scratch);
    };
    let next_open = |search: &Search, from: u32| -> Option<u32> {
        (from as usize..nvars).find(|&v| search.vals[v] < 0).map(|v| v as u32)
    };

    // Depth-first over decision variables in id order with chronological
    // backtracking. Frame = (variable, next value to try, trail length at
    // entry). Rewinding to a frame's base also clears any popped children.
    let mut frames: Vec<(u32, u32, usize)> = Vec::new();
    match next_open(&search, 0) {
        None => emit(&search, &mut count, &mut scratch),
        Some(v0) => frames.push((v0, 0, search.trail.len())),
    }
    loop {
        let Some(frame) = frames.last_mut() else { break };
        let (var, base) = (frame.0, frame.2);
        if frame.1 >= m {
            frames.pop();
            continue;
        }
        let choice = frame.1;
        frame.1 += 1;
        search.unwind(base);
        if search.assign(var, choice) {
            match next_open(&search, var + 1) {
                None => emit(&search, &mut count, &mut scratch),
                Some(u) => {
                    let tl = search.trail.len();
                    frames.push((u, 0, tl));
                }
            }
        }
    }
    search.unwind(0);
    Ok(count)
}

/// Materialized [`enumerate_with`]. Fine for the small groups; prefer the
/// streaming form for `ℤ₄` with `m = 8`, whose full list has two million
/// entries.
pub fn enumerate(
    group: &FiniteAbelianGroup,
    m: u32,
) -> Result<Vec<AbelianCocycle>, CocycleError> {
    let mut out = Vec::new();
    enumerate_with(group, m, |c| out.push(c.clone()))?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quadratic form, monodromy suite, pullback, coboundaries.

/// Quadratic form `q(i) = Ω(i,i)` and its polarization
/// `B(i,j) = Ω(i,j)Ω(j,i)` (the scalar monodromy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    /// `q` indexed by element index.
    pub q: Vec<Phase>,
    /// `B` indexed by `i·n + j`.
    pub bilinear: Vec<Phase>,
}

/// A property of the quadratic form that failed; this indicates the tables
/// do not satisfy the cocycle identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticViolation {
    /// `B(i+j, k) ≠ B(i,k)·B(j,k)`.
    NotBimultiplicative {
        /// Witness triple of element indices.
        at: (usize, usize, usize),
    },
    /// `q(i+j) ≠ q(i)·q(j)·B(i,j)`.
    NotQuadratic {
        /// Witness pair of element indices.
        at: (usize, usize),
    },
}

impl fmt::Display for QuadraticViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticViolation::NotBimultiplicative { at } => write!(
                f,
                "B is not bimultiplicative at ({}, {}, {})",
                at.0, at.1, at.2
            ),
            QuadraticViolation::NotQuadratic { at } => {
                write!(f, "q(i+j) = q(i)q(j)B(i,j) fails at ({}, {})", at.0, at.1)
            }
        }
    }
}

impl core::error::Error for QuadraticViolation {}

/// Extracts `q` and `B` and asserts bimultiplicativity of `B` and the
/// quadratic property of `q` (both consequences of the hexagons; a failure
/// means the input is not a valid cocycle).
pub fn quadratic_form(c: &AbelianCocycle) -> Result<QuadraticData, QuadraticViolation> {
    let g = &c.group;
    let n = g.order();
    let m = c.value_order;
    let b = |i: usize, j: usize| c.monodromy_exp(i, j);
    let q = |i: usize| c.omega_exp(i, i);
    for i in 0..n {
        for j in 0..n {
            if (q(g.add(i, j))) % m != (q(i) + q(j) + b(i, j)) % m {
                return Err(QuadraticViolation::NotQuadratic { at: (i, j) });
            }
            for k in 0..n {
                if b(g.add(i, j), k) % m != (b(i, k) + b(j, k)) % m {
                    return Err(QuadraticViolation::NotBimultiplicative { at: (i, j, k) });
                }
            }
        }
    }
    Ok(QuadraticData {
        q: (0..n).map(|i| c.phase(q(i))).collect(),
        bilinear: (0..n * n).map(|x| c.phase(b(x / n, x % n))).collect(),
    })
}

/// One item of the monodromy-theorem suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteItem {
    /// The scalar specialization checked.
    pub name: &'static str,
    /// `None` when it holds for all elements.
    pub counterexample: Option<Vec<Vec<u32>>>,
}

/// Result of [`monodromy_theorem_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    /// All items in a fixed order.
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    /// Every item holds.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.counterexample.is_none())
    }
}

fn scalar_multiple(g: &FiniteAbelianGroup, times: usize, a: usize) -> usize {
    let mut out = 0usize;
    for _ in 0..times {
        out = g.add(out, a);
    }
    out
}

/// Exhaustively checks the scalar monodromy consequences on the pointed
/// data: with `M(a,b) = Ω(a,b)Ω(b,a)`,
///
/// * `M(a,c) = 1 ⇒ M(a,b+c) = M(a,b)` and `M(b,c) = 1 ⇒ M(a+b,c) = M(a,c)`;
/// * `M(j,j) = 1 ⇒ M(i·j, i'·j) = 1` for all multiples;
/// * `M(j,x) = 1 ⇒ M(−j,x) = 1`;
/// * `M(j,j) = 1 ∧ M(j,x) = 1 ⇒ M(i·j, i'·j + x) = 1`.
pub fn monodromy_theorem_suite(c: &AbelianCocycle) -> SuiteReport {
    let g = &c.group;
    let n = g.order();
    let m = c.value_order;
    let mm = |i: usize, j: usize| c.monodromy_exp(i, j) % m;
    let el = |xs: &[usize]| xs.iter().map(|&x| g.element(x)).collect::<Vec<_>>();

    let mut right = None;
    let mut left = None;
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                if right.is_none() && mm(a, x) == 0 && mm(a, g.add(b, x)) != mm(a, b) {
                    right = Some(el(&[a, b, x]));
                }
                if left.is_none() && mm(b, x) == 0 && mm(g.add(a, b), x) != mm(a, x) {
                    left = Some(el(&[a, b, x]));
                }
            }
        }
    }

    let mut powers = None;
    'p: for j in 0..n {
        if mm(j, j) != 0 {
            continue;
        }
        for i in 0..n {
            for i2 in 0..n {
                if mm(scalar_multiple(g, i, j), scalar_multiple(g, i2, j)) != 0 {
                    powers = Some(el(&[j, i, i2]));
                    break 'p;
                }
            }
        }
    }

    let mut inverse = None;
    'i: for j in 0..n {
        for x in 0..n {
            if mm(j, x) == 0 && mm(g.neg(j), x) != 0 {
                inverse = Some(el(&[j, x]));
                break 'i;
            }
        }
    }

    let mut closure = None;
    'c: for j in 0..n {
        if mm(j, j) != 0 {
            continue;
        }
        for x in 0..n {
            if mm(j, x) != 0 {
                continue;
            }
            for i in 0..n {
                for i2 in 0..n {
                    if mm(scalar_multiple(g, i, j), g.add(scalar_multiple(g, i2, j), x)) != 0 {
                        closure = Some(el(&[j, x, i, i2]));
                        break 'c;
                    }
                }
            }
        }
    }

    SuiteReport {
        items: vec![
            SuiteItem { name: "M(a,c)=1 implies M(a,b+c)=M(a,b)", counterexample: right },
            SuiteItem { name: "M(b,c)=1 implies M(a+b,c)=M(a,c)", counterexample: left },
            SuiteItem { name: "M(j,j)=1 implies M(i·j,i'·j)=1", counterexample: powers },
            SuiteItem { name: "M(j,x)=1 implies M(-j,x)=1", counterexample: inverse },
            SuiteItem {
                name: "M(j,j)=1 and M(j,x)=1 imply M(i·j,i'·j+x)=1",
                counterexample: closure,
            },
        ],
    }
}

/// True when `F` and `Ω` are constant on cosets of `2G` in every argument,
/// i.e. the cocycle is pulled back from `G/2G`.
pub fn pullback_check(c: &AbelianCocycle) -> bool {
    let g = &c.group;
    let n = g.order();
    let two_g: BTreeSet<usize> = (0..n).map(|x| g.add(x, x)).collect();
    for i in 0..n {
        for j in 0..n {
            for &h in &two_g {
                if c.omega_exp(g.add(i, h), j) != c.omega_exp(i, j)
                    || c.omega_exp(i, g.add(j, h)) != c.omega_exp(i, j)
                {
                    return false;
                }
            }
            for k in 0..n {
                for &h in &two_g {
                    if c.f_exp(g.add(i, h), j, k) != c.f_exp(i, j, k)
                        || c.f_exp(i, g.add(j, h), k) != c.f_exp(i, j, k)
                        || c.f_exp(i, j, g.add(k, h)) != c.f_exp(i, j, k)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A normalized 2-cochain `b : G² → μ_m` witnessing a coboundary
/// equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryWitness {
    /// The group.
    pub group: FiniteAbelianGroup,
    /// Value order of the cochain entries.
    pub value_order: u32,
    /// Exponent table of length `n²`.
    pub b: Vec<u32>,
}

impl CoboundaryWitness {
    /// Entry as a phase.
    pub fn phase(&self, i: usize, j: usize) -> Phase {
        let n = self.group.order();
        Phase::new(Rational::new(
            i64::from(self.b[i * n + j]),
            i64::from(self.value_order),
        ))
    }
}

/// Brute-force search for a normalized 2-cochain `b` with values in `μ_m`
/// transforming `c1` into `c2` via `F₂ = F₁·db` and
/// `Ω₂(i,j) = Ω₁(i,j)·b(i,j)/b(j,i)`. Returns the witness or `None`.
///
/// Guard: `|G| ≤ 3` and `m ≤ 8`.
pub fn coboundary_equivalent(
    c1: &AbelianCocycle,
    c2: &AbelianCocycle,
    m: u32,
) -> Result<Option<CoboundaryWitness>, CocycleError> {
    if c1.group != c2.group {
        return Err(CocycleError::WrongGroup(
            "coboundary search needs both cocycles on the same group".into(),
        ));
    }
    let g = c1.group.clone();
    let n = g.order();
    if n > 3 || m > 8 || m == 0 {
        return Err(CocycleError::GuardExceeded(format!(
            "coboundary search needs |G| <= 3 and 1 <= m <= 8, got |G| = {n} and m = {m}"
        )));
    }

    // Compare phases, so the two cocycles may use different value orders.
    let fr = |t: u32, order: u32| Rational::new(i64::from(t), i64::from(order));
    let free: Vec<(usize, usize)> =
        (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let total = (m as u64).pow(free.len() as u32);
    let mut b = vec![0u32; n * n];
    for stamp in 0..total {
        let mut s = stamp;
        for &(i, j) in &free {
            b[i * n + j] = (s % u64::from(m)) as u32;
            s /= u64::from(m);
        }
        let bval = |i: usize, j: usize| fr(b[i * n + j], m);
        let mut ok = true;
        'check: for i in 0..n {
            for j in 0..n {
                let shift = &bval(i, j) - &bval(j, i);
                let lhs = Phase::new(fr(c1.omega_exp(i, j), c1.value_order) + shift);
                if lhs != Phase::new(fr(c2.omega_exp(i, j), c2.value_order)) {
                    ok = false;
                    break 'check;
                }
                for k in 0..n {
                    let db = &(&bval(j, k) + &bval(i, g.add(j, k)))
                        - &(&bval(g.add(i, j), k) + &bval(i, j));
                    let lhs = Phase::new(fr(c1.f_exp(i, j, k), c1.value_order) + db);
                    if lhs != Phase::new(fr(c2.f_exp(i, j, k), c2.value_order)) {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            return Ok(Some(CoboundaryWitness {
                group: g,
                value_order: m,
                b,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn z2_cocycle(omega11: u32, f111: u32, m: u32) -> AbelianCocycle {
        let g = z(2);
        let mut f = vec![0u32; 8];
        let mut omega = vec![0u32; 4];
        f[(1 * 2 + 1) * 2 + 1] = f111;
        omega[1 * 2 + 1] = omega11;
        AbelianCocycle::from_exponents(g, m, f, omega).unwrap()
    }

    #[test]
    fn trivial_cocycle_verifies() {
        for orders in [vec![1], vec![2], vec![3], vec![2, 2]] {
            let g = FiniteAbelianGroup::new(orders).unwrap();
            let c = AbelianCocycle::trivial(g, 4);
            assert!(verify(&c).passed());
            assert!(monodromy_theorem_suite(&c).passed());
            assert!(pullback_check(&c));
        }
    }

    #[test]
    fn semion_like_table_verifies() {
        // Omega(1,1) = i forces F(1,1,1) = -1.
        let c = z2_cocycle(1, 2, 4);
        assert!(verify(&c).passed());
        assert!(key_identity_z2(&c).unwrap().is_none());
    }

    #[test]
    fn broken_square_fails_hexagon2() {
        // Omega(1,1) = i with F(1,1,1) = +1 violates F(1,1,1) = Omega(1,1)^2.
        let c = z2_cocycle(1, 0, 4);
        let report = verify(&c);
        assert!(report.hexagon2.is_some());
        assert!(key_identity_z2(&c).unwrap().is_some());
    }

    #[test]
    fn enumerate_z1_is_trivial() {
        let sols = enumerate(&z(1), 8).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(verify(&sols[0]).passed());
    }

    #[test]
    fn enumerate_z2_mu4() {
        let sols = enumerate(&z(2), 4).unwrap();
        assert_eq!(sols.len(), 4);
        let mut diagonals: Vec<u32> = sols.iter().map(|c| c.omega_exp(1, 1)).collect();
        diagonals.sort_unstable();
        assert_eq!(diagonals, vec![0, 1, 2, 3]);
        for c in &sols {
            assert!(verify(c).passed());
            assert!(key_identity_z2(c).unwrap().is_none());
            // F(1,1,1) must be the square of the diagonal.
            assert_eq!(c.f_exp(1, 1, 1), (2 * c.omega_exp(1, 1)) % 4);
        }
    }

    #[test]
    fn enumerate_z2_mu2() {
        let sols = enumerate(&z(2), 2).unwrap();
        assert_eq!(sols.len(), 2);
        let mut diagonals: Vec<u32> = sols.iter().map(|c| c.omega_exp(1, 1)).collect();
        diagonals.sort_unstable();
        assert_eq!(diagonals, vec![0, 1]);
    }

    #[test]
    fn enumerate_z3_mu3() {
        let sols = enumerate(&z(3), 3).unwrap();
        assert_eq!(sols.len(), 27);
        for c in &sols {
            assert!(verify(c).passed());
            assert!(quadratic_form(c).is_ok());
        }
    }

    #[test]
    fn guard_rejects_large_inputs() {
        assert!(matches!(
            enumerate(&z(5), 2),
            Err(CocycleError::GuardExceeded(_))
        ));
        assert!(matches!(
            enumerate(&z(2), 9),
            Err(CocycleError::GuardExceeded(_))
        ));
    }

    #[test]
    fn quadratic_form_reads_the_diagonal() {
        let c = z2_cocycle(1, 2, 4);
        let qd = quadratic_form(&c).unwrap();
        assert_eq!(qd.q[1], Phase::new(Rational::new(1, 4)));
        assert_eq!(qd.bilinear[1 * 2 + 1], Phase::minus_one());
    }

    #[test]
    fn corrupted_monodromy_table_fails_the_suite() {
        // Not from a cocycle: M(1,1) = 0 but M(0,0)... use Z3 with an
        // omega that is zero except a single off-diagonal entry, making the
        // bilinearity of M fail.
        let g = z(3);
        let mut omega = vec![0u32; 9];
        omega[1 * 3 + 2] = 1; // M(1,2) = 1/8 turn, M(2,2) = 0, M(1,1) = 0
        let c = AbelianCocycle::from_exponents(g, 8, vec![0; 27], omega).unwrap();
        assert!(!monodromy_theorem_suite(&c).passed());
        assert!(quadratic_form(&c).is_err());
    }

    #[test]
    fn pullback_detects_coset_dependence() {
        // On Z4 with q(1) a primitive 8th root, Omega depends on the element
        // mod 4, not just mod 2.
        let g = z(4);
        let mut found_dependent = false;
        enumerate_with(&g, 8, |c| {
            if c.omega_exp(1, 1) == 1 {
                found_dependent = true;
                assert!(!pullback_check(c));
            }
        })
        .unwrap();
        assert!(found_dependent);
    }

    #[test]
    fn coboundary_identity_witness() {
        let c = z2_cocycle(1, 2, 4);
        let w = coboundary_equivalent(&c, &c, 4).unwrap().expect("self-equivalent");
        assert!(w.b.iter().all(|&t| t == 0));
    }

    #[test]
    fn coboundary_distinguishes_diagonals() {
        let a = z2_cocycle(0, 0, 4);
        let b = z2_cocycle(1, 2, 4);
        assert!(coboundary_equivalent(&a, &b, 4).unwrap().is_none());
    }

    #[test]
    fn group_arithmetic() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        let a = g.index(&[1, 2]).unwrap();
        let b = g.index(&[1, 1]).unwrap();
        assert_eq!(g.element(g.add(a, b)), vec![0, 0]);
        assert_eq!(g.element(g.neg(a)), vec![1, 1]);
        assert_eq!(g.format_element(a), "1,2");
    }
}
