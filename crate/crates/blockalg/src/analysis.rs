//! Exact linear algebra over Q(sqrt2), truncated submodule closure, the
//! simplicity probe, invariant extraction, and the rank-2 base-point
//! constraint solver.
//!
//! All subspace computations run inside a finite window (mode bound, grade
//! bound, degree bound). Membership verdicts are sound: every basis row
//! carries a certificate, a linear combination of operator words applied to
//! seeds, that replays exactly to the row. A `ProperCandidate` verdict, by
//! contrast, is evidence only: truncation discards operator outputs above
//! the degree bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{window_keys, BasisKey, Sector};
use crate::check::CheckReport;
use crate::error::AlgebraError;
use crate::modules::{
    act_l_basis, act_r_basis, phi_image_params, phi_map_vector, ModuleParams, SuperVectorL,
    SuperVectorR,
};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Finite truncation bounds for closure computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    /// Bound on |twice_index| / 2 of the operators applied.
    pub max_mode: u32,
    /// Bound on the operator grade.
    pub max_grade: u32,
    /// Polynomial degree cap; operator outputs above it are discarded.
    pub max_degree: usize,
}

impl DegreeWindow {
    pub fn new(max_mode: u32, max_grade: u32, max_degree: usize) -> Self {
        DegreeWindow {
            max_mode,
            max_grade,
            max_degree,
        }
    }

    /// Dimension of the coordinate space: both slots up to `max_degree`.
    pub fn dim(&self) -> usize {
        2 * (self.max_degree + 1)
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.max_mode, self.max_grade, self.max_degree)
    }
}

/// A vector type a module family acts on: a parity-graded pair of
/// polynomials with a basis action.
pub trait ModuleVector: Clone + PartialEq + Sized + fmt::Display {
    fn act_basis(params: &ModuleParams, key: &BasisKey, v: &Self) -> Result<Self, AlgebraError>;
    fn even_slot(&self) -> &Poly;
    fn odd_slot(&self) -> &Poly;
    fn from_slots(even: Poly, odd: Poly) -> Self;

    fn is_zero_vector(&self) -> bool {
        self.even_slot().is_zero() && self.odd_slot().is_zero()
    }

    /// Coordinates under the fixed order (even slot by ascending degree,
    /// then odd slot), or `None` when the vector exceeds the degree bound.
    fn coordinates(&self, max_degree: usize) -> Option<Vec<Scalar>> {
        let fits = |p: &Poly| p.degree().is_none_or(|d| d <= max_degree);
        if !fits(self.even_slot()) || !fits(self.odd_slot()) {
            return None;
        }
        let mut out = Vec::with_capacity(2 * (max_degree + 1));
        for k in 0..=max_degree {
            out.push(self.even_slot().coeff(k));
        }
        for k in 0..=max_degree {
            out.push(self.odd_slot().coeff(k));
        }
        Some(out)
    }

    fn from_coordinates(coords: &[Scalar]) -> Self {
        let half = coords.len() / 2;
        Self::from_slots(
            Poly::new(coords[..half].to_vec()),
            Poly::new(coords[half..].to_vec()),
        )
    }
}

impl ModuleVector for SuperVectorR {
    fn act_basis(params: &ModuleParams, key: &BasisKey, v: &Self) -> Result<Self, AlgebraError> {
        act_r_basis(params, key, v)
    }
    fn even_slot(&self) -> &Poly {
        &self.even
    }
    fn odd_slot(&self) -> &Poly {
        &self.odd
    }
    fn from_slots(even: Poly, odd: Poly) -> Self {
        SuperVectorR::new(even, odd)
    }
}

impl ModuleVector for SuperVectorL {
    fn act_basis(params: &ModuleParams, key: &BasisKey, v: &Self) -> Result<Self, AlgebraError> {
        act_l_basis(params, key, v)
    }
    fn even_slot(&self) -> &Poly {
        &self.even
    }
    fn odd_slot(&self) -> &Poly {
        &self.odd
    }
    fn from_slots(even: Poly, odd: Poly) -> Self {
        SuperVectorL::new(even, odd)
    }
}

/// An operator word applied to a numbered seed; ops are listed in
/// application order (first listed acts first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OperatorWord {
    pub seed: usize,
    pub ops: Vec<BasisKey>,
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed{}", self.seed)?;
        for op in &self.ops {
            write!(f, " -> {op}")?;
        }
        Ok(())
    }
}

/// A membership certificate: a linear combination of operator words whose
/// replay reproduces the certified vector exactly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Certificate {
    terms: BTreeMap<OperatorWord, Scalar>,
}

impl Certificate {
    pub fn zero() -> Self {
        Certificate::default()
    }

    /// The trivial certificate of a seed itself.
    pub fn generator(seed: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            OperatorWord {
                seed,
                ops: Vec::new(),
            },
            Scalar::one(),
        );
        Certificate { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OperatorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v = &*v * c;
        }
    }

    /// `self += c * other`
    fn add_scaled(&mut self, other: &Certificate, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            let entry = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *entry = &*entry + &(v * c);
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    fn sub_scaled(&mut self, other: &Certificate, c: &Scalar) {
        self.add_scaled(other, &-c);
    }

    /// Certificate of the image under one more operator application.
    fn apply_op(&self, key: &BasisKey) -> Certificate {
        let mut terms = BTreeMap::new();
        for (w, v) in &self.terms {
            let mut ops = w.ops.clone();
            ops.push(*key);
            terms.insert(OperatorWord { seed: w.seed, ops }, v.clone());
        }
        Certificate { terms }
    }

    /// Recomputes the certified vector by applying every operator word to
    /// its seed and summing.
    pub fn replay<V: ModuleVector>(
        &self,
        params: &ModuleParams,
        seeds: &[V],
    ) -> Result<V, AlgebraError> {
        let mut out = V::from_slots(Poly::zero(), Poly::zero());
        for (word, coeff) in &self.terms {
            let mut v = seeds[word.seed].clone();
            for op in &word.ops {
                v = V::act_basis(params, op, &v)?;
            }
            let scaled = V::from_slots(v.even_slot().scale(coeff), v.odd_slot().scale(coeff));
            out = V::from_slots(
                out.even_slot() + scaled.even_slot(),
                out.odd_slot() + scaled.odd_slot(),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c}) * [{w}]"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// One reduced row with its construction certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRow {
    coords: Vec<Scalar>,
    pivot: usize,
    certificate: Certificate,
}

impl BasisRow {
    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }
}

/// A row-reduced basis of a subspace of the windowed coordinate space,
/// maintained in reduced echelon form with the pivot at the leftmost
/// nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    max_degree: usize,
    rows: Vec<BasisRow>,
}

impl SubspaceBasis {
    pub fn new(max_degree: usize) -> Self {
        SubspaceBasis {
            max_degree,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        2 * (self.max_degree + 1)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BasisRow] {
        &self.rows
    }

    /// Eliminates `v` against the rows without certificate bookkeeping;
    /// returns `None` when `v` is dependent.
    fn reduce_coords_only(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if !c.is_zero() {
                for (k, rc) in row.coords.iter().enumerate() {
                    v[k] = &v[k] - &(&c * rc);
                }
            }
        }
        v.iter().any(|c| !c.is_zero()).then_some(v)
    }

    /// Gaussian-elimination insertion. Returns `true` iff `v` was
    /// independent of the existing rows and the basis grew.
    pub fn insert(&mut self, v: &[Scalar], certificate: Certificate) -> bool {
        assert_eq!(v.len(), self.dim(), "coordinate length must match the window");
        // cheap dependence test first; most candidates reduce to zero
        if self.reduce_coords_only(v).is_none() {
            return false;
        }
        let mut v = v.to_vec();
        let mut cert = certificate;
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if !c.is_zero() {
                for (k, rc) in row.coords.iter().enumerate() {
                    v[k] = &v[k] - &(&c * rc);
                }
                cert.sub_scaled(&row.certificate, &c);
            }
        }
        let pivot = v
            .iter()
            .position(|c| !c.is_zero())
            .expect("dependence was ruled out above");
        let lead_inv = v[pivot].inv().expect("pivot coordinate is nonzero");
        for c in v.iter_mut() {
            *c = &*c * &lead_inv;
        }
        cert.scale(&lead_inv);
        let new_row = BasisRow {
            coords: v,
            pivot,
            certificate: cert,
        };
        for row in &mut self.rows {
            let c = row.coords[pivot].clone();
            if !c.is_zero() {
                for k in 0..new_row.coords.len() {
                    row.coords[k] = &row.coords[k] - &(&c * &new_row.coords[k]);
                }
                row.certificate.sub_scaled(&new_row.certificate, &c);
            }
        }
        let pos = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(pos, new_row);
        true
    }

    /// If `target` lies in the span, returns the certificate assembled from
    /// the contributing rows.
    pub fn membership(&self, target: &[Scalar]) -> Option<Certificate> {
        assert_eq!(target.len(), self.dim());
        let mut v = target.to_vec();
        let mut cert = Certificate::zero();
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if !c.is_zero() {
                for (k, rc) in row.coords.iter().enumerate() {
                    v[k] = &v[k] - &(&c * rc);
                }
                cert.add_scaled(&row.certificate, &c);
            }
        }
        v.iter().all(Scalar::is_zero).then_some(cert)
    }

    pub fn contains(&self, target: &[Scalar]) -> bool {
        self.membership(target).is_some()
    }
}

/// Result of a truncated closure run.
#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub basis: SubspaceBasis,
    pub contains_even_constant: bool,
    /// Membership certificate of the even constant, when present.
    pub even_constant_certificate: Option<Certificate>,
    /// True when a full operator pass added nothing.
    pub saturated: bool,
    pub passes: usize,
}

/// Starting from the seeds, repeatedly applies every window operator to
/// every current row, inserting results that stay within the degree bound,
/// until a full pass adds nothing.
pub fn closure<V: ModuleVector>(
    params: &ModuleParams,
    seeds: &[V],
    window: &DegreeWindow,
) -> Result<ClosureOutcome, AlgebraError> {
    if seeds.is_empty() || seeds.iter().any(|s| s.is_zero_vector()) {
        return Err(AlgebraError::EmptySeeds);
    }
    let mut basis = SubspaceBasis::new(window.max_degree);
    for (idx, seed) in seeds.iter().enumerate() {
        let coords = seed
            .coordinates(window.max_degree)
            .ok_or(AlgebraError::SeedOutOfWindow {
                index: idx,
                max_degree: window.max_degree,
            })?;
        basis.insert(&coords, Certificate::generator(idx));
    }
    let ops = window_keys(params.sector(), window.max_mode, window.max_grade);
    let mut saturated = false;
    let mut passes = 0;
    // rank is bounded by the coordinate dimension, so this terminates
    while !saturated && passes <= window.dim() + 1 {
        passes += 1;
        let snapshot: Vec<(Vec<Scalar>, Certificate)> = basis
            .rows()
            .iter()
            .map(|r| (r.coordinates().to_vec(), r.certificate().clone()))
            .collect();
        let mut grew = false;
        for (coords, cert) in &snapshot {
            let v = V::from_coordinates(coords);
            for op in &ops {
                let w = V::act_basis(params, op, &v)?;
                if w.is_zero_vector() {
                    continue;
                }
                if let Some(w_coords) = w.coordinates(window.max_degree) {
                    if basis.insert(&w_coords, cert.apply_op(op)) {
                        grew = true;
                    }
                }
            }
        }
        saturated = !grew;
    }
    let even_one = V::from_slots(Poly::one(), Poly::zero());
    let target = even_one
        .coordinates(window.max_degree)
        .expect("constant fits any window");
    let even_constant_certificate = basis.membership(&target);
    Ok(ClosureOutcome {
        contains_even_constant: even_constant_certificate.is_some(),
        even_constant_certificate,
        basis,
        saturated,
        passes,
    })
}

/// The fixed probe seed set: even constant, odd constant, even u, odd u.
pub fn default_probe_seeds<V: ModuleVector>() -> Vec<V> {
    vec![
        V::from_slots(Poly::one(), Poly::zero()),
        V::from_slots(Poly::zero(), Poly::one()),
        V::from_slots(Poly::var(), Poly::zero()),
        V::from_slots(Poly::zero(), Poly::var()),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every probe seed generated all monomials of degree < max_degree.
    ReachedFull,
    /// Some seed stabilized on a proper subspace (window evidence, not a
    /// proof); carries the index of the first such seed.
    ProperCandidate { seed_index: usize },
}

/// Probe result with the per-seed closures (in seed order).
#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    pub verdict: ProbeVerdict,
    pub closures: Vec<ClosureOutcome>,
}

impl ProbeOutcome {
    /// The stabilized proper-candidate basis, when the verdict is proper.
    pub fn proper_basis(&self) -> Option<&SubspaceBasis> {
        match self.verdict {
            ProbeVerdict::ReachedFull => None,
            ProbeVerdict::ProperCandidate { seed_index } => Some(&self.closures[seed_index].basis),
        }
    }
}

/// Whether the span contains every monomial of degree <= `upto` in both
/// slots.
pub fn spans_all_monomials(basis: &SubspaceBasis, upto: usize) -> bool {
    let max_degree = basis.max_degree();
    for k in 0..=upto.min(max_degree) {
        for even in [true, false] {
            let (e, o) = if even {
                (Poly::monomial(Scalar::one(), k), Poly::zero())
            } else {
                (Poly::zero(), Poly::monomial(Scalar::one(), k))
            };
            let v = SuperVectorR::new(e, o);
            let coords = v.coordinates(max_degree).expect("monomial fits window");
            if !basis.contains(&coords) {
                return false;
            }
        }
    }
    true
}

/// Runs the closure separately from each default probe seed. The verdict is
/// `ReachedFull` only if every single seed generates all monomials of
/// degree <= max_degree - 1; a simple module is generated by any nonzero
/// vector, so one failing seed already exhibits a proper-candidate
/// subspace.
pub fn simplicity_probe<V: ModuleVector>(
    params: &ModuleParams,
    window: &DegreeWindow,
) -> Result<ProbeOutcome, AlgebraError> {
    let seeds = default_probe_seeds::<V>();
    let upto = window.max_degree.saturating_sub(1);
    let mut closures = Vec::with_capacity(seeds.len());
    let mut failing = None;
    for (idx, seed) in seeds.iter().enumerate() {
        let outcome = closure(params, std::slice::from_ref(seed), window)?;
        if failing.is_none() && !spans_all_monomials(&outcome.basis, upto) {
            failing = Some(idx);
        }
        closures.push(outcome);
    }
    Ok(ProbeOutcome {
        verdict: match failing {
            None => ProbeVerdict::ReachedFull,
            Some(seed_index) => ProbeVerdict::ProperCandidate { seed_index },
        },
        closures,
    })
}

/// The simplicity prediction for a module family point: `a != 0`, or
/// `q = -1` with active `b != 0` (for other q the parameter b never enters
/// the action).
pub fn predicted_simple(params: &ModuleParams) -> bool {
    !params.a().is_zero() || (params.b_active() && !params.b().is_zero())
}

/// Invariants read off a module action: the pair `(lambda, a)` always, and
/// `b` only at q = -1 where it participates (`None` marks it inert).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedInvariants {
    pub lambda: Scalar,
    pub a: Scalar,
    pub b: Option<Scalar>,
}

impl fmt::Display for ExtractedInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.b {
            Some(b) => write!(f, "(lambda={}, a={}, b={})", self.lambda, self.a, b),
            None => write!(f, "(lambda={}, a={}, b=inert)", self.lambda, self.a),
        }
    }
}

/// Reads the invariants from the images of the even constant under the two
/// probe generators: `L(1,0).1 = lambda (u - q a)` gives lambda and a, and
/// at q = -1 `L(1,1).1 = lambda b` gives b.
pub fn extract_invariants_from_actions(
    q: &Scalar,
    l10_of_one: &Poly,
    l11_of_one: &Poly,
) -> Result<ExtractedInvariants, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroQ);
    }
    if l10_of_one.degree() != Some(1) {
        return Err(AlgebraError::MalformedAction(format!(
            "image of the even constant under L(1,0) must have degree exactly 1, got {l10_of_one}"
        )));
    }
    let lambda = l10_of_one.coeff(1);
    let a = (-l10_of_one.coeff(0)).checked_div(&(&lambda * q))?;
    let b = if *q == Scalar::from_int(-1) {
        if l11_of_one.degree().is_some_and(|d| d > 0) {
            return Err(AlgebraError::MalformedAction(format!(
                "image of the even constant under L(1,1) must be constant, got {l11_of_one}"
            )));
        }
        Some(l11_of_one.coeff(0).checked_div(&lambda)?)
    } else {
        None
    };
    Ok(ExtractedInvariants { lambda, a, b })
}

/// Extracts the invariants of an RB family point from its own action.
pub fn extract_invariants_r(params: &ModuleParams) -> Result<ExtractedInvariants, AlgebraError> {
    let one = SuperVectorR::even_part(Poly::one());
    let l10 = act_r_basis(params, &BasisKey::l(1, 0), &one)?;
    let l11 = act_r_basis(params, &BasisKey::l(1, 1), &one)?;
    extract_invariants_from_actions(params.q(), &l10.even, &l11.even)
}

/// Extracts the invariants of an NSB family point from its own action.
pub fn extract_invariants_l(params: &ModuleParams) -> Result<ExtractedInvariants, AlgebraError> {
    let one = SuperVectorL::even_part(Poly::one());
    let l10 = act_l_basis(params, &BasisKey::l(1, 0), &one)?;
    let l11 = act_l_basis(params, &BasisKey::l(1, 1), &one)?;
    extract_invariants_from_actions(params.q(), &l10.even, &l11.even)
}

/// Two family points are declared isomorphic exactly when their extracted
/// triples agree (with b compared only where it is active).
pub fn invariants_match(x: &ExtractedInvariants, y: &ExtractedInvariants) -> bool {
    x == y
}

/// The two one-parameter solution families of the rank-2 base-point
/// constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Case {
    /// `c = a + 1/2`: the even-to-odd transition is the constant e.
    CPlus,
    /// `c = a - 1/2`: the odd-to-even transition is the constant e.
    CMinus,
}

impl fmt::Display for Rank2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Case::CPlus => write!(f, "c_plus"),
            Rank2Case::CMinus => write!(f, "c_minus"),
        }
    }
}

/// One solved case of the base-point transition polynomials: f, g map the
/// even base point into the odd slot; h, h_tilde map back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Solution {
    pub case: Rank2Case,
    pub c: Scalar,
    pub e: Scalar,
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
    pub h_tilde: Poly,
    pub lambda: Scalar,
    /// Second-slot shift base; forced equal to lambda.
    pub mu: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    /// Second-slot current coefficient; forced to satisfy
    /// `[q=-1] d = [q=-1] b`.
    pub d: Scalar,
    pub q: Scalar,
}

/// Solves the degree-forced factorization `f(t - q/2) h(t) = q lambda (t - qa)`
/// together with the mixed-grade constraints, returning the two families
/// (`c_plus`, `c_minus`) at the supplied unit `e`.
pub fn rank2_solve(
    q: &Scalar,
    lambda: &Scalar,
    a: &Scalar,
    b: &Scalar,
    e: &Scalar,
) -> Result<(Rank2Solution, Rank2Solution), AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroQ);
    }
    if lambda.is_zero() {
        return Err(AlgebraError::ZeroLambda);
    }
    if e.is_zero() {
        return Err(AlgebraError::ZeroParameter("e"));
    }
    let half = Scalar::from_ratio(1, 2);
    let delta_b = if *q == Scalar::from_int(-1) {
        b.clone()
    } else {
        Scalar::zero()
    };
    let q_over_e_lambda = &(q / e) * lambda;
    let cross = &(&(&Scalar::from_int(2) * q) / e) * &(lambda * &delta_b);

    let plus = Rank2Solution {
        case: Rank2Case::CPlus,
        c: a + &half,
        e: e.clone(),
        f: Poly::constant(e.clone()),
        g: Poly::zero(),
        h: Poly::linear(-(q * a)).scale(&q_over_e_lambda),
        h_tilde: Poly::constant(cross.clone()),
        lambda: lambda.clone(),
        mu: lambda.clone(),
        a: a.clone(),
        b: b.clone(),
        d: b.clone(),
        q: q.clone(),
    };
    let minus = Rank2Solution {
        case: Rank2Case::CMinus,
        c: a - &half,
        e: e.clone(),
        f: Poly::linear(&-(q * a) + &(q * &half)).scale(&q_over_e_lambda),
        g: Poly::constant(cross),
        h: Poly::constant(e.clone()),
        h_tilde: Poly::zero(),
        lambda: lambda.clone(),
        mu: lambda.clone(),
        a: a.clone(),
        b: b.clone(),
        d: b.clone(),
        q: q.clone(),
    };
    Ok((plus, minus))
}

/// Verifies all base-point constraints of a solution exactly: the two
/// factorizations, the two mixed-grade identities and the vanishing
/// grade-two product.
pub fn rank2_verify(sol: &Rank2Solution) -> CheckReport {
    let mut report = CheckReport::new();
    let half_q = &sol.q * &Scalar::from_ratio(1, 2);
    let shift = -&half_q;
    let delta_b = if sol.q == Scalar::from_int(-1) {
        sol.b.clone()
    } else {
        Scalar::zero()
    };
    let delta_d = if sol.q == Scalar::from_int(-1) {
        sol.d.clone()
    } else {
        Scalar::zero()
    };
    let ctx = |name: &str| format!("rank2 {} {}", sol.case, name);

    let lhs = &sol.f.shift(&shift) * &sol.h;
    let rhs = Poly::linear(-(&sol.q * &sol.a)).scale(&(&sol.q * &sol.lambda));
    report.record(
        ctx("f(t - q/2) h(t) = q lambda (t - qa)"),
        (lhs != rhs).then(|| format!("got {lhs}, want {rhs}")),
    );

    let lhs = &sol.h.shift(&shift) * &sol.f;
    let rhs = Poly::linear(-(&sol.q * &sol.c)).scale(&(&sol.q * &sol.mu));
    report.record(
        ctx("h(x - q/2) f(x) = q mu (x - qc)"),
        (lhs != rhs).then(|| format!("got {lhs}, want {rhs}")),
    );

    let lhs = &(&sol.g.shift(&shift) * &sol.h) + &(&sol.f.shift(&shift) * &sol.h_tilde);
    let rhs = Poly::constant(&(&Scalar::from_int(2) * &sol.q) * &(&sol.lambda * &delta_b));
    report.record(
        ctx("g(t - q/2) h(t) + f(t - q/2) h~(t) = 2 q lambda [q=-1] b"),
        (lhs != rhs).then(|| format!("got {lhs}, want {rhs}")),
    );

    let lhs = &(&sol.h_tilde.shift(&shift) * &sol.f) + &(&sol.h.shift(&shift) * &sol.g);
    let rhs = Poly::constant(&(&Scalar::from_int(2) * &sol.q) * &(&sol.mu * &delta_d));
    report.record(
        ctx("h~(x - q/2) f(x) + h(x - q/2) g(x) = 2 q mu [q=-1] d"),
        (lhs != rhs).then(|| format!("got {lhs}, want {rhs}")),
    );

    let lhs = &sol.g.shift(&shift) * &sol.h_tilde;
    report.record(
        ctx("g(t - q/2) h~(t) = 0"),
        (!lhs.is_zero()).then(|| lhs.to_string()),
    );

    report.record(
        ctx("mu = lambda and [q=-1] d = [q=-1] b"),
        (sol.mu != sol.lambda || delta_d != delta_b).then(|| format!("mu={}, d={}", sol.mu, sol.d)),
    );
    report
}

/// Brute-force oracle outcome for the factorization constraint.
#[derive(Clone, Debug)]
pub struct Rank2BruteforceReport {
    pub candidates_tested: usize,
    pub plus_family_found: usize,
    pub minus_family_found: usize,
    pub report: CheckReport,
}

/// Enumerates every candidate `f` with coefficients in a small exact ansatz
/// set and degree <= max_deg, solves `f(t - q/2) h(t) = q lambda (t - qa)`
/// for `h` by exact division, and confirms that the full solution set is
/// exactly the two one-parameter families produced by [`rank2_solve`].
pub fn rank2_bruteforce_check(
    q: &Scalar,
    lambda: &Scalar,
    a: &Scalar,
    b: &Scalar,
    max_deg: usize,
) -> Result<Rank2BruteforceReport, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroQ);
    }
    if lambda.is_zero() {
        return Err(AlgebraError::ZeroLambda);
    }
    let ansatz: Vec<Scalar> = [
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::from_int(-2),
        Scalar::from_ratio(1, 2),
        Scalar::from_ratio(-1, 2),
    ]
    .to_vec();
    let rhs = Poly::linear(-(q * a)).scale(&(q * lambda));
    let shift = -&(q * &Scalar::from_ratio(1, 2));
    let mut report = CheckReport::new();
    let mut candidates_tested = 0usize;
    let mut plus_found = 0usize;
    let mut minus_found = 0usize;

    // enumerate coefficient tuples by degree, leading coefficient nonzero
    for deg in 0..=max_deg {
        let mut idx = vec![0usize; deg + 1];
        loop {
            let coeffs: Vec<Scalar> = idx.iter().map(|&i| ansatz[i].clone()).collect();
            if !coeffs[deg].is_zero() {
                candidates_tested += 1;
                let f = Poly::new(coeffs);
                debug_assert_eq!(f.degree(), Some(deg));
                if let Some(h) = rhs.div_exact(&f.shift(&shift)) {
                    if h.degree().is_some_and(|d| d <= max_deg) {
                        match deg {
                            0 => {
                                let e = f.coeff(0);
                                let (plus, _) = rank2_solve(q, lambda, a, b, &e)?;
                                report.record(
                                    format!("bruteforce plus-family member e={e}"),
                                    (f != plus.f || h != plus.h).then(|| {
                                        format!("found (f={f}, h={h}), solver gives (f={}, h={})", plus.f, plus.h)
                                    }),
                                );
                                plus_found += 1;
                            }
                            1 => {
                                let e = h.coeff(0);
                                report.record(
                                    format!("bruteforce minus-family member has constant h (f={f})"),
                                    h.degree().is_some_and(|d| d > 0).then(|| h.to_string()),
                                );
                                if !e.is_zero() {
                                    let (_, minus) = rank2_solve(q, lambda, a, b, &e)?;
                                    report.record(
                                        format!("bruteforce minus-family member e={e}"),
                                        (f != minus.f || h != minus.h).then(|| {
                                            format!(
                                                "found (f={f}, h={h}), solver gives (f={}, h={})",
                                                minus.f, minus.h
                                            )
                                        }),
                                    );
                                    minus_found += 1;
                                }
                            }
                            _ => {
                                report.record(
                                    format!("bruteforce unexpected solution degree {deg}"),
                                    Some(format!("f={f}, h={h}")),
                                );
                            }
                        }
                    }
                }
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k > deg {
                    break;
                }
                idx[k] += 1;
                if idx[k] < ansatz.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k > deg {
                break;
            }
        }
    }
    report.record(
        "bruteforce realizes the plus family",
        (plus_found == 0).then(|| "no degree-0 f solved the constraint".to_string()),
    );
    report.record(
        "bruteforce realizes the minus family",
        (minus_found == 0).then(|| "no degree-1 f solved the constraint".to_string()),
    );
    Ok(Rank2BruteforceReport {
        candidates_tested,
        plus_family_found: plus_found,
        minus_family_found: minus_found,
        report,
    })
}

/// Finite shadow of simplicity transfer through the intertwiner: the image
/// of each closure row of the NSB family lies in the closure (same window)
/// of the image seeds in the RB family.
pub fn check_phi_closure_consistency(
    params_l: &ModuleParams,
    sigma: &Scalar,
    seeds: &[SuperVectorL],
    window: &DegreeWindow,
) -> Result<CheckReport, AlgebraError> {
    let params_r = phi_image_params(params_l, sigma)?;
    let closure_l = closure(params_l, seeds, window)?;
    let phi_seeds: Vec<SuperVectorR> = seeds.iter().map(|s| phi_map_vector(sigma, s)).collect();
    let closure_r = closure(&params_r, &phi_seeds, window)?;
    let mut report = CheckReport::new();
    for (i, row) in closure_l.basis.rows().iter().enumerate() {
        let v_l = SuperVectorL::from_coordinates(row.coordinates());
        let v_r = phi_map_vector(sigma, &v_l);
        let coords = v_r
            .coordinates(window.max_degree)
            .expect("phi preserves slot degrees");
        report.record(
            format!("phi image of closure row {i} lies in image closure [{params_l}]"),
            (!closure_r.basis.contains(&coords)).then(|| v_r.to_string()),
        );
    }
    Ok(report)
}

/// Window keys helper re-exported for closure consumers.
pub fn closure_operators(sector: Sector, window: &DegreeWindow) -> Vec<BasisKey> {
    window_keys(sector, window.max_mode, window.max_grade)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::SuperVectorR;

    fn mp_r(lambda: i64, a: (i64, i64), b: i64, q: i64) -> ModuleParams {
        ModuleParams::new(
            Sector::RB,
            Scalar::from_int(lambda),
            Scalar::from_ratio(a.0, a.1),
            Scalar::from_int(b),
            Scalar::from_int(q),
        )
        .unwrap()
    }

    fn coords_of(v: &SuperVectorR, d: usize) -> Vec<Scalar> {
        v.coordinates(d).unwrap()
    }

    #[test]
    fn row_reduction_basics() {
        let d = 2; // dim 6
        let mut basis = SubspaceBasis::new(d);
        let one = SuperVectorR::even_part(Poly::one());
        let u = SuperVectorR::even_part(Poly::var());
        assert!(basis.insert(&coords_of(&one, d), Certificate::generator(0)));
        assert!(basis.insert(&coords_of(&u, d), Certificate::generator(1)));
        // 2*1 is dependent
        let two = SuperVectorR::even_part(Poly::constant(Scalar::from_int(2)));
        assert!(!basis.insert(&coords_of(&two, d), Certificate::generator(2)));
        // u + 1 is dependent on {1, u}
        let u_plus_1 = SuperVectorR::even_part(Poly::linear(Scalar::one()));
        assert!(!basis.insert(&coords_of(&u_plus_1, d), Certificate::generator(3)));
        assert_eq!(basis.rank(), 2);
        // membership certificate exists for u + 1
        assert!(basis.membership(&coords_of(&u_plus_1, d)).is_some());
        let u2 = SuperVectorR::even_part(Poly::monomial(Scalar::one(), 2));
        assert!(!basis.contains(&coords_of(&u2, d)));
    }

    #[test]
    fn closure_reaches_constants_when_a_nonzero() {
        let params = mp_r(1, (1, 1), 0, 2);
        let window = DegreeWindow::new(2, 1, 4);
        let seeds = vec![SuperVectorR::even_part(Poly::one())];
        let out = closure(&params, &seeds, &window).unwrap();
        assert!(out.saturated);
        assert!(out.contains_even_constant);
        assert!(spans_all_monomials(&out.basis, 3), "rank {}", out.basis.rank());
    }

    #[test]
    fn closure_from_odd_seed_stays_proper_at_origin_params() {
        let params = mp_r(1, (0, 1), 0, 2);
        let window = DegreeWindow::new(2, 1, 4);
        let seeds = vec![SuperVectorR::odd_part(Poly::one())];
        let out = closure(&params, &seeds, &window).unwrap();
        assert!(out.saturated);
        assert!(!out.contains_even_constant);
        // span inside u*C[u] + odd slot: every row has even constant term 0
        for row in out.basis.rows() {
            assert!(row.coordinates()[0].is_zero());
        }
    }

    #[test]
    fn closure_rejects_bad_seeds() {
        let params = mp_r(1, (1, 1), 0, 2);
        let window = DegreeWindow::new(2, 1, 4);
        let err = closure::<SuperVectorR>(&params, &[], &window).unwrap_err();
        assert!(matches!(err, AlgebraError::EmptySeeds));
        let err = closure(&params, &[SuperVectorR::zero()], &window).unwrap_err();
        assert!(matches!(err, AlgebraError::EmptySeeds));
        let too_big = SuperVectorR::even_part(Poly::monomial(Scalar::one(), 9));
        let err = closure(&params, &[too_big], &window).unwrap_err();
        assert!(matches!(err, AlgebraError::SeedOutOfWindow { .. }));
    }

    #[test]
    fn certificates_replay_to_their_rows() {
        let params = mp_r(3, (1, 1), 0, 2);
        let window = DegreeWindow::new(2, 1, 4);
        let seeds = vec![
            SuperVectorR::even_part(Poly::one()),
            SuperVectorR::odd_part(Poly::var()),
        ];
        let out = closure(&params, &seeds, &window).unwrap();
        for row in out.basis.rows() {
            let replayed = row.certificate().replay(&params, &seeds).unwrap();
            assert_eq!(
                coords_of(&replayed, window.max_degree),
                row.coordinates(),
                "certificate {} does not replay",
                row.certificate()
            );
        }
        // the even-constant certificate replays to the even constant
        let cert = out.even_constant_certificate.as_ref().unwrap();
        let replayed = cert.replay(&params, &seeds).unwrap();
        assert_eq!(replayed, SuperVectorR::even_part(Poly::one()));
    }

    #[test]
    fn closure_is_monotone_in_the_window() {
        let params = mp_r(1, (1, 1), 0, 2);
        let small = DegreeWindow::new(1, 1, 3);
        let large = DegreeWindow::new(2, 1, 5);
        let seeds = vec![SuperVectorR::even_part(Poly::var())];
        let out_small = closure(&params, &seeds, &small).unwrap();
        let out_large = closure(&params, &seeds, &large).unwrap();
        for row in out_small.basis.rows() {
            let v = SuperVectorR::from_coordinates(row.coordinates());
            let coords = v.coordinates(large.max_degree).unwrap();
            assert!(out_large.basis.contains(&coords));
        }
    }

    #[test]
    fn probe_verdicts_follow_the_parameters() {
        let window = DegreeWindow::new(2, 1, 5);
        // a != 0: simple
        let out = simplicity_probe::<SuperVectorR>(&mp_r(1, (1, 1), 0, 2), &window).unwrap();
        assert_eq!(out.verdict, ProbeVerdict::ReachedFull);
        // q = -1, b != 0: simple
        let out = simplicity_probe::<SuperVectorR>(&mp_r(1, (0, 1), 1, -1), &window).unwrap();
        assert_eq!(out.verdict, ProbeVerdict::ReachedFull);
        // a = b = 0: proper candidate from the odd constant seed
        let out = simplicity_probe::<SuperVectorR>(&mp_r(1, (0, 1), 0, 2), &window).unwrap();
        assert_eq!(out.verdict, ProbeVerdict::ProperCandidate { seed_index: 1 });
        let basis = out.proper_basis().unwrap();
        for row in basis.rows() {
            assert!(row.coordinates()[0].is_zero(), "span escapes u*C[u] + odd");
        }
        // b nonzero but inert at q != -1: still proper
        let out = simplicity_probe::<SuperVectorR>(&mp_r(1, (0, 1), 1, 2), &window).unwrap();
        assert!(matches!(out.verdict, ProbeVerdict::ProperCandidate { .. }));
    }

    #[test]
    fn extraction_recovers_parameters() {
        let params = mp_r(3, (1, 1), 7, 2);
        let inv = extract_invariants_r(&params).unwrap();
        assert_eq!(inv.lambda, Scalar::from_int(3));
        assert_eq!(inv.a, Scalar::one());
        assert_eq!(inv.b, None);

        let params = mp_r(1, (0, 1), 5, -1);
        let inv = extract_invariants_r(&params).unwrap();
        assert_eq!(inv.lambda, Scalar::one());
        assert_eq!(inv.a, Scalar::zero());
        assert_eq!(inv.b, Some(Scalar::from_int(5)));

        // malformed action: flat image
        let err = extract_invariants_from_actions(
            &Scalar::from_int(2),
            &Poly::constant(Scalar::from_int(5)),
            &Poly::zero(),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::MalformedAction(_)));
    }

    #[test]
    fn rank2_solver_examples() {
        // q=1, lambda=1, a=0, e=1
        let (plus, minus) = rank2_solve(
            &Scalar::one(),
            &Scalar::one(),
            &Scalar::zero(),
            &Scalar::zero(),
            &Scalar::one(),
        )
        .unwrap();
        assert_eq!(plus.f, Poly::one());
        assert_eq!(plus.h, Poly::var());
        assert_eq!(plus.c, Scalar::from_ratio(1, 2));
        assert_eq!(minus.h, Poly::one());
        assert_eq!(minus.f, Poly::linear(Scalar::from_ratio(1, 2)));
        assert_eq!(minus.c, Scalar::from_ratio(-1, 2));
        assert!(rank2_verify(&plus).passed());
        assert!(rank2_verify(&minus).passed());

        // q=-1, b=7, e=2, lambda=1, a=0: h~ = -7 in the plus case
        let (plus, minus) = rank2_solve(
            &Scalar::from_int(-1),
            &Scalar::one(),
            &Scalar::zero(),
            &Scalar::from_int(7),
            &Scalar::from_int(2),
        )
        .unwrap();
        assert_eq!(plus.g, Poly::zero());
        assert_eq!(plus.h_tilde, Poly::constant(Scalar::from_int(-7)));
        assert!(rank2_verify(&plus).passed());
        assert!(rank2_verify(&minus).passed());

        let err = rank2_solve(
            &Scalar::one(),
            &Scalar::one(),
            &Scalar::zero(),
            &Scalar::zero(),
            &Scalar::zero(),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::ZeroParameter("e")));
    }

    #[test]
    fn rank2_bruteforce_finds_exactly_two_families() {
        for (q, lambda, a) in [(1i64, 1i64, (0i64, 1i64)), (2, 3, (1, 1))] {
            let out = rank2_bruteforce_check(
                &Scalar::from_int(q),
                &Scalar::from_int(lambda),
                &Scalar::from_ratio(a.0, a.1),
                &Scalar::zero(),
                3,
            )
            .unwrap();
            assert!(out.report.passed(), "defects: {:?}", out.report.defects);
            assert!(out.plus_family_found > 0 && out.minus_family_found > 0);
        }
        // degenerate max_deg = 1 still realizes both families
        let out = rank2_bruteforce_check(
            &Scalar::one(),
            &Scalar::one(),
            &Scalar::zero(),
            &Scalar::zero(),
            1,
        )
        .unwrap();
        assert!(out.report.passed());
        assert!(out.plus_family_found > 0 && out.minus_family_found > 0);
    }

    #[test]
    fn phi_closure_consistency_spot() {
        let params_l = ModuleParams::new(
            Sector::NSB,
            Scalar::from_int(4),
            Scalar::one(),
            Scalar::from_int(3),
            Scalar::from_int(-1),
        )
        .unwrap();
        let sigma = Scalar::from_int(2);
        let window = DegreeWindow::new(2, 1, 4);
        let seeds = vec![SuperVectorL::even_part(Poly::one())];
        let report = check_phi_closure_consistency(&params_l, &sigma, &seeds, &window).unwrap();
        assert!(report.passed(), "defects: {:?}", report.defects);
    }
}
