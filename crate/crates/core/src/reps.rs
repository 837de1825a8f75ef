//! Anti-Hermitian representations of E_m built from almost-complex
//! structures, in two families:
//!
//! * Class 1: generators `1^(i-1) ⊗ M ⊗ 1^(m-i)` on (C^2k)^(m+1), where M is
//!   the (2k)²-dimensional phased double flip Σ ε(i) q_i q_j |i j⟩⟨-i -j|
//!   over half-integer indices i, j ∈ {-J, …, J}, J = k - 1/2, with
//!   unimodular deformation phases q.
//! * Class 2: generators `1_2^k^(i-1) ⊗ (√-1 σ_y ⊗ σ_x^(N-1)) ⊗ 1_2^k^(m-i)`
//!   on C^(2^(N+k(m-1))). These satisfy the group relations exactly when
//!   N/2 <= k <= N-1 (for m >= 3), and the verifier reports each failure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::espgroup::GroupElement;
use crate::linalg::dense::ErrorStat;
use crate::linalg::monomial::MonomialOperator;
use crate::report::{ReportBuilder, VerificationReport};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Half-integer index at position `p` of a descending basis of size 2k,
/// rendered as "3/2", "-1/2", ….
fn half_index_label(two_k: usize, p: usize) -> String {
    let num = two_k as i64 - 1 - 2 * p as i64;
    format!("{num}/2")
}

/// Sign function ε over a paired index range: ε(p) ∈ {+1, -1} with
/// ε(p)·ε(p̄) = -1 for the reversal pairing p̄ = 2k-1-p.
#[derive(Debug, Clone, PartialEq)]
pub struct SignConvention {
    eps: Vec<i8>,
}

impl SignConvention {
    /// Default convention: +1 on positive indices, -1 on negative ones.
    pub fn default_for(k: usize) -> Self {
        let eps = (0..2 * k).map(|p| if p < k { 1 } else { -1 }).collect();
        SignConvention { eps }
    }

    /// Custom signs; must satisfy ε(p)·ε(p̄) = -1.
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        let n = eps.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidRepSpec {
                reason: format!("sign convention needs an even positive length, got {n}"),
            });
        }
        for p in 0..n {
            if eps[p].abs() != 1 {
                return Err(Error::InvalidRepSpec {
                    reason: format!("sign at position {p} must be ±1"),
                });
            }
            if eps[p] * eps[n - 1 - p] != -1 {
                return Err(Error::PhaseConstraint {
                    constraint: "eps(i)·eps(-i) = -1",
                    indices: half_index_label(n, p),
                    violation: 2.0,
                });
            }
        }
        Ok(SignConvention { eps })
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn eps(&self, p: usize) -> f64 {
        self.eps[p] as f64
    }
}

/// Unimodular deformation phases q indexed by the same descending
/// half-integer positions; the derived two-index phases are q_ij = q_i q_j.
///
/// Admissible parameters satisfy q_i q_{-i} = 1 and q_i* = q_{-i}; the
/// container itself is unvalidated so that perturbed sets can be pushed
/// through the constraint checker.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseParams {
    q: Vec<Complex64>,
}

impl PhaseParams {
    /// All q = 1 (the parameter-free choice).
    pub fn uniform(k: usize) -> Self {
        PhaseParams {
            q: vec![ONE; 2 * k],
        }
    }

    /// Build from k real angles (for indices J down to 1/2):
    /// q_i = e^(i φ/2), q_{-i} = e^(-i φ/2). Always admissible.
    pub fn from_angles(angles: &[f64]) -> Self {
        let k = angles.len();
        let mut q = vec![ONE; 2 * k];
        for (p, &phi) in angles.iter().enumerate() {
            q[p] = Complex64::from_polar(1.0, phi / 2.0);
            q[2 * k - 1 - p] = Complex64::from_polar(1.0, -phi / 2.0);
        }
        PhaseParams { q }
    }

    /// Raw values, unvalidated.
    pub fn from_raw(q: Vec<Complex64>) -> Result<Self> {
        if q.is_empty() || q.len() % 2 != 0 {
            return Err(Error::InvalidRepSpec {
                reason: format!("phase vector needs an even positive length, got {}", q.len()),
            });
        }
        Ok(PhaseParams { q })
    }

    pub fn half_dim(&self) -> usize {
        self.q.len() / 2
    }

    pub fn q(&self, p: usize) -> Complex64 {
        self.q[p]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.q
    }

    /// Derived two-index phase q_ij = q_i q_j for positions (p, r).
    pub fn q_pair(&self, p: usize, r: usize) -> Complex64 {
        self.q[p] * self.q[r]
    }

    /// Diagonal unitary with entries q_i^(1/2): conjugating the q = 1
    /// structure by it (per tensor factor) produces the deformed one.
    pub fn half_phase_conjugator(&self) -> MonomialOperator {
        let dim = self.q.len();
        let phases = self
            .q
            .iter()
            .map(|q| Complex64::from_polar(1.0, q.arg() / 2.0))
            .collect();
        MonomialOperator::new((0..dim).collect(), phases).expect("diagonal unitary")
    }
}

/// Check the three constraints on the derived phases q_ij that make the
/// Class-1 construction a representation:
/// q_ij q_{-i,-j} = 1,  q_ij q_{-i,j} = q_jl q_{j,-l},  q_ij* q_ij = 1.
/// Each violated instance is reported with the offending index triple.
pub fn check_constraints_3constr(phases: &PhaseParams, tol: f64) -> VerificationReport {
    let two_k = phases.q.len();
    let conj = |p: usize| two_k - 1 - p;
    let mut report = ReportBuilder::new("class-1 phase constraints", tol);

    let mut worst1 = (0.0f64, String::new());
    let mut worst2 = (0.0f64, String::new());
    let mut worst3 = (0.0f64, String::new());
    for p in 0..two_k {
        for r in 0..two_k {
            let qij = phases.q_pair(p, r);
            let e1 = (qij * phases.q_pair(conj(p), conj(r)) - ONE).norm();
            if e1 > worst1.0 {
                worst1 = (
                    e1,
                    format!(
                        "(i,j)=({},{})",
                        half_index_label(two_k, p),
                        half_index_label(two_k, r)
                    ),
                );
            }
            let e3 = (qij.conj() * qij - ONE).norm();
            if e3 > worst3.0 {
                worst3 = (
                    e3,
                    format!(
                        "(i,j)=({},{})",
                        half_index_label(two_k, p),
                        half_index_label(two_k, r)
                    ),
                );
            }
            for l in 0..two_k {
                let lhs = qij * phases.q_pair(conj(p), r);
                let rhs = phases.q_pair(r, l) * phases.q_pair(r, conj(l));
                let e2 = (lhs - rhs).norm();
                if e2 > worst2.0 {
                    worst2 = (
                        e2,
                        format!(
                            "(i,j,l)=({},{},{})",
                            half_index_label(two_k, p),
                            half_index_label(two_k, r),
                            half_index_label(two_k, l)
                        ),
                    );
                }
            }
        }
    }
    report.check(format!("q_ij q_-i-j = 1 at {}", worst1.1), worst1.0, None);
    report.check(
        format!("q_ij q_-ij = q_jl q_j-l at {}", worst2.1),
        worst2.0,
        None,
    );
    report.check(format!("q_ij* q_ij = 1 at {}", worst3.1), worst3.0, None);
    report.finish()
}

/// The anti-Hermitian factor M' = Σ ε(i) q_i |i⟩⟨-i| of the phased double
/// flip; squares to -1 for admissible phases.
pub fn antisymmetric_factor(phases: &PhaseParams, signs: &SignConvention) -> MonomialOperator {
    let dim = phases.q.len();
    let conj = |p: usize| dim - 1 - p;
    let mut target = vec![0usize; dim];
    let mut phase = vec![ONE; dim];
    for p in 0..dim {
        // Column -i carries the entry ε(i) q_i at row i.
        target[conj(p)] = p;
        phase[conj(p)] = signs.eps(p) * phases.q[p];
    }
    MonomialOperator::new(target, phase).expect("monomial factor")
}

/// The Hermitian factor P' = Σ q_j |j⟩⟨-j|; squares to +1 and anticommutes
/// with the antisymmetric factor.
pub fn symmetric_factor(phases: &PhaseParams) -> MonomialOperator {
    let dim = phases.q.len();
    let conj = |p: usize| dim - 1 - p;
    let mut target = vec![0usize; dim];
    let mut phase = vec![ONE; dim];
    for p in 0..dim {
        target[conj(p)] = p;
        phase[conj(p)] = phases.q[p];
    }
    MonomialOperator::new(target, phase).expect("monomial factor")
}

/// The (2k)²-dimensional almost-complex structure
/// M = Σ ε(i) q_i q_j |i j⟩⟨-i -j|. Errors if the phase constraints fail.
pub fn deformed_almost_complex(
    k: usize,
    phases: &PhaseParams,
    signs: &SignConvention,
) -> Result<MonomialOperator> {
    validate_class1_params(k, phases, signs)?;
    Ok(deformed_almost_complex_unchecked(k, phases, signs))
}

/// Same construction with no constraint validation (for negative tests).
pub fn deformed_almost_complex_unchecked(
    k: usize,
    phases: &PhaseParams,
    signs: &SignConvention,
) -> MonomialOperator {
    let two_k = 2 * k;
    let conj = |p: usize| two_k - 1 - p;
    let dim = two_k * two_k;
    let mut target = vec![0usize; dim];
    let mut phase = vec![ONE; dim];
    for p in 0..two_k {
        for r in 0..two_k {
            let col = conj(p) * two_k + conj(r);
            target[col] = p * two_k + r;
            phase[col] = signs.eps(p) * phases.q_pair(p, r);
        }
    }
    MonomialOperator::new(target, phase).expect("phased double flip")
}

/// Same structure from raw two-index phases q_ij (row-major over positions),
/// so inadmissible parameter sets can be constructed and watched fail.
pub fn deformed_almost_complex_raw(
    k: usize,
    q_pair: &[Complex64],
    signs: &SignConvention,
) -> Result<MonomialOperator> {
    let two_k = 2 * k;
    if q_pair.len() != two_k * two_k {
        return Err(Error::InvalidRepSpec {
            reason: format!(
                "raw phase table needs {} entries, got {}",
                two_k * two_k,
                q_pair.len()
            ),
        });
    }
    let conj = |p: usize| two_k - 1 - p;
    let dim = two_k * two_k;
    let mut target = vec![0usize; dim];
    let mut phase = vec![ONE; dim];
    for p in 0..two_k {
        for r in 0..two_k {
            let col = conj(p) * two_k + conj(r);
            target[col] = p * two_k + r;
            phase[col] = signs.eps(p) * q_pair[p * two_k + r];
        }
    }
    MonomialOperator::new(target, phase)
}

fn validate_class1_params(k: usize, phases: &PhaseParams, signs: &SignConvention) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidRepSpec {
            reason: "class 1 needs k >= 1".into(),
        });
    }
    if phases.half_dim() != k || signs.len() != 2 * k {
        return Err(Error::InvalidRepSpec {
            reason: format!(
                "phase/sign tables sized for k = {}, expected k = {k}",
                phases.half_dim()
            ),
        });
    }
    let report = check_constraints_3constr(phases, 1e-10);
    if !report.passed {
        let worst = report.worst_check().expect("three checks");
        return Err(Error::PhaseConstraint {
            constraint: "class-1 phase constraints",
            indices: worst.name.clone(),
            violation: worst.max_error,
        });
    }
    Ok(())
}

/// Parameters selecting a representation of E_m.
#[derive(Debug, Clone, PartialEq)]
pub enum RepSpec {
    /// Deformed double-flip construction on (C^2k)^(m+1).
    Class1 {
        m: usize,
        k: usize,
        phases: PhaseParams,
        signs: SignConvention,
    },
    /// Block construction `√-1 σ_y ⊗ σ_x^(n-1)` with identity blocks of
    /// size 2^k, on C^(2^(n+k(m-1))).
    Class2 { m: usize, n: usize, k: usize },
}

impl RepSpec {
    /// Class 1 with q = 1 and the default sign convention.
    pub fn class1(m: usize, k: usize) -> Result<Self> {
        Self::class1_with(m, k, PhaseParams::uniform(k), SignConvention::default_for(k))
    }

    /// Class 1 with explicit phases/signs; validates the phase constraints.
    pub fn class1_with(
        m: usize,
        k: usize,
        phases: PhaseParams,
        signs: SignConvention,
    ) -> Result<Self> {
        if m < 1 {
            return Err(Error::RankTooSmall {
                m,
                context: "representation needs m >= 1",
            });
        }
        validate_class1_params(k, &phases, &signs)?;
        Ok(RepSpec::Class1 { m, k, phases, signs })
    }

    /// Class 1 without constraint validation (negative tests).
    pub fn class1_unchecked(
        m: usize,
        k: usize,
        phases: PhaseParams,
        signs: SignConvention,
    ) -> Self {
        RepSpec::Class1 { m, k, phases, signs }
    }

    /// Class 2 with block exponent `n` (the block acts on 2^n dimensions)
    /// and stride exponent `k`. Any k >= 1 can be built; only
    /// n/2 <= k <= n-1 yields a representation, which the verifier checks.
    pub fn class2(m: usize, n: usize, k: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::RankTooSmall {
                m,
                context: "representation needs m >= 1",
            });
        }
        if n < 2 {
            return Err(Error::InvalidRepSpec {
                reason: format!("class 2 needs block exponent N >= 2, got {n}"),
            });
        }
        if k < 1 {
            return Err(Error::InvalidRepSpec {
                reason: "class 2 needs stride exponent k >= 1".into(),
            });
        }
        Ok(RepSpec::Class2 { m, n, k })
    }

    pub fn m(&self) -> usize {
        match self {
            RepSpec::Class1 { m, .. } | RepSpec::Class2 { m, .. } => *m,
        }
    }

    /// Strand count of the braid group this representation lifts to.
    pub fn strands(&self) -> usize {
        self.m() + 1
    }

    pub fn class_label(&self) -> u8 {
        match self {
            RepSpec::Class1 { .. } => 1,
            RepSpec::Class2 { .. } => 2,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            RepSpec::Class1 { m, k, .. } => (2 * k).pow(*m as u32 + 1),
            RepSpec::Class2 { m, n, k } => 1usize << (n + k * (m - 1)),
        }
    }

    /// Whether the parameters are inside the range where the construction
    /// is actually a representation (relevant for class 2 with m >= 3).
    pub fn is_admissible(&self) -> bool {
        match self {
            RepSpec::Class1 { .. } => true,
            RepSpec::Class2 { m, n, k } => {
                if *m >= 3 {
                    2 * k >= *n && *k <= n - 1
                } else {
                    *k >= 1 && *k <= n - 1
                }
            }
        }
    }

    /// Image of the generator e_i (1-based), as a monomial operator.
    pub fn generator(&self, i: usize) -> Result<MonomialOperator> {
        let m = self.m();
        if i < 1 || i > m {
            return Err(Error::IndexOutOfRange { index: i, max: m });
        }
        match self {
            RepSpec::Class1 { k, phases, signs, .. } => {
                let core = deformed_almost_complex_unchecked(*k, phases, signs);
                let left = MonomialOperator::identity((2 * k).pow(i as u32 - 1));
                let right = MonomialOperator::identity((2 * k).pow((m - i) as u32));
                Ok(left.kron(&core).kron(&right))
            }
            RepSpec::Class2 { n, k, .. } => {
                let core = MonomialOperator::signed_reversal(1 << n);
                let left = MonomialOperator::identity(1 << (k * (i - 1)));
                let right = MonomialOperator::identity(1 << (k * (m - i)));
                Ok(left.kron(&core).kron(&right))
            }
        }
    }

    pub fn generators(&self) -> Result<Vec<MonomialOperator>> {
        (1..=self.m()).map(|i| self.generator(i)).collect()
    }

    /// Image of a group element: sign(g) · Π φ(e_i)^(α_i) in index order.
    pub fn rep_of_element(&self, g: &GroupElement) -> Result<MonomialOperator> {
        if g.m() != self.m() {
            return Err(Error::GroupMismatch {
                left: g.m(),
                right: self.m(),
            });
        }
        let mut acc = MonomialOperator::identity(self.dimension());
        for i in 1..=self.m() {
            if g.exponent(i) {
                acc = acc.compose(&self.generator(i)?)?;
            }
        }
        if g.is_negative() {
            acc = acc.negated();
        }
        Ok(acc)
    }

    pub fn phases(&self) -> Option<&PhaseParams> {
        match self {
            RepSpec::Class1 { phases, .. } => Some(phases),
            RepSpec::Class2 { .. } => None,
        }
    }

    /// JSON wire form: `{"class":1,"m":…,"k":…,"q":[[re,im],…]}` or
    /// {"class":2,"m":…,"k":…,"N":…}. Class-1 signs always use the default
    /// convention on the wire.
    pub fn to_json(&self) -> String {
        let dto = match self {
            RepSpec::Class1 { m, k, phases, .. } => RepSpecJson {
                class: 1,
                m: *m,
                k: *k,
                n: None,
                q: Some(phases.values().iter().map(|c| (c.re, c.im)).collect()),
            },
            RepSpec::Class2 { m, n, k } => RepSpecJson {
                class: 2,
                m: *m,
                k: *k,
                n: Some(*n),
                q: None,
            },
        };
        serde_json::to_string(&dto).expect("spec serialization")
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let dto: RepSpecJson = serde_json::from_str(input)?;
        match dto.class {
            1 => {
                let phases = match dto.q {
                    Some(pairs) => PhaseParams::from_raw(
                        pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
                    )?,
                    None => PhaseParams::uniform(dto.k),
                };
                RepSpec::class1_with(dto.m, dto.k, phases, SignConvention::default_for(dto.k))
            }
            2 => {
                let n = dto.n.ok_or_else(|| Error::InvalidRepSpec {
                    reason: "class 2 needs the block exponent N".into(),
                })?;
                RepSpec::class2(dto.m, n, dto.k)
            }
            other => Err(Error::InvalidRepSpec {
                reason: format!("unknown class {other}"),
            }),
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct RepSpecJson {
    class: u8,
    m: usize,
    k: usize,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<(f64, f64)>>,
}

/// Check the generator-image relations that make φ a representation with no
/// 1-dimensional constituents: each image squares to -1 and is
/// anti-Hermitian, distant images commute, adjacent ones anticommute.
pub fn verify_esp_relations(spec: &RepSpec, tol: f64) -> VerificationReport {
    let m = spec.m();
    let mut report = ReportBuilder::new(
        format!("group relations for class {} (m={})", spec.class_label(), m),
        tol,
    );
    for i in 1..=m {
        let t = spec.generator(i).expect("index in range");
        let sq = t.compose(&t).expect("same dim");
        let stat = sq.max_abs_diff_scaled_identity(-ONE);
        report.check(format!("square: T{i}^2 = -1"), stat.max_error, stat.witness);
        let stat = t.anti_hermiticity_error();
        report.check(
            format!("anti-hermitian: T{i}+T{i}^dag = 0"),
            stat.max_error,
            stat.witness,
        );
    }
    for i in 1..=m {
        let ti = spec.generator(i).expect("index in range");
        for j in (i + 1)..=m {
            let tj = spec.generator(j).expect("index in range");
            let ij = ti.compose(&tj).expect("same dim");
            let ji = tj.compose(&ti).expect("same dim");
            if j == i + 1 {
                let stat = ij.max_abs_diff(&ji.negated()).expect("same dim");
                report.check(
                    format!("adjacent anticommutation: T{i}T{j} = -T{j}T{i}"),
                    stat.max_error,
                    stat.witness,
                );
            } else {
                let stat = ij.max_abs_diff(&ji).expect("same dim");
                report.check(
                    format!("far commutation: T{i}T{j} = T{j}T{i}"),
                    stat.max_error,
                    stat.witness,
                );
            }
        }
    }
    report.finish()
}

/// The weaker braid-compatibility relation
/// `T_i + T_i T_{i+1} T_i - T_{i+1} - T_{i+1} T_i T_{i+1} = 0`.
/// Adjacent anticommutation implies it; exposed as a standalone probe.
pub fn check_e3prime(ti: &MonomialOperator, tj: &MonomialOperator) -> Result<ErrorStat> {
    use crate::linalg::columns::SparseVec;
    if ti.dim() != tj.dim() {
        return Err(Error::DimensionMismatch {
            left: ti.dim(),
            right: tj.dim(),
            context: "e3prime",
        });
    }
    let iji = ti.compose(tj)?.compose(ti)?;
    let jij = tj.compose(ti)?.compose(tj)?;
    let mut stat = ErrorStat::zero();
    for col in 0..ti.dim() {
        let lhs = SparseVec::from_entries(vec![
            (ti.target(col), ti.phase(col)),
            (iji.target(col), iji.phase(col)),
        ]);
        let rhs = SparseVec::from_entries(vec![
            (tj.target(col), tj.phase(col)),
            (jij.target(col), jij.phase(col)),
        ]);
        stat.merge(lhs.max_abs_diff(&rhs, col));
    }
    Ok(stat)
}

/// Validate the abstract normal-form multiplication against the matrix
/// homomorphism: φ(a·b) must equal φ(a)·φ(b) entrywise for every pair, for
/// both representation classes at small parameters.
pub fn verify_multiply_oracle(m: usize, tol: f64) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new(format!("group multiplication vs matrix oracle (m={m})"), tol);
    let elements = crate::espgroup::enumerate(m)?;
    let index: std::collections::BTreeMap<GroupElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, g)| (*g, i))
        .collect();
    let mut specs = vec![RepSpec::class1(m, 1)?, RepSpec::class2(m, 2, 1)?];
    if m <= 3 {
        specs.push(RepSpec::class2(m, 3, 2)?);
    }
    for spec in &specs {
        let images: Vec<MonomialOperator> = elements
            .iter()
            .map(|g| spec.rep_of_element(g))
            .collect::<Result<_>>()?;
        let mut stat = ErrorStat::zero();
        for (a, fa) in elements.iter().zip(&images) {
            for (b, fb) in elements.iter().zip(&images) {
                let ab = a.multiply(b)?;
                let fab = &images[index[&ab]];
                stat.merge(fa.compose(fb)?.max_abs_diff(fab)?);
            }
        }
        let label = match spec {
            RepSpec::Class1 { k, .. } => format!("class 1 (k={k})"),
            RepSpec::Class2 { n, k, .. } => format!("class 2 (N={n}, k={k})"),
        };
        report.check(
            format!("homomorphism over all pairs, {label}"),
            stat.max_error,
            stat.witness,
        );
    }
    Ok(report.finish())
}

/// Conjugation that removes the deformation phases: with U = diag(q_i^(1/2))
/// on each tensor factor, U^(m+1) · φ_{q=1}(e_i) · U^(m+1)† = φ_q(e_i).
pub fn equivalence_conjugator(spec: &RepSpec) -> Result<MonomialOperator> {
    match spec {
        RepSpec::Class1 { m, phases, .. } => {
            let u = phases.half_phase_conjugator();
            let mut acc = u.clone();
            for _ in 0..*m {
                acc = acc.kron(&u);
            }
            Ok(acc)
        }
        RepSpec::Class2 { .. } => Err(Error::InvalidRepSpec {
            reason: "deformation phases exist only in class 1".into(),
        }),
    }
}
