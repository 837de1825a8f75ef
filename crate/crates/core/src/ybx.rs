//! Yang-Baxterization of Bell matrices, unitary normalization, Hamiltonians,
//! Schrödinger evolution, and quantum Yang-Baxter verification in both the
//! multiplicative and the additive parameter conventions.
//!
//! All of it rides on one fact: the base operator M is an almost-complex
//! structure (M² = -1, M† = -M), so B = (1/√2)(1 + M) is unitary with
//! eigenvalues e^(±iπ/4), the spectral family Ř(x) = B + x B^(-1) stays
//! two-band, and matrix exponentials of multiples of M close in the form
//! cos·1 + sin·M.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ghz::{conjugate_index, SpinWord};
use crate::linalg::columns::{max_product_diff, product_column, OpRef, SparseVec};
use crate::linalg::dense::{DenseMatrix, ErrorStat};
use crate::linalg::monomial::{MonomialOperator, TwoBandOperator};
use crate::linalg::state::StateVector;
use crate::report::{ReportBuilder, VerificationReport};
use crate::reps::RepSpec;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The eigenvalue ζ = e^(iπ/4) of B = (1/√2)(1 + M).
pub fn zeta() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
}

/// Conversions between the spectral parameter x and the angle variables:
/// cos θ = 1/√(1+x²), sin θ = x/√(1+x²), θ' = θ - π/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub theta: f64,
    pub theta_prime: f64,
}

impl EvolutionParams {
    pub fn from_theta(theta: f64) -> Self {
        EvolutionParams {
            theta,
            theta_prime: theta - std::f64::consts::FRAC_PI_4,
        }
    }

    pub fn from_theta_prime(theta_prime: f64) -> Self {
        EvolutionParams {
            theta: theta_prime + std::f64::consts::FRAC_PI_4,
            theta_prime,
        }
    }

    pub fn from_x(x: f64) -> Self {
        Self::from_theta(x.atan())
    }

    pub fn x(&self) -> f64 {
        self.theta.tan()
    }
}

/// A verified almost-complex structure and its Yang-Baxterized family
/// Ř(x) = B + x B^(-1) = (1/√2)((1+x)·1 + (1-x)·M), with Ř(0) = B.
#[derive(Debug, Clone)]
pub struct SpectralFamily {
    base: MonomialOperator,
}

impl SpectralFamily {
    /// Checks M² = -1 and M† = -M before accepting the base operator.
    pub fn new(base: MonomialOperator) -> Result<Self> {
        let sq = base.compose(&base)?;
        if sq.max_abs_diff_scaled_identity(-ONE).max_error > 1e-12 {
            return Err(Error::NotAlmostComplex {
                reason: "M² differs from -1",
            });
        }
        if base.anti_hermiticity_error().max_error > 1e-12 {
            return Err(Error::NotAlmostComplex {
                reason: "M is not anti-Hermitian",
            });
        }
        Ok(SpectralFamily { base })
    }

    pub fn base(&self) -> &MonomialOperator {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// B = (1/√2)(1 + M), the x → 0 limit of the family.
    pub fn bell(&self) -> TwoBandOperator {
        TwoBandOperator::bell_from(self.base.clone())
    }

    /// Ř(x) = (1/√2)((1+x)·1 + (1-x)·M).
    pub fn r_of_x(&self, x: f64) -> TwoBandOperator {
        TwoBandOperator::new(
            Complex64::new((1.0 + x) * FRAC_1_SQRT_2, 0.0),
            Complex64::new((1.0 - x) * FRAC_1_SQRT_2, 0.0),
            self.base.clone(),
        )
    }

    /// B(x) = ρ(x)^(-1/2) Ř(x) with ρ = 1 + x²; unitary for real x.
    pub fn unitary_r(&self, x: f64) -> TwoBandOperator {
        let rho_inv_sqrt = 1.0 / (1.0 + x * x).sqrt();
        TwoBandOperator::new(
            Complex64::new((1.0 + x) * FRAC_1_SQRT_2 * rho_inv_sqrt, 0.0),
            Complex64::new((1.0 - x) * FRAC_1_SQRT_2 * rho_inv_sqrt, 0.0),
            self.base.clone(),
        )
    }

    /// B(θ) = cos θ B + sin θ B^(-1) = e^((π/4 - θ) M)
    ///       = cos(π/4 - θ)·1 + sin(π/4 - θ)·M.
    pub fn b_of_theta(&self, theta: f64) -> TwoBandOperator {
        let angle = std::f64::consts::FRAC_PI_4 - theta;
        TwoBandOperator::new(
            Complex64::new(angle.cos(), 0.0),
            Complex64::new(angle.sin(), 0.0),
            self.base.clone(),
        )
    }

    /// B(θ') = e^(-θ' M) = cos θ'·1 - sin θ'·M, so that θ' = 0 is the
    /// identity.
    pub fn b_of_theta_prime(&self, theta_prime: f64) -> TwoBandOperator {
        TwoBandOperator::new(
            Complex64::new(theta_prime.cos(), 0.0),
            Complex64::new(-theta_prime.sin(), 0.0),
            self.base.clone(),
        )
    }

    /// Time-independent Hamiltonian H = -√-1 M; Hermitian with H² = 1.
    pub fn hamiltonian_monomial(&self) -> MonomialOperator {
        self.base.scaled(-I)
    }

    /// Dense form of H = -√-1 M.
    pub fn hamiltonian(&self, cap: usize) -> Result<DenseMatrix> {
        self.hamiltonian_monomial().to_dense_with_cap(cap)
    }

    /// Time-dependent Hamiltonian H(x) = -√-1 ρ(x)^(-1) M (read-only; the
    /// evolution itself always integrates the time-independent form).
    pub fn hamiltonian_x(&self, x: f64, cap: usize) -> Result<DenseMatrix> {
        let rho_inv = 1.0 / (1.0 + x * x);
        self.base
            .scaled(-I)
            .to_dense_with_cap(cap)
            .map(|m| m.scale(Complex64::new(rho_inv, 0.0)))
    }
}

/// The family attached to the Bell matrix on N qubits.
pub fn ghz_family(qubits: usize) -> Result<SpectralFamily> {
    if qubits < 1 {
        return Err(Error::UnsupportedQubitCount {
            qubits,
            reason: "evolution needs at least one qubit",
        });
    }
    SpectralFamily::new(MonomialOperator::signed_reversal(1 << qubits))
}

/// Evolve the basis state |Φ_l⟩ under B(θ') = e^(-θ' M):
/// cos θ' |Φ_l⟩ - sin θ' ε'(m_1) |Φ_l̄⟩, with ε' the sign of the leading
/// spin. Norm is preserved; θ' = π/4 lands on the GHZ state of index l (up
/// to the recorded sign).
pub fn evolve(qubits: usize, theta_prime: f64, l: usize) -> Result<StateVector> {
    let dim = 1usize << qubits;
    if l < 1 || l > dim {
        return Err(Error::BasisIndexOutOfRange { index: l, max: dim });
    }
    let word = SpinWord::from_index(qubits, l)?;
    let eps = word.first().eps_prime();
    let mut v = StateVector::zeros(dim);
    let l_bar = conjugate_index(qubits, l);
    v.set_amp(l, Complex64::new(theta_prime.cos(), 0.0))?;
    let flipped = Complex64::new(-theta_prime.sin() * eps, 0.0);
    v.set_amp(l_bar, v.amp(l_bar)? + flipped)?;
    Ok(v)
}

/// Ř_i(x) on the representation space: (1/√2)((1+x)·1 + (1-x)·T_i).
fn r_i_of_x(t: &MonomialOperator, x: f64) -> TwoBandOperator {
    TwoBandOperator::new(
        Complex64::new((1.0 + x) * FRAC_1_SQRT_2, 0.0),
        Complex64::new((1.0 - x) * FRAC_1_SQRT_2, 0.0),
        t.clone(),
    )
}

/// Ř_i(Θ) = 1 + tanh(Θ)·T_i for the additive convention.
fn r_i_additive(t: &MonomialOperator, theta: f64) -> TwoBandOperator {
    TwoBandOperator::new(ONE, Complex64::new(theta.tanh(), 0.0), t.clone())
}

/// The closed form of √2·Ř_i(x)Ř_(i+1)(xy)Ř_i(y):
/// (1+xy)(x+y)·1 + (1-xy)(y-x)·T_i T_(i+1) + (1+xy)(1-xy)·(T_i + T_(i+1)),
/// symmetric under i ↔ i+1, x ↔ y. Used as an independent algebraic
/// cross-check of the product evaluation.
fn qybe_symmetric_column(
    ti: &MonomialOperator,
    tj: &MonomialOperator,
    titj: &MonomialOperator,
    x: f64,
    y: f64,
    col: usize,
) -> SparseVec {
    let c_id = Complex64::new((1.0 + x * y) * (x + y) * FRAC_1_SQRT_2, 0.0);
    let c_prod = Complex64::new((1.0 - x * y) * (y - x) * FRAC_1_SQRT_2, 0.0);
    let c_single = Complex64::new((1.0 + x * y) * (1.0 - x * y) * FRAC_1_SQRT_2, 0.0);
    SparseVec::from_entries(vec![
        (col, c_id),
        (titj.target(col), c_prod * titj.phase(col)),
        (ti.target(col), c_single * ti.phase(col)),
        (tj.target(col), c_single * tj.phase(col)),
    ])
}

/// Verify the multiplicative quantum Yang-Baxter equation
/// `Ř_i(x) Ř_(i+1)(xy) Ř_i(y) = Ř_(i+1)(y) Ř_i(xy) Ř_(i+1)(x)` for every
/// adjacent pair of the representation, plus the symmetric closed form as an
/// independent route. At x = y = 0 this is the braid relation.
pub fn verify_qybe(rep: &RepSpec, x: f64, y: f64, tol: f64) -> Result<VerificationReport> {
    let m = rep.m();
    if m < 2 {
        return Err(Error::RankTooSmall {
            m,
            context: "the quantum YBE needs at least two generators",
        });
    }
    let mut report = ReportBuilder::new(
        format!(
            "quantum YBE, class {} (x={x}, y={y})",
            rep.class_label()
        ),
        tol,
    );
    for i in 1..m {
        let ti = rep.generator(i)?;
        let tj = rep.generator(i + 1)?;
        let lhs = [r_i_of_x(&ti, x), r_i_of_x(&tj, x * y), r_i_of_x(&ti, y)];
        let rhs = [r_i_of_x(&tj, y), r_i_of_x(&ti, x * y), r_i_of_x(&tj, x)];
        let lhs_refs: Vec<OpRef<'_>> = lhs.iter().map(OpRef::from).collect();
        let rhs_refs: Vec<OpRef<'_>> = rhs.iter().map(OpRef::from).collect();
        let stat = max_product_diff(&lhs_refs, &rhs_refs)?;
        report.check(
            format!("R{i}(x) R{}(xy) R{i}(y) = R{}(y) R{i}(xy) R{}(x)", i + 1, i + 1, i + 1),
            stat.max_error,
            stat.witness,
        );

        // Independent route: both sides match the symmetric closed form.
        let titj = ti.compose(&tj)?;
        let mut closed = ErrorStat::zero();
        for col in 0..ti.dim() {
            let column = product_column(&lhs_refs, col);
            let formula = qybe_symmetric_column(&ti, &tj, &titj, x, y, col);
            closed.merge(column.max_abs_diff(&formula, col));
        }
        report.check(
            format!("closed form of sqrt(2) R{i}(x) R{}(xy) R{i}(y)", i + 1),
            closed.max_error,
            closed.witness,
        );
    }
    Ok(report.finish())
}

/// Verify the parameter-additive form with Ř_i(Θ) = 1 + tanh(Θ)·T_i:
/// `Ř_i(Θ1) Ř_(i+1)(Θ1+Θ2) Ř_i(Θ2) = Ř_(i+1)(Θ2) Ř_i(Θ1+Θ2) Ř_(i+1)(Θ1)`.
pub fn verify_qybe_additive(
    rep: &RepSpec,
    theta1: f64,
    theta2: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let m = rep.m();
    if m < 2 {
        return Err(Error::RankTooSmall {
            m,
            context: "the quantum YBE needs at least two generators",
        });
    }
    let mut report = ReportBuilder::new(
        format!(
            "additive quantum YBE, class {} (Θ1={theta1}, Θ2={theta2})",
            rep.class_label()
        ),
        tol,
    );
    for i in 1..m {
        let ti = rep.generator(i)?;
        let tj = rep.generator(i + 1)?;
        let lhs = [
            r_i_additive(&ti, theta1),
            r_i_additive(&tj, theta1 + theta2),
            r_i_additive(&ti, theta2),
        ];
        let rhs = [
            r_i_additive(&tj, theta2),
            r_i_additive(&ti, theta1 + theta2),
            r_i_additive(&tj, theta1),
        ];
        let lhs_refs: Vec<OpRef<'_>> = lhs.iter().map(OpRef::from).collect();
        let rhs_refs: Vec<OpRef<'_>> = rhs.iter().map(OpRef::from).collect();
        let stat = max_product_diff(&lhs_refs, &rhs_refs)?;
        report.check(
            format!(
                "R{i}(Θ1) R{}(Θ1+Θ2) R{i}(Θ2) = R{}(Θ2) R{i}(Θ1+Θ2) R{}(Θ1)",
                i + 1,
                i + 1,
                i + 1
            ),
            stat.max_error,
            stat.witness,
        );
    }
    Ok(report.finish())
}

/// Seeded random sweep of the multiplicative quantum YBE over
/// (x, y) ∈ [-range, range]².
pub fn qybe_sweep(
    rep: &RepSpec,
    seed: u64,
    count: usize,
    range: f64,
    tol: f64,
) -> Result<VerificationReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = ReportBuilder::new(
        format!(
            "quantum YBE sweep, class {} ({count} samples, seed {seed})",
            rep.class_label()
        ),
        tol,
    );
    for sample in 0..count {
        let x = rng.gen_range(-range..range);
        let y = rng.gen_range(-range..range);
        let inner = verify_qybe(rep, x, y, tol)?;
        report.check(
            format!("sample {sample}: (x,y)=({x:.4},{y:.4})"),
            inner.max_error,
            inner.worst_check().and_then(|c| c.witness.clone()),
        );
    }
    Ok(report.finish())
}

/// Seeded random sweep of the additive quantum YBE over
/// (Θ1, Θ2) ∈ [-range, range]².
pub fn qybe_additive_sweep(
    rep: &RepSpec,
    seed: u64,
    count: usize,
    range: f64,
    tol: f64,
) -> Result<VerificationReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = ReportBuilder::new(
        format!(
            "additive quantum YBE sweep, class {} ({count} samples, seed {seed})",
            rep.class_label()
        ),
        tol,
    );
    for sample in 0..count {
        let t1 = rng.gen_range(-range..range);
        let t2 = rng.gen_range(-range..range);
        let inner = verify_qybe_additive(rep, t1, t2, tol)?;
        report.check(
            format!("sample {sample}: (Θ1,Θ2)=({t1:.4},{t2:.4})"),
            inner.max_error,
            inner.worst_check().and_then(|c| c.witness.clone()),
        );
    }
    Ok(report.finish())
}

/// Check the quadratic characteristic identity (B - ζ·1)(B - ζ*·1) = 0 and
/// that the two eigenvalues ζ = e^(iπ/4), ζ* each have multiplicity dim/2
/// (read off the trace: tr B = n₊ζ + n₋ζ*).
pub fn characteristic_check(b: &TwoBandOperator, tol: f64) -> Result<VerificationReport> {
    let dim = b.dim();
    let z = zeta();
    let mut report = ReportBuilder::new("characteristic identity of B", tol);

    let mut residual = ErrorStat::zero();
    for col in 0..dim {
        // (B - ζ)(B - ζ*) e_col, streamed.
        let unit = SparseVec::unit(col);
        let apply_shifted = |shift: Complex64, v: &SparseVec| -> SparseVec {
            OpRef::from(b).apply_sparse(v).add(&v.scaled(-shift))
        };
        let out = apply_shifted(z, &apply_shifted(z.conj(), &unit));
        residual.merge(out.max_abs_diff(&SparseVec::from_entries(vec![]), col));
    }
    report.check("(B - ζ)(B - ζ*) = 0", residual.max_error, residual.witness);

    let tr = b.trace();
    let diff = 2.0f64.sqrt() * tr.im; // n₊ - n₋
    let err_balance = diff.abs();
    report.check(
        format!("eigenvalue multiplicities balance at {}/2 each", dim),
        err_balance,
        None,
    );
    let re_expected = dim as f64 * FRAC_1_SQRT_2;
    report.check(
        "Re tr B = dim/sqrt(2)",
        (tr.re - re_expected).abs(),
        None,
    );
    Ok(report.finish())
}
