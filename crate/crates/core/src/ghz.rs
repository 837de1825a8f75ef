//! Product-basis indexing, GHZ-state construction, and verification that
//! Bell matrices map the computational basis to GHZ states.
//!
//! Basis convention: `|Φ_k⟩ = |m_1, …, m_N⟩` with spins m_i = ±1/2 and
//! k = 2^(N-1) + 1/2 - Σ 2^(N-i) m_i, a bijection onto 1..2^N. The conjugate
//! index flips every spin: k̄ = 2^N - k + 1. GHZ states pair a basis vector
//! with its conjugate: |Ψ_l⟩ = (|Φ_l⟩ + |Φ_l̄⟩)/√2 and
//! |Ψ_l̄⟩ = (|Φ_l⟩ - |Φ_l̄⟩)/√2 for 1 <= l <= 2^(N-1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::monomial::{MonomialOperator, TwoBandOperator};
use crate::linalg::state::StateVector;
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::reps::{PhaseParams, RepSpec, SignConvention};

/// Spin-1/2 value of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,   // +1/2
    Down, // -1/2
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// The sign ε'(m) in `√-1 σ_y |m⟩ = ε'(m) |m̄⟩`: ε'(+1/2) = -1,
    /// ε'(-1/2) = +1.
    pub fn eps_prime(self) -> f64 {
        match self {
            Spin::Up => -1.0,
            Spin::Down => 1.0,
        }
    }
}

/// Word of N spins labelling one product-basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinWord {
    spins: Vec<Spin>,
}

impl SpinWord {
    pub fn new(spins: Vec<Spin>) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::UnsupportedQubitCount {
                qubits: 0,
                reason: "spin word needs at least one spin",
            });
        }
        Ok(SpinWord { spins })
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn first(&self) -> Spin {
        self.spins[0]
    }

    pub fn flipped(&self) -> SpinWord {
        SpinWord {
            spins: self.spins.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The spin word of (1-based) basis index k among N qubits.
    pub fn from_index(qubits: usize, k: usize) -> Result<SpinWord> {
        let dim = 1usize << qubits;
        if k < 1 || k > dim {
            return Err(Error::BasisIndexOutOfRange { index: k, max: dim });
        }
        let bits = k - 1;
        let spins = (0..qubits)
            .map(|i| {
                if (bits >> (qubits - 1 - i)) & 1 == 0 {
                    Spin::Up
                } else {
                    Spin::Down
                }
            })
            .collect();
        Ok(SpinWord { spins })
    }
}

/// Basis index k = 2^(N-1) + 1/2 - Σ 2^(N-i) m_i, an integer in 1..2^N.
pub fn basis_index(word: &SpinWord) -> usize {
    let n = word.len();
    let mut bits = 0usize;
    for (i, s) in word.spins.iter().enumerate() {
        if *s == Spin::Down {
            bits |= 1 << (n - 1 - i);
        }
    }
    bits + 1
}

/// Conjugate (all-spins-flipped) index k̄ = 2^N - k + 1.
pub fn conjugate_index(qubits: usize, k: usize) -> usize {
    (1usize << qubits) - k + 1
}

/// Index pair (l, l̄) with 1 <= l < l̄ <= 2^N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GhzIndex {
    pub l: usize,
    pub l_bar: usize,
}

impl GhzIndex {
    pub fn new(qubits: usize, l: usize) -> Result<Self> {
        let half = 1usize << (qubits - 1);
        if l < 1 || l > half {
            return Err(Error::BasisIndexOutOfRange { index: l, max: half });
        }
        Ok(GhzIndex {
            l,
            l_bar: conjugate_index(qubits, l),
        })
    }
}

/// The j-th GHZ state of N qubits (j in 1..2^N):
/// for j = l <= 2^(N-1): (|Φ_l⟩ + |Φ_l̄⟩)/√2; for j = l̄: (|Φ_l⟩ - |Φ_l̄⟩)/√2.
pub fn ghz_state(qubits: usize, j: usize) -> Result<StateVector> {
    let dim = 1usize << qubits;
    if j < 1 || j > dim {
        return Err(Error::BasisIndexOutOfRange { index: j, max: dim });
    }
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut v = StateVector::zeros(dim);
    let half = dim / 2;
    if j <= half {
        v.set_amp(j, s)?;
        v.set_amp(conjugate_index(qubits, j), s)?;
    } else {
        let l = conjugate_index(qubits, j);
        v.set_amp(l, s)?;
        v.set_amp(j, -s)?;
    }
    Ok(v)
}

/// The Bell matrix B = (1/√2)(1 + M) with M = √-1 σ_y ⊗ σ_x^(N-1); unitary,
/// two nonzeros per column, maps the product basis to the GHZ basis.
pub fn bell_matrix(qubits: usize) -> Result<TwoBandOperator> {
    if qubits < 2 {
        return Err(Error::UnsupportedQubitCount {
            qubits,
            reason: "the Bell matrix needs at least 2 qubits",
        });
    }
    Ok(TwoBandOperator::bell_from(MonomialOperator::signed_reversal(
        1 << qubits,
    )))
}

/// The same Bell matrix reached through the Class-1 route, which exists only
/// for an even qubit count 2n and requires the factor size 2k = 2^n so that
/// the generated states span the full space.
pub fn class1_bell_matrix(qubits: usize) -> Result<TwoBandOperator> {
    if qubits < 2 || qubits % 2 != 0 {
        return Err(Error::UnsupportedQubitCount {
            qubits,
            reason: "the class-1 route yields GHZ states only for an even qubit count",
        });
    }
    let n = qubits / 2;
    let k = 1usize << (n - 1); // 2k = 2^n
    let spec = RepSpec::class1_with(
        1,
        k,
        PhaseParams::uniform(k),
        SignConvention::default_for(k),
    )?;
    Ok(TwoBandOperator::bell_from(spec.generator(1)?))
}

/// Composite index of |μν⟩ inside (C^2^n) ⊗ (C^2^n): α = (μ-1)·2^n + ν.
pub fn composite_index(half_qubits: usize, mu: usize, nu: usize) -> usize {
    (mu - 1) * (1 << half_qubits) + nu
}

/// Verify the column law: column j of the Bell matrix equals the GHZ state
/// of index 2^N - j + 1 (sign included, not up to phase), and every column
/// has exactly two nonzeros of modulus 1/√2.
pub fn verify_ghz_columns(qubits: usize, tol: f64) -> Result<VerificationReport> {
    let b = bell_matrix(qubits)?;
    Ok(verify_ghz_columns_of(&b, qubits, tol))
}

/// Column-law check for any Bell-type operator on 2^N dimensions (used for
/// both the direct and the Class-1 routes).
pub fn verify_ghz_columns_of(
    b: &TwoBandOperator,
    qubits: usize,
    tol: f64,
) -> VerificationReport {
    let dim = 1usize << qubits;
    let mut report = ReportBuilder::new(format!("GHZ column law ({qubits} qubits)"), tol);
    let mut worst_col = crate::linalg::dense::ErrorStat::zero();
    let mut two_nonzeros = true;
    let mut moduli_err = 0.0f64;
    let target = std::f64::consts::FRAC_1_SQRT_2;
    for col in 1..=dim {
        let expected = ghz_state(qubits, conjugate_index(qubits, col)).expect("index in range");
        let pairs = b.column(col - 1);
        if pairs.len() != 2 {
            two_nonzeros = false;
        }
        let mut actual = StateVector::zeros(dim);
        for (row, coeff) in &pairs {
            actual.set_amp(row + 1, *coeff).expect("row in range");
            moduli_err = moduli_err.max((coeff.norm() - target).abs());
        }
        let stat = actual.max_abs_diff(&expected).expect("same dim");
        if stat.max_error > worst_col.max_error {
            worst_col = crate::linalg::dense::ErrorStat {
                max_error: stat.max_error,
                witness: stat.witness.map(|w| Witness {
                    location: vec![w.location[0], col],
                    lhs: w.lhs,
                    rhs: w.rhs,
                }),
            };
        }
    }
    report.check(
        "column j equals GHZ state 2^N - j + 1",
        worst_col.max_error,
        worst_col.witness,
    );
    report.check_bool("every column has exactly two nonzeros", two_nonzeros);
    report.check("every nonzero has modulus 1/sqrt(2)", moduli_err, None);
    report.finish()
}
