//! Braid-group lifts of the group representations, braid-word application,
//! and the (generalized) Yang-Baxter and group-extension verifiers.
//!
//! A representation of E_(n-1) whose generator images T_i square to -1,
//! far-commute and adjacently anticommute lifts to a unitary representation
//! of the braid group on n strands via `π(b_i) = (1/√2)(1 + T_i)`, with
//! `π(b_i)^(-1) = (1/√2)(1 - T_i)` and `π(b_i)² = T_i`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::columns::{max_product_diff, product_to_dense, OpRef};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::monomial::{MonomialOperator, TwoBandOperator};
use crate::linalg::state::StateVector;
use crate::report::{ReportBuilder, VerificationReport};
use crate::reps::RepSpec;

/// Word in the braid generators b_1, …, b_(n-1) and their inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, e) in &letters {
            if i < 1 || i + 1 > strands {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: strands.saturating_sub(1),
                });
            }
            if e != 1 && e != -1 {
                return Err(Error::BraidWordParse {
                    input: format!("b{i}^{e}"),
                    reason: "exponents must be +1 or -1".into(),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Parse whitespace-separated letters: "b1 b2^-1 b1".
    pub fn parse(strands: usize, input: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            let body = token.strip_prefix('b').ok_or_else(|| Error::BraidWordParse {
                input: input.to_string(),
                reason: format!("letter {token:?} must start with 'b'"),
            })?;
            let (idx_str, exp) = match body.split_once('^') {
                None => (body, 1i8),
                Some((i, "1")) | Some((i, "+1")) => (i, 1),
                Some((i, "-1")) => (i, -1),
                Some((_, e)) => {
                    return Err(Error::BraidWordParse {
                        input: input.to_string(),
                        reason: format!("exponent {e:?} must be 1 or -1"),
                    })
                }
            };
            let idx: usize = idx_str.parse().map_err(|_| Error::BraidWordParse {
                input: input.to_string(),
                reason: format!("bad generator index in {token:?}"),
            })?;
            letters.push((idx, exp));
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(i, e)| (i, -e))
                .collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "b{i}")?;
            } else {
                write!(f, "b{i}^-1")?;
            }
        }
        Ok(())
    }
}

/// A representation of E_(n-1) with its cached generator images, lifted to
/// the braid group on n = m + 1 strands.
#[derive(Debug, Clone)]
pub struct BraidRep {
    spec: RepSpec,
    images: Vec<MonomialOperator>,
}

impl BraidRep {
    pub fn new(spec: RepSpec) -> Result<Self> {
        let images = spec.generators()?;
        Ok(BraidRep { spec, images })
    }

    pub fn spec(&self) -> &RepSpec {
        &self.spec
    }

    pub fn strands(&self) -> usize {
        self.spec.strands()
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    /// Image of the group generator e_i.
    pub fn phi(&self, i: usize) -> Result<&MonomialOperator> {
        self.images
            .get(i.wrapping_sub(1))
            .ok_or(Error::IndexOutOfRange {
                index: i,
                max: self.images.len(),
            })
    }

    /// Image of the braid generator b_i: `(1/√2)(1 + T_i)`; unitary, two
    /// nonzeros per column, and `π(b_i)² = T_i`.
    pub fn braid_generator(&self, i: usize) -> Result<TwoBandOperator> {
        Ok(TwoBandOperator::bell_from(self.phi(i)?.clone()))
    }

    /// Image of b_i^(-1): `(1/√2)(1 - T_i)`.
    pub fn braid_generator_inverse(&self, i: usize) -> Result<TwoBandOperator> {
        Ok(TwoBandOperator::bell_inverse_from(self.phi(i)?.clone()))
    }

    fn letter_op(&self, letter: (usize, i8)) -> Result<TwoBandOperator> {
        if letter.1 == 1 {
            self.braid_generator(letter.0)
        } else {
            self.braid_generator_inverse(letter.0)
        }
    }

    /// Apply a braid word to a state, letters acting in reading order.
    pub fn apply_word(&self, word: &BraidWord, v: &StateVector) -> Result<StateVector> {
        if word.strands() != self.strands() {
            return Err(Error::DimensionMismatch {
                left: word.strands(),
                right: self.strands(),
                context: "braid word strands",
            });
        }
        let mut out = v.clone();
        for &letter in word.letters() {
            out = self.letter_op(letter)?.apply(&out)?;
        }
        Ok(out)
    }

    /// Dense matrix of a braid word (below the cap): the product of letter
    /// images with the first letter leftmost.
    pub fn word_matrix(&self, word: &BraidWord, cap: usize) -> Result<DenseMatrix> {
        let ops: Vec<TwoBandOperator> = word
            .letters()
            .iter()
            .map(|&l| self.letter_op(l))
            .collect::<Result<_>>()?;
        if ops.is_empty() {
            return Ok(DenseMatrix::identity(self.dimension()));
        }
        let refs: Vec<OpRef<'_>> = ops.iter().map(OpRef::from).collect();
        product_to_dense(&refs, cap)
    }
}

/// Check the braid relation, far commutation, unitarity, and the square law
/// `π(b_i)² = T_i` on the full space, streamed column by column.
pub fn verify_braid_relations(rep: &BraidRep, tol: f64) -> Result<VerificationReport> {
    let n = rep.strands();
    if n < 3 {
        return Err(Error::RankTooSmall {
            m: n,
            context: "braid relations need at least 3 strands",
        });
    }
    let m = n - 1;
    let mut report = ReportBuilder::new(
        format!(
            "braid relations for class {} (n={})",
            rep.spec().class_label(),
            n
        ),
        tol,
    );
    for i in 1..=m {
        let ri = rep.braid_generator(i)?;
        let radj = ri.adjoint();
        let stat = max_product_diff(
            &[OpRef::from(&ri), OpRef::from(&radj)],
            &[OpRef::Monomial(&MonomialOperator::identity(rep.dimension()))],
        )?;
        report.check(format!("unitarity: R{i} R{i}^dag = 1"), stat.max_error, stat.witness);

        let stat = max_product_diff(
            &[OpRef::from(&ri), OpRef::from(&ri)],
            &[OpRef::Monomial(rep.phi(i)?)],
        )?;
        report.check(format!("square law: R{i}^2 = T{i}"), stat.max_error, stat.witness);
    }
    for i in 1..m {
        let ri = rep.braid_generator(i)?;
        let rj = rep.braid_generator(i + 1)?;
        let stat = max_product_diff(
            &[OpRef::from(&ri), OpRef::from(&rj), OpRef::from(&ri)],
            &[OpRef::from(&rj), OpRef::from(&ri), OpRef::from(&rj)],
        )?;
        report.check(
            format!("braid relation: R{i} R{} R{i} = R{} R{i} R{}", i + 1, i + 1, i + 1),
            stat.max_error,
            stat.witness,
        );
    }
    for i in 1..=m {
        for j in (i + 2)..=m {
            let ri = rep.braid_generator(i)?;
            let rj = rep.braid_generator(j)?;
            let stat = max_product_diff(
                &[OpRef::from(&ri), OpRef::from(&rj)],
                &[OpRef::from(&rj), OpRef::from(&ri)],
            )?;
            report.check(
                format!("far commutation: R{i} R{j} = R{j} R{i}"),
                stat.max_error,
                stat.witness,
            );
        }
    }
    Ok(report.finish())
}

/// Check the conjugation law relating the braid image to the group image:
/// `π(b_i) T_(i±1) π(b_i)^(-1) = T_i T_(i±1)` and
/// `π(b_i) T_j π(b_i)^(-1) = T_j` for |i - j| >= 2.
pub fn conjugation_check(rep: &BraidRep, tol: f64) -> Result<VerificationReport> {
    let n = rep.strands();
    if n < 3 {
        return Err(Error::RankTooSmall {
            m: n,
            context: "conjugation check needs at least 3 strands",
        });
    }
    let m = n - 1;
    let mut report = ReportBuilder::new(
        format!(
            "braid-conjugation relations for class {} (n={})",
            rep.spec().class_label(),
            n
        ),
        tol,
    );
    for i in 1..=m {
        let ri = rep.braid_generator(i)?;
        let ri_inv = rep.braid_generator_inverse(i)?;
        for j in 1..=m {
            if j == i {
                continue; // b_i commutes with its own square
            }
            let tj = rep.phi(j)?;
            let lhs = [OpRef::from(&ri), OpRef::Monomial(tj), OpRef::from(&ri_inv)];
            if j == i + 1 || j + 1 == i {
                let titj = rep.phi(i)?.compose(tj)?;
                let stat = max_product_diff(&lhs, &[OpRef::Monomial(&titj)])?;
                report.check(
                    format!("conjugation: R{i} T{j} R{i}^-1 = T{i} T{j}"),
                    stat.max_error,
                    stat.witness,
                );
            } else {
                let stat = max_product_diff(&lhs, &[OpRef::Monomial(tj)])?;
                report.check(
                    format!("conjugation fixes distant: R{i} T{j} R{i}^-1 = T{j}"),
                    stat.max_error,
                    stat.witness,
                );
            }
        }
    }
    Ok(report.finish())
}

/// Check the generalized Yang-Baxter equation for the block structure:
/// with Ř = (1/√2)(1 + M) on C^(2^N) and l = 2^k,
/// `(Ř⊗1_l)(1_l⊗Ř)(Ř⊗1_l) = (1_l⊗Ř)(Ř⊗1_l)(1_l⊗Ř)` on C^(2^(N+k)).
/// At N = 2, k = 1 this is the conventional Yang-Baxter equation.
pub fn verify_gybe(big_n: usize, k: usize, tol: f64) -> Result<VerificationReport> {
    if big_n < 2 {
        return Err(Error::InvalidRepSpec {
            reason: format!("generalized YBE needs block exponent N >= 2, got {big_n}"),
        });
    }
    if k < 1 {
        return Err(Error::InvalidRepSpec {
            reason: "generalized YBE needs identity-block exponent k >= 1".into(),
        });
    }
    let m = MonomialOperator::signed_reversal(1 << big_n);
    let id_l = MonomialOperator::identity(1 << k);
    let left = TwoBandOperator::bell_from(m.kron(&id_l));
    let right = TwoBandOperator::bell_from(id_l.kron(&m));
    let mut report = ReportBuilder::new(format!("generalized YBE (N={big_n}, k={k})"), tol);
    let stat = max_product_diff(
        &[OpRef::from(&left), OpRef::from(&right), OpRef::from(&left)],
        &[OpRef::from(&right), OpRef::from(&left), OpRef::from(&right)],
    )?;
    report.check(
        "(R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R)",
        stat.max_error,
        stat.witness,
    );
    Ok(report.finish())
}

fn round_key(m: &DenseMatrix) -> Vec<(i64, i64)> {
    // 1e-9 resolution; image entries are algebraic numbers far from the grid
    // midpoints, so rounding is stable across orderings.
    m.entries()
        .iter()
        .map(|c| ((c.re * 1e9).round() as i64, (c.im * 1e9).round() as i64))
        .collect()
}

/// Count the cosets of the image of the lifted braid group modulo the image
/// of ±E_(n-1), by breadth-first closure over canonical coset fingerprints.
/// For a faithful extension the count is n!.
pub fn coset_count(rep: &BraidRep, cap: usize) -> Result<usize> {
    let m = rep.strands() - 1;
    let dim = rep.dimension();
    if dim > cap {
        return Err(Error::DenseCapExceeded { dim, cap });
    }
    let subgroup: Vec<DenseMatrix> = crate::espgroup::enumerate(m)?
        .iter()
        .map(|g| {
            rep.spec()
                .rep_of_element(g)
                .and_then(|op| op.to_dense_with_cap(cap))
        })
        .collect::<Result<_>>()?;
    let canonical = |x: &DenseMatrix| -> Vec<(i64, i64)> {
        subgroup
            .iter()
            .map(|h| round_key(&h.matmul(x)))
            .min()
            .expect("nonempty subgroup")
    };
    let gens: Vec<DenseMatrix> = (1..=m)
        .map(|i| rep.braid_generator(i)?.to_dense_with_cap(cap))
        .collect::<Result<_>>()?;

    let identity = DenseMatrix::identity(dim);
    let mut seen = BTreeSet::new();
    seen.insert(canonical(&identity));
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.matmul(g);
            if seen.insert(canonical(&y)) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// Test whether a matrix equals ± an image of the group representation
/// (within `tol`); returns the matching group element if so.
pub fn match_group_image(
    rep: &BraidRep,
    candidate: &DenseMatrix,
    tol: f64,
) -> Result<Option<crate::espgroup::GroupElement>> {
    for g in crate::espgroup::enumerate(rep.strands() - 1)? {
        let image = rep.spec().rep_of_element(&g)?;
        // Cheap first-column screen before the full comparison.
        let col0_row = image.target(0);
        let col0_val = image.phase(0);
        if (candidate.get(col0_row, 0) - col0_val).norm() > tol {
            continue;
        }
        let dense = image.to_dense_with_cap(candidate.rows())?;
        if candidate.max_abs_diff(&dense)?.max_error <= tol {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense::DEFAULT_DENSE_CAP;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn class2_rep(m: usize) -> BraidRep {
        BraidRep::new(RepSpec::class2(m, 3, 2).unwrap()).unwrap()
    }

    #[test]
    fn word_parse_and_display_round_trip() {
        let w = BraidWord::parse(4, "b1 b2^-1 b3 b1^-1").unwrap();
        assert_eq!(w.to_string(), "b1 b2^-1 b3 b1^-1");
        assert_eq!(w.letters().len(), 4);
        assert!(BraidWord::parse(3, "b3").is_err()); // needs index <= n-1
        assert!(BraidWord::parse(3, "b1^2").is_err());
        assert!(BraidWord::parse(3, "x1").is_err());
    }

    #[test]
    fn word_inverse_cancels() {
        let rep = class2_rep(3);
        let w = BraidWord::parse(4, "b1 b2^-1 b3").unwrap();
        let winv = w.inverse();
        assert_eq!(winv.to_string(), "b3^-1 b2 b1^-1");
        let v = StateVector::basis(rep.dimension(), 5).unwrap();
        let roundtrip = rep
            .apply_word(&winv, &rep.apply_word(&w, &v).unwrap())
            .unwrap();
        assert!(roundtrip.max_abs_diff(&v).unwrap().max_error <= 1e-13);
    }

    #[test]
    fn empty_word_is_identity() {
        let rep = class2_rep(2);
        let v = StateVector::basis(rep.dimension(), 3).unwrap();
        let out = rep.apply_word(&BraidWord::empty(3), &v).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn strand_mismatch_and_bad_indices_are_errors() {
        let rep = class2_rep(2); // 3 strands
        let v = StateVector::basis(rep.dimension(), 1).unwrap();
        assert!(rep.apply_word(&BraidWord::empty(4), &v).is_err());
        assert!(rep.braid_generator(0).is_err());
        assert!(rep.braid_generator(3).is_err());
        assert!(verify_gybe(1, 1, 1e-12).is_err());
        assert!(verify_gybe(3, 0, 1e-12).is_err());
    }

    #[test]
    fn generator_on_first_basis_vector() {
        // n = 2 strands, one generator: B_8 |Φ_1⟩ = (|Φ_1⟩ - |Φ_8⟩)/√2.
        let rep = BraidRep::new(RepSpec::class2(1, 3, 2).unwrap()).unwrap();
        let w = BraidWord::parse(2, "b1").unwrap();
        let out = rep
            .apply_word(&w, &StateVector::basis(8, 1).unwrap())
            .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amp(1).unwrap().re - s).abs() <= 1e-15);
        assert!((out.amp(8).unwrap().re + s).abs() <= 1e-15);
    }

    #[test]
    fn braid_relations_hold_for_both_classes() {
        for n in 3..=5 {
            let rep = class2_rep(n - 1);
            let report = verify_braid_relations(&rep, 1e-12).unwrap();
            assert!(report.passed, "class 2, n={n}: {report:?}");
        }
        for k in 1..=2 {
            let rep = BraidRep::new(RepSpec::class1(3, k).unwrap()).unwrap();
            let report = verify_braid_relations(&rep, 1e-12).unwrap();
            assert!(report.passed, "class 1, k={k}: {report:?}");
        }
    }

    #[test]
    fn inadmissible_stride_fails_far_commutation_only() {
        // N=4, k=1: adjacent braid relation fine, far commutation broken.
        let rep = BraidRep::new(RepSpec::class2(3, 4, 1).unwrap()).unwrap();
        let report = verify_braid_relations(&rep, 1e-12).unwrap();
        assert!(!report.passed);
        for check in &report.checks {
            if check.name.starts_with("far commutation") {
                assert!(!check.passed, "{}", check.name);
            } else {
                assert!(check.passed, "{}", check.name);
            }
        }
    }

    #[test]
    fn structured_verifier_matches_dense_path() {
        let rep = class2_rep(3);
        let r1 = rep.braid_generator(1).unwrap();
        let r2 = rep.braid_generator(2).unwrap();
        let lhs_dense = r1
            .to_dense()
            .unwrap()
            .matmul(&r2.to_dense().unwrap())
            .matmul(&r1.to_dense().unwrap());
        let rhs_dense = r2
            .to_dense()
            .unwrap()
            .matmul(&r1.to_dense().unwrap())
            .matmul(&r2.to_dense().unwrap());
        let dense_err = lhs_dense.max_abs_diff(&rhs_dense).unwrap().max_error;
        let structured = max_product_diff(
            &[OpRef::from(&r1), OpRef::from(&r2), OpRef::from(&r1)],
            &[OpRef::from(&r2), OpRef::from(&r1), OpRef::from(&r2)],
        )
        .unwrap()
        .max_error;
        assert!((dense_err - structured).abs() <= 1e-15);
    }

    #[test]
    fn gybe_small_cases() {
        for (n, k) in [(2usize, 1usize), (3, 2), (4, 2), (4, 3)] {
            let report = verify_gybe(n, k, 1e-12).unwrap();
            assert!(report.passed, "N={n} k={k}: {report:?}");
        }
        // N=4, k=1: the single braid-relation instance still passes.
        let report = verify_gybe(4, 1, 1e-12).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn conjugation_relations() {
        let rep = class2_rep(2);
        let report = conjugation_check(&rep, 1e-12).unwrap();
        assert!(report.passed, "{report:?}");
        let rep = BraidRep::new(RepSpec::class1(3, 1).unwrap()).unwrap();
        let report = conjugation_check(&rep, 1e-12).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn coset_count_is_n_factorial() {
        for n in 2..=4usize {
            let rep = BraidRep::new(RepSpec::class1(n - 1, 1).unwrap()).unwrap();
            let count = coset_count(&rep, DEFAULT_DENSE_CAP).unwrap();
            let factorial: usize = (1..=n).product();
            assert_eq!(count, factorial, "class 1, n={n}");
        }
        for n in 2..=4usize {
            let rep = class2_rep(n - 1);
            let count = coset_count(&rep, DEFAULT_DENSE_CAP).unwrap();
            let factorial: usize = (1..=n).product();
            assert_eq!(count, factorial, "class 2, n={n}");
        }
    }

    #[test]
    fn conjugated_group_images_stay_in_the_image() {
        // π(w) T_i π(w)^-1 is ± a group image for random words w.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for rep in [
            class2_rep(3),
            BraidRep::new(RepSpec::class1(5, 1).unwrap()).unwrap(),
        ] {
            let n = rep.strands();
            for _ in 0..10 {
                let letters: Vec<(usize, i8)> = (0..6)
                    .map(|_| {
                        (
                            rng.gen_range(1..n),
                            if rng.gen_bool(0.5) { 1 } else { -1 },
                        )
                    })
                    .collect();
                let w = BraidWord::new(n, letters).unwrap();
                let pw = rep.word_matrix(&w, DEFAULT_DENSE_CAP).unwrap();
                let pw_inv = rep.word_matrix(&w.inverse(), DEFAULT_DENSE_CAP).unwrap();
                let i = rng.gen_range(1..n);
                let conj = pw
                    .matmul(&rep.phi(i).unwrap().to_dense().unwrap())
                    .matmul(&pw_inv);
                let matched = match_group_image(&rep, &conj, 1e-9).unwrap();
                assert!(matched.is_some(), "word {w}, generator {i}");
            }
        }
    }

    #[test]
    fn gybe_structured_sweep_matches_dense_products() {
        // Same equality evaluated with dense matrix products.
        for (n, k) in [(2usize, 1usize), (3, 2)] {
            let m = MonomialOperator::signed_reversal(1 << n);
            let id_l = MonomialOperator::identity(1 << k);
            let left = TwoBandOperator::bell_from(m.kron(&id_l)).to_dense().unwrap();
            let right = TwoBandOperator::bell_from(id_l.kron(&m)).to_dense().unwrap();
            let lhs = left.matmul(&right).matmul(&left);
            let rhs = right.matmul(&left).matmul(&right);
            let dense_err = lhs.max_abs_diff(&rhs).unwrap().max_error;
            let structured = verify_gybe(n, k, 1e-12).unwrap().max_error;
            assert!((dense_err - structured).abs() <= 1e-15, "N={n} k={k}");
        }
    }
}
