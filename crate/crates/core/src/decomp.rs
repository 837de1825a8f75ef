//! Decomposition of the lifted braid representations into irreducible
//! constituents, verified two independent ways: character arithmetic over
//! the finite group, and the dimension of the commutant (= Σ multiplicity²)
//! computed as the nullity of the stacked intertwiner system.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::espgroup::{enumerate, GroupElement};
use crate::linalg::dense::DenseMatrix;
use crate::report::{ReportBuilder, VerificationReport};
use crate::reps::RepSpec;

/// Default cap on the representation dimension for the commutant solver.
pub const COMMUTANT_DIM_CAP: usize = 64;

/// Trace of the image of a group element.
pub fn character(rep: &RepSpec, g: &GroupElement) -> Result<Complex64> {
    Ok(rep.rep_of_element(g)?.trace())
}

/// Check that the character vanishes on every element outside {±1}
/// (every such image is a fixed-point-free monomial).
pub fn noncentral_characters_vanish(rep: &RepSpec, tol: f64) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new(
        format!(
            "characters vanish off ±1, class {} (m={})",
            rep.class_label(),
            rep.m()
        ),
        tol,
    );
    let mut worst = 0.0f64;
    let mut worst_name = String::from("none");
    for g in enumerate(rep.m())? {
        if g.is_central_sign() {
            continue;
        }
        let chi = character(rep, &g)?;
        if chi.norm() > worst {
            worst = chi.norm();
            worst_name = g.to_string();
        }
    }
    report.check(format!("max |χ(g)| over g ∉ {{±1}} (worst at {worst_name})"), worst, None);
    Ok(report.finish())
}

/// Multiplicity of the unique 2^(m/2)-dimensional irreducible representation
/// in φ, for even m, via the character inner product over all 2^(m+1) group
/// elements; its character is supported on ±1 with values ±2^(m/2).
/// Equals dim(φ)/2^(m/2).
pub fn multiplicity_rho1(rep: &RepSpec) -> Result<usize> {
    let m = rep.m();
    if m % 2 != 0 {
        return Err(Error::OddRankCharacterCount { m });
    }
    let chi_irrep = 2.0f64.powi(m as i32 / 2);
    let group_order = 2.0f64.powi(m as i32 + 1);
    let mut sum = Complex64::new(0.0, 0.0);
    for g in enumerate(m)? {
        let chi = character(rep, &g)?;
        let chi_rho = if !g.is_central_sign() {
            0.0
        } else if g.is_negative() {
            -chi_irrep
        } else {
            chi_irrep
        };
        sum += chi * chi_rho; // the irrep character is real
    }
    let value = sum / group_order;
    let rounded = value.re.round();
    if (value - Complex64::new(rounded, 0.0)).norm() > 1e-9 || rounded < 0.0 {
        return Err(Error::InvalidRepSpec {
            reason: format!("character inner product {value} is not a nonnegative integer"),
        });
    }
    Ok(rounded as usize)
}

/// Rank of a dense complex matrix by Householder QR with column pivoting;
/// pivot magnitudes below `rel_tol` times the largest are treated as zero.
pub fn matrix_rank(a: &DenseMatrix, rel_tol: f64) -> usize {
    let rows = a.rows();
    let cols = a.cols();
    let mut work: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a.get(i, j)).collect())
        .collect();
    let steps = rows.min(cols);
    let mut rank = 0usize;
    let mut largest_pivot = 0.0f64;
    for step in 0..steps {
        // Pivot on the column with the largest remaining norm.
        let (pivot_col, pivot_norm) = (step..cols)
            .map(|j| {
                let norm = work[j][step..].iter().map(|c| c.norm_sqr()).sum::<f64>();
                (j, norm.sqrt())
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty column range");
        if step == 0 {
            largest_pivot = pivot_norm;
        }
        if pivot_norm <= rel_tol * largest_pivot || pivot_norm == 0.0 {
            break;
        }
        work.swap(step, pivot_col);
        rank += 1;

        // Householder vector for the pivot column.
        let x0 = work[step][step];
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-pivot_norm, 0.0)
        } else {
            -x0 / x0.norm() * pivot_norm
        };
        let mut v: Vec<Complex64> = work[step][step..].to_vec();
        v[0] -= alpha;
        let v_norm_sqr: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if v_norm_sqr == 0.0 {
            continue;
        }
        for col in work.iter_mut().skip(step) {
            let tail = &mut col[step..];
            let dot: Complex64 = v
                .iter()
                .zip(tail.iter())
                .map(|(vi, ci)| vi.conj() * ci)
                .sum();
            let factor = 2.0 * dot / v_norm_sqr;
            for (ci, vi) in tail.iter_mut().zip(v.iter()) {
                *ci -= factor * vi;
            }
        }
    }
    rank
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Dimension of {A : A T_i = T_i A for every generator image T_i}, the
/// nullity of the stacked linear system over the d² unknown entries of A.
///
/// Every equation couples exactly two unknowns (the images are monomial), so
/// the system splits into independent blocks along the orbit structure; the
/// nullity is summed per block from a rank-revealing QR with relative
/// threshold 1e-8.
pub fn commutant_dimension(rep: &RepSpec, cap: usize) -> Result<usize> {
    let d = rep.dimension();
    if d > cap {
        return Err(Error::DenseCapExceeded { dim: d, cap });
    }
    let gens = rep.generators()?;

    // Unknown A[r, c] is node r·d + c. The intertwiner equation set for a
    // generator with column map t and phases ph reads, entry by entry:
    //   ph[c] · A[r, t[c]] - ph[tinv[r]] · A[tinv[r], c] = 0.
    let mut uf = UnionFind::new(d * d);
    let inverses: Vec<_> = gens.iter().map(|g| g.inverse()).collect();
    for (g, ginv) in gens.iter().zip(&inverses) {
        for r in 0..d {
            let rinv = ginv.target(r);
            for c in 0..d {
                uf.union(r * d + g.target(c), rinv * d + c);
            }
        }
    }

    // Bucket unknowns by component.
    let mut members: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for node in 0..d * d {
        members.entry(uf.find(node)).or_default().push(node);
    }
    let mut local_index = vec![usize::MAX; d * d];
    for comp in members.values() {
        for (idx, &node) in comp.iter().enumerate() {
            local_index[node] = idx;
        }
    }

    // Bucket equations by the component of their (shared) unknowns.
    type Row = Vec<(usize, Complex64)>;
    let mut equations: std::collections::BTreeMap<usize, Vec<Row>> = Default::default();
    for (g, ginv) in gens.iter().zip(&inverses) {
        for r in 0..d {
            let rinv = ginv.target(r);
            let ph_rinv = g.phase(rinv);
            for c in 0..d {
                let u1 = r * d + g.target(c);
                let u2 = rinv * d + c;
                let root = uf.find(u1);
                debug_assert_eq!(root, uf.find(u2));
                let row: Row = vec![(local_index[u1], g.phase(c)), (local_index[u2], -ph_rinv)];
                equations.entry(root).or_default().push(row);
            }
        }
    }

    let mut nullity = 0usize;
    for (root, comp) in &members {
        let vars = comp.len();
        let rows = equations.get(root).map(|e| e.len()).unwrap_or(0);
        if rows == 0 {
            nullity += vars;
            continue;
        }
        let mut block = DenseMatrix::zeros(rows, vars);
        for (i, row) in equations[root].iter().enumerate() {
            for &(j, coeff) in row {
                block.set(i, j, block.get(i, j) + coeff);
            }
        }
        nullity += vars - matrix_rank(&block, 1e-8);
    }
    Ok(nullity)
}

/// Predicted decomposition data for the braid lift of a representation of
/// E_(n-1) on n = m + 1 strands: for n odd the representation splits into
/// `multiplicity` copies of one 2^((n-1)/2)-dimensional extension (commutant
/// dimension multiplicity²); for n even into `multiplicity` copies of a sum
/// of two inequivalent 2^((n-2)/2)-dimensional extensions (commutant
/// dimension 2·multiplicity²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionPrediction {
    pub strands: usize,
    pub dimension: usize,
    pub odd_strands: bool,
    pub multiplicity: usize,
    pub commutant: usize,
}

impl DecompositionPrediction {
    pub fn for_spec(rep: &RepSpec) -> Self {
        let n = rep.strands();
        let dimension = rep.dimension();
        let odd_strands = n % 2 == 1;
        let divisor = if odd_strands {
            1usize << ((n - 1) / 2)
        } else {
            1usize << (n / 2)
        };
        let multiplicity = dimension / divisor;
        let commutant = if odd_strands {
            multiplicity * multiplicity
        } else {
            2 * multiplicity * multiplicity
        };
        DecompositionPrediction {
            strands: n,
            dimension,
            odd_strands,
            multiplicity,
            commutant,
        }
    }

    /// The closed form of the multiplicity: k^n·2^((n+1)/2) (class 1) or
    /// 2^(N+k(n-2)-(n-1)/2) (class 2) for odd n, and the analogous
    /// expressions with the even divisor for even n.
    pub fn closed_form_multiplicity(rep: &RepSpec) -> usize {
        let n = rep.strands();
        match rep {
            RepSpec::Class1 { k, .. } => {
                let base = k.pow(n as u32);
                if n % 2 == 1 {
                    base * (1usize << ((n + 1) / 2))
                } else {
                    base * (1usize << (n / 2))
                }
            }
            RepSpec::Class2 { n: block, k, .. } => {
                let exponent = block + k * (n - 2)
                    - if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
                1usize << exponent
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn character_of_central_elements() {
        let rep = RepSpec::class2(2, 3, 2).unwrap();
        let dim = rep.dimension() as f64;
        let one = GroupElement::identity(2).unwrap();
        let minus = GroupElement::minus_identity(2).unwrap();
        assert_eq!(character(&rep, &one).unwrap(), Complex64::new(dim, 0.0));
        assert_eq!(character(&rep, &minus).unwrap(), Complex64::new(-dim, 0.0));
    }

    #[test]
    fn character_of_generator_vanishes() {
        let rep = RepSpec::class2(2, 3, 2).unwrap();
        let e1 = GroupElement::generator(2, 1).unwrap();
        assert_eq!(character(&rep, &e1).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn characters_vanish_off_center_exhaustively() {
        for m in 1..=6 {
            let rep = RepSpec::class1(m, 1).unwrap();
            let report = noncentral_characters_vanish(&rep, 1e-12).unwrap();
            assert!(report.passed, "class 1, m={m}");
        }
        for m in 1..=4 {
            let rep = RepSpec::class2(m, 3, 2).unwrap();
            let report = noncentral_characters_vanish(&rep, 1e-12).unwrap();
            assert!(report.passed, "class 2, m={m}");
        }
    }

    #[test]
    fn multiplicity_matches_dimension_ratio() {
        // class 1, k=1, n=3 (m=2, dim 8): multiplicity 4.
        let rep = RepSpec::class1(2, 1).unwrap();
        assert_eq!(multiplicity_rho1(&rep).unwrap(), 4);
        // class 2, N=3, k=2, n=3 (m=2, dim 32): multiplicity 16.
        let rep = RepSpec::class2(2, 3, 2).unwrap();
        assert_eq!(multiplicity_rho1(&rep).unwrap(), 16);
        // odd m is a domain error directing to the commutant.
        let rep = RepSpec::class1(3, 1).unwrap();
        assert!(matches!(
            multiplicity_rho1(&rep),
            Err(Error::OddRankCharacterCount { m: 3 })
        ));
    }

    #[test]
    fn rank_of_simple_matrices() {
        let id = DenseMatrix::identity(4);
        assert_eq!(matrix_rank(&id, 1e-8), 4);
        let zero = DenseMatrix::zeros(3, 5);
        assert_eq!(matrix_rank(&zero, 1e-8), 0);
        // Rank-1 outer product.
        let mut m = DenseMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, Complex64::new((i + 1) as f64 * (j + 1) as f64, 0.0));
            }
        }
        assert_eq!(matrix_rank(&m, 1e-8), 1);
    }

    #[test]
    fn commutant_dimension_odd_strands() {
        // n=3: multiplicity² per the single-constituent split.
        let rep = RepSpec::class1(2, 1).unwrap();
        assert_eq!(commutant_dimension(&rep, COMMUTANT_DIM_CAP).unwrap(), 16);
        let pred = DecompositionPrediction::for_spec(&rep);
        assert_eq!(pred.multiplicity, 4);
        assert_eq!(pred.commutant, 16);
    }

    #[test]
    fn commutant_dimension_even_strands() {
        // n=4 (m=3, dim 16): 2·(dᵉ)² = 2·16 = 32.
        let rep = RepSpec::class1(3, 1).unwrap();
        assert_eq!(commutant_dimension(&rep, COMMUTANT_DIM_CAP).unwrap(), 32);
        let pred = DecompositionPrediction::for_spec(&rep);
        assert_eq!(pred.multiplicity, 4);
        assert_eq!(pred.commutant, 32);
    }

    #[test]
    fn commutant_cap_is_enforced() {
        let rep = RepSpec::class2(3, 3, 2).unwrap(); // dim 128
        assert!(matches!(
            commutant_dimension(&rep, COMMUTANT_DIM_CAP),
            Err(Error::DenseCapExceeded { dim: 128, cap: 64 })
        ));
    }

    #[test]
    fn commutant_matches_bruteforce_nullspace_small() {
        // Independent oracle: assemble the full stacked system densely and
        // take d² - rank.
        for rep in [RepSpec::class1(2, 1).unwrap(), RepSpec::class2(2, 2, 1).unwrap()] {
            let d = rep.dimension();
            let gens = rep.generators().unwrap();
            let mut rows = Vec::new();
            for g in &gens {
                let gd = g.to_dense().unwrap();
                // A G - G A = 0, coefficients over A entries.
                for i in 0..d {
                    for j in 0..d {
                        let mut row = vec![Complex64::new(0.0, 0.0); d * d];
                        for s in 0..d {
                            // (A G)[i,j] = Σ_s A[i,s] G[s,j]
                            row[i * d + s] += gd.get(s, j);
                            // (G A)[i,j] = Σ_s G[i,s] A[s,j]
                            row[s * d + j] -= gd.get(i, s);
                        }
                        rows.push(row);
                    }
                }
            }
            let mut system = DenseMatrix::zeros(rows.len(), d * d);
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    system.set(i, j, v);
                }
            }
            let brute = d * d - matrix_rank(&system, 1e-8);
            let fast = commutant_dimension(&rep, COMMUTANT_DIM_CAP).unwrap();
            assert_eq!(brute, fast, "{rep:?}");
        }
    }

    #[test]
    fn closed_form_multiplicities() {
        // class 1, n=3: k^3·2² → k=1: 4, k=2: 32.
        assert_eq!(
            DecompositionPrediction::closed_form_multiplicity(&RepSpec::class1(2, 1).unwrap()),
            4
        );
        assert_eq!(
            DecompositionPrediction::closed_form_multiplicity(&RepSpec::class1(2, 2).unwrap()),
            32
        );
        // class 2, N=3, k=2, n=3: 2^(3+2-1) = 16.
        assert_eq!(
            DecompositionPrediction::closed_form_multiplicity(
                &RepSpec::class2(2, 3, 2).unwrap()
            ),
            16
        );
        // Closed forms agree with the dimension ratios.
        for rep in [
            RepSpec::class1(2, 1).unwrap(),
            RepSpec::class1(2, 2).unwrap(),
            RepSpec::class1(3, 1).unwrap(),
            RepSpec::class2(2, 3, 2).unwrap(),
            RepSpec::class2(3, 2, 1).unwrap(),
        ] {
            assert_eq!(
                DecompositionPrediction::for_spec(&rep).multiplicity,
                DecompositionPrediction::closed_form_multiplicity(&rep),
                "{rep:?}"
            );
        }
    }

    #[test]
    fn multiplicity_times_irrep_dim_is_total_dim() {
        for rep in [
            RepSpec::class1(2, 1).unwrap(),
            RepSpec::class1(2, 2).unwrap(),
            RepSpec::class1(4, 1).unwrap(),
            RepSpec::class2(2, 3, 2).unwrap(),
            RepSpec::class2(4, 2, 1).unwrap(),
        ] {
            let m = rep.m();
            let mult = multiplicity_rho1(&rep).unwrap();
            assert_eq!(mult << (m / 2), rep.dimension(), "{rep:?}");
        }
    }
}
