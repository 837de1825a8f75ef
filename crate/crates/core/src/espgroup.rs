//! Abstract arithmetic in the (nearly) extraspecial 2-group E_m: normal
//! forms, multiplication, center, commutators, enumeration.
//!
//! E_m is generated by e_1, …, e_m with e_i² = -1, adjacent generators
//! anticommuting and distant ones commuting. Every element has a unique
//! normal form ±e_1^α1 ⋯ e_m^αm, so it is carried as a sign bit plus an
//! exponent bitmask. The group has order 2^(m+1).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Supported generator count (exponents live in a u64 bitmask).
pub const MAX_RANK: usize = 63;

/// Brute-force subroutines (enumeration, commutators) refuse beyond this.
pub const ENUMERATION_CAP: usize = 10;

/// Element of E_m in normal form: `sign · e_1^α1 ⋯ e_m^αm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: usize,
    negative: bool,
    /// Bit i-1 set means e_i appears.
    exps: u64,
}

impl GroupElement {
    pub fn identity(m: usize) -> Result<Self> {
        Self::from_parts(m, false, 0)
    }

    pub fn minus_identity(m: usize) -> Result<Self> {
        Self::from_parts(m, true, 0)
    }

    /// The generator e_i (1-based).
    pub fn generator(m: usize, i: usize) -> Result<Self> {
        if i < 1 || i > m {
            return Err(Error::IndexOutOfRange { index: i, max: m });
        }
        Self::from_parts(m, false, 1u64 << (i - 1))
    }

    pub fn from_parts(m: usize, negative: bool, exps: u64) -> Result<Self> {
        if m > MAX_RANK {
            return Err(Error::RankTooLarge { m, max: MAX_RANK });
        }
        if m < 64 && exps >> m != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - exps.leading_zeros() as usize,
                max: m,
            });
        }
        Ok(GroupElement { m, negative, exps })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exps(&self) -> u64 {
        self.exps
    }

    /// Exponent of e_i (1-based) in the normal form.
    pub fn exponent(&self, i: usize) -> bool {
        i >= 1 && i <= self.m && (self.exps >> (i - 1)) & 1 == 1
    }

    pub fn is_central_sign(&self) -> bool {
        self.exps == 0
    }

    /// Normal-form product. The sign rule: concatenating e^α · e^β and
    /// resorting costs one anticommutation per adjacent pair (β_j, α_{j+1})
    /// and one squaring e_i² = -1 per common exponent, so the accumulated
    /// sign is (-1)^S with S = Σ_j β_j α_{j+1} + Σ_j α_j β_j.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.m != other.m {
            return Err(Error::GroupMismatch {
                left: self.m,
                right: other.m,
            });
        }
        let alpha = self.exps;
        let beta = other.exps;
        let anticommutations = (beta & (alpha >> 1)).count_ones();
        let squarings = (alpha & beta).count_ones();
        let negative =
            self.negative ^ other.negative ^ ((anticommutations + squarings) % 2 == 1);
        Ok(GroupElement {
            m: self.m,
            negative,
            exps: alpha ^ beta,
        })
    }

    /// Inverse: e_i⁻¹ = -e_i, and in general the same exponent word with the
    /// sign adjusted so that a·a⁻¹ = 1.
    pub fn inverse(&self) -> GroupElement {
        let alpha = self.exps;
        let s = (alpha & (alpha >> 1)).count_ones() + alpha.count_ones();
        GroupElement {
            m: self.m,
            negative: self.negative ^ (s % 2 == 1),
            exps: alpha,
        }
    }

    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement> {
        self.multiply(other)?
            .multiply(&self.inverse())?
            .multiply(&other.inverse())
    }

    /// Reinterpret inside E_m' for m' >= m (the inclusion E_m ⊂ E_m').
    pub fn embed(&self, m_new: usize) -> Result<GroupElement> {
        if m_new < self.m {
            return Err(Error::RankTooSmall {
                m: m_new,
                context: "embedding target must not shrink",
            });
        }
        GroupElement::from_parts(m_new, self.negative, self.exps)
    }

    /// Parse the text form: "1", "-1", "e2", "-e1*e3".
    pub fn parse(m: usize, input: &str) -> Result<GroupElement> {
        let s = input.trim();
        let (negative, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r.trim()),
            None => (false, s),
        };
        if rest == "1" {
            return GroupElement::from_parts(m, negative, 0);
        }
        let mut exps = 0u64;
        let mut last = 0usize;
        for part in rest.split('*') {
            let part = part.trim();
            let idx: usize = part
                .strip_prefix('e')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::ElementParse {
                    input: input.to_string(),
                    reason: format!("bad factor {part:?}"),
                })?;
            if idx < 1 || idx > m {
                return Err(Error::ElementParse {
                    input: input.to_string(),
                    reason: format!("index {idx} out of range 1..={m}"),
                });
            }
            if idx <= last {
                return Err(Error::ElementParse {
                    input: input.to_string(),
                    reason: "factors must be strictly increasing (normal form)".into(),
                });
            }
            last = idx;
            exps |= 1u64 << (idx - 1);
        }
        GroupElement::from_parts(m, negative, exps)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.exps == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 1..=self.m {
            if self.exponent(i) {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "e{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// All 2^(m+1) elements in normal-form order.
pub fn enumerate(m: usize) -> Result<Vec<GroupElement>> {
    if m > ENUMERATION_CAP {
        return Err(Error::EnumerationCapExceeded {
            m,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::with_capacity(1 << (m + 1));
    for exps in 0..(1u64 << m) {
        for &negative in &[false, true] {
            out.push(GroupElement { m, negative, exps });
        }
    }
    Ok(out)
}

/// Group order 2^(m+1), cross-checked by exhaustive normal-form enumeration
/// with duplicate detection when m is within the enumeration cap.
pub fn order(m: usize) -> Result<u128> {
    if m < 1 {
        return Err(Error::RankTooSmall {
            m,
            context: "order needs m >= 1",
        });
    }
    if m > MAX_RANK {
        return Err(Error::RankTooLarge { m, max: MAX_RANK });
    }
    let formula = 1u128 << (m + 1);
    if m <= ENUMERATION_CAP {
        let all = enumerate(m)?;
        let closed: BTreeSet<GroupElement> = all
            .iter()
            .flat_map(|a| all.iter().map(move |b| a.multiply(b).expect("same m")))
            .collect();
        debug_assert_eq!(closed.len(), all.len());
        if closed.len() as u128 != formula {
            return Err(Error::EnumerationCapExceeded { m, cap: m });
        }
    }
    Ok(formula)
}

/// Isomorphism class of the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterIso {
    Z2,
    Z2xZ2,
    Z4,
}

impl fmt::Display for CenterIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterIso::Z2 => write!(f, "Z2"),
            CenterIso::Z2xZ2 => write!(f, "Z2xZ2"),
            CenterIso::Z4 => write!(f, "Z4"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CenterDescription {
    pub elements: Vec<GroupElement>,
    pub iso_class: CenterIso,
}

/// The center: {±1} for m even; {±1, ±e_1 e_3 ⋯ e_m} for m odd, isomorphic
/// to Z2×Z2 when (m+1)/2 is even and Z4 when it is odd.
pub fn center(m: usize) -> Result<CenterDescription> {
    if m < 1 {
        return Err(Error::RankTooSmall {
            m,
            context: "center needs m >= 1",
        });
    }
    let one = GroupElement::identity(m)?;
    let minus_one = GroupElement::minus_identity(m)?;
    if m % 2 == 0 {
        return Ok(CenterDescription {
            elements: vec![one, minus_one],
            iso_class: CenterIso::Z2,
        });
    }
    // odd skips: e_1 e_3 ⋯ e_m
    let mut exps = 0u64;
    let mut i = 1;
    while i <= m {
        exps |= 1u64 << (i - 1);
        i += 2;
    }
    let z = GroupElement::from_parts(m, false, exps)?;
    let k = (m + 1) / 2;
    let iso_class = if k % 2 == 0 {
        CenterIso::Z2xZ2
    } else {
        CenterIso::Z4
    };
    Ok(CenterDescription {
        elements: vec![one, minus_one, z, z.multiply(&minus_one)?],
        iso_class,
    })
}

/// Brute-force center over all elements (oracle for `center`).
pub fn center_bruteforce(m: usize) -> Result<Vec<GroupElement>> {
    let all = enumerate(m)?;
    let gens: Vec<GroupElement> = (1..=m)
        .map(|i| GroupElement::generator(m, i))
        .collect::<Result<_>>()?;
    Ok(all
        .into_iter()
        .filter(|a| {
            gens.iter().all(|g| {
                a.multiply(g).expect("same m") == g.multiply(a).expect("same m")
            })
        })
        .collect())
}

/// The set {a b a⁻¹ b⁻¹} over all pairs, by brute force. Equals {±1} for
/// m >= 2 and {1} for the abelian m = 1.
pub fn commutator_subgroup(m: usize) -> Result<Vec<GroupElement>> {
    let all = enumerate(m)?;
    let mut set = BTreeSet::new();
    for a in &all {
        for b in &all {
            set.insert(a.commutator(b)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// Structural checks of the group layer at rank m: enumerated order against
/// the 2^(m+1) formula, center formula against brute force (including the
/// isomorphism-class split), and the commutator subgroup.
pub fn verify_group_structure(m: usize) -> Result<crate::report::VerificationReport> {
    use crate::report::ReportBuilder;
    let mut report = ReportBuilder::new(format!("group structure (m={m})"), 0.0);
    let formula = 1u128 << (m + 1);
    report.check_bool(
        format!("order by enumeration = 2^{}", m + 1),
        order(m)? == formula,
    );

    let described = center(m)?;
    let brute: BTreeSet<GroupElement> = center_bruteforce(m)?.into_iter().collect();
    let listed: BTreeSet<GroupElement> = described.elements.iter().copied().collect();
    report.check_bool("center formula matches brute force", listed == brute);

    let has_order_4 = described.elements.iter().any(|z| {
        z.multiply(z).map(|sq| sq == GroupElement::minus_identity(m).unwrap())
            .unwrap_or(false)
    });
    let iso_consistent = match described.iso_class {
        CenterIso::Z2 => described.elements.len() == 2,
        CenterIso::Z2xZ2 => described.elements.len() == 4 && !has_order_4,
        CenterIso::Z4 => described.elements.len() == 4 && has_order_4,
    };
    report.check_bool(
        format!("center iso class {} matches element orders", described.iso_class),
        iso_consistent,
    );

    if m >= 2 {
        let commutators = commutator_subgroup(m)?;
        report.check_bool(
            "commutator subgroup = {±1}",
            commutators
                == vec![
                    GroupElement::identity(m)?,
                    GroupElement::minus_identity(m)?,
                ],
        );
    }
    Ok(report.finish())
}
