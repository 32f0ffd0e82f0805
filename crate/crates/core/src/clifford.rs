//! Clifford index and gonality of a smooth curve `C ∈ |L|`.
//!
//! [`min_cliff`] derives the finite candidate set symbolically and minimizes
//! `D.L - D² - 2` over it. [`brute_force_cliff`] reaches the same number by
//! scanning a box of classes against the cohomology ledger; the two routes
//! share only the lattice arithmetic and the ledger.

use std::fmt;

use thiserror::Error;

use crate::lattice::{DivisorClass, SurfaceModel};
use crate::linsys::{h_profile, restriction_profile, CohomologyProfile, CohomologyValue, RestrictionProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("a line bundle contributing a Clifford index needs h0 >= 1, got h0 = {0}")]
    NoSections(i64),
    #[error("degree d = {degree} is outside 2 <= d <= floor((g+3)/2) = {max} for genus g = {genus}")]
    OutOfRange { genus: i64, degree: i64, max: i64 },
    #[error(
        "search box |x| <= {x_bound}, |y| <= {y_bound} is below the safe radius |x| <= {safe_x}, |y| <= {safe_y}"
    )]
    RadiusTooSmall { x_bound: i64, y_bound: i64, safe_x: i64, safe_y: i64 },
    #[error("verification failed at g = {genus}, d = {degree}: {reason}")]
    VerificationFailed { genus: i64, degree: i64, reason: String },
}

impl CliffordError {
    fn verification(surface: &SurfaceModel, reason: impl Into<String>) -> Self {
        CliffordError::VerificationFailed {
            genus: surface.genus(),
            degree: surface.degree(),
            reason: reason.into(),
        }
    }
}

/// Genus 3 is outside the domain of the min-definition; these conventions
/// assign its Clifford index by hyperellipticity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConventionBranch {
    HyperellipticGenus3,
    NonhyperellipticGenus3,
}

impl ConventionBranch {
    pub fn for_surface(surface: &SurfaceModel) -> Option<Self> {
        match (surface.genus(), surface.degree()) {
            (3, 2) => Some(ConventionBranch::HyperellipticGenus3),
            (3, 3) => Some(ConventionBranch::NonhyperellipticGenus3),
            _ => None,
        }
    }

    pub fn clifford_index(self) -> i64 {
        match self {
            ConventionBranch::HyperellipticGenus3 => 0,
            ConventionBranch::NonhyperellipticGenus3 => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConventionBranch::HyperellipticGenus3 => "hyperelliptic-g3",
            ConventionBranch::NonhyperellipticGenus3 => "nonhyperelliptic-g3",
        }
    }
}

impl fmt::Display for ConventionBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Cliff A = deg A - 2(h⁰(A) - 1)`.
pub fn cliff_of_bundle(degree: i64, h0: i64) -> Result<i64, CliffordError> {
    if h0 < 1 {
        return Err(CliffordError::NoSections(h0));
    }
    Ok(degree - 2 * (h0 - 1))
}

/// `Cliff O_C(D)` for a class with `h⁰(D) = h⁰(O_C(D))` and `h¹(D) = 0`,
/// namely `D.L - D² - 2`. Symmetric under `D ↦ L - D`.
pub fn cliff_value(surface: &SurfaceModel, class: &DivisorClass) -> i128 {
    surface.degree_on_curve(class) - surface.self_int(class) - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contribution {
    Yes,
    No,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContributionCheck {
    pub verdict: Contribution,
    pub restriction: RestrictionProfile,
}

/// Whether `O_C(D)` has `h⁰ >= 2` and `h¹ >= 2`, as far as the ledger can tell.
pub fn contributes(surface: &SurfaceModel, class: &DivisorClass) -> ContributionCheck {
    let restriction = restriction_profile(surface, class);
    let certified_below_two = |v: CohomologyValue| v.exact().is_some_and(|n| n < 2);
    let certified_two = |v: CohomologyValue| v.lower_bound().is_some_and(|n| n >= 2);

    let verdict = if certified_below_two(restriction.h0.value) || certified_below_two(restriction.h1.value) {
        Contribution::No
    } else if certified_two(restriction.h0.value) && certified_two(restriction.h1.value) {
        Contribution::Yes
    } else {
        Contribution::Indeterminate
    };
    ContributionCheck { verdict, restriction }
}

fn ensure_in_range(surface: &SurfaceModel) -> Result<(), CliffordError> {
    if surface.within_brill_noether_range() {
        Ok(())
    } else {
        Err(CliffordError::OutOfRange {
            genus: surface.genus(),
            degree: surface.degree(),
            max: (surface.genus() + 3) / 2,
        })
    }
}

/// `h⁰ >= 2` certified and `h¹ = 0` exact.
fn sections_and_vanishing(profile: &CohomologyProfile) -> bool {
    profile.h0.value.lower_bound().is_some_and(|n| n >= 2) && profile.h1.value == CohomologyValue::Exact(0)
}

/// The only classes that can compute the Clifford index.
///
/// A divisor `D` computing it has `D` and `L - D` effective; `E` is nef, so
/// `D.E >= 0` and `(L-D).E >= 0`, which pins `x` to `{0, 1}`. Each branch
/// makes one of `D`, `L - D` a multiple `yE`, and `h¹(yE) = 0` with
/// `h⁰(yE) >= 2` leaves `y = 1`.
pub fn candidate_classes(surface: &SurfaceModel) -> Result<Vec<DivisorClass>, CliffordError> {
    ensure_in_range(surface)?;
    let (l, e) = (DivisorClass::L, DivisorClass::E);

    // D.E = a·x + b·y and (L-D).E = L.E - D.E.
    let a = surface.pair(&l, &e);
    let b = surface.pair(&e, &e);
    if b != 0 || a <= 0 {
        return Err(CliffordError::verification(surface, "E is not an isotropic class meeting L positively"));
    }
    // a·x >= 0 and L.E - a·x >= 0.
    let x_max = surface.pair(&l, &e).div_euclid(a) as i64;
    let x_range = 0..=x_max;

    // 0 <= D.L <= L² bounds the multiple of E in either branch.
    let l2 = surface.self_int(&l);
    let y_max = (l2 / a) as i64;

    let mut candidates = Vec::new();
    for x in x_range {
        for y in 0..=y_max {
            let multiple = y * e;
            if !sections_and_vanishing(&h_profile(surface, &multiple)) {
                continue;
            }
            // x = 0 makes D = yE; otherwise L - D = yE.
            candidates.push(if x == 0 { multiple } else { x * l - multiple });
        }
    }
    Ok(candidates)
}

/// Box radius outside of which no class passes the nefness filter of
/// [`brute_force_cliff`]: survivors have `x ∈ {0, 1}` and `0 <= dy <= 2(g-1)`.
pub fn safe_radius(surface: &SurfaceModel) -> (i64, i64) {
    let l2 = 2 * (surface.genus() - 1);
    let d = surface.degree();
    (2, (l2 + d - 1) / d + 1)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub examined: u64,
    /// Passed `D.E, D.L, (L-D).E, (L-D).L >= 0`.
    pub passed_filter: u64,
    /// Certified to violate `h⁰(D), h⁰(L-D) >= 2` or `h¹(D) = h¹(L-D) = 0`.
    pub excluded: u64,
    /// Survivors whose restriction is certified to contribute.
    pub certified: u64,
    /// Survivors the ledger cannot decide.
    pub indeterminate: u64,
    /// Survivors whose restriction is certified not to contribute.
    pub refuted: u64,
}

impl Census {
    /// Equality on everything except the number of classes examined.
    pub fn same_outcome(&self, other: &Census) -> bool {
        Census { examined: 0, ..*self } == Census { examined: 0, ..*other }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceReport {
    pub x_bound: i64,
    pub y_bound: i64,
    /// The oracle's Clifford index: the enumerated minimum, or the convention
    /// value at genus 3.
    pub minimum: Option<i64>,
    pub enumerated_minimum: Option<i64>,
    pub convention_branch: Option<ConventionBranch>,
    pub survivors: Vec<DivisorClass>,
    pub census: Census,
}

/// Exhaustive scan of `|x| <= x_bound, |y| <= y_bound`.
pub fn brute_force_cliff(surface: &SurfaceModel, x_bound: i64, y_bound: i64) -> Result<BruteForceReport, CliffordError> {
    let (safe_x, safe_y) = safe_radius(surface);
    if x_bound < safe_x || y_bound < safe_y {
        return Err(CliffordError::RadiusTooSmall { x_bound, y_bound, safe_x, safe_y });
    }
    let (l, e) = (DivisorClass::L, DivisorClass::E);

    let mut census = Census::default();
    let mut survivors = Vec::new();
    let mut enumerated_minimum: Option<i64> = None;

    for x in -x_bound..=x_bound {
        for y in -y_bound..=y_bound {
            census.examined += 1;
            let class = DivisorClass::new(x, y);
            let residual = l - class;
            let nef_ok = surface.pair(&class, &e) >= 0
                && surface.pair(&class, &l) >= 0
                && surface.pair(&residual, &e) >= 0
                && surface.pair(&residual, &l) >= 0;
            if !nef_ok {
                continue;
            }
            census.passed_filter += 1;

            let here = h_profile(surface, &class);
            let there = h_profile(surface, &residual);
            let few_sections = |p: &CohomologyProfile| p.h0.value.exact().is_some_and(|n| n < 2);
            let nonvanishing = |p: &CohomologyProfile| p.h1.value.exact().is_some_and(|n| n != 0);
            if few_sections(&here) || few_sections(&there) || nonvanishing(&here) || nonvanishing(&there) {
                census.excluded += 1;
                continue;
            }
            survivors.push(class);

            match contributes(surface, &class).verdict {
                Contribution::Yes => {
                    census.certified += 1;
                    let value = i64::try_from(cliff_value(surface, &class)).expect("Clifford value exceeds i64");
                    enumerated_minimum = Some(enumerated_minimum.map_or(value, |m| m.min(value)));
                }
                Contribution::Indeterminate => census.indeterminate += 1,
                Contribution::No => census.refuted += 1,
            }
        }
    }

    let convention_branch = ConventionBranch::for_surface(surface);
    let minimum = match convention_branch {
        Some(branch) => Some(branch.clifford_index()),
        None if surface.genus() == 3 => None,
        None => enumerated_minimum,
    };

    Ok(BruteForceReport {
        x_bound,
        y_bound,
        minimum,
        enumerated_minimum,
        convention_branch,
        survivors,
        census,
    })
}

/// Both halves of `Cliff C + 2 <= gon C <= deg O_C(E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GonalitySandwich {
    /// Degree of the pencil `O_C(E)`, an upper bound.
    pub pencil_degree: i64,
    pub pencil_sections: CohomologyValue,
    /// `Cliff C + 2`, a lower bound.
    pub lower_from_cliff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCertificate {
    pub genus: i64,
    pub degree_d: i64,
    pub min_cliff: i64,
    pub gonality: i64,
    pub witnesses: Vec<DivisorClass>,
    pub candidate_set: Vec<DivisorClass>,
    pub oracle_agrees: bool,
    pub convention_branch: Option<ConventionBranch>,
    pub assumption_log: Vec<String>,
    pub sandwich: GonalitySandwich,
    pub oracle: BruteForceReport,
    /// The oracle rerun at twice the safe radius.
    pub oracle_doubled: BruteForceReport,
}

const GREEN_LAZARSFELD: &str = "imported: Green-Lazarsfeld: Cliff C is constant on smooth C in |L|, and when it is below \
     floor((g-1)/2) it is computed by O_C(D) for an effective D with h0(D), h0(L-D) >= 2, h1(D) = h1(L-D) = 0 and \
     Cliff = D.L - D^2 - 2";
const IDENTIFICATION: &str = "identification: the line bundle M computing Cliff C is taken to be O_C(D) or O_C(L-D) \
     for the divisor D of the constraint system";
const RESIDUAL_VANISHING: &str = "imported: h1(L-D) = 0 is used only to eliminate multiples yE with y >= 2; \
     h1(L-E) = 0 is not certified on the lattice";
const GENUS_3_CONVENTION: &str = "convention: Cliff C = 0 for hyperelliptic and 1 for non-hyperelliptic curves of \
     genus 3, under which the Green-Lazarsfeld result still holds";

/// Certified Clifford index of a smooth curve in `|L|`.
pub fn min_cliff(surface: &SurfaceModel) -> Result<CliffordCertificate, CliffordError> {
    ensure_in_range(surface)?;
    let (g, d) = (surface.genus(), surface.degree());
    let max_cliff = (g - 1) / 2;

    let candidate_set = candidate_classes(surface)?;
    let values: Vec<i64> = candidate_set
        .iter()
        .map(|c| i64::try_from(cliff_value(surface, c)).expect("Clifford value exceeds i64"))
        .collect();
    let candidate_min = *values
        .iter()
        .min()
        .ok_or_else(|| CliffordError::verification(surface, "empty candidate set"))?;

    let convention_branch = ConventionBranch::for_surface(surface);
    let min = match convention_branch {
        Some(branch) => branch.clifford_index(),
        None => candidate_min,
    };
    if min != d - 2 {
        return Err(CliffordError::verification(surface, format!("minimum {min} differs from d - 2 = {}", d - 2)));
    }
    if !(0..=max_cliff).contains(&min) {
        return Err(CliffordError::verification(
            surface,
            format!("minimum {min} outside 0..=floor((g-1)/2) = {max_cliff}"),
        ));
    }

    let witnesses: Vec<DivisorClass> = candidate_set
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v == min)
        .map(|(c, _)| *c)
        .collect();
    if witnesses.first() != Some(&DivisorClass::E) {
        return Err(CliffordError::verification(surface, "the elliptic pencil does not attain the minimum"));
    }

    let pencil = restriction_profile(surface, &DivisorClass::E);
    if pencil.h0.value != CohomologyValue::Exact(2) || pencil.degree != d as i128 {
        return Err(CliffordError::verification(
            surface,
            format!("O_C(E) is not a pencil of degree d: h0 = {}, degree {}", pencil.h0.value, pencil.degree),
        ));
    }
    let sandwich = GonalitySandwich {
        pencil_degree: d,
        pencil_sections: pencil.h0.value,
        lower_from_cliff: min + 2,
    };
    if sandwich.lower_from_cliff != sandwich.pencil_degree {
        return Err(CliffordError::verification(surface, "gonality bounds do not meet"));
    }
    let gonality = sandwich.pencil_degree;

    let (sx, sy) = safe_radius(surface);
    let oracle = brute_force_cliff(surface, sx, sy)?;
    let oracle_doubled = brute_force_cliff(surface, 2 * sx, 2 * sy)?;
    let oracle_agrees = oracle.minimum == Some(min)
        && oracle.survivors == candidate_set
        && oracle_doubled.minimum == oracle.minimum
        && oracle_doubled.survivors == oracle.survivors
        && oracle_doubled.census.same_outcome(&oracle.census);

    let mut assumption_log: Vec<String> =
        surface.assumptions().iter().map(|a| a.description().to_string()).collect();
    assumption_log.push(GREEN_LAZARSFELD.to_string());
    assumption_log.push(IDENTIFICATION.to_string());
    assumption_log.push(RESIDUAL_VANISHING.to_string());
    assumption_log.push(format!("{}: {}", pencil.h0.rule.tag(), pencil.h0.rule.description()));
    if convention_branch.is_some() {
        assumption_log.push(GENUS_3_CONVENTION.to_string());
    }

    Ok(CliffordCertificate {
        genus: g,
        degree_d: d,
        min_cliff: min,
        gonality,
        witnesses,
        candidate_set,
        oracle_agrees,
        convention_branch,
        assumption_log,
        sandwich,
        oracle,
        oracle_doubled,
    })
}

/// The gonality `d` of a smooth curve in `|L|`.
pub fn gonality(surface: &SurfaceModel) -> Result<i64, CliffordError> {
    min_cliff(surface).map(|cert| cert.gonality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(g: i64, d: i64) -> SurfaceModel {
        SurfaceModel::new(g, d).unwrap()
    }

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    #[test]
    fn bundle_clifford_index() {
        assert_eq!(cliff_of_bundle(4, 2), Ok(2));
        assert_eq!(cliff_of_bundle(0, 1), Ok(0));
        for g in 2..30 {
            // canonical bundle: degree 2g-2, h0 = g
            assert_eq!(cliff_of_bundle(2 * g - 2, g), Ok(0));
        }
        assert_eq!(cliff_of_bundle(3, 0), Err(CliffordError::NoSections(0)));
    }

    #[test]
    fn lattice_clifford_values() {
        let m = s(7, 4);
        assert_eq!(cliff_value(&m, &DivisorClass::E), 2);
        assert_eq!(cliff_value(&m, &c(1, -1)), 2);
        for (g, d) in [(3, 2), (9, 5), (40, 7)] {
            assert_eq!(cliff_value(&s(g, d), &DivisorClass::L), -2);
        }
    }

    #[test]
    fn contribution_verdicts() {
        assert_eq!(contributes(&s(7, 4), &DivisorClass::E).verdict, Contribution::Yes);
        assert_eq!(contributes(&s(7, 4), &DivisorClass::ZERO).verdict, Contribution::No);
        assert_eq!(contributes(&s(12, 3), &DivisorClass::ZERO).verdict, Contribution::No);
    }

    #[test]
    fn double_elliptic_class_is_excluded_by_the_oracle() {
        // O_C(2E) does contribute (h0 >= 3, h1 >= 2), but h1(2E) = 1 rules it
        // out as a divisor computing the Clifford index.
        let m = s(9, 4);
        assert_eq!(contributes(&m, &c(0, 2)).verdict, Contribution::Yes);
        assert_eq!(h_profile(&m, &c(0, 2)).h1.value, CohomologyValue::Exact(1));
        let (sx, sy) = safe_radius(&m);
        let report = brute_force_cliff(&m, sx, sy).unwrap();
        assert!(!report.survivors.contains(&c(0, 2)));
    }

    #[test]
    fn candidate_sets() {
        for (g, d) in [(7, 4), (3, 2), (20, 11)] {
            assert_eq!(candidate_classes(&s(g, d)).unwrap(), vec![c(0, 1), c(1, -1)]);
        }
        assert_eq!(
            candidate_classes(&s(7, 6)),
            Err(CliffordError::OutOfRange { genus: 7, degree: 6, max: 5 })
        );
    }

    #[test]
    fn min_cliff_at_g7_d4() {
        let cert = min_cliff(&s(7, 4)).unwrap();
        assert_eq!(cert.min_cliff, 2);
        assert_eq!(cert.gonality, 4);
        assert_eq!(cert.witnesses, vec![c(0, 1), c(1, -1)]);
        assert!(cert.oracle_agrees);
        assert_eq!(cert.convention_branch, None);
    }

    #[test]
    fn genus_three_conventions() {
        let cert = min_cliff(&s(3, 2)).unwrap();
        assert_eq!(cert.min_cliff, 0);
        assert_eq!(cert.convention_branch, Some(ConventionBranch::HyperellipticGenus3));
        assert_eq!(cert.convention_branch.unwrap().as_str(), "hyperelliptic-g3");
        assert!(cert.oracle_agrees);

        let cert = min_cliff(&s(3, 3)).unwrap();
        assert_eq!(cert.min_cliff, 1);
        assert_eq!(cert.convention_branch.unwrap().as_str(), "nonhyperelliptic-g3");
        assert!(cert.oracle_agrees);
        // The ledger alone cannot certify contribution at (3, 3).
        assert_eq!(cert.oracle.census.certified, 0);
        assert_eq!(cert.oracle.census.indeterminate, 2);
    }

    #[test]
    fn gonality_values() {
        assert_eq!(gonality(&s(10, 6)), Ok(6));
        assert_eq!(gonality(&s(3, 2)), Ok(2));
        assert_eq!(gonality(&s(8, 3)), Ok(3));
    }

    #[test]
    fn brute_force_examples() {
        let r = brute_force_cliff(&s(7, 4), 2, 5).unwrap();
        assert_eq!(r.minimum, Some(2));
        assert_eq!(r.survivors, vec![c(0, 1), c(1, -1)]);

        let r = brute_force_cliff(&s(9, 4), 2, 6).unwrap();
        assert_eq!(r.minimum, Some(2));

        let r = brute_force_cliff(&s(3, 2), 2, 4).unwrap();
        assert_eq!(r.minimum, Some(0));
        assert_eq!(r.convention_branch, Some(ConventionBranch::HyperellipticGenus3));
    }

    #[test]
    fn brute_force_rejects_small_radius() {
        assert_eq!(safe_radius(&s(7, 4)), (2, 4));
        assert!(matches!(
            brute_force_cliff(&s(7, 4), 1, 1),
            Err(CliffordError::RadiusTooSmall { safe_y: 4, .. })
        ));
        assert!(brute_force_cliff(&s(7, 4), 2, 3).is_err());
    }

    #[test]
    fn census_is_stable_at_double_radius() {
        for g in 3..=25 {
            for d in 2..=(g + 3) / 2 {
                let m = s(g, d);
                let (sx, sy) = safe_radius(&m);
                let a = brute_force_cliff(&m, sx, sy).unwrap();
                let b = brute_force_cliff(&m, 2 * sx, 2 * sy).unwrap();
                assert!(a.census.same_outcome(&b.census), "g={g} d={d}");
                assert_eq!(a.survivors, b.survivors);
            }
        }
    }

    #[test]
    fn out_of_range_is_refused() {
        assert!(matches!(min_cliff(&s(10, 7)), Err(CliffordError::OutOfRange { max: 6, .. })));
    }

    proptest! {
        #[test]
        fn cliff_value_is_symmetric_under_residual(
            g in 3i64..500,
            d in 2i64..500,
            x in -100_000i64..100_000,
            y in -100_000i64..100_000,
        ) {
            let m = s(g, d);
            let class = c(x, y);
            prop_assert_eq!(cliff_value(&m, &class), cliff_value(&m, &class.residual()));
        }
    }
}
