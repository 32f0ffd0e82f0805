//! Linear systems on the lattice: (-2)-classes, isotropic classes, nefness and
//! base-point-freeness of `L`, and a cohomology ledger.
//!
//! The ledger never guesses. Every value is `Exact`, a lower bound, or
//! `Unknown`, and carries the [`Rule`] that produced it. Downstream code may
//! only act on what the ledger certifies.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::lattice::{DivisorClass, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinsysError {
    #[error("the zero class has no effective side")]
    ZeroClass,
}

/// Every class `B` with `B² = -2`.
///
/// `B² = 2x((g-1)x + dy) = -2` forces `x · ((g-1)x + dy) = -1`, so `x = ±1`
/// and `dy = -gx`. Solutions exist iff `d | g`.
pub fn root_classes(surface: &SurfaceModel) -> Vec<DivisorClass> {
    let g = surface.genus();
    let d = surface.degree();
    let mut roots = Vec::with_capacity(2);
    // x runs over the divisors of -1.
    for x in [1i64, -1] {
        let cofactor = -1 / x;
        let rhs = cofactor - (g - 1) * x;
        if rhs % d == 0 {
            roots.push(DivisorClass::new(x, rhs / d));
        }
    }
    roots
}

/// Primitive generators of the two isotropic rays, `E` first.
///
/// `B² = 0` means `x = 0` or `(g-1)x = -dy`; the second branch is spanned by
/// `(d/h, -(g-1)/h)` with `h = gcd(g-1, d)`. Every isotropic class is an
/// integer multiple of one of the two returned classes.
pub fn isotropic_rays(surface: &SurfaceModel) -> [DivisorClass; 2] {
    let g1 = surface.genus() - 1;
    let d = surface.degree();
    let h = g1.gcd(&d);
    [DivisorClass::E, DivisorClass::new(d / h, -g1 / h)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `D` is effective.
    Positive,
    /// `-D` is effective.
    Negative,
    Unknown,
}

/// Decides which of `±D` is effective, when Riemann–Roch forces one of them.
///
/// If `D² >= -2` then `χ(D) >= 1`, so `h⁰(D) + h⁰(-D) >= 1`; the effective side
/// is the one meeting the nef and big class `L` positively.
pub fn effective_side(surface: &SurfaceModel, class: &DivisorClass) -> Result<Side, LinsysError> {
    if class.is_zero() {
        return Err(LinsysError::ZeroClass);
    }
    if surface.self_int(class) < -2 {
        return Ok(Side::Unknown);
    }
    Ok(match surface.degree_on_curve(class).signum() {
        1 => Side::Positive,
        -1 => Side::Negative,
        _ => Side::Unknown,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEvidence {
    pub root: DivisorClass,
    pub side: Side,
    pub pairing_with_l: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCertificate {
    pub verdict: Verdict,
    /// `L²`, positive so that `L` lies in the positive cone.
    pub l_squared: i128,
    pub evidence: Vec<RootEvidence>,
}

impl NefCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Checks `L.B >= 0` for every effective (-2)-class `B`.
pub fn check_l_nef(surface: &SurfaceModel) -> NefCertificate {
    let l_squared = surface.self_int(&DivisorClass::L);
    let mut verdict = if l_squared > 0 { Verdict::Holds } else { Verdict::Fails };
    let mut evidence = Vec::new();
    for root in root_classes(surface) {
        let side = effective_side(surface, &root).expect("roots are nonzero");
        let pairing_with_l = surface.degree_on_curve(&root);
        match side {
            Side::Positive if pairing_with_l < 0 => verdict = Verdict::Fails,
            Side::Positive | Side::Negative => {}
            Side::Unknown => {
                if verdict == Verdict::Holds {
                    verdict = Verdict::Undecided;
                }
            }
        }
        evidence.push(RootEvidence { root, side, pairing_with_l });
    }
    NefCertificate { verdict, l_squared, evidence }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpfCertificate {
    pub holds: bool,
    /// Classes with `B² = 0` and `B.L = 1`.
    pub obstructions: Vec<DivisorClass>,
    pub method: &'static str,
}

/// Solves `B² = 0 ∧ B.L = 1` exactly.
///
/// An isotropic `B` is `t·R` for a primitive ray generator `R`, so the system
/// reduces to `t · (R.L) = 1` on each ray.
pub fn check_l_bpf(surface: &SurfaceModel) -> BpfCertificate {
    let mut obstructions = Vec::new();
    for ray in isotropic_rays(surface) {
        let m = surface.degree_on_curve(&ray);
        if m == 1 || m == -1 {
            obstructions.push((m as i64) * ray);
        }
    }
    BpfCertificate {
        holds: obstructions.is_empty(),
        obstructions,
        method: "exact-diophantine",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CohomologyValue {
    Exact(u64),
    AtLeast(u64),
    Unknown,
}

impl CohomologyValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            CohomologyValue::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn lower_bound(self) -> Option<u64> {
        match self {
            CohomologyValue::Exact(n) | CohomologyValue::AtLeast(n) => Some(n),
            CohomologyValue::Unknown => None,
        }
    }

    fn at_least_nonneg(n: i128) -> Self {
        CohomologyValue::AtLeast(u64::try_from(n.max(0)).expect("cohomology bound exceeds u64"))
    }

    fn exact_nonneg(n: i128) -> Self {
        CohomologyValue::Exact(u64::try_from(n).expect("negative or oversized cohomology value"))
    }
}

impl fmt::Display for CohomologyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyValue::Exact(n) => write!(f, "{n}"),
            CohomologyValue::AtLeast(n) => write!(f, ">={n}"),
            CohomologyValue::Unknown => f.write_str("?"),
        }
    }
}

/// Provenance of a ledger value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    StructureSheaf,
    EllipticMultiple,
    PolarizationVanishing,
    ResidualOfElliptic,
    EffectiveVanishing,
    RiemannRochBound,
    EulerCharacteristic,
    NotEffective,
    SerreDual,
    RestrictionSequence,
    EllipticPencil,
    Unresolved,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::StructureSheaf => "structure-sheaf",
            Rule::EllipticMultiple => "elliptic-multiple",
            Rule::PolarizationVanishing => "polarization-vanishing",
            Rule::ResidualOfElliptic => "residual-of-elliptic",
            Rule::EffectiveVanishing => "effective-vanishing",
            Rule::RiemannRochBound => "riemann-roch-bound",
            Rule::EulerCharacteristic => "euler-characteristic",
            Rule::NotEffective => "not-effective",
            Rule::SerreDual => "serre-dual",
            Rule::RestrictionSequence => "restriction-sequence",
            Rule::EllipticPencil => "elliptic-pencil",
            Rule::Unresolved => "unresolved",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::StructureSheaf => "h^i(O_S) = 1, 0, 1 on a K3 surface",
            Rule::EllipticMultiple => "h1(yE) = y - 1 for y >= 1",
            Rule::PolarizationVanishing => {
                "imported standard fact: h1(L) = h2(L) = 0 for L nef and big on a K3 surface"
            }
            Rule::ResidualOfElliptic => {
                "h0(L-E) >= 1 from chi(L-E) >= 1 and (E-L).L < 0, >= 2 when g >= 4, and >= chi since h2 = 0"
            }
            Rule::EffectiveVanishing => "h2(D) = h0(-D) = 0 for D effective and nonzero",
            Rule::RiemannRochBound => "h0(D) >= max(chi(D), 1) for D effective with h2(D) = 0",
            Rule::EulerCharacteristic => "forced by h0 - h1 + h2 = chi",
            Rule::NotEffective => "h0(D) = 0 because -D is effective and nonzero",
            Rule::SerreDual => "h^i(D) = h^(2-i)(-D)",
            Rule::RestrictionSequence => "long exact sequence of 0 -> O_S(D-L) -> O_S(D) -> O_C(D) -> 0",
            Rule::EllipticPencil => {
                "imported: h0(O_C(E)) = h0(E) = 2, the equality case of the Green-Lazarsfeld consequence"
            }
            Rule::Unresolved => "no applicable rule",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A ledger value together with the rule that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derivation {
    pub value: CohomologyValue,
    pub rule: Rule,
}

impl Derivation {
    pub fn new(value: CohomologyValue, rule: Rule) -> Self {
        Derivation { value, rule }
    }

    pub fn unknown() -> Self {
        Derivation::new(CohomologyValue::Unknown, Rule::Unresolved)
    }

    fn dualized(self) -> Self {
        match self.value {
            CohomologyValue::Unknown => Derivation::unknown(),
            value => Derivation::new(value, Rule::SerreDual),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.value, self.rule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub h0: Derivation,
    pub h1: Derivation,
    pub h2: Derivation,
}

impl CohomologyProfile {
    pub fn values(&self) -> [CohomologyValue; 3] {
        [self.h0.value, self.h1.value, self.h2.value]
    }

    /// `h0 - h1 + h2` when all three are exact.
    pub fn euler_characteristic(&self) -> Option<i128> {
        let [a, b, c] = self.values().map(|v| v.exact().map(i128::from));
        Some(a? - b? + c?)
    }
}

/// The cohomology ledger of `O_S(D)`.
pub fn h_profile(surface: &SurfaceModel, class: &DivisorClass) -> CohomologyProfile {
    use CohomologyValue::*;

    if class.is_zero() {
        let r = |n| Derivation::new(Exact(n), Rule::StructureSheaf);
        return CohomologyProfile { h0: r(1), h1: r(0), h2: r(1) };
    }
    if class.x == 0 && class.y >= 1 {
        let y = class.y as u64;
        return CohomologyProfile {
            h0: Derivation::new(Exact(y + 1), Rule::EulerCharacteristic),
            h1: Derivation::new(Exact(y - 1), Rule::EllipticMultiple),
            h2: Derivation::new(Exact(0), Rule::EffectiveVanishing),
        };
    }
    if *class == DivisorClass::L {
        let chi = surface.chi(class);
        return CohomologyProfile {
            h0: Derivation::new(CohomologyValue::exact_nonneg(chi), Rule::EulerCharacteristic),
            h1: Derivation::new(Exact(0), Rule::PolarizationVanishing),
            h2: Derivation::new(Exact(0), Rule::PolarizationVanishing),
        };
    }

    match effective_side(surface, class).expect("zero class handled above") {
        Side::Negative => {
            let dual = h_profile(surface, &-*class);
            CohomologyProfile {
                h0: Derivation::new(Exact(0), Rule::NotEffective),
                h1: dual.h1.dualized(),
                h2: dual.h0.dualized(),
            }
        }
        Side::Positive => {
            let chi = surface.chi(class);
            let h2 = Derivation::new(Exact(0), Rule::EffectiveVanishing);
            let h0 = if *class == DivisorClass::L - DivisorClass::E {
                let floor = if surface.genus() >= 4 && surface.within_brill_noether_range() { 2 } else { 1 };
                Derivation::new(CohomologyValue::at_least_nonneg(chi.max(floor)), Rule::ResidualOfElliptic)
            } else {
                Derivation::new(CohomologyValue::at_least_nonneg(chi.max(1)), Rule::RiemannRochBound)
            };
            CohomologyProfile { h0, h1: Derivation::unknown(), h2 }
        }
        Side::Unknown => CohomologyProfile {
            h0: Derivation::unknown(),
            h1: Derivation::unknown(),
            h2: Derivation::unknown(),
        },
    }
}

/// Cohomology of `O_C(D)` for a smooth curve `C ∈ |L|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictionProfile {
    pub h0: Derivation,
    pub h1: Derivation,
    pub degree: i128,
}

/// Runs the long exact sequence of `0 → O_S(D-L) → O_S(D) → O_C(D) → 0`.
///
/// `h⁰(O_C(D)) >= h⁰(D) - h⁰(D-L)`, with equality when `h¹(D-L) = 0`.
/// The tail `H¹(D) → H¹(O_C(D)) → H²(D-L) → H²(D) → 0` gives
/// `h¹(O_C(D)) >= h²(D-L) - h²(D)`, with equality when `h¹(D) = 0`.
pub fn restriction_profile(surface: &SurfaceModel, class: &DivisorClass) -> RestrictionProfile {
    use CohomologyValue::*;

    let degree = surface.degree_on_curve(class);
    let on_surface = h_profile(surface, class);
    let twisted = h_profile(surface, &(*class - DivisorClass::L));

    let h0 = match (on_surface.h0.value, twisted.h0.value, twisted.h1.value) {
        (Exact(a), Exact(0), Exact(0)) => Exact(a),
        (v, Exact(b), _) => match v.lower_bound() {
            Some(a) => AtLeast(a.saturating_sub(b)),
            None => Unknown,
        },
        _ => Unknown,
    };
    let mut h0 = match h0 {
        Unknown => Derivation::unknown(),
        v => Derivation::new(v, Rule::RestrictionSequence),
    };
    if *class == DivisorClass::E && surface.within_brill_noether_range() {
        debug_assert!(h0.value.lower_bound().is_some_and(|n| n <= 2));
        h0 = Derivation::new(Exact(2), Rule::EllipticPencil);
    }

    let h1 = match (on_surface.h1.value, twisted.h2.value, on_surface.h2.value) {
        (Exact(0), Exact(a), Exact(b)) => Exact(a.checked_sub(b).expect("H2(D-L) -> H2(D) is onto")),
        (_, v, Exact(b)) => match v.lower_bound() {
            Some(a) => AtLeast(a.saturating_sub(b)),
            None => Unknown,
        },
        _ => Unknown,
    };
    let h1 = match h1 {
        Unknown => Derivation::unknown(),
        v => Derivation::new(v, Rule::RestrictionSequence),
    };

    RestrictionProfile { h0, h1, degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceModel;
    use CohomologyValue::*;

    fn s(g: i64, d: i64) -> SurfaceModel {
        SurfaceModel::new(g, d).unwrap()
    }

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    /// All classes in the box `|x|, |y| <= r` satisfying `pred`.
    fn box_scan(r: i64, mut pred: impl FnMut(DivisorClass) -> bool) -> Vec<DivisorClass> {
        let mut out = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if pred(c(x, y)) {
                    out.push(c(x, y));
                }
            }
        }
        out
    }

    #[test]
    fn roots_when_degree_divides_genus() {
        assert_eq!(root_classes(&s(6, 3)), vec![c(1, -2), c(-1, 2)]);
        assert_eq!(root_classes(&s(4, 2)), vec![c(1, -2), c(-1, 2)]);
        assert!(root_classes(&s(5, 3)).is_empty());
    }

    #[test]
    fn roots_agree_with_box_scan() {
        for g in 3..=14 {
            for d in 2..=9 {
                let m = s(g, d);
                let mut expected = box_scan(60, |b| m.self_int(&b) == -2);
                let mut got = root_classes(&m);
                expected.sort();
                got.sort();
                assert_eq!(got, expected, "g={g} d={d}");
                assert_eq!(!got.is_empty(), g % d == 0);
            }
        }
    }

    #[test]
    fn isotropic_rays_span_all_isotropic_classes() {
        for (g, d) in [(5, 3), (7, 4), (10, 6), (9, 4), (13, 8)] {
            let m = s(g, d);
            let [e, f] = isotropic_rays(&m);
            assert_eq!(e, DivisorClass::E);
            assert_eq!(m.self_int(&f), 0);
            for b in box_scan(40, |b| !b.is_zero() && m.self_int(&b) == 0) {
                let on_e = b.x == 0;
                let on_f = b.x % f.x == 0 && (b.x / f.x) * f == b;
                assert!(on_e || on_f, "{b} not on a ray for g={g} d={d}");
            }
        }
    }

    #[test]
    fn nef_certificates() {
        let cert = check_l_nef(&s(6, 3));
        assert!(cert.holds());
        let pos: Vec<_> = cert.evidence.iter().filter(|e| e.side == Side::Positive).collect();
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].root, c(1, -2));
        assert_eq!(pos[0].pairing_with_l, 4);

        let cert = check_l_nef(&s(5, 3));
        assert!(cert.holds());
        assert!(cert.evidence.is_empty());

        let cert = check_l_nef(&s(4, 4));
        assert!(cert.holds());
        let pos: Vec<_> = cert.evidence.iter().filter(|e| e.side == Side::Positive).collect();
        assert_eq!((pos[0].root, pos[0].pairing_with_l), (c(1, -1), 2));
    }

    #[test]
    fn bpf_certificates() {
        for (g, d) in [(3, 2), (10, 6), (5, 3)] {
            let cert = check_l_bpf(&s(g, d));
            assert!(cert.holds);
            assert!(cert.obstructions.is_empty());
            assert_eq!(cert.method, "exact-diophantine");
        }
    }

    #[test]
    fn bpf_agrees_with_box_scan() {
        for g in 3..=12 {
            for d in 2..=8 {
                let m = s(g, d);
                let found = box_scan(60, |b| m.self_int(&b) == 0 && m.degree_on_curve(&b) == 1);
                assert_eq!(found, check_l_bpf(&m).obstructions);
            }
        }
    }

    #[test]
    fn effective_sides() {
        let m = s(7, 4);
        assert_eq!(effective_side(&m, &c(1, -1)), Ok(Side::Positive));
        assert_eq!(effective_side(&m, &c(-1, 1)), Ok(Side::Negative));
        assert_eq!(effective_side(&s(5, 3), &c(0, -2)), Ok(Side::Negative));
        assert_eq!(effective_side(&m, &DivisorClass::ZERO), Err(LinsysError::ZeroClass));
        // D² = 8 - 32 = -24 < -2
        assert_eq!(effective_side(&s(5, 3), &c(1, -4)), Ok(Side::Unknown));
    }

    #[test]
    fn effective_side_is_antisymmetric() {
        let m = s(9, 5);
        for b in box_scan(30, |b| !b.is_zero()) {
            let here = effective_side(&m, &b).unwrap();
            let there = effective_side(&m, &-b).unwrap();
            assert_eq!(here == Side::Positive, there == Side::Negative);
        }
    }

    #[test]
    fn profile_of_elliptic_multiple() {
        let p = h_profile(&s(9, 4), &c(0, 3));
        assert_eq!(p.values(), [Exact(4), Exact(2), Exact(0)]);
        assert_eq!(p.h1.rule, Rule::EllipticMultiple);
    }

    #[test]
    fn profile_of_zero_class() {
        let p = h_profile(&s(5, 3), &DivisorClass::ZERO);
        assert_eq!(p.values(), [Exact(1), Exact(0), Exact(1)]);
    }

    #[test]
    fn profile_of_residual_class() {
        let m = s(7, 4);
        let p = h_profile(&m, &c(1, -1));
        // h2 = 0 and χ(L-E) = 4 give h0 = 4 + h1 >= 4.
        assert_eq!(p.h0.value, AtLeast(4));
        assert_eq!(p.h0.rule, Rule::ResidualOfElliptic);
        assert_eq!(p.h1.value, Unknown);
        assert_eq!(p.h2.value, Exact(0));
    }

    #[test]
    fn profile_of_polarization() {
        let p = h_profile(&s(8, 3), &DivisorClass::L);
        assert_eq!(p.values(), [Exact(9), Exact(0), Exact(0)]);
        let p = h_profile(&s(8, 3), &-DivisorClass::L);
        assert_eq!(p.values(), [Exact(0), Exact(0), Exact(9)]);
    }

    #[test]
    fn profile_of_negative_elliptic_multiple() {
        let p = h_profile(&s(8, 3), &c(0, -2));
        assert_eq!(p.values(), [Exact(0), Exact(1), Exact(3)]);
        assert_eq!(p.h2.rule, Rule::SerreDual);
    }

    #[test]
    fn exact_profiles_satisfy_riemann_roch() {
        for (g, d) in [(3, 2), (5, 3), (7, 4), (12, 7)] {
            let m = s(g, d);
            for b in box_scan(12, |_| true) {
                let p = h_profile(&m, &b);
                if let Some(e) = p.euler_characteristic() {
                    assert_eq!(e, m.chi(&b), "{b} on g={g} d={d}");
                }
                if b.x == 0 && b.y >= 1 {
                    assert_eq!(p.euler_characteristic(), Some(2));
                }
            }
        }
    }

    #[test]
    fn restriction_of_elliptic_class() {
        let r = restriction_profile(&s(7, 4), &DivisorClass::E);
        assert_eq!(r.h0.value, Exact(2));
        assert_eq!(r.h0.rule, Rule::EllipticPencil);
        assert_eq!(r.h1.value, AtLeast(4));
        assert_eq!(r.degree, 4);

        let r = restriction_profile(&s(9, 4), &DivisorClass::E);
        assert_eq!((r.h0.value, r.h1.value, r.degree), (Exact(2), AtLeast(6), 4));
    }

    #[test]
    fn restriction_of_zero_class() {
        for g in [3, 6, 11] {
            let r = restriction_profile(&s(g, 2), &DivisorClass::ZERO);
            assert_eq!((r.h0.value, r.h1.value, r.degree), (Exact(1), Exact(g as u64), 0));
        }
    }

    #[test]
    fn restriction_outside_range_uses_sequence_only() {
        // d = 6 > (g+3)/2 at g = 7: the pencil rule does not apply.
        let r = restriction_profile(&s(7, 6), &DivisorClass::E);
        assert_eq!(r.h0.rule, Rule::RestrictionSequence);
        assert_eq!(r.h0.value, AtLeast(2));
        // At d = 9, (E-L)² = -6 leaves h0(E-L) undecided.
        let r = restriction_profile(&s(7, 9), &DivisorClass::E);
        assert_eq!(r.h0.value, Unknown);
    }

    #[test]
    fn exact_restrictions_satisfy_curve_riemann_roch() {
        for (g, d) in [(4, 2), (7, 4), (10, 6)] {
            let m = s(g, d);
            for b in box_scan(8, |_| true) {
                let r = restriction_profile(&m, &b);
                if let (Some(a), Some(b1)) = (r.h0.value.exact(), r.h1.value.exact()) {
                    assert_eq!(a as i128 - b1 as i128, r.degree + 1 - g as i128, "{b}");
                }
            }
        }
    }
}
