//! Exact model of K3 surfaces with Picard lattice `ZL ⊕ ZE`, where
//! `L² = 2(g-1)`, `L.E = d` and `E² = 0`.
//!
//! For `g >= 3` and `2 <= d <= ⌊(g+3)/2⌋` a smooth curve `C ∈ |L|` has genus
//! `g`, Clifford index `d - 2` and gonality `d`, computed by the elliptic
//! pencil `O_C(E)`. This crate checks every lattice-theoretic step of that
//! statement, records the geometric inputs it takes on trust, and
//! cross-validates the Clifford index against a brute-force enumeration.

pub mod clifford;
pub mod lattice;
pub mod linsys;
pub mod theorem;

pub use clifford::{
    brute_force_cliff, candidate_classes, cliff_of_bundle, cliff_value, contributes, gonality, min_cliff,
    safe_radius, BruteForceReport, Census, CliffordCertificate, CliffordError, Contribution, ContributionCheck,
    ConventionBranch, GonalitySandwich,
};
pub use lattice::{make_surface, Assumption, DivisorClass, LatticeError, SurfaceModel};
pub use linsys::{
    check_l_bpf, check_l_nef, effective_side, h_profile, isotropic_rays, restriction_profile, root_classes,
    BpfCertificate, CohomologyProfile, CohomologyValue, Derivation, LinsysError, NefCertificate, RestrictionProfile,
    RootEvidence, Rule, Side, Verdict,
};
pub use theorem::{
    bn_bounds, realize, realize_clifford, realize_gonality, sweep, sweep_queries, QueryKind, Realization, RealizationRow, RealizationTable,
    SweepFailure, TheoremError, TheoremQuery,
};
