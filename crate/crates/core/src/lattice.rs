//! The rank-2 Picard lattice `ZL ⊕ ZE` of a K3 surface.
//!
//! The intersection form in the basis `(L, E)` is
//!
//! ```text
//!     | L.L  L.E |   | 2(g-1)  d |
//!     | E.L  E.E | = |   d     0 |
//! ```
//!
//! so a class `D = xL + yE` has `D² = 2x((g-1)x + dy)`, which is always even.
//! Intersection numbers are computed in `i128` with checked arithmetic; they
//! are exact for `g, d ≤ MAX_PARAMETER` and `|x|, |y| ≤ 2^40`, and any
//! computation leaving the `i128` range panics instead of wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest genus or degree accepted by [`SurfaceModel::new`].
pub const MAX_PARAMETER: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("genus must satisfy 3 <= g <= {max}, got g = {genus}", max = MAX_PARAMETER)]
    Genus { genus: i64 },
    #[error("degree must satisfy 2 <= d <= {max}, got d = {degree}", max = MAX_PARAMETER)]
    Degree { degree: i64 },
}

/// A geometric input the lattice model cannot check and therefore records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assumption {
    /// A K3 surface with exactly this Picard lattice exists.
    SurfaceExists,
    /// `Pic S` equals `ZL ⊕ ZE` rather than an overlattice of it.
    PicardLatticeExact,
    /// `L` is nef (re-checked on the lattice by `linsys::check_l_nef`).
    PolarizationNef,
    /// The pencil `|E|` contains a smooth elliptic curve.
    SmoothEllipticMember,
}

impl Assumption {
    pub const ALL: [Assumption; 4] = [
        Assumption::SurfaceExists,
        Assumption::PicardLatticeExact,
        Assumption::PolarizationNef,
        Assumption::SmoothEllipticMember,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Assumption::SurfaceExists => {
                "imported: a K3 surface S realizing this intersection matrix exists \
                 (lattice theory of K3 surfaces and surjectivity of the period map)"
            }
            Assumption::PicardLatticeExact => {
                "imported: Pic S is exactly ZL + ZE, not merely a lattice containing it"
            }
            Assumption::PolarizationNef => {
                "imported: L can be chosen nef on S (necessary condition re-checked on (-2)-classes)"
            }
            Assumption::SmoothEllipticMember => "imported: the linear system |E| contains a smooth curve",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// A divisor class `xL + yE`, stored as its coordinates in the basis `(L, E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub x: i64,
    pub y: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { x: 0, y: 0 };
    /// The polarization `L`.
    pub const L: DivisorClass = DivisorClass { x: 1, y: 0 };
    /// The elliptic class `E`.
    pub const E: DivisorClass = DivisorClass { x: 0, y: 1 };

    pub const fn new(x: i64, y: i64) -> Self {
        DivisorClass { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `L - self`, the Serre-dual twist on a curve in `|L|`.
    pub fn residual(&self) -> DivisorClass {
        DivisorClass::L - *self
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            x: self.x.checked_add(rhs.x).expect("divisor coordinate overflow"),
            y: self.y.checked_add(rhs.y).expect("divisor coordinate overflow"),
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            x: self.x.checked_sub(rhs.x).expect("divisor coordinate overflow"),
            y: self.y.checked_sub(rhs.y).expect("divisor coordinate overflow"),
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass::ZERO - self
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            x: self.checked_mul(rhs.x).expect("divisor coordinate overflow"),
            y: self.checked_mul(rhs.y).expect("divisor coordinate overflow"),
        }
    }
}

/// The lattice of a K3 surface with `L² = 2(g-1)`, `L.E = d`, `E² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    genus: i64,
    degree: i64,
}

impl SurfaceModel {
    pub fn new(genus: i64, degree: i64) -> Result<Self, LatticeError> {
        if !(3..=MAX_PARAMETER).contains(&genus) {
            return Err(LatticeError::Genus { genus });
        }
        if !(2..=MAX_PARAMETER).contains(&degree) {
            return Err(LatticeError::Degree { degree });
        }
        Ok(SurfaceModel { genus, degree })
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `d = E.L`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn gram(&self) -> [[i128; 2]; 2] {
        let l2 = 2 * (self.genus as i128 - 1);
        let d = self.degree as i128;
        [[l2, d], [d, 0]]
    }

    pub fn determinant(&self) -> i128 {
        let g = self.gram();
        g[0][0] * g[1][1] - g[0][1] * g[1][0]
    }

    /// Geometric inputs taken on trust when this model is used as a surface.
    pub fn assumptions(&self) -> &'static [Assumption] {
        &Assumption::ALL
    }

    /// The intersection pairing `D1.D2`.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> i128 {
        let [[l2, d], _] = self.gram();
        let (x1, y1, x2, y2) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
        let ll = x1
            .checked_mul(x2)
            .and_then(|p| p.checked_mul(l2))
            .expect("intersection number overflows i128");
        let le = x1
            .checked_mul(y2)
            .and_then(|p| x2.checked_mul(y1).and_then(|q| p.checked_add(q)))
            .and_then(|s| s.checked_mul(d))
            .expect("intersection number overflows i128");
        ll.checked_add(le).expect("intersection number overflows i128")
    }

    pub fn self_int(&self, class: &DivisorClass) -> i128 {
        self.pair(class, class)
    }

    /// Riemann–Roch on a K3 surface: `χ(D) = D²/2 + 2`.
    pub fn chi(&self, class: &DivisorClass) -> i128 {
        let d2 = self.self_int(class);
        debug_assert!(d2 % 2 == 0, "odd self-intersection on an even lattice");
        d2 / 2 + 2
    }

    /// `2 <= d <= ⌊(g+3)/2⌋`, where `Cliff C = d - 2` is established.
    pub fn within_brill_noether_range(&self) -> bool {
        self.degree <= (self.genus + 3) / 2
    }

    /// `D.L`, the degree of `O_C(D)` on a curve `C ∈ |L|`.
    pub fn degree_on_curve(&self, class: &DivisorClass) -> i128 {
        self.pair(class, &DivisorClass::L)
    }
}

/// Convenience constructor matching the rest of the crate's free-function API.
pub fn make_surface(genus: i64, degree: i64) -> Result<SurfaceModel, LatticeError> {
    SurfaceModel::new(genus, degree)
}
