//! Numerical geometry of a ruled surface `S = P(L + O_C)`: the Néron–Severi lattice
//! `Z C0 + Z f`, Riemann–Roch, Euler pairings and slopes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuledSurface {
    genus: u32,
    e: i64,
}

impl RuledSurface {
    pub fn new(genus: u32, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::InvalidArgument(format!("invariant e must be >= 0, got {e}")));
        }
        Ok(Self { genus, e })
    }

    /// The Hirzebruch surface `Σ_e`.
    pub fn hirzebruch(e: i64) -> Self {
        Self::new(0, e).expect("e >= 0")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::new(-2, 2 * self.genus as i64 - 2 - self.e)
    }

    pub fn chi_o(&self) -> i64 {
        1 - self.genus as i64
    }

    pub fn intersect(&self, x: DivisorClass, y: DivisorClass) -> i64 {
        -self.e * x.a * y.a + x.a * y.b + x.b * y.a
    }

    /// `χ(γ) = ch2 - K_S·c1/2 + r χ(O_S)`.
    pub fn euler_chi(&self, g: &ChernData) -> Rational64 {
        g.ch2(self) - Rational64::new(self.intersect(self.canonical(), g.c1), 2)
            + r64(g.r * self.chi_o())
    }

    /// `χ(γ, γ')`.
    pub fn chi_pair(&self, x: &ChernData, y: &ChernData) -> Rational64 {
        let k = self.canonical();
        r64(x.r) * y.ch2(self) + r64(y.r) * x.ch2(self)
            - r64(self.intersect(x.c1, y.c1))
            - Rational64::new(self.intersect(k, y.c1 * x.r - x.c1 * y.r), 2)
            + r64(x.r * y.r * self.chi_o())
    }

    /// `<γ, γ'> = χ(γ,γ') - χ(γ',γ) = K_S·(r' c1 - r c1')`.
    pub fn euler_antisym(&self, x: &ChernData, y: &ChernData) -> i64 {
        self.antisym_rc(x.r, x.c1, y.r, y.c1)
    }

    /// The antisymmetric pairing, which only sees rank and `c1`.
    pub fn antisym_rc(&self, r: i64, c: DivisorClass, r2: i64, c2: DivisorClass) -> i64 {
        self.intersect(self.canonical(), c * r2 - c2 * r)
    }

    /// `H·D` for a polarization ray.
    pub fn pol_dot(&self, h: Polarization, d: DivisorClass) -> Rational64 {
        h.m * r64(d.b) + h.n * r64(d.a)
    }

    /// `H^2 = e m^2 + 2 m n`.
    pub fn pol_square(&self, h: Polarization) -> Rational64 {
        r64(self.e) * h.m * h.m + r64(2) * h.m * h.n
    }

    pub fn pol_dot_canonical(&self, h: Polarization) -> Rational64 {
        self.pol_dot(h, self.canonical())
    }

    pub fn slope(&self, h: Polarization, g: &ChernData) -> Result<Rational64> {
        if g.r == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(self.pol_dot(h, g.c1) / r64(g.r))
    }

    /// The reduced Hilbert polynomial `χ(E(nH))/r` at `n`.
    pub fn reduced_hilbert(&self, h: Polarization, g: &ChernData, n: Rational64) -> Result<Rational64> {
        let mu = self.slope(h, g)?;
        let half = Rational64::new(1, 2);
        Ok(half * n * n * self.pol_square(h)
            + n * (mu - half * self.pol_dot_canonical(h))
            + self.euler_chi(g) / r64(g.r))
    }

    /// Membership in the cone spanned by `C0 + e f` and `f`.
    pub fn in_positive_cone(&self, d: DivisorClass) -> bool {
        self.intersect(d, DivisorClass::C0) >= 0 && self.intersect(d, DivisorClass::F) >= 0
    }

    /// Effective classes are exactly `a C0 + b f` with `a, b >= 0`.
    pub fn is_effective(&self, d: DivisorClass) -> bool {
        d.a >= 0 && d.b >= 0
    }
}

impl fmt::Display for RuledSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(g={}, e={})", self.genus, self.e)
    }
}

/// `a C0 + b f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { a: 0, b: 0 };
    pub const C0: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const F: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// `f · D`.
    pub fn fiber_degree(&self) -> i64 {
        self.a
    }
}

impl Add for DivisorClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul<i64> for DivisorClass {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A polarization ray `H_{m,n} = m (C0 + e f) + n f` with rational `m, n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Polarization {
    m: Rational64,
    n: Rational64,
}

impl Polarization {
    pub fn new(m: Rational64, n: Rational64) -> Result<Self> {
        if m.is_negative() || n.is_negative() || (m.is_zero() && n.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "polarization ({m},{n}) is not a nonzero ray of the positive cone"
            )));
        }
        Ok(Self { m, n })
    }

    pub fn from_ints(m: i64, n: i64) -> Result<Self> {
        Self::new(r64(m), r64(n))
    }

    /// The fiber class `f = H_{0,1}`.
    pub fn fiber() -> Self {
        Self { m: r64(0), n: r64(1) }
    }

    pub fn m(&self) -> Rational64 {
        self.m
    }

    pub fn n(&self) -> Rational64 {
        self.n
    }

    pub fn is_ample(&self) -> bool {
        self.m.is_positive() && self.n.is_positive()
    }

    /// The class `m C0 + (m e + n) f` when it is integral.
    pub fn divisor(&self, s: &RuledSurface) -> Option<DivisorClass> {
        let b = self.m * r64(s.e) + self.n;
        (self.m.is_integer() && b.is_integer()).then(|| DivisorClass::new(self.m.to_integer(), b.to_integer()))
    }

    /// Scaled to the same ray, for comparisons up to positive multiples.
    pub fn same_ray(&self, other: &Self) -> bool {
        self.m * other.n == self.n * other.m
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.m, self.n)
    }
}

/// A sheaf class `γ = (r, c1, c2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernData {
    pub r: i64,
    pub c1: DivisorClass,
    pub c2: i64,
}

impl ChernData {
    pub fn new(r: i64, c1: DivisorClass, c2: i64) -> Self {
        Self { r, c1, c2 }
    }

    /// Class with the given `ch2`; fails unless `c2 = c1^2/2 - ch2` is integral.
    pub fn from_ch2(s: &RuledSurface, r: i64, c1: DivisorClass, ch2: Rational64) -> Result<Self> {
        let c2 = Rational64::new(s.intersect(c1, c1), 2) - ch2;
        if !c2.is_integer() {
            return Err(Error::InvalidArgument(format!("ch2 = {ch2} gives non-integral c2")));
        }
        Ok(Self::new(r, c1, c2.to_integer()))
    }

    pub fn ch2(&self, s: &RuledSurface) -> Rational64 {
        Rational64::new(s.intersect(self.c1, self.c1), 2) - r64(self.c2)
    }

    /// `Δ = c1^2/(2r^2) - ch2/r`.
    pub fn discriminant(&self, s: &RuledSurface) -> Result<Rational64> {
        if self.r == 0 {
            return Err(Error::ZeroRank);
        }
        let r = r64(self.r);
        Ok(r64(s.intersect(self.c1, self.c1)) / (r64(2) * r * r) - self.ch2(s) / r)
    }

    /// Class of `E ⊗ L`.
    pub fn twist(&self, s: &RuledSurface, l: DivisorClass) -> Self {
        let r = self.r;
        Self::new(
            r,
            self.c1 + l * r,
            self.c2 + (r - 1) * s.intersect(self.c1, l) + r * (r - 1) / 2 * s.intersect(l, l),
        )
    }

    /// Membership in `Γ_+`: positive rank, or rank zero with effective (or zero) `c1`.
    pub fn is_positive_class(&self, s: &RuledSurface) -> bool {
        self.r > 0 || (self.r == 0 && s.is_effective(self.c1))
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, c1={}, c2={})", self.r, self.c1, self.c2)
    }
}
