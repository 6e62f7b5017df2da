//! Laurent polynomials in the half-power generator `s` (with `s^2 = q`) over the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `s^val * (c_0 + c_1 s + ... + c_d s^d)` with `c_0 != 0` and `c_d != 0`.
///
/// The zero polynomial has no coefficients and `val == 0`, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    val: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_parts(0, vec![c.into()])
    }

    /// `c * s^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::from_parts(k, vec![c.into()])
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// `q^k = s^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    pub fn from_parts(val: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            val: val + lead_zeros as i64,
            coeffs,
        }
    }

    /// Builds from `(exponent of s, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_parts(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent of `s` present (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Highest exponent of `s` present.
    pub fn top_degree(&self) -> i64 {
        self.val + self.coeffs.len() as i64 - 1
    }

    /// Coefficients starting at `s^valuation()`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        if self.val == 0 && self.coeffs.len() == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        poly_content(&self.coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(other.val);
        let hi = self.top_degree().max(other.top_degree());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.val - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.val - lo) as usize + i] += c;
        }
        Self::from_parts(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.val + other.val, poly_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_parts(self.val, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitution `s -> s^n` for `n >= 1` (the Adams operation on coefficients).
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1);
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        Self::from_parts(self.val * n as i64, coeffs)
    }

    /// Substitution `s -> s^-1`.
    pub fn invert_generator(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_parts(-self.top_degree(), coeffs)
    }

    /// Value at an integer point `s = x`; `None` if `x == 0` and negative powers occur.
    pub fn eval_integer(&self, x: &BigInt) -> Option<(BigInt, BigInt)> {
        if self.is_zero() {
            return Some((BigInt::zero(), BigInt::one()));
        }
        if x.is_zero() && self.val < 0 {
            return None;
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.val >= 0 {
            Some((acc * x.pow(self.val as u32), BigInt::one()))
        } else {
            Some((acc, x.pow((-self.val) as u32)))
        }
    }

    /// Exact division by a nonzero polynomial; `None` if the quotient is not a Laurent
    /// polynomial with integer coefficients.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &other.coeffs)?;
        Some(Self::from_parts(self.val - other.val, q))
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.val
            .cmp(&other.val)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::render::render_laurent(self))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

// Dense polynomial helpers on coefficient slices (index = power of s).

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn poly_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let c = poly_content(a);
    if c.is_zero() || c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`deg a >= deg b`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor in `Z[s]`, normalized to a positive leading coefficient.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let c = poly_content(&a).gcd(&poly_content(&b));
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive_part(&a), primitive_part(&b))
    } else {
        (primitive_part(&b), primitive_part(&a))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let g: Vec<BigInt> = primitive_part(&x).into_iter().map(|v| v * &c).collect();
    normalize_sign(g)
}

fn normalize_sign(a: Vec<BigInt>) -> Vec<BigInt> {
    if a.last().is_some_and(|l| l.is_negative()) {
        a.into_iter().map(|x| -x).collect()
    } else {
        a
    }
}

/// Exact quotient `a / b` in `Z[s]`, or `None` if `b` does not divide `a` there.
pub(crate) fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let (quo, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - 1 - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &quo * y;
        }
        q[shift] = quo;
        r = trim(r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (s^2-1)(s+2) and (s-1)(s+3)
        let a = poly_mul(&p(&[-1, 0, 1]), &p(&[2, 1]));
        let b = poly_mul(&p(&[-1, 1]), &p(&[3, 1]));
        assert_eq!(poly_gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_common_content() {
        assert_eq!(poly_gcd(&p(&[4, 2]), &p(&[6, 3])), p(&[2, 1]));
    }

    #[test]
    fn exact_division() {
        let a = poly_mul(&p(&[1, 1]), &p(&[-1, 0, 2]));
        assert_eq!(poly_div_exact(&a, &p(&[1, 1])), Some(p(&[-1, 0, 2])));
        assert_eq!(poly_div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
    }

    #[test]
    fn laurent_trimming_and_shift() {
        let x = LaurentPoly::from_terms([(-3, 0), (-1, 2), (2, -1), (5, 0)]);
        assert_eq!(x.valuation(), -1);
        assert_eq!(x.top_degree(), 2);
        assert_eq!(x.shift(1).valuation(), 0);
        assert!(LaurentPoly::from_terms([(1, 1), (1, -1)]).is_zero());
    }

    #[test]
    fn adams_and_inversion() {
        let x = LaurentPoly::from_terms([(-1, 1), (1, 3)]);
        assert_eq!(x.adams(3), LaurentPoly::from_terms([(-3, 1), (3, 3)]));
        assert_eq!(x.invert_generator(), LaurentPoly::from_terms([(1, 1), (-1, 3)]));
    }
}
