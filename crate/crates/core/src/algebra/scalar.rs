//! The coefficient field: rational functions in `s`, where `s^2 = q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{poly_content, poly_div_exact, poly_gcd, LaurentPoly};
use crate::error::{Error, Result};

/// An element `num / den` of `Q(s)`.
///
/// Canonical form: `den` is an ordinary polynomial with nonzero constant term and
/// positive leading coefficient, `gcd(num, den) = 1` over `Q[s]`, and the integer
/// contents of `num` and `den` are coprime. All powers of `s` live in `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::from_fraction(LaurentPoly::constant(n), LaurentPoly::constant(d))
    }

    /// The generator `s = q^(1/2)`.
    pub fn s() -> Self {
        Self::s_pow(1)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn s_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::s_pow(k))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// Reduces `num / den` to canonical form. Panics if `den` is zero.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.valuation() - den.valuation();
        let n0 = num.shift(-num.valuation());
        let d0 = den.shift(-den.valuation());
        if let Some(c) = d0.as_constant() {
            // Constant denominator: only integer content and sign to settle.
            let g = n0.content().gcd(c);
            let mut n = n0.coeffs().iter().map(|x| x / &g).collect::<Vec<_>>();
            let mut d = c / &g;
            if d.is_negative() {
                n.iter_mut().for_each(|x| *x = -&*x);
                d = -d;
            }
            return Self {
                num: LaurentPoly::from_parts(shift, n),
                den: LaurentPoly::constant(d),
            };
        }
        let g = poly_gcd(n0.coeffs(), d0.coeffs());
        let mut n = poly_div_exact(n0.coeffs(), &g).expect("gcd divides numerator");
        let mut d = poly_div_exact(d0.coeffs(), &g).expect("gcd divides denominator");
        let c = poly_content(&n).gcd(&poly_content(&d));
        if !c.is_one() {
            n.iter_mut().for_each(|x| *x /= &c);
            d.iter_mut().for_each(|x| *x /= &c);
        }
        if d.last().is_some_and(|l| l.is_negative()) {
            n.iter_mut().for_each(|x| *x = -&*x);
            d.iter_mut().for_each(|x| *x = -&*x);
        }
        Self {
            num: LaurentPoly::from_parts(shift, n),
            den: LaurentPoly::from_parts(0, d),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some` when the value is a Laurent polynomial with integer coefficients.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value lies in `Z[q, q^-1]` (no odd powers of `s`, no denominator).
    pub fn is_q_laurent(&self) -> bool {
        self.is_laurent() && self.num.terms().all(|(e, _)| e % 2 == 0)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_fraction(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let k = e.unsigned_abs() as u32;
        if base.den.is_one() {
            return Self::from_laurent(base.num.pow(k));
        }
        // Powers of a reduced fraction stay reduced.
        Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Multiplies by `s^k`; never needs a gcd.
    pub fn shift_s(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    /// The Adams operation `s -> s^n`.
    pub fn adams(&self, n: u32) -> Self {
        if n == 1 {
            return self.clone();
        }
        Self::from_fraction(self.num.adams(n), self.den.adams(n))
    }

    /// Substitution `s -> s^-1` (equivalently `q -> q^-1`).
    pub fn invert_generator(&self) -> Self {
        Self::from_fraction(self.num.invert_generator(), self.den.invert_generator())
    }

    /// Evaluates at `q = q0` (so `s = sqrt(q0)`); requires every power of `s` to be even.
    pub fn eval_at_q(&self, q0: i64) -> Result<num_rational::BigRational> {
        let half = |p: &LaurentPoly| -> Result<LaurentPoly> {
            if p.terms().any(|(e, _)| e % 2 != 0) {
                return Err(Error::Evaluation(format!(
                    "odd power of q^(1/2) in {self} prevents evaluation at q = {q0}"
                )));
            }
            Ok(LaurentPoly::from_terms(
                p.terms().map(|(e, c)| (e / 2, c.clone())),
            ))
        };
        let x = BigInt::from(q0);
        let (nn, nd) = half(&self.num)?
            .eval_integer(&x)
            .ok_or_else(|| Error::Evaluation("pole at q = 0".into()))?;
        let (dn, dd) = half(&self.den)?
            .eval_integer(&x)
            .ok_or_else(|| Error::Evaluation("pole at q = 0".into()))?;
        if dn.is_zero() {
            return Err(Error::Evaluation(format!("pole of {self} at q = {q0}")));
        }
        Ok(num_rational::BigRational::new(nn * dd, nd * dn))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::from_fraction(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::from_fraction(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(self.num.mul(&rhs.num));
        }
        if rhs.num.is_monomial() && rhs.den.is_one() && rhs.num.coeffs()[0].is_one() {
            return self.shift_s(rhs.num.valuation());
        }
        if self.num.is_monomial() && self.den.is_one() && self.num.coeffs()[0].is_one() {
            return rhs.shift_s(self.num.valuation());
        }
        Scalar::from_fraction(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::integer(c)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Scalar::from_laurent(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

/// `[k]_q = 1 + q + ... + q^(k-1)`.
pub fn q_int(k: i64) -> Result<Scalar> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("q_int of negative {k}")));
    }
    Ok(Scalar::from_laurent(LaurentPoly::from_terms(
        (0..k).map(|i| (2 * i, 1)),
    )))
}

/// `[k]_q! = [1]_q [2]_q ... [k]_q`.
pub fn q_factorial(k: i64) -> Result<Scalar> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("q_factorial of negative {k}")));
    }
    let mut acc = LaurentPoly::one();
    for i in 1..=k {
        acc = acc.mul(q_int(i)?.numerator());
    }
    Ok(Scalar::from_laurent(acc))
}
