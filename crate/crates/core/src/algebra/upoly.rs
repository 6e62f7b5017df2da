//! Dense univariate polynomials over [`Scalar`], for identities in an auxiliary variable
//! (the curve variable `t`, or `z` in the q-hypergeometric checks).

use std::fmt;

use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    coeffs: Vec<Scalar>,
}

impl ScalarPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 - c x^k`.
    pub fn one_minus(c: Scalar, k: usize) -> Self {
        Self::constant(Scalar::one()).sub(&Self::monomial(c, k))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Substitution `x -> c x`.
    pub fn scale_variable(&self, c: &Scalar) -> Self {
        let mut pw = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Self::new(out)
    }

    /// The reversal `x^d p(1/x)` with `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a ScalarPoly>>(it: I) -> Self {
        it.into_iter()
            .fold(Self::constant(Scalar::one()), |acc, p| acc.mul(p))
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*x^{i}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A rational function `num / den` in the auxiliary variable, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: ScalarPoly,
    pub den: ScalarPoly,
}

impl RationalFunction {
    pub fn new(num: ScalarPoly, den: ScalarPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn poly(p: ScalarPoly) -> Self {
        Self::new(p, ScalarPoly::constant(Scalar::one()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplies by `x^k` for any integer `k`.
    pub fn mul_x_pow(&self, k: i64) -> Self {
        let xk = ScalarPoly::monomial(Scalar::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::new(self.num.mul(&xk), self.den.clone())
        } else {
            Self::new(self.num.clone(), self.den.mul(&xk))
        }
    }

    /// Substitution `x -> 1/(c x)`.
    pub fn substitute_reciprocal(&self, c: &Scalar) -> Self {
        // p(1/(cx)) = rev_p(cx) / (cx)^deg p, with rev_p the padded reversal.
        let sub = |p: &ScalarPoly| -> (ScalarPoly, usize) {
            let d = p.degree().unwrap_or(0);
            let mut v = p.coeffs().to_vec();
            v.resize(d + 1, Scalar::zero());
            v.reverse();
            (ScalarPoly::new(v).scale_variable(c), d)
        };
        let (n, dn) = sub(&self.num);
        let (d, dd) = sub(&self.den);
        // n(cx)/(cx)^dn / (d(cx)/(cx)^dd) = n(cx) (cx)^dd / (d(cx) (cx)^dn)
        let cx = |k: usize| ScalarPoly::monomial(c.pow(k as i64), k);
        Self::new(n.mul(&cx(dd)), d.mul(&cx(dn)))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
