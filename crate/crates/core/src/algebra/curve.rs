//! Smooth projective curves through their Weil polynomial, and the zeta function
//! `Z_C(t) = P_C(t) / ((1-t)(1-qt))`.

use std::fmt;

use num_rational::Rational64;

use super::scalar::Scalar;
use super::series::{rat, TruncatedSeries};
use super::upoly::{RationalFunction, ScalarPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveMode {
    /// Poincaré-polynomial measure: `P_C(t) = (1 - s t)^{2g}`.
    Poincare,
    /// A user-supplied Weil polynomial.
    Explicit,
}

impl fmt::Display for CurveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveMode::Poincare => "poincare",
            CurveMode::Explicit => "explicit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    genus: u32,
    weil: ScalarPoly,
    mode: CurveMode,
}

impl CurveData {
    pub fn poincare(genus: u32) -> Self {
        let factor = ScalarPoly::one_minus(Scalar::s(), 1);
        let weil = ScalarPoly::product(std::iter::repeat_n(&factor, 2 * genus as usize));
        Self {
            genus,
            weil,
            mode: CurveMode::Poincare,
        }
    }

    /// Builds a curve from Weil coefficients `a_0, ..., a_{2g}`; checks all invariants.
    pub fn explicit(genus: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != 2 * genus as usize + 1 {
            return Err(Error::InvalidCurve(format!(
                "expected {} coefficients for genus {genus}, got {}",
                2 * genus + 1,
                coeffs.len()
            )));
        }
        let c = Self {
            genus,
            weil: ScalarPoly::new(coeffs),
            mode: CurveMode::Explicit,
        };
        c.check()?;
        Ok(c)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn mode(&self) -> CurveMode {
        self.mode
    }

    pub fn weil(&self) -> &ScalarPoly {
        &self.weil
    }

    pub fn check(&self) -> Result<()> {
        if !self.weil.coeff(0).is_one() {
            return Err(Error::InvalidCurve("P_C(0) must be 1".into()));
        }
        if self.weil.degree() != Some(2 * self.genus as usize) {
            return Err(Error::InvalidCurve(format!(
                "P_C must have degree {}",
                2 * self.genus
            )));
        }
        if !self.weil_symmetric() {
            return Err(Error::InvalidCurve(
                "P_C(t) != q^g t^{2g} P_C(1/(qt))".into(),
            ));
        }
        Ok(())
    }

    /// `P_C(t) = q^g t^{2g} P_C(1/(qt))`, i.e. `a_{2g-i} = q^{g-i} a_i`.
    pub fn weil_symmetric(&self) -> bool {
        let g = self.genus as i64;
        (0..=2 * g).all(|i| {
            self.weil.coeff((2 * g - i) as usize) == &self.weil.coeff(i as usize) * &Scalar::q_pow(g - i)
        })
    }

    /// `mu(C)`, the `t`-coefficient of `Z_C`.
    pub fn motive(&self) -> Scalar {
        &(&Scalar::one() + &Scalar::q()) + &self.weil.coeff(1)
    }

    /// `mu(Jac C) = P_C(1)`.
    pub fn jacobian(&self) -> Scalar {
        self.weil.eval(&Scalar::one())
    }

    /// `Z_C` as a rational function of `t`.
    pub fn zeta_rational(&self) -> RationalFunction {
        let den = ScalarPoly::one_minus(Scalar::one(), 1)
            .mul(&ScalarPoly::one_minus(Scalar::q(), 1));
        RationalFunction::new(self.weil.clone(), den)
    }

    /// Checks `Z_C(t) = (q t^2)^{g-1} Z_C(1/(qt))` by cross-multiplication.
    pub fn functional_equation_holds(&self) -> bool {
        let z = self.zeta_rational();
        let g1 = self.genus as i64 - 1;
        let rhs = z
            .substitute_reciprocal(&Scalar::q())
            .mul(&RationalFunction::poly(ScalarPoly::constant(Scalar::q_pow(g1))))
            .mul_x_pow(2 * g1);
        z.equals(&rhs)
    }

    /// `Z_C(a t^k)` expanded through `t`-order `order`.
    pub fn zeta_series(&self, a: &Scalar, k: u32, order: Rational64) -> TruncatedSeries {
        assert!(k >= 1, "zeta_series needs k >= 1");
        let step = rat(k as i64);
        let mut ap = Scalar::one();
        let mut p = TruncatedSeries::zero(order);
        for (i, c) in self.weil.coeffs().iter().enumerate() {
            if !c.is_zero() {
                p = p.add(&TruncatedSeries::monomial(c * &ap, step * rat(i as i64), 0, order));
            }
            ap = &ap * a;
        }
        let g1 = TruncatedSeries::geometric(a, step, 0, order);
        let g2 = TruncatedSeries::geometric(&(a * &Scalar::q()), step, 0, order);
        p.mul(&g1).mul(&g2)
    }

    /// `Z_C(a)` as a scalar; errors at the poles `a = 1`, `a = 1/q`.
    pub fn zeta_value(&self, a: &Scalar) -> Result<Scalar> {
        let d1 = &Scalar::one() - a;
        let d2 = &Scalar::one() - &(&Scalar::q() * a);
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::ZetaPole(a.to_string()));
        }
        Ok(&self.weil.eval(a) / &(&d1 * &d2))
    }
}

impl fmt::Display for CurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} curve of genus {}", self.mode, self.genus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_zero_coefficients() {
        let c = CurveData::poincare(0);
        let z = c.zeta_series(&Scalar::one(), 1, rat(5));
        for n in 0..=5 {
            let expect: Scalar = (0..=n).map(Scalar::q_pow).fold(Scalar::zero(), |a, b| a + b);
            assert_eq!(z.coeff(rat(n), 0), expect);
        }
    }

    #[test]
    fn functional_equation_poincare() {
        for g in 0..=3 {
            let c = CurveData::poincare(g);
            assert!(c.weil_symmetric());
            assert!(c.functional_equation_holds(), "genus {g}");
        }
    }

    #[test]
    fn functional_equation_detects_asymmetry() {
        let bad = CurveData {
            genus: 1,
            weil: ScalarPoly::new(vec![Scalar::one(), Scalar::integer(-3), Scalar::q_pow(2)]),
            mode: CurveMode::Explicit,
        };
        assert!(!bad.functional_equation_holds());
        assert!(bad.check().is_err());
    }

    #[test]
    fn explicit_elliptic_curve() {
        // 1 - a t + q t^2 with a = 2
        let c = CurveData::explicit(1, vec![Scalar::one(), Scalar::integer(-2), Scalar::q()]).unwrap();
        assert!(c.functional_equation_holds());
        assert_eq!(c.motive().to_string(), "q-1");
        assert!(CurveData::explicit(1, vec![Scalar::one(), Scalar::zero()]).is_err());
    }

    #[test]
    fn zeta_poles() {
        let c = CurveData::poincare(1);
        assert!(matches!(c.zeta_value(&Scalar::one()), Err(Error::ZetaPole(_))));
        assert!(c.zeta_value(&Scalar::q_pow(-1)).is_err());
        let v = CurveData::poincare(0).zeta_value(&Scalar::q()).unwrap();
        assert_eq!(v, Scalar::one() / ((Scalar::one() - Scalar::q()) * (Scalar::one() - Scalar::q_pow(2))));
    }

    #[test]
    fn exp_of_motive_is_zeta() {
        let n = rat(5);
        for g in 0..=2 {
            let c = CurveData::poincare(g);
            let f = TruncatedSeries::monomial(c.motive(), rat(1), 0, n);
            assert_eq!(f.exp_pleth().unwrap(), c.zeta_series(&Scalar::one(), 1, n));
        }
    }
}
