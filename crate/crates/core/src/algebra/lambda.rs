//! λ-ring structure on truncated series: Adams operations and the plethystic
//! exponential, logarithm and power.
//!
//! `Exp(f) = exp(sum_{n>=1} psi_n(f)/n)` and `Log(g) = sum_{n>=1} mu(n)/n psi_n(log g)`,
//! where `psi_n` sends `s -> s^n`, `t -> t^n`, `u -> u^n`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::scalar::Scalar;
use super::series::{dense_grades, from_dense, rat, upoly_mul_acc, TruncatedSeries, UPoly};
use crate::error::{Error, Result};

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

impl TruncatedSeries {
    /// The Adams operation `psi_n`.
    pub fn adams(&self, n: u32) -> TruncatedSeries {
        assert!(n >= 1, "Adams operations are indexed from 1");
        if n == 1 {
            return self.clone();
        }
        let order = self.order().min(self.order() * rat(n as i64));
        let offset = self.offset() * rat(n as i64);
        let terms = self
            .grid_terms()
            .map(|(&(k, u), c)| ((k * n, u * n), c.adams(n)))
            .filter(|((k, _), _)| offset + Rational64::new(*k as i64, self.denom()) <= order);
        TruncatedSeries::from_grid(self.denom(), offset, order, terms).expect("valid grid")
    }

    /// Every term has strictly positive `t`-exponent.
    fn positive_valuation(&self) -> bool {
        self.min_exponent().is_none_or(|v| v > Rational64::zero())
    }

    /// Grid denominator for an offset-0 representation.
    fn zero_offset_denom(&self) -> i64 {
        self.denom().lcm(self.offset().denom())
    }

    /// `sum_{n>=1} psi_n(f)/n` truncated; `f` must have positive valuation.
    fn adams_sum(&self, mobius_weighted: bool) -> TruncatedSeries {
        let order = self.order();
        let mut acc = TruncatedSeries::zero(order);
        let Some(v) = self.min_exponent() else {
            return acc;
        };
        let mut n = 1u32;
        while v * rat(n as i64) <= order {
            let w = if mobius_weighted { mobius(n) } else { 1 };
            if w != 0 {
                let term = self.adams(n).scale(&Scalar::rational(w, n as i64));
                acc = acc.add(&term);
            }
            n += 1;
        }
        acc
    }

    /// Plethystic exponential; errors on any term of non-positive `t`-exponent.
    pub fn exp_pleth(&self) -> Result<TruncatedSeries> {
        if !self.positive_valuation() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let d = self.zero_offset_denom();
        let log = self.adams_sum(false).rebased(d, Rational64::zero())?;
        Ok(series_exp(&log, order))
    }

    /// Plethystic logarithm; the `t^0` part must be exactly 1 and nothing may sit below it.
    pub fn log_pleth(&self) -> Result<TruncatedSeries> {
        let log = self.ordinary_log()?;
        Ok(log.adams_sum(true))
    }

    /// Plethystic power `self^e = Exp(e * Log(self))`.
    pub fn power_pleth(&self, e: &TruncatedSeries) -> Result<TruncatedSeries> {
        let l = self.log_pleth()?;
        e.mul(&l).truncate(self.order()).exp_pleth()
    }

    /// Ordinary `log` of a series with constant term 1.
    fn ordinary_log(&self) -> Result<TruncatedSeries> {
        let order = self.order();
        let zero = Rational64::zero();
        if self.min_exponent().is_some_and(|v| v < zero) {
            return Err(Error::NonUnitConstantTerm(format!(
                "negative t-exponent in {self}"
            )));
        }
        let c0 = self.t_coeff(zero);
        if c0.len() != 1 || c0.get(&0).is_none_or(|c| !c.is_one()) {
            return Err(Error::NonUnitConstantTerm(format!("{self}")));
        }
        let d = self.zero_offset_denom();
        let g = self.rebased(d, zero)?;
        let grades = dense_grades(&g, order);
        let mut l: Vec<UPoly> = vec![UPoly::new(); grades.len()];
        // k L_k = k g_k - sum_{j=1}^{k-1} j L_j g_{k-j}
        for k in 1..grades.len() {
            let mut acc = UPoly::new();
            for j in 1..k {
                upoly_mul_acc(&mut acc, &l[j], &grades[k - j], &Scalar::integer(j as i64));
            }
            let mut lk = grades[k].clone();
            let inv_k = Scalar::rational(1, k as i64);
            for (u, c) in acc {
                let slot = lk.entry(u).or_default();
                *slot = &*slot - &(&c * &inv_k);
            }
            lk.retain(|_, c| !c.is_zero());
            l[k] = lk;
        }
        Ok(from_dense(d, zero, order, &l))
    }
}

/// Ordinary `exp` of an offset-0 series with no `t^0` terms.
fn series_exp(log: &TruncatedSeries, order: Rational64) -> TruncatedSeries {
    let d = log.denom();
    let grades = dense_grades(log, order);
    let mut e: Vec<UPoly> = vec![UPoly::new(); grades.len()];
    if !e.is_empty() {
        e[0].insert(0, Scalar::one());
    }
    // k E_k = sum_{j=1}^k j L_j E_{k-j}
    for k in 1..grades.len() {
        let mut acc = UPoly::new();
        for j in 1..=k {
            upoly_mul_acc(
                &mut acc,
                &grades[j],
                &e[k - j],
                &Scalar::rational(j as i64, k as i64),
            );
        }
        e[k] = acc;
    }
    from_dense(d, Rational64::zero(), order, &e)
}
