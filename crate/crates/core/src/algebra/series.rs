//! Truncated formal series in `t` (rational exponents on a fixed grid) and `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::render::{render_coefficient, render_exponent, render_monomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub(crate) type UPoly = BTreeMap<u32, Scalar>;

pub(crate) fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// `sum c_{k,j} t^(offset + k/denom) u^j`, known exactly for every `t`-exponent `<= order`.
///
/// No term beyond `order` is stored and zero coefficients are never stored.
#[derive(Clone)]
pub struct TruncatedSeries {
    denom: i64,
    offset: Rational64,
    order: Rational64,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl TruncatedSeries {
    pub fn zero(order: Rational64) -> Self {
        Self {
            denom: 1,
            offset: Rational64::zero(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: Rational64) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: Rational64) -> Self {
        Self::monomial(c, Rational64::zero(), 0, order)
    }

    /// `c * t^t_exp * u^u_exp` (dropped if `t_exp > order`).
    pub fn monomial(c: Scalar, t_exp: Rational64, u_exp: u32, order: Rational64) -> Self {
        let mut s = Self {
            denom: *t_exp.denom(),
            offset: t_exp,
            order,
            terms: BTreeMap::new(),
        };
        if t_exp <= order && !c.is_zero() {
            s.terms.insert((0, u_exp), c);
        }
        s
    }

    /// Builds from `(t-exponent, u-exponent, coefficient)` triples; repeats are summed.
    pub fn from_terms<I>(terms: I, order: Rational64) -> Self
    where
        I: IntoIterator<Item = (Rational64, u32, Scalar)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|t| t.0 <= order).collect();
        let Some(offset) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(order);
        };
        let denom = terms
            .iter()
            .fold(1i64, |d, t| d.lcm((t.0 - offset).denom()))
            .lcm(offset.denom());
        let mut s = Self {
            denom,
            offset,
            order,
            terms: BTreeMap::new(),
        };
        for (e, u, c) in terms {
            s.add_at(s.index_of(e).expect("grid contains exponent"), u, c);
        }
        s
    }

    /// Raw constructor for a known grid; used by decoders.
    pub fn from_grid(
        denom: i64,
        offset: Rational64,
        order: Rational64,
        terms: impl IntoIterator<Item = ((u32, u32), Scalar)>,
    ) -> Result<Self> {
        if denom < 1 {
            return Err(Error::InvalidArgument(format!("grid denominator {denom}")));
        }
        let mut s = Self {
            denom,
            offset,
            order,
            terms: BTreeMap::new(),
        };
        for ((k, u), c) in terms {
            if s.exponent(k) > order {
                return Err(Error::InvalidArgument(format!(
                    "term t^{} beyond truncation order {}",
                    render_exponent(s.exponent(k)),
                    render_exponent(order)
                )));
            }
            s.add_at(k, u, c);
        }
        Ok(s)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    pub fn order(&self) -> Rational64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Grid entries `((k_t, k_u), coefficient)` in ascending order.
    pub fn grid_terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn exponent(&self, k: u32) -> Rational64 {
        self.offset + Rational64::new(k as i64, self.denom)
    }

    fn index_of(&self, e: Rational64) -> Option<u32> {
        let k = (e - self.offset) * rat(self.denom);
        if k.is_integer() && k >= Rational64::zero() {
            Some(k.to_integer() as u32)
        } else {
            None
        }
    }

    fn add_at(&mut self, k: u32, u: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((k, u)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Monomials `(t-exponent, u-exponent, coefficient)` ascending in `t`, then `u`.
    pub fn iter(&self) -> impl Iterator<Item = (Rational64, u32, &Scalar)> + '_ {
        self.terms
            .iter()
            .map(move |(&(k, u), c)| (self.exponent(k), u, c))
    }

    pub fn coeff(&self, t_exp: Rational64, u_exp: u32) -> Scalar {
        self.index_of(t_exp)
            .and_then(|k| self.terms.get(&(k, u_exp)).cloned())
            .unwrap_or_default()
    }

    /// Coefficient of `t^t_exp` as a polynomial in `u`.
    pub fn t_coeff(&self, t_exp: Rational64) -> UPoly {
        let Some(k) = self.index_of(t_exp) else {
            return UPoly::new();
        };
        self.terms
            .range((k, 0)..=(k, u32::MAX))
            .map(|(&(_, u), c)| (u, c.clone()))
            .collect()
    }

    /// Lowest `t`-exponent present.
    pub fn min_exponent(&self) -> Option<Rational64> {
        self.terms.keys().next().map(|&(k, _)| self.exponent(k))
    }

    /// Lower bound on exponents of the exact series: the lowest term, or the order when
    /// no term is known.
    fn valuation_bound(&self) -> Rational64 {
        self.min_exponent().unwrap_or(self.order)
    }

    pub fn max_u_exponent(&self) -> u32 {
        self.terms.keys().map(|&(_, u)| u).max().unwrap_or(0)
    }

    /// Re-expresses on the grid `offset' + k/denom'`.
    pub fn rebased(&self, denom: i64, offset: Rational64) -> Result<Self> {
        let mut out = Self {
            denom,
            offset,
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (e, u, c) in self.iter() {
            let k = out.index_of(e).ok_or_else(|| {
                Error::Internal(format!(
                    "exponent {} not on grid {}+k/{}",
                    render_exponent(e),
                    render_exponent(offset),
                    denom
                ))
            })?;
            out.terms.insert((k, u), c.clone());
        }
        Ok(out)
    }

    /// The same series on its coarsest grid starting at the lowest term.
    pub fn canonical(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero(self.order);
        };
        let denom = self
            .iter()
            .fold(1i64, |d, (e, _, _)| d.lcm((e - lo).denom()));
        self.rebased(denom, lo).expect("coarsest grid holds every term")
    }

    fn common_grid(&self, other: &Self) -> (i64, Rational64) {
        let d = self
            .denom
            .lcm(&other.denom)
            .lcm((self.offset - other.offset).denom());
        (d, self.offset.min(other.offset))
    }

    pub fn truncate(&self, order: Rational64) -> Self {
        let order = order.min(self.order);
        let mut out = self.clone();
        out.order = order;
        out.terms.retain(|&(k, _), _| self.exponent(k) <= order);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (d, off) = self.common_grid(other);
        let mut out = self.rebased(d, off).expect("common grid");
        out.order = self.order.min(other.order);
        for (e, u, c) in other.iter() {
            let k = out.index_of(e).expect("common grid");
            out.add_at(k, u, c.clone());
        }
        let order = out.order;
        out.truncate(order)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c = -&*c);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        let mut out = self.clone();
        out.terms.values_mut().for_each(|x| *x = &*x * c);
        out
    }

    /// Multiplies by the exact monomial `c t^t_exp u^u_exp`; the known range shifts too.
    pub fn mul_monomial(&self, c: &Scalar, t_exp: Rational64, u_exp: u32) -> Self {
        let mut out = Self {
            denom: self.denom.lcm(t_exp.denom()),
            offset: self.offset + t_exp,
            order: self.order + t_exp,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (e, u, x) in self.iter() {
            let k = out.index_of(e + t_exp).expect("grid");
            out.terms.insert((k, u + u_exp), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation_bound()).min(other.order + self.valuation_bound());
        let denom = self.denom.lcm(&other.denom);
        let mut out = Self {
            denom,
            offset: self.offset + other.offset,
            order,
            terms: BTreeMap::new(),
        };
        let fa = denom / self.denom;
        let fb = denom / other.denom;
        let kmax = ((order - out.offset) * rat(denom)).floor().to_integer();
        if kmax < 0 {
            return out;
        }
        let mut acc: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for (&(ka, ua), ca) in &self.terms {
            let ka = ka as i64 * fa;
            if ka > kmax {
                break;
            }
            for (&(kb, ub), cb) in &other.terms {
                let k = ka + kb as i64 * fb;
                if k > kmax {
                    break;
                }
                let p = ca * cb;
                let slot = acc.entry((k as u32, ua + ub)).or_default();
                *slot = &*slot + &p;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.terms = acc;
        out
    }

    /// Product of many series.
    pub fn product<'a, I: IntoIterator<Item = &'a TruncatedSeries>>(
        factors: I,
        order: Rational64,
    ) -> Self {
        factors
            .into_iter()
            .fold(Self::one(order), |acc, f| acc.mul(f))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; the lowest-order part must be a nonzero scalar monomial in `t`.
    pub fn inverse(&self) -> Result<Self> {
        let Some(v) = self.min_exponent() else {
            return Err(Error::NonUnitConstantTerm("zero series".into()));
        };
        let lead = self.t_coeff(v);
        if lead.len() != 1 || !lead.contains_key(&0) {
            return Err(Error::NonUnitConstantTerm(format!(
                "leading t-coefficient is not a scalar in {self}"
            )));
        }
        let c = lead[&0].clone();
        let cinv = c.recip()?;
        // self = c t^v (1 + g), g of positive valuation on an offset-0 grid.
        let rel_order = self.order - v;
        let shifted = self.mul_monomial(&cinv, -v, 0);
        let g = shifted.rebased(shifted.denom, Rational64::zero())?;
        let grades = dense_grades(&g, rel_order);
        let mut h: Vec<UPoly> = vec![UPoly::new(); grades.len()];
        if !h.is_empty() {
            h[0].insert(0, Scalar::one());
        }
        for k in 1..grades.len() {
            let mut acc = UPoly::new();
            for j in 1..=k {
                upoly_mul_acc(&mut acc, &grades[j], &h[k - j], &-Scalar::one());
            }
            h[k] = acc;
        }
        let inv = from_dense(g.denom, Rational64::zero(), rel_order, &h);
        Ok(inv.mul_monomial(&cinv, -v, 0))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `1 / (1 - c t^t_exp u^u_exp)` to the given order; `t_exp` must be positive.
    pub fn geometric(c: &Scalar, t_exp: Rational64, u_exp: u32, order: Rational64) -> Self {
        assert!(t_exp > Rational64::zero(), "geometric series needs positive t-exponent");
        let mut terms = Vec::new();
        let mut j = 0i64;
        let mut pw = Scalar::one();
        while t_exp * rat(j) <= order {
            terms.push((t_exp * rat(j), u_exp * j as u32, pw.clone()));
            pw = &pw * c;
            j += 1;
        }
        Self::from_terms(terms, order)
    }

    /// The exact binomial `1 - c t^t_exp u^u_exp`.
    pub fn one_minus(c: &Scalar, t_exp: Rational64, u_exp: u32, order: Rational64) -> Self {
        Self::from_terms(
            [
                (Rational64::zero(), 0, Scalar::one()),
                (t_exp, u_exp, -c),
            ],
            order,
        )
    }

    /// Substitution `t -> s^k t`: the coefficient of `t^e` gains `s^(k e)`.
    pub fn scale_t_by_s_power(&self, k: i64) -> Result<Self> {
        let mut out = self.clone();
        for (&(kt, _), c) in out.terms.iter_mut() {
            let w = self.exponent(kt) * rat(k);
            if !w.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "substitution t -> s^{k} t leaves a fractional power at t^{}",
                    render_exponent(self.exponent(kt))
                )));
            }
            *c = c.shift_s(w.to_integer());
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = f(c);
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Sets `u = 1`.
    pub fn forget_u(&self) -> Self {
        let mut out = self.clone();
        out.terms.clear();
        for (&(k, _), c) in &self.terms {
            out.add_at(k, 0, c.clone());
        }
        out
    }

    /// Monomial-wise equality for all exponents `<= order`, ignoring claimed orders.
    pub fn agrees_through(&self, other: &Self, order: Rational64) -> bool {
        let a: Vec<_> = self.iter().filter(|m| m.0 <= order).collect();
        let b: Vec<_> = other.iter().filter(|m| m.0 <= order).collect();
        a == b
    }

    /// First monomial where the two series differ below `order`.
    pub fn first_difference(&self, other: &Self, order: Rational64) -> Option<(Rational64, u32)> {
        let diff = self.sub(other);
        let found = diff.iter().find(|m| m.0 <= order).map(|m| (m.0, m.1));
        found
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.iter().eq(other.iter())
    }
}

impl Eq for TruncatedSeries {}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, u, c) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = render_monomial(e, u);
            if mono.is_empty() {
                write!(f, "{}", super::render::render_scalar(c))?;
            } else if c.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", render_coefficient(c), mono)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^>{})", render_exponent(self.order))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Dense-in-t helpers for recurrences. The series must sit on an offset-0 grid.

pub(crate) fn dense_grades(s: &TruncatedSeries, order: Rational64) -> Vec<UPoly> {
    debug_assert!(s.offset.is_zero());
    let kmax = (order * rat(s.denom)).floor().to_integer();
    if kmax < 0 {
        return Vec::new();
    }
    let mut out = vec![UPoly::new(); kmax as usize + 1];
    for (&(k, u), c) in &s.terms {
        if (k as i64) <= kmax {
            out[k as usize].insert(u, c.clone());
        }
    }
    out
}

pub(crate) fn from_dense(
    denom: i64,
    offset: Rational64,
    order: Rational64,
    grades: &[UPoly],
) -> TruncatedSeries {
    let mut out = TruncatedSeries {
        denom,
        offset,
        order,
        terms: BTreeMap::new(),
    };
    for (k, poly) in grades.iter().enumerate() {
        for (&u, c) in poly {
            if !c.is_zero() && out.exponent(k as u32) <= order {
                out.terms.insert((k as u32, u), c.clone());
            }
        }
    }
    out
}

/// `acc += scale * a * b`.
pub(crate) fn upoly_mul_acc(acc: &mut UPoly, a: &UPoly, b: &UPoly, scale: &Scalar) {
    for (ua, ca) in a {
        for (ub, cb) in b {
            let p = &(ca * cb) * scale;
            let slot = acc.entry(ua + ub).or_default();
            *slot = &*slot + &p;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn geometric_inverse_round_trip() {
        let n = rat(6);
        let one_minus = TruncatedSeries::one_minus(&Scalar::q(), rat(1), 0, n);
        let geo = TruncatedSeries::geometric(&Scalar::q(), rat(1), 0, n);
        assert_eq!(one_minus.mul(&geo), TruncatedSeries::one(n));
        assert_eq!(one_minus.inverse().unwrap(), geo);
    }

    #[test]
    fn alignment_of_fractional_grids() {
        let a = TruncatedSeries::monomial(Scalar::one(), r(1, 2), 0, rat(3));
        let b = TruncatedSeries::monomial(Scalar::q(), r(2, 3), 1, rat(2));
        let s = a.add(&b);
        assert_eq!(s.order(), rat(2));
        assert_eq!(s.coeff(r(1, 2), 0), Scalar::one());
        assert_eq!(s.coeff(r(2, 3), 1), Scalar::q());
        let p = a.mul(&b);
        assert_eq!(p.coeff(r(7, 6), 1), Scalar::q());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let geo = TruncatedSeries::geometric(&Scalar::one(), r(1, 2), 0, rat(2));
        assert_eq!(geo.num_terms(), 5);
        assert_eq!(geo.truncate(rat(1)).num_terms(), 3);
        let sq = geo.mul(&geo);
        // coefficients of 1/(1-x)^2 in x = t^(1/2)
        for j in 0..=4 {
            assert_eq!(sq.coeff(r(j, 2), 0), Scalar::integer(j + 1));
        }
    }

    #[test]
    fn negative_offsets_shrink_order() {
        let a = TruncatedSeries::geometric(&Scalar::one(), rat(1), 0, rat(4));
        let b = TruncatedSeries::monomial(Scalar::one(), rat(-1), 0, rat(4))
            .add(&TruncatedSeries::one(rat(4)));
        let p = a.mul(&b);
        assert_eq!(p.order(), rat(3));
    }

    #[test]
    fn inverse_with_leading_monomial() {
        let n = rat(5);
        let f = TruncatedSeries::from_terms(
            [(rat(1), 0, Scalar::integer(2)), (rat(2), 1, Scalar::q())],
            n,
        );
        let inv = f.inverse().unwrap();
        let prod = f.mul(&inv);
        assert!(prod.agrees_through(&TruncatedSeries::one(n), prod.order()));
        assert!(TruncatedSeries::zero(n).inverse().is_err());
    }

    #[test]
    fn substitution_by_s_power() {
        let f = TruncatedSeries::from_terms(
            [(rat(0), 0, Scalar::one()), (rat(2), 0, Scalar::one())],
            rat(3),
        );
        let g = f.scale_t_by_s_power(-2).unwrap();
        assert_eq!(g.coeff(rat(2), 0), Scalar::q_pow(-2));
        let h = TruncatedSeries::monomial(Scalar::one(), r(1, 2), 0, rat(1));
        assert!(h.scale_t_by_s_power(1).is_err());
    }

    #[test]
    fn display_format() {
        let f = TruncatedSeries::from_terms(
            [
                (rat(0), 0, Scalar::one()),
                (r(3, 2), 2, Scalar::q() + Scalar::one()),
            ],
            rat(2),
        );
        assert_eq!(f.to_string(), "1 + (q+1)*t^{3/2} u^2 + O(t^>2)");
    }
}
