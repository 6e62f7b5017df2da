//! The quantum affine plane of a surface and wall-crossing of `pf` tables across a slope
//! wall `H`, from either side `H ± εH'`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::curve::CurveData;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::genfun::{pf_from_pfa, pfa_f, Flag, GenSeries, Normalization};
use crate::surface::{DivisorClass, Polarization, RuledSurface};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// `coeff · x^γ` with `γ = (r, c1, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAffineTerm {
    pub rank: i64,
    pub c1: DivisorClass,
    pub d: Rational64,
    pub coeff: Scalar,
}

impl QAffineTerm {
    pub fn new(rank: i64, c1: DivisorClass, d: Rational64, coeff: Scalar) -> Self {
        Self { rank, c1, d, coeff }
    }

    /// Membership of `γ` in the positive cone `Γ_+`.
    pub fn is_positive(&self, s: &RuledSurface) -> bool {
        if self.rank > 0 {
            return true;
        }
        if self.rank < 0 {
            return false;
        }
        if self.c1 != DivisorClass::ZERO {
            return s.is_effective(self.c1);
        }
        !self.d.is_negative()
    }
}

/// `x^γ ∘ x^γ' = q^{<γ,γ'>/2} x^{γ+γ'}`.
pub fn qaffine_mul(a: &QAffineTerm, b: &QAffineTerm, s: &RuledSurface) -> QAffineTerm {
    let pairing = s.antisym_rc(a.rank, a.c1, b.rank, b.c1);
    QAffineTerm {
        rank: a.rank + b.rank,
        c1: a.c1 + b.c1,
        d: a.d + b.d,
        coeff: &(&a.coeff * &b.coeff) * &Scalar::s_pow(pairing),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Plus => "plus",
            Direction::Minus => "minus",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Direction::Plus),
            "minus" | "-" => Ok(Direction::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown direction {s:?}"))),
        }
    }
}

/// A wall `H` together with the perturbation `H'` and the side `H_± = H ± εH'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WallContext {
    pub surface: RuledSurface,
    pub h: Polarization,
    pub h_prime: Polarization,
    pub direction: Direction,
}

impl WallContext {
    /// Requires `H·K_S < 0` and an ample `H`; the latter makes the equal-slope slice
    /// negative definite so that only finitely many decompositions contribute.
    pub fn new(surface: RuledSurface, h: Polarization, h_prime: Polarization, direction: Direction) -> Result<Self> {
        let hk = surface.pol_dot_canonical(h);
        if !hk.is_negative() {
            return Err(Error::WallNotNegative(hk.to_string()));
        }
        if !h.is_ample() {
            return Err(Error::InvalidArgument(format!("wall {h} is not ample")));
        }
        if h.same_ray(&h_prime) {
            return Err(Error::InvalidArgument("H' must not be proportional to H".into()));
        }
        Ok(Self {
            surface,
            h,
            h_prime,
            direction,
        })
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        Self { direction, ..*self }
    }

    fn slope_h(&self, r: i64, c: DivisorClass) -> Rational64 {
        self.surface.pol_dot(self.h, c) / r64(r)
    }

    fn slope_h_prime(&self, r: i64, c: DivisorClass) -> Rational64 {
        self.surface.pol_dot(self.h_prime, c) / r64(r)
    }

    /// Whether `next` may follow `prev` in a decomposition for this side.
    fn ordered(&self, prev: Rational64, next: Rational64) -> bool {
        match self.direction {
            Direction::Plus => prev > next,
            Direction::Minus => prev < next,
        }
    }

    /// `-D^2/(2 r_i)` for `D = c_i - (r_i/r) c`, which lies in `H^⊥` when the slopes agree.
    /// With `D = x C0 + y f` and `H·D = 0` one has `D^2 = -x^2 H^2/m^2`.
    pub fn defect(&self, r: i64, c: DivisorClass, ri: i64, ci: DivisorClass) -> Rational64 {
        let x = r64(ci.a) - r64(ri * c.a) / r64(r);
        let m = self.h.m();
        x * x * self.surface.pol_square(self.h) / (r64(2 * ri) * m * m)
    }

    /// Classes of rank `ri` on the slope of `(r, c)` with defect at most `budget`.
    fn pieces(&self, r: i64, c: DivisorClass, ri: i64, budget: Rational64) -> Vec<DivisorClass> {
        if budget.is_negative() {
            return Vec::new();
        }
        let m = self.h.m();
        let n = self.h.n();
        let mu = self.slope_h(r, c);
        let limit = r64(2 * ri) * budget * m * m / self.surface.pol_square(self.h);
        let center = (r64(ri * c.a) / r64(r)).to_f64().unwrap_or(0.0);
        let radius = limit.to_f64().unwrap_or(0.0).sqrt();
        let lo = (center - radius).floor() as i64 - 1;
        let hi = (center + radius).ceil() as i64 + 1;
        let mut out = Vec::new();
        for a in lo..=hi {
            let b = (r64(ri) * mu - n * r64(a)) / m;
            if !b.is_integer() {
                continue;
            }
            let ci = DivisorClass::new(a, b.to_integer());
            if self.defect(r, c, ri, ci) <= budget {
                out.push(ci);
            }
        }
        out
    }

    /// Ordered decompositions `(r, c) = sum (r_i, c_i)` with equal `H`-slope, strictly
    /// monotone `H'`-slope for this side, and total defect at most `budget`.
    pub fn decompositions(&self, r: i64, c: DivisorClass, budget: Rational64) -> Vec<Vec<(i64, DivisorClass)>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.decompose(r, c, r, c, None, budget, &mut cur, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn decompose(
        &self,
        r: i64,
        c: DivisorClass,
        rem_r: i64,
        rem_c: DivisorClass,
        prev: Option<Rational64>,
        left: Rational64,
        cur: &mut Vec<(i64, DivisorClass)>,
        out: &mut Vec<Vec<(i64, DivisorClass)>>,
    ) {
        let fits = |s: Rational64| prev.is_none_or(|p| self.ordered(p, s));
        let last = self.defect(r, c, rem_r, rem_c);
        if last <= left && fits(self.slope_h_prime(rem_r, rem_c)) {
            let mut d = cur.clone();
            d.push((rem_r, rem_c));
            out.push(d);
        }
        for ri in 1..rem_r {
            for ci in self.pieces(r, c, ri, left) {
                let sl = self.slope_h_prime(ri, ci);
                if !fits(sl) {
                    continue;
                }
                cur.push((ri, ci));
                let used = self.defect(r, c, ri, ci);
                self.decompose(r, c, rem_r - ri, rem_c - ci, Some(sl), left - used, cur, out);
                cur.pop();
            }
        }
    }

    /// `q^{1/2 sum_{i<j} K_S(r_j c_i - r_i c_j)}`, the coefficient of the ordered product.
    pub fn decomposition_factor(&self, parts: &[(i64, DivisorClass)]) -> Scalar {
        parts
            .iter()
            .map(|&(r, c)| QAffineTerm::new(r, c, Rational64::zero(), Scalar::one()))
            .reduce(|a, b| qaffine_mul(&a, &b, &self.surface))
            .map(|t| t.coeff)
            .unwrap_or_else(Scalar::one)
    }
}

/// `pf` series keyed by `(rank, c1)`.
pub type PfTable = BTreeMap<(i64, DivisorClass), TruncatedSeries>;

fn lookup(table: &PfTable, r: i64, c: DivisorClass) -> Result<&TruncatedSeries> {
    table.get(&(r, c)).ok_or(Error::MissingSeries {
        rank: r,
        c1: c.to_string(),
    })
}

/// A wall-crossing job for a target class `(r, c)`; `order` bounds `rΔ` of the target.
///
/// Every other class `γ` on the slope is tracked through `rΔ(γ) <= order - defect(γ)`,
/// which is exactly what the target needs.
#[derive(Clone, Debug)]
pub struct WallCrossing {
    pub ctx: WallContext,
    pub rank: i64,
    pub c1: DivisorClass,
    pub order: i64,
}

impl WallCrossing {
    pub fn new(ctx: WallContext, rank: i64, c1: DivisorClass, order: i64) -> Result<Self> {
        if rank < 1 {
            return Err(Error::InvalidArgument(format!("rank must be positive, got {rank}")));
        }
        if order < 0 {
            return Err(Error::InvalidArgument(format!("order must be >= 0, got {order}")));
        }
        Ok(Self { ctx, rank, c1, order })
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        Self {
            ctx: self.ctx.with_direction(direction),
            ..self.clone()
        }
    }

    /// `order - defect(γ)`: the `rΔ`-order to which `γ` is needed.
    pub fn class_order(&self, r: i64, c: DivisorClass) -> Rational64 {
        r64(self.order) - self.ctx.defect(self.rank, self.c1, r, c)
    }

    /// The same bound in the `-ch2` grading of `pf`.
    pub fn class_pf_order(&self, r: i64, c: DivisorClass) -> Rational64 {
        let c2 = self.ctx.surface.intersect(c, c);
        self.class_order(r, c) - Rational64::new(c2, 2 * r)
    }

    /// The target and every smaller-rank class on its slope with defect `<= order + extra`.
    pub fn classes(&self, extra: i64) -> Vec<(i64, DivisorClass)> {
        let budget = r64(self.order + extra);
        let mut out = Vec::new();
        for ri in 1..self.rank {
            for ci in self.ctx.pieces(self.rank, self.c1, ri, budget) {
                out.push((ri, ci));
            }
        }
        out.push((self.rank, self.c1));
        out
    }

    fn crossing_sum(
        &self,
        r: i64,
        c: DivisorClass,
        extra: i64,
        proper_only: bool,
        factor: &dyn Fn(i64, DivisorClass) -> Result<TruncatedSeries>,
    ) -> Result<TruncatedSeries> {
        let target = self.class_pf_order(r, c);
        let mut acc = TruncatedSeries::zero(target);
        for parts in self.ctx.decompositions(r, c, self.class_order(r, c) + r64(extra)) {
            if proper_only && parts.len() == 1 {
                continue;
            }
            let mut term: Option<TruncatedSeries> = None;
            for &(ri, ci) in &parts {
                let f = factor(ri, ci)?;
                term = Some(match term {
                    None => f,
                    Some(t) => t.mul(&f),
                });
            }
            if let Some(t) = term {
                acc = acc.add(&t.scale(&self.ctx.decomposition_factor(&parts)));
            }
        }
        if acc.order() < target {
            return Err(Error::Internal(format!(
                "factor series for ({r}, {c}) are too short: known through {}, need {target}",
                acc.order()
            )));
        }
        Ok(acc.truncate(target))
    }

    /// `pf_H` from `pf_{H_±}` (the side is the context direction), on [`Self::classes`]`(0)`.
    pub fn forward(&self, side: &PfTable) -> Result<PfTable> {
        self.forward_with_extra(side, 0)
    }

    /// As [`Self::forward`], enumerating decompositions with defect up to `extra` more.
    pub fn forward_with_extra(&self, side: &PfTable, extra: i64) -> Result<PfTable> {
        let lookup_side = |r, c| lookup(side, r, c).cloned();
        self.classes(0)
            .into_iter()
            .map(|(r, c)| Ok(((r, c), self.crossing_sum(r, c, extra, false, &lookup_side)?)))
            .collect()
    }

    /// `pf_{H_±}` from `pf_H` by peeling off proper decompositions, rank by rank.
    pub fn inverse(&self, wall: &PfTable) -> Result<PfTable> {
        let mut classes = self.classes(0);
        classes.sort_by_key(|&(r, c)| (r, c));
        let mut out = PfTable::new();
        for (r, c) in classes {
            let known = |ri, ci| lookup(&out, ri, ci).cloned();
            let correction = self.crossing_sum(r, c, 0, true, &known)?;
            let value = lookup(wall, r, c)?
                .truncate(self.class_pf_order(r, c))
                .sub(&correction);
            out.insert((r, c), value);
        }
        Ok(out)
    }

    /// `pf_{H_-}` from `pf_{H_+}` or the other way round, passing through `H`.
    pub fn cross(&self, side: &PfTable) -> Result<PfTable> {
        let other = match self.ctx.direction {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        };
        let wall = self.forward(side)?;
        self.with_direction(other).inverse(&wall)
    }

    /// Enlarging the decomposition bound by one must not change any coefficient.
    pub fn self_check(&self, side: &PfTable) -> Result<bool> {
        Ok(self.forward_with_extra(side, 0)? == self.forward_with_extra(side, 1)?)
    }

    /// Restricts a table to [`Self::classes`]`(extra)`, each truncated to its order.
    pub fn restrict(&self, table: &PfTable, extra: i64) -> Result<PfTable> {
        self.classes(extra)
            .into_iter()
            .map(|(r, c)| Ok(((r, c), lookup(table, r, c)?.truncate(self.class_pf_order(r, c)))))
            .collect()
    }

    /// Seed table on the `f` side: every class from the `f`-polarized formula.
    pub fn f_side_seeds(&self, curve: &CurveData, flag: Flag, extra: i64) -> Result<PfTable> {
        self.classes(extra)
            .into_iter()
            .map(|(r, c)| {
                let pfa = pfa_f(&self.ctx.surface, curve, r, c, flag, self.order)?;
                let pf = pf_from_pfa(&pfa)?;
                Ok(((r, c), pf.series.truncate(self.class_pf_order(r, c))))
            })
            .collect()
    }
}

/// A [`PfTable`] with the data needed to export it as `GenSeries` records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallTable {
    pub surface: RuledSurface,
    pub curve: CurveData,
    pub flag: Flag,
    pub polarization: Polarization,
    pub entries: PfTable,
}

impl WallTable {
    pub fn records(&self) -> Vec<GenSeries> {
        self.entries
            .iter()
            .map(|(&(r, c), s)| GenSeries {
                surface: self.surface,
                curve: self.curve.clone(),
                rank: r,
                c1: c,
                polarization: self.polarization,
                flag: self.flag,
                normalization: Normalization::Pf,
                series: s.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let values = self
            .records()
            .iter()
            .map(|g| g.to_json_value())
            .collect::<Result<Vec<_>>>()?;
        serde_json::to_string_pretty(&values).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let values: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let records = values
            .into_iter()
            .map(GenSeries::from_json_value)
            .collect::<Result<Vec<_>>>()?;
        let first = records
            .first()
            .ok_or_else(|| Error::Format("empty table".into()))?
            .clone();
        let mut entries = PfTable::new();
        for g in records {
            if g.normalization != Normalization::Pf {
                return Err(Error::Format(format!("entry ({}, {}) is not pf-normalized", g.rank, g.c1)));
            }
            if g.surface != first.surface || g.curve != first.curve || g.flag != first.flag {
                return Err(Error::Format("entries disagree on surface, curve or flag".into()));
            }
            if g.polarization != first.polarization {
                return Err(Error::Format("entries disagree on polarization".into()));
            }
            if entries.insert((g.rank, g.c1), g.series).is_some() {
                return Err(Error::Format(format!("duplicate entry ({}, {})", g.rank, g.c1)));
            }
        }
        Ok(Self {
            surface: first.surface,
            curve: first.curve,
            flag: first.flag,
            polarization: first.polarization,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma1_wall(direction: Direction) -> WallContext {
        WallContext::new(
            RuledSurface::hirzebruch(1),
            Polarization::from_ints(2, 3).unwrap(),
            Polarization::fiber(),
            direction,
        )
        .unwrap()
    }

    #[test]
    fn qaffine_examples() {
        let s = RuledSurface::hirzebruch(1);
        let a = QAffineTerm::new(1, DivisorClass::ZERO, r64(0), Scalar::integer(2));
        let b = QAffineTerm::new(1, DivisorClass::F, r64(0), Scalar::integer(3));
        assert_eq!(qaffine_mul(&a, &a, &s).coeff, Scalar::integer(4));
        let ab = qaffine_mul(&a, &b, &s);
        let ba = qaffine_mul(&b, &a, &s);
        assert_eq!(&ab.coeff * &ba.coeff, Scalar::integer(36));
        // K = (-2,-3); <a,b> = K·(0·... - f) = -K·f = 2
        assert_eq!(ab.coeff, &Scalar::integer(6) * &Scalar::q());
        assert_eq!(ab.c1, DivisorClass::F);
    }

    #[test]
    fn wall_requirements() {
        let s = RuledSurface::hirzebruch(1);
        let f = Polarization::fiber();
        assert!(WallContext::new(s, f, Polarization::from_ints(1, 1).unwrap(), Direction::Plus).is_err());
        let bad = RuledSurface::new(3, 0).unwrap();
        let h = Polarization::from_ints(1, 1).unwrap();
        assert!(matches!(
            WallContext::new(bad, h, f, Direction::Plus),
            Err(Error::WallNotNegative(_))
        ));
    }

    #[test]
    fn decompositions_rank_two() {
        let ctx = sigma1_wall(Direction::Plus);
        let c = DivisorClass::new(0, 1);
        let ds = ctx.decompositions(2, c, r64(4));
        let h = ctx.h;
        assert!(ds.iter().any(|d| d.len() == 1));
        for d in ds.iter().filter(|d| d.len() == 2) {
            let (c1, c2) = (d[0].1, d[1].1);
            assert_eq!(c1 + c2, c);
            assert_eq!(ctx.surface.pol_dot(h, c1), r64(1));
            assert!(c1.a > c2.a);
        }
        assert!(ds.len() > 1);
        let minus = ctx.with_direction(Direction::Minus).decompositions(2, c, r64(4));
        assert_eq!(minus.len(), ds.len());
    }

    #[test]
    fn rank_one_is_identity() {
        let ctx = sigma1_wall(Direction::Plus);
        let wc = WallCrossing::new(ctx, 1, DivisorClass::new(1, 1), 3).unwrap();
        let seeds = wc.f_side_seeds(&CurveData::poincare(0), Flag::Tf, 0).unwrap();
        assert_eq!(wc.forward(&seeds).unwrap(), seeds);
        assert_eq!(wc.inverse(&seeds).unwrap(), seeds);
    }

    #[test]
    fn round_trip_rank_two() {
        let wc = WallCrossing::new(sigma1_wall(Direction::Plus), 2, DivisorClass::new(0, 1), 4).unwrap();
        let seeds = wc.f_side_seeds(&CurveData::poincare(0), Flag::Tf, 0).unwrap();
        let minus = wc.cross(&seeds).unwrap();
        assert_ne!(minus, seeds);
        let back = wc.with_direction(Direction::Minus).cross(&minus).unwrap();
        assert_eq!(back, seeds);
    }

    #[test]
    fn self_check_passes() {
        let wc = WallCrossing::new(sigma1_wall(Direction::Plus), 2, DivisorClass::new(0, 1), 4).unwrap();
        let seeds = wc.f_side_seeds(&CurveData::poincare(0), Flag::Lf, 1).unwrap();
        assert!(wc.self_check(&seeds).unwrap());
        let mut short = seeds.clone();
        short.remove(&(1, DivisorClass::new(1, -1)));
        assert!(matches!(wc.forward(&short), Err(Error::MissingSeries { .. })));
    }

    #[test]
    fn table_json_round_trip() {
        let wc = WallCrossing::new(sigma1_wall(Direction::Plus), 2, DivisorClass::new(0, 1), 1).unwrap();
        let curve = CurveData::poincare(0);
        let t = WallTable {
            surface: wc.ctx.surface,
            curve: curve.clone(),
            flag: Flag::Tf,
            polarization: wc.ctx.h,
            entries: wc.f_side_seeds(&curve, Flag::Tf, 0).unwrap(),
        };
        assert_eq!(WallTable::from_json(&t.to_json().unwrap()).unwrap(), t);
    }
}
