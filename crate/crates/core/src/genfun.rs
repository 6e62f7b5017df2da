//! Generating functions of slope `f`-semistable sheaves on a ruled surface.
//!
//! Two gradings are used. In the `pfa` normalization the exponent of `t` is `r Δ`, which is
//! invariant under twisting; in the `pf` normalization it is `-ch2` and each coefficient
//! carries `q^{χ(γ,γ)/2}`. Both are stack measures.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::algebra::curve::{CurveData, CurveMode};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::surface::{DivisorClass, Polarization, RuledSurface};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    /// Locally free sheaves.
    Lf,
    /// Torsion free sheaves.
    Tf,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Lf => "lf",
            Flag::Tf => "tf",
        })
    }
}

impl FromStr for Flag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lf" => Ok(Flag::Lf),
            "tf" => Ok(Flag::Tf),
            _ => Err(Error::Format(format!("unknown flag {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    Pf,
    Pfa,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Pf => "pf",
            Normalization::Pfa => "pfa",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pf" => Ok(Normalization::Pf),
            "pfa" => Ok(Normalization::Pfa),
            _ => Err(Error::Format(format!("unknown normalization {s:?}"))),
        }
    }
}

/// A generating function in `t` for fixed surface, curve, rank, `c1`, polarization and flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSeries {
    pub surface: RuledSurface,
    pub curve: CurveData,
    pub rank: i64,
    pub c1: DivisorClass,
    pub polarization: Polarization,
    pub flag: Flag,
    pub normalization: Normalization,
    pub series: TruncatedSeries,
}

impl GenSeries {
    pub fn c1_square(&self) -> i64 {
        self.surface.intersect(self.c1, self.c1)
    }

    /// `exponent - c2`: `(1-r) c1^2/(2r)` for `pfa`, `-c1^2/2` for `pf`.
    pub fn c2_offset(&self) -> Rational64 {
        let c = r64(self.c1_square());
        match self.normalization {
            Normalization::Pfa => r64(1 - self.rank) * c / r64(2 * self.rank),
            Normalization::Pf => -c / r64(2),
        }
    }

    pub fn c2_of(&self, exponent: Rational64) -> Rational64 {
        exponent - self.c2_offset()
    }

    pub fn exponent_of(&self, c2: i64) -> Rational64 {
        r64(c2) + self.c2_offset()
    }

    /// Whether `r` fails to divide `f·c1`, which forces every moduli stack to be empty.
    pub fn divisibility_empty(&self) -> bool {
        self.rank > 0 && self.c1.fiber_degree() % self.rank != 0
    }
}

/// `mu(Bun_{C,r}) = P_C(1)/(q-1) prod_{i=1}^{r-1} Z_C(q^i)`.
pub fn bun_measure(c: &CurveData, r: i64) -> Result<Scalar> {
    if r < 1 {
        return Err(Error::InvalidArgument(format!("rank must be positive, got {r}")));
    }
    let mut acc = &c.jacobian() / &(&Scalar::q() - &Scalar::one());
    for i in 1..r {
        acc = &acc * &c.zeta_value(&Scalar::q_pow(i))?;
    }
    Ok(acc)
}

/// `prod_{k=1}^{N} factor(k)`, checking that the next factor is 1 through `N`.
fn k_product<F>(order: i64, mut factor: F) -> Result<TruncatedSeries>
where
    F: FnMut(u32) -> Result<TruncatedSeries>,
{
    let ord = r64(order);
    let mut acc = TruncatedSeries::one(ord);
    let mut k = 1u32;
    while (k as i64) <= order {
        acc = acc.mul(&factor(k)?);
        k += 1;
    }
    if factor(k)?.truncate(ord) != TruncatedSeries::one(ord) {
        return Err(Error::Internal(format!("factor k={k} contributes below t^{order}")));
    }
    Ok(acc)
}

/// `Z_C(q^e t^k)` through `order`.
fn zeta_at(c: &CurveData, e: i64, k: u32, order: i64) -> TruncatedSeries {
    c.zeta_series(&Scalar::q_pow(e), k, r64(order))
}

/// `H_r(t) = prod_{k>=1} prod_{i=1}^r Z_C(q^{kr-i} t^k) Z_C(q^{kr-i+1} t^k)`.
pub fn quot_series(c: &CurveData, r: i64, order: i64) -> Result<TruncatedSeries> {
    k_product(order, |k| {
        let k64 = k as i64;
        let mut f = TruncatedSeries::one(r64(order));
        for i in 1..=r {
            f = f
                .mul(&zeta_at(c, k64 * r - i, k, order))
                .mul(&zeta_at(c, k64 * r - i + 1, k, order));
        }
        Ok(f)
    })
}

/// The `f`-polarized series in `pfa` normalization.
pub fn pfa_f(
    s: &RuledSurface,
    c: &CurveData,
    r: i64,
    c1: DivisorClass,
    flag: Flag,
    order: i64,
) -> Result<GenSeries> {
    if r < 1 {
        return Err(Error::InvalidArgument(format!("rank must be positive, got {r}")));
    }
    if order < 0 {
        return Err(Error::InvalidArgument(format!("order must be >= 0, got {order}")));
    }
    if c.genus() != s.genus() {
        return Err(Error::InvalidArgument(format!(
            "curve genus {} does not match surface genus {}",
            c.genus(),
            s.genus()
        )));
    }
    let mut out = GenSeries {
        surface: *s,
        curve: c.clone(),
        rank: r,
        c1,
        polarization: Polarization::fiber(),
        flag,
        normalization: Normalization::Pfa,
        series: TruncatedSeries::zero(r64(order)),
    };
    if out.divisibility_empty() {
        return Ok(out);
    }
    let bun = bun_measure(c, r)?;
    let prod = match flag {
        Flag::Lf => k_product(order, |k| {
            let rk = r * k as i64;
            let mut f = TruncatedSeries::one(r64(order));
            for i in 1..r {
                f = f
                    .mul(&zeta_at(c, rk + i, k, order))
                    .mul(&zeta_at(c, rk - i, k, order).inverse()?);
            }
            Ok(f)
        })?,
        Flag::Tf => k_product(order, |k| {
            let rk = r * k as i64;
            let mut f = TruncatedSeries::one(r64(order));
            for i in -r..r {
                f = f.mul(&zeta_at(c, rk + i, k, order));
            }
            Ok(f)
        })?,
    };
    out.series = prod.scale(&bun);
    Ok(out)
}

/// `pf(t) = q^{r^2 χ(O_S)/2} t^{-c1^2/(2r)} pfa(q^{-r} t)`.
pub fn pf_from_pfa(g: &GenSeries) -> Result<GenSeries> {
    if g.normalization != Normalization::Pfa {
        return Err(Error::InvalidArgument("input is not pfa-normalized".into()));
    }
    let r = g.rank;
    let prefactor = Scalar::s_pow(r * r * g.surface.chi_o());
    let shift = -r64(g.c1_square()) / r64(2 * r);
    let series = g
        .series
        .scale_t_by_s_power(-2 * r)?
        .scale(&prefactor)
        .mul_monomial(&Scalar::one(), shift, 0);
    Ok(GenSeries {
        normalization: Normalization::Pf,
        series,
        ..g.clone()
    })
}

/// Inverse of [`pf_from_pfa`].
pub fn pfa_from_pf(g: &GenSeries) -> Result<GenSeries> {
    if g.normalization != Normalization::Pf {
        return Err(Error::InvalidArgument("input is not pf-normalized".into()));
    }
    let r = g.rank;
    let prefactor = Scalar::s_pow(-r * r * g.surface.chi_o());
    let shift = r64(g.c1_square()) / r64(2 * r);
    let series = g
        .series
        .mul_monomial(&prefactor, shift, 0)
        .scale_t_by_s_power(2 * r)?;
    Ok(GenSeries {
        normalization: Normalization::Pfa,
        series,
        ..g.clone()
    })
}

/// Checks `pfa_tf = pfa_lf · H_r(t)` through `order`.
pub fn tf_lf_consistency(
    s: &RuledSurface,
    c: &CurveData,
    r: i64,
    c1: DivisorClass,
    order: i64,
) -> Result<bool> {
    let tf = pfa_f(s, c, r, c1, Flag::Tf, order)?;
    let lf = pfa_f(s, c, r, c1, Flag::Lf, order)?;
    let h = quot_series(c, r, order)?;
    Ok(tf.series == lf.series.mul(&h).truncate(r64(order)))
}

/// One `c2` row: the coefficient as integer weights of `s^lowest, s^{lowest+1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRow {
    pub c2: Rational64,
    pub lowest: i64,
    pub coeffs: Vec<num_bigint::BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub rows: Vec<BettiRow>,
    /// `c2` values whose coefficient is not a Laurent polynomial in `s`.
    pub non_polynomial: Vec<(Rational64, Scalar)>,
}

impl BettiTable {
    /// Lowest and highest `s`-power over all rows.
    pub fn s_range(&self) -> Option<(i64, i64)> {
        let lo = self.rows.iter().map(|r| r.lowest).min()?;
        let hi = self
            .rows
            .iter()
            .map(|r| r.lowest + r.coeffs.len() as i64 - 1)
            .max()?;
        Some((lo, hi))
    }
}

/// Rows `(c2, coefficients in s)`; multiplies by `q-1` first when `gerbe` is set.
pub fn betti_extract(g: &GenSeries, gerbe: bool) -> Result<BettiTable> {
    if g.series.max_u_exponent() > 0 {
        return Err(Error::InvalidArgument("series still depends on u".into()));
    }
    let factor = if gerbe {
        &Scalar::q() - &Scalar::one()
    } else {
        Scalar::one()
    };
    let mut rows = Vec::new();
    let mut non_polynomial = Vec::new();
    for (e, _, c) in g.series.iter() {
        let c = c * &factor;
        let c2 = g.c2_of(e);
        match c.as_laurent() {
            Some(p) if !p.is_zero() => rows.push(BettiRow {
                c2,
                lowest: p.valuation(),
                coeffs: p.coeffs().to_vec(),
            }),
            Some(_) => {}
            None => non_polynomial.push((c2, c)),
        }
    }
    Ok(BettiTable {
        rows,
        non_polynomial,
    })
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    g: u32,
    e: i64,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    mode: String,
    g: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weil: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GenSeriesJson {
    surface: SurfaceJson,
    curve: CurveJson,
    rank: i64,
    c1: [i64; 2],
    polarization: [String; 2],
    flag: String,
    normalization: String,
    offset: String,
    denominator: i64,
    order: String,
    terms: Vec<(u32, String)>,
}

fn parse_rational(s: &str) -> Result<Rational64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("bad rational {s:?}")))
}

impl GenSeries {
    pub fn to_json_value(&self) -> Result<serde_json::Value> {
        if self.series.max_u_exponent() > 0 {
            return Err(Error::Format("only series in t can be exported".into()));
        }
        let series = self.series.canonical();
        let weil = match self.curve.mode() {
            CurveMode::Poincare => None,
            CurveMode::Explicit => Some(self.curve.weil().coeffs().iter().map(|c| c.to_string()).collect()),
        };
        let j = GenSeriesJson {
            surface: SurfaceJson {
                g: self.surface.genus(),
                e: self.surface.e(),
            },
            curve: CurveJson {
                mode: self.curve.mode().to_string(),
                g: self.curve.genus(),
                weil,
            },
            rank: self.rank,
            c1: [self.c1.a, self.c1.b],
            polarization: [self.polarization.m().to_string(), self.polarization.n().to_string()],
            flag: self.flag.to_string(),
            normalization: self.normalization.to_string(),
            offset: series.offset().to_string(),
            denominator: series.denom(),
            order: series.order().to_string(),
            terms: series
                .grid_terms()
                .map(|(&(k, _), c)| (k, c.to_string()))
                .collect(),
        };
        serde_json::to_value(j).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.to_json_value()?).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: GenSeriesJson = serde_json::from_value(v).map_err(|e| Error::Format(e.to_string()))?;
        let surface = RuledSurface::new(j.surface.g, j.surface.e)?;
        let curve = match j.curve.mode.as_str() {
            "poincare" => CurveData::poincare(j.curve.g),
            "explicit" => {
                let coeffs = j
                    .curve
                    .weil
                    .ok_or_else(|| Error::Format("explicit curve without weil coefficients".into()))?
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<Scalar>>>()?;
                CurveData::explicit(j.curve.g, coeffs)?
            }
            m => return Err(Error::Format(format!("unknown curve mode {m:?}"))),
        };
        let terms = j
            .terms
            .iter()
            .map(|(k, c)| Ok(((*k, 0), c.parse::<Scalar>()?)))
            .collect::<Result<Vec<_>>>()?;
        let series = TruncatedSeries::from_grid(
            j.denominator,
            parse_rational(&j.offset)?,
            parse_rational(&j.order)?,
            terms,
        )?;
        Ok(GenSeries {
            surface,
            curve,
            rank: j.rank,
            c1: DivisorClass::new(j.c1[0], j.c1[1]),
            polarization: Polarization::new(
                parse_rational(&j.polarization[0])?,
                parse_rational(&j.polarization[1])?,
            )?,
            flag: j.flag.parse()?,
            normalization: j.normalization.parse()?,
            series,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_json_value(v)
    }
}

/// `μ(Jac C) · μ(Hilb^n S)` generating function, `P_C(1) · Exp(μ(S) t/(1-qt))`.
pub fn gottsche_series(c: &CurveData, order: i64) -> Result<TruncatedSeries> {
    let ord = r64(order);
    let mu_s = &c.motive() * &(&Scalar::one() + &Scalar::q());
    let inner = TruncatedSeries::geometric(&Scalar::q(), r64(1), 0, ord).mul_monomial(&mu_s, r64(1), 0);
    Ok(inner.truncate(ord).exp_pleth()?.scale(&c.jacobian()))
}

/// The Laurent polynomial of a row, for display.
pub fn row_polynomial(row: &BettiRow) -> LaurentPoly {
    LaurentPoly::from_parts(row.lowest, row.coeffs.clone())
}
