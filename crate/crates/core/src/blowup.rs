//! Ratio of `pf` series on a surface and on its one-point blow-up.

use num_rational::Rational64;

use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncatedSeries;
use crate::error::{Error, Result};
use crate::genfun::{Flag, GenSeries, Normalization};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn check(r: i64, order: i64) -> Result<()> {
    if r < 1 {
        return Err(Error::InvalidArgument(format!("rank must be positive, got {r}")));
    }
    if order < 0 {
        return Err(Error::InvalidArgument(format!("order must be >= 0, got {order}")));
    }
    Ok(())
}

/// `sum_{a in Z^r, sum a_i = -m} q^{(ρ,a)} t^{(a,a)/2}` with `ρ_i = (r+1-2i)/2`.
pub fn blowup_theta(r: i64, m: i64, order: i64) -> Result<TruncatedSeries> {
    check(r, order)?;
    let ord = r64(order);
    // (a,a) <= 2N forces |a_i| <= sqrt(2N)
    let bound = (2 * order).isqrt() + 1;
    let mut terms = Vec::new();
    let mut a = vec![-bound; (r - 1) as usize];
    loop {
        let last = -m - a.iter().sum::<i64>();
        let mut full = a.clone();
        full.push(last);
        let norm: i64 = full.iter().map(|x| x * x).sum();
        let half = Rational64::new(norm, 2);
        if half <= ord {
            // q^{(ρ,a)} = s^{sum (r+1-2i) a_i}
            let w: i64 = full
                .iter()
                .enumerate()
                .map(|(i, x)| (r - 1 - 2 * i as i64) * x)
                .sum();
            terms.push((half, 0u32, Scalar::s_pow(w)));
        }
        let mut i = 0;
        loop {
            if i == a.len() {
                return Ok(TruncatedSeries::from_terms(terms, ord));
            }
            a[i] += 1;
            if a[i] <= bound {
                break;
            }
            a[i] = -bound;
            i += 1;
        }
    }
}

/// `prod_{k>=1} (1 - t^k)^{-r} · theta`.
pub fn blowup_ratio_tf(r: i64, m: i64, order: i64) -> Result<TruncatedSeries> {
    let theta = blowup_theta(r, m, order)?;
    let ord = r64(order);
    let mut acc = theta;
    for k in 1..=order {
        let g = TruncatedSeries::geometric(&Scalar::one(), r64(k), 0, ord);
        acc = acc.mul(&g.pow(r as u32));
    }
    Ok(acc.truncate(ord))
}

/// `prod_{k>=1} prod_{i=1}^{r-1} (1 - q^{-i} t^k)/(1 - t^k) · theta`.
pub fn blowup_ratio_lf(r: i64, m: i64, order: i64) -> Result<TruncatedSeries> {
    let theta = blowup_theta(r, m, order)?;
    let ord = r64(order);
    let mut acc = theta;
    for k in 1..=order {
        let g = TruncatedSeries::geometric(&Scalar::one(), r64(k), 0, ord);
        for i in 1..r {
            acc = acc
                .mul(&TruncatedSeries::one_minus(&Scalar::q_pow(-i), r64(k), 0, ord))
                .mul(&g);
        }
    }
    Ok(acc.truncate(ord))
}

/// A `pf` series on the blow-up of a ruled surface, for `c1' = π^*c1 - m C0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpSeries {
    pub base: GenSeries,
    pub m: i64,
    pub series: TruncatedSeries,
}

/// Multiplies a `pf` series by the blow-up ratio of its flag.
///
/// `order` bounds the exponent of the ratio, so the result is known through
/// `order + val(G)` or the order of `G`, whichever is smaller.
pub fn pullback_pf(g: &GenSeries, m: i64, order: i64) -> Result<BlownUpSeries> {
    if g.normalization != Normalization::Pf {
        return Err(Error::InvalidArgument("pullback needs a pf-normalized series".into()));
    }
    let ratio = match g.flag {
        Flag::Tf => blowup_ratio_tf(g.rank, m, order)?,
        Flag::Lf => blowup_ratio_lf(g.rank, m, order)?,
    };
    Ok(BlownUpSeries {
        base: g.clone(),
        m,
        series: g.series.mul(&ratio),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::curve::CurveData;
    use crate::genfun::{pf_from_pfa, pfa_f};
    use crate::surface::{DivisorClass, RuledSurface};

    #[test]
    fn theta_rank_one() {
        for m in -3..=3 {
            let th = blowup_theta(1, m, 6).unwrap();
            let e = Rational64::new(m * m, 2);
            let expect = TruncatedSeries::monomial(Scalar::one(), e, 0, r64(6));
            assert_eq!(th, expect, "m={m}");
        }
    }

    #[test]
    fn theta_rank_two() {
        let th = blowup_theta(2, 0, 4).unwrap();
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        let expect = TruncatedSeries::from_terms(
            [
                (r64(0), 0, Scalar::one()),
                (r64(1), 0, &q + &qi),
                (r64(4), 0, &Scalar::q_pow(2) + &Scalar::q_pow(-2)),
            ],
            r64(4),
        );
        assert_eq!(th, expect);
    }

    #[test]
    fn theta_reflection() {
        for r in 1..=3 {
            for m in -2..=2 {
                let a = blowup_theta(r, m, 5).unwrap();
                let b = blowup_theta(r, -m, 5).unwrap().map_coeffs(|c| c.invert_generator());
                assert_eq!(a, b, "r={r} m={m}");
            }
        }
    }

    #[test]
    fn rank_one_ratios() {
        let tf = blowup_ratio_tf(1, 0, 6).unwrap();
        let mut expect = TruncatedSeries::one(r64(6));
        for k in 1..=6 {
            expect = expect.mul(&TruncatedSeries::one_minus(&Scalar::one(), r64(k), 0, r64(6)).inverse().unwrap());
        }
        assert_eq!(tf, expect);
        for m in [-2, 1, 3] {
            let lf = blowup_ratio_lf(1, m, 6).unwrap();
            let e = Rational64::new(m * m, 2);
            assert_eq!(lf, TruncatedSeries::monomial(Scalar::one(), e, 0, r64(6)));
        }
    }

    #[test]
    fn tf_over_lf_matches_quot_ratio() {
        // Z of the blow-up gains a factor 1/(1 - q t); at t -> q^{-r} t that gives
        // prod_k prod_{i=0}^{r-1} 1/(1 - q^{-i} t^k).
        for r in 1..=3 {
            let ord = r64(5);
            let mut expect = TruncatedSeries::one(ord);
            for k in 1..=5 {
                for i in 0..r {
                    expect = expect.mul(&TruncatedSeries::geometric(&Scalar::q_pow(-i), r64(k), 0, ord));
                }
            }
            let tf = blowup_ratio_tf(r, 1, 5).unwrap();
            let lf = blowup_ratio_lf(r, 1, 5).unwrap();
            assert_eq!(tf, lf.mul(&expect).truncate(ord), "r={r}");
        }
    }

    #[test]
    fn pullback_rank_one() {
        let s = RuledSurface::hirzebruch(1);
        let c = CurveData::poincare(0);
        let g = pf_from_pfa(&pfa_f(&s, &c, 1, DivisorClass::ZERO, Flag::Lf, 4).unwrap()).unwrap();
        let b = pullback_pf(&g, 2, 4).unwrap();
        assert_eq!(b.series, g.series.mul_monomial(&Scalar::one(), r64(2), 0).truncate(r64(4)));
        let pfa = pfa_f(&s, &c, 1, DivisorClass::ZERO, Flag::Lf, 4).unwrap();
        assert!(pullback_pf(&pfa, 0, 4).is_err());
    }
}
