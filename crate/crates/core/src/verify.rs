//! Invariant suites, runnable from the command line.

use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::curve::CurveData;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncatedSeries;
use crate::blowup::{blowup_ratio_tf, blowup_theta};
use crate::error::{Error, Result};
use crate::genfun::{gottsche_series, pf_from_pfa, pfa_f, pfa_from_pf, tf_lf_consistency, Flag, GenSeries};
use crate::hall::{b_sum, f_coefficient, skew_derivation, straighten, straighten_random, BundleClass, HallElement};
use crate::phi::{heine_gauss_verify, phi_partial_sum, phi_product_rhs, phi_solve_linear};
use crate::quot::{g_count, g_oracle, sum_rule};
use crate::surface::{DivisorClass, Polarization, RuledSurface};
use crate::wallcross::{Direction, WallContext, WallCrossing};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hall,
    Phi,
    Quot,
    Genfun,
    Wallcross,
    Blowup,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["hall", "phi", "quot", "genfun", "wallcross", "blowup", "all"];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hall" => Suite::Hall,
            "phi" => Suite::Phi,
            "quot" => Suite::Quot,
            "genfun" => Suite::Genfun,
            "wallcross" => Suite::Wallcross,
            "blowup" => Suite::Blowup,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Result of one check: `Ok` carries a summary, `Err` a counterexample.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub result: std::result::Result<String, String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Ok(s) => write!(f, "PASS {}/{}: {}", self.suite, self.name, s),
            Err(s) => write!(f, "FAIL {}/{}: {}", self.suite, self.name, s),
        }
    }
}

type Check = std::result::Result<String, String>;
type NamedCheck = (&'static str, fn() -> Check);

fn run(suite: &'static str, checks: Vec<NamedCheck>) -> Vec<Outcome> {
    checks
        .into_iter()
        .map(|(name, f)| Outcome {
            suite,
            name,
            result: f(),
        })
        .collect()
}

pub fn run_suite(suite: Suite) -> Vec<Outcome> {
    match suite {
        Suite::Hall => run(
            "hall",
            vec![
                ("straightening", hall_straightening as fn() -> Check),
                ("associativity", hall_associativity),
                ("confluence", hall_confluence),
                ("skew-derivation", hall_skew_derivation),
            ],
        ),
        Suite::Quot => run(
            "quot",
            vec![
                ("oracle", quot_oracle as fn() -> Check),
                ("sum-rule", quot_sum_rule),
            ],
        ),
        Suite::Phi => run(
            "phi",
            vec![
                ("three-way", phi_three_way as fn() -> Check),
                ("heine-gauss", phi_heine_gauss),
            ],
        ),
        Suite::Genfun => run(
            "genfun",
            vec![
                ("gottsche", genfun_gottsche as fn() -> Check),
                ("tf-lf", genfun_tf_lf),
                ("divisibility", genfun_divisibility),
                ("zeta-functional-equation", genfun_zeta),
                ("c1-independence", genfun_c1_independence),
                ("pf-round-trip", genfun_pf_round_trip),
            ],
        ),
        Suite::Wallcross => run(
            "wallcross",
            vec![
                ("round-trip", wallcross_round_trip as fn() -> Check),
                ("rank-one", wallcross_rank_one),
                ("self-check", wallcross_self_check),
            ],
        ),
        Suite::Blowup => run(
            "blowup",
            vec![
                ("rank-one", blowup_rank_one as fn() -> Check),
                ("theta-rank-two", blowup_theta_rank_two),
                ("theta-reflection", blowup_reflection),
            ],
        ),
        Suite::All => [
            Suite::Hall,
            Suite::Quot,
            Suite::Phi,
            Suite::Genfun,
            Suite::Wallcross,
            Suite::Blowup,
        ]
        .into_iter()
        .flat_map(run_suite)
        .collect(),
    }
}

fn fail<T: fmt::Display>(e: T) -> String {
    e.to_string()
}

/// Basis triples with summand degrees in `[-3, 3]`: every triple of total rank `<= 4`.
pub fn associativity_triples() -> Vec<(BundleClass, BundleClass, BundleClass)> {
    let by_rank: Vec<Vec<BundleClass>> = (0..=2).map(|r| BundleClass::enumerate_rank(r, -3, 3)).collect();
    let mut out = Vec::new();
    for r1 in 1..=2usize {
        for r2 in 1..=2usize {
            for r3 in 1..=2usize {
                if r1 + r2 + r3 > 4 {
                    continue;
                }
                for x in &by_rank[r1] {
                    for y in &by_rank[r2] {
                        for z in &by_rank[r3] {
                            out.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

fn mul_elem(x: &HallElement, y: &HallElement) -> HallElement {
    x.mul(y)
}

pub fn check_associative(x: &BundleClass, y: &BundleClass, z: &BundleClass) -> bool {
    let (ex, ey, ez) = (HallElement::basis(x.clone()), HallElement::basis(y.clone()), HallElement::basis(z.clone()));
    mul_elem(&mul_elem(&ex, &ey), &ez) == mul_elem(&ex, &mul_elem(&ey, &ez))
}

fn hall_associativity() -> Check {
    let triples = associativity_triples();
    for (x, y, z) in &triples {
        if !check_associative(x, y, z) {
            return Err(format!("([{x}]∘[{y}])∘[{z}] != [{x}]∘([{y}]∘[{z}])"));
        }
    }
    // a sample with every factor up to rank 3
    let classes: Vec<BundleClass> = (1..=3).flat_map(|r| BundleClass::enumerate_rank(r, -3, 3)).collect();
    let mut rng = StdRng::seed_from_u64(7);
    let sample = 60;
    for _ in 0..sample {
        let pick = |rng: &mut StdRng| classes[rng.gen_range(0..classes.len())].clone();
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if !check_associative(&x, &y, &z) {
            return Err(format!("([{x}]∘[{y}])∘[{z}] != [{x}]∘([{y}]∘[{z}])"));
        }
    }
    Ok(format!("{} exhaustive triples and {sample} sampled rank <= 3 triples", triples.len()))
}

fn hall_straightening() -> Check {
    let e10 = straighten(&[1, 0]).map_err(fail)?;
    let want10 = HallElement::term("O(0)+O(1)".parse().map_err(fail)?, Scalar::q_pow(2));
    if e10 != want10 {
        return Err(format!("[O(1)]∘[O(0)] = {e10}"));
    }
    let e20 = straighten(&[2, 0]).map_err(fail)?;
    let mut want20 = HallElement::term("O(0)+O(2)".parse().map_err(fail)?, Scalar::q_pow(3));
    want20.add_term(
        "2O(1)".parse().map_err(fail)?,
        &Scalar::q() * &(&Scalar::q_pow(2) - &Scalar::one()),
    );
    if e20 != want20 {
        return Err(format!("[O(2)]∘[O(0)] = {e20}"));
    }
    Ok(format!("[O(2)]∘[O(0)] = {e20}"))
}

fn hall_confluence() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut count = 0;
    for len in 2..=5 {
        for _ in 0..20 {
            let w: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
            let a = straighten(&w).map_err(fail)?;
            let b = straighten_random(&w, &mut rng).map_err(fail)?;
            if a != b {
                return Err(format!("word {w:?} straightens to {a} and {b}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} random words agree under random rewriting schedules"))
}

fn hall_skew_derivation() -> Check {
    let mut count = 0;
    for r in 1..=3 {
        for d in -4..=4 {
            for n in -1..=1 {
                let lhs = skew_derivation(n, &b_sum(r, d, n));
                let rhs = b_sum(r + 1, d + n, n).scale(&f_coefficient(r));
                if lhs != rhs {
                    return Err(format!("δ_O({n})(B_({r},{d},{n})) = {lhs}, expected {rhs}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

/// Classes of rank `<= 2` with summand degrees in `[-2, 0]`.
pub fn quot_classes() -> Vec<BundleClass> {
    (1..=2).flat_map(|r| BundleClass::enumerate_rank(r, -2, 0)).collect()
}

fn quot_oracle() -> Check {
    let mut count = 0;
    for a in quot_classes() {
        for n in 0..=1 {
            let g = g_count(&a, n).map_err(fail)?;
            for p in [2u64, 3] {
                let formula = g.eval_at_q(p as i64).map_err(fail)?;
                let oracle = BigRational::from_integer(g_oracle(&a, n, p).map_err(fail)?);
                if formula != oracle {
                    return Err(format!("g({a}, {n}) at q={p}: formula {formula}, oracle {oracle}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations agree"))
}

fn quot_sum_rule() -> Check {
    for a in quot_classes() {
        let (l, r) = sum_rule(&a, 6).map_err(fail)?;
        if l != r {
            return Err(format!("sum rule fails for {a}: {l} vs {r}"));
        }
    }
    Ok("every class of rank <= 2".into())
}

fn phi_three_way() -> Check {
    // a class of depth n first contributes at t^n, so depth = order suffices
    let order = 3;
    let depth = order;
    for r in 2..=3 {
        let table = phi_solve_linear(r, depth, order).map_err(fail)?;
        if table.solution_dimension() != 1 {
            return Err(format!("rank {r}: solution space has dimension {}", table.solution_dimension()));
        }
        let solver = table.total();
        let recursion = phi_partial_sum(r, depth, order);
        let product = phi_product_rhs(r, order);
        // sums over P⁰_r and the full product agree up to u-degree r
        let cut = |s: &TruncatedSeries| {
            TruncatedSeries::from_terms(
                s.iter().filter(|(_, u, _)| *u as i64 <= r).map(|(e, u, c)| (e, u, c.clone())),
                s.order(),
            )
        };
        if cut(&solver) != cut(&recursion) {
            return Err(format!("rank {r}: solver {solver} vs recursion {recursion}"));
        }
        if cut(&recursion) != cut(&product) {
            return Err(format!("rank {r}: recursion {recursion} vs product {product}"));
        }
    }
    Ok("r = 2, 3 through t^3".into())
}

fn phi_heine_gauss() -> Check {
    for r in 2..=5 {
        heine_gauss_verify(r).map_err(|w| format!("rank {r}: nonzero difference {w:?}"))?;
    }
    Ok("r = 2..5".into())
}

fn genfun_gottsche() -> Check {
    for g in 0..=1 {
        let s = RuledSurface::new(g, 1).map_err(fail)?;
        let c = CurveData::poincare(g);
        let series = pfa_f(&s, &c, 1, DivisorClass::ZERO, Flag::Tf, 4).map_err(fail)?.series;
        let lhs = series.scale(&(&Scalar::q() - &Scalar::one()));
        let rhs = gottsche_series(&c, 4).map_err(fail)?;
        if lhs != rhs {
            return Err(format!("genus {g}: {lhs} vs {rhs}"));
        }
    }
    Ok("g = 0, 1 through t^4".into())
}

fn genfun_tf_lf() -> Check {
    for g in 0..=1 {
        for r in 1..=3 {
            let s = RuledSurface::new(g, 1).map_err(fail)?;
            let ok = tf_lf_consistency(&s, &CurveData::poincare(g), r, DivisorClass::ZERO, 5).map_err(fail)?;
            if !ok {
                return Err(format!("tf != lf·H_r for g={g}, r={r}"));
            }
        }
    }
    Ok("r <= 3, g <= 1 through t^5".into())
}

fn genfun_divisibility() -> Check {
    for e in 0..=1 {
        let s = RuledSurface::hirzebruch(e);
        for flag in [Flag::Lf, Flag::Tf] {
            let g = pfa_f(&s, &CurveData::poincare(0), 2, DivisorClass::new(1, 0), flag, 4).map_err(fail)?;
            if !g.series.is_zero() {
                return Err(format!("Σ_{e} {flag}: nonzero series {}", g.series));
            }
        }
    }
    Ok("Σ_0, Σ_1".into())
}

fn genfun_zeta() -> Check {
    for g in 0..=2 {
        if !CurveData::poincare(g).functional_equation_holds() {
            return Err(format!("genus {g}"));
        }
    }
    Ok("g <= 2".into())
}

fn genfun_c1_independence() -> Check {
    let s = RuledSurface::hirzebruch(1);
    let c = CurveData::poincare(0);
    for r in 1..=3 {
        let base = pfa_f(&s, &c, r, DivisorClass::ZERO, Flag::Lf, 3).map_err(fail)?.series;
        for c1 in [DivisorClass::new(r, 0), DivisorClass::new(0, 1), DivisorClass::new(-r, 5)] {
            let other = pfa_f(&s, &c, r, c1, Flag::Lf, 3).map_err(fail)?;
            if other.series != base {
                return Err(format!("rank {r}, c1 = {c1}"));
            }
            if other.series.min_exponent().is_some_and(|e| e < r64(0)) {
                return Err(format!("negative exponent for rank {r}, c1 = {c1}"));
            }
        }
    }
    Ok("r <= 3".into())
}

fn genfun_pf_round_trip() -> Check {
    let s = RuledSurface::new(1, 1).map_err(fail)?;
    let c = CurveData::poincare(1);
    let g = pfa_f(&s, &c, 2, DivisorClass::new(2, 1), Flag::Tf, 3).map_err(fail)?;
    let back = pfa_from_pf(&pf_from_pfa(&g).map_err(fail)?).map_err(fail)?;
    if back != g {
        return Err("pfa -> pf -> pfa changed the series".into());
    }
    let json = g.to_json().map_err(fail)?;
    if GenSeries::from_json(&json).map_err(fail)? != g {
        return Err("JSON round trip changed the series".into());
    }
    Ok("conversion and JSON".into())
}

/// The wall `H = H_{2,3}` on `Σ_1` with `H' = f`; here `K_S·(c_1 - c_2) ≠ 0` on the
/// first contributing decomposition.
pub fn sample_wall(direction: Direction) -> Result<WallContext> {
    WallContext::new(
        RuledSurface::hirzebruch(1),
        Polarization::from_ints(2, 3)?,
        Polarization::fiber(),
        direction,
    )
}

fn wallcross_round_trip() -> Check {
    let curve = CurveData::poincare(0);
    let mut summary = Vec::new();
    for (h, order) in [((2, 1), 3), ((2, 3), 3), ((2, 3), 4)] {
        let ctx = WallContext::new(
            RuledSurface::hirzebruch(1),
            Polarization::from_ints(h.0, h.1).map_err(fail)?,
            Polarization::fiber(),
            Direction::Plus,
        )
        .map_err(fail)?;
        let wc = WallCrossing::new(ctx, 2, DivisorClass::new(0, 1), order).map_err(fail)?;
        let seeds = wc.f_side_seeds(&curve, Flag::Tf, 0).map_err(fail)?;
        let minus = wc.cross(&seeds).map_err(fail)?;
        let back = wc.with_direction(Direction::Minus).cross(&minus).map_err(fail)?;
        if back != seeds {
            return Err(format!("H = H({},{}), order {order}: round trip changed the table", h.0, h.1));
        }
        summary.push(format!("H({},{}) order {order}", h.0, h.1));
    }
    Ok(summary.join(", "))
}

fn wallcross_rank_one() -> Check {
    let curve = CurveData::poincare(0);
    for c1 in [DivisorClass::ZERO, DivisorClass::new(1, 1), DivisorClass::new(-2, 3)] {
        let wc = WallCrossing::new(sample_wall(Direction::Plus).map_err(fail)?, 1, c1, 4).map_err(fail)?;
        let seeds = wc.f_side_seeds(&curve, Flag::Tf, 0).map_err(fail)?;
        if wc.forward(&seeds).map_err(fail)? != seeds {
            return Err(format!("rank one, c1 = {c1}"));
        }
    }
    Ok("three classes".into())
}

fn wallcross_self_check() -> Check {
    let curve = CurveData::poincare(0);
    for order in [3, 4] {
        let wc = WallCrossing::new(sample_wall(Direction::Plus).map_err(fail)?, 2, DivisorClass::new(0, 1), order)
            .map_err(fail)?;
        let seeds = wc.f_side_seeds(&curve, Flag::Tf, 1).map_err(fail)?;
        if !wc.self_check(&seeds).map_err(fail)? {
            return Err(format!("order {order}: bound + 1 changed the result"));
        }
    }
    Ok("orders 3, 4".into())
}

fn blowup_rank_one() -> Check {
    let tf = blowup_ratio_tf(1, 0, 6).map_err(fail)?;
    let mut expect = TruncatedSeries::one(r64(6));
    for k in 1..=6 {
        expect = expect.mul(&TruncatedSeries::geometric(&Scalar::one(), r64(k), 0, r64(6)));
    }
    if tf != expect {
        return Err(format!("{tf}"));
    }
    Ok("prod (1-t^k)^-1 through t^6".into())
}

fn blowup_theta_rank_two() -> Check {
    let th = blowup_theta(2, 0, 4).map_err(fail)?;
    let q = Scalar::q();
    let expect = TruncatedSeries::from_terms(
        [
            (r64(0), 0, Scalar::one()),
            (r64(1), 0, &q + &Scalar::q_pow(-1)),
            (r64(4), 0, &Scalar::q_pow(2) + &Scalar::q_pow(-2)),
        ],
        r64(4),
    );
    if th != expect {
        return Err(format!("{th}"));
    }
    Ok(format!("{th}"))
}

fn blowup_reflection() -> Check {
    for r in 1..=3 {
        for m in -2..=2 {
            let a = blowup_theta(r, m, 5).map_err(fail)?;
            let b = blowup_theta(r, -m, 5).map_err(fail)?.map_coeffs(|c| c.invert_generator());
            if a != b {
                return Err(format!("r={r}, m={m}"));
            }
        }
    }
    Ok("r <= 3, |m| <= 2".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for n in Suite::NAMES {
            assert!(n.parse::<Suite>().is_ok());
        }
        assert!("unknown".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes() {
        for o in run_suite(Suite::All) {
            assert!(o.passed(), "{o}");
        }
    }
}
