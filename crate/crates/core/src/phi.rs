//! The functional `φ` on the rank-`r`, degree-0 part of the Hall algebra of P¹, with
//! values in series in `u, t`. It is characterized by `φ(O^r) = 1` and
//! `φ([E]∘[F]) = φ([F]∘[E]) u^{rk E} t^{-deg E}` for `E` with negative summands.
//!
//! Three independent computations are provided: solving the defining relations as a
//! linear system, the `A_{n,k}` recursion for partial sums, and the infinite product.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;

use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncatedSeries;
use crate::algebra::upoly::{RationalFunction, ScalarPoly};
use crate::error::{Error, Result};
use crate::hall::{basis_product, BundleClass, HallElement};

fn r64(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// A defining relation: `E` has only negative summands, ranks add to `r`, degrees to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiRelation {
    pub e: BundleClass,
    pub f: BundleClass,
}

impl PhiRelation {
    pub fn new(e: BundleClass, f: BundleClass) -> Result<Self> {
        if e.is_zero() || e.max_degree().is_some_and(|k| k >= 0) {
            return Err(Error::InvalidArgument(format!("{e} is not negative")));
        }
        if e.degree() + f.degree() != 0 {
            return Err(Error::InvalidArgument(format!("degrees of {e} and {f} do not cancel")));
        }
        Ok(Self { e, f })
    }

    pub fn rank(&self) -> i64 {
        self.e.rank() + self.f.rank()
    }
}

/// `P⁰_n`: rank `r`, degree 0, every summand of degree `>= -n`.
pub fn depth_classes(r: i64, n: i64) -> Vec<BundleClass> {
    BundleClass::enumerate(r, 0, -n, n * (r - 1))
}

/// Every relation whose classes stay inside `P⁰_n`.
pub fn relations(r: i64, n: i64) -> Vec<PhiRelation> {
    let mut out = Vec::new();
    for re in 1..r {
        let rf = r - re;
        for de in -n * re..=-re {
            for e in BundleClass::enumerate(re, de, -n, -1) {
                let df = -de;
                for f in BundleClass::enumerate(rf, df, -n, df + n * (rf - 1)) {
                    out.push(PhiRelation { e: e.clone(), f });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PhiTable {
    r: i64,
    depth: i64,
    order: i64,
    values: BTreeMap<BundleClass, TruncatedSeries>,
    unknowns: usize,
    system_rank: usize,
}

impl PhiTable {
    pub fn rank(&self) -> i64 {
        self.r
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn values(&self) -> &BTreeMap<BundleClass, TruncatedSeries> {
        &self.values
    }

    /// Dimension of the solution space of the homogeneous relations on the solving
    /// window, before normalizing `φ(O^r) = 1`.
    pub fn solution_dimension(&self) -> usize {
        self.unknowns - self.system_rank
    }

    pub fn get(&self, a: &BundleClass) -> Option<&TruncatedSeries> {
        self.values.get(a)
    }

    /// `φ` extended linearly; `None` if some class lies outside the table.
    pub fn eval(&self, x: &HallElement) -> Option<TruncatedSeries> {
        let mut acc = TruncatedSeries::zero(r64(self.order));
        for (a, c) in x.terms() {
            acc = acc.add(&self.values.get(a)?.scale(c));
        }
        Some(acc)
    }

    pub fn total(&self) -> TruncatedSeries {
        TruncatedSeries::zero(r64(self.order)).add_all(self.values.values())
    }

    /// Checks one defining relation through the table's order.
    pub fn satisfies(&self, rel: &PhiRelation) -> Option<bool> {
        let ef = basis_product(&rel.e, &rel.f);
        let fe = basis_product(&rel.f, &rel.e);
        let lhs = self.eval(&ef)?;
        let rhs = self
            .eval(&fe)?
            .mul_monomial(&Scalar::one(), r64(-rel.e.degree()), rel.e.rank() as u32);
        Some(lhs.agrees_through(&rhs, r64(self.order)))
    }

    /// Whether every coefficient is a Laurent polynomial in `q`.
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.values
            .values()
            .all(|s| s.iter().all(|(_, _, c)| c.is_q_laurent()))
    }
}

impl TruncatedSeries {
    fn add_all<'a, I: IntoIterator<Item = &'a TruncatedSeries>>(self, it: I) -> TruncatedSeries {
        it.into_iter().fold(self, |acc, s| acc.add(s))
    }
}

/// Gauss–Jordan over `Scalar`: returns pivot rows and the inverse of the square submatrix
/// they form, or `None` when the columns are dependent.
fn pivot_inverse(rows: &[Vec<Scalar>], ncols: usize) -> Option<(Vec<usize>, Vec<Vec<Scalar>>)> {
    // pick independent rows greedily by incremental elimination
    let mut basis: Vec<(usize, Vec<Scalar>, usize)> = Vec::new(); // (row index, reduced row, pivot col)
    for (ri, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut v = row.clone();
        for (_, b, pc) in &basis {
            if !v[*pc].is_zero() {
                let f = &v[*pc] / &b[*pc];
                for j in 0..ncols {
                    if !b[j].is_zero() {
                        v[j] = &v[j] - &(&f * &b[j]);
                    }
                }
            }
        }
        if let Some(pc) = (0..ncols).find(|&j| !v[j].is_zero()) {
            basis.push((ri, v, pc));
        }
    }
    if basis.len() < ncols {
        return None;
    }
    let idx: Vec<usize> = basis.iter().map(|b| b.0).collect();
    // invert the square matrix formed by the original pivot rows
    let n = ncols;
    let mut a: Vec<Vec<Scalar>> = idx.iter().map(|&i| rows[i].clone()).collect();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col].recip().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &d;
            inv[col][j] = &inv[col][j] * &d;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[col][j]);
                    }
                    if !inv[col][j].is_zero() {
                        inv[i][j] = &inv[i][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
    }
    // inv maps pivot-row right-hand sides (in idx order) to the unknowns
    Some((idx, inv))
}

struct Assembled {
    rank_e: i64,
    deg_e: i64,
    lhs: Vec<(usize, Scalar)>,
    rhs: Vec<(usize, Scalar)>,
}

/// Solves the defining relations of `φ` on `P⁰_window` grade by grade through `t`-order
/// `order`, asserting that they determine every value once `φ(O^r) = 1` is imposed.
fn solve_window(r: i64, window: i64, order: i64) -> Result<PhiTable> {
    let classes = depth_classes(r, window);
    let index: HashMap<BundleClass, usize> =
        classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let trivial = BundleClass::from_pairs([(0, r as u32)]);
    let t_col = index[&trivial];
    let to_row = |x: &HallElement| -> Result<Vec<(usize, Scalar)>> {
        x.terms()
            .map(|(a, c)| {
                index
                    .get(a)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::Internal(format!("{a} escaped the window")))
            })
            .collect()
    };
    let mut system = Vec::new();
    for rel in relations(r, window) {
        let lhs = to_row(&basis_product(&rel.e, &rel.f))?;
        if lhs.iter().any(|(i, _)| *i == t_col) {
            return Err(Error::Internal("trivial bundle appeared in E∘F".into()));
        }
        system.push(Assembled {
            rank_e: rel.e.rank(),
            deg_e: rel.e.degree(),
            lhs,
            rhs: to_row(&basis_product(&rel.f, &rel.e))?,
        });
    }
    // unknown columns exclude the trivial class
    let cols: Vec<usize> = (0..classes.len()).filter(|&i| i != t_col).collect();
    let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let dense: Vec<Vec<Scalar>> = system
        .iter()
        .map(|row| {
            let mut v = vec![Scalar::zero(); cols.len()];
            for (i, c) in &row.lhs {
                v[col_pos[i]] = c.clone();
            }
            v
        })
        .collect();
    let (pivots, inv) = if cols.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        pivot_inverse(&dense, cols.len()).ok_or_else(|| {
            Error::WindowTooSmall(format!("relations on depth {window} do not determine rank-{r} values"))
        })?
    };

    // x[class][(a, b)] for u^a t^b
    let mut x: Vec<HashMap<(i64, i64), Scalar>> = vec![HashMap::new(); classes.len()];
    x[t_col].insert((0, 0), Scalar::one());
    let grades: Vec<(i64, i64)> = (0..=order).flat_map(|b| (0..=b.min(r * order)).map(move |a| (a, b))).collect();
    let lookup = |x: &Vec<HashMap<(i64, i64), Scalar>>, i: usize, a: i64, b: i64| -> Scalar {
        x[i].get(&(a, b)).cloned().unwrap_or_default()
    };
    for &(a, b) in &grades {
        let rhs: Vec<Scalar> = system
            .iter()
            .map(|row| {
                let (a2, b2) = (a - row.rank_e, b + row.deg_e);
                if a2 < 0 || b2 < 0 {
                    return Scalar::zero();
                }
                row.rhs
                    .iter()
                    .fold(Scalar::zero(), |acc, (i, c)| &acc + &(c * &lookup(&x, *i, a2, b2)))
            })
            .collect();
        let sol: Vec<Scalar> = inv
            .iter()
            .map(|irow| {
                irow.iter()
                    .zip(&pivots)
                    .fold(Scalar::zero(), |acc, (m, &p)| if m.is_zero() { acc } else { &acc + &(m * &rhs[p]) })
            })
            .collect();
        for (row, (dr, rv)) in system.iter().zip(dense.iter().zip(&rhs)) {
            let lhs = dr
                .iter()
                .zip(&sol)
                .fold(Scalar::zero(), |acc, (m, s)| if m.is_zero() { acc } else { &acc + &(m * s) });
            if &lhs != rv {
                return Err(Error::Inconsistent(format!(
                    "relation with rk E = {}, deg E = {} fails at u^{a} t^{b}",
                    row.rank_e, row.deg_e
                )));
            }
        }
        for (p, v) in sol.into_iter().enumerate() {
            if !v.is_zero() {
                x[cols[p]].insert((a, b), v);
            }
        }
    }
    let ord = r64(order);
    let unknowns = classes.len();
    let values = classes
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let terms = x[i]
                .iter()
                .map(|(&(a, b), v)| (r64(b), a as u32, v.clone()))
                .collect::<Vec<_>>();
            (c, TruncatedSeries::from_terms(terms, ord))
        })
        .collect();
    Ok(PhiTable {
        r,
        depth: window,
        order,
        values,
        unknowns,
        system_rank: pivots.len(),
    })
}

/// Largest extra depth tried beyond the requested one.
pub const MAX_EXTRA_WINDOW: i64 = 2;

/// `φ` on `P⁰_depth` through `t`-order `order`, from the linear system.
pub fn phi_solve_linear(r: i64, depth: i64, order: i64) -> Result<PhiTable> {
    if r < 1 || depth < 0 || order < 0 {
        return Err(Error::InvalidArgument(format!("need r >= 1, depth >= 0, order >= 0 (got {r}, {depth}, {order})")));
    }
    let mut last = None;
    for window in depth..=depth + MAX_EXTRA_WINDOW {
        match solve_window(r, window, order) {
            Ok(mut table) => {
                table.values.retain(|a, _| a.min_degree().is_some_and(|k| k >= -depth));
                table.depth = depth;
                return Ok(table);
            }
            Err(e @ Error::WindowTooSmall(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one window tried"))
}

/// `sum_{α ∈ P⁰_n} φ(O^α)` via the `A_{n,k}` recursion.
pub fn phi_partial_sum(r: i64, n: i64, order: i64) -> TruncatedSeries {
    let ord = r64(order);
    let one = Scalar::one();
    let mut s = TruncatedSeries::one(ord);
    for m in 1..=n {
        if m > order {
            // every further factor is 1 + O(t^{m}) beyond the order
            break;
        }
        let mut a = s.clone();
        let mut total = a.clone();
        for k in 1..r {
            // z q^{k-r} (q^{r-k}-1)(q^{r-k+1}-1) / ((1 - z q^{r-k})(q^k - 1)), z = q^{mr} u t^m
            let c = &(&Scalar::q_pow(m * r + k - r)
                * &(&(&Scalar::q_pow(r - k) - &one) * &(&Scalar::q_pow(r - k + 1) - &one)))
                / &(&Scalar::q_pow(k) - &one);
            let geo = TruncatedSeries::geometric(&Scalar::q_pow(m * r + r - k), r64(m), 1, ord);
            a = a.mul(&geo).mul_monomial(&c, r64(m), 1);
            total = total.add(&a);
        }
        s = total;
    }
    s
}

/// `prod_{k>=1} prod_{i=1}^{r-1} (1 - q^{rk-i} u t^k)/(1 - q^{rk+i} u t^k)` through `order`.
pub fn phi_product_rhs(r: i64, order: i64) -> TruncatedSeries {
    let ord = r64(order);
    let mut acc = TruncatedSeries::one(ord);
    for k in 1..=order {
        for i in 1..r {
            let num = TruncatedSeries::one_minus(&Scalar::q_pow(r * k - i), r64(k), 1, ord);
            let den = TruncatedSeries::geometric(&Scalar::q_pow(r * k + i), r64(k), 1, ord);
            acc = acc.mul(&num).mul(&den);
        }
    }
    acc
}

/// Both sides of the finite summation identity used in the recursion, as rational
/// functions of `z`:
/// `sum_{m=0}^{r-1} prod_{k=1}^m z q^{k-r}(q^{r-k}-1)(q^{r-k+1}-1)/((1-zq^{r-k})(q^k-1))`
/// and `prod_{j=1}^{r-1} (1 - z q^{-j})/(1 - z q^j)`.
pub fn heine_gauss_sides(r: i64) -> (RationalFunction, RationalFunction) {
    let one = Scalar::one();
    let unit = RationalFunction::poly(ScalarPoly::constant(one.clone()));
    let mut lhs = unit.clone();
    let mut term = unit.clone();
    for k in 1..r {
        let c = &(&Scalar::q_pow(k - r) * &(&(&Scalar::q_pow(r - k) - &one) * &(&Scalar::q_pow(r - k + 1) - &one)))
            / &(&Scalar::q_pow(k) - &one);
        let f = RationalFunction::new(
            ScalarPoly::monomial(c, 1),
            ScalarPoly::one_minus(Scalar::q_pow(r - k), 1),
        );
        term = term.mul(&f);
        lhs = lhs.add(&term);
    }
    let mut rhs = unit;
    for j in 1..r {
        rhs = rhs.mul(&RationalFunction::new(
            ScalarPoly::one_minus(Scalar::q_pow(-j), 1),
            ScalarPoly::one_minus(Scalar::q_pow(j), 1),
        ));
    }
    (lhs, rhs)
}

/// Verifies the summation identity for rank `r`; on failure returns the nonzero
/// cross-multiplied difference as witness.
pub fn heine_gauss_verify(r: i64) -> std::result::Result<(), ScalarPoly> {
    let (l, rt) = heine_gauss_sides(r);
    let diff = l.num.mul(&rt.den).sub(&rt.num.mul(&l.den));
    if diff.is_zero() {
        Ok(())
    } else {
        Err(diff)
    }
}
