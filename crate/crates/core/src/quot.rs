//! Counting epimorphisms `O^α -> O(n)` on P¹ up to `Aut O(n)`: the closed formula and a
//! brute-force oracle over a small prime field.

use num_bigint::BigInt;

use crate::algebra::laurent::LaurentPoly;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::hall::BundleClass;

/// `dim Hom(O^α, O(n)) = sum_{k<=n} (n-k+1) α_k`.
pub fn h0_dim(alpha: &BundleClass, n: i64) -> i64 {
    alpha
        .parts()
        .iter()
        .filter(|&&(k, _)| k <= n)
        .map(|&(k, a)| (n - k + 1) * a as i64)
        .sum()
}

fn q_minus_one() -> LaurentPoly {
    LaurentPoly::q_pow(1).sub(&LaurentPoly::one())
}

/// `g(α, n)`, a polynomial in `q`.
pub fn g_count(alpha: &BundleClass, n: i64) -> Result<Scalar> {
    let h = h0_dim(alpha, n);
    let s: i64 = alpha
        .parts()
        .iter()
        .filter(|&&(k, _)| k <= n)
        .map(|&(_, a)| a as i64)
        .sum();
    let an = alpha.multiplicity(n) as i64;
    let q1 = LaurentPoly::q_pow(1).add(&LaurentPoly::one());
    let num = LaurentPoly::q_pow(h)
        .sub(&q1.mul(&LaurentPoly::q_pow(h - s)))
        .add(&LaurentPoly::q_pow(h + 1 + an - 2 * s));
    let v = num
        .div_exact(&q_minus_one())
        .ok_or_else(|| Error::Internal(format!("q-1 does not divide g({alpha}, {n}) numerator")))?;
    Ok(Scalar::from_laurent(v))
}

/// `q^{nr-r-d+1} (q^r-1)(q^{r-1}-1)/(q-1)`, valid when `n > mx_α`.
pub fn g_count_generic(r: i64, d: i64, n: i64) -> Scalar {
    let one = LaurentPoly::one();
    let num = LaurentPoly::q_pow(r)
        .sub(&one)
        .mul(&LaurentPoly::q_pow(r - 1).sub(&one));
    let quotient = num.div_exact(&q_minus_one()).expect("q-1 divides q^r-1");
    Scalar::from_laurent(quotient.mul(&LaurentPoly::q_pow(n * r - r - d + 1)))
}

/// Largest search space the oracle will enumerate.
pub const ORACLE_BUDGET: u64 = 5_000_000;

/// Brute-force count over `F_p`: tuples of binary forms (one per summand `O(k)`, of degree
/// `n-k`) with no common zero on P¹, divided by `p-1`.
pub fn g_oracle(alpha: &BundleClass, n: i64, p: u64) -> Result<BigInt> {
    if !matches!(p, 2 | 3 | 5 | 7) {
        return Err(Error::InvalidArgument(format!("oracle supports small primes, got {p}")));
    }
    let degrees: Vec<usize> = alpha
        .parts()
        .iter()
        .filter(|&&(k, _)| k <= n)
        .flat_map(|&(k, a)| std::iter::repeat_n((n - k) as usize, a as usize))
        .collect();
    let h: usize = degrees.iter().map(|d| d + 1).sum();
    let total = (p as u128).checked_pow(h as u32).filter(|&t| t <= ORACLE_BUDGET as u128);
    let Some(total) = total else {
        return Err(Error::BudgetExceeded(format!("{p}^{h} tuples for g({alpha}, {n})")));
    };
    let mut count: u64 = 0;
    let mut digits = vec![0u64; h];
    for idx in 0..total as u64 {
        let mut x = idx;
        for d in digits.iter_mut() {
            *d = x % p;
            x /= p;
        }
        if surjective(&digits, &degrees, p) {
            count += 1;
        }
    }
    if !count.is_multiple_of(p - 1) {
        return Err(Error::Internal(format!("oracle count {count} not divisible by {}", p - 1)));
    }
    Ok(BigInt::from(count / (p - 1)))
}

/// Coefficients are laid out form by form; a form of degree `m` holds `m+1` coefficients
/// `c_0..c_m` of `x^i y^{m-i}`.
fn surjective(coeffs: &[u64], degrees: &[usize], p: u64) -> bool {
    let mut at_infinity = false;
    let mut g: Vec<u64> = Vec::new();
    let mut pos = 0;
    for &m in degrees {
        let f = &coeffs[pos..pos + m + 1];
        pos += m + 1;
        // value at [1:0] is the x^m coefficient
        if f[m] != 0 {
            at_infinity = true;
        }
        g = gcd_fp(g, trim(f.to_vec()), p);
    }
    at_infinity && g.len() == 1
}

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).expect("field element is invertible")
}

fn gcd_fp(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let lb = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lb % p;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - c * bi % p) % p;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Both sides of `q^{h0(α,0)} - 1 = sum_{n=0}^{n_max} g(α[n], 0) (q^{n+1} - 1)`.
pub fn sum_rule(alpha: &BundleClass, n_max: i64) -> Result<(Scalar, Scalar)> {
    let lhs = &Scalar::q_pow(h0_dim(alpha, 0)) - &Scalar::one();
    let mut rhs = Scalar::zero();
    for n in 0..=n_max {
        let g = g_count(&alpha.shift(n), 0)?;
        rhs = &rhs + &(&g * &(&Scalar::q_pow(n + 1) - &Scalar::one()));
    }
    Ok((lhs, rhs))
}
