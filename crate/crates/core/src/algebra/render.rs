//! Canonical text forms: scalars in `q` (half powers as `q^(k/2)`), series monomials as
//! `t^{3/2} u^2`.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::One;

use super::laurent::LaurentPoly;
use super::scalar::Scalar;

fn q_monomial(e: i64) -> Option<String> {
    match e {
        0 => None,
        2 => Some("q".to_string()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("q^({}/2)", e)),
    }
}

fn render_term(c: &BigInt, e: i64) -> String {
    match q_monomial(e) {
        None => c.to_string(),
        Some(m) if c.is_one() => m,
        Some(m) if (-c).is_one() => format!("-{m}"),
        Some(m) => format!("{c}*{m}"),
    }
}

/// Terms in descending powers of `q`, e.g. `q^3-q`.
pub fn render_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(i64, &BigInt)> = p.terms().collect();
    terms.reverse();
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        let t = render_term(c, e);
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    out
}

fn needs_parens(p: &LaurentPoly) -> bool {
    p.terms().count() > 1
}

pub fn render_scalar(x: &Scalar) -> String {
    let num = render_laurent(x.numerator());
    if x.denominator().is_one() {
        return num;
    }
    let num = if needs_parens(x.numerator()) {
        format!("({num})")
    } else {
        num
    };
    let den = render_laurent(x.denominator());
    if needs_parens(x.denominator()) {
        format!("{num}/({den})")
    } else {
        format!("{num}/{den}")
    }
}

/// Coefficient text used as a multiplier: monomials bare, anything else parenthesized.
pub fn render_coefficient(x: &Scalar) -> String {
    let s = render_scalar(x);
    if x.is_laurent() && x.numerator().is_monomial() {
        s
    } else {
        format!("({s})")
    }
}

pub fn render_exponent(e: Rational64) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// `t^{3/2} u^2`; empty string for the unit monomial.
pub fn render_monomial(t_exp: Rational64, u_exp: u32) -> String {
    let mut parts = Vec::new();
    if t_exp != Rational64::from_integer(0) {
        if t_exp == Rational64::one() {
            parts.push("t".to_string());
        } else if t_exp.is_integer() {
            parts.push(format!("t^{}", t_exp.to_integer()));
        } else {
            parts.push(format!("t^{{{}}}", render_exponent(t_exp)));
        }
    }
    match u_exp {
        0 => {}
        1 => parts.push("u".to_string()),
        k => parts.push(format!("u^{k}")),
    }
    parts.join(" ")
}
