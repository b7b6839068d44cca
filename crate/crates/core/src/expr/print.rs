use num_traits::{One, Signed};

use crate::algebra::{Poly, ResidueScalar, Scalar, ValuedScalar};

struct Term {
    negative: bool,
    body: String,
}

fn monomial(var: char, power: usize) -> String {
    match power {
        0 => String::new(),
        1 => var.to_string(),
        n => format!("{var}^{n}"),
    }
}

fn attach(coeff: &str, mono: &str) -> String {
    match (coeff.is_empty(), mono.is_empty()) {
        (true, true) => "1".to_string(),
        (true, false) => mono.to_string(),
        (false, true) => coeff.to_string(),
        (false, false) => format!("{coeff}*{mono}"),
    }
}

/// Sign and magnitude of a scalar; the magnitude is empty for 1.
fn split_scalar(c: &ResidueScalar) -> (bool, String) {
    match c {
        ResidueScalar::Rational(q) => {
            let neg = q.is_negative();
            let a = q.abs();
            if a.is_one() {
                (neg, String::new())
            } else {
                (neg, ResidueScalar::Rational(a).to_string())
            }
        }
        ResidueScalar::Prime { value: 1, .. } => (false, String::new()),
        ResidueScalar::Prime { value, .. } => (false, value.to_string()),
    }
}

fn residue_terms(p: &Poly<ResidueScalar>, var: char, suffix: &str) -> Vec<Term> {
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (negative, mag) = split_scalar(c);
        let mono = monomial(var, i);
        let inner = attach(&mag, &mono);
        let body = if suffix.is_empty() {
            inner
        } else if mag.is_empty() && mono.is_empty() {
            suffix.to_string()
        } else {
            format!("{inner}*{suffix}")
        };
        out.push(Term { negative, body });
    }
    out
}

fn join(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&t.body);
    }
    s
}

pub(crate) fn wrap(s: &str) -> String {
    if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '^') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Polynomial over the residue field in the given variable.
pub fn format_residue_poly(p: &Poly<ResidueScalar>, var: char) -> String {
    join(&residue_terms(p, var, ""))
}

/// Element of `F(T)`.
pub fn format_valued(x: &ValuedScalar) -> String {
    let num = format_residue_poly(x.numer(), 'T');
    if x.is_polynomial() {
        return num;
    }
    format!("{}/{}", wrap(&num), wrap(&format_residue_poly(x.denom(), 'T')))
}

/// Polynomial in `z` with coefficients in `F(T)`.
pub fn format_kpoly(p: &Poly<ValuedScalar>) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = monomial('z', i);
        let num = c.numer();
        let nonzero = num.coeffs().iter().filter(|a| !a.is_zero()).count();
        if c.is_polynomial() && (nonzero == 1 || i == 0) {
            terms.extend(residue_terms(num, 'T', &mono));
        } else {
            terms.push(Term { negative: false, body: attach(&wrap(&format_valued(c)), &mono) });
        }
    }
    join(&terms)
}

/// `f/g` with the minimal parentheses the grammar needs.
pub fn format_fraction(f: &Poly<ValuedScalar>, g: &Poly<ValuedScalar>) -> String {
    let num = format_kpoly(f);
    if g.is_constant() && g.coeff(0).is_one() {
        return num;
    }
    format!("{}/{}", wrap(&num), wrap(&format_kpoly(g)))
}

/// `num/den` over the residue field, in `z`.
pub fn format_residue_fraction(num: &Poly<ResidueScalar>, den: &Poly<ResidueScalar>) -> String {
    let n = format_residue_poly(num, 'z');
    if den.is_constant() && den.coeff(0).is_one() {
        return n;
    }
    format!("{}/{}", wrap(&n), wrap(&format_residue_poly(den, 'z')))
}
