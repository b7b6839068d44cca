use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{BaseField, Poly, ResidueScalar, Scalar, ValuedScalar, P1};
use crate::error::{Error, Result};
use crate::ratmap::{normalize, KPoly, Mobius, RatMap, ResPoly};
use crate::residue::{GaloisClass, ResidueClass};

pub const MAX_INPUT_LEN: usize = 10_000;
pub const MAX_NESTING: usize = 64;
pub const MAX_EXPONENT: u32 = 256;
pub const MAX_DEGREE: usize = 1024;
pub const MAX_LITERAL_DIGITS: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Z,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    if text.len() > MAX_INPUT_LEN {
        return Err(syntax(MAX_INPUT_LEN, "input too long"));
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i - start > MAX_LITERAL_DIGITS {
                    return Err(syntax(start, "integer literal too long"));
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'z' => Tok::Z,
            b'T' => Tok::T,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// `num/den` with both in `K[z]`, `den ≠ 0`.
#[derive(Clone, Debug)]
struct Frac {
    num: KPoly,
    den: KPoly,
}

impl Frac {
    fn poly(p: KPoly) -> Self {
        let field = p.field();
        Frac { num: p, den: KPoly::one(field) }
    }

    fn add(&self, rhs: &Frac) -> Frac {
        if self.den == rhs.den {
            return Frac { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        Frac {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    fn neg(&self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    fn mul(&self, rhs: &Frac) -> Frac {
        Frac { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }

    fn div(&self, rhs: &Frac) -> Option<Frac> {
        if rhs.num.is_zero() {
            return None;
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        if num.is_zero() {
            let field = num.field();
            return Some(Frac { num, den: KPoly::one(field) });
        }
        let h = crate::ratmap::kpoly_gcd(&num, &den).expect("den nonzero");
        if h.is_constant() {
            return Some(Frac { num, den });
        }
        Some(Frac { num: num.exact_div(&h).ok()?, den: den.exact_div(&h).ok()? })
    }

    fn pow(&self, e: u32) -> Frac {
        Frac { num: self.num.pow(e), den: self.den.pow(e) }
    }

    fn size(&self) -> usize {
        let t_deg = |p: &KPoly| {
            p.coeffs()
                .iter()
                .map(|c| c.numer().deg().max(c.denom().deg()))
                .max()
                .unwrap_or(0)
        };
        self.num
            .deg()
            .max(self.den.deg())
            .max(t_deg(&self.num))
            .max(t_deg(&self.den))
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    depth: usize,
    field: BaseField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn checked(&self, f: Frac, at: usize) -> Result<Frac> {
        if f.size() > MAX_DEGREE {
            return Err(syntax(at, "expression too large"));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.checked(acc.add(&rhs), at)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.checked(acc.add(&rhs.neg()), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.checked(acc.mul(&rhs), at)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).ok_or(Error::ZeroDenominator)?;
                    acc = self.checked(acc, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.peek() == Some(&Tok::Minus) {
            self.enter()?;
            self.pos += 1;
            let v = self.unary()?.neg();
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        self.pos += 1;
        let exp_at = self.offset();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return Err(syntax(exp_at, "exponent must be a nonnegative integer literal"));
        };
        self.pos += 1;
        let e = u32::try_from(&n)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(exp_at, format!("exponent above {MAX_EXPONENT}")))?;
        if base.size().saturating_mul(e as usize) > MAX_DEGREE {
            return Err(syntax(at, "expression too large"));
        }
        Ok(base.pow(e))
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(syntax(self.offset(), "nesting too deep"));
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<Frac> {
        let at = self.offset();
        let field = self.field;
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = field.integer(&n);
                Ok(Frac::poly(KPoly::constant(ValuedScalar::from_residue(c))))
            }
            Some(Tok::Z) => {
                self.pos += 1;
                Ok(Frac::poly(KPoly::var(field)))
            }
            Some(Tok::T) => {
                self.pos += 1;
                Ok(Frac::poly(KPoly::constant(ValuedScalar::uniformizer(field))))
            }
            Some(Tok::LParen) => {
                self.enter()?;
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(v)
            }
            Some(_) => Err(syntax(at, "expected a number, z, T or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn parse_frac(text: &str, field: BaseField) -> Result<Frac> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), depth: 0, field };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(v)
}

/// A rational map in `z` with coefficients in `F(T)`, in normal form.
pub fn parse_map(text: &str, field: BaseField) -> Result<RatMap> {
    let f = parse_frac(text, field)?;
    normalize(&f.num, &f.den)
}

/// A polynomial in `z` over `F(T)`; `T`-denominators are allowed.
pub fn parse_poly(text: &str, field: BaseField) -> Result<KPoly> {
    let f = parse_frac(text, field)?;
    if !f.den.is_constant() {
        return Err(Error::InvalidArgument("expression is not a polynomial in z".into()));
    }
    let inv = f.den.coeff(0).inv().expect("nonzero denominator");
    Ok(f.num.scale(&inv))
}

/// An element of `F(T)`.
pub fn parse_scalar(text: &str, field: BaseField) -> Result<ValuedScalar> {
    let p = parse_poly(text, field)?;
    if p.deg() > 0 {
        return Err(Error::InvalidArgument("expected an element of F(T), found z".into()));
    }
    Ok(p.coeff(0))
}

/// An element of the residue field: no `z`, no `T`.
pub fn parse_residue(text: &str, field: BaseField) -> Result<ResidueScalar> {
    let x = parse_scalar(text, field)?;
    if !(x.numer().is_constant() && x.denom().is_constant()) {
        return Err(Error::InvalidArgument("expected a constant, found T".into()));
    }
    Ok(x.numer().coeff(0))
}

/// A polynomial in `z` over the residue field.
pub fn parse_residue_poly(text: &str, field: BaseField) -> Result<ResPoly> {
    let p = parse_poly(text, field)?;
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        if !(c.numer().is_constant() && c.denom().is_constant()) {
            return Err(Error::InvalidArgument("residue polynomial may not contain T".into()));
        }
        coeffs.push(c.numer().coeff(0));
    }
    Ok(Poly::new(field, coeffs))
}

/// `inf`, a residue-field element, or `[p(z)]` for a Galois class.
pub fn parse_class(text: &str, field: BaseField) -> Result<ResidueClass> {
    let s = text.trim();
    if s == "inf" {
        return Ok(ResidueClass::Infinity);
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        return Ok(ResidueClass::Galois(GaloisClass::new(parse_residue_poly(inner, field)?)?));
    }
    Ok(ResidueClass::Point(parse_residue(s, field)?))
}

/// `inf` or an element of `F(T)`.
pub fn parse_point(text: &str, field: BaseField) -> Result<P1<ValuedScalar>> {
    if text.trim() == "inf" {
        return Ok(P1::Infinity);
    }
    Ok(P1::Finite(parse_scalar(text, field)?))
}

/// `a,b,c,d` for `z ↦ (az + b)/(cz + d)`.
pub fn parse_mobius(text: &str, field: BaseField) -> Result<Mobius> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidArgument("Mobius map needs four entries a,b,c,d".into()));
    }
    let mut e = Vec::with_capacity(4);
    for p in parts {
        e.push(parse_scalar(p, field)?);
    }
    let d = e.pop().expect("four");
    let c = e.pop().expect("four");
    let b = e.pop().expect("four");
    let a = e.pop().expect("four");
    Mobius::new(a, b, c, d)
}

/// `q` or `fp:<p>`.
pub fn parse_field(text: &str) -> Result<BaseField> {
    let s = text.trim();
    if s == "q" {
        return Ok(BaseField::Rational);
    }
    let Some(p) = s.strip_prefix("fp:") else {
        return Err(Error::InvalidArgument(format!("unknown field {s:?}; use q or fp:<p>")));
    };
    let p: u64 = p
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad prime {p:?}")))?;
    Ok(BaseField::prime(p)?)
}

/// A rational number in the form `m` or `m/n`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    match parse_residue(text, BaseField::Rational)? {
        ResidueScalar::Rational(q) => Ok(q),
        ResidueScalar::Prime { .. } => unreachable!("rational field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::format_fraction;

    const Q: BaseField = BaseField::Rational;

    #[test]
    fn intro_map_parses() {
        let phi = parse_map("(z^3 + (1+T)*z^2)/(z+1)", Q).unwrap();
        assert_eq!(phi.degree(), 3);
        assert_eq!(phi.to_string(), "(z^3 + (T + 1)*z^2)/(z + 1)");
    }

    #[test]
    fn sum_with_fraction_is_combined() {
        let phi = parse_map("z^2 + T/(z+1)", Q).unwrap();
        assert_eq!(format_fraction(phi.f(), phi.g()), "(z^3 + z^2 + T)/(z + 1)");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_map("z/(z-z)", Q).map(|_| ()), Err(Error::ZeroDenominator));
        assert_eq!(parse_map("(z+1)/(z+1)", Q).map(|_| ()), Err(Error::ConstantMap));
        assert!(matches!(parse_map("z + * 2", Q), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_map("z^-1", Q), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_map("(z", Q), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_map("z $", Q), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_map("z^1000", Q), Err(Error::Syntax { .. })));
        let deep = format!("{}z{}", "(".repeat(100), ")".repeat(100));
        assert!(matches!(parse_map(&deep, Q), Err(Error::Syntax { .. })));
    }

    #[test]
    fn precedence() {
        // -z^2 is -(z^2); 1/2*z is (1/2)*z
        let a = parse_poly("-z^2 + 1/2*z", Q).unwrap();
        assert_eq!(a, parse_poly("(-1)*(z*z) + z/2", Q).unwrap());
    }

    #[test]
    fn prime_field_literals() {
        let f7 = BaseField::Prime(7);
        assert_eq!(parse_residue("10", f7).unwrap(), ResidueScalar::from_i64(f7, 3));
        assert_eq!(parse_map("z/7", f7).map(|_| ()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn classes_and_fields() {
        assert_eq!(parse_class("inf", Q).unwrap(), ResidueClass::Infinity);
        assert_eq!(parse_class("-3/2", Q).unwrap().to_string(), "-3/2");
        assert_eq!(parse_class("[z^2+1]", Q).unwrap().to_string(), "[z^2 + 1]");
        assert!(parse_class("[z^2-1]", Q).is_err());
        assert!(parse_class("T", Q).is_err());
        assert_eq!(parse_field("fp:5").unwrap(), BaseField::Prime(5));
        assert!(parse_field("fp:6").is_err());
    }

    #[test]
    fn mobius_entries() {
        let g = parse_mobius("T,0,0,1", Q).unwrap();
        assert_eq!(g.to_string(), "T,0,0,1");
        assert_eq!(parse_mobius("1,2,2,4", Q), Err(Error::SingularMobius));
    }
}
