//! Named example maps.
//!
//! Parameterized names take their arguments after a colon:
//! `cyclotomic:3`, `ex2.2:2`, `ex2.5:2,T`.

use crate::algebra::{BaseField, Scalar};
use crate::error::{Error, Result};
use crate::expr::{format_residue_poly, parse_map, parse_mobius, parse_scalar};
use crate::ratmap::{Mobius, RatMap, ResPoly};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub expression: String,
    pub map: RatMap,
    /// For `ex6.2`: the `g` with `g ∘ φ ∘ g⁻¹` of good reduction.
    pub conjugator: Option<Mobius>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

/// Names accepted by [`fixture`], with argument placeholders.
pub const FIXTURE_NAMES: &[&str] = &[
    "intro",
    "cyclotomic:<m>",
    "ex2.1:<n>",
    "ex2.2:<d>",
    "ex2.3:<d>",
    "ex2.4:<d>",
    "ex2.5:<b>,<c>",
    "ex6.1",
    "ex6.2",
    "ex6.3",
    "ex6.4",
];

const EX62_WARNING: &str = "phi = h o psi o h^-1 holds for h(z) = z/T; with h(z) = T*z the conjugate is \
                            T^2*z^2 + z + 1/T, so the recorded conjugator is g(z) = T*z acting as g o phi o g^-1";

const EX63_NOTE: &str = "unverified: wandering D-component status of D(a,1), |a| = 1, needs Julia points in \
                         infinitely many classes at valuations 1 and -1; no certificate is produced for it";

/// The m-th cyclotomic polynomial over the base field.
pub fn cyclotomic(m: u64, field: BaseField) -> Result<ResPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be positive".into()));
    }
    let one = crate::algebra::ResidueScalar::one(field);
    let mut p = &ResPoly::monomial(one.clone(), m as usize) - &ResPoly::one(field);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic(d, field)?)?;
    }
    Ok(p)
}

fn int_arg(name: &str, arg: Option<&str>, min: u64) -> Result<u64> {
    let raw = arg.ok_or_else(|| Error::InvalidArgument(format!("{name} needs an integer argument")))?;
    let n: u64 = raw
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{name}: bad integer {raw:?}")))?;
    if n < min || n > 64 {
        return Err(Error::InvalidArgument(format!("{name}: argument must lie in {min}..=64")));
    }
    Ok(n)
}

fn not_divisible(name: &str, n: u64, field: BaseField) -> Result<()> {
    let p = field.characteristic();
    if p > 0 && n.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("{name}: {n} is divisible by the characteristic {p}")));
    }
    Ok(())
}

fn comp5(b: &str, c: &str, field: BaseField) -> Result<String> {
    let bv = parse_scalar(b, field)?;
    let cv = parse_scalar(c, field)?;
    let b1 = bv.sub(&crate::algebra::ValuedScalar::one(field));
    let unit = |x: &crate::algebra::ValuedScalar| x.valuation().finite() == Some(0);
    if !(unit(&bv) && unit(&b1)) {
        return Err(Error::InvalidArgument("ex2.5: need |b| = |b - 1| = 1".into()));
    }
    if !matches!(cv.valuation().finite(), Some(v) if v > 0) {
        return Err(Error::InvalidArgument("ex2.5: need 0 < |c| < 1".into()));
    }
    let (b, c) = (format!("({b})"), format!("({c})"));
    Ok(format!("{b}*z*(z+{c})*(z+{c}^2)/((z+{b}*{c})*(z+{c}^3)*({c}*z+1)^2)"))
}

/// Loads a named example over `field`.
pub fn fixture(name: &str, field: BaseField) -> Result<Fixture> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let mut conjugator = None;
    let mut warnings = Vec::new();
    let mut notes = Vec::new();
    let no_arg = |e: String| -> Result<String> {
        if arg.is_some() {
            return Err(Error::UnknownExample(name.to_string()));
        }
        Ok(e)
    };
    let expression = match base {
        "intro" => no_arg("(z^3 + (1+T)*z^2)/(z+1)".into())?,
        "cyclotomic" => {
            let m = int_arg(base, arg, 2)?;
            not_divisible(base, m, field)?;
            let psi = format_residue_poly(&cyclotomic(m, field)?, 'z');
            format!("z^{m} + T/({psi})")
        }
        "ex2.1" => format!("z^{}", int_arg(base, arg, 2)?),
        "ex2.2" => {
            let d = int_arg(base, arg, 2)?;
            not_divisible(base, d, field)?;
            format!("z^{d} - 1/T^{d}")
        }
        "ex2.3" => {
            let d = int_arg(base, arg, 2)?;
            let p = field.characteristic();
            if p == 0 {
                return Err(Error::InvalidArgument("ex2.3 needs a field fp:<p>".into()));
            }
            not_divisible(base, d, field)?;
            let e = p * d;
            format!("z^{e} - 1/T^{e}")
        }
        "ex2.4" => {
            let d = int_arg(base, arg, 3)?;
            format!("T*z^{d} + z^{} + z", d - 1)
        }
        "ex2.5" => {
            let (b, c) = arg
                .and_then(|a| a.split_once(','))
                .ok_or_else(|| Error::InvalidArgument("ex2.5 needs arguments b,c".into()))?;
            comp5(b, c, field)?
        }
        "ex6.1" => no_arg("z + 1 + T/z".into())?,
        "ex6.2" => {
            conjugator = Some(parse_mobius("T,0,0,1", field)?);
            warnings.push(EX62_WARNING.to_string());
            no_arg("T*z^2 + z + 1".into())?
        }
        "ex6.3" => {
            notes.push(EX63_NOTE.to_string());
            if arg.is_some() {
                return Err(Error::UnknownExample(name.to_string()));
            }
            comp5("2", "T", field)?
        }
        "ex6.4" => {
            if arg.is_some() {
                return Err(Error::UnknownExample(name.to_string()));
            }
            comp5("-1", "T", field)?
        }
        _ => return Err(Error::UnknownExample(name.to_string())),
    };
    let map = parse_map(&expression, field)?;
    Ok(Fixture { name: name.to_string(), expression, map, conjugator, warnings, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::{conjugate, reduce, Classification};

    const Q: BaseField = BaseField::Rational;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(2, Q).unwrap(), ResPoly::from_i64s(Q, &[1, 1]));
        assert_eq!(cyclotomic(3, Q).unwrap(), ResPoly::from_i64s(Q, &[1, 1, 1]));
        assert_eq!(cyclotomic(12, Q).unwrap(), ResPoly::from_i64s(Q, &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn reductions() {
        let fx = fixture("cyclotomic:2", Q).unwrap();
        assert_eq!(fx.map.to_string(), "(z^3 + z^2 + T)/(z + 1)");
        for (name, reduced) in [("ex6.1", "z + 1"), ("ex6.2", "z + 1"), ("ex6.3", "2*z"), ("ex6.4", "-z")] {
            let r = reduce(&fixture(name, Q).unwrap().map);
            assert_eq!(r.reduced().unwrap().to_string(), reduced, "{name}");
            assert_eq!(r.classification, Classification::Nontrivial(1), "{name}");
        }
    }

    #[test]
    fn conjugated_example_has_good_reduction() {
        let fx = fixture("ex6.2", Q).unwrap();
        let psi = conjugate(&fx.map, fx.conjugator.as_ref().unwrap()).unwrap();
        assert_eq!(psi.to_string(), "z^2 + z + T");
        assert_eq!(reduce(&psi).classification, Classification::Good(2));
        assert_eq!(fx.warnings.len(), 1);
    }

    #[test]
    fn bad_names_and_arguments() {
        assert!(matches!(fixture("ex9.9", Q), Err(Error::UnknownExample(_))));
        assert!(matches!(fixture("ex6.1:3", Q), Err(Error::UnknownExample(_))));
        assert!(fixture("ex2.3:2", Q).is_err());
        assert!(fixture("ex2.3:2", BaseField::Prime(3)).is_ok());
        assert!(fixture("ex2.2:2", BaseField::Prime(2)).is_err());
        assert!(fixture("ex2.5:1,T", Q).is_err());
        assert!(fixture("ex2.5:2,1", Q).is_err());
        assert!(fixture("cyclotomic:1", Q).is_err());
    }
}
