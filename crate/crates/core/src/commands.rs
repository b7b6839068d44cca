//! Command dispatch behind the `wander` binary.
//!
//! Every command takes string options and returns a [`Report`]; nothing here
//! panics on bad input.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{BaseField, ExtInt, ResidueScalar, P1};
use crate::error::{Error, Result};
use crate::expr::{
    format_residue_fraction, format_residue_poly, parse_class, parse_field, parse_map, parse_mobius, parse_poly,
    parse_rational, parse_scalar,
};
use crate::fixtures::{fixture, FIXTURE_NAMES};
use crate::heights::{
    CanonicalHeightInterval, DistinctEvidence, GrandOrbitVerdict, TailProof, WanderingProof,
};
use crate::local::{
    disk_image, injectivity_isometry, newton_polygon, repelling_fixed_class, Disk, DiskKind, Injectivity,
    RepellingVerdict, Slope,
};
use crate::ratmap::{conjugate, reduce, RatMap, ReductionReport};
use crate::report::{Report, Status};
use crate::residue::{
    class_orbit_in, julia_class_growth, push_past_bad, wandering_domain_certificates, ClassOrbitReport,
    JuliaConclusion, JuliaWitness, OrbitVerdict, ResidueClass, StepStatus, WanderingCertificate,
};

pub type Options = BTreeMap<String, String>;

pub const COMMANDS: &[&str] = &[
    "classify",
    "bad-classes",
    "orbit",
    "wander",
    "julia",
    "fixedpoints",
    "newton",
    "disk-image",
    "injectivity",
    "conjugate",
    "example",
];

/// Runs `command` and wraps the outcome, including failures, in a report.
pub fn run(command: &str, options: &Options) -> Report {
    let mut warnings = Vec::new();
    match dispatch(command, options, &mut warnings) {
        Ok((result, status)) => {
            Report { command: command.to_string(), input: options.clone(), result, warnings, status }
        }
        Err(e) => Report::error(command, options.clone(), warnings, &e),
    }
}

fn dispatch(command: &str, o: &Options, warnings: &mut Vec<String>) -> Result<(Value, Status)> {
    let field = match o.get("field") {
        Some(f) => parse_field(f)?,
        None => BaseField::Rational,
    };
    let ok = |v: Value| Ok((v, Status::Ok));
    match command {
        "classify" => {
            let phi = load_map(o, field, warnings)?;
            ok(reduction_json(&phi, &reduce(&phi)))
        }
        "bad-classes" => {
            let phi = load_map(o, field, warnings)?;
            ok(json!({ "bad_classes": classes_json(&reduce(&phi).bad_classes) }))
        }
        "orbit" => {
            let phi = load_map(o, field, warnings)?;
            let class = parse_class(required(o, "class")?, field)?;
            let depth = count(o, "depth", 10)?;
            let report = reduce(&phi);
            let orbit = class_orbit_in(&report, &class, depth)?;
            let mut out = orbit_json(&orbit);
            if o.contains_key("horizon") {
                let pushed = push_past_bad(&report, &class, count(o, "horizon", 0)?)?;
                out["pushed"] = json!({
                    "class": pushed.class.to_string(),
                    "steps": pushed.steps,
                    "last_bad_hit": pushed.last_bad_hit,
                    "tail": tail_json(&pushed.tail),
                });
            }
            ok(out)
        }
        "wander" => {
            let phi = load_map(o, field, warnings)?;
            let n = count(o, "count", 3)?;
            let depth = count(o, "depth", 5)?;
            let certs = wandering_domain_certificates(&phi, n, depth)?;
            let mut status = Status::Ok;
            let mut out = json!({ "certificates": certs.iter().map(certificate_json).collect::<Vec<_>>() });
            if flag(o, "require-julia") {
                if let Some(Err(why)) = certs.first().map(|c| &c.julia) {
                    status = Status::HypothesesNotMet;
                    out["refused"] = json!(format!("julia witness required: {why}"));
                }
            }
            Ok((out, status))
        }
        "julia" => {
            let phi = load_map(o, field, warnings)?;
            let r = julia_class_growth(&phi, count(o, "depth", 2)?)?;
            let (conclusion, status) = match &r.conclusion {
                JuliaConclusion::InfinitelyManyCertified => (json!("infinitely_many_certified"), Status::Ok),
                JuliaConclusion::HypothesesNotMet(why) => {
                    (json!({ "hypotheses_not_met": why }), Status::HypothesesNotMet)
                }
            };
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|(c, v)| {
                    let mut w = repelling_json(v);
                    w["class"] = json!(c.to_string());
                    w
                })
                .collect();
            let out = json!({
                "witnesses": witnesses,
                "seeds": classes_json(&r.seeds),
                "counts": r.counts,
                "separability": {
                    "frobenius_power": r.separability.frobenius_power,
                    "psi": r.separability.psi.to_string(),
                    "separable": r.separability.separable,
                },
                "conclusion": conclusion,
            });
            Ok((out, status))
        }
        "fixedpoints" => {
            let phi = load_map(o, field, warnings)?;
            let class = parse_class(required(o, "class")?, field)?;
            ok(repelling_json(&repelling_fixed_class(&phi, &class)?))
        }
        "newton" => {
            let p = parse_poly(required(o, "poly")?, field)?;
            let np = newton_polygon(&p)?;
            ok(json!({
                "points": np.points.iter().map(|&(i, v)| json!([i, v])).collect::<Vec<_>>(),
                "segments": np.segments.iter().map(|s| json!({
                    "start": s.start,
                    "length": s.length,
                    "slope": slope_json(s.slope),
                })).collect::<Vec<_>>(),
                "zero_roots": np.zero_roots(),
                "root_valuations": np.root_valuations().iter().map(|(v, m)| json!({
                    "valuation": slope_json(*v),
                    "multiplicity": m,
                })).collect::<Vec<_>>(),
            }))
        }
        "disk-image" => {
            let phi = load_map(o, field, warnings)?;
            ok(disk_json(&disk_image(&phi, &load_disk(o, field)?)?))
        }
        "injectivity" => {
            let phi = load_map(o, field, warnings)?;
            let out = match injectivity_isometry(&phi, &load_disk(o, field)?)? {
                Injectivity::Injective { scaling_valuation, critical_points } => json!({
                    "verdict": "injective",
                    "scaling_valuation": scaling_valuation,
                    "critical_points": critical_points,
                }),
                Injectivity::NotInjective { witness, critical_points } => json!({
                    "verdict": "not_injective",
                    "witness": witness,
                    "critical_points": critical_points,
                }),
            };
            ok(out)
        }
        "conjugate" => {
            let phi = load_map(o, field, warnings)?;
            let g = parse_mobius(required(o, "mobius")?, field)?;
            let psi = conjugate(&phi, &g)?;
            ok(json!({ "mobius": g.to_string(), "conjugated": reduction_json(&psi, &reduce(&psi)) }))
        }
        "example" => {
            if flag(o, "list") {
                return ok(json!({ "examples": FIXTURE_NAMES }));
            }
            let fx = fixture(required(o, "name")?, field)?;
            warnings.extend(fx.warnings.iter().cloned());
            let mut out = json!({
                "name": fx.name,
                "expression": fx.expression,
                "reduction": reduction_json(&fx.map, &reduce(&fx.map)),
                "notes": fx.notes,
            });
            if let Some(g) = &fx.conjugator {
                let psi = conjugate(&fx.map, g)?;
                out["conjugator"] = json!(g.to_string());
                out["conjugated"] = reduction_json(&psi, &reduce(&psi));
            }
            ok(out)
        }
        other => Err(Error::UnknownCommand(other.to_string())),
    }
}

fn required<'a>(o: &'a Options, key: &str) -> Result<&'a str> {
    o.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::InvalidArgument(format!("missing --{key}")))
}

fn flag(o: &Options, key: &str) -> bool {
    o.get(key).is_some_and(|v| v != "false")
}

fn count(o: &Options, key: &str, default: usize) -> Result<usize> {
    match o.get(key) {
        None => Ok(default),
        Some(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("--{key} must be a nonnegative integer")))?;
            if n > 100_000 {
                return Err(Error::InvalidArgument(format!("--{key} is too large")));
            }
            Ok(n)
        }
    }
}

/// `--map` as an expression or `example:NAME`.
fn load_map(o: &Options, field: BaseField, warnings: &mut Vec<String>) -> Result<RatMap> {
    let text = required(o, "map")?;
    match text.strip_prefix("example:") {
        Some(name) => {
            let fx = fixture(name, field)?;
            warnings.extend(fx.warnings);
            Ok(fx.map)
        }
        None => parse_map(text, field),
    }
}

fn load_disk(o: &Options, field: BaseField) -> Result<Disk> {
    let center = parse_scalar(required(o, "center")?, field)?;
    let s = parse_rational(required(o, "radius-val")?)?;
    let to_i64 = |x: &num_bigint::BigInt| -> Result<i64> {
        i64::try_from(x).map_err(|_| Error::InvalidArgument("radius valuation out of range".into()))
    };
    let s = Slope::new(to_i64(s.numer())?, to_i64(s.denom())?);
    match o.get("kind").map(String::as_str).unwrap_or("open") {
        "open" => Ok(Disk::open(center, s)),
        "closed" => Ok(Disk::closed(center, s)),
        k => Err(Error::InvalidArgument(format!("--kind must be open or closed, not {k:?}"))),
    }
}

fn slope_json(s: Slope) -> Value {
    if s.is_integer() {
        json!(s.to_integer())
    } else {
        json!(s.to_string())
    }
}

fn ext_json(v: ExtInt) -> Value {
    match v {
        ExtInt::Finite(n) => json!(n),
        ExtInt::Infinity => json!("inf"),
    }
}

fn rational_p1(x: &P1<BigRational>) -> String {
    match x {
        P1::Finite(q) => ResidueScalar::Rational(q.clone()).to_string(),
        P1::Infinity => "inf".into(),
    }
}

fn classes_json(cs: &[ResidueClass]) -> Value {
    json!(cs.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn reduction_json(phi: &RatMap, r: &ReductionReport) -> Value {
    json!({
        "map": phi.to_string(),
        "degree": phi.degree(),
        "fbar": format_residue_poly(&r.fbar, 'z'),
        "gbar": format_residue_poly(&r.gbar, 'z'),
        "hbar": format_residue_poly(&r.hbar, 'z'),
        "reduced_map": r.reduced_map.as_ref().map(|m| format_residue_fraction(m.num(), m.den())),
        "classification": r.classification.to_string(),
        "bad_classes": classes_json(&r.bad_classes),
    })
}

fn orbit_json(r: &ClassOrbitReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let (status, with) = match e.status {
                StepStatus::GoodStep => ("good_step", None),
                StepStatus::BadClassHit => ("bad_class_hit", None),
                StepStatus::Collision(m) => ("collision", Some(m)),
            };
            json!({ "step": e.step, "class": e.class.to_string(), "status": status, "collides_with": with })
        })
        .collect();
    let verdict = match r.verdict {
        OrbitVerdict::AllGoodDistinct(d) => json!({ "all_good_distinct": d }),
        OrbitVerdict::HitBad(n) => json!({ "hit_bad": n }),
        OrbitVerdict::Cyclic(m, n) => json!({ "cyclic": [m, n] }),
        OrbitVerdict::Branched(n) => json!({ "branched": n }),
    };
    json!({ "entries": entries, "verdict": verdict })
}

fn tail_json(t: &TailProof) -> Value {
    match t {
        TailProof::FiniteOrbit { steps } => json!({ "finite_orbit": steps }),
        TailProof::HeightEscape { step, height } => json!({ "height_escape": { "step": step, "height": height.to_string() } }),
        TailProof::ClosedForm => json!("closed_form"),
    }
}

fn interval_json(i: &CanonicalHeightInterval) -> Value {
    json!({
        "lo": i.lo.to_string(),
        "hi": i.hi.to_string(),
        "depth": i.depth,
        "height": i.height.to_string(),
        "exact": i.exact,
    })
}

fn grand_orbit_json(v: &GrandOrbitVerdict) -> Value {
    match v {
        GrandOrbitVerdict::SameOrbit { m, n } => json!({ "same_orbit": [m, n] }),
        GrandOrbitVerdict::DistinctCertified(DistinctEvidence::Window { depth, bound, powers, intervals }) => json!({
            "distinct_certified": {
                "window": {
                    "depth": depth,
                    "bound": bound.to_string(),
                    "powers": [powers[0].to_string(), powers[1].to_string()],
                    "intervals": [interval_json(&intervals[0]), interval_json(&intervals[1])],
                }
            }
        }),
        GrandOrbitVerdict::DistinctCertified(DistinctEvidence::ClosedForm(why)) => {
            json!({ "distinct_certified": { "closed_form": why } })
        }
        GrandOrbitVerdict::Inconclusive(why) => json!({ "inconclusive": why }),
    }
}

fn repelling_json(v: &RepellingVerdict) -> Value {
    match v {
        RepellingVerdict::Witness { offset, derivative_valuation } => json!({
            "verdict": "witness",
            "offset": offset.map_or(json!("inf"), slope_json),
            "derivative_valuation": slope_json(*derivative_valuation),
        }),
        RepellingVerdict::NoneFound => json!({ "verdict": "none_found" }),
    }
}

fn disk_json(d: &Disk) -> Value {
    json!({
        "center": d.center.to_string(),
        "center_valuation": ext_json(d.center.valuation()),
        "radius_valuation": slope_json(d.radius_valuation),
        "kind": match d.kind { DiskKind::Open => "open", DiskKind::Closed => "closed" },
    })
}

fn certificate_json(c: &WanderingCertificate) -> Value {
    let wandering = match &c.wandering {
        WanderingProof::HeightEscape { step, height, bound } => json!({
            "height_escape": { "step": step, "height": height.to_string(), "bound": bound.to_string() }
        }),
        WanderingProof::InfiniteOrderMobius => json!("infinite_order_mobius"),
    };
    let julia = match &c.julia {
        Ok(JuliaWitness::RiemannHurwitz { seeds, counts }) => {
            json!({ "riemann_hurwitz": { "seeds": classes_json(seeds), "counts": counts } })
        }
        Ok(JuliaWitness::RepellingBackwardOrbit { class, offset, derivative_valuation }) => json!({
            "repelling_backward_orbit": {
                "class": class.to_string(),
                "offset": offset.map_or(json!("inf"), slope_json),
                "derivative_valuation": slope_json(*derivative_valuation),
            }
        }),
        Err(why) => json!({ "none": why }),
    };
    json!({
        "representative": rational_p1(&c.representative),
        "base_class": c.base_class().to_string(),
        "pushed": {
            "steps": c.pushed.steps,
            "last_bad_hit": c.pushed.last_bad_hit,
            "tail": tail_json(&c.pushed.tail),
        },
        "orbit": orbit_json(&c.orbit),
        "wandering": wandering,
        "distinct_from": c.distinct_from.iter().map(|(i, v)| json!({
            "certificate": i,
            "verdict": grand_orbit_json(v),
        })).collect::<Vec<_>>(),
        "component_types": c.component_types.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "julia_witness": julia,
    })
}
