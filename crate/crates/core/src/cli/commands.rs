use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{selftest, Command, Config, Report};
use crate::adelic::{element_from_json, OmegaPoint};
use crate::dynamics::lattice::{ideal_leq, ideal_of_open, is_maximal, primitive_ideal};
use crate::dynamics::{
    act, approximate_into, essential_freeness_witness, orbit_closure_contains, quasi_orbit, stabilizer,
    trivial_stabilizer_point, trivial_stabilizer_point_with, BasicNeighborhood, GroupElement,
};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeIdeal, PrimeRef, Principality, RingIdeal};
use crate::primesets::{PointClosure, PowerCofiniteOpen, PrimeSetExpr};

fn parse_json(text: &str, path: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::json(path, e.to_string()))
}

fn parse_point(field: &NumberField, text: &str, path: &str) -> Result<(Value, OmegaPoint)> {
    let v = parse_json(text, path)?;
    let w = OmegaPoint::from_json(field, &v, path)?;
    Ok((v, w))
}

fn parse_set(text: &str, what: &str) -> Result<PrimeSetExpr> {
    text.parse()
        .map_err(|e: Error| Error::Parse(format!("{what}: {e}")))
}

fn parse_element(field: &NumberField, text: &str, what: &str) -> Result<FieldElement> {
    element_from_json(field, &Value::String(text.to_string()), what).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_prime(field: &NumberField, label: &str) -> Result<PrimeIdeal> {
    let id: PrimeRef = label.parse()?;
    field.prime(&id)
}

fn ideal_json(field: &NumberField, i: &RingIdeal) -> Value {
    let (a, b, c) = i.parts();
    json!({ "hnf": [a.to_string(), b.to_string(), c.to_string()], "norm": field.ideal_norm(i).to_string() })
}

fn prime_json(p: &PrimeIdeal) -> Value {
    json!({
        "label": p.label(),
        "pi": p.pi.to_string(),
        "norm": p.norm().to_string(),
        "residue_degree": p.residue_degree,
        "ramification": p.ramification,
    })
}

fn factors_json(factors: &[(PrimeIdeal, i64)]) -> Value {
    factors
        .iter()
        .map(|(p, e)| json!({ "prime": p.label(), "exp": e }))
        .collect::<Vec<_>>()
        .into()
}

fn factor_ideal_report(field: &NumberField, i: &RingIdeal) -> Result<Value> {
    let factors: Vec<(PrimeIdeal, i64)> = field
        .factor_ideal(i)?
        .into_iter()
        .map(|(p, e)| (p, i64::from(e)))
        .collect();
    let principal = match field.is_principal(i)? {
        Principality::Principal(g) => json!({ "principal": true, "generator": g.to_string() }),
        Principality::NotPrincipal { class } => json!({ "principal": false, "class": class.to_string() }),
    };
    Ok(json!({
        "ideal": ideal_json(field, i),
        "factors": factors_json(&factors),
        "class": field.ideal_class(i)?.to_string(),
        "principality": principal,
    }))
}

fn simple(input: Value, output: Value) -> Report {
    Report {
        input,
        output,
        transcript: None,
    }
}

pub(super) fn dispatch(config: &Config, field: &NumberField, command: &Command) -> Result<Report> {
    let cap = config.refinement_cap;
    match command {
        Command::FieldInfo => {
            let spec = field.spec();
            Ok(simple(
                json!({}),
                json!({
                    "d": spec.d,
                    "discriminant": field.discriminant(),
                    "degree": spec.degree(),
                    "basis": spec.basis_description(),
                    "class_number": field.class_number(),
                    "units": field.unit_group().len(),
                }),
            ))
        }
        Command::Factor { element, ideal, prime } => {
            if let Some(p) = prime {
                let s = field.primes_above(*p)?;
                return Ok(simple(
                    json!({ "prime": p }),
                    json!({
                        "p": s.p,
                        "kind": s.kind,
                        "primes": s.primes.iter().map(prime_json).collect::<Vec<_>>(),
                    }),
                ));
            }
            if let Some(text) = element {
                let x = parse_element(field, text, "element")?;
                if x.is_zero() {
                    return Err(Error::ZeroIdeal);
                }
                let support = field.element_support(&x)?;
                return Ok(simple(
                    json!({ "element": text }),
                    json!({
                        "element": x.to_string(),
                        "norm": field.norm(&x).to_string(),
                        "factors": factors_json(&support),
                    }),
                ));
            }
            let Some(text) = ideal else {
                return Err(Error::Parse("factor needs one of --element, --ideal, --prime".into()));
            };
            let gens = text
                .split(',')
                .map(|g| parse_element(field, g, "ideal"))
                .collect::<Result<Vec<_>>>()?;
            let i = field.ideal_from_generators(&gens)?;
            Ok(simple(json!({ "ideal": text }), factor_ideal_report(field, &i)?))
        }
        Command::Classgroup => {
            let g = field.class_group();
            Ok(simple(
                json!({}),
                json!({
                    "h": g.order(),
                    "classes": g.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "table": g.table,
                }),
            ))
        }
        Command::Units => {
            let units = field.unit_group();
            Ok(simple(
                json!({}),
                json!({
                    "order": units.len(),
                    "units": units.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Valuation { element, ideal, prime } => {
            let p = parse_prime(field, prime)?;
            let (input, v) = match (element, ideal) {
                (Some(x), _) => {
                    let e = parse_element(field, x, "element")?;
                    (json!({ "element": x, "prime": prime }), field.valuation(&e, &p))
                }
                (None, Some(text)) => {
                    let gens = text
                        .split(',')
                        .map(|g| parse_element(field, g, "ideal"))
                        .collect::<Result<Vec<_>>>()?;
                    let i = field.ideal_from_generators(&gens)?;
                    (json!({ "ideal": text, "prime": prime }), field.ideal_valuation(&i, &p))
                }
                (None, None) => return Err(Error::Parse("valuation needs --element or --ideal".into())),
            };
            Ok(simple(input, json!({ "valuation": v.to_json() })))
        }
        Command::Cofactor { primes, exps, exclude } => {
            let ps = primes
                .iter()
                .map(|l| parse_prime(field, l))
                .collect::<Result<Vec<_>>>()?;
            if ps.len() != exps.len() {
                return Err(Error::Parse("--primes and --exps differ in length".into()));
            }
            let ex = parse_set(exclude, "exclude")?;
            let c = field.principal_cofactor(&ps, exps, &ex, config.search_bound)?;
            let mut factors: Vec<(PrimeIdeal, i64)> = ps.into_iter().zip(exps.iter().copied()).collect();
            factors.push((c.q.clone(), 1));
            Ok(Report {
                input: json!({ "primes": primes, "exps": exps, "exclude": ex.to_string() }),
                output: json!({ "q": c.q.label(), "k": c.k.to_string() }),
                transcript: Some(json!({
                    "norm_k": field.norm(&c.k).to_string(),
                    "support_k": factors_json(&field.element_support(&c.k)?),
                    "expected": factors_json(&factors),
                })),
            })
        }
        Command::Act { g, point } => {
            let gv = parse_json(g, "g")?;
            let h = GroupElement::from_json(field, &gv, "g")?;
            let (pv, w) = parse_point(field, point, "point")?;
            let moved = act(field, &h, &w)?;
            Ok(simple(json!({ "g": gv, "point": pv }), json!({ "point": moved.to_json() })))
        }
        Command::Closure { base, target } => {
            let (bv, b) = parse_point(field, base, "base")?;
            let (tv, t) = parse_point(field, target, "target")?;
            let contains = orbit_closure_contains(field, &b, &t)?;
            Ok(Report {
                input: json!({ "base": bv, "target": tv }),
                output: json!({ "contains": contains }),
                transcript: Some(json!({
                    "base_zero_set": quasi_orbit(&b).canonical(field)?.to_string(),
                    "target_zero_set": quasi_orbit(&t).canonical(field)?.to_string(),
                    "closure_of_label": PointClosure::of(quasi_orbit(&b)).contains(field, &quasi_orbit(&t))?,
                })),
            })
        }
        Command::Approx { base, nbhd } => {
            let (bv, b) = parse_point(field, base, "base")?;
            let nv = parse_json(nbhd, "nbhd")?;
            let v = BasicNeighborhood::from_json(field, &nv, "nbhd")?;
            let res = approximate_into(field, &b, &v, config.search_bound)?;
            let moved = act(field, &res.g, &b)?;
            Ok(Report {
                input: json!({ "base": bv, "nbhd": nv }),
                output: json!({
                    "g": res.g.to_json(),
                    "point": moved.to_json(),
                    "exponents": res.to_json()["exponents"].clone(),
                    "cofactor": res.cofactor.map(|p| p.to_string()),
                }),
                transcript: Some(res.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>().into()),
            })
        }
        Command::Quasiorbit { point } => {
            let (pv, w) = parse_point(field, point, "point")?;
            let z = quasi_orbit(&w).canonical(field)?;
            Ok(simple(
                json!({ "point": pv }),
                json!({ "zero_set": z.to_string(), "cardinality": cardinality_json(field, &z)? }),
            ))
        }
        Command::Stabilizer { point } => {
            let (pv, w) = parse_point(field, point, "point")?;
            let s = stabilizer(field, &w, cap)?;
            Ok(simple(json!({ "point": pv }), s.to_json()))
        }
        Command::TrivialPoint { set, q } => {
            let a = parse_set(set, "set")?;
            let w = match q {
                Some(q) => trivial_stabilizer_point_with(field, &a, &parse_set(q, "q")?)?,
                None => trivial_stabilizer_point(field, &a)?,
            };
            let s = stabilizer(field, &w, cap)?;
            let z = quasi_orbit(&w);
            Ok(Report {
                input: json!({ "set": a.to_string(), "q": q }),
                output: json!({ "point": w.to_json() }),
                transcript: Some(json!({
                    "zero_set": z.canonical(field)?.to_string(),
                    "zero_set_matches": z.set_eq(field, &a)?,
                    "stabilizer": s.to_json(),
                })),
            })
        }
        Command::Witness => {
            let w = essential_freeness_witness(field)?;
            let s = stabilizer(field, &w, cap)?;
            Ok(Report {
                input: json!({}),
                output: json!({ "point": w.to_json() }),
                transcript: Some(json!({
                    "quasi_orbit": quasi_orbit(&w).canonical(field)?.to_string(),
                    "stabilizer": s.to_json(),
                    "dense": quasi_orbit(&w).is_empty(field)?,
                })),
            })
        }
        Command::Ideal { a, b, open } => {
            let ia = primitive_ideal(field, &parse_set(a, "a")?)?;
            let mut out = json!({ "a": ia.to_json(), "a_maximal": is_maximal(field, &ia)? });
            if let Some(b) = b {
                let ib = primitive_ideal(field, &parse_set(b, "b")?)?;
                out["b"] = ib.to_json();
                out["b_maximal"] = json!(is_maximal(field, &ib)?);
                out["a_leq_b"] = json!(ideal_leq(field, &ia, &ib)?);
                out["b_leq_a"] = json!(ideal_leq(field, &ib, &ia)?);
            }
            if let Some(text) = open {
                let gens: Vec<BTreeSet<PrimeRef>> = serde_json::from_str(text).map_err(|e| Error::json("open", e.to_string()))?;
                for g in &gens {
                    for p in g {
                        field.prime(p)?;
                    }
                }
                let u = ideal_of_open(PowerCofiniteOpen::new(gens));
                out["open"] = u.to_json();
                out["a_in_open"] = json!(u.contains_point(field, ia.label()));
            }
            Ok(simple(json!({ "a": a, "b": b, "open": open }), out))
        }
        Command::Selftest { scale } => {
            let reports = selftest::run_suites(config.seed, *scale);
            let passed = reports.iter().all(|r| r.failures == 0);
            Ok(Report {
                input: json!({ "seed": config.seed, "scale": scale }),
                output: json!({
                    "passed": passed,
                    "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }),
                transcript: None,
            })
        }
    }
}

fn cardinality_json(field: &NumberField, s: &PrimeSetExpr) -> Result<Value> {
    Ok(match s.cardinality(field)? {
        crate::primesets::Cardinality::Finite(n) => json!(n),
        crate::primesets::Cardinality::Infinite => json!("infinite"),
    })
}
