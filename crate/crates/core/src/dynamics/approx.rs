use serde::Serialize;
use serde_json::{json, Value};

use super::{act, orbit_closure_contains, GroupElement};
use crate::adelic::{local_sub, LocalValue, OmegaPoint, Valuation};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, PrimeRef};
use crate::primesets::PrimeSetExpr;

/// A basic neighborhood of `ω_{s,b}`: exact exponents `v_P(c) = v_P(b)` at
/// primes outside `Z(b)`, floors `v_P(c) >= n` at primes of `Z(b)`, and
/// first-coordinate precision `v_P(c' - s) >= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicNeighborhood {
    pub target: OmegaPoint,
    pub exact: Vec<(PrimeRef, i64)>,
    pub floor: Vec<(PrimeRef, i64)>,
    pub first: Vec<(PrimeRef, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Exponent,
    Floor,
    FirstCoordinate,
}

/// One line of a membership transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub prime: PrimeRef,
    pub required: i64,
    pub actual: Valuation,
    /// Whether `actual` is the exact value or only a proven lower bound.
    pub exact: bool,
    pub ok: bool,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "prime": self.prime.to_string(),
            "required": self.required,
            "actual": self.actual.to_json(),
            "exact": self.exact,
            "ok": self.ok,
        })
    }
}

fn distinct(list: &[(PrimeRef, i64)]) -> bool {
    list.iter()
        .enumerate()
        .all(|(i, (p, _))| list[..i].iter().all(|(q, _)| q != p))
}

impl BasicNeighborhood {
    pub fn new(
        field: &NumberField,
        target: OmegaPoint,
        exact: Vec<(PrimeRef, i64)>,
        floor: Vec<(PrimeRef, i64)>,
        first: Vec<(PrimeRef, i64)>,
    ) -> Result<Self> {
        let both: Vec<_> = exact.iter().chain(&floor).cloned().collect();
        if !distinct(&both) || !distinct(&first) {
            return Err(Error::Precondition("a prime is listed twice".into()));
        }
        for (p, e) in &exact {
            field.prime(p)?;
            let actual = target.a.exponent_at(field, p);
            if actual != Valuation::Finite(*e) {
                return Err(Error::Precondition(format!(
                    "exact exponent at {p} must equal the target's ({actual}), got {e}"
                )));
            }
        }
        for (p, n) in &floor {
            field.prime(p)?;
            if *n < 0 {
                return Err(Error::Precondition(format!("negative floor {n} at {p}")));
            }
            if !target.a.exponent_at(field, p).is_infinite() {
                return Err(Error::Precondition(format!("floor prime {p} is not in Z(b)")));
            }
        }
        for (p, _) in &first {
            field.prime(p)?;
        }
        Ok(Self {
            target,
            exact,
            floor,
            first,
        })
    }

    /// Verifies `w ∈ V` prime by prime; `w` is inside when every check holds.
    pub fn checks(&self, field: &NumberField, w: &OmegaPoint) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for (p, e) in &self.exact {
            let actual = w.a.exponent_at(field, p);
            out.push(Check {
                kind: CheckKind::Exponent,
                prime: *p,
                required: *e,
                actual,
                exact: true,
                ok: actual == Valuation::Finite(*e),
            });
        }
        for (p, n) in &self.floor {
            let actual = w.a.exponent_at(field, p);
            out.push(Check {
                kind: CheckKind::Floor,
                prime: *p,
                required: *n,
                actual,
                exact: true,
                ok: actual >= Valuation::Finite(*n),
            });
        }
        for (p, m) in &self.first {
            let iv = local_sub(field, &w.r, &self.target.r, &field.prime(p)?);
            out.push(Check {
                kind: CheckKind::FirstCoordinate,
                prime: *p,
                required: *m,
                actual: iv.lower,
                exact: iv.exact,
                ok: iv.lower >= Valuation::Finite(*m),
            });
        }
        Ok(out)
    }

    pub fn contains(&self, field: &NumberField, w: &OmegaPoint) -> Result<bool> {
        Ok(self.checks(field, w)?.iter().all(|c| c.ok))
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[(PrimeRef, i64)], key: &str| -> Vec<Value> {
            v.iter()
                .map(|(p, n)| json!({ "prime": p.to_string(), key: n }))
                .collect()
        };
        json!({
            "target": self.target.to_json(),
            "exact": list(&self.exact, "exp"),
            "floor": list(&self.floor, "min"),
            "first": list(&self.first, "min"),
        })
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        let m = v
            .as_object()
            .ok_or_else(|| Error::json(path, "expected an object"))?;
        let tpath = format!("{path}.target");
        let target = OmegaPoint::from_json(
            field,
            m.get("target").ok_or_else(|| Error::json(&tpath, "missing"))?,
            &tpath,
        )?;
        let list = |key: &str, num: &str| -> Result<Vec<(PrimeRef, i64)>> {
            let lpath = format!("{path}.{key}");
            let Some(arr) = m.get(key) else {
                return Ok(Vec::new());
            };
            let arr = arr
                .as_array()
                .ok_or_else(|| Error::json(&lpath, "expected an array"))?;
            arr.iter()
                .enumerate()
                .map(|(i, item)| {
                    let ipath = format!("{lpath}[{i}]");
                    let prime = item
                        .get("prime")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::json(format!("{ipath}.prime"), "expected a prime label"))?
                        .parse::<PrimeRef>()
                        .map_err(|e| Error::json(format!("{ipath}.prime"), e.to_string()))?;
                    let n = item
                        .get(num)
                        .and_then(Value::as_i64)
                        .ok_or_else(|| Error::json(format!("{ipath}.{num}"), "expected an integer"))?;
                    Ok((prime, n))
                })
                .collect()
        };
        Self::new(field, target, list("exact", "exp")?, list("floor", "min")?, list("first", "min")?)
    }
}

/// Result of [`approximate_into`] with the data needed to audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub g: GroupElement,
    /// The exponents `e_j` demanded of `k` at the constrained primes.
    pub exponents: Vec<(PrimeRef, i64)>,
    /// The auxiliary prime `Q` absorbing the class of `∏ P_j^{e_j}`.
    pub cofactor: Option<PrimeRef>,
    pub checks: Vec<Check>,
}

impl Approximation {
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.to_json(),
            "exponents": self.exponents.iter().map(|(p, e)| json!({"prime": p.to_string(), "exp": e})).collect::<Vec<_>>(),
            "cofactor": self.cofactor.map(|p| p.to_string()),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

fn exact_local(field: &NumberField, w: &OmegaPoint, p: &PrimeRef, what: &str) -> Result<FieldElement> {
    match w.r.local_at(field, p) {
        LocalValue::Exact(y) => Ok(y),
        LocalValue::Generic { .. } => Err(Error::InfeasibleSymbolic(format!(
            "{what} has a symbolic first coordinate at {p}"
        ))),
    }
}

/// Finds `(x, k)` with `(x,k)·base ∈ V`.
///
/// The exponents of `k` at the constrained primes are chosen so that `k·a`
/// matches `V`. When `∏ P_j^{e_j}` is not principal a prime `Q` in the
/// inverse class is added, and `x` comes from strong approximation at the
/// first-coordinate primes.
/// The result is re-verified against `V` before it is returned.
pub fn approximate_into(
    field: &NumberField,
    base: &OmegaPoint,
    v: &BasicNeighborhood,
    bound: u64,
) -> Result<Approximation> {
    if !orbit_closure_contains(field, base, &v.target)? {
        return Err(Error::Precondition("Z(b) does not contain Z(a)".into()));
    }
    let checks = v.checks(field, base)?;
    if checks.iter().all(|c| c.ok) {
        return Ok(Approximation {
            g: GroupElement::identity(),
            exponents: Vec::new(),
            cofactor: None,
            checks,
        });
    }

    let zb = v.target.a.zero_set();
    let mut primes = Vec::new();
    let mut exps = Vec::new();
    let constrained = v
        .exact
        .iter()
        .map(|(p, e)| (p, *e, false))
        .chain(v.floor.iter().map(|(p, n)| (p, *n, true)));
    for (p, n, is_floor) in constrained {
        let prime = field.prime(p)?;
        let e = match base.a.exponent_at(field, p) {
            Valuation::Infinite => 0,
            Valuation::Finite(va) if is_floor => {
                debug_assert!(zb.contains_ref(field, p));
                n + va.abs()
            }
            Valuation::Finite(va) => n - va,
        };
        primes.push(prime);
        exps.push(e);
    }

    let factors: Vec<_> = primes.iter().cloned().zip(exps.iter().copied()).collect();
    let (k, cofactor) = match field.fractional_generator(&factors)? {
        Some(k) => (k, None),
        None => {
            let exclude = PrimeSetExpr::finite(primes.iter().map(|p| p.id));
            let c = field.principal_cofactor(&primes, &exps, &exclude, bound)?;
            (c.k, Some(c.q.id))
        }
    };

    let mut targets = Vec::new();
    for (p, m) in &v.first {
        let r = exact_local(field, base, p, "base")?;
        let s = exact_local(field, &v.target, p, "target")?;
        targets.push((field.prime(p)?, &s - &field.mul(&k, &r), *m));
    }
    let x = field.approximate(&targets)?;
    let g = GroupElement::new(x, k)?;
    let moved = act(field, &g, base)?;
    let checks = v.checks(field, &moved)?;
    if let Some(bad) = checks.iter().find(|c| !c.ok) {
        return Err(Error::Internal(format!("approximation failed its own check at {}", bad.prime)));
    }
    Ok(Approximation {
        g,
        exponents: primes.iter().map(|p| p.id).zip(exps).collect(),
        cofactor,
        checks,
    })
}
