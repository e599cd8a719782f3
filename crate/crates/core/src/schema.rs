//! JSON input schemas (version 1) for actions, ideals, and rings. Errors
//! carry a JSON pointer to the offending value.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::action::{AlgebraicAction, Generator, MonoidKind};
use crate::error::{Error, Result};
use crate::exact::{ZMat, ZPoly};
use crate::orders::{action_from_ring, StructureRing};
use crate::polyring::{buchberger, parse_poly, GroebnerBasis, MPoly, MonomialOrder};

pub const SCHEMA_VERSION: u64 = 1;

fn schema_err<T>(pointer: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    })
}

fn child(pointer: &str, key: &str) -> String {
    format!("{pointer}/{}", key.replace('~', "~0").replace('/', "~1"))
}

fn object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .map_or_else(|| schema_err(pointer, "expected an object"), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, pointer: &str) -> Result<&'a Value> {
    obj.get(key)
        .map_or_else(|| schema_err(pointer, format!("missing field {key:?}")), Ok)
}

fn array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .map_or_else(|| schema_err(pointer, "expected an array"), Ok)
}

fn string<'a>(v: &'a Value, pointer: &str) -> Result<&'a str> {
    v.as_str()
        .map_or_else(|| schema_err(pointer, "expected a string"), Ok)
}

fn usize_of(v: &Value, pointer: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .map_or_else(|| schema_err(pointer, "expected a nonnegative integer"), Ok)
}

/// An integer given as a JSON number or a decimal string.
fn integer(v: &Value, pointer: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(BigInt::from(x)),
            None => n
                .as_u64()
                .map(BigInt::from)
                .map_or_else(|| schema_err(pointer, "expected an integer"), Ok),
        },
        Value::String(s) => s
            .trim()
            .parse()
            .map_or_else(|_| schema_err(pointer, "expected an integer"), Ok),
        _ => schema_err(pointer, "expected an integer"),
    }
}

fn int_vec(v: &Value, pointer: &str) -> Result<Vec<BigInt>> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{pointer}/{i}")))
        .collect()
}

fn check_version(obj: &Map<String, Value>) -> Result<()> {
    match obj.get("schema") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(_) => schema_err("/schema", format!("unsupported schema version (expected {SCHEMA_VERSION})")),
    }
}

/// Parses JSON text, reporting syntax errors at the document root.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).or_else(|e| {
        schema_err(
            "",
            format!("invalid JSON at line {}, column {}: {}", e.line(), e.column(), e),
        )
    })
}

/// `{rank, generators: [{name, matrix}], monoid}`; `matrix` is a list of rows.
pub fn action_from_value(v: &Value) -> Result<AlgebraicAction> {
    let obj = object(v, "")?;
    check_version(obj)?;
    let rank = usize_of(field(obj, "rank", "")?, "/rank")?;
    if rank == 0 {
        return schema_err("/rank", "rank must be positive");
    }
    let kind = match obj.get("monoid") {
        None => MonoidKind::FreeAbelian,
        Some(m) => match string(m, "/monoid")? {
            "free-abelian" => MonoidKind::FreeAbelian,
            "free" => MonoidKind::Free,
            other => return schema_err("/monoid", format!("unknown monoid {other:?}")),
        },
    };
    let gens = array(field(obj, "generators", "")?, "/generators")?;
    let mut generators = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let p = format!("/generators/{i}");
        let go = object(g, &p)?;
        let name = match go.get("name") {
            Some(n) => string(n, &child(&p, "name"))?.to_string(),
            None => format!("s{}", i + 1),
        };
        let mp = child(&p, "matrix");
        let rows = array(field(go, "matrix", &p)?, &mp)?;
        if rows.len() != rank {
            return schema_err(&mp, format!("expected {rank} rows, found {}", rows.len()));
        }
        let mut data = Vec::with_capacity(rank);
        for (r, row) in rows.iter().enumerate() {
            let rp = format!("{mp}/{r}");
            let row = int_vec(row, &rp)?;
            if row.len() != rank {
                return schema_err(&rp, format!("expected {rank} entries, found {}", row.len()));
            }
            data.push(row);
        }
        generators.push(Generator {
            name,
            matrix: ZMat::from_rows(data)?,
        });
    }
    AlgebraicAction::new(rank, generators, kind).map_err(|e| match e {
        Error::Singular => Error::Schema {
            pointer: "/generators".into(),
            message: "every generator must have nonzero determinant".into(),
        },
        other => other,
    })
}

/// Serializable form of an action, matching the input schema.
pub fn action_to_value(a: &AlgebraicAction) -> Value {
    let gens: Vec<Value> = a
        .generators()
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "matrix": Value::from(g.matrix.to_rows().iter().map(|r| int_row(r)).collect::<Vec<_>>()),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "rank": a.rank(),
        "generators": gens,
        "monoid": a.kind().to_string(),
    })
}

fn int_row(r: &[BigInt]) -> Value {
    Value::from(
        r.iter()
            .map(|x| serde_json::to_value(IntOut(x)).expect("serializable"))
            .collect::<Vec<_>>(),
    )
}

struct IntOut<'a>(&'a BigInt);

impl Serialize for IntOut<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::int::serialize(self.0, s)
    }
}

/// A parsed ideal: variable names, generators, order, and its reduced basis.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub vars: Vec<String>,
    pub gens: Vec<MPoly>,
    pub order: MonomialOrder,
}

impl IdealSpec {
    pub fn groebner(&self) -> GroebnerBasis {
        buchberger(&self.gens, self.order)
    }
}

/// `{vars: [names], gens: [polynomials], order}`.
pub fn ideal_from_value(v: &Value) -> Result<IdealSpec> {
    let obj = object(v, "")?;
    check_version(obj)?;
    let vars: Vec<String> = array(field(obj, "vars", "")?, "/vars")?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("/vars/{i}")).map(str::to_string))
        .collect::<Result<_>>()?;
    if vars.is_empty() {
        return schema_err("/vars", "at least one variable is required");
    }
    for (i, name) in vars.iter().enumerate() {
        let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return schema_err(&format!("/vars/{i}"), format!("invalid variable name {name:?}"));
        }
        if vars[..i].contains(name) {
            return schema_err(&format!("/vars/{i}"), format!("duplicate variable {name:?}"));
        }
    }
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let gens_v = array(field(obj, "gens", "")?, "/gens")?;
    if gens_v.is_empty() {
        return schema_err("/gens", "at least one generator is required");
    }
    let mut gens = Vec::with_capacity(gens_v.len());
    for (i, g) in gens_v.iter().enumerate() {
        let p = format!("/gens/{i}");
        let text = string(g, &p)?;
        let poly = parse_poly(text, &names).or_else(|e| schema_err(&p, e.to_string()))?;
        gens.push(poly);
    }
    let order = match obj.get("order") {
        None => MonomialOrder::default(),
        Some(o) => string(o, "/order")?
            .parse()
            .or_else(|e: String| schema_err("/order", e))?,
    };
    Ok(IdealSpec { vars, gens, order })
}

/// A ring input: structure constants, a preset, or a monic polynomial, with
/// optional named generator elements.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub ring: StructureRing,
    /// Known defining polynomial `f` with `Q ⊗ R ≅ Q[z]/f`.
    pub polynomial: Option<ZPoly>,
    pub label: String,
    pub generators: Vec<(String, Vec<BigInt>)>,
}

impl RingSpec {
    pub fn action(&self) -> Result<AlgebraicAction> {
        if self.generators.is_empty() {
            return schema_err("/generators", "a ring needs generator elements to define an action");
        }
        action_from_ring(&self.ring, &self.generators)
    }
}

/// Preset rings that are `Z[z]/f` for a known `f`.
pub fn preset_polynomial(name: &str) -> Option<ZPoly> {
    match name {
        "Z" => Some(ZPoly::from_i64(&[0, 1])),
        "Z[i]" => Some(ZPoly::from_i64(&[1, 0, 1])),
        "Z[sqrt2]" => Some(ZPoly::from_i64(&[-2, 0, 1])),
        "Z[C2]" => Some(ZPoly::from_i64(&[-1, 0, 1])),
        _ => None,
    }
}

/// Parses a one-variable polynomial with integer coefficients; the variable
/// name is whatever identifier the text uses.
pub fn parse_zpoly(text: &str) -> Result<ZPoly> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            if !cur.is_empty() || c.is_alphabetic() || c == '_' {
                cur.push(c);
            }
        } else if !cur.is_empty() {
            if !names.contains(&cur) {
                names.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
        }
    }
    if names.len() > 1 {
        return Err(Error::InvalidArgument(format!(
            "expected one variable, found {}",
            names.join(", ")
        )));
    }
    let var = names.pop().unwrap_or_else(|| "z".into());
    let p = parse_poly(text, &[var.as_str()])?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let c = p.coeff(&[k as u32]);
        if !c.is_integer() {
            return Err(Error::InvalidArgument(format!("non-integer coefficient {c}")));
        }
        coeffs.push(c.to_integer());
    }
    Ok(ZPoly::new(coeffs))
}

pub fn ring_from_value(v: &Value) -> Result<RingSpec> {
    let obj = object(v, "")?;
    check_version(obj)?;
    let (ring, polynomial, label) = if let Some(p) = obj.get("preset") {
        let name = string(p, "/preset")?;
        let ring = StructureRing::preset(name).map_or_else(
            || {
                schema_err(
                    "/preset",
                    format!("unknown preset {name:?} (known: {})", crate::orders::PRESETS.join(", ")),
                )
            },
            Ok,
        )?;
        (ring, preset_polynomial(name), name.to_string())
    } else if let Some(p) = obj.get("polynomial") {
        let text = string(p, "/polynomial")?;
        let f = parse_zpoly(text).or_else(|e| schema_err("/polynomial", e.to_string()))?;
        let ring = StructureRing::monogenic(&f).or_else(|e| schema_err("/polynomial", e.to_string()))?;
        (ring, Some(f), text.to_string())
    } else {
        let rank = usize_of(field(obj, "rank", "")?, "/rank")?;
        if rank == 0 {
            return schema_err("/rank", "rank must be positive");
        }
        let constants = int_vec(field(obj, "constants", "")?, "/constants")?;
        if constants.len() != rank * rank * rank {
            return schema_err(
                "/constants",
                format!("expected {} entries, found {}", rank * rank * rank, constants.len()),
            );
        }
        let unit = int_vec(field(obj, "unit", "")?, "/unit")?;
        if unit.len() != rank {
            return schema_err("/unit", format!("expected {rank} entries, found {}", unit.len()));
        }
        let ring = StructureRing::new(rank, constants, unit).or_else(|e| match e {
            Error::BadUnit => schema_err("/unit", "not a two-sided unit"),
            Error::NonAssociative(i, j, k) => schema_err(
                "/constants",
                format!("product is not associative on basis elements ({i}, {j}, {k})"),
            ),
            other => Err(other),
        })?;
        (ring, None, format!("rank-{rank} ring"))
    };
    let mut generators = Vec::new();
    if let Some(g) = obj.get("generators") {
        for (i, item) in array(g, "/generators")?.iter().enumerate() {
            let p = format!("/generators/{i}");
            let go = object(item, &p)?;
            let name = match go.get("name") {
                Some(n) => string(n, &child(&p, "name"))?.to_string(),
                None => format!("a{}", i + 1),
            };
            let ep = child(&p, "element");
            let elem = int_vec(field(go, "element", &p)?, &ep)?;
            if elem.len() != ring.rank() {
                return schema_err(&ep, format!("expected {} coordinates, found {}", ring.rank(), elem.len()));
            }
            generators.push((name, elem));
        }
    }
    Ok(RingSpec {
        ring,
        polynomial,
        label,
        generators,
    })
}

/// Which schema a document follows, judged by its fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Action,
    Ideal,
    Ring,
}

pub fn detect_kind(v: &Value) -> Result<InputKind> {
    let obj = object(v, "")?;
    if obj.contains_key("gens") || obj.contains_key("vars") {
        Ok(InputKind::Ideal)
    } else if obj.contains_key("preset") || obj.contains_key("constants") || obj.contains_key("polynomial") {
        Ok(InputKind::Ring)
    } else if obj.contains_key("generators") || obj.contains_key("rank") {
        Ok(InputKind::Action)
    } else {
        schema_err("", "not an action, ideal, or ring document")
    }
}

/// An action from any of the three schemas: directly, by left
/// multiplication in a ring, or by the variables of a zero-dimensional quotient.
pub fn any_action_from_value(v: &Value) -> Result<AlgebraicAction> {
    match detect_kind(v)? {
        InputKind::Action => action_from_value(v),
        InputKind::Ring => ring_from_value(v)?.action(),
        InputKind::Ideal => {
            let spec = ideal_from_value(v)?;
            let qa = crate::polyring::QuotientAlgebra::new(spec.groebner())?;
            qa.action(&spec.vars)
        }
    }
}
