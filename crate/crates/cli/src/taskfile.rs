//! Task files: TOML with `[rings.*]`, `[modules.*]`, `[complexes.*]`,
//! `[coactions.*]` blocks and a `[[tasks]]` list.

use std::collections::BTreeMap;

use gradwise::comodule::{GroupRingElement, RingCoaction};
use gradwise::derived::GradedComplex;
use gradwise::grading::parse_rational;
use gradwise::poly::parse_polynomial;
use gradwise::{
    Degree, GradedMap, GradedModule, GradedRing, GradingSignature, ModuleElement, Polynomial,
};
use num_rational::BigRational;
use toml::{Table, Value};

use crate::CliError;

/// A ring block: always a presentation, graded when degrees were given.
#[derive(Clone, Debug)]
pub struct RingEntry {
    pub names: Vec<String>,
    pub ideal: Vec<Polynomial>,
    pub dimension: usize,
    pub weight: Vec<BigRational>,
    pub graded: Option<GradedRing>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub rings: BTreeMap<String, RingEntry>,
    pub modules: BTreeMap<String, GradedModule>,
    pub complexes: BTreeMap<String, GradedComplex>,
    pub coactions: BTreeMap<String, RingCoaction>,
    pub tasks: Vec<Table>,
    source: String,
    pending_modules: Vec<String>,
}

/// 1-based line of the first occurrence of `needle`, if any.
pub fn line_of(source: &str, needle: &str) -> Option<usize> {
    source
        .lines()
        .position(|l| l.trim_start().starts_with(needle))
        .map(|i| i + 1)
}

impl Workspace {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn invalid(&self, header: &str, message: impl Into<String>) -> CliError {
        CliError::Validation {
            line: line_of(&self.source, header),
            message: format!("{header}: {}", message.into()),
        }
    }

    /// Line of the `n`-th (0-based) `[[tasks]]` header.
    pub fn task_line(&self, n: usize) -> Option<usize> {
        self.source
            .lines()
            .enumerate()
            .filter(|(_, l)| l.trim_start().starts_with("[[tasks]]"))
            .nth(n)
            .map(|(i, _)| i + 1)
    }

    pub fn graded_ring(&self, name: &str) -> Option<&GradedRing> {
        self.rings.get(name)?.graded.as_ref()
    }
}

pub fn parse_degree(v: &Value) -> Result<Degree, String> {
    match v {
        Value::Integer(i) => Ok(Degree::int(*i)),
        Value::String(s) => Ok(Degree::new(vec![
            parse_rational(s).map_err(|e| e.to_string())?
        ])),
        Value::Array(a) => a
            .iter()
            .map(parse_scalar)
            .collect::<Result<Vec<_>, _>>()
            .map(Degree::new),
        other => Err(format!("expected a degree, found {other}")),
    }
}

pub fn parse_scalar(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Integer(i) => Ok(BigRational::from_integer((*i).into())),
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        other => Err(format!("expected a rational number, found {other}")),
    }
}

fn strings(v: Option<&Value>, what: &str) -> Result<Vec<String>, String> {
    match v {
        None => Ok(Vec::new()),
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| format!("{what} must be strings"))
            })
            .collect(),
        Some(_) => Err(format!("{what} must be an array of strings")),
    }
}

fn table<'a>(root: &'a Table, key: &str) -> Result<Option<&'a Table>, CliError> {
    match root.get(key) {
        None => Ok(None),
        Some(Value::Table(t)) => Ok(Some(t)),
        Some(_) => Err(CliError::Validation {
            line: None,
            message: format!("`{key}` must be a table of named blocks"),
        }),
    }
}

fn parse_ring(ws: &Workspace, name: &str, t: &Table) -> Result<RingEntry, CliError> {
    let header = format!("[rings.{name}]");
    let bad = |m: String| ws.invalid(&header, m);
    let names = strings(t.get("variables"), "variables").map_err(bad)?;
    let ideal_src = strings(t.get("ideal"), "ideal").map_err(bad)?;
    let ideal = ideal_src
        .iter()
        .map(|s| parse_polynomial(s, &names))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse {
            line: line_of(&ws.source, &header),
            message: format!("{header}: {e}"),
        })?;
    let degrees = match t.get("degrees") {
        None => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(parse_degree)
                .collect::<Result<Vec<_>, _>>()
                .map_err(bad)?,
        ),
        Some(_) => return Err(bad("degrees must be an array".into())),
    };
    let dimension = match t.get("dimension") {
        Some(Value::Integer(k)) if *k >= 1 => *k as usize,
        Some(_) => return Err(bad("dimension must be a positive integer".into())),
        None => degrees
            .as_ref()
            .and_then(|d| d.first())
            .map_or(1, Degree::dim),
    };
    let weight = match t.get("weight") {
        None => vec![BigRational::from_integer(1.into()); dimension],
        Some(Value::Array(a)) => a
            .iter()
            .map(parse_scalar)
            .collect::<Result<Vec<_>, _>>()
            .map_err(bad)?,
        Some(_) => return Err(bad("weight must be an array".into())),
    };
    let graded = match degrees {
        None => None,
        Some(d) => {
            if d.len() != names.len() {
                return Err(bad(format!(
                    "{} degrees for {} variables",
                    d.len(),
                    names.len()
                )));
            }
            let sig = GradingSignature::new(dimension, d, weight.clone())
                .map_err(|e| bad(e.to_string()))?;
            Some(
                GradedRing::new(sig, names.clone(), ideal.clone())
                    .map_err(|e| bad(e.to_string()))?,
            )
        }
    };
    Ok(RingEntry {
        names,
        ideal,
        dimension,
        weight,
        graded,
    })
}

fn parse_element(ring: &GradedRing, v: &Value) -> Result<ModuleElement, String> {
    let parts = v
        .as_array()
        .ok_or("a module element is an array of polynomial strings")?;
    let comps = parts
        .iter()
        .map(|p| {
            let s = p.as_str().ok_or("polynomial entries must be strings")?;
            ring.parse(s).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(ModuleElement(comps))
}

/// Module blocks may refer to each other (`sum`, `shift_of`); they resolve in dependency order.
fn parse_module(ws: &Workspace, name: &str, t: &Table) -> Result<Option<GradedModule>, CliError> {
    let header = format!("[modules.{name}]");
    let bad = |m: String| ws.invalid(&header, m);
    if let Some(parts) = t.get("sum") {
        let names = strings(Some(parts), "sum").map_err(bad)?;
        let mut ms = Vec::new();
        for n in &names {
            match lookup_module(ws, n) {
                Some(m) => ms.push(m),
                None if is_pending(ws, n) => return Ok(None),
                None => return Err(bad(format!("unknown module `{n}`"))),
            }
        }
        return GradedModule::direct_sum(&ms.iter().collect::<Vec<_>>())
            .map(Some)
            .map_err(|e| bad(e.to_string()));
    }
    if let Some(base) = t.get("shift_of") {
        let base = base
            .as_str()
            .ok_or_else(|| bad("shift_of must be a name".into()))?;
        let by = parse_degree(
            t.get("by")
                .ok_or_else(|| bad("shift_of needs `by`".into()))?,
        )
        .map_err(bad)?;
        return match lookup_module(ws, base) {
            Some(m) => Ok(Some(m.shift(&by))),
            None if is_pending(ws, base) => Ok(None),
            None => Err(bad(format!("unknown module `{base}`"))),
        };
    }
    let ring_name = t
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `ring`".into()))?;
    let ring = ws
        .graded_ring(ring_name)
        .ok_or_else(|| bad(format!("`{ring_name}` is not a graded ring")))?;
    let shifts = match t.get("shifts") {
        Some(Value::Array(a)) => a
            .iter()
            .map(parse_degree)
            .collect::<Result<Vec<_>, _>>()
            .map_err(bad)?,
        _ => return Err(bad("missing `shifts`".into())),
    };
    let relations = match t.get("relations") {
        None => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .map(|v| parse_element(ring, v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(bad)?,
        Some(_) => return Err(bad("relations must be an array".into())),
    };
    if relations.iter().any(|r| r.len() != shifts.len()) {
        return Err(bad("each relation needs one entry per generator".into()));
    }
    GradedModule::new(ring, shifts, relations)
        .map(Some)
        .map_err(|e| bad(e.to_string()))
}

fn is_pending(ws: &Workspace, n: &str) -> bool {
    ws.pending_modules.iter().any(|m| m == n)
}

/// A module by name; ring names denote the ring as a free module of rank one.
pub fn lookup_module(ws: &Workspace, name: &str) -> Option<GradedModule> {
    ws.modules
        .get(name)
        .cloned()
        .or_else(|| ws.graded_ring(name).map(GradedRing::as_module))
}

fn parse_complex(ws: &Workspace, name: &str, t: &Table) -> Result<GradedComplex, CliError> {
    let header = format!("[complexes.{name}]");
    let bad = |m: String| ws.invalid(&header, m);
    let ring_name = t
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `ring`".into()))?;
    let ring = ws
        .graded_ring(ring_name)
        .ok_or_else(|| bad(format!("`{ring_name}` is not a graded ring")))?;
    let index = |k: &str| {
        k.parse::<i64>()
            .map_err(|_| bad(format!("`{k}` is not an index")))
    };
    let mut terms = BTreeMap::new();
    let term_table = t
        .get("terms")
        .and_then(Value::as_table)
        .ok_or_else(|| bad("missing `terms`".into()))?;
    for (k, v) in term_table {
        let m = v
            .as_str()
            .and_then(|n| lookup_module(ws, n))
            .ok_or_else(|| bad(format!("term {k} is not a module")))?;
        terms.insert(index(k)?, m);
    }
    let zero = GradedModule::zero(ring);
    let mut diffs = BTreeMap::new();
    if let Some(dt) = t.get("differentials").and_then(Value::as_table) {
        for (k, v) in dt {
            let i = index(k)?;
            let src = terms.get(&i).unwrap_or(&zero);
            let tgt = terms.get(&(i - 1)).unwrap_or(&zero);
            let rows = parse_poly_matrix(ring, v).map_err(bad)?;
            let d = GradedMap::from_matrix(src, tgt, &rows, ring.zero_degree())
                .map_err(|e| bad(format!("d_{i}: {e}")))?;
            diffs.insert(i, d);
        }
    }
    GradedComplex::new(ring, terms, diffs).map_err(|e| bad(e.to_string()))
}

pub fn parse_poly_matrix(ring: &GradedRing, v: &Value) -> Result<Vec<Vec<Polynomial>>, String> {
    let rows = v.as_array().ok_or("a matrix is an array of rows")?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or("a matrix row is an array")?
                .iter()
                .map(|e| match e {
                    Value::String(s) => ring.parse(s).map_err(|e| e.to_string()),
                    Value::Integer(i) => Ok(Polynomial::constant(ring.nvars(), *i)),
                    _ => Err("matrix entries are polynomial strings".to_string()),
                })
                .collect()
        })
        .collect()
}

fn parse_coaction(ws: &Workspace, name: &str, t: &Table) -> Result<RingCoaction, CliError> {
    let header = format!("[coactions.{name}]");
    let bad = |m: String| ws.invalid(&header, m);
    let ring_name = t
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `ring`".into()))?;
    let r = ws
        .rings
        .get(ring_name)
        .ok_or_else(|| bad(format!("unknown ring `{ring_name}`")))?;
    let images_t = t
        .get("images")
        .and_then(Value::as_table)
        .ok_or_else(|| bad("missing `images`".into()))?;
    let mut images = Vec::new();
    for v in &r.names {
        let terms = images_t
            .get(v)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("no image for `{v}`")))?;
        let mut e = GroupRingElement::zero();
        for term in terms {
            let pair = term
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("image terms are [polynomial, degree]".into()))?;
            let p = pair[0]
                .as_str()
                .ok_or_else(|| bad("image coefficient must be a string".into()))?;
            let p = parse_polynomial(p, &r.names).map_err(|e| bad(e.to_string()))?;
            let g = parse_degree(&pair[1]).map_err(bad)?;
            if g.dim() != r.dimension {
                return Err(bad(format!("degree {g} has the wrong dimension")));
            }
            e.add_term(g, p);
        }
        images.push(e);
    }
    Ok(RingCoaction {
        names: r.names.clone(),
        relations: r.ideal.clone(),
        dimension: r.dimension,
        weight: r.weight.clone(),
        images,
    })
}

/// Parses and validates a task file.
pub fn load(source: &str) -> Result<Workspace, CliError> {
    let root: Table = source
        .parse()
        .map_err(|e: toml::de::Error| CliError::Parse {
            line: e.span().map(|s| source[..s.start].lines().count().max(1)),
            message: e.message().to_string(),
        })?;
    let mut ws = Workspace {
        source: source.to_string(),
        ..Default::default()
    };
    if let Some(rings) = table(&root, "rings")? {
        for (name, v) in rings {
            let t = v
                .as_table()
                .ok_or_else(|| ws.invalid(&format!("[rings.{name}]"), "must be a table"))?;
            let entry = parse_ring(&ws, name, t)?;
            ws.rings.insert(name.clone(), entry);
        }
    }
    if let Some(modules) = table(&root, "modules")? {
        let mut pending: Vec<(&String, &Table)> = Vec::new();
        for (name, v) in modules {
            let t = v
                .as_table()
                .ok_or_else(|| ws.invalid(&format!("[modules.{name}]"), "must be a table"))?;
            pending.push((name, t));
        }
        while !pending.is_empty() {
            ws.pending_modules = pending.iter().map(|(n, _)| (*n).clone()).collect();
            let before = pending.len();
            let mut rest = Vec::new();
            for (name, t) in pending {
                match parse_module(&ws, name, t)? {
                    Some(m) => {
                        ws.modules.insert(name.clone(), m);
                    }
                    None => rest.push((name, t)),
                }
            }
            if rest.len() == before {
                let (name, _) = rest[0];
                return Err(ws.invalid(
                    &format!("[modules.{name}]"),
                    "refers to modules in a cycle or to unknown modules",
                ));
            }
            pending = rest;
        }
        ws.pending_modules.clear();
    }
    if let Some(complexes) = table(&root, "complexes")? {
        for (name, v) in complexes {
            let t = v
                .as_table()
                .ok_or_else(|| ws.invalid(&format!("[complexes.{name}]"), "must be a table"))?;
            let c = parse_complex(&ws, name, t)?;
            ws.complexes.insert(name.clone(), c);
        }
    }
    if let Some(coactions) = table(&root, "coactions")? {
        for (name, v) in coactions {
            let t = v
                .as_table()
                .ok_or_else(|| ws.invalid(&format!("[coactions.{name}]"), "must be a table"))?;
            let c = parse_coaction(&ws, name, t)?;
            ws.coactions.insert(name.clone(), c);
        }
    }
    match root.get("tasks") {
        None => {}
        Some(Value::Array(a)) => {
            for (n, v) in a.iter().enumerate() {
                let t = v.as_table().ok_or_else(|| CliError::Validation {
                    line: ws.task_line(n),
                    message: "each task must be a table".into(),
                })?;
                ws.tasks.push(t.clone());
            }
        }
        Some(_) => {
            return Err(CliError::Validation {
                line: line_of(source, "tasks"),
                message: "`tasks` must be an array of tables ([[tasks]])".into(),
            })
        }
    }
    Ok(ws)
}
