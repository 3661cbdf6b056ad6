//! Task keywords and their execution against the kernel.

use std::collections::BTreeMap;

use gradwise::abelian::{cokernel, hom_group, homology, smith_normal_form};
use gradwise::comodule::{
    coaction_from_grading, comodule_coaction, graded_part_from_coaction, grading_from_coaction,
    module_group_ring, roundtrip_equivalence_check, verify_coaction_axioms, AxiomReport,
    GroupRingElement,
};
use gradwise::completion::action_on_homotopy;
use gradwise::completion::{
    completed_tensor, derived_completion, derived_idempotence, derived_nakayama_check,
    gradedwise_completion, gradedwise_idempotence, is_derived_gradedwise_complete,
    iterated_vs_joint, milnor_check, pro_isomorphism_check, telescope, tower_limits, AbTower,
    Completeness, CompletionApproximation, DegreeLimit, InvariantReport, Lim1Status, LimitStatus,
    TelescopeVerdict, VanishReason,
};
use gradwise::derived::{
    derived_quotient, koszul_complex, nonvanishing_indices, tensor_with_perfect, torsion_exponents,
    verify_quotient_ses, GradedComplex, KoszulData,
};
use gradwise::graded_algebra::{
    day_tensor_piece, day_tensor_total, decompose, forgetful_tensor, graded_hom,
    graded_hom_fiber_check, graded_map_from_coefficients, module_piece, retract_map, ring_piece,
    shift, UngradedMap,
};
use gradwise::grading::validate_signature;
use gradwise::{AbMap, Degree, Error, FpAbGroup, GradedModule, GradedRing, IntMatrix, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use toml::Table;

use crate::report::{Status, TaskReport};
use crate::taskfile::{lookup_module, parse_degree, parse_scalar, Workspace};
use crate::{parse_window, CliError, Flags};

/// Every task keyword, in the order they are documented.
pub const KEYWORDS: &[&str] = &[
    "snf",
    "group",
    "homology",
    "hom",
    "signature",
    "monomials",
    "ring_piece",
    "pieces",
    "shift",
    "decompose",
    "day_tensor",
    "day_compat",
    "graded_hom",
    "hom_fiber",
    "retract",
    "koszul",
    "derived_quotient",
    "homotopy",
    "tensor_perfect",
    "ses",
    "torsion",
    "nonvanishing",
    "tower_limits",
    "milnor",
    "gradedwise_completion",
    "derived_completion",
    "completed_tensor",
    "telescope",
    "action",
    "completeness",
    "nakayama",
    "pro_isomorphism",
    "idempotence",
    "iterated_vs_joint",
    "group_ring",
    "coaction_from_grading",
    "grading_from_coaction",
    "verify_coaction",
    "module_group_ring",
    "comodule_coaction",
    "graded_part",
    "roundtrip",
];

/// Kernel operation → the keyword that reaches it.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("smith_normal_form", "snf"),
    ("cokernel", "group"),
    ("homology", "homology"),
    ("hom_group", "hom"),
    ("validate_signature", "signature"),
    ("monomials_of_degree", "monomials"),
    ("ring_piece", "ring_piece"),
    ("module_piece", "pieces"),
    ("shift", "shift"),
    ("decompose", "decompose"),
    ("day_tensor_piece", "day_tensor"),
    ("day_tensor_total", "day_compat"),
    ("forgetful_tensor", "day_compat"),
    ("graded_hom", "graded_hom"),
    ("graded_hom_fiber_check", "hom_fiber"),
    ("retract_map", "retract"),
    ("koszul_complex", "koszul"),
    ("derived_quotient", "derived_quotient"),
    ("homotopy_groups", "homotopy"),
    ("tensor_with_perfect", "tensor_perfect"),
    ("verify_quotient_ses", "ses"),
    ("torsion_exponents", "torsion"),
    ("nonvanishing_indices", "nonvanishing"),
    ("tower_limits", "tower_limits"),
    ("milnor_check", "milnor"),
    ("gradedwise_completion", "gradedwise_completion"),
    ("derived_completion", "derived_completion"),
    ("completed_tensor", "completed_tensor"),
    ("telescope", "telescope"),
    ("action_on_homotopy", "action"),
    ("is_derived_gradedwise_complete", "completeness"),
    ("derived_nakayama_check", "nakayama"),
    ("pro_isomorphism_check", "pro_isomorphism"),
    ("gradedwise_idempotence", "idempotence"),
    ("derived_idempotence", "idempotence"),
    ("iterated_vs_joint", "iterated_vs_joint"),
    ("comultiply", "group_ring"),
    ("counit", "group_ring"),
    ("antipode", "group_ring"),
    ("coaction_from_grading", "coaction_from_grading"),
    ("grading_from_coaction", "grading_from_coaction"),
    ("verify_coaction_axioms", "verify_coaction"),
    ("module_group_ring", "module_group_ring"),
    ("comodule_coaction", "comodule_coaction"),
    ("graded_part_from_coaction", "graded_part"),
    ("roundtrip_equivalence_check", "roundtrip"),
];

const DEFAULT_WINDOW: (i64, i64) = (0, 6);
const DEFAULT_DEPTH: u32 = 8;
const DEFAULT_PRECISION: u32 = 6;

enum OpError {
    Cli(CliError),
    Core(Error),
}

impl From<CliError> for OpError {
    fn from(e: CliError) -> Self {
        OpError::Cli(e)
    }
}

impl From<Error> for OpError {
    fn from(e: Error) -> Self {
        OpError::Core(e)
    }
}

type OpResult = Result<TaskReport, OpError>;

struct Ctx<'a> {
    ws: &'a Workspace,
    task: &'a Table,
    n: usize,
    flags: &'a Flags,
}

fn group_str(g: &FpAbGroup) -> String {
    g.to_string()
}

fn degree_json(d: &Degree) -> Value {
    Value::String(d.to_string())
}

impl<'a> Ctx<'a> {
    fn invalid(&self, message: impl Into<String>) -> CliError {
        CliError::Validation {
            line: self.ws.task_line(self.n),
            message: format!("task {}: {}", self.n + 1, message.into()),
        }
    }

    fn get(&self, key: &str) -> Option<&'a toml::Value> {
        self.task.get(key)
    }

    fn str_opt(&self, key: &str) -> Result<Option<&'a str>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_str()
                .map(Some)
                .ok_or_else(|| self.invalid(format!("`{key}` must be a string"))),
        }
    }

    fn str(&self, key: &str) -> Result<&'a str, CliError> {
        self.str_opt(key)?
            .ok_or_else(|| self.invalid(format!("missing `{key}`")))
    }

    fn int_or(&self, key: &str, default: i64) -> Result<i64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_integer()
                .ok_or_else(|| self.invalid(format!("`{key}` must be an integer"))),
        }
    }

    fn u32_or(&self, key: &str, default: u32) -> Result<u32, CliError> {
        let v = self.int_or(key, default as i64)?;
        u32::try_from(v)
            .map_err(|_| self.invalid(format!("`{key}` must be a non-negative integer")))
    }

    fn depth(&self) -> Result<u32, CliError> {
        match self.flags.depth {
            Some(d) => Ok(d),
            None => self.u32_or("depth", DEFAULT_DEPTH),
        }
    }

    fn precision(&self) -> Result<u32, CliError> {
        match self.flags.precision {
            Some(p) => Ok(p),
            None => self.u32_or("precision", DEFAULT_PRECISION),
        }
    }

    fn indices(&self, default: Vec<i64>) -> Result<Vec<i64>, CliError> {
        if let Some(i) = self.get("index") {
            return i
                .as_integer()
                .map(|i| vec![i])
                .ok_or_else(|| self.invalid("`index` must be an integer"));
        }
        match self.get("indices") {
            None => Ok(default),
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| {
                    v.as_integer()
                        .ok_or_else(|| self.invalid("`indices` must be integers"))
                })
                .collect(),
            Some(_) => Err(self.invalid("`indices` must be an array")),
        }
    }

    fn degree(&self, key: &str) -> Result<Degree, CliError> {
        let v = self
            .get(key)
            .ok_or_else(|| self.invalid(format!("missing `{key}`")))?;
        parse_degree(v).map_err(|e| self.invalid(format!("`{key}`: {e}")))
    }

    fn degree_list(&self, key: &str) -> Result<Option<Vec<Degree>>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| parse_degree(v).map_err(|e| self.invalid(format!("`{key}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => Err(self.invalid(format!("`{key}` must be an array of degrees"))),
        }
    }

    fn weight_window(&self) -> Result<(BigRational, BigRational), CliError> {
        if let Some(w) = &self.flags.window {
            return Ok(w.clone());
        }
        match self.str_opt("window")? {
            Some(s) => parse_window(s).map_err(|e| self.invalid(e)),
            None => Ok((
                BigRational::from_integer(DEFAULT_WINDOW.0.into()),
                BigRational::from_integer(DEFAULT_WINDOW.1.into()),
            )),
        }
    }

    /// Explicit `degrees`, else every degree of `ring` reachable from `shifts` whose weight is in the window.
    fn window(&self, ring: &GradedRing, shifts: &[Degree]) -> Result<Vec<Degree>, CliError> {
        if self.flags.window.is_none() {
            if let Some(d) = self.degree_list("degrees")? {
                return Ok(d);
            }
        }
        let (lo, hi) = self.weight_window()?;
        let sig = ring.sig();
        let mut seeds: Vec<Degree> = shifts.to_vec();
        seeds.push(ring.zero_degree());
        Ok(sig.window_degrees(&seeds, &lo, &hi))
    }

    fn module_window(&self, m: &GradedModule) -> Result<Vec<Degree>, CliError> {
        self.window(m.ring(), m.shifts())
    }

    fn complex_window(&self, c: &GradedComplex) -> Result<Vec<Degree>, CliError> {
        let shifts: Vec<Degree> = c
            .terms()
            .values()
            .flat_map(|m| m.shifts().to_vec())
            .collect();
        self.window(c.ring(), &shifts)
    }

    fn bound(&self) -> Result<BigRational, CliError> {
        match self.get("bound") {
            Some(v) => parse_scalar(v).map_err(|e| self.invalid(format!("`bound`: {e}"))),
            None => Ok(self.weight_window()?.1),
        }
    }

    fn ring(&self, key: &str) -> Result<&'a GradedRing, CliError> {
        let name = self.str(key)?;
        self.ws
            .graded_ring(name)
            .ok_or_else(|| self.invalid(format!("`{name}` is not a graded ring")))
    }

    fn module(&self, key: &str) -> Result<GradedModule, CliError> {
        let name = self.str(key)?;
        lookup_module(self.ws, name)
            .ok_or_else(|| self.invalid(format!("`{name}` is not a module")))
    }

    fn modules(&self, key: &str) -> Result<Vec<(String, GradedModule)>, CliError> {
        match self.get(key) {
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| {
                    let name = v
                        .as_str()
                        .ok_or_else(|| self.invalid(format!("`{key}` must list names")))?;
                    let m = lookup_module(self.ws, name)
                        .ok_or_else(|| self.invalid(format!("`{name}` is not a module")))?;
                    Ok((name.to_string(), m))
                })
                .collect(),
            Some(toml::Value::String(_)) => {
                Ok(vec![(self.str(key)?.to_string(), self.module(key)?)])
            }
            _ => Err(self.invalid(format!("missing `{key}`"))),
        }
    }

    /// A named complex, or a module placed in index 0.
    fn complex(&self, key: &str) -> Result<GradedComplex, CliError> {
        let name = self.str(key)?;
        if let Some(c) = self.ws.complexes.get(name) {
            return Ok(c.clone());
        }
        lookup_module(self.ws, name)
            .map(|m| GradedComplex::concentrated(&m, 0))
            .ok_or_else(|| self.invalid(format!("`{name}` is neither a complex nor a module")))
    }

    fn poly(&self, ring: &GradedRing, key: &str) -> Result<Polynomial, CliError> {
        let s = self.str(key)?;
        ring.parse(s)
            .map_err(|e| self.invalid(format!("`{key}`: {e}")))
    }

    fn polys(&self, ring: &GradedRing, key: &str) -> Result<Vec<Polynomial>, CliError> {
        match self.get(key) {
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| {
                    let s = v.as_str().ok_or_else(|| {
                        self.invalid(format!("`{key}` must list polynomial strings"))
                    })?;
                    ring.parse(s)
                        .map_err(|e| self.invalid(format!("`{key}`: {e}")))
                })
                .collect(),
            Some(toml::Value::String(s)) => Ok(vec![ring
                .parse(s)
                .map_err(|e| self.invalid(format!("`{key}`: {e}")))?]),
            _ => Err(self.invalid(format!("missing `{key}`"))),
        }
    }

    fn int_matrix(&self, key: &str) -> Result<IntMatrix, CliError> {
        let v = self
            .get(key)
            .ok_or_else(|| self.invalid(format!("missing `{key}`")))?;
        int_matrix(v).map_err(|e| self.invalid(format!("`{key}`: {e}")))
    }
}

fn big_int(v: &toml::Value) -> Result<BigInt, String> {
    match v {
        toml::Value::Integer(i) => Ok(BigInt::from(*i)),
        toml::Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not an integer")),
        _ => Err("entries must be integers".into()),
    }
}

fn int_matrix(v: &toml::Value) -> Result<IntMatrix, String> {
    let rows = v.as_array().ok_or("a matrix is an array of rows")?;
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or("a matrix row is an array")?
                .iter()
                .map(big_int)
                .collect()
        })
        .collect::<Result<_, String>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err("matrix rows have different lengths".into());
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn status_of_limit(l: &DegreeLimit) -> (&'static str, String, String) {
    match &l.status {
        LimitStatus::Stabilized { value, stage } => {
            ("stabilized", group_str(value), stage.to_string())
        }
        LimitStatus::SurjectiveTail => ("surjective-tail", "-".into(), "-".into()),
        LimitStatus::Undetermined => ("undetermined", "-".into(), "-".into()),
    }
}

fn lim1_str(l: Lim1Status) -> &'static str {
    match l {
        Lim1Status::CertifiedZero => "0",
        Lim1Status::Undetermined => "?",
    }
}

fn limit_json(l: &DegreeLimit) -> Value {
    let (status, value, stage) = status_of_limit(l);
    json!({ "status": status, "value": value, "stage": stage, "lim1": lim1_str(l.lim1) })
}

fn verdict_str(v: &TelescopeVerdict) -> String {
    match v {
        TelescopeVerdict::Vanishes(VanishReason::ZeroPiece) => "vanishes (zero piece)".into(),
        TelescopeVerdict::Vanishes(VanishReason::Weight { steps }) => {
            format!("vanishes (weight, {steps} steps)")
        }
        TelescopeVerdict::Vanishes(VanishReason::Nilpotent { power }) => {
            format!("vanishes (nilpotent, power {power})")
        }
        TelescopeVerdict::NonVanishing { witness } => format!("nonvanishing ({witness})"),
        TelescopeVerdict::Undetermined => "undetermined".into(),
    }
}

fn limits_table(
    rep: &mut TaskReport,
    approx: &CompletionApproximation,
    indices: &[i64],
    window: &[Degree],
) -> Result<(), Error> {
    let mut status = Status::Ok;
    let mut rows = Vec::new();
    for &i in indices {
        for (g, lim) in approx.limits(i, window)? {
            if matches!(lim.status, LimitStatus::Undetermined) {
                status = Status::Undetermined;
            }
            let top = approx.value(i, &g)?;
            let (s, v, st) = status_of_limit(&lim);
            rep.row(vec![
                i.to_string(),
                g.to_string(),
                s.into(),
                v,
                st,
                lim1_str(lim.lim1).into(),
                group_str(&top),
            ]);
            let mut j = limit_json(&lim);
            j["index"] = json!(i);
            j["degree"] = degree_json(&g);
            j["top_stage"] = json!(group_str(&top));
            rows.push(j);
        }
    }
    rep.status = status;
    rep.set("precision", json!(approx.precision));
    rep.set("limits", Value::Array(rows));
    Ok(())
}

const LIMIT_HEADER: &[&str] = &[
    "index",
    "degree",
    "status",
    "value",
    "stage",
    "lim1",
    "top stage",
];

fn invariant_into(rep: &mut TaskReport, r: &InvariantReport) {
    rep.status = if !r.failures.is_empty() || r.checked == 0 {
        Status::Fail
    } else if !r.undetermined.is_empty() {
        Status::Undetermined
    } else {
        Status::Pass
    };
    for (k, g) in &r.failures {
        rep.row(vec![k.to_string(), g.to_string(), "fail".into()]);
    }
    for (k, g) in &r.undetermined {
        rep.row(vec![k.to_string(), g.to_string(), "undetermined".into()]);
    }
    if rep.rows.is_empty() {
        rep.row(vec!["-".into(), "-".into(), format!("{} agree", r.checked)]);
    }
    rep.set("checked", json!(r.checked));
    rep.set(
        "failures",
        json!(r
            .failures
            .iter()
            .map(|(k, g)| json!([k, g.to_string()]))
            .collect::<Vec<_>>()),
    );
    rep.set(
        "undetermined",
        json!(r
            .undetermined
            .iter()
            .map(|(k, g)| json!([k, g.to_string()]))
            .collect::<Vec<_>>()),
    );
}

fn axioms_into(rep: &mut TaskReport, a: &AxiomReport) {
    for f in &a.failures {
        rep.row(vec![f.diagram.clone(), f.element.clone()]);
    }
    rep.set("axioms_checked", json!(a.checked));
    rep.set(
        "axiom_failures",
        json!(a
            .failures
            .iter()
            .map(|f| json!({"diagram": f.diagram, "element": f.element}))
            .collect::<Vec<_>>()),
    );
}

fn homotopy_table(
    rep: &mut TaskReport,
    c: &GradedComplex,
    indices: &[i64],
    window: &[Degree],
) -> Result<(), Error> {
    let mut out = Vec::new();
    for &i in indices {
        for (g, h) in c.homotopy_groups(i, window)? {
            rep.row(vec![i.to_string(), g.to_string(), group_str(&h)]);
            out.push(json!({"index": i, "degree": g.to_string(), "group": group_str(&h)}));
        }
    }
    rep.set("homotopy", Value::Array(out));
    Ok(())
}

fn all_indices(c: &GradedComplex) -> Vec<i64> {
    c.bounds()
        .map(|(lo, hi)| (lo..=hi).collect())
        .unwrap_or_default()
}

fn format_group_ring<T>(e: &GroupRingElement<T>, f: impl Fn(&T) -> String) -> String
where
    T: gradwise::comodule::Coefficient,
{
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .iter()
        .map(|(g, c)| format!("({})·t^{g}", f(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn run_op(cx: &Ctx, name: &str, op: &str) -> OpResult {
    let t = |header: &[&str]| TaskReport::new(name, op, header);
    match op {
        "snf" => {
            let a = cx.int_matrix("matrix")?;
            let s = smith_normal_form(&a);
            let mut rep = t(&["i", "d_i"]);
            let f = s.invariant_factors();
            for (i, d) in f.iter().enumerate() {
                rep.row(vec![(i + 1).to_string(), d.to_string()]);
            }
            rep.set("rank", json!(s.rank));
            rep.set(
                "invariant_factors",
                json!(f.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            );
            rep.set(
                "unimodular",
                json!(s.u.is_unimodular() && s.v.is_unimodular()),
            );
            Ok(rep)
        }
        "group" => {
            let g = cokernel(&cx.int_matrix("relations")?);
            let mut rep = t(&["group"]);
            rep.row(vec![group_str(&g)]);
            rep.set("group", json!(group_str(&g)));
            Ok(rep)
        }
        "homology" => {
            let d_in = cx.int_matrix("d_in")?;
            let d_out = cx.int_matrix("d_out")?;
            let a = AbMap::new(
                FpAbGroup::free(d_in.cols()),
                FpAbGroup::free(d_in.rows()),
                d_in,
            )?;
            let b = AbMap::new(
                FpAbGroup::free(d_out.cols()),
                FpAbGroup::free(d_out.rows()),
                d_out,
            )?;
            let h = homology(&a, &b)?;
            let mut rep = t(&["homology"]);
            rep.row(vec![group_str(&h.group)]);
            rep.set("group", json!(group_str(&h.group)));
            Ok(rep)
        }
        "hom" => {
            let a = cokernel(&cx.int_matrix("source")?);
            let b = cokernel(&cx.int_matrix("target")?);
            let h = hom_group(&a, &b);
            let mut rep = t(&["source", "target", "hom"]);
            rep.row(vec![group_str(&a), group_str(&b), group_str(h.group())]);
            rep.set("hom", json!(group_str(h.group())));
            rep.set("basis_size", json!(h.generators().len()));
            Ok(rep)
        }
        "signature" => {
            let r = cx.ring("ring")?;
            let sig = r.sig();
            validate_signature(sig)?;
            let mut rep = t(&["variable", "degree", "weight"]);
            for (v, d) in r.names().iter().zip(sig.generator_degrees()) {
                rep.row(vec![v.clone(), d.to_string(), sig.weight(d).to_string()]);
            }
            rep.status = Status::Pass;
            rep.set("dimension", json!(sig.dimension()));
            Ok(rep)
        }
        "monomials" => {
            let r = cx.ring("ring")?;
            let window = cx.window(r, &[])?;
            let mut rep = t(&["degree", "count", "monomials"]);
            let mut out = Vec::new();
            for g in &window {
                let ms = r.sig().monomials_of_degree(g);
                let names: Vec<String> = ms.iter().map(|m| m.format(r.names())).collect();
                rep.row(vec![g.to_string(), ms.len().to_string(), names.join(" ")]);
                out.push(json!({"degree": g.to_string(), "monomials": names}));
            }
            rep.set("monomials", Value::Array(out));
            Ok(rep)
        }
        "ring_piece" => {
            let r = cx.ring("ring")?;
            let window = cx.window(r, &[])?;
            let mut rep = t(&["degree", "group", "basis"]);
            let mut out = Vec::new();
            for g in &window {
                let p = ring_piece(r, g);
                let basis: Vec<String> = p.basis.iter().map(|m| m.format(r.names())).collect();
                rep.row(vec![g.to_string(), group_str(&p.group), basis.join(" ")]);
                out.push(
                    json!({"degree": g.to_string(), "group": group_str(&p.group), "basis": basis}),
                );
            }
            rep.set("pieces", Value::Array(out));
            Ok(rep)
        }
        "pieces" | "shift" => {
            let mut m = cx.module("module")?;
            if op == "shift" {
                m = shift(&m, &cx.degree("by")?);
            }
            let window = cx.module_window(&m)?;
            let mut rep = t(&["degree", "group"]);
            let mut out = Vec::new();
            for g in &window {
                let p = module_piece(&m, g);
                rep.row(vec![g.to_string(), group_str(&p)]);
                out.push(json!({"degree": g.to_string(), "group": group_str(&p)}));
            }
            rep.set("pieces", Value::Array(out));
            rep.set(
                "shifts",
                json!(m.shifts().iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            );
            Ok(rep)
        }
        "decompose" => {
            let r = cx.ring("ring")?;
            let p = cx.poly(r, "element")?;
            let mut rep = t(&["degree", "component"]);
            let mut out = serde_json::Map::new();
            for (g, c) in decompose(r, &p) {
                rep.row(vec![g.to_string(), r.format(&c)]);
                out.insert(g.to_string(), json!(r.format(&c)));
            }
            rep.set("components", Value::Object(out));
            Ok(rep)
        }
        "day_tensor" => {
            let a = cx.module("left")?;
            let b = cx.module("right")?;
            let mut shifts = a.shifts().to_vec();
            shifts.extend(b.shifts().iter().cloned());
            let full: Vec<Degree> = a
                .shifts()
                .iter()
                .flat_map(|x| b.shifts().iter().map(move |y| x + y))
                .collect();
            let window = cx.window(a.ring(), &full)?;
            let bound = match cx.get("bound") {
                Some(v) => Some(parse_scalar(v).map_err(|e| cx.invalid(format!("`bound`: {e}")))?),
                None => None,
            };
            let mut rep = t(&["degree", "group"]);
            let mut out = Vec::new();
            for g in &window {
                let p = day_tensor_piece(&a, &b, g, bound.as_ref())?;
                rep.row(vec![g.to_string(), group_str(&p)]);
                out.push(json!({"degree": g.to_string(), "group": group_str(&p)}));
            }
            rep.set("pieces", Value::Array(out));
            Ok(rep)
        }
        "day_compat" => {
            let a = cx.module("left")?;
            let b = cx.module("right")?;
            let bound = cx.bound()?;
            let day = day_tensor_total(&a, &b, &bound)?;
            let forget = forgetful_tensor(&a, &b, &bound)?;
            let mut rep = t(&["bound", "day total", "forgetful"]);
            rep.row(vec![bound.to_string(), group_str(&day), group_str(&forget)]);
            rep.status = Status::check(day == forget);
            rep.set("day", json!(group_str(&day)));
            rep.set("forgetful", json!(group_str(&forget)));
            Ok(rep)
        }
        "graded_hom" => {
            let a = cx.module("source")?;
            let b = cx.module("target")?;
            let h = graded_hom(&a, &b)?;
            let mut rep = t(&["hom"]);
            rep.row(vec![group_str(h.group())]);
            rep.set("hom", json!(group_str(h.group())));
            Ok(rep)
        }
        "hom_fiber" => {
            let a = cx.module("source")?;
            let b = cx.module("target")?;
            let bound = cx.bound()?;
            let f = graded_hom_fiber_check(&a, &b, &bound)?;
            let mut rep = t(&["graded", "degreewise", "kernel", "cokernel", "covers"]);
            rep.row(vec![
                group_str(&f.graded),
                group_str(&f.degreewise),
                group_str(&f.comparison_kernel),
                group_str(&f.comparison_cokernel),
                f.window_covers_presentation.to_string(),
            ]);
            rep.status = if !f.equal() {
                Status::Fail
            } else if !f.window_covers_presentation {
                Status::Undetermined
            } else {
                Status::Pass
            };
            rep.set("graded", json!(group_str(&f.graded)));
            rep.set("degreewise", json!(group_str(&f.degreewise)));
            rep.set(
                "window_covers_presentation",
                json!(f.window_covers_presentation),
            );
            Ok(rep)
        }
        "retract" => {
            let a = cx.module("source")?;
            let b = cx.module("target")?;
            let count = cx.u32_or("count", 10)?;
            let seed = cx.int_or("seed", 0)? as u64;
            let window = cx.module_window(&a)?;
            let hom = graded_hom(&a, &b)?;
            let gens = hom.generators().len();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rep = t(&["sample", "coefficients", "retract = map"]);
            let mut all = true;
            for k in 0..count {
                let coeffs: Vec<i64> = (0..gens).map(|_| rng.gen_range(-3..=3)).collect();
                let phi = graded_map_from_coefficients(&hom, &coeffs);
                let back = retract_map(&UngradedMap::forget(&phi, &window)?)?;
                let ok = back.equals(&phi);
                all &= ok;
                rep.row(vec![k.to_string(), format!("{coeffs:?}"), ok.to_string()]);
            }
            rep.status = Status::check(all);
            rep.set("samples", json!(count));
            Ok(rep)
        }
        "koszul" | "derived_quotient" | "homotopy" | "tensor_perfect" => {
            let c = match op {
                "koszul" => {
                    let r = cx.ring("ring")?;
                    let k =
                        KoszulData::new(r, &cx.polys(r, "sequence")?, cx.u32_or("exponent", 1)?)?;
                    koszul_complex(&k)?
                }
                "derived_quotient" => {
                    let c = cx.complex("module")?;
                    let k = KoszulData::new(
                        c.ring(),
                        &cx.polys(c.ring(), "sequence")?,
                        cx.u32_or("exponent", 1)?,
                    )?;
                    derived_quotient(&c, &k)?
                }
                "tensor_perfect" => {
                    tensor_with_perfect(&cx.complex("module")?, &cx.complex("perfect")?)?
                }
                _ => cx.complex("complex")?,
            };
            let window = cx.complex_window(&c)?;
            let indices = cx.indices(all_indices(&c))?;
            let mut rep = t(&["index", "degree", "group"]);
            homotopy_table(&mut rep, &c, &indices, &window)?;
            Ok(rep)
        }
        "ses" => {
            let c = cx.complex("module")?;
            let f = cx.poly(c.ring(), "element")?;
            let e = c.ring().homogeneous_degree(&f)?;
            let window = cx.complex_window(&c)?;
            let indices = cx.indices(vec![0, 1, 2])?;
            let mut rep = t(&["index", "degree", "quotient", "middle", "torsion", "exact"]);
            let mut all = true;
            let mut out = Vec::new();
            for i in indices {
                let r = verify_quotient_ses(&c, &f, &e, i, &window)?;
                all &= r.passed();
                for row in &r.rows {
                    let exact = row.exact.iter().all(|b| *b) && row.counts_consistent();
                    rep.row(vec![
                        i.to_string(),
                        row.degree.to_string(),
                        group_str(&row.quotient),
                        group_str(&row.middle),
                        group_str(&row.torsion),
                        exact.to_string(),
                    ]);
                    out.push(json!({"index": i, "degree": row.degree.to_string(), "passed": row.passed()}));
                }
            }
            rep.status = Status::check(all);
            rep.set("rows", Value::Array(out));
            Ok(rep)
        }
        "torsion" => {
            let c = cx.complex("complex")?;
            let fs = cx.polys(c.ring(), "sequence")?;
            let elements = fs
                .iter()
                .map(|f| Ok((f.clone(), c.ring().homogeneous_degree(f)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let window = cx.complex_window(&c)?;
            let indices = cx.indices(all_indices(&c))?;
            let ex = torsion_exponents(&c, &elements, &indices, &window, cx.depth()?)?;
            let mut rep = t(&["index", "degree", "power"]);
            let mut all = true;
            for ((i, g), k) in &ex {
                all &= k.is_some();
                rep.row(vec![
                    i.to_string(),
                    g.to_string(),
                    k.map_or("-".into(), |k| k.to_string()),
                ]);
            }
            rep.status = if all {
                Status::Pass
            } else {
                Status::Undetermined
            };
            rep.set(
                "powers",
                json!(ex
                    .iter()
                    .map(|((i, g), k)| json!({"index": i, "degree": g.to_string(), "power": k}))
                    .collect::<Vec<_>>()),
            );
            Ok(rep)
        }
        "nonvanishing" => {
            let c = cx.complex("complex")?;
            let (lo, hi) = c.bounds().unwrap_or((0, 0));
            let lo = cx.int_or("from", lo)?;
            let hi = cx.int_or("to", hi)?;
            let window = cx.complex_window(&c)?;
            let found = nonvanishing_indices(&c, lo..=hi, &window)?;
            let mut rep = t(&["index"]);
            for i in &found {
                rep.row(vec![i.to_string()]);
            }
            rep.set("indices", json!(found));
            Ok(rep)
        }
        "tower_limits" => {
            let mut rep = t(&["degree", "status", "value", "stage", "lim1"]);
            let mut out = Vec::new();
            let limits: BTreeMap<String, DegreeLimit> = if let Some(groups) = cx.get("groups") {
                let groups = groups
                    .as_array()
                    .ok_or_else(|| cx.invalid("`groups` must be an array of matrices"))?;
                let objects = groups
                    .iter()
                    .map(|g| int_matrix(g).map(|m| cokernel(&m)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| cx.invalid(format!("`groups`: {e}")))?;
                let maps = match cx.get("maps") {
                    Some(toml::Value::Array(a)) => {
                        a.iter().map(int_matrix).collect::<Result<Vec<_>, _>>()
                    }
                    _ => Err("missing `maps`".into()),
                }
                .map_err(|e| cx.invalid(format!("`maps`: {e}")))?;
                if maps.len() + 1 != objects.len() {
                    return Err(cx.invalid("a tower of N+1 groups needs N maps").into());
                }
                let transitions = maps
                    .into_iter()
                    .enumerate()
                    .map(|(n, m)| AbMap::new(objects[n + 1].clone(), objects[n].clone(), m))
                    .collect::<Result<Vec<_>, _>>()?;
                let tower = AbTower::new(objects, transitions)?;
                [("-".to_string(), tower.limit())].into_iter().collect()
            } else {
                let m = cx.module("module")?;
                let fs = cx.polys(m.ring(), "ideal")?;
                let approx = gradedwise_completion(&m, &fs, cx.depth()?)?;
                let window = cx.module_window(&m)?;
                let mt = approx
                    .module_tower()
                    .expect("gradedwise completions carry their module tower");
                tower_limits(mt, &window)
                    .into_iter()
                    .map(|(g, l)| (g.to_string(), l))
                    .collect()
            };
            rep.status = Status::Ok;
            for (g, l) in &limits {
                if matches!(l.status, LimitStatus::Undetermined) {
                    rep.status = Status::Undetermined;
                }
                let (s, v, st) = status_of_limit(l);
                rep.row(vec![g.clone(), s.into(), v, st, lim1_str(l.lim1).into()]);
                let mut j = limit_json(l);
                j["degree"] = json!(g);
                out.push(j);
            }
            rep.set("limits", Value::Array(out));
            Ok(rep)
        }
        "gradedwise_completion" => {
            let m = cx.module("module")?;
            let fs = cx.polys(m.ring(), "ideal")?;
            let approx = gradedwise_completion(&m, &fs, cx.precision()?)?;
            let window = cx.module_window(&m)?;
            let mut rep = t(LIMIT_HEADER);
            limits_table(&mut rep, &approx, &[0], &window)?;
            Ok(rep)
        }
        "derived_completion" | "completed_tensor" => {
            let c = cx.complex("module")?;
            let fs = cx.polys(c.ring(), "ideal")?;
            let approx = if op == "completed_tensor" {
                completed_tensor(&c, &cx.complex("perfect")?, &fs, cx.precision()?)?
            } else {
                derived_completion(&c, &fs, cx.precision()?)?
            };
            let top = approx.stage(approx.precision).expect("top stage").clone();
            let window = cx.complex_window(&top)?;
            let indices = cx.indices(approx.indices())?;
            let mut rep = t(LIMIT_HEADER);
            limits_table(&mut rep, &approx, &indices, &window)?;
            Ok(rep)
        }
        "milnor" => {
            let c = cx.complex("module")?;
            let fs = cx.polys(c.ring(), "ideal")?;
            let kind = cx.str_opt("kind")?.unwrap_or("derived");
            let approx = match kind {
                "derived" => derived_completion(&c, &fs, cx.precision()?)?,
                "gradedwise" => {
                    let m = cx.module("module")?;
                    gradedwise_completion(&m, &fs, cx.precision()?)?
                }
                other => {
                    return Err(cx
                        .invalid(format!("unknown completion kind `{other}`"))
                        .into())
                }
            };
            let window =
                cx.complex_window(&approx.tower().stages[approx.tower().stages.len() - 1])?;
            let indices = cx.indices(vec![0])?;
            let mut rep = t(&[
                "index",
                "degree",
                "holim",
                "stable",
                "stage",
                "lim1=0",
                "projection iso",
            ]);
            let mut all = true;
            for i in indices {
                let r = milnor_check(approx.tower(), i, &window)?;
                all &= r.passed();
                for row in &r.rows {
                    rep.row(vec![
                        i.to_string(),
                        row.degree.to_string(),
                        group_str(&row.holim),
                        group_str(&row.stable),
                        row.stage.to_string(),
                        row.lim1_zero.to_string(),
                        row.projection_iso.to_string(),
                    ]);
                }
            }
            rep.status = Status::check(all);
            Ok(rep)
        }
        "telescope" => {
            let c = cx.complex("module")?;
            let f = cx.poly(c.ring(), "element")?;
            let window = cx.complex_window(&c)?;
            let indices = cx.indices(all_indices(&c))?;
            let depth = cx.depth()?;
            let mut rep = t(&["index", "degree", "verdict"]);
            let mut out = Vec::new();
            let mut any_und = false;
            for i in indices {
                for g in &window {
                    let v = telescope(&c, &f, i, g, depth)?;
                    any_und |= v == TelescopeVerdict::Undetermined;
                    rep.row(vec![i.to_string(), g.to_string(), verdict_str(&v)]);
                    out.push(
                        json!({"index": i, "degree": g.to_string(), "verdict": verdict_str(&v)}),
                    );
                }
            }
            if any_und {
                rep.status = Status::Undetermined;
            }
            rep.set("verdicts", Value::Array(out));
            Ok(rep)
        }
        "action" => {
            let c = cx.complex("module")?;
            let f = cx.poly(c.ring(), "element")?;
            let window = cx.complex_window(&c)?;
            let indices = cx.indices(all_indices(&c))?;
            let mut rep = t(&[
                "index",
                "degree",
                "source",
                "target",
                "injective",
                "surjective",
            ]);
            for i in indices {
                for g in &window {
                    let a = action_on_homotopy(&c, &f, i, g)?;
                    rep.row(vec![
                        i.to_string(),
                        g.to_string(),
                        group_str(a.source()),
                        group_str(a.target()),
                        a.is_injective().to_string(),
                        a.is_surjective().to_string(),
                    ]);
                }
            }
            Ok(rep)
        }
        "completeness" => {
            let c = cx.complex("module")?;
            let fs = cx.polys(c.ring(), "ideal")?;
            let window = cx.complex_window(&c)?;
            let r = is_derived_gradedwise_complete(&c, &fs, &window, cx.depth()?)?;
            let expect = match cx.str_opt("expect")?.unwrap_or("yes") {
                "yes" => Completeness::CertifiedYes,
                "no" => Completeness::CertifiedNo,
                other => {
                    return Err(cx
                        .invalid(format!("`expect` must be yes or no, not `{other}`"))
                        .into())
                }
            };
            let mut rep = t(&["element", "index", "degree", "verdict"]);
            for ((k, i, g), v) in &r.telescopes {
                rep.row(vec![
                    k.to_string(),
                    i.to_string(),
                    g.to_string(),
                    verdict_str(v),
                ]);
            }
            let verdict = match r.verdict {
                Completeness::CertifiedYes => "certified-yes",
                Completeness::CertifiedNo => "certified-no",
                Completeness::Undetermined => "undetermined",
            };
            rep.status = match r.verdict {
                Completeness::Undetermined => Status::Undetermined,
                v => Status::check(v == expect),
            };
            rep.set("verdict", json!(verdict));
            Ok(rep)
        }
        "nakayama" => {
            let c = cx.complex("module")?;
            let fs = cx.polys(c.ring(), "ideal")?;
            let m = cx.int_or("connectivity", 0)?;
            let window = cx.complex_window(&c)?;
            let r = derived_nakayama_check(&c, &fs, m, &window, cx.depth()?)?;
            let mut rep = t(&["index", "degree"]);
            for (i, g) in &r.counterexamples {
                rep.row(vec![i.to_string(), g.to_string()]);
            }
            rep.status = Status::check(r.passed());
            rep.set("quotient_connective", json!(r.quotient_connective));
            rep.set("asserted", json!(r.asserted));
            rep.set(
                "window",
                json!(r.window.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
            );
            Ok(rep)
        }
        "pro_isomorphism" => {
            let m = cx.module("module")?;
            let f = cx.poly(m.ring(), "element")?;
            let window = cx.module_window(&m)?;
            let r = pro_isomorphism_check(&m, &f, cx.depth()?, &window)?;
            let mut rep = t(&["degree", "c"]);
            for (g, c) in &r.torsion_bounds {
                rep.row(vec![g.to_string(), c.to_string()]);
            }
            rep.status = Status::check(r.passed());
            rep.set("bound", json!(r.bound));
            rep.set("window_dependent", json!(r.window_dependent));
            rep.set("pi1_pro_zero", json!(r.pi1_pro_zero));
            rep.set("pi0_agree", json!(r.pi0_agree));
            Ok(rep)
        }
        "idempotence" | "iterated_vs_joint" => {
            let n = cx.precision()?;
            let kind = cx.str_opt("kind")?.unwrap_or("derived");
            let mut rep = t(&["index/stage", "degree", "outcome"]);
            let r = if op == "iterated_vs_joint" {
                let c = cx.complex("module")?;
                let fs = cx.polys(c.ring(), "ideal")?;
                let window = cx.complex_window(&c)?;
                iterated_vs_joint(&c, &fs, n, &window)?
            } else if kind == "gradedwise" {
                let m = cx.module("module")?;
                let fs = cx.polys(m.ring(), "ideal")?;
                let window = cx.module_window(&m)?;
                gradedwise_idempotence(&m, &fs, n, &window)?
            } else if kind == "derived" {
                let c = cx.complex("module")?;
                let fs = cx.polys(c.ring(), "ideal")?;
                let window = cx.complex_window(&c)?;
                derived_idempotence(&c, &fs, n, &window)?
            } else {
                return Err(cx
                    .invalid(format!("unknown completion kind `{kind}`"))
                    .into());
            };
            invariant_into(&mut rep, &r);
            Ok(rep)
        }
        "group_ring" => {
            let terms = cx
                .get("terms")
                .and_then(|v| v.as_array())
                .ok_or_else(|| cx.invalid("missing `terms`"))?;
            let mut x: GroupRingElement<BigInt> = GroupRingElement::zero();
            for term in terms {
                let pair = term
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| cx.invalid("terms are [integer, degree]"))?;
                let c = big_int(&pair[0]).map_err(|e| cx.invalid(e))?;
                let g = parse_degree(&pair[1]).map_err(|e| cx.invalid(e))?;
                x.add_term(g, c);
            }
            let delta = x.comultiply();
            let counit = x.counit(&BigInt::from(0));
            let anti = x.antipode();
            // (ε ⊗ id)Δ = id and ι∘ι = id
            let mut left: GroupRingElement<BigInt> = GroupRingElement::zero();
            for ((_, h), c) in &delta {
                left.add_term(h.clone(), c.clone());
            }
            let ok = left == x && anti.antipode() == x;
            let show = |e: &GroupRingElement<BigInt>| format_group_ring(e, |c| c.to_string());
            let delta_s = if delta.is_empty() {
                "0".to_string()
            } else {
                delta
                    .iter()
                    .map(|((g, h), c)| format!("{c}·t^{g}⊗t^{h}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            let mut rep = t(&["x", "comultiply", "counit", "antipode"]);
            rep.row(vec![
                show(&x),
                delta_s.clone(),
                counit.to_string(),
                show(&anti),
            ]);
            rep.status = Status::check(ok);
            rep.set("comultiply", json!(delta_s));
            rep.set("counit", json!(counit.to_string()));
            rep.set("antipode", json!(show(&anti)));
            Ok(rep)
        }
        "coaction_from_grading" => {
            let r = cx.ring("ring")?;
            let c = coaction_from_grading(r);
            let mut rep = t(&["variable", "image"]);
            for (v, img) in r.names().iter().zip(&c.images) {
                rep.row(vec![v.clone(), format_group_ring(img, |p| r.format(p))]);
            }
            let samples = ring_samples(r);
            let a = verify_coaction_axioms(&c, &samples);
            axioms_into(&mut rep, &a);
            rep.status = Status::check(a.passed());
            Ok(rep)
        }
        "grading_from_coaction" => {
            let (coaction, original) = match cx.str_opt("coaction")? {
                Some(name) => (
                    cx.ws
                        .coactions
                        .get(name)
                        .cloned()
                        .ok_or_else(|| cx.invalid(format!("unknown coaction `{name}`")))?,
                    None,
                ),
                None => {
                    let r = cx.ring("ring")?;
                    (coaction_from_grading(r), Some(r))
                }
            };
            let (lo, hi) = cx.weight_window()?;
            let probe = GradedRing::new(
                gradwise::GradingSignature::unchecked(
                    coaction.dimension,
                    coaction
                        .images
                        .iter()
                        .map(|i| {
                            i.support()
                                .first()
                                .cloned()
                                .unwrap_or_else(|| Degree::zero(coaction.dimension))
                        })
                        .collect(),
                    coaction.weight.clone(),
                ),
                coaction.names.clone(),
                coaction.relations.clone(),
            );
            let window = match (&probe, cx.degree_list("degrees")?) {
                (_, Some(d)) if cx.flags.window.is_none() => d,
                (Ok(p), _) => p.sig().window_degrees(&[p.zero_degree()], &lo, &hi),
                (Err(_), _) => Vec::new(),
            };
            let (ring, consistency) = grading_from_coaction(&coaction, &window)?;
            let mut rep = t(&["degree", "recovered", "original"]);
            let mut ok = consistency.passed();
            for g in &window {
                let got = ring_piece(&ring, g).group;
                let want = original.map(|o| ring_piece(o, g).group);
                if let Some(w) = &want {
                    ok &= *w == got;
                }
                rep.row(vec![
                    g.to_string(),
                    group_str(&got),
                    want.map_or("-".into(), |w| group_str(&w)),
                ]);
            }
            rep.status = Status::check(ok);
            rep.set(
                "degrees",
                json!(ring
                    .sig()
                    .generator_degrees()
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()),
            );
            rep.set("consistency_checked", json!(consistency.checked));
            rep.set("consistency_failures", json!(consistency.failures));
            Ok(rep)
        }
        "verify_coaction" => {
            let mut rep = t(&["diagram", "element"]);
            let a = if let Some(name) = cx.str_opt("coaction")? {
                let c = cx
                    .ws
                    .coactions
                    .get(name)
                    .ok_or_else(|| cx.invalid(format!("unknown coaction `{name}`")))?;
                let samples = match cx.get("samples") {
                    Some(toml::Value::Array(a)) => a
                        .iter()
                        .map(|v| {
                            let s = v.as_str().ok_or_else(|| {
                                cx.invalid("`samples` must be polynomial strings")
                            })?;
                            gradwise::poly::parse_polynomial(s, &c.names)
                                .map_err(|e| cx.invalid(e.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                    _ => presentation_samples(c.nvars()),
                };
                verify_coaction_axioms(c, &samples)
            } else {
                let m = cx.module("module")?;
                let c = comodule_coaction(&m);
                verify_coaction_axioms(&c, &module_samples(&m))
            };
            axioms_into(&mut rep, &a);
            rep.status = Status::check(a.passed());
            Ok(rep)
        }
        "module_group_ring" => {
            let m = cx.module("module")?;
            let twists = cx
                .degree_list("twists")?
                .unwrap_or_else(|| vec![m.ring().zero_degree()]);
            let mg = module_group_ring(&m, &twists)?;
            let window = cx.module_window(&mg)?;
            let mut rep = t(&["degree", "group"]);
            for g in &window {
                rep.row(vec![g.to_string(), group_str(&mg.piece_group(g))]);
            }
            rep.set("generators", json!(mg.num_generators()));
            Ok(rep)
        }
        "comodule_coaction" => {
            let m = cx.module("module")?;
            let c = comodule_coaction(&m);
            let names = m.ring().names().to_vec();
            let mut rep = t(&["generator", "image"]);
            for (j, img) in c.images.iter().enumerate() {
                let s = format_group_ring(img, |e| {
                    e.components()
                        .iter()
                        .map(|p| p.format(&names))
                        .collect::<Vec<_>>()
                        .join(", ")
                });
                rep.row(vec![format!("e{j}"), s]);
            }
            let a = verify_coaction_axioms(&c, &module_samples(&m));
            let mapped = c.graded_map(&[m.ring().zero_degree()]).is_ok();
            axioms_into(&mut rep, &a);
            rep.status = Status::check(a.passed() && mapped);
            rep.set("graded_map_ok", json!(mapped));
            Ok(rep)
        }
        "graded_part" => {
            let m = cx.module("module")?;
            let window = cx.module_window(&m)?;
            let targets = match cx.get("degree") {
                Some(_) => vec![cx.degree("degree")?],
                None => window.clone(),
            };
            let c = comodule_coaction(&m);
            let mut rep = t(&["degree", "recovered", "piece", "section"]);
            let mut ok = true;
            for g in &targets {
                let part = graded_part_from_coaction(&c, g, &window)?;
                let piece = m.piece_group(g);
                ok &= part.section_ok && part.group == piece;
                rep.row(vec![
                    g.to_string(),
                    group_str(&part.group),
                    group_str(&piece),
                    part.section_ok.to_string(),
                ]);
            }
            rep.status = Status::check(ok);
            Ok(rep)
        }
        "roundtrip" => {
            let ms = cx.modules(if cx.get("modules").is_some() {
                "modules"
            } else {
                "module"
            })?;
            let mut rep = t(&[
                "module",
                "degree",
                "recovered",
                "expected",
                "section",
                "passed",
            ]);
            let mut ok = true;
            let mut out = Vec::new();
            for (name, m) in &ms {
                let window = cx.module_window(m)?;
                let r = roundtrip_equivalence_check(m, &window)?;
                ok &= r.passed();
                for row in &r.rows {
                    rep.row(vec![
                        name.clone(),
                        row.degree.to_string(),
                        group_str(&row.recovered),
                        group_str(&row.expected),
                        row.section_ok.to_string(),
                        row.passed().to_string(),
                    ]);
                }
                out.push(json!({
                    "module": name,
                    "passed": r.passed(),
                    "axioms": r.axioms.passed(),
                    "graded_map_ok": r.graded_map_ok,
                }));
            }
            rep.status = Status::check(ok);
            rep.set("modules", Value::Array(out));
            Ok(rep)
        }
        other => Err(cx.invalid(format!("unknown operation `{other}`")).into()),
    }
}

fn presentation_samples(n: usize) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(n, i)).collect();
    for i in 0..n {
        for j in i..n {
            out.push(Polynomial::variable(n, i).mul(&Polynomial::variable(n, j)));
        }
    }
    let sum = out.iter().fold(Polynomial::one(n), |a, b| a.add(b));
    out.push(sum);
    out
}

fn ring_samples(r: &GradedRing) -> Vec<Polynomial> {
    presentation_samples(r.nvars())
}

fn module_samples(m: &GradedModule) -> Vec<gradwise::ModuleElement> {
    let n = m.nvars();
    let mut out = Vec::new();
    for j in 0..m.num_generators() {
        out.push(m.generator(j));
        for i in 0..n {
            out.push(m.element_on(j, Polynomial::variable(n, i)));
        }
    }
    let sum = out.iter().fold(m.zero_element(), |a, b| a.add(b));
    out.push(sum);
    out
}

/// Runs one task. Parameter problems are validation errors; kernel errors are
/// reported as task errors, except missing certificates, which are undetermined.
pub fn execute(
    ws: &Workspace,
    n: usize,
    task: &Table,
    flags: &Flags,
) -> Result<TaskReport, CliError> {
    let cx = Ctx { ws, task, n, flags };
    let op = cx.str("op")?;
    if !KEYWORDS.contains(&op) {
        return Err(cx.invalid(format!("unknown operation `{op}`")));
    }
    let default_name = format!("task{}", n + 1);
    let name = cx.str_opt("name")?.unwrap_or(&default_name);
    match run_op(&cx, name, op) {
        Ok(r) => Ok(r),
        Err(OpError::Cli(e)) => Err(e),
        Err(OpError::Core(e)) => {
            let status = match e {
                Error::NotStabilized { .. } | Error::PreconditionNotCertified(_) => {
                    Status::Undetermined
                }
                _ => Status::Error,
            };
            let mut rep = TaskReport::new(name, op, &["message"]);
            rep.row(vec![e.to_string()]);
            rep.status = status;
            rep.set("error", json!(e.to_string()));
            Ok(rep)
        }
    }
}
