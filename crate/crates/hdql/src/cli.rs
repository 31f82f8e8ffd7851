//! Command implementations for the `hdql` binary: check, eval, init, query.
//!
//! Exit codes: 0 when the command completed (whatever the verdict), 1 for
//! usage errors, 2 for parse errors, 3 for invalid models or non-Horn
//! programs, 4 when a query ran against an unsatisfiable program. Parse
//! errors print as `file:line:col: message`.
//!
//! JSON output is schema-stable and reproducible for a fixed (spec, config,
//! seed): maps are ordered, no timing fields are emitted, and floats are
//! printed with 17 significant digits, which round-trips every f64 exactly.

use crate::eval::{EvalCtx, EvalError};
use crate::extent::Extent;
use crate::horn::{self, HornProgram, QueryOutcome, SatVerdict};
use crate::linalg::{C64, CVector};
use crate::model::{validate_model, Bindings, Model};
use crate::sentence::classify;
use crate::specfile::{sample_unit_pair, SpecFile};
use crate::syntax::{parse_query_str, parse_sentence_str, parse_spec, parse_term_str};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MODEL: i32 = 3;
pub const EXIT_UNSAT: i32 = 4;

/// Options shared by all commands; unset numeric options fall back to the
/// spec file's overrides and then to the defaults.
#[derive(Debug, Clone)]
pub struct CommonOpts {
    pub epsilon: Option<f64>,
    pub star_budget: Option<usize>,
    pub term_depth: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub json: bool,
}

impl Default for CommonOpts {
    fn default() -> Self {
        CommonOpts {
            epsilon: None,
            star_budget: None,
            term_depth: None,
            samples: 100,
            seed: 7,
            json: false,
        }
    }
}

fn engine_config(spec: &SpecFile, opts: &CommonOpts) -> horn::EngineConfig {
    let mut cfg = horn::EngineConfig::from_spec(spec);
    if let Some(e) = opts.epsilon {
        cfg.epsilon = e;
    }
    if let Some(b) = opts.star_budget {
        cfg.star_budget = b;
    }
    if let Some(d) = opts.term_depth {
        cfg.term_depth = d;
    }
    cfg
}

struct LoadedSpec {
    spec: SpecFile,
    cfg: horn::EngineConfig,
}

fn load_spec(path: &str, opts: &CommonOpts, out: &mut dyn Write) -> Result<LoadedSpec, i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(out, "{path}: {e}");
            return Err(EXIT_USAGE);
        }
    };
    match parse_spec(&text) {
        Ok(spec) => {
            let cfg = engine_config(&spec, opts);
            Ok(LoadedSpec { spec, cfg })
        }
        Err(e) => {
            let _ = writeln!(out, "{path}:{e}");
            Err(EXIT_PARSE)
        }
    }
}

/// Parameter samples for one run: deterministic in (seed, sample index).
fn param_values(spec: &SpecFile, seed: u64, sample: usize) -> BTreeMap<String, C64> {
    let mut values = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(sample as u64));
    for (a, b) in spec.param_pairs() {
        let (va, vb) = sample_unit_pair(&mut rng);
        values.insert(a, va);
        values.insert(b, vb);
    }
    values
}

fn build_valid_model(
    loaded: &LoadedSpec,
    path: &str,
    params: &BTreeMap<String, C64>,
    out: &mut dyn Write,
) -> Result<Model, i32> {
    let model = match loaded.spec.build_model(params) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(out, "{path}: {e}");
            return Err(EXIT_MODEL);
        }
    };
    let violations = validate_model(&loaded.spec.signature, &model, loaded.cfg.epsilon);
    if !violations.is_empty() {
        for v in &violations {
            let _ = writeln!(out, "{path}: {v}");
        }
        return Err(EXIT_MODEL);
    }
    Ok(model)
}

fn saturated_program(
    loaded: &LoadedSpec,
    path: &str,
    model: Model,
    out: &mut dyn Write,
) -> Result<(HornProgram, horn::InitialModel), i32> {
    let mut program = match HornProgram::from_spec(&loaded.spec, model) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(out, "{path}: {e}");
            return Err(EXIT_MODEL);
        }
    };
    program.config = loaded.cfg;
    match horn::saturate(&program) {
        Ok(initial) => Ok((program, initial)),
        Err(e) => {
            let _ = writeln!(out, "{path}: {e}");
            Err(EXIT_MODEL)
        }
    }
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

pub fn cmd_check(path: &str, opts: &CommonOpts, out: &mut dyn Write) -> i32 {
    let loaded = match load_spec(path, opts, out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let params = param_values(&loaded.spec, opts.seed, 0);
    if build_valid_model(&loaded, path, &params, out).is_err() {
        return EXIT_MODEL;
    }

    let axioms: Vec<Value> = loaded
        .spec
        .axioms
        .iter()
        .map(|a| {
            let classes: Vec<String> = classify(a, &loaded.spec.signature)
                .into_iter()
                .map(|c| c.to_string())
                .collect();
            json!({ "text": a.to_string(), "classes": classes })
        })
        .collect();
    let report = json!({
        "command": "check",
        "status": "OK",
        "dim": loaded.spec.dim,
        "axioms": axioms,
        "queries": loaded.spec.queries.len(),
    });
    if opts.json {
        emit_json(out, &report);
    } else {
        let _ = writeln!(out, "ok: dimension {}", loaded.spec.dim);
        for (i, a) in loaded.spec.axioms.iter().enumerate() {
            let classes: Vec<String> = classify(a, &loaded.spec.signature)
                .into_iter()
                .map(|c| c.to_string())
                .collect();
            let _ = writeln!(out, "axiom #{i}: {a}  [{}]", classes.join(", "));
        }
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

pub struct EvalRequest<'a> {
    pub at: Option<&'a str>,
    pub sentence: Option<&'a str>,
    pub global: Option<&'a str>,
}

enum RunStatus {
    True,
    False,
    Unknown(String),
}

pub fn cmd_eval(path: &str, req: &EvalRequest<'_>, opts: &CommonOpts, out: &mut dyn Write) -> i32 {
    let loaded = match load_spec(path, opts, out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let (text, global) = match (req.sentence, req.global) {
        (Some(s), None) => (s, false),
        (None, Some(s)) => (s, true),
        _ => {
            let _ = writeln!(out, "eval needs exactly one of --sentence or --global");
            return EXIT_USAGE;
        }
    };
    let sentence = match parse_sentence_str(text, &loaded.spec.signature) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(out, "--sentence:{e}");
            return EXIT_PARSE;
        }
    };
    let anchor = match req.at {
        Some(t) => match parse_term_str(t, &loaded.spec.signature) {
            Ok(t) => Some(t),
            Err(e) => {
                let _ = writeln!(out, "--at:{e}");
                return EXIT_PARSE;
            }
        },
        None => None,
    };

    let runs = if loaded.spec.has_params() {
        opts.samples
    } else {
        1
    };
    let mut status = RunStatus::True;
    for k in 0..runs {
        let params = param_values(&loaded.spec, opts.seed, k);
        let model = match build_valid_model(&loaded, path, &params, out) {
            Ok(m) => m,
            Err(code) => return code,
        };
        let verdict = if loaded.spec.axioms.is_empty() {
            eval_once(&loaded, &model, anchor.as_ref(), &sentence, global)
        } else {
            let (program, initial) = match saturated_program(&loaded, path, model, out) {
                Ok(x) => x,
                Err(code) => return code,
            };
            let ctx = initial.ctx(&program.config);
            eval_in_ctx(&ctx, &initial.model, anchor.as_ref(), &sentence, global, loaded.cfg.epsilon)
        };
        match verdict {
            RunStatus::True => {}
            RunStatus::False => {
                status = RunStatus::False;
                break;
            }
            RunStatus::Unknown(r) => {
                status = RunStatus::Unknown(r);
                break;
            }
        }
    }

    let (status_str, reason) = match &status {
        RunStatus::True => ("TRUE", None),
        RunStatus::False => ("FALSE", None),
        RunStatus::Unknown(r) => ("UNKNOWN", Some(r.clone())),
    };
    let report = json!({
        "command": "eval",
        "status": status_str,
        "state": anchor.as_ref().map(|t| t.to_string()),
        "sentence": sentence.to_string(),
        "global": global,
        "samples": if loaded.spec.has_params() { Some(runs) } else { None },
        "reason": reason,
    });
    if opts.json {
        emit_json(out, &report);
    } else {
        match &status {
            RunStatus::True => {
                if loaded.spec.has_params() {
                    let _ = writeln!(out, "TRUE (over {runs} sampled parameter instances)");
                } else {
                    let _ = writeln!(out, "TRUE");
                }
            }
            RunStatus::False => {
                let _ = writeln!(out, "FALSE");
            }
            RunStatus::Unknown(r) => {
                let _ = writeln!(out, "UNKNOWN: {r}");
            }
        }
    }
    EXIT_OK
}

fn eval_once(
    loaded: &LoadedSpec,
    model: &Model,
    anchor: Option<&crate::term::Term>,
    sentence: &crate::sentence::Sentence,
    global: bool,
) -> RunStatus {
    let ctx = EvalCtx::new(model, loaded.cfg.epsilon, loaded.cfg.star_budget);
    eval_in_ctx(&ctx, model, anchor, sentence, global, loaded.cfg.epsilon)
}

fn eval_in_ctx(
    ctx: &EvalCtx<'_>,
    model: &Model,
    anchor: Option<&crate::term::Term>,
    sentence: &crate::sentence::Sentence,
    global: bool,
    eps: f64,
) -> RunStatus {
    let none = Bindings::new();
    let outcome: Result<bool, EvalError> = if global {
        ctx.sat_global(sentence, &none)
    } else {
        let state = match anchor {
            Some(t) => model.eval_term(t, &none, eps),
            None => Ok(CVector::zero(model.dim)),
        };
        match state {
            Ok(w) => ctx.sat_local(&w, sentence, &none),
            Err(e) => Err(e.into()),
        }
    };
    match outcome {
        Ok(true) => RunStatus::True,
        Ok(false) => RunStatus::False,
        Err(e) => RunStatus::Unknown(reason_code(&e)),
    }
}

fn reason_code(e: &EvalError) -> String {
    match e {
        EvalError::BudgetExceeded { .. } => format!("BUDGET-EXCEEDED: {e}"),
        EvalError::NotRepresentable { .. } => format!("NOT-REPRESENTABLE: {e}"),
        EvalError::GlobalNotDecidable { .. } => format!("GLOBAL-NOT-DECIDABLE: {e}"),
        other => format!("EVAL-ERROR: {other}"),
    }
}

// ---------------------------------------------------------------------------
// init
// ---------------------------------------------------------------------------

pub fn cmd_init(path: &str, opts: &CommonOpts, out: &mut dyn Write) -> i32 {
    let loaded = match load_spec(path, opts, out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let params = param_values(&loaded.spec, opts.seed, 0);
    let model = match build_valid_model(&loaded, path, &params, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let (program, initial) = match saturated_program(&loaded, path, model, out) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let verdict = horn::check_satisfiable(&program, &initial);

    let mut props = serde_json::Map::new();
    for (name, extent) in &initial.model.valuation {
        props.insert(name.clone(), extent_json(extent));
    }
    let provenance: Vec<Value> = initial
        .provenance
        .iter()
        .map(|fp| {
            json!({
                "prop": fp.prop,
                "witness": vector_json(&fp.witness),
                "clause": fp.clause,
            })
        })
        .collect();
    let (status, detail) = match &verdict {
        SatVerdict::Sat => ("SAT".to_string(), Value::Null),
        SatVerdict::Unsat { clause, witness } => (
            "UNSAT".to_string(),
            json!({
                "clause": clause,
                "clause_text": program.clauses[*clause].to_string(),
                "witness": witness.as_ref().map(vector_json),
            }),
        ),
        SatVerdict::Unknown { clause, reason } => (
            "UNKNOWN".to_string(),
            json!({
                "clause": clause,
                "clause_text": program.clauses[*clause].to_string(),
                "reason": reason,
            }),
        ),
    };
    let report = json!({
        "command": "init",
        "status": status,
        "dim": initial.model.dim,
        "sampled": loaded.spec.has_params(),
        "props": Value::Object(props),
        "provenance": provenance,
        "warnings": initial.warnings,
        "detail": detail,
    });
    if opts.json {
        emit_json(out, &report);
    } else {
        let _ = writeln!(out, "{status}");
        if let SatVerdict::Unsat { clause, witness } = &verdict {
            let _ = writeln!(out, "violated clause #{clause}: {}", program.clauses[*clause]);
            if let Some(w) = witness {
                let _ = writeln!(out, "witness state: {w}");
            }
        }
        for (name, extent) in &initial.model.valuation {
            let _ = writeln!(out, "{name}: {}", extent_text(extent));
        }
        for w in &initial.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// query
// ---------------------------------------------------------------------------

pub fn cmd_query(
    path: &str,
    at: Option<&str>,
    query: Option<&str>,
    opts: &CommonOpts,
    out: &mut dyn Write,
) -> i32 {
    let loaded = match load_spec(path, opts, out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let mut queries = Vec::new();
    if let Some(text) = query {
        match parse_query_str(text, &loaded.spec.signature) {
            Ok(mut q) => {
                if let Some(t) = at {
                    match parse_term_str(t, &loaded.spec.signature) {
                        Ok(anchor) => q.anchor = Some(anchor),
                        Err(e) => {
                            let _ = writeln!(out, "--at:{e}");
                            return EXIT_PARSE;
                        }
                    }
                }
                queries.push(q);
            }
            Err(e) => {
                let _ = writeln!(out, "--query:{e}");
                return EXIT_PARSE;
            }
        }
    } else {
        queries.extend(loaded.spec.queries.iter().cloned());
    }
    if queries.is_empty() {
        let _ = writeln!(out, "no query: pass --query or add one to the spec file");
        return EXIT_USAGE;
    }

    let params = param_values(&loaded.spec, opts.seed, 0);
    let model = match build_valid_model(&loaded, path, &params, out) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let (program, initial) = match saturated_program(&loaded, path, model, out) {
        Ok(x) => x,
        Err(code) => return code,
    };

    let mut results: Vec<Value> = Vec::new();
    for q in &queries {
        match horn::answer_query(&program, &initial, q.anchor.as_ref(), &q.vars, &q.body) {
            Ok(QueryOutcome::Answer(theta)) => {
                let subst: BTreeMap<String, String> =
                    theta.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
                if !opts.json {
                    let pretty: Vec<String> =
                        subst.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    let _ = writeln!(out, "ANSWER {}", pretty.join(", "));
                }
                results.push(json!({
                    "query": q.to_string(),
                    "status": "ANSWER",
                    "substitution": subst,
                }));
            }
            Ok(QueryOutcome::NoAnswerAtDepth(d)) => {
                if !opts.json {
                    let _ = writeln!(out, "NO-ANSWER-AT-DEPTH {d}");
                }
                results.push(json!({
                    "query": q.to_string(),
                    "status": "NO-ANSWER-AT-DEPTH",
                    "depth": d,
                }));
            }
            Err(horn::QueryError::ProgramUnsat { clause, witness }) => {
                let _ = writeln!(
                    out,
                    "program is unsatisfiable: clause #{clause}: {}{}",
                    program.clauses[clause],
                    witness
                        .map(|w| format!(" (witness {w})"))
                        .unwrap_or_default()
                );
                return EXIT_UNSAT;
            }
            Err(horn::QueryError::Unknown { clause, reason }) => {
                if !opts.json {
                    let _ = writeln!(out, "UNKNOWN: clause #{clause}: {reason}");
                }
                results.push(json!({
                    "query": q.to_string(),
                    "status": "UNKNOWN",
                    "reason": reason,
                }));
            }
            Err(horn::QueryError::Eval(e)) => {
                if !opts.json {
                    let _ = writeln!(out, "UNKNOWN: {}", reason_code(&e));
                }
                results.push(json!({
                    "query": q.to_string(),
                    "status": "UNKNOWN",
                    "reason": reason_code(&e),
                }));
            }
        }
    }
    if opts.json {
        let report = json!({
            "command": "query",
            "results": results,
        });
        emit_json(out, &report);
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

fn vector_json(v: &CVector) -> Value {
    Value::Array(
        v.entries()
            .iter()
            .map(|c| json!([c.re, c.im]))
            .collect(),
    )
}

fn extent_json(e: &Extent) -> Value {
    let kind = e.kind().to_string();
    let points: Vec<Value> = e.points().iter().map(vector_json).collect();
    let basis: Option<Vec<Value>> = e
        .space()
        .map(|s| s.basis().iter().map(vector_json).collect());
    json!({
        "kind": kind,
        "points": points,
        "rank": e.space().map(|s| s.rank()),
        "basis": basis,
    })
}

fn extent_text(e: &Extent) -> String {
    let mut out = e.kind().to_string();
    if !e.points().is_empty() {
        let pts: Vec<String> = e.points().iter().map(|p| p.to_string()).collect();
        out.push_str(&format!(" points {{{}}}", pts.join(", ")));
    }
    if let Some(s) = e.space() {
        let basis: Vec<String> = s.basis().iter().map(|b| b.to_string()).collect();
        out.push_str(&format!(" rank {} basis {{{}}}", s.rank(), basis.join(", ")));
    }
    out
}

/// Serializes with floats at 17 significant digits, newline-terminated.
fn emit_json(out: &mut dyn Write, value: &Value) {
    let mut buf = Vec::new();
    {
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
        use serde::Serialize;
        let _ = value.serialize(&mut ser);
    }
    let _ = out.write_all(&buf);
    let _ = out.write_all(b"\n");
}

/// JSON formatter printing every float with 17 significant digits, enough to
/// reproduce any f64 exactly on any platform.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}
