//! Report rendering and command dispatch for the `goursat` binary.

use std::fmt::Write as _;

use goursat_core::curve::ResidueRecord;
use goursat_core::expr::Exponent;
use goursat_core::pipeline::{self, DiagnosticReport, Status};
use goursat_core::{Error, RationalFunction};
use serde_json::{json, Map, Value};

pub mod cli;

pub const EXIT_ELEMENTARY: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_OBSTRUCTED: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;

pub fn exit_code(r: &DiagnosticReport) -> i32 {
    if r.is_partial() {
        return EXIT_PARTIAL;
    }
    match r.status {
        Status::Elementary => EXIT_ELEMENTARY,
        Status::ObstructedCertified | Status::ObstructedInconclusive => EXIT_OBSTRUCTED,
        Status::Unsupported => EXIT_UNSUPPORTED,
    }
}

/// Exit code for a library error raised before a report exists.
pub fn error_code(e: &Error) -> i32 {
    if e.is_unsupported() {
        EXIT_UNSUPPORTED
    } else {
        EXIT_PARSE
    }
}

fn rf(f: &RationalFunction, var: &str) -> Value {
    Value::String(f.to_text(var))
}

struct Reduction {
    name: String,
    variable: String,
    integrand: String,
    back: String,
}

struct Obstruction {
    witness: String,
    phi: Option<String>,
    residues: Vec<String>,
    certified: bool,
    exact: Option<String>,
    integral: Option<String>,
}

fn reductions(r: &DiagnosticReport) -> Vec<Reduction> {
    let var = &r.spec.var;
    if let Some(d) = r.sqrt() {
        return d
            .reductions
            .iter()
            .map(|(j, red)| Reduction {
                name: format!("F{j}"),
                variable: "x".into(),
                integrand: red.integrand_text(),
                back: red.back.to_text(var),
            })
            .collect();
    }
    match r.cube() {
        Some(d) => d
            .reductions
            .iter()
            .map(|red| Reduction {
                name: red.name.into(),
                variable: red.variable.into(),
                integrand: d.reduction_text(red),
                back: red.back_text.clone(),
            })
            .collect(),
        None => Vec::new(),
    }
}

fn obstruction(r: &DiagnosticReport) -> Option<Obstruction> {
    if let Some(d) = r.sqrt() {
        return d.witness.as_ref().map(|w| Obstruction {
            witness: w.to_text(&r.spec.var),
            phi: None,
            residues: Vec::new(),
            certified: false,
            exact: None,
            integral: None,
        });
    }
    let d = r.cube()?;
    let w = d.witness.as_ref()?;
    Some(Obstruction {
        witness: w.to_text("z"),
        phi: d.phi_witness().map(|p| p.to_text("x")),
        residues: d.certificate.iter().flat_map(|c| c.records.iter().map(ResidueRecord::to_text)).collect(),
        certified: r.status == Status::ObstructedCertified,
        exact: d.exact.as_ref().map(|g| g.to_text("x")),
        integral: d.obstruction_text(),
    })
}

pub fn report_json(r: &DiagnosticReport) -> Value {
    let var = &r.spec.var;
    let mut o = Map::new();
    o.insert("status".into(), json!(r.status.as_str()));
    o.insert("exponent".into(), json!(r.spec.exponent.to_string()));
    let canonical = r.cube().map(|d| {
        let cf = &d.canonical;
        json!({
            "S": cf.s.to_text(var),
            "alpha": cf.alpha.to_string(),
            "beta": cf.beta.to_string(),
            "c": cf.c.to_string(),
            "K": cf.k.to_string(),
        })
    });
    o.insert("canonical".into(), canonical.unwrap_or(Value::Null));
    let projections = if let Some(d) = r.sqrt() {
        let p = &d.projections;
        json!({
            "F0": rf(&p.f0, var), "F1": rf(&p.f1, var), "F2": rf(&p.f2, var), "F3": rf(&p.f3, var),
            "involutions": d.involutions.iter().map(|s| s.to_text(var)).collect::<Vec<_>>(),
        })
    } else if let Some(d) = r.cube() {
        let c = &d.components;
        json!({
            "H0": rf(&c.parts[0], "z"), "H1": rf(&c.parts[1], "z"), "H2": rf(&c.parts[2], "z"),
            "phi0": rf(&c.phi[0], "x"), "phi1": rf(&c.phi[1], "x"), "phi2": rf(&c.phi[2], "x"),
        })
    } else {
        Value::Null
    };
    o.insert("projections".into(), projections);
    let reds: Vec<Value> = reductions(r)
        .into_iter()
        .map(|x| json!({"name": x.name, "integrand": x.integrand, "variable": x.variable, "back": x.back}))
        .collect();
    o.insert("reductions".into(), Value::Array(reds));
    let obs = obstruction(r).map(|x| {
        let mut m = Map::new();
        m.insert("witness".into(), json!(x.witness));
        m.insert("phi".into(), json!(x.phi));
        m.insert("residues".into(), json!(x.residues));
        m.insert("certified".into(), json!(x.certified));
        if let Some(g) = x.exact {
            m.insert("exact".into(), json!(g));
        }
        if let Some(i) = x.integral {
            m.insert("integral".into(), json!(i));
        }
        Value::Object(m)
    });
    o.insert("obstruction".into(), obs.unwrap_or(Value::Null));
    o.insert("antiderivative".into(), json!(r.antiderivative.as_ref().map(|a| a.to_text())));
    o.insert("verified".into(), json!(r.verified));
    if let Some(reason) = &r.reason {
        o.insert("reason".into(), json!(reason));
    }
    Value::Object(o)
}

pub fn report_text(r: &DiagnosticReport) -> String {
    let var = &r.spec.var;
    let mut s = String::new();
    let _ = writeln!(s, "integrand: {}", r.spec);
    let _ = writeln!(s, "status: {}", r.status);
    if let Some(reason) = &r.reason {
        let _ = writeln!(s, "reason: {reason}");
    }
    if let Some(d) = r.sqrt() {
        let p = &d.projections;
        let _ = writeln!(s, "involutions: {}", d.involutions.iter().map(|m| m.to_text(var)).collect::<Vec<_>>().join(", "));
        for (j, f) in [&p.f0, &p.f1, &p.f2, &p.f3].into_iter().enumerate() {
            let _ = writeln!(s, "F{j} = {}", f.to_text(var));
        }
    }
    if let Some(d) = r.cube() {
        let cf = &d.canonical;
        let _ = writeln!(s, "S = {}", cf.s.to_text(var));
        let _ = writeln!(s, "alpha = {}, beta = {}", cf.alpha, cf.beta);
        let _ = writeln!(s, "c = {}, K = {}", cf.c, cf.k);
        for k in 0..3 {
            let _ = writeln!(s, "H{k} = {}    phi{k} = {}", d.components.parts[k].to_text("z"), d.components.phi[k].to_text("x"));
        }
    }
    for x in reductions(r) {
        let _ = writeln!(s, "{}: {} d{}    {} = {}", x.name, x.integrand, x.variable, x.variable, x.back);
    }
    if let Some(x) = obstruction(r) {
        let _ = writeln!(s, "witness: {}", x.witness);
        if let Some(phi) = x.phi {
            let _ = writeln!(s, "phi: {phi}");
        }
        for res in &x.residues {
            let _ = writeln!(s, "residue at {res}");
        }
        if let Some(g) = x.exact {
            let _ = writeln!(s, "exact: g = {g}");
        }
        if let Some(i) = x.integral {
            let _ = writeln!(s, "obstruction: {i}");
        }
    }
    if let Some(a) = &r.antiderivative {
        let _ = writeln!(s, "antiderivative: {}", a.to_text());
    }
    if let Some(v) = r.verified {
        let _ = writeln!(s, "verified: {v}");
    }
    s
}

/// Runs one integrand through `diagnose` or `integrate`.
pub fn run_one(text: &str, var: &str, exponent: Option<Exponent>, integrate: bool, real_form: bool) -> Result<DiagnosticReport, Error> {
    let spec = pipeline::parse_spec(text, var, exponent)?;
    if integrate {
        pipeline::integrate(&spec, real_form)
    } else {
        pipeline::diagnose(&spec)
    }
}
