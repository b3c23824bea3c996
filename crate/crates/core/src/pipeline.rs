//! Entry points: diagnose an integrand, integrate it, verify the result.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::antideriv::AntiderivativeExpr;
use crate::cube_goursat::{cube_diagnose, CubeDiagnostic};
use crate::error::{Error, Result};
use crate::expr::{parse_integrand, Exponent, IntegrandSpec};
use crate::sqrt_goursat::{sqrt_diagnose, SqrtDiagnostic};
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Elementary,
    ObstructedCertified,
    ObstructedInconclusive,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Elementary => "elementary",
            Status::ObstructedCertified => "obstructed-certified-nonelementary",
            Status::ObstructedInconclusive => "obstructed-inconclusive",
            Status::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Branch {
    Sqrt(SqrtDiagnostic),
    Cube(CubeDiagnostic),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticReport {
    pub spec: IntegrandSpec,
    pub status: Status,
    pub branch: Option<Branch>,
    /// Why the input is unsupported.
    pub reason: Option<String>,
    pub antiderivative: Option<AntiderivativeExpr>,
    pub verified: Option<bool>,
}

impl DiagnosticReport {
    /// True when the antiderivative keeps an unevaluated sum over roots.
    pub fn is_partial(&self) -> bool {
        self.antiderivative.as_ref().is_some_and(AntiderivativeExpr::is_partial)
    }

    pub fn cube(&self) -> Option<&CubeDiagnostic> {
        match &self.branch {
            Some(Branch::Cube(d)) => Some(d),
            _ => None,
        }
    }

    pub fn sqrt(&self) -> Option<&SqrtDiagnostic> {
        match &self.branch {
            Some(Branch::Sqrt(d)) => Some(d),
            _ => None,
        }
    }
}

impl Error {
    /// Errors that describe inputs outside the supported class rather than
    /// malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::Unsupported(_) | Error::UnsupportedRadicand(_) | Error::UnsupportedExponent(_) | Error::UnsupportedIntegrand(_)
        )
    }
}

/// Parses an integrand, checking it against an explicitly requested exponent.
pub fn parse_spec(text: &str, var: &str, exponent: Option<Exponent>) -> Result<IntegrandSpec> {
    let spec = parse_integrand(text, var)?;
    match exponent {
        Some(p) if p != spec.exponent => Err(Error::InvalidInput(format!("integrand has exponent -{}, not -{p}", spec.exponent))),
        _ => Ok(spec),
    }
}

fn unsupported(spec: &IntegrandSpec, e: Error) -> Result<DiagnosticReport> {
    if !e.is_unsupported() {
        return Err(e);
    }
    Ok(DiagnosticReport {
        spec: spec.clone(),
        status: Status::Unsupported,
        branch: None,
        reason: Some(e.to_string()),
        antiderivative: None,
        verified: None,
    })
}

pub fn diagnose(spec: &IntegrandSpec) -> Result<DiagnosticReport> {
    let branch = match spec.exponent {
        Exponent::Half => sqrt_diagnose(&spec.f, &spec.r).map(Branch::Sqrt),
        _ => cube_diagnose(spec).map(Branch::Cube),
    };
    let branch = match branch {
        Ok(b) => b,
        Err(e) => return unsupported(spec, e),
    };
    let status = match &branch {
        Branch::Sqrt(d) if d.is_elementary() => Status::Elementary,
        Branch::Sqrt(_) => Status::ObstructedInconclusive,
        Branch::Cube(d) => d.status,
    };
    Ok(DiagnosticReport { spec: spec.clone(), status, branch: Some(branch), reason: None, antiderivative: None, verified: None })
}

fn integrate_sqrt(d: &SqrtDiagnostic, spec: &IntegrandSpec, real_form: bool) -> Result<AntiderivativeExpr> {
    let mut pieces = Vec::new();
    for (_, red) in &d.reductions {
        let (_, piece) = red.integrate(&spec.r, &spec.var, &spec.radicand_text, real_form)?;
        pieces.push(piece);
    }
    let remainder = match &d.witness {
        Some(f0) => alloc::vec![format!("∫({})/({})^(1/2)d{}", f0.to_text(&spec.var), spec.radicand_text, spec.var)],
        None => Vec::new(),
    };
    Ok(AntiderivativeExpr { var: spec.var.clone(), radicand_text: spec.radicand_text.clone(), pieces, remainder })
}

/// Diagnoses, integrates the elementary part and verifies it by
/// differentiation.
pub fn integrate(spec: &IntegrandSpec, real_form: bool) -> Result<DiagnosticReport> {
    let mut report = diagnose(spec)?;
    let expr = match &report.branch {
        None => return Ok(report),
        Some(Branch::Sqrt(d)) => integrate_sqrt(d, spec, real_form),
        Some(Branch::Cube(d)) => d.integrate(real_form),
    };
    let expr = match expr {
        Ok(e) => e,
        Err(e) => return unsupported(spec, e),
    };
    let verified = expr.verify()?;
    if !verified {
        return Err(Error::invariant("antiderivative failed verification"));
    }
    report.antiderivative = Some(expr);
    report.verified = Some(verified);
    Ok(report)
}
