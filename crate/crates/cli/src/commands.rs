use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use rug::{Float, Rational};

use stirling_sums::catalog::{evaluate, list_formulas, EvalRequest, Family, FormulaId};
use stirling_sums::constants::{catalog_constants, constant};
use stirling_sums::engine::{Status, TruncationPolicy};
use stirling_sums::oracle::{brute_force_request, convergence_study};
use stirling_sums::real::{parse_rational, to_decimal};
use stirling_sums::special::{slow_tail_bound, SlowFormula};
use stirling_sums::{ComplexRational, Error};

use crate::args::{ConstantsArgs, EvalArgs, FormulaArgs, ListArgs, TableArgs};
use crate::output::{write_records, ConstantRecord, FormulaRecord, OutputRecord, TableRow, SCHEMA_VERSION};

/// Absolute error allowed by `compare` for the factorial-series and closed forms.
pub const CATALOG_CONTRACT: f64 = 1e-20;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Invalid = 1,
    NotConverged = 2,
}

/// A failure that maps to exit status 1.
#[derive(Debug)]
pub struct Invalid(pub String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(err: E) -> Self {
        Invalid(err.to_string())
    }
}

struct Parameters {
    x: Rational,
    m: Option<ComplexRational>,
    a: Option<Rational>,
}

impl Parameters {
    fn parse(args: &FormulaArgs) -> Result<Self, Invalid> {
        let x = parse_rational(&args.x)?;
        let m = args.m.as_deref().map(ComplexRational::parse).transpose()?;
        let a = args.a.as_deref().map(parse_rational).transpose()?;
        Ok(Self { x, m, a })
    }

    /// The request for `formula`. In sweep mode parameters a family does not
    /// take are dropped and missing ones take their defaults.
    fn request(&self, formula: FormulaId, prec_bits: u32, sweep: bool) -> EvalRequest {
        let mut req = EvalRequest::new(formula, self.x.clone()).with_precision(prec_bits);
        let family = formula.family;
        if let Some(m) = &self.m {
            if !sweep || family.takes_exponent() {
                req = req.with_m(m.clone());
            }
        }
        if let Some(a) = &self.a {
            if !sweep || family.takes_base() {
                req = req.with_a(a.clone());
            }
        }
        if sweep {
            req = req.with_default_parameters();
        }
        req
    }
}

fn params_field(req: &EvalRequest) -> String {
    let mut fields = Vec::new();
    if let Some(m) = &req.m {
        fields.push(format!("m={m}"));
    }
    if let Some(a) = &req.a {
        fields.push(format!("a={a}"));
    }
    fields.join(";")
}

fn formulas(spec: &str, allow_all: bool) -> Result<Vec<FormulaId>, Invalid> {
    if allow_all && spec == "all" {
        return Ok(FormulaId::all());
    }
    Ok(vec![spec.parse::<FormulaId>()?])
}

fn slow_formula(formula: FormulaId) -> Option<SlowFormula> {
    match formula.family {
        Family::SqrtFresnel => Some(SlowFormula::SqrtFresnel),
        Family::HarmonicCosint => Some(SlowFormula::HarmonicCosint),
        _ => None,
    }
}

/// Largest acceptable `abs_error` for `compare`.
fn contract(req: &EvalRequest, orders_used: usize) -> f64 {
    match slow_formula(req.formula) {
        Some(slow) => slow_tail_bound(slow, &req.x, orders_used),
        None => CATALOG_CONTRACT,
    }
}

struct Evaluated {
    record: OutputRecord,
    status: Status,
    within_contract: bool,
}

fn run_one(req: &EvalRequest, x_text: &str, with_oracle: bool) -> Result<Evaluated, Error> {
    let prec = req.precision_bits;
    let start = Instant::now();
    let result = evaluate(req)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        formula: req.formula.to_string(),
        x: x_text.trim().to_string(),
        params: params_field(req),
        value: to_decimal(&result.value, prec),
        value_imag: result.value_imag.as_ref().map(|im| to_decimal(im, prec)),
        error_estimate: to_decimal(&result.error_estimate, prec),
        oracle_value: None,
        abs_error: None,
        orders_used: result.orders_used,
        status: result.status.as_str().to_string(),
        elapsed_ms,
    };
    let mut within_contract = true;
    if with_oracle {
        let oracle = brute_force_request(req)?;
        let mut err = Float::with_val(prec, &result.value - &oracle.value).abs();
        if let (Some(im), Some(oracle_im)) = (&result.value_imag, &oracle.value_imag) {
            err = err.max(&Float::with_val(prec, im - oracle_im).abs());
        }
        within_contract = err.to_f64() <= contract(req, result.orders_used);
        record.oracle_value = Some(to_decimal(&oracle.value, prec));
        record.abs_error = Some(to_decimal(&err, prec));
    }
    Ok(Evaluated { record, status: result.status, within_contract })
}

fn policy(args: &EvalArgs) -> TruncationPolicy {
    TruncationPolicy::adaptive(args.tol, args.max_order)
}

pub fn eval(args: &EvalArgs, out: impl Write) -> Result<Exit, Invalid> {
    let params = Parameters::parse(&args.formula)?;
    let formula = args.formula.formula.parse::<FormulaId>()?;
    let req = params.request(formula, args.formula.prec_bits, false).with_policy(policy(args));
    let evaluated = run_one(&req, &args.formula.x, false)?;
    write_records(out, args.format, &[evaluated.record])?;
    Ok(if evaluated.status == Status::Converged { Exit::Ok } else { Exit::NotConverged })
}

pub fn compare(args: &EvalArgs, out: impl Write, mut diagnostics: impl Write) -> Result<Exit, Invalid> {
    let params = Parameters::parse(&args.formula)?;
    let sweep = args.formula.formula == "all";
    let ids = formulas(&args.formula.formula, true)?;
    let requests: Vec<EvalRequest> = ids
        .iter()
        .map(|&id| params.request(id, args.formula.prec_bits, sweep).with_policy(policy(args)))
        .collect();
    let outcomes: Vec<Result<Evaluated, Error>> =
        requests.par_iter().map(|req| run_one(req, &args.formula.x, true)).collect();

    let mut records = Vec::new();
    let mut all_within = true;
    for (req, outcome) in requests.iter().zip(outcomes) {
        match outcome {
            Ok(evaluated) => {
                all_within &= evaluated.within_contract;
                records.push(evaluated.record);
            }
            Err(err @ (Error::Parameter(_) | Error::Domain(_))) if sweep => {
                writeln!(diagnostics, "skipped {}: {err}", req.formula)?;
            }
            Err(err) => return Err(err.into()),
        }
    }
    write_records(out, args.format, &records)?;
    Ok(if all_within { Exit::Ok } else { Exit::NotConverged })
}

pub fn table(args: &TableArgs, out: impl Write) -> Result<Exit, Invalid> {
    let params = Parameters::parse(&args.formula)?;
    let formula = args.formula.formula.parse::<FormulaId>()?;
    let prec = args.formula.prec_bits;
    let req = params.request(formula, prec, false);
    let report = convergence_study(&req, args.max_order)?;
    let rows: Vec<TableRow> = report
        .rows
        .iter()
        .map(|row| TableRow {
            order: row.order,
            partial_value: to_decimal(&row.partial_value, prec),
            abs_error: to_decimal(&row.abs_error, prec),
            term_magnitude: to_decimal(&row.term_magnitude, prec),
        })
        .collect();
    write_records(out, crate::args::Format::Csv, &rows)?;
    Ok(Exit::Ok)
}

pub fn constants(args: &ConstantsArgs, out: impl Write) -> Result<Exit, Invalid> {
    let records = catalog_constants()
        .into_iter()
        .map(|id| {
            let value = constant(id.clone(), args.prec_bits)?;
            Ok(ConstantRecord {
                schema_version: SCHEMA_VERSION,
                id: id.to_string(),
                precision_bits: args.prec_bits,
                value: to_decimal(&value, args.prec_bits),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    write_records(out, args.format, &records)?;
    Ok(Exit::Ok)
}

pub fn list(args: &ListArgs, out: impl Write) -> Result<Exit, Invalid> {
    let records: Vec<FormulaRecord> = list_formulas()
        .into_iter()
        .map(|info| FormulaRecord {
            schema_version: SCHEMA_VERSION,
            formula: info.id.to_string(),
            summand: info.summand.to_string(),
            method: info.method.name().to_string(),
            parameters: info.parameters.iter().map(|p| format!("{}:{}", p.name, p.domain)).collect::<Vec<_>>().join(";"),
            constants: info.constants.join(";"),
            description: info.description.to_string(),
        })
        .collect();
    write_records(out, args.format, &records)?;
    Ok(Exit::Ok)
}
