//! Command-line front end for the separability and telescoper deciders.
//!
//! Exit codes: 0 = decided, 2 = decided "No" relative to a search bound,
//! 3 = unsupported input or error.

use clap::{Args, Parser as ClapParser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::BufRead;

use septel::algebraic::{decide_algebraic_separable, AlgebraicInput, AlgebraicOptions};
use septel::oracle::brute_force_annihilator;
use septel::ore::{ore_apply, OreKind};
use septel::reduction::{abramov_reduce, hermite_reduce};
use septel::separable::{
    gp_form, hyperexp_separable, hypergeom_separable, rational_separable,
    telescoper_exists_dt_sx, telescoper_exists_st_dx, Verdict, Witness,
};
use septel::valdis::{dispersion, local_dispersion};
use septel::{Error, Result, VarUniverse, T_VAR};

use septel_cli::parser::{parse_algebraic, parse_operator, parse_ratfunc};
use septel_cli::records::ResultRecord;

#[derive(ClapParser)]
#[command(
    name = "septel",
    version,
    about = "Exact separability and telescoper-existence decisions for rational, \
             hyperexponential, hypergeometric and algebraic functions of t"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Comma-separated parameter names besides t (t is always present)
    #[arg(long, default_value = "x")]
    vars: String,
    /// Emit a machine-readable JSON result record
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide separability of a rational function of t and the parameters
    SepRational {
        expr: String,
        /// Operator kind: dt (derivation) or st (shift)
        #[arg(long, default_value = "dt")]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide separability of a hyperexponential term given a = D_t(H)/H
    SepHyperexp {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide separability of a hypergeometric term given a = S_t(H)/H
    SepHypergeom {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide separability of the algebraic function with minimal polynomial P(Y)
    SepAlgebraic {
        expr: String,
        /// Override for the polynomial-solution degree bound
        #[arg(long)]
        max_degree: Option<u32>,
        /// Budget for the integer point searches
        #[arg(long, default_value_t = 50)]
        budget: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Decide telescoper existence for a bivariate rational function of (t, x)
    Telescoper {
        expr: String,
        /// Telescoper type: st-dx or dt-sx
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hermite (differential) or Abramov (shift) reduction in x
    Reduce {
        expr: String,
        /// Reduction type: hermite or abramov
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dispersion of a polynomial in t; --at gives the local dispersion
    Dispersion {
        expr: String,
        /// Local dispersion at this polynomial
        #[arg(long)]
        at: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Multiplicative shift decomposition of a rational function of t
    GpForm {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check that an operator annihilates an expression
    Verify {
        expr: String,
        /// Operator text over Q(t), e.g. "(t+1)*S - t"
        operator: String,
        /// Operator kind: dt (derivation) or st (shift)
        #[arg(long, default_value = "dt")]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force minimal annihilator search within explicit bounds
    Oracle {
        expr: String,
        /// Operator kind: dt (derivation) or st (shift)
        #[arg(long, default_value = "dt")]
        kind: String,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        #[arg(long, default_value_t = 9)]
        max_degree: u32,
        #[command(flatten)]
        common: Common,
    },
    /// One JSON query per stdin line; one JSON result per stdout line
    Batch,
}

/// A single batch query; flags become optional fields.
#[derive(Deserialize)]
struct Query {
    command: String,
    input: String,
    #[serde(default)]
    vars: Option<String>,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    operator: Option<String>,
    #[serde(default)]
    at: Option<String>,
    #[serde(default)]
    max_order: Option<u32>,
    #[serde(default)]
    max_degree: Option<u32>,
    #[serde(default)]
    budget: Option<u32>,
}

fn universe(vars: &str) -> VarUniverse {
    let params: Vec<&str> = vars
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty() && *s != "t")
        .collect();
    VarUniverse::new(&params)
}

fn op_kind(s: &str) -> Result<OreKind> {
    match s {
        "dt" => Ok(OreKind::Derivation),
        "st" => Ok(OreKind::Shift),
        other => Err(Error::InvalidInput(format!(
            "unknown operator kind '{}' (expected dt or st)",
            other
        ))),
    }
}

fn witness_json(w: &Witness, u: &VarUniverse) -> Value {
    match w {
        Witness::None => Value::Null,
        Witness::SplitTerms { den_t, den_params, terms } => json!({
            "den_t": den_t.to_text(u),
            "den_params": den_params.to_text(u),
            "terms": terms.iter().map(|(r, l)| json!({
                "term": r.to_text(u),
                "annihilator": l.to_text(),
            })).collect::<Vec<_>>(),
        }),
        Witness::Gp(f) => json!({
            "z": f.z.to_text(u),
            "p": f.p.to_text(u),
            "q": f.q.to_text(u),
            "rhat": f.rhat.to_text(u),
        }),
        Witness::DiffSplit(f) => json!({
            "g": f.g.to_text(u),
            "polypart": f.polypart.to_text(u),
            "split_simple": f.split_simple.to_text(u),
            "nonsplit": f.nonsplit().map(|r| r.to_text(u)).unwrap_or_default(),
        }),
        Witness::Reduction(r) => json!({
            "g": r.g.to_text(u),
            "remainder": r.rem().to_text(u),
        }),
        Witness::Algebraic(w) => json!({
            "a": w.a.to_string(),
            "alpha": w.alpha.to_text(u),
            "qbeta": w.qbeta.iter().map(|c| c.to_text(u)).collect::<Vec<_>>(),
            "q": w.q.to_text(u),
            "basis_dim": w.basis_dim,
            "degree_bound": w.degree_bound,
            "det_degree_t": w.det_degree_t,
        }),
    }
}

fn fill_verdict(r: &mut ResultRecord, v: &Verdict, u: &VarUniverse, exists_key: bool) {
    if exists_key {
        r.exists = Some(v.separable);
    } else {
        r.separable = Some(v.separable);
    }
    r.certificate = v.certificate.as_ref().map(|c| c.to_text());
    r.witnesses = witness_json(&v.witness, u);
    r.diagnostics = v.diagnostics.clone();
}

/// Run one query; returns the result record and the process exit code.
fn run_query(q: &Query) -> Result<(ResultRecord, i32)> {
    let u = universe(q.vars.as_deref().unwrap_or("x"));
    let mut rec = ResultRecord::new(&q.command, &q.input);
    let mut code = 0;
    match q.command.as_str() {
        "sep-rational" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let kind = op_kind(q.kind.as_deref().unwrap_or("dt"))?;
            let v = rational_separable(&f, kind)?;
            fill_verdict(&mut rec, &v, &u, false);
        }
        "sep-hyperexp" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let v = hyperexp_separable(&f)?;
            fill_verdict(&mut rec, &v, &u, false);
        }
        "sep-hypergeom" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let v = hypergeom_separable(&f)?;
            fill_verdict(&mut rec, &v, &u, false);
        }
        "sep-algebraic" => {
            let coeffs = parse_algebraic(&q.input, &u)?;
            let input = AlgebraicInput::new(coeffs)?;
            let opts = AlgebraicOptions {
                degree_bound: q.max_degree,
                search_budget: q.budget.unwrap_or(50),
                factorizer: None,
            };
            let v = decide_algebraic_separable(&input, &opts)?;
            fill_verdict(&mut rec, &v, &u, false);
            if let Witness::Algebraic(w) = &v.witness {
                rec.bound_used = Some(json!({ "degree_bound": w.degree_bound }));
            } else if let Some(d) = q.max_degree {
                rec.bound_used = Some(json!({ "degree_bound": d }));
            }
            if !v.separable {
                // "No" is relative to the degree bound in use
                code = 2;
            }
        }
        "telescoper" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let v = match q.kind.as_deref() {
                Some("st-dx") => telescoper_exists_st_dx(&f)?,
                Some("dt-sx") => telescoper_exists_dt_sx(&f)?,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "telescoper kind must be st-dx or dt-sx, got '{}'",
                        other.unwrap_or("")
                    )))
                }
            };
            fill_verdict(&mut rec, &v, &u, true);
        }
        "reduce" => {
            let f = parse_ratfunc(&q.input, &u)?;
            if u.num_vars() < 2 {
                return Err(Error::InvalidInput(
                    "reduction needs at least one parameter variable".into(),
                ));
            }
            let red = match q.kind.as_deref() {
                Some("hermite") => hermite_reduce(&f, 1)?,
                Some("abramov") => abramov_reduce(&f, 1)?,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "reduction kind must be hermite or abramov, got '{}'",
                        other.unwrap_or("")
                    )))
                }
            };
            rec.witnesses = json!({
                "g": red.g.to_text(&u),
                "remainder": red.rem().to_text(&u),
            });
            rec.diagnostics = "input = action(g) + remainder".into();
        }
        "dispersion" => {
            let f = parse_ratfunc(&q.input, &u)?;
            if !f.is_polynomial() {
                return Err(Error::InvalidInput("dispersion needs a polynomial".into()));
            }
            let d = match &q.at {
                Some(at) => {
                    let p = parse_ratfunc(at, &u)?;
                    if !p.is_polynomial() {
                        return Err(Error::InvalidInput("--at needs a polynomial".into()));
                    }
                    local_dispersion(f.num(), p.num(), T_VAR)
                }
                None => dispersion(f.num(), T_VAR),
            };
            rec.witnesses = json!({ "dispersion": d });
            rec.diagnostics = match d {
                Some(n) => format!("largest integer shift coincidence is {}", n),
                None => "no nonnegative shift coincidence".into(),
            };
        }
        "gp-form" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let form = gp_form(&f)?;
            rec.witnesses = witness_json(&Witness::Gp(form), &u);
            rec.diagnostics = "a = z * (S_t(p)/p) * (q/rhat)".into();
        }
        "verify" => {
            let kind = op_kind(q.kind.as_deref().unwrap_or("dt"))?;
            let op_text = q
                .operator
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("verify needs an operator".into()))?;
            let l = parse_operator(op_text, kind)?;
            if l.is_zero() {
                return Err(Error::InvalidInput(
                    "the zero operator annihilates everything; rejected".into(),
                ));
            }
            let f = parse_ratfunc(&q.input, &u)?;
            let ok = ore_apply(&l, &f).is_zero();
            rec.verified = Some(ok);
            rec.certificate = Some(l.to_text());
            rec.diagnostics = if ok {
                "operator applied to the input gives 0".into()
            } else {
                "operator applied to the input is nonzero".into()
            };
        }
        "oracle" => {
            let f = parse_ratfunc(&q.input, &u)?;
            let kind = op_kind(q.kind.as_deref().unwrap_or("dt"))?;
            let max_order = q.max_order.unwrap_or(3);
            let max_degree = q.max_degree.unwrap_or(9);
            let found = brute_force_annihilator(&[f.clone()], kind, max_order, max_degree)?;
            rec.bound_used = Some(json!({
                "max_order": max_order,
                "max_degree": max_degree,
            }));
            match found {
                Some(l) => {
                    rec.exists = Some(true);
                    rec.certificate = Some(l.to_text());
                    rec.diagnostics = "minimal annihilator within the bounds".into();
                }
                None => {
                    rec.exists = Some(false);
                    rec.diagnostics =
                        "no annihilator within the bounds; raise --max-order/--max-degree".into();
                    code = 2;
                }
            }
        }
        other => {
            return Err(Error::InvalidInput(format!("unknown command '{}'", other)));
        }
    }
    Ok((rec, code))
}

fn emit(rec: &ResultRecord, json: bool) {
    if json {
        println!("{}", rec.to_json());
    } else {
        print!("{}", rec.to_human());
    }
}

fn run_single(q: Query, common: &Common) -> i32 {
    match run_query(&q) {
        Ok((rec, code)) => {
            emit(&rec, common.json);
            code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            3
        }
    }
}

fn run_batch() -> i32 {
    let stdin = std::io::stdin();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {}", e);
                return 3;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let out = match serde_json::from_str::<Query>(&line) {
            Ok(q) => match run_query(&q) {
                Ok((rec, _)) => rec.to_json(),
                Err(e) => {
                    let mut rec = ResultRecord::new("error", &line);
                    rec.diagnostics = e.to_string();
                    rec.to_json()
                }
            },
            Err(e) => {
                let mut rec = ResultRecord::new("error", &line);
                rec.diagnostics = format!("bad query: {}", e);
                rec.to_json()
            }
        };
        println!("{}", out);
    }
    0
}

fn query(command: &str, input: &str, common: &Common) -> Query {
    Query {
        command: command.into(),
        input: input.into(),
        vars: Some(common.vars.clone()),
        kind: None,
        operator: None,
        at: None,
        max_order: None,
        max_degree: None,
        budget: None,
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::SepRational { expr, kind, common } => {
            let mut q = query("sep-rational", &expr, &common);
            q.kind = Some(kind);
            run_single(q, &common)
        }
        Cmd::SepHyperexp { expr, common } => {
            let q = query("sep-hyperexp", &expr, &common);
            run_single(q, &common)
        }
        Cmd::SepHypergeom { expr, common } => {
            let q = query("sep-hypergeom", &expr, &common);
            run_single(q, &common)
        }
        Cmd::SepAlgebraic { expr, max_degree, budget, common } => {
            let mut q = query("sep-algebraic", &expr, &common);
            q.max_degree = max_degree;
            q.budget = Some(budget);
            run_single(q, &common)
        }
        Cmd::Telescoper { expr, kind, common } => {
            let mut q = query("telescoper", &expr, &common);
            q.kind = Some(kind);
            run_single(q, &common)
        }
        Cmd::Reduce { expr, kind, common } => {
            let mut q = query("reduce", &expr, &common);
            q.kind = Some(kind);
            run_single(q, &common)
        }
        Cmd::Dispersion { expr, at, common } => {
            let mut q = query("dispersion", &expr, &common);
            q.at = at;
            run_single(q, &common)
        }
        Cmd::GpForm { expr, common } => {
            let q = query("gp-form", &expr, &common);
            run_single(q, &common)
        }
        Cmd::Verify { expr, operator, kind, common } => {
            let mut q = query("verify", &expr, &common);
            q.operator = Some(operator);
            q.kind = Some(kind);
            run_single(q, &common)
        }
        Cmd::Oracle { expr, kind, max_order, max_degree, common } => {
            let mut q = query("oracle", &expr, &common);
            q.kind = Some(kind);
            q.max_order = Some(max_order);
            q.max_degree = Some(max_degree);
            run_single(q, &common)
        }
        Cmd::Batch => run_batch(),
    };
    std::process::exit(code);
}
