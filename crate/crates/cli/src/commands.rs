//! Command dispatch over the field the problem names.

use std::time::Instant;

use fiberideals::fibers::{HksOutcome, RowSampling};
use fiberideals::syzygy::{is_linear_presentation, parse_matrix};
use fiberideals::{
    AlgebraError, Field, Ideal, MapContext, MonomialOrder, PolyRing, PresentationMatrix,
    PrimeField, ProjectivePoint, Rationals,
};
use serde_json::{json, Value};

use crate::problem::{Problem, ProblemFile};
use crate::report::{codim_value, ideal_value, Report};
use crate::{Cli, CliError, Command, FiberKind, OrderArg};

/// Exit status for an unconfirmed correspondence chain under `--strict`.
pub const EXIT_UNCONFIRMED: i32 = 4;

pub fn execute(cli: &Cli) -> Result<(Report, i32), CliError> {
    let text = std::fs::read_to_string(&cli.problem).map_err(|e| CliError::Io {
        path: cli.problem.clone(),
        message: e.to_string(),
    })?;
    let base = cli.problem.parent().unwrap_or(std::path::Path::new("."));
    let file = ProblemFile::parse(&text, base)?;
    let spec = file.field;
    let start = Instant::now();
    let (mut report, code) = if spec.modulus == 0 {
        if spec.with_i {
            return Err(CliError::Usage("`with-i` needs a prime field".into()));
        }
        run_over(cli, &file, Rationals, "QQ".into())?
    } else if spec.with_i {
        let field = PrimeField::with_sqrt_minus_one(spec.modulus)?;
        let name = format!("{} with i", field.name());
        run_over(cli, &file, field, name)?
    } else {
        let field = PrimeField::new(spec.modulus)?;
        let name = field.name();
        run_over(cli, &file, field, name)?
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok((report, code))
}

fn run_over<F: Field>(
    cli: &Cli,
    file: &ProblemFile,
    field: F,
    field_name: String,
) -> Result<(Report, i32), CliError> {
    let order = match cli.order {
        OrderArg::Grevlex => MonomialOrder::GrevLex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    let ring = PolyRing::with_order(field, file.vars.clone(), order)?;
    let problem = Problem::resolve(file, ring)?;
    let mut report = Report {
        command: cli.command.echo(),
        seed: cli.seed,
        field: field_name,
        order: order.name(),
        ..Report::default()
    };
    let code = dispatch(cli, &problem, &mut report)?;
    Ok((report, code))
}

fn context<F: Field>(cli: &Cli, problem: &Problem<F>) -> Result<MapContext<F>, CliError> {
    Ok(MapContext::new(problem.ideal(&cli.ideal)?, cli.seed)?)
}

fn target<F: Field>(
    ctx: &MapContext<F>,
    problem: &Problem<F>,
    name: &str,
) -> Result<ProjectivePoint<F>, CliError> {
    Ok(ctx.target_point(problem.point(name)?.to_vec())?)
}

fn dispatch<F: Field>(
    cli: &Cli,
    problem: &Problem<F>,
    report: &mut Report,
) -> Result<i32, CliError> {
    let mut code = 0;
    match &cli.command {
        Command::Gb { name } => {
            let name = name.as_deref().unwrap_or(&cli.ideal);
            let ideal = problem.ideal(name)?;
            report
                .result(name, ideal_value(ideal))
                .codim(name, ideal.codimension());
        }
        Command::Colon { left, right } => {
            let q = problem.ideal(left)?.colon(problem.ideal(right)?)?;
            report
                .result("colon", ideal_value(&q))
                .codim("colon", q.codimension());
        }
        Command::Saturate { left, right } => {
            let q = problem.ideal(left)?.saturate(problem.ideal(right)?)?;
            report
                .result("saturation", ideal_value(&q))
                .codim("saturation", q.codimension());
        }
        Command::Codim { name } => {
            let name = name.as_deref().unwrap_or(&cli.ideal);
            let ideal = problem.ideal(name)?;
            report.codim(name, ideal.codimension());
            report.result(
                "dimension",
                ideal.dimension().map_or(Value::Null, Value::from),
            );
        }
        Command::Fiber { at, kind } => {
            let ctx = context(cli, problem)?;
            let q = target(&ctx, problem, at)?;
            report.result("q", q.format(ctx.field()));
            let put = |report: &mut Report, key: &str, ideal: &Ideal<F>| {
                report
                    .result(key, ideal_value(ideal))
                    .codim(key, ideal.codimension());
            };
            let mut corr = None;
            match kind {
                FiberKind::Row => put(report, "row", &ctx.row_ideal(&q)?),
                FiberKind::Morphism => put(report, "morphism", &ctx.morphism_fiber_ideal(&q)?),
                FiberKind::Corr => corr = Some(ctx.correspondence_fiber_ideal(&q, cli.max_power)?),
                FiberKind::All => {
                    let full = ctx.fiber_report(&q, cli.max_power)?;
                    put(report, "subspace", &full.subspace);
                    put(report, "row", &full.row);
                    put(report, "morphism", &full.morphism);
                    report.flag("chain_verified", full.chain_verified);
                    corr = Some(full.correspondence);
                }
            }
            if let Some(c) = corr {
                put(report, "correspondence", &c.ideal);
                report
                    .flag("confirmed", c.confirmed)
                    .flag("stabilized_at", c.stabilized_at)
                    .flag("powers_computed", c.powers_computed);
                if cli.strict && !c.confirmed {
                    code = EXIT_UNCONFIRMED;
                }
            }
        }
        Command::Spread { trials } => {
            let ctx = context(cli, problem)?;
            let spread = ctx.analytic_spread(*trials)?;
            report
                .result("analytic_spread", spread.value)
                .result("trial_codims", spread.trial_codims)
                .result("special_fiber_dimension", spread.oracle);
        }
        Command::Birational { trials, certify } => {
            let ctx = context(cli, problem)?;
            match certify {
                Some(name) => {
                    let q = target(&ctx, problem, name)?;
                    let row = ctx.row_ideal(&q)?;
                    report
                        .result("q", q.format(ctx.field()))
                        .result("certified", ctx.certify_birational(&q)?)
                        .result("row", ideal_value(&row))
                        .codim("row", row.codimension());
                }
                None => {
                    let test = ctx.birationality_test(*trials)?;
                    let field = ctx.field();
                    let records: Vec<Value> = test
                        .trials
                        .iter()
                        .map(|t| {
                            json!({
                                "point": t.point.format(field),
                                "image": t.image.format(field),
                                "fiber": ideal_value(&t.fiber),
                                "linear": t.linear,
                                "codim": codim_value(t.codim),
                            })
                        })
                        .collect();
                    report
                        .result("birational", test.birational)
                        .result("trials", records);
                }
            }
        }
        Command::Hks { matrix, at } => {
            let ctx = context(cli, problem)?;
            let a = load_matrix(&ctx, problem, matrix)?;
            let q = target(&ctx, problem, at)?;
            let aq = a.generalized_row_ideal(q.coords())?;
            report
                .result("q", q.format(ctx.field()))
                .result("generalized_row", ideal_value(&aq))
                .codim("generalized_row", aq.codimension());
            match ctx.hks_lower_bound(&a, &q)? {
                HksOutcome::Bound { bound, rank, .. } => {
                    report
                        .result("bound", bound)
                        .result("rank", rank)
                        .flag("applicable", true);
                }
                HksOutcome::NotApplicable { rank, reason } => {
                    report
                        .result("bound", Value::Null)
                        .result("rank", rank)
                        .result("reason", reason)
                        .flag("applicable", false);
                }
            }
        }
        Command::LinearRows { power, samples } => {
            let ctx = context(cli, problem)?;
            let check =
                ctx.linear_generalized_rows_check(*power, RowSampling::with_samples(*samples))?;
            let linear = is_linear_presentation(ctx.power_context(*power)?.ideal())?;
            let field = ctx.field();
            let bad: Vec<String> = check
                .counterexamples
                .iter()
                .map(|q| q.format(field))
                .collect();
            report
                .result("passed", check.passed)
                .result("tested", check.tested)
                .result("counterexamples", bad)
                .result("linearly_presented", linear);
        }
        Command::PointPresentation { power } => {
            let ctx = context(cli, problem)?;
            let pp = ctx.point_presentation(*power, None)?;
            let ring = ctx.ring();
            let field = ctx.field();
            let rows = pp.row_ideals();
            let matrix: Vec<Vec<String>> = (0..pp.matrix.row_count())
                .map(|i| pp.matrix.row(i).iter().map(|e| ring.format(e)).collect())
                .collect();
            report
                .result(
                    "points",
                    pp.points
                        .iter()
                        .map(|p| p.format(field))
                        .collect::<Vec<_>>(),
                )
                .result(
                    "generators",
                    pp.matrix
                        .generators()
                        .iter()
                        .map(|g| ring.format(g))
                        .collect::<Vec<_>>(),
                )
                .result("matrix", json!(matrix))
                .result(
                    "row_ideals",
                    rows.iter().map(ideal_value).collect::<Vec<_>>(),
                );
            report.codimensions.insert(
                "row_ideals".into(),
                rows.iter()
                    .map(|r| codim_value(r.codimension()))
                    .collect::<Vec<_>>()
                    .into(),
            );
            report
                .flag("rows_linear", rows.iter().all(Ideal::is_linear))
                .flag(
                    "rows_avoid_ideal",
                    rows.iter().all(|r| !r.contains_ideal(ctx.ideal())),
                );
        }
    }
    Ok(code)
}

fn load_matrix<F: Field>(
    ctx: &MapContext<F>,
    problem: &Problem<F>,
    name: &str,
) -> Result<PresentationMatrix<F>, CliError> {
    let decl = problem
        .matrices
        .get(name)
        .ok_or_else(|| CliError::UnknownMatrix(name.to_string()))?;
    let path = &decl.value.path;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let ring = ctx.ring();
    let rows = parse_matrix(ring, &text).map_err(|e| match e {
        AlgebraError::Parse { column, message } => CliError::Io {
            path: path.clone(),
            message: format!("column {column}: {message}"),
        },
        other => CliError::Algebra(other),
    })?;
    let generators = match &decl.value.rows {
        Some(ideal) => problem.ideal(ideal)?.generators().to_vec(),
        None => ctx.basis().to_vec(),
    };
    Ok(PresentationMatrix::from_rows(
        ring.clone(),
        generators,
        rows,
    )?)
}
