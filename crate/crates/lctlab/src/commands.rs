//! One function per subcommand, each delegating to a library operation.

use std::collections::BTreeMap;

use clap::ValueEnum;
use lctlab_core::asymptotics::{enlarge, enlarge_q, enlarged_terms, fekete_limit, SubadditiveScalarSequence};
use lctlab_core::multiplier::{
    arn_ideal_q, arn_monomial, asymptotic_system, computing_valuations, computing_valuations_q, controlled_growth_check,
    jumping_numbers, lct_q, multiplier_ideal, primitive_direction, sandwich_check, verify_jumps, ComputingSet,
};
use lctlab_core::newton::{ExponentVector, GradedMonomialSequence, MonomialIdeal, MonomialValuation, NewtonRegion, Precision, Value};
use lctlab_core::ratlp::{rat, to_f64, Extended};
use lctlab_core::valspace2d::{a_invariance_check, build_chain, chi_trace, fan_refine_2d, ChiTarget, SkpChain, Tangent};
use lctlab_core::{Options, Rational};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value as Json};

use crate::job::{rats, IdealRef, Rat, Workspace};
use crate::output::{extended_json, ideal_json, rat_json, rats_json, value_json, Cell, Report, Table};
use crate::svg::{polygon, step_plot, PolygonPlot};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Lct,
    Arn,
    Multiplier,
    Jumps,
    Region,
    Valuations,
    Asym,
    Fekete,
    Enlarge,
    Chain,
    Fan,
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lct => "lct",
            Command::Arn => "arn",
            Command::Multiplier => "multiplier",
            Command::Jumps => "jumps",
            Command::Region => "region",
            Command::Valuations => "valuations",
            Command::Asym => "asym",
            Command::Fekete => "fekete",
            Command::Enlarge => "enlarge",
            Command::Chain => "chain",
            Command::Fan => "fan",
            Command::Check => "check",
        }
    }
}

/// The `run.args` object of a job.
pub struct Args<'a> {
    map: &'a BTreeMap<String, Json>,
}

impl<'a> Args<'a> {
    pub fn new(map: &'a BTreeMap<String, Json>) -> Self {
        Self { map }
    }

    fn allow(&self, keys: &[&str]) -> Result<(), CliError> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(CliError::Input(format!("/run/args/{k}: unknown argument (expected one of {})", keys.join(", ")))),
            None => Ok(()),
        }
    }

    fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.map
            .get(key)
            .map(|v| serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("/run/args/{key}: {e}"))))
            .transpose()
    }

    fn required<T: DeserializeOwned>(&self, key: &str) -> Result<T, CliError> {
        self.get(key)?
            .ok_or_else(|| CliError::Input(format!("/run/args/{key}: required argument missing")))
    }
}

fn sequence(ws: &Workspace, args: &Args, key: &str) -> Result<GradedMonomialSequence, CliError> {
    let name: String = args.required(key)?;
    if let Some(s) = ws.sequences.get(&name) {
        return Ok(s.clone());
    }
    if let Some(a) = ws.ideals.get(&name) {
        return Ok(GradedMonomialSequence::powers_of(a.clone())?);
    }
    Err(CliError::Input(format!("/run/args/{key}: no sequence or ideal named {name:?}")))
}

fn q_arg(ws: &mut Workspace, args: &Args) -> Result<MonomialIdeal, CliError> {
    match args.get::<IdealRef>("q")? {
        Some(r) => ws.resolve_ideal(&r, "/run/args/q"),
        None => Ok(MonomialIdeal::unit(ws.nvars)),
    }
}

fn u_arg(ws: &Workspace, args: &Args) -> Result<Option<ExponentVector>, CliError> {
    match args.get::<Vec<u32>>("u")? {
        Some(u) if u.len() != ws.nvars => Err(CliError::Input(format!("/run/args/u: expected {} exponents", ws.nvars))),
        Some(u) => Ok(Some(ExponentVector::from(u))),
        None => Ok(None),
    }
}

fn var_row(u: &ExponentVector) -> Vec<Cell> {
    u.coords().iter().map(|c| Cell::Text(c.to_string())).collect()
}

fn exact_or_error(v: &Value, what: &str) -> Result<Rational, CliError> {
    v.exact()
        .cloned()
        .ok_or_else(|| CliError::Computation(format!("{what} needs an exact value")))
}

pub fn run(cmd: Command, ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    match cmd {
        Command::Lct | Command::Arn => threshold(cmd, ws, args, opts),
        Command::Multiplier => multiplier(ws, args, opts),
        Command::Jumps => jumps(ws, args, opts),
        Command::Region => region(ws, args, opts),
        Command::Valuations => valuations(ws, args, opts),
        Command::Asym => asym(ws, args, opts),
        Command::Fekete => fekete(ws, args, opts),
        Command::Enlarge => enlargement(ws, args, opts),
        Command::Chain => chain(ws, args, opts),
        Command::Fan => fan(args),
        Command::Check => {
            args.allow(&["suite", "cases", "seed"])?;
            crate::suite::run(args.get("suite")?, args.get("cases")?, args.get("seed")?, opts)
        }
    }
}

fn threshold(cmd: Command, ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "q", "u"])?;
    let seq = sequence(ws, args, "seq")?;
    let (arn, target) = match u_arg(ws, args)? {
        Some(u) => {
            if args.map.contains_key("q") {
                return Err(CliError::Input("/run/args: give either u or q, not both".into()));
            }
            let label = MonomialIdeal::new(ws.nvars, vec![u.clone()])?;
            (arn_monomial(&seq, &u, opts)?, label)
        }
        None => {
            let q = q_arg(ws, args)?;
            (arn_ideal_q(&seq, &q, opts)?, q)
        }
    };
    let lct = arn.value.recip();
    let tol = opts.tolerance;
    let mut table = Table::new(&["quantity", "value"]);
    let rows = [("lct", Cell::value(&lct, tol)), ("arn", Cell::value(&arn.value, tol))];
    let ordered: Vec<_> = if cmd == Command::Lct { rows.into_iter().collect() } else { rows.into_iter().rev().collect() };
    for (name, cell) in ordered {
        table.push(vec![name.into(), cell]);
    }
    let result = json!({
        "q": ideal_json(&target, &ws.vars),
        "arn": value_json(&arn.value, tol),
        "lct": value_json(&lct, tol),
    });
    Ok(Report::new(result, table).with_precision(arn.precision))
}

fn multiplier(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "lambda"])?;
    let seq = sequence(ws, args, "seq")?;
    let lambda: Rat = args.required("lambda")?;
    let j = multiplier_ideal(&seq, &lambda.0, opts)?;
    let mut header: Vec<&str> = ws.vars.iter().map(String::as_str).collect();
    header.insert(0, "generator");
    let mut table = Table::new(&header);
    for (k, g) in j.value.generators().iter().enumerate() {
        let mut row = vec![Cell::Text(k.to_string())];
        row.extend(var_row(g));
        table.push(row);
    }
    let result = json!({"lambda": rat_json(&lambda.0), "ideal": ideal_json(&j.value, &ws.vars)});
    Ok(Report::new(result, table).with_precision(j.precision))
}

fn jumps(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "max"])?;
    let seq = sequence(ws, args, "seq")?;
    let max: Rat = args.required("max")?;
    let report = jumping_numbers(&seq, &max.0, opts)?;
    let verified = if report.precision.is_exact() || matches!(report.precision, Precision::InnerApproximation { .. }) {
        verify_jumps(&seq, &report, &max.0, opts).map_err(|e| CliError::Computation(format!("jump verification failed: {e}")))?;
        json!(true)
    } else {
        Json::Null
    };
    let mut table = Table::new(&["from", "ideal"]);
    let mut starts = vec![Rational::from_integer(0.into())];
    starts.extend(report.jumps.iter().cloned());
    for (start, ideal) in starts.iter().zip(&report.ideals_between) {
        table.push(vec![Cell::rat(start), Cell::Text(crate::output::display_ideal(ideal, &ws.vars))]);
    }
    let result = json!({
        "max": rat_json(&max.0),
        "jumps": rats_json(&report.jumps),
        "ideals": report.ideals_between.iter().map(|i| ideal_json(i, &ws.vars)).collect::<Vec<_>>(),
        "verified": verified,
    });
    Ok(Report::new(result, table).with_precision(report.precision))
}

fn region(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "u"])?;
    let seq = sequence(ws, args, "seq")?;
    let limit = seq.limit_region(opts.window)?;
    let NewtonRegion::Polyhedral(poly) = &limit.value else {
        return Err(CliError::Computation("unsupported operation: region needs a polyhedral limit".into()));
    };
    let u = u_arg(ws, args)?.unwrap_or_else(|| ExponentVector::zero(ws.nvars));
    let w = u.shifted();
    let entry = poly.ray_entry(&w)?;
    let hit: Vec<Rational> = w.iter().map(|c| c * &entry).collect();
    let mut table = Table::new(&["kind", "coordinates"]);
    let join = |v: &[Rational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    for v in poly.vertices() {
        table.push(vec!["vertex".into(), Cell::Text(join(v))]);
    }
    for a in poly.facets() {
        table.push(vec!["facet".into(), Cell::Text(join(a))]);
    }
    table.push(vec!["entry".into(), Cell::Text(join(&hit))]);
    let result = json!({
        "vertices": poly.vertices().iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
        "facets": poly.facets().iter().map(|v| rats_json(v)).collect::<Vec<_>>(),
        "u": u.coords(),
        "arn": rat_json(&entry),
        "hit": rats_json(&hit),
    });
    let mut report = Report::new(result, table).with_precision(limit.precision);
    if ws.nvars == 2 {
        let contains = |x: &[Rational]| poly.contains(x);
        report = report.with_svg(polygon(&PolygonPlot {
            vertices: poly.vertices(),
            ray: &w,
            entry: Some(&entry),
            contains: &contains,
        }));
    }
    Ok(report)
}

fn valuations(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "u", "q"])?;
    let seq = sequence(ws, args, "seq")?;
    let set = match (u_arg(ws, args)?, args.map.contains_key("q")) {
        (Some(_), true) => return Err(CliError::Input("/run/args: give either u or q, not both".into())),
        (None, true) => {
            let q = q_arg(ws, args)?;
            computing_valuations_q(&seq, &q, opts)?
        }
        (u, false) => computing_valuations(&seq, &u.unwrap_or_else(|| ExponentVector::zero(ws.nvars)), opts)?,
    };
    let mut header = vec!["direction"];
    header.extend(ws.vars.iter().map(String::as_str));
    let mut table = Table::new(&header);
    let (result, precision) = match &set {
        ComputingSet::All => {
            table.push(vec![Cell::Text("all".into())]);
            (json!({"computing": "all"}), Precision::Exact)
        }
        ComputingSet::Exact(vs) => {
            for (k, v) in vs.iter().enumerate() {
                let mut row = vec![Cell::Text(k.to_string())];
                row.extend(v.alpha().iter().map(Cell::rat));
                table.push(row);
            }
            (json!({"computing": vs.iter().map(|v| rats_json(v.alpha())).collect::<Vec<_>>()}), Precision::Exact)
        }
        ComputingSet::Approximate { directions, tolerance } => {
            for (k, d) in directions.iter().enumerate() {
                let mut row = vec![Cell::Text(k.to_string())];
                row.extend(d.iter().map(|&x| Cell::Approx { value: x, tolerance: *tolerance }));
                table.push(row);
            }
            (
                json!({"computing": {"approximate": directions, "tolerance": tolerance}}),
                Precision::Approximate { tolerance: *tolerance },
            )
        }
    };
    Ok(Report::new(result, table).with_precision(precision))
}

fn default_grid() -> Vec<Rational> {
    (1..=32).map(|k| rat(k, 4)).collect()
}

fn asym(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "alpha", "grid", "m_max"])?;
    let seq = sequence(ws, args, "seq")?;
    let alpha: Vec<Rat> = args.required("alpha")?;
    let grid = args.get::<Vec<Rat>>("grid")?.map(|g| rats(&g)).unwrap_or_else(default_grid);
    let m_max: u32 = args.get("m_max")?.unwrap_or(12);
    let alpha = rats(&alpha);
    let growth = controlled_growth_check(&asymptotic_system(seq.clone()), &alpha, &grid, opts)?;
    let v = MonomialValuation::new(alpha)?;
    let sandwich = sandwich_check(&seq, &v, m_max, opts)?;
    let mut table = Table::new(&["check", "index", "lower", "value", "upper", "holds"]);
    for r in &growth.rows {
        table.push(vec!["growth".into(), Cell::rat(&r.t), Cell::rat(&r.rhs), Cell::rat(&r.lhs), "".into(), Cell::Text(r.holds.to_string())]);
    }
    for r in &sandwich {
        table.push(vec![
            "sandwich".into(),
            Cell::Text(r.m.to_string()),
            Cell::rat(&r.lower),
            Cell::rat(&r.middle),
            Cell::rat(&r.upper),
            Cell::Text(r.holds.to_string()),
        ]);
    }
    let result = json!({
        "controlled_growth": {
            "limit": rat_json(&growth.limit),
            "log_discrepancy": rat_json(&growth.log_discrepancy),
            "holds": growth.holds(),
            "rows": growth.rows.iter().map(|r| json!({
                "t": rat_json(&r.t), "lhs": rat_json(&r.lhs), "rhs": rat_json(&r.rhs),
                "margin": rat_json(&r.margin), "holds": r.holds,
            })).collect::<Vec<_>>(),
        },
        "sandwich": {
            "holds": sandwich.iter().all(|r| r.holds),
            "rows": sandwich.iter().map(|r| json!({
                "m": r.m, "lower": rat_json(&r.lower), "middle": rat_json(&r.middle),
                "upper": rat_json(&r.upper), "holds": r.holds,
            })).collect::<Vec<_>>(),
        },
    });
    Ok(Report::new(result, table).with_precision(growth.precision))
}

/// `"inf"` or a rational.
#[derive(Deserialize)]
#[serde(untagged)]
enum ExtendedArg {
    Value(Rat),
    Keyword(String),
}

fn fekete(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["values", "seq", "alpha", "m_max"])?;
    let seq = match args.get::<Vec<ExtendedArg>>("values")? {
        Some(values) => {
            let terms = values
                .into_iter()
                .enumerate()
                .map(|(k, v)| match v {
                    ExtendedArg::Value(r) => Ok(Extended::Finite(r.0)),
                    ExtendedArg::Keyword(s) if s == "inf" => Ok(Extended::Infinite),
                    ExtendedArg::Keyword(s) => Err(CliError::Input(format!("/run/args/values/{k}: bad value {s:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            SubadditiveScalarSequence::new(terms)?
        }
        None => {
            let s = sequence(ws, args, "seq")?;
            let alpha: Vec<Rat> = args.required("alpha")?;
            let v = MonomialValuation::new(rats(&alpha))?;
            let m_max: u32 = args.get("m_max")?.unwrap_or(opts.window);
            SubadditiveScalarSequence::valuation_of(&v, &s, m_max)?
        }
    };
    let report = fekete_limit(&seq)?;
    let mut table = Table::new(&["m", "alpha_m", "ratio"]);
    for (k, (a, r)) in seq.terms().iter().zip(&report.trace).enumerate() {
        table.push(vec![Cell::Text((k + 1).to_string()), Cell::Text(a.to_string()), Cell::Text(r.to_string())]);
    }
    let result = json!({
        "inf": extended_json(&report.inf),
        "argmin": report.argmin,
        "window": report.window,
        "trace": report.trace.iter().map(extended_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(result, table).with_precision(Precision::InnerApproximation { window: report.window }))
}

fn enlargement(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["seq", "p", "terms", "q", "n", "p_max"])?;
    let seq = sequence(ws, args, "seq")?;
    let p: u32 = args.required("p")?;
    let count: u32 = args.get("terms")?.unwrap_or(4);
    let terms = enlarged_terms(&seq, p, count)?;
    let mut table = Table::new(&["j", "ideal"]);
    for (j, c) in terms.iter().enumerate() {
        table.push(vec![Cell::Text((j + 1).to_string()), Cell::Text(crate::output::display_ideal(c, &ws.vars))]);
    }
    let mut result = json!({
        "p": p,
        "terms": terms.iter().map(|c| ideal_json(c, &ws.vars)).collect::<Vec<_>>(),
    });
    let q = q_arg(ws, args)?;
    let tol = opts.tolerance;
    if let Some(n) = args.get::<u32>("n")? {
        let r = enlarge_q(&q, n)?;
        let before = exact_or_error(&arn_ideal_q(&seq, &q, opts)?.value, "q + m^N comparison")?;
        let after = exact_or_error(&arn_ideal_q(&seq, &r, opts)?.value, "q + m^N comparison")?;
        result["enlarged_q"] = json!({
            "n": n,
            "ideal": ideal_json(&r, &ws.vars),
            "arn_q": rat_json(&before),
            "arn_enlarged": rat_json(&after),
            "equal": before == after,
        });
    }
    if let Some(p_max) = args.get::<u32>("p_max")? {
        let base = lct_q(&seq, &q, opts)?.value;
        let trace = (1..=p_max)
            .map(|p| Ok(lct_q(&enlarge(seq.clone(), p)?, &q, opts)?.value))
            .collect::<Result<Vec<_>, CliError>>()?;
        result["lct_trace"] = json!({
            "base": value_json(&base, tol),
            "values": trace.iter().map(|v| value_json(v, tol)).collect::<Vec<_>>(),
        });
    }
    Ok(Report::new(result, table))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChainArg {
    Name(String),
    Steps(Vec<[u64; 2]>),
}

fn tangent(name: Option<String>) -> Result<Tangent, CliError> {
    match name.as_deref() {
        None | Some("generic") => Ok(Tangent::Generic),
        Some("xaxis") => Ok(Tangent::XAxis),
        Some("yaxis") => Ok(Tangent::YAxis),
        Some(other) => Err(CliError::Input(format!("/run/args/tangent: expected generic, xaxis or yaxis, got {other:?}"))),
    }
}

fn chain(ws: &mut Workspace, args: &Args, opts: &Options) -> Result<Report, CliError> {
    args.allow(&["chain", "tangent", "seq", "q", "f", "n_max"])?;
    let chain: SkpChain = match args.required::<ChainArg>("chain")? {
        ChainArg::Name(n) => ws
            .chains
            .get(&n)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("/run/args/chain: no chain named {n:?}")))?,
        ChainArg::Steps(s) => build_chain(&s.iter().map(|x| (x[0], x[1])).collect::<Vec<_>>())?,
    };
    let tangent = tangent(args.get("tangent")?)?;
    let n_max: usize = args.get("n_max")?.unwrap_or(chain.depth());
    if n_max > chain.depth() {
        return Err(CliError::Input(format!("/run/args/n_max: chain has depth {}", chain.depth())));
    }
    let mut levels = Vec::new();
    let mut table = Table::new(&["n", "b", "beta", "A_v", "A_E", "v_x", "v_y", "v_seq", "v_q", "chi"]);
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for n in 0..=n_max {
        let l = chain.level(n)?;
        let r = chain.valuation(n, tangent)?.retraction()?;
        levels.push(json!({
            "n": n,
            "b": l.b.to_string(),
            "beta": rat_json(&l.beta),
            "log_discrepancy": rat_json(&l.log_discrepancy),
            "exceptional": {"log_discrepancy": rat_json(&l.exceptional.log_discrepancy), "multiplicity": rat_json(&l.exceptional.multiplicity)},
            "retraction": rats_json(r.alpha()),
            "blowups": l.blowups.iter().map(|b| json!({
                "kind": format!("{:?}", b.kind).to_lowercase(),
                "weight": [b.weight.0, b.weight.1],
                "log_discrepancy": rat_json(&b.divisor.log_discrepancy),
                "multiplicity": rat_json(&b.divisor.multiplicity),
            })).collect::<Vec<_>>(),
        }));
        rows.push(vec![
            Cell::Text(n.to_string()),
            Cell::Text(l.b.to_string()),
            Cell::rat(&l.beta),
            Cell::rat(&l.log_discrepancy),
            Cell::rat(&l.exceptional.log_discrepancy),
            Cell::rat(&r.alpha()[0]),
            Cell::rat(&r.alpha()[1]),
        ]);
    }
    let mut result = json!({
        "steps": chain.steps().iter().map(|s| [s.0, s.1]).collect::<Vec<_>>(),
        "tangent": format!("{tangent:?}").to_lowercase(),
        "levels": levels,
    });
    let mut points = Vec::new();
    let mut precision = Precision::Exact;
    if args.map.contains_key("seq") {
        let seq = sequence(ws, args, "seq")?;
        let target = match args.get::<String>("f")? {
            Some(name) => {
                if args.map.contains_key("q") {
                    return Err(CliError::Input("/run/args: give either q or f, not both".into()));
                }
                ChiTarget::Principal(
                    ws.polynomials
                        .get(&name)
                        .cloned()
                        .ok_or_else(|| CliError::Input(format!("/run/args/f: no polynomial named {name:?}")))?,
                )
            }
            None => ChiTarget::Ideal(q_arg(ws, args)?),
        };
        let trace = chi_trace(&chain, tangent, &seq, &target, n_max, opts)?;
        precision = trace.precision;
        for (row, t) in rows.iter_mut().zip(&trace.rows) {
            row.extend([Cell::rat(&t.value_on_sequence), Cell::rat(&t.value_on_q), Cell::rat(&t.chi)]);
            points.push((t.n, to_f64(&t.chi)));
        }
        result["chi"] = json!({
            "rows": trace.rows.iter().map(|t| json!({
                "n": t.n, "value_on_sequence": rat_json(&t.value_on_sequence),
                "log_discrepancy": rat_json(&t.log_discrepancy), "value_on_q": rat_json(&t.value_on_q),
                "chi": rat_json(&t.chi),
            })).collect::<Vec<_>>(),
            "n0_observed": trace.n0_observed,
            "n0_bound": trace.n0_bound,
            "q_monotone": trace.q_monotone,
        });
    }
    for mut row in rows {
        row.resize(table.header.len(), Cell::Text(String::new()));
        table.push(row);
    }
    let svg = step_plot("chi(v_n)", &points);
    Ok(Report::new(result, table).with_precision(precision).with_svg(svg))
}

fn fan(args: &Args) -> Result<Report, CliError> {
    args.allow(&["alpha", "other"])?;
    let alpha = rats(&args.required::<Vec<Rat>>("alpha")?);
    if alpha.len() != 2 {
        return Err(CliError::Input("/run/args/alpha: expected two weights".into()));
    }
    use num_traits::{Signed, ToPrimitive};
    if !alpha.iter().all(Signed::is_positive) {
        return Err(CliError::Input("/run/args/alpha: weights must be positive".into()));
    }
    let prim = primitive_direction(&alpha);
    let prim: [u64; 2] = [
        prim[0].to_integer().to_u64().ok_or_else(|| CliError::Input("direction too large".into()))?,
        prim[1].to_integer().to_u64().ok_or_else(|| CliError::Input("direction too large".into()))?,
    ];
    let other = match args.get::<[u64; 2]>("other")? {
        Some(o) => o,
        None if prim[0] != prim[1] => [prim[1], prim[0]],
        None => [1, 2],
    };
    let f = fan_refine_2d(prim)?;
    let check = a_invariance_check(&alpha, other)?;
    let dets = f.determinants();
    let mut table = Table::new(&["ray_x", "ray_y", "A", "det_next"]);
    for (k, r) in f.rays().iter().enumerate() {
        table.push(vec![
            Cell::Text(r[0].to_string()),
            Cell::Text(r[1].to_string()),
            Cell::Text(f.log_discrepancies()[k].to_string()),
            Cell::Text(dets.get(k).map(|d| d.to_string()).unwrap_or_default()),
        ]);
    }
    let result = json!({
        "direction": prim,
        "rays": f.rays(),
        "log_discrepancies": f.log_discrepancies(),
        "determinants": dets.iter().map(|d| *d as i64).collect::<Vec<_>>(),
        "invariance": {
            "other": other,
            "direct": rat_json(&check.direct),
            "own_fan": rat_json(&check.own_fan),
            "other_cone": rat_json(&check.other_cone),
            "other_path": rat_json(&check.other_path),
            "determinants_ok": check.determinants_ok,
            "equal": check.equal,
        },
    });
    Ok(Report::new(result, table))
}
