mod args;
mod csv;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use discrete_dynamics::escape::{cantor_levels, expansion_check};
use discrete_dynamics::henon::{self, attractor_cloud, regime_sweep, HenonParams};
use discrete_dynamics::integrator::StepPlan;
use discrete_dynamics::logistic::{bifurcation_diagram, cascade_scan, find_periodic_orbits, linspace};
use discrete_dynamics::lorenz::{self, LorenzParams};
use discrete_dynamics::poincare::{section, Direction, SectionPlane};
use discrete_dynamics::{Error, Exec, Point2, State3};

use args::*;
use csv::Table;

/// Failure of one invocation: bad parameter values are usage errors (exit 2),
/// everything else is a runtime error (exit 1).
enum Failure {
    Usage(String),
    Runtime { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Usage(m),
            other => Failure::Runtime { kind: other.kind(), message: other.to_string() },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime { kind: "io", message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // prints help/version with status 0, usage errors with status 2
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: usage: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime { kind, message }) => {
            eprintln!("error: {kind}: {}", message.replace('\n', " "));
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Lorenz(cmd) => match cmd.action {
            Some(LorenzAction::Analyze { params, out }) => lorenz_analyze(&params, &out),
            None => lorenz_orbit(&cmd.orbit, &cmd.out),
        },
        Command::Poincare(args) => poincare(&args),
        Command::Henon(cmd) => match cmd.action {
            Some(HenonAction::FixedPoints { params, out }) => henon_fixed_points(&params, &out),
            Some(HenonAction::Regimes { b, a_min, a_max, n, x0, y0, transient, probe, out }) => {
                henon_regimes(b, (a_min, a_max, n), Point2::new(x0, y0), transient, probe, &out)
            }
            None => henon_cloud(&cmd),
        },
        Command::Logistic(cmd) => match cmd.action {
            LogisticAction::Diagram { a_min, a_max, n, transient, keep, x0, out } => {
                logistic_diagram(a_min, a_max, n, transient, keep, x0, &out)
            }
            LogisticAction::Cascade { a_min, a_max, k_max, out } => logistic_cascade(a_min, a_max, k_max, &out),
            LogisticAction::Orbits { a, period, out } => logistic_orbits(a, period, &out),
        },
        Command::Cantor(cmd) => match cmd.action {
            Some(CantorAction::Check { a, out }) => cantor_check(a, &out),
            None => cantor(cmd.a, cmd.depth, &cmd.out),
        },
    }
}

fn emit(table: &Table, out: &Output) -> Outcome {
    table.write_to(out.output.as_deref().map(Path::new))?;
    Ok(())
}

fn lorenz_params(p: &LorenzParamArgs) -> Result<LorenzParams, Failure> {
    Ok(LorenzParams::new(p.sigma, p.r, p.b)?)
}

fn lorenz_run(args: &LorenzOrbitArgs) -> Result<discrete_dynamics::Orbit<State3, LorenzParams>, Failure> {
    let params = lorenz_params(&args.params)?;
    let plan = StepPlan::new(0.0, args.dt, args.steps)?;
    Ok(lorenz::trajectory(&params, State3::new(args.x0, args.y0, args.z0), plan)?)
}

fn lorenz_orbit(args: &LorenzOrbitArgs, out: &Output) -> Outcome {
    let orbit = lorenz_run(args)?;
    let mut table = Table::new(&["t", "x", "y", "z"], out.precision);
    for (i, s) in orbit.samples().iter().enumerate() {
        let t = orbit.time(i).unwrap_or(0.0);
        table.nums(&[t, s.x, s.y, s.z]);
    }
    emit(&table, out)
}

fn lorenz_analyze(p: &LorenzParamArgs, out: &Output) -> Outcome {
    let params = lorenz_params(p)?;
    let mut table = Table::new(&["quantity", "value"], out.precision);
    let mut put = |name: String, v: f64| {
        let v = table.num(v);
        table.row(&[name, v]);
    };
    let origin = lorenz::char_poly_origin(&params);
    put("origin_quadratic_c1".into(), origin.quadratic[1]);
    put("origin_quadratic_c0".into(), origin.quadratic[2]);
    put("origin_discriminant".into(), origin.discriminant);
    for (i, eq) in lorenz::equilibria(&params).iter().enumerate() {
        put(format!("eq{i}_x"), eq.location.x);
        put(format!("eq{i}_y"), eq.location.y);
        put(format!("eq{i}_z"), eq.location.z);
        for (j, c) in eq.char_coeffs.iter().enumerate().skip(1) {
            put(format!("eq{i}_c{}", 3 - j), *c);
        }
        for (j, root) in eq.eigen_summary.roots.iter().enumerate() {
            put(format!("eq{i}_lambda{j}_re"), root.re);
            put(format!("eq{i}_lambda{j}_im"), root.im);
        }
        put(format!("eq{i}_n_unstable"), eq.eigen_summary.n_unstable as f64);
    }
    put("critical_r".into(), lorenz::critical_r(&params)?);
    emit(&table, out)
}

fn parse_normal(s: &str) -> Result<State3, Failure> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|c| c.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == 3 => Ok(State3::new(v[0], v[1], v[2])),
        _ => Err(Failure::Usage(format!("--normal expects three comma-separated numbers, got {s:?}"))),
    }
}

fn poincare(args: &PoincareArgs) -> Outcome {
    let direction: Direction = args.direction.parse()?;
    let plane = SectionPlane::new(parse_normal(&args.normal)?, args.offset, direction)?;
    let orbit = lorenz_run(&args.orbit)?;
    let points = section(&orbit, &plane)?;
    let mut table = Table::new(&["index", "t", "x", "y", "z"], args.out.precision);
    for p in &points {
        let fields = [p.index.to_string(), table.num(p.t), table.num(p.location.x), table.num(p.location.y), table.num(p.location.z)];
        table.row(&fields);
    }
    emit(&table, &args.out)
}

fn henon_cloud(cmd: &HenonCmd) -> Outcome {
    let params = HenonParams::new(cmd.params.a, cmd.params.b)?;
    let cloud = attractor_cloud(&params, Point2::new(cmd.x0, cmd.y0), cmd.transient, cmd.n)?;
    let mut table = Table::new(&["i", "x", "y"], cmd.out.precision);
    for (i, p) in cloud.iter().enumerate() {
        let fields = [(cmd.transient + i).to_string(), table.num(p.x), table.num(p.y)];
        table.row(&fields);
    }
    emit(&table, &cmd.out)
}

fn henon_fixed_points(p: &HenonParamArgs, out: &Output) -> Outcome {
    let params = HenonParams::new(p.a, p.b)?;
    let mut table = Table::new(&["x", "y", "lambda1", "lambda2", "p1", "p2", "stability"], out.precision);
    for fp in henon::fixed_points(&params) {
        let lambda = |z: (f64, f64)| -> String {
            if z.1 == 0.0 {
                table.num(z.0)
            } else {
                format!("{}{:+}i", table.num(z.0), z.1)
            }
        };
        let [l1, l2] = fp.eigenvalues;
        let (s1, s2) = match fp.slopes {
            Some([a, b]) => (table.num(a), table.num(b)),
            None => (String::new(), String::new()),
        };
        let fields = [
            table.num(fp.location.x),
            table.num(fp.location.y),
            lambda((l1.re, l1.im)),
            lambda((l2.re, l2.im)),
            s1,
            s2,
            format!("{:?}", fp.stability).to_lowercase(),
        ];
        table.row(&fields);
    }
    emit(&table, out)
}

fn henon_regimes(b: f64, grid: (f64, f64, usize), x0: Point2, transient: usize, probe: usize, out: &Output) -> Outcome {
    let (a_min, a_max, n) = grid;
    if n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let a_values = linspace(a_min, a_max, n);
    let reports = regime_sweep(&a_values, b, x0, transient, probe, Exec::default())?;
    let mut table = Table::new(&["a", "label", "a0", "a1"], out.precision);
    for r in &reports {
        let fields = [table.num(r.a), r.regime.label().to_string(), table.num(r.a0), table.num(r.a1)];
        table.row(&fields);
    }
    emit(&table, out)
}

fn logistic_diagram(a_min: f64, a_max: f64, n: usize, transient: usize, keep: usize, x0: f64, out: &Output) -> Outcome {
    let columns = bifurcation_diagram(a_min, a_max, n, transient, keep, x0)?;
    let mut table = Table::new(&["a", "x"], out.precision);
    for (a, xs) in &columns {
        for &x in xs {
            table.nums(&[*a, x]);
        }
    }
    emit(&table, out)
}

fn logistic_cascade(a_min: f64, a_max: f64, k_max: usize, out: &Output) -> Outcome {
    let record = cascade_scan(a_min, a_max, k_max)?;
    let mut table = Table::new(&["k", "period", "a_onset"], out.precision);
    for e in &record.entries {
        let fields = [e.k.to_string(), e.period.to_string(), table.num(e.a_onset)];
        table.row(&fields);
    }
    emit(&table, out)
}

fn logistic_orbits(a: f64, period: usize, out: &Output) -> Outcome {
    let cycles = find_periodic_orbits(a, period)?;
    let mut table = Table::new(&["cycle", "period", "x", "multiplier", "stability"], out.precision);
    for (i, c) in cycles.iter().enumerate() {
        for &x in &c.points {
            let fields = [i.to_string(), c.period.to_string(), table.num(x), table.num(c.multiplier), c.stability.label().to_string()];
            table.row(&fields);
        }
    }
    emit(&table, out)
}

fn cantor(a: f64, depth: usize, out: &Output) -> Outcome {
    let levels = cantor_levels(a, depth)?;
    let mut table = Table::new(&["level", "lo", "hi"], out.precision);
    for (n, level) in levels.iter().enumerate() {
        for iv in level.intervals() {
            let fields = [n.to_string(), table.num(iv.lo), table.num(iv.hi)];
            table.row(&fields);
        }
    }
    emit(&table, out)
}

fn cantor_check(a: f64, out: &Output) -> Outcome {
    let check = expansion_check(a)?;
    let mut table = Table::new(&["a", "holds", "min_derivative"], out.precision);
    let fields = [table.num(a), check.holds.to_string(), table.num(check.min_derivative)];
    table.row(&fields);
    emit(&table, out)
}
