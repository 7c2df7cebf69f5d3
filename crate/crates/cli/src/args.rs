use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ddyn", version, about = "Lorenz flow, Poincare sections, Henon and logistic maps; emits CSV data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a Lorenz orbit (t,x,y,z), or analyze its equilibria
    Lorenz(LorenzCmd),
    /// Section a Lorenz orbit with a plane (index,t,x,y,z)
    Poincare(PoincareArgs),
    /// Iterate the Henon map (i,x,y), or inspect fixed points and regimes
    Henon(HenonCmd),
    /// Logistic map experiments
    Logistic(LogisticCmd),
    /// Interval levels of the a > 4 escape construction (level,lo,hi)
    Cantor(CantorCmd),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted
    #[arg(short = 'o', long = "output")]
    pub output: Option<std::path::PathBuf>,
    /// Significant digits for numeric fields
    #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u8).range(6..=17))]
    pub precision: u8,
}

#[derive(Debug, Args)]
pub struct LorenzParamArgs {
    /// Prandtl number sigma
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub sigma: f64,
    /// Rayleigh ratio r
    #[arg(long, default_value_t = 28.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Geometric factor b
    #[arg(long, default_value_t = 8.0 / 3.0, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct LorenzOrbitArgs {
    #[command(flatten)]
    pub params: LorenzParamArgs,
    /// Initial x
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Initial y
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub y0: f64,
    /// Initial z
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub z0: f64,
    /// Integration step
    #[arg(long, default_value_t = discrete_dynamics::lorenz::DEFAULT_DT, allow_negative_numbers = true)]
    pub dt: f64,
    /// Number of steps; the orbit has steps + 1 samples
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct LorenzCmd {
    #[command(subcommand)]
    pub action: Option<LorenzAction>,
    #[command(flatten)]
    pub orbit: LorenzOrbitArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum LorenzAction {
    /// Equilibria, characteristic polynomials and the critical r (quantity,value)
    Analyze {
        #[command(flatten)]
        params: LorenzParamArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct PoincareArgs {
    #[command(flatten)]
    pub orbit: LorenzOrbitArgs,
    /// Plane normal as three comma-separated components
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    pub normal: String,
    /// Plane offset: the plane is normal . s = offset (unit normal)
    #[arg(long, default_value_t = 27.0, allow_negative_numbers = true)]
    pub offset: f64,
    /// Crossing direction: positive, negative or both
    #[arg(long, default_value = "positive")]
    pub direction: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct HenonParamArgs {
    /// Bending parameter a
    #[arg(long, default_value_t = 1.4, allow_negative_numbers = true)]
    pub a: f64,
    /// Contraction parameter b
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct HenonCmd {
    #[command(subcommand)]
    pub action: Option<HenonAction>,
    #[command(flatten)]
    pub params: HenonParamArgs,
    /// Initial x
    #[arg(long, default_value_t = 0.63135448, allow_negative_numbers = true)]
    pub x0: f64,
    /// Initial y
    #[arg(long, default_value_t = 0.18940634, allow_negative_numbers = true)]
    pub y0: f64,
    /// Iterates discarded before recording
    #[arg(long, default_value_t = 0)]
    pub transient: usize,
    /// Iterates recorded
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum HenonAction {
    /// Fixed points with eigenvalues, manifold slopes and stability
    FixedPoints {
        #[command(flatten)]
        params: HenonParamArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Regime classification over a uniform grid of a (a,label,a0,a1)
    Regimes {
        /// Contraction parameter b
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        b: f64,
        /// Smallest a
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        a_min: f64,
        /// Largest a
        #[arg(long, default_value_t = 1.6, allow_negative_numbers = true)]
        a_max: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 151)]
        n: usize,
        /// Initial x
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        /// Initial y
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y0: f64,
        /// Iterates discarded before probing
        #[arg(long, default_value_t = 1000)]
        transient: usize,
        /// Iterates inspected for classification
        #[arg(long, default_value_t = 10_000)]
        probe: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct LogisticCmd {
    #[command(subcommand)]
    pub action: LogisticAction,
}

#[derive(Debug, Subcommand)]
pub enum LogisticAction {
    /// Bifurcation diagram in long format (a,x)
    Diagram {
        /// Smallest a
        #[arg(long, default_value_t = 2.8, allow_negative_numbers = true)]
        a_min: f64,
        /// Largest a
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        a_max: f64,
        /// Number of parameter values
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Iterates discarded per a
        #[arg(long, default_value_t = 1000)]
        transient: usize,
        /// Iterates recorded per a
        #[arg(long, default_value_t = 200)]
        keep: usize,
        /// Initial x in (0,1)
        #[arg(long, default_value_t = discrete_dynamics::logistic::DEFAULT_X0, allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Period-doubling onsets (k,period,a_onset)
    Cascade {
        /// Lower end of the scanned a range
        #[arg(long, default_value_t = 2.5, allow_negative_numbers = true)]
        a_min: f64,
        /// Upper end of the scanned a range
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        a_max: f64,
        /// Number of doublings to locate
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Cycles of a prime period (cycle,period,x,multiplier,stability)
    Orbits {
        /// Map parameter a
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// Prime period, 1 to 12
        #[arg(long)]
        period: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct CantorCmd {
    #[command(subcommand)]
    pub action: Option<CantorAction>,
    /// Map parameter a, greater than 4
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Deepest level written; levels 0..=depth are emitted
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum CantorAction {
    /// Expansion condition |f'| > 1 outside A0 (a,holds,min_derivative)
    Check {
        /// Map parameter a, greater than 4
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[command(flatten)]
        out: Output,
    },
}
