use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nlcs",
    version,
    about = "Susskind-Glogower nonlinear coherent states: amplitudes, Husimi grids, photon statistics and waveguide fields",
    after_help = "Exit status: 0 on success, 2 for invalid arguments, 3 when a numerical \
                  check fails (truncation, quadrature, oracle disagreement, failed verification).\n\
                  Set NLCS_THREADS to bound the worker threads used for grids."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fock amplitudes c_n of a state (columns n,re,im)
    State(StateCmd),
    /// Husimi Q function on a rectangular grid (columns re,im,q)
    Qfunc(QfuncCmd),
    /// Photon-number distribution P(n) (columns n,p)
    Pdist(StateCmd),
    /// Mandel Q-parameter scan of the evolved state (columns tau,q)
    Mandel(MandelCmd),
    /// Modal amplitudes across the waveguide array (columns n,re,im,intensity)
    Waveguide(WaveguideCmd),
    /// Run the built-in invariant suite (columns check,passed,detail)
    Verify(VerifyCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecipeArg {
    /// c_n = c_0 J_n(2x)
    #[value(name = "approx-displaced", alias = "approx")]
    ApproxDisplaced,
    /// c_n = (n+1) J_{n+1}(2x) / x
    #[value(name = "exact-displaced", alias = "exact")]
    ExactDisplaced,
    /// closed-form evolution of |m⟩
    Evolved,
    /// direct propagation of |m⟩ (matrix exponential cross-checked by RK4)
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the --out extension when omitted, else csv
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Named parameter set such as fig2-b or fig5-a-ii; explicit flags override it
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub recipe: Option<RecipeArg>,
    /// Initial number state |m⟩ for evolved and oracle recipes
    #[arg(long)]
    pub m: Option<usize>,
    /// Dimensionless parameter τ = ηt (the displacement x for displaced recipes)
    #[arg(long, visible_alias = "x", allow_negative_numbers = true)]
    pub tau: Option<f64>,
    /// Coupling η; with --t sets τ = ηt
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Interaction time t; with --eta sets τ = ηt
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Highest Fock index kept; chosen from a certified tail bound when omitted
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct StateCmd {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct QfuncCmd {
    #[command(flatten)]
    pub state: StateArgs,
    /// Real-axis window `a:b` (also the imaginary window unless --window-im is given)
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Imaginary-axis window `a:b`
    #[arg(long, allow_hyphen_values = true)]
    pub window_im: Option<String>,
    /// Points per axis, endpoints included
    #[arg(long)]
    pub res: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MandelCmd {
    /// Named scan such as fig4 or fig7-c; explicit flags override it
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Start of the scan; defaults to 0, or to one step for m = 0
    #[arg(long, allow_negative_numbers = true)]
    pub tau_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau_max: Option<f64>,
    /// Number of samples, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WaveguideCmd {
    /// Excited site
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Normalized propagation distance Z = cz
    #[arg(long, allow_negative_numbers = true)]
    pub z: f64,
    /// Input amplitude A_0
    #[arg(long, default_value_t = 1.0)]
    pub a0: f64,
    /// Highest site index kept; sized from the tail bound when omitted
    #[arg(long, visible_alias = "truncation")]
    pub sites: Option<usize>,
    /// Integrate the coupled-mode equations instead of using the closed form
    #[arg(long)]
    pub ode: bool,
    /// Error tolerance of the ODE integrator
    #[arg(long, default_value_t = nlcs::waveguide::DEFAULT_ODE_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyCmd {
    /// Run only the named check (repeatable)
    #[arg(long = "check")]
    pub checks: Vec<String>,
    /// List the available checks and exit
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
