use nlcs::analysis::{husimi_grid, mandel_scan, photon_distribution, GridSpec};
use nlcs::states::truncation::evolved_tail_bound;
use nlcs::states::{
    evolve_exact_oracle, sg_displaced_approx, sg_evolved, sg_vacuum_displaced, truncation_for,
    FockState, AUTO_EPS,
};
use nlcs::verify;
use nlcs::waveguide::{closed_field, propagate_ode};

use crate::args::{MandelCmd, QfuncCmd, RecipeArg, StateArgs, StateCmd, VerifyCmd, WaveguideCmd};
use crate::output::{Cell, Table};
use crate::presets::{self, Kind};

/// Why a command did not produce its output.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad or inconsistent arguments (exit 2).
    Usage(String),
    /// A numerical guard tripped or a check failed (exit 3).
    Numeric(String),
}

impl From<nlcs::Error> for Failure {
    fn from(e: nlcs::Error) -> Self {
        match e {
            nlcs::Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

fn preset_for(name: Option<&str>, allowed: &[Kind]) -> Outcome<Option<presets::Preset>> {
    let Some(name) = name else { return Ok(None) };
    let Some(p) = presets::lookup(name) else {
        return usage(format!(
            "unknown preset '{name}'; available: {}",
            presets::names().join(", ")
        ));
    };
    if !allowed.contains(&p.kind) {
        return usage(format!(
            "preset '{name}' belongs to the '{}' command",
            p.kind.command()
        ));
    }
    Ok(Some(p))
}

fn recipe_name(r: RecipeArg) -> &'static str {
    match r {
        RecipeArg::ApproxDisplaced => "approx-displaced",
        RecipeArg::ExactDisplaced => "exact-displaced",
        RecipeArg::Evolved => "evolved",
        RecipeArg::Oracle => "oracle",
    }
}

/// Builds the requested state and records its parameters in `table`.
fn build_state(args: &StateArgs, allowed: &[Kind], table: &mut Table) -> Outcome<FockState> {
    let preset = preset_for(args.preset.as_deref(), allowed)?;
    let recipe = args
        .recipe
        .or(preset.map(|p| p.recipe))
        .unwrap_or(RecipeArg::Evolved);
    let (tau, eta, t) = match (args.tau, args.t) {
        (Some(_), Some(_)) => return usage("give either --tau/--x or --t, not both"),
        (None, Some(t)) => {
            let eta = args.eta.unwrap_or(1.0);
            (eta * t, eta, t)
        }
        (Some(tau), None) => {
            if args.eta.is_some() {
                return usage("--eta only applies together with --t");
            }
            (tau, 1.0, tau)
        }
        (None, None) => match preset {
            Some(p) => (p.tau, 1.0, p.tau),
            None => return usage("missing --tau (or --x, or --eta with --t)"),
        },
    };
    let displaced = matches!(
        recipe,
        RecipeArg::ApproxDisplaced | RecipeArg::ExactDisplaced
    );
    let m = args.m.or(preset.map(|p| p.m)).unwrap_or(0);
    if displaced && m != 0 {
        return usage("--m applies only to the evolved and oracle recipes");
    }

    let state = match recipe {
        RecipeArg::ApproxDisplaced => sg_displaced_approx(tau, args.truncation)?,
        RecipeArg::ExactDisplaced => sg_vacuum_displaced(tau, args.truncation)?,
        RecipeArg::Evolved => sg_evolved(m, tau, args.truncation)?,
        RecipeArg::Oracle => {
            let n = args
                .truncation
                .unwrap_or_else(|| truncation_for(tau.abs() + m as f64, AUTO_EPS) + 32);
            evolve_exact_oracle(m, t, eta, n)?
        }
    };

    if let Some(name) = &args.preset {
        table.meta("preset", name.as_str());
    }
    table.meta("recipe", recipe_name(recipe));
    if !displaced {
        table.meta("m", m);
    }
    table.meta_float(if displaced { "x" } else { "tau" }, tau);
    if args.t.is_some() {
        table.meta_float("eta", eta).meta_float("t", t);
    }
    table
        .meta("truncation", state.truncation())
        .meta_float("tail_bound", state.tail_bound());
    Ok(state)
}

pub fn state(cmd: &StateCmd) -> Outcome<Table> {
    let mut table = Table::new("state", vec!["n", "re", "im"]);
    let s = build_state(&cmd.state, &[Kind::Qfunc, Kind::Pdist], &mut table)?;
    table.meta_float("norm_sqr", s.norm_sqr());
    table.rows = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| vec![Cell::Int(n as i64), Cell::Float(c.re), Cell::Float(c.im)])
        .collect();
    Ok(table)
}

pub fn pdist(cmd: &StateCmd) -> Outcome<Table> {
    let mut table = Table::new("pdist", vec!["n", "p"]);
    let s = build_state(&cmd.state, &[Kind::Pdist], &mut table)?;
    let dist = photon_distribution(&s);
    table
        .meta_float("total", dist.total())
        .meta_float("mean", dist.mean())
        .meta_float("mandel_q", dist.mandel_q().unwrap_or(f64::NAN));
    table.rows = dist
        .probs
        .iter()
        .enumerate()
        .map(|(n, p)| vec![Cell::Int(n as i64), Cell::Float(*p)])
        .collect();
    Ok(table)
}

fn parse_window(text: &str, flag: &str) -> Outcome<(f64, f64)> {
    let bad = || Failure::Usage(format!("{flag} expects a:b with a < b, got '{text}'"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn qfunc(cmd: &QfuncCmd) -> Outcome<Table> {
    let mut table = Table::new("qfunc", vec!["re", "im", "q"]);
    let defaults = GridSpec::default();
    let re_range = match &cmd.window {
        Some(w) => parse_window(w, "--window")?,
        None => defaults.re_range,
    };
    let im_range = match (&cmd.window_im, &cmd.window) {
        (Some(w), _) => parse_window(w, "--window-im")?,
        (None, Some(_)) => re_range,
        (None, None) => defaults.im_range,
    };
    let spec = GridSpec {
        re_range,
        im_range,
        resolution: cmd.res.unwrap_or(defaults.resolution),
    };
    if spec.resolution < 2 {
        return usage("--res must be at least 2");
    }
    let s = build_state(&cmd.state, &[Kind::Qfunc], &mut table)?;
    let grid = husimi_grid(&s, &spec)?;
    table
        .meta("resolution", spec.resolution)
        .meta_float("re_min", re_range.0)
        .meta_float("re_max", re_range.1)
        .meta_float("im_min", im_range.0)
        .meta_float("im_max", im_range.1)
        .meta_float("mass", grid.mass())
        .meta_float("q_max", grid.max());
    table.rows = grid
        .points()
        .map(|(re, im, q)| vec![Cell::Float(re), Cell::Float(im), Cell::Float(q)])
        .collect();
    Ok(table)
}

pub fn mandel(cmd: &MandelCmd) -> Outcome<Table> {
    let mut table = Table::new("mandel", vec!["tau", "q"]);
    let preset = preset_for(cmd.preset.as_deref(), &[Kind::Mandel])?;
    let m = cmd.m.or(preset.map(|p| p.m)).unwrap_or(0);
    let tau_max = cmd
        .tau_max
        .or(preset.map(|p| p.tau))
        .unwrap_or(presets::SCAN_TAU_MAX);
    let steps = cmd.steps.unwrap_or(400);
    if steps < 2 {
        return usage("--steps must be at least 2");
    }
    let tau_min = cmd
        .tau_min
        .unwrap_or(if m == 0 { tau_max / steps as f64 } else { 0.0 });
    let scan = mandel_scan(tau_min, tau_max, steps, m)?;

    let widest = truncation_for(tau_max.abs().max(tau_min.abs()) + m as f64, AUTO_EPS);
    if let Some(name) = &cmd.preset {
        table.meta("preset", name.as_str());
    }
    table
        .meta("recipe", "evolved")
        .meta("m", m)
        .meta_float("tau_min", tau_min)
        .meta_float("tau_max", tau_max)
        .meta("steps", steps)
        .meta("truncation", widest)
        .meta_float("tail_bound", evolved_tail_bound(m, tau_max, widest))
        .meta_float("tau_star", scan.minimum.0)
        .meta_float("q_star", scan.minimum.1)
        .meta_float("zero_crossing", scan.zero_crossing.unwrap_or(f64::NAN));
    table.rows = scan
        .samples
        .iter()
        .map(|(t, q)| vec![Cell::Float(*t), Cell::Float(*q)])
        .collect();
    Ok(table)
}

pub fn waveguide(cmd: &WaveguideCmd) -> Outcome<Table> {
    let mut table = Table::new("waveguide", vec!["n", "re", "im", "intensity"]);
    if !(cmd.tol > 0.0) {
        return usage("--tol must be positive");
    }
    if !cmd.a0.is_finite() {
        return usage("--a0 must be finite");
    }
    let mut field = if cmd.ode {
        let sites = cmd
            .sites
            .unwrap_or_else(|| truncation_for(cmd.z.abs() + cmd.m as f64, AUTO_EPS) + 16);
        let mut f = propagate_ode(cmd.m, cmd.z, sites, cmd.tol)?;
        f.amplitudes.iter_mut().for_each(|a| *a *= cmd.a0);
        f.input_amplitude = cmd.a0;
        f
    } else {
        closed_field(cmd.m, cmd.z, cmd.sites, cmd.a0)?
    };
    let sites = field.amplitudes.len() - 1;
    table
        .meta("method", if cmd.ode { "ode" } else { "closed-form" })
        .meta("m", cmd.m)
        .meta_float("z", cmd.z)
        .meta_float("a0", cmd.a0)
        .meta("truncation", sites)
        .meta_float(
            "tail_bound",
            cmd.a0 * cmd.a0 * evolved_tail_bound(cmd.m, cmd.z, sites),
        )
        .meta_float("power", field.power());
    if cmd.ode {
        table.meta_float("tol", cmd.tol);
    }
    table.rows = std::mem::take(&mut field.amplitudes)
        .into_iter()
        .enumerate()
        .map(|(n, a)| {
            vec![
                Cell::Int(n as i64),
                Cell::Float(a.re),
                Cell::Float(a.im),
                Cell::Float(a.norm_sqr()),
            ]
        })
        .collect();
    Ok(table)
}

/// Returns the table and whether every check passed.
pub fn verify(cmd: &VerifyCmd) -> Outcome<(Table, bool)> {
    let mut table = Table::new("verify", vec!["check", "passed", "detail"]);
    let outcomes = if cmd.checks.is_empty() {
        verify::run_all()
    } else {
        cmd.checks
            .iter()
            .map(|name| {
                verify::run_one(name).ok_or_else(|| {
                    Failure::Usage(format!(
                        "unknown check '{name}'; available: {}",
                        verify::check_names().join(", ")
                    ))
                })
            })
            .collect::<Outcome<Vec<_>>>()?
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    table
        .meta("checks", outcomes.len())
        .meta("passed", passed);
    table.rows = outcomes
        .into_iter()
        .map(|o| {
            vec![
                Cell::Text(o.name.into()),
                Cell::Bool(o.passed),
                Cell::Text(o.detail),
            ]
        })
        .collect();
    let all = passed == table.rows.len();
    Ok((table, all))
}
