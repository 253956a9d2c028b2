use std::f64::consts::PI;
use std::fmt::Display;
use std::time::{SystemTime, UNIX_EPOCH};

use mie_scatter::bound::{bound_level, bound_wavefunction, BoundLevel};
use mie_scatter::model::{PotentialParams, RootChoice};
use mie_scatter::oracle::OracleReport;
use mie_scatter::scattering::{phase_shift, scattering_wavefunction, AmplitudeMode, PartialWaveSum};
use mie_scatter::verify::{cases, Suite, VerifyOptions};
use rayon::prelude::*;

use crate::args::{
    BoundArgs, CrossSectionArgs, Kind, Mode, OutputArgs, PhaseShiftArgs, PotentialArgs, Preset,
    RootArg, SuiteArg, VerifyArgs, WavefunctionArgs,
};
use crate::table::{Cell, Table};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Display) -> Failure {
        Failure { code: EXIT_CONFIG, message: message.to_string() }
    }

    fn domain(message: impl Display) -> Failure {
        Failure { code: EXIT_DOMAIN, message: message.to_string() }
    }
}

/// Evaluates `f` at every point in parallel. Rows keep the grid order and
/// the reported error is the first one in grid order.
fn evaluate<P, R, E>(
    points: &[P],
    label: impl Fn(&P) -> String,
    f: impl Fn(&P) -> Result<R, E> + Sync,
) -> Result<Vec<R>, Failure>
where
    P: Sync,
    R: Send,
    E: Display + Send,
{
    let results: Vec<Result<R, E>> = points.par_iter().map(&f).collect();
    let mut out = Vec::with_capacity(results.len());
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(v) => out.push(v),
            Err(e) => return Err(Failure::domain(format!("at {}: {e}", label(p)))),
        }
    }
    Ok(out)
}

fn need(value: Option<f64>, flag: &str, preset: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::config(format!("preset {preset} needs --{flag}")))
}

pub fn potential(args: &PotentialArgs) -> Result<(PotentialParams, String), Failure> {
    let Some(preset) = args.preset else {
        if args.de.is_some() || args.re.is_some() || args.z.is_some() {
            return Err(Failure::config("--De, --re and --Z need --preset"));
        }
        let p = PotentialParams::new(args.a1.unwrap_or(0.0), args.a2.unwrap_or(0.0), args.a3.unwrap_or(0.0))
            .map_err(Failure::config)?;
        return Ok((p, "custom".to_string()));
    };
    if args.a1.is_some() || args.a2.is_some() || args.a3.is_some() {
        return Err(Failure::config("--preset cannot be combined with --a1/--a2/--a3"));
    }
    let (p, name) = match preset {
        Preset::Kratzer => (
            PotentialParams::kratzer_fues(need(args.de, "De", "kratzer")?, need(args.re, "re", "kratzer")?),
            "kratzer",
        ),
        Preset::ModifiedKratzer => (
            PotentialParams::modified_kratzer(
                need(args.de, "De", "modified-kratzer")?,
                need(args.re, "re", "modified-kratzer")?,
            ),
            "modified-kratzer",
        ),
        Preset::Coulomb => (PotentialParams::coulomb(need(args.z, "Z", "coulomb")?), "coulomb"),
    };
    Ok((p.map_err(Failure::config)?, name.to_string()))
}

fn header(command: &str, p: Option<(&PotentialParams, &str)>, timestamp: bool) -> Vec<(String, Cell)> {
    let mut meta = vec![("command".to_string(), Cell::from(command))];
    if let Some((p, name)) = p {
        meta.push(("potential".into(), name.into()));
        meta.push(("a1".into(), p.a1.into()));
        meta.push(("a2".into(), p.a2.into()));
        meta.push(("a3".into(), p.a3.into()));
    }
    if timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        meta.push(("timestamp".into(), Cell::Int(secs as i64)));
    }
    meta
}

fn table(command: &str, columns: &[&'static str], p: &PotentialParams, name: &str, out: &OutputArgs) -> Table {
    let mut t = Table::new(columns);
    t.meta = header(command, Some((p, name)), out.timestamp);
    t
}

pub fn phase_shifts(args: &PhaseShiftArgs) -> Result<Table, Failure> {
    let (p, name) = potential(&args.potential)?;
    let mut t = table("phase-shift", &["l", "E", "epsilon", "A", "delta_prime", "delta"], &p, &name, &args.output);
    t.meta("units", "radians");
    let points: Vec<(u32, f64)> = args
        .l
        .0
        .iter()
        .flat_map(|&l| args.energy.0.iter().map(move |&e| (l, e)))
        .collect();
    let sols = evaluate(&points, |(l, e)| format!("l = {l}, E = {e}"), |&(l, e)| phase_shift(&p, l, e))?;
    t.rows = sols
        .iter()
        .map(|s| {
            vec![
                s.channel.l.into(),
                s.energy.into(),
                s.epsilon.into(),
                s.channel.a_root.into(),
                s.delta_prime.into(),
                s.delta.into(),
            ]
        })
        .collect();
    Ok(t)
}

pub fn cross_section(args: &CrossSectionArgs) -> Result<Table, Failure> {
    let (p, name) = potential(&args.potential)?;
    let mut t = table("cross-section", &["theta", "ReF", "ImF", "dcs"], &p, &name, &args.output);
    let (mode, mode_name) = match args.mode {
        Mode::Standard => (AmplitudeMode::Standard, "standard"),
        Mode::PaperLiteral => (AmplitudeMode::PaperLiteral, "paper-literal"),
    };
    let to_rad = if args.degrees { PI / 180.0 } else { 1.0 };
    t.meta("E", args.energy)
        .meta("lmax", args.lmax)
        .meta("mode", mode_name)
        .meta("angle_units", if args.degrees { "degrees" } else { "radians" })
        .meta(
            "truncation",
            "partial-wave sum cut at lmax; with a2 != 0 the Coulomb series does not converge and the result depends on lmax",
        );
    let sum = PartialWaveSum::new(&p, args.energy, args.lmax, mode)
        .map_err(|e| Failure::domain(format!("at E = {}: {e}", args.energy)))?;
    t.meta("k", sum.k);
    let samples = evaluate(&args.theta.0, |t| format!("theta = {t}"), |&theta| sum.at(theta * to_rad))?;
    t.rows = args
        .theta
        .0
        .iter()
        .zip(samples)
        .map(|(&theta, s)| vec![theta.into(), s.amplitude.re.into(), s.amplitude.im.into(), s.dcs.into()])
        .collect();
    Ok(t)
}

pub fn bound(args: &BoundArgs) -> Result<Table, Failure> {
    let (p, name) = potential(&args.potential)?;
    let mut t = table("bound", &["n", "l", "E", "Nprime_scale"], &p, &name, &args.output);
    t.meta("measure", "dr")
        .meta("order", "energy, then (l, n)");
    let ns = match (&args.n, args.nmax) {
        (Some(g), _) => g.0.clone(),
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => vec![0],
    };
    let ls = match (&args.l, args.lmax) {
        (Some(g), _) => g.0.clone(),
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => vec![0],
    };
    let points: Vec<(u32, u32)> = ls.iter().flat_map(|&l| ns.iter().map(move |&n| (n, l))).collect();
    let mut levels: Vec<BoundLevel> = evaluate(&points, |(n, l)| format!("n = {n}, l = {l}"), |&(n, l)| bound_level(&p, n, l))?;
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then((a.l, a.n).cmp(&(b.l, b.n))));
    t.rows = levels
        .iter()
        .map(|b| vec![b.n.into(), b.l.into(), b.energy.into(), b.nprime.into()])
        .collect();
    Ok(t)
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Table, Failure> {
    let (p, name) = potential(&args.potential)?;
    let l = args.l;
    match args.kind {
        Kind::Scattering => {
            let e = args.energy.ok_or_else(|| Failure::config("--kind scattering needs --energy"))?;
            if args.n.is_some() {
                return Err(Failure::config("--n applies to bound states only"));
            }
            let mut t = table("wavefunction", &["r", "ReR", "ImR"], &p, &name, &args.output);
            t.meta("kind", "scattering")
                .meta("l", l)
                .meta("E", e)
                .meta("normalization", "asymptotic amplitude 2");
            let values = evaluate(&args.r.0, |r| format!("r = {r}"), |&r| scattering_wavefunction(&p, l, e, r))?;
            t.rows = args
                .r
                .0
                .iter()
                .zip(values)
                .map(|(&r, v)| vec![r.into(), v.re.into(), v.im.into()])
                .collect();
            Ok(t)
        }
        Kind::Bound => {
            let n = args.n.ok_or_else(|| Failure::config("--kind bound needs --n"))?;
            if args.energy.is_some() {
                return Err(Failure::config("--energy applies to scattering states only"));
            }
            let level = bound_level(&p, n, l).map_err(|e| Failure::domain(format!("at n = {n}, l = {l}: {e}")))?;
            let mut t = table("wavefunction", &["r", "R"], &p, &name, &args.output);
            t.meta("kind", "bound")
                .meta("n", n)
                .meta("l", l)
                .meta("E", level.energy)
                .meta("measure", "dr");
            let values = evaluate(&args.r.0, |r| format!("r = {r}"), |&r| bound_wavefunction(&p, n, l, r))?;
            t.rows = args.r.0.iter().zip(values).map(|(&r, v)| vec![r.into(), v.into()]).collect();
            Ok(t)
        }
    }
}

/// The report table and the number of failed reports.
pub fn verify(args: &VerifyArgs) -> (Table, usize) {
    let only = args.only.map(|s| match s {
        SuiteArg::Specfun => Suite::Specfun,
        SuiteArg::Model => Suite::Model,
        SuiteArg::Scattering => Suite::Scattering,
        SuiteArg::Bound => Suite::Bound,
        SuiteArg::Oracle => Suite::Oracle,
    });
    let root = match args.root {
        RootArg::Regular => RootChoice::Regular,
        RootArg::Irregular => RootChoice::Irregular,
    };
    let all = cases(&VerifyOptions { only, root });
    let reports: Vec<OracleReport> = all.par_iter().map(|c| c.run()).collect::<Vec<_>>().concat();

    let mut t = Table::new(&[
        "suite",
        "quantity_name",
        "analytic",
        "numeric",
        "abs_diff",
        "rel_diff",
        "tolerance",
        "tolerance_kind",
        "grid_r_min",
        "grid_r_max",
        "grid_points",
        "pass",
    ]);
    t.meta = header("verify", None, args.timestamp);
    let failed = reports.iter().filter(|r| !r.pass).count();
    t.meta("suites", only.map_or("all".to_string(), |s| s.to_string()))
        .meta("reports", reports.len() as u32)
        .meta("failed", failed as u32);
    t.rows = reports
        .iter()
        .map(|r| {
            let (gmin, gmax, gn) = match r.grid {
                Some(g) => (g.r_min.into(), g.r_max.into(), Cell::Int(g.n_points as i64)),
                None => (Cell::Null, Cell::Null, Cell::Null),
            };
            vec![
                r.suite.as_str().into(),
                r.quantity_name.as_str().into(),
                r.analytic.into(),
                r.numeric.into(),
                r.abs_diff.into(),
                r.rel_diff.into(),
                r.tolerance.into(),
                format!("{:?}", r.tolerance_kind).to_lowercase().into(),
                gmin,
                gmax,
                gn,
                r.pass.into(),
            ]
        })
        .collect();
    (t, failed)
}
