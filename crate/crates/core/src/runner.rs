//! Suite orchestration: build a context from a [`RunConfig`], run the
//! requested suites and emit the resulting [`Report`].

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use crate::cartan::{check_const_identities, CartanData, RootUnityCtx, StructureConstants};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;
use crate::qcomb::{check_antisym, check_c_integrality, check_qb_mult, AntisymMode};
use crate::qyb::{check_h_trivial, check_shift_equivariance, check_unitarity, check_xi_tilde_identity, check_ybe, SOperator, YbeSample};
use crate::report::{Check, ContextEcho, Report};
use crate::symcomb::{check_sym_gps, Composition};
use crate::tau::{check_group_law, check_kernel_equivalence, check_membership, check_shift_covariance, check_zeta10, TauTuple};
use crate::{dist, quiver, series};

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Qcomb,
    Tau,
    Qyb,
    Dft,
    Quiver,
    Symcomb,
    Dist,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Qcomb,
        Suite::Tau,
        Suite::Qyb,
        Suite::Dft,
        Suite::Quiver,
        Suite::Symcomb,
        Suite::Dist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qcomb => "qcomb",
            Suite::Tau => "tau",
            Suite::Qyb => "qyb",
            Suite::Dft => "dft",
            Suite::Quiver => "quiver",
            Suite::Symcomb => "symcomb",
            Suite::Dist => "dist",
        }
    }

    /// Parses a comma list such as `tau,qyb`, or `all`; empty entries are
    /// ignored and duplicates collapse.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Everything a run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cartan: CartanData,
    pub p: u32,
    pub level: i64,
    pub trunc: i64,
    pub window: i64,
    pub suites: Vec<Suite>,
    pub max_k: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Record wall-clock milliseconds per check (breaks byte-identity).
    pub timings: bool,
}

impl RunConfig {
    /// Defaults for every knob except the context.
    pub fn new(cartan: CartanData, p: u32, level: i64) -> Self {
        RunConfig {
            cartan,
            p,
            level,
            trunc: 12,
            window: dist::DEFAULT_WINDOW,
            suites: Suite::ALL.to_vec(),
            max_k: 4,
            seed: 0,
            out: None,
            format: Format::Text,
            jobs: None,
            timings: false,
        }
    }

    /// Builds the context, enforcing its constraints.
    pub fn context(&self) -> Result<RootUnityCtx> {
        if self.trunc < 1 {
            return Err(Error::InvalidArgument(format!("truncation must be positive, got {}", self.trunc)));
        }
        if self.window < 0 {
            return Err(Error::InvalidArgument(format!("window must be nonnegative, got {}", self.window)));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidArgument("--jobs must be positive".into()));
        }
        RootUnityCtx::new(self.cartan.clone(), self.p, self.level)
    }
}

/// Runs the configured suites.  Configuration problems are errors; a
/// panic inside a suite becomes a failing `internal-error` check for that
/// suite rather than aborting the run.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    let ctx = cfg.context()?;
    let echo = ContextEcho {
        cartan_type: cfg.cartan.label.to_string(),
        rank: cfg.cartan.rank,
        p: cfg.p,
        level: ctx.level,
        trunc: cfg.trunc as usize,
        seed: cfg.seed,
    };
    let run = || {
        let mut checks = Vec::new();
        for &suite in &cfg.suites {
            let caught = catch_unwind(AssertUnwindSafe(|| run_one(suite, cfg, &ctx)));
            match caught {
                Ok(cs) => checks.extend(cs),
                Err(payload) => {
                    let msg = payload
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "unknown panic".into());
                    checks.push(Check::fail(suite.name(), "internal-error", ctx.name(), msg));
                }
            }
        }
        checks
    };
    let checks = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(Report::new(echo, checks))
}

/// Collects checks under one suite heading (a check produced by a helper
/// from another module keeps its origin as a name prefix), stamping each
/// with the time of the call that produced it when timings are on.
struct Collector {
    suite: &'static str,
    timings: bool,
    checks: Vec<Check>,
}

impl Collector {
    fn add(&mut self, f: impl FnOnce() -> Vec<Check>) {
        let start = Instant::now();
        let mut cs = f();
        if self.timings {
            let ms = start.elapsed().as_millis() as u64;
            for c in &mut cs {
                c.ms = ms;
            }
        }
        for c in &mut cs {
            if c.suite != self.suite {
                c.name = format!("{}/{}", c.suite, c.name);
                c.suite = self.suite.to_string();
            }
        }
        self.checks.extend(cs);
    }

    fn one(&mut self, f: impl FnOnce() -> Check) {
        self.add(|| vec![f()]);
    }
}

fn run_one(suite: Suite, cfg: &RunConfig, ctx: &RootUnityCtx) -> Vec<Check> {
    let mut c = Collector {
        suite: suite.name(),
        timings: cfg.timings,
        checks: Vec::new(),
    };
    let n = cfg.trunc;
    let p = cfg.p;
    match suite {
        Suite::Qcomb => {
            for m in 1..=6 {
                c.one(|| check_qb_mult(m));
            }
            c.one(|| check_c_integrality(30));
            for k in 1..=cfg.max_k.min(5) as u32 {
                c.one(|| check_antisym(k, AntisymMode::ProductFormula, cfg.seed));
            }
            for m in 1..=6 {
                c.one(|| check_antisym(m, AntisymMode::QbinomTheorem, cfg.seed));
            }
        }
        Suite::Tau => {
            c.add(|| series::check_theta(p, n));
            let g = LaurentPoly::from_int_terms([(1, 1), (-2, 2), (3, -1)]);
            c.add(|| series::check_e_identities(p, &g, n));
            c.add(|| check_const_identities(ctx, &StructureConstants::build(ctx)));
            let t = TauTuple::canonical(ctx, n);
            c.add(|| check_membership(&t));
            c.one(|| check_shift_covariance(&t, 1));
            c.add(|| check_group_law(ctx, n, [cfg.seed.wrapping_add(1), cfg.seed.wrapping_add(2)]));
            c.add(|| check_kernel_equivalence(&t));
            c.one(|| check_zeta10(&t));
        }
        Suite::Qyb => {
            let t = TauTuple::canonical(ctx, n);
            let op = SOperator::new(&t);
            c.one(|| check_unitarity(&op));
            c.one(|| check_shift_equivariance(&op));
            // Exhaustive (up to shift) for rank one, a fixed-seed sample
            // otherwise.
            let sample = if ctx.rank() == 1 {
                YbeSample::AllUpToShift
            } else {
                YbeSample::Seeded {
                    count: 200,
                    seed: cfg.seed,
                }
            };
            c.one(|| check_ybe(&op, n.min(6), sample));
            c.add(|| check_h_trivial(ctx, n.min(6)));
            c.one(|| check_xi_tilde_identity(ctx));
        }
        Suite::Dft => {
            c.one(|| quiver::heisenberg_gram(ctx).1);
            c.add(|| quiver::check_dft(ctx));
        }
        Suite::Quiver => {
            c.one(|| quiver::build_quiver(ctx).check_equivariance(&ctx.name()));
            c.one(|| quiver::build_loops(ctx).1);
            c.add(|| quiver::check_arrow_counts(ctx));
        }
        Suite::Symcomb => {
            for k in 1..=cfg.max_k.min(5) {
                c.one(|| check_sym_gps(k, None));
            }
            if cfg.max_k >= 6 {
                c.one(|| check_sym_gps(6, Some(3)));
            }
        }
        Suite::Dist => {
            for k in 0..=cfg.max_k as u32 {
                for a in 0..p as i64 {
                    c.add(|| dist::check_delta_decomposition(p, k, a, cfg.window));
                }
            }
            for roots in multiplicity_patterns(cfg.max_k as u32) {
                c.one(|| dist::check_partial_fraction_delta(p, &roots, cfg.window));
            }
            for k in 1..=cfg.max_k {
                for comp in Composition::all(k) {
                    c.one(|| dist::check_normal_order(k, &comp, cfg.window));
                }
            }
        }
    }
    c.checks
}

/// Root patterns `(s, n)` of total multiplicity at most `max`: every
/// composition of each total, with roots at `s = 0, 1, 2, ...`.
fn multiplicity_patterns(max: u32) -> Vec<Vec<(i64, u32)>> {
    let mut out = Vec::new();
    for total in 1..=max as usize {
        for comp in Composition::all(total) {
            out.push(comp.parts().iter().enumerate().map(|(s, &n)| (s as i64, n as u32)).collect());
        }
    }
    out
}

/// Writes `r` to `path` (standard output when `None`).
pub fn emit_report(r: &Report, format: Format, path: Option<&std::path::Path>) -> std::io::Result<()> {
    let body = match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    };
    match path {
        Some(p) => std::fs::write(p, body),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(Suite::parse_list("qyb, tau,tau").unwrap(), vec![Suite::Tau, Suite::Qyb]);
        assert!(Suite::parse_list("").unwrap().is_empty());
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn rejects_small_p() {
        let cfg = RunConfig::new(CartanData::parse("A1").unwrap(), 2, 1);
        assert!(matches!(run_suite(&cfg), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn quick_suites_pass() {
        let mut cfg = RunConfig::new(CartanData::parse("A2").unwrap(), 8, 1);
        cfg.suites = vec![Suite::Dft, Suite::Quiver, Suite::Symcomb];
        cfg.max_k = 3;
        let r = run_suite(&cfg).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(r.checks.iter().all(|c| c.ms == 0));
    }
}
