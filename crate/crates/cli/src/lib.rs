//! The `cubicfold` command line: argument parsing, input lowering and
//! report assembly. [`run_command`] does everything except the final
//! writes, so tests can drive it directly.

mod input;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubicfold::chain::lemma_records;
use cubicfold::cubicsurf::{eckardt_records, line_records, rationality_records, unit_point_record, DiagonalCubic};
use cubicfold::expr::{lower_const, lower_ratfunc, Expr};
use cubicfold::fields::{fp_with_omega, is_prime, CycloField, Field, PrimeField};
use cubicfold::geiser::geiser_check;
use cubicfold::poly::{PolyRing, RatFuncField};
use cubicfold::report::{CheckRecord, Mode, Report, RunConfig, Status};
use cubicfold::sampling::{rng_for, DEFAULT_PRIME_RANGE, DEFAULT_SAMPLES, DEFAULT_SEED, RESAMPLE_BUDGET};
use cubicfold::segre::{specialized_records, unirational_map, unirational_records};
use cubicfold::selftest;

pub use input::{paper_coeffs, read_coeffs, read_point, PAPER_COEFFS, PARAMS};

#[derive(Parser, Debug)]
#[command(name = "cubicfold", version, about = "Exact and modular checks for diagonal cubic surface fibrations")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall-clock time per check group (reports are then no longer reproducible byte for byte).
    #[arg(long, global = true)]
    timing: bool,
    /// Master seed for every randomized check.
    #[arg(long, global = true, env = "CUBICFOLD_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Modular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The coordinate-chain relations.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Lines, Eckardt points and rationality of a diagonal cubic surface.
    Cubic {
        #[command(subcommand)]
        what: CubicCmd,
    },
    /// Builds the unirational map from a rational point and checks it.
    Unirational(UnirationalArgs),
    /// The Geiser double cover of the plane.
    Geiser {
        #[command(subcommand)]
        what: GeiserCmd,
    },
    /// Field axioms, gcd, cube tests, tower inversion and parser round trips.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Lemmas(LemmaArgs),
}

#[derive(Args, Debug)]
struct LemmaArgs {
    /// Number of curves.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=5))]
    n: u8,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Specializations in modular mode.
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = positive)]
    samples: usize,
    /// Primes are drawn from LO..HI.
    #[arg(long, value_name = "LO..HI", value_parser = prime_range)]
    prime_range: Option<(u64, u64)>,
}

#[derive(Subcommand, Debug)]
enum CubicCmd {
    Lines(SurfaceArgs),
    Eckardt(SurfaceArgs),
    Rationality(SurfaceArgs),
}

#[derive(Args, Debug)]
#[group(id = "surface", required = true, multiple = false, args = ["coeffs", "paper_surface"])]
struct SurfaceSource {
    /// A file of `a1 = ...` to `a4 = ...` lines, or four comma-separated expressions in s3, s4.
    #[arg(long)]
    coeffs: Option<String>,
    /// The fibre surface over Q(omega)(s3, s4).
    #[arg(long)]
    paper_surface: bool,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[command(flatten)]
    source: SurfaceSource,
    /// A point of the surface, as four comma-separated expressions.
    #[arg(long)]
    point: Option<String>,
    /// Work over F_p; parameters are set to seeded random values.
    #[arg(long, value_parser = split_prime)]
    prime: Option<u64>,
}

#[derive(Args, Debug)]
struct UnirationalArgs {
    #[command(flatten)]
    source: SurfaceSource,
    /// The rational point to start from; defaults to (1, 1, 1, 1) with --paper-surface.
    #[arg(long)]
    point: Option<String>,
    /// Reduce to F_p (parameters at seeded random values) and add the sampled checks.
    #[arg(long, value_parser = split_prime)]
    specialize: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum GeiserCmd {
    Check {
        #[arg(long, default_value_t = 10007, value_parser = odd_prime)]
        prime: u64,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        trials: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn odd_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if p <= 3 || !is_prime(p) {
        return Err(format!("{p} is not a prime above 3"));
    }
    if p >= 1 << 62 {
        return Err("primes must be below 2^62".into());
    }
    Ok(p)
}

/// Primes over which cube roots of unity exist.
fn split_prime(s: &str) -> Result<u64, String> {
    let p = odd_prime(s)?;
    if p % 3 != 1 {
        return Err(format!("{p} is not congruent to 1 mod 3"));
    }
    Ok(p)
}

fn prime_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi || hi < 7 {
        return Err(format!("empty range {lo}..{hi}"));
    }
    if hi >= 1 << 62 {
        return Err("primes must be below 2^62".into());
    }
    Ok((lo, hi))
}

/// What a command produced: an exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code: 1, stdout: String::new(), stderr }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome::usage(text),
            };
        }
    };
    let mut config = RunConfig {
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        ..RunConfig::default()
    };
    let clock = Clock(cli.timing);
    let (command, records) = match dispatch(&cli.command, &mut config, clock) {
        Ok(r) => r,
        Err(msg) => return Outcome::usage(format!("error: {msg}")),
    };
    let report = Report::new(command, config, records);
    let stdout = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    Outcome {
        code: report.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

#[derive(Clone, Copy)]
struct Clock(bool);

impl Clock {
    /// Runs `f`, stamping its records with the elapsed time when enabled.
    fn run<E>(self, f: impl FnOnce() -> Result<Vec<CheckRecord>, E>) -> Result<Vec<CheckRecord>, E> {
        let start = Instant::now();
        let mut recs = f()?;
        if self.0 {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut recs {
                r.timing_ms = Some(ms);
            }
        }
        Ok(recs)
    }
}

fn dispatch(cmd: &Command, config: &mut RunConfig, clock: Clock) -> Result<(String, Vec<CheckRecord>), String> {
    let seed = config.seed;
    match cmd {
        Command::Verify { what: VerifyCmd::Lemmas(a) } => {
            config.n = a.n as usize;
            config.mode = match a.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Modular => Mode::Modular,
            };
            config.samples = a.samples;
            config.prime_range = a.prime_range.unwrap_or(DEFAULT_PRIME_RANGE);
            if config.mode == Mode::Modular {
                check_prime_supply(config.prime_range, config.samples)?;
            }
            let c = config.clone();
            Ok(("verify lemmas".into(), clock.run(|| Ok::<_, String>(lemma_records(&c)))?))
        }
        Command::Cubic { what } => {
            let (name, args) = match what {
                CubicCmd::Lines(a) => ("lines", a),
                CubicCmd::Eckardt(a) => ("eckardt", a),
                CubicCmd::Rationality(a) => ("rationality", a),
            };
            let input = SurfaceInput::read(&args.source, args.point.as_deref())?;
            let recs = match args.prime {
                Some(p) => {
                    let (s, pt, spec) = input.specialize(p, seed, |_, _| true)?;
                    let mut recs = spec.into_iter().collect::<Vec<_>>();
                    recs.extend(clock.run(|| surface_checks(name, &s, pt.as_ref(), input.paper))?);
                    recs
                }
                None if input.parametric => {
                    let k = RatFuncField::new(PolyRing::new(CycloField, &PARAMS));
                    let (s, pt) = input.lower(&k, |e, k| lower_ratfunc(e, k).map_err(|e| e.to_string()))?;
                    clock.run(|| surface_checks(name, &s, pt.as_ref(), input.paper))?
                }
                None => {
                    let (s, pt) = input.lower(&CycloField, |e, q| lower_const(e, q).map_err(|e| e.to_string()))?;
                    clock.run(|| surface_checks(name, &s, pt.as_ref(), input.paper))?
                }
            };
            Ok((format!("cubic {name}"), recs))
        }
        Command::Unirational(a) => {
            let mut input = SurfaceInput::read(&a.source, a.point.as_deref())?;
            if input.point.is_none() {
                if !input.paper {
                    return Err("--point is required unless --paper-surface is given".into());
                }
                input.point = Some(read_point("1,1,1,1")?);
            }
            let recs = match a.specialize {
                Some(p) => {
                    let (s, pt, spec) = input.specialize(p, seed, |s, pt| {
                        pt.is_some_and(|pt| unirational_map(s, pt).is_ok())
                    })?;
                    let pt = pt.expect("point is set");
                    let u = unirational_map(&s, &pt).map_err(|e| e.to_string())?;
                    let mut recs: Vec<CheckRecord> = spec.into_iter().collect();
                    recs.extend(clock.run(|| {
                        let mut r = unirational_records(&s, &u);
                        r.extend(specialized_records(&s, &u, &mut rng_for(seed, "cli/unirational")));
                        Ok::<_, String>(r)
                    })?);
                    recs
                }
                None if input.parametric => {
                    return Err(
                        "the exact map over Q(omega)(s3, s4) is too large to build; pass --specialize p to check it over F_p"
                            .into(),
                    )
                }
                None => {
                    let (s, pt) = input.lower(&CycloField, |e, q| lower_const(e, q).map_err(|e| e.to_string()))?;
                    let pt = pt.expect("point is set");
                    if !s.contains(&pt) {
                        return Err("the point is not on the surface".into());
                    }
                    let u = unirational_map(&s, &pt).map_err(|e| e.to_string())?;
                    clock.run(|| Ok::<_, String>(unirational_records(&s, &u)))?
                }
            };
            Ok(("unirational".into(), recs))
        }
        Command::Geiser { what: GeiserCmd::Check { prime, trials } } => {
            let recs = clock.run(|| geiser_check(*prime, *trials, seed).map_err(|e| e.to_string()))?;
            Ok(("geiser check".into(), recs))
        }
        Command::Selftest => Ok(("selftest".into(), clock.run(|| Ok::<_, String>(selftest::run_all(seed)))?)),
    }
}

/// Fails when the range cannot supply `samples` distinct primes `1 mod 3`.
fn check_prime_supply((lo, hi): (u64, u64), samples: usize) -> Result<(), String> {
    if hi - lo > 1_000_000 {
        return Ok(());
    }
    let found = (lo.max(7)..=hi)
        .filter(|&p| p % 6 == 1 && is_prime(p))
        .take(samples)
        .count();
    if found < samples {
        return Err(format!("{lo}..{hi} holds only {found} primes congruent to 1 mod 3; {samples} needed"));
    }
    Ok(())
}

fn surface_checks<F: Field>(
    name: &str,
    s: &DiagonalCubic<F>,
    point: Option<&[F::Elem; 4]>,
    paper: bool,
) -> Result<Vec<CheckRecord>, String> {
    let mut recs = match name {
        "lines" => line_records(s),
        "eckardt" => eckardt_records(s),
        _ => rationality_records(s, point),
    }
    .map_err(|e| e.to_string())?;
    if paper && name == "rationality" {
        recs.push(unit_point_record(s));
    }
    Ok(recs)
}

struct SurfaceInput {
    coeffs: [Expr; 4],
    point: Option<[Expr; 4]>,
    parametric: bool,
    paper: bool,
}

impl SurfaceInput {
    fn read(src: &SurfaceSource, point: Option<&str>) -> Result<Self, String> {
        let coeffs = match &src.coeffs {
            Some(c) => read_coeffs(c)?,
            None => paper_coeffs(),
        };
        let point = point.map(read_point).transpose()?;
        let mut all: Vec<Expr> = coeffs.to_vec();
        all.extend(point.iter().flatten().cloned());
        Ok(SurfaceInput {
            parametric: input::parametric(&all),
            coeffs,
            point,
            paper: src.paper_surface,
        })
    }

    fn lower<F: Field>(
        &self,
        f: &F,
        lower: impl Fn(&Expr, &F) -> Result<F::Elem, String>,
    ) -> Result<(DiagonalCubic<F>, Option<[F::Elem; 4]>), String> {
        let coeffs = lower_four(&self.coeffs, |e| lower(e, f))?;
        let point = self.point.as_ref().map(|p| lower_four(p, |e| lower(e, f))).transpose()?;
        Ok((DiagonalCubic::new(f.clone(), coeffs), point))
    }

    /// The surface over `F_p`. Parameters are drawn until the surface is
    /// smooth, the point lies on it and `accept` holds.
    #[allow(clippy::type_complexity)]
    fn specialize(
        &self,
        p: u64,
        seed: u64,
        accept: impl Fn(&DiagonalCubic<PrimeField>, Option<&[u64; 4]>) -> bool,
    ) -> Result<(DiagonalCubic<PrimeField>, Option<[u64; 4]>, Option<CheckRecord>), String> {
        let fp = fp_with_omega(p).map_err(|e| e.to_string())?;
        if !self.parametric {
            let (s, pt) = self.lower(&fp, |e, f| lower_const(e, f).map_err(|e| e.to_string()))?;
            if let Some(q) = &pt {
                if !s.contains(q) {
                    return Err("the point is not on the surface".into());
                }
            }
            if !accept(&s, pt.as_ref()) {
                return Err("the construction fails over this prime".into());
            }
            return Ok((s, pt, None));
        }
        let k = RatFuncField::new(PolyRing::new(fp, &PARAMS));
        let low = |e: &Expr| lower_ratfunc(e, &k).map_err(|e| e.to_string());
        let coeffs = lower_four(&self.coeffs, low)?;
        let point = self.point.as_ref().map(|q| lower_four(q, low)).transpose()?;
        if let Some(q) = &point {
            // membership is decided once, over F_p(s3, s4)
            if !DiagonalCubic::new(k.clone(), coeffs.clone()).contains(q) {
                return Err("the point is not on the surface".into());
            }
        }
        let mut rng = rng_for(seed, "cli/specialize");
        for attempt in 1..=RESAMPLE_BUDGET {
            let vals = [fp.sample_nonzero(&mut rng), fp.sample_nonzero(&mut rng)];
            let at = |xs: &[_; 4]| -> Option<[u64; 4]> {
                let v: Vec<u64> = xs.iter().map(|x| k.eval(x, &vals).ok()).collect::<Option<_>>()?;
                v.try_into().ok()
            };
            let Some(a) = at(&coeffs) else { continue };
            let pt = match &point {
                Some(q) => match at(q) {
                    Some(v) if v.iter().any(|&c| c != 0) => Some(v),
                    _ => continue,
                },
                None => None,
            };
            let s = DiagonalCubic::new(fp, a);
            if !s.is_smooth() || !accept(&s, pt.as_ref()) {
                continue;
            }
            let rec = CheckRecord::new("input/specialization", "specialization", Mode::Modular, Status::Verified)
                .with_seed(seed)
                .with_witnesses(vec![json!({"prime": p, "s3": vals[0], "s4": vals[1]})])
                .with_detail(json!({
                    "summary": format!("s3 = {}, s4 = {} over F_{p} after {attempt} draws", vals[0], vals[1]),
                    "coefficients": a,
                }));
            return Ok((s, pt, Some(rec)));
        }
        Err(format!("no usable specialization over F_{p} in {RESAMPLE_BUDGET} draws"))
    }
}

fn lower_four<E>(es: &[Expr; 4], mut f: impl FnMut(&Expr) -> Result<E, String>) -> Result<[E; 4], String> {
    let v: Vec<E> = es.iter().map(&mut f).collect::<Result<_, _>>()?;
    Ok(v.try_into().ok().expect("four entries"))
}
