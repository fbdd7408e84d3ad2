//! `wkb`: runs the awfs-core verification suites over built-in instances and
//! JSON instance files and prints deterministic reports.
//!
//! Exit status is 0 when a report has no failed equation, 1 when it has one,
//! and 2 when input cannot be read or parsed; no report is printed then.

use std::path::PathBuf;

use awfs_core::awfs::suite;
use awfs_core::bar::{self, BarComplex, Codescent, DgAlgebra, DgModule};
use awfs_core::dg::{Complex, GradedMap};
use awfs_core::fincat::{validate_category, validate_comonad, validate_monad, FinSet, FinSetCategory};
use awfs_core::fincat::{Coreader, Exception, IdentityComonad, TableCategory};
use awfs_core::report::{Report, Table};
use awfs_core::schema::{self, Document, Endofunctor};
use awfs_core::spans::{Bounds, WeakMaps};
use awfs_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "wkb", version, about = "Exact verification suites for algebraic weak factorisation systems and weak maps")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for the randomised suites; recorded in every report header.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate category, comonad, monad, complex, algebra and module files.
    Validate(ValidateArgs),
    /// Algebraic weak factorisation systems on finite sets.
    #[command(subcommand)]
    Awfs(AwfsCommand),
    /// Weak maps compared against bounded spans.
    #[command(subcommand)]
    Weakmaps(WeakmapsCommand),
    /// Bar construction and its codescent object.
    #[command(subcommand)]
    Bar(BarCommand),
    /// Sign algebra of weak maps on seeded random instances.
    #[command(subcommand)]
    Dg(DgCommand),
    /// Lift a homological lali to a weak lali.
    #[command(subcommand)]
    Lift(LiftCommand),
    /// Factor a unital lali through the free one.
    #[command(subcommand)]
    Factor(FactorCommand),
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Instance files; comonad and monad tables refer to the nearest
    /// preceding category file.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Largest finite set used when validating built-in endofunctors.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub finset_max: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum AwfsCommand {
    /// Check every AWFS equation over all arrows between small finite sets.
    Check(AwfsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AwfsArgs {
    /// `splitepi`, `psplitepi` (P = (-) × S) or `tsplitmono` (T = (-) + E).
    #[arg(long)]
    pub builtin: String,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub finset_max: u64,
    /// `|S|` or `|E|` for the parametrised families.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub param: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum WeakmapsCommand {
    /// Compare Kleisli maps with bounded span classes.
    Compare(WeakmapsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WeakmapsArgs {
    /// `coreader:S=<n>` or `identity`.
    #[arg(long, default_value = "coreader:S=2")]
    pub comonad: String,
    /// Size of the source; all sizes up to `--finset-max` when omitted.
    #[arg(long = "A")]
    pub a: Option<usize>,
    /// Size of the target; all sizes up to `--finset-max` when omitted.
    #[arg(long = "B")]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub finset_max: u64,
    /// Apex bound; `|QA| + 2` when omitted.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: Option<u64>,
    /// Zigzag depth.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub zigzag: u64,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// `rationals`, `dual_numbers` or `exterior`.
    #[arg(long, default_value = "dual_numbers")]
    pub builtin: String,
    /// A `dgmodule.json` file; overrides `--builtin`.
    #[arg(long)]
    pub module: Option<PathBuf>,
    /// Built-in module: `trivial` (Q through the augmentation), `regular` or
    /// `random` (seeded).
    #[arg(long, default_value = "trivial")]
    pub kind: String,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub trunc: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum BarCommand {
    /// Build the bar resolution and its truncated codescent object.
    Resolve(InstanceArgs),
}

#[derive(Debug, Clone, Subcommand)]
pub enum DgCommand {
    /// Seeded property suites for weak maps and strictification.
    Check(DgArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DgArgs {
    /// `rationals`, `dual_numbers`, `exterior` or `all`.
    #[arg(long, default_value = "all")]
    pub builtin: String,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub trunc: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub instances: u64,
    /// Largest module dimension.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_dim: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum LiftCommand {
    /// Lift a lali of complexes with a strict projection to weak maps.
    Lali(InstanceArgs),
}

#[derive(Debug, Clone, Subcommand)]
pub enum FactorCommand {
    /// Factor a lali through the free lali on the codescent object.
    Ulali(InstanceArgs),
}

/// A report, or the reason none could be produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Option<Report>,
    pub error: Option<String>,
    pub status: u8,
}

impl Outcome {
    fn report(r: Report) -> Self {
        let status = u8::from(!r.all_passed());
        Outcome {
            report: Some(r),
            error: None,
            status,
        }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            report: None,
            error: Some(e.to_string()),
            status: 2,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (&self.report, format) {
            (Some(r), Format::Text) => r.to_text(),
            (Some(r), Format::Json) => r.to_json() + "\n",
            (None, _) => String::new(),
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let header = Report::new().with_header("seed", config.seed);
    let result = match &config.command {
        Command::Validate(a) => validate(a, header),
        Command::Awfs(AwfsCommand::Check(a)) => awfs_check(a, header),
        Command::Weakmaps(WeakmapsCommand::Compare(a)) => weakmaps(a, header),
        Command::Bar(BarCommand::Resolve(a)) => resolve(a, config.seed, header),
        Command::Dg(DgCommand::Check(a)) => dg_check(a, config.seed, header),
        Command::Lift(LiftCommand::Lali(a)) => lift(a, config.seed, header),
        Command::Factor(FactorCommand::Ulali(a)) => factor(a, config.seed, header),
    };
    match result {
        Ok(r) => Outcome::report(r),
        Err(e) => Outcome::input_error(e),
    }
}

type Run = Result<Report, Error>;

/// Prefixes a file name, keeping a single "parse error" tag.
fn in_file(at: &str, e: impl std::fmt::Display) -> Error {
    let msg = e.to_string();
    Error::Parse(format!("{at}: {}", msg.strip_prefix("parse error: ").unwrap_or(&msg)))
}

fn usize_of(n: u64) -> usize {
    usize::try_from(n).unwrap_or(usize::MAX)
}

fn validate(a: &ValidateArgs, mut r: Report) -> Run {
    r = r.with_header("command", "validate");
    let mut category: Option<TableCategory> = None;
    let sets: Vec<FinSet> = (0..=usize_of(a.finset_max)).map(FinSet::standard).collect();
    for path in &a.files {
        let at = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| in_file(&at, e))?;
        let doc = match schema::parse(&text) {
            Ok(d) => d,
            Err(Error::Law(msg)) => {
                r.fail("document-laws", &at, msg, "-");
                continue;
            }
            Err(e) => return Err(in_file(&at, e)),
        };
        match doc {
            Document::Category(c) => {
                r.extend(validate_category(&c, c.objects())?);
                category = Some(c);
            }
            Document::Endofunctor(f) => {
                let need = || Error::Parse(format!("{at}: a comonad or monad table needs a preceding category file"));
                match f {
                    Endofunctor::Coreader(s) => r.extend(validate_comonad(&FinSetCategory, &Coreader::new(s), &sets)?),
                    Endofunctor::Exception(e) => r.extend(validate_monad(&FinSetCategory, &Exception::new(e), &sets)?),
                    Endofunctor::Identity => r.extend(validate_comonad(&FinSetCategory, &IdentityComonad, &sets)?),
                    Endofunctor::TableComonad(p) => {
                        let c = category.as_ref().ok_or_else(need)?;
                        r.extend(validate_comonad(c, &p, c.objects())?);
                    }
                    Endofunctor::TableMonad(t) => {
                        let c = category.as_ref().ok_or_else(need)?;
                        r.extend(validate_monad(c, &t, c.objects())?);
                    }
                }
            }
            Document::Complex(c) => {
                r.holds("boundary-squares-to-zero", &at, (c.boundary() * c.boundary()).is_zero(), || {
                    ("d·d ≠ 0".into(), "0".into())
                });
            }
            Document::GradedMap(f) => {
                let at = format!("{at} (degree {})", f.degree());
                r.pass("graded-map-degrees", at);
            }
            Document::Algebra(alg) => r.pass("algebra-laws", format!("{at} ({})", alg.name)),
            Document::Module(alg, m) => r.extend(m.laws(&alg)?),
        }
    }
    Ok(r)
}

fn awfs_check(a: &AwfsArgs, r: Report) -> Run {
    let mut r = r
        .with_header("command", "awfs check")
        .with_header("builtin", &a.builtin)
        .with_header("finset-max", a.finset_max);
    if a.builtin != "splitepi" {
        r = r.with_header("param", a.param);
    }
    r.extend(suite::full(&a.builtin, usize_of(a.finset_max), usize_of(a.param))?);
    Ok(r)
}

fn comonad_size(spec: &str) -> Result<usize, Error> {
    if spec == "identity" {
        return Ok(1);
    }
    spec.strip_prefix("coreader:S=")
        .and_then(|n| n.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .ok_or_else(|| Error::Parse(format!("--comonad `{spec}`: expected coreader:S=<n> with n ≥ 1, or identity")))
}

fn weakmaps(a: &WeakmapsArgs, r: Report) -> Run {
    let s = comonad_size(&a.comonad)?;
    let mut r = r
        .with_header("command", "weakmaps compare")
        .with_header("comonad", &a.comonad)
        .with_header("zigzag", a.zigzag);
    if let Some(b) = a.bound {
        r = r.with_header("bound", b);
    }
    let max = usize_of(a.finset_max);
    let sizes = |x: Option<usize>| x.map_or_else(|| (0..=max).collect(), |n| vec![n]);
    let pairs: Vec<(usize, usize)> = sizes(a.a)
        .into_iter()
        .flat_map(|x| sizes(a.b).into_iter().map(move |y| (x, y)))
        .collect();
    let w = WeakMaps::new(suite::coreader(s));
    let reports = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (sa, sb) = (FinSet::standard(x), FinSet::standard(y));
            let apex = a.bound.map_or(x * s + 2, usize_of);
            w.compare_hom(&sa, &sb, Bounds { apex, depth: usize_of(a.zigzag) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table: Option<Table> = None;
    for mut rep in reports {
        for t in rep.tables.drain(..) {
            match &mut table {
                Some(acc) if acc.name == t.name => acc.rows.extend(t.rows),
                _ => table = Some(t),
            }
        }
        r.extend(rep);
    }
    if let Some(t) = table {
        r.table(t);
    }
    Ok(r)
}

fn algebra(name: &str) -> Result<DgAlgebra, Error> {
    match name {
        "rationals" => Ok(DgAlgebra::rationals()),
        "dual_numbers" => Ok(DgAlgebra::dual_numbers()),
        "exterior" => Ok(DgAlgebra::exterior(1)),
        other => Err(Error::Parse(format!(
            "--builtin `{other}`: expected rationals, dual_numbers or exterior"
        ))),
    }
}

fn instance(a: &InstanceArgs, seed: u64) -> Result<(DgAlgebra, DgModule), Error> {
    if let Some(path) = &a.module {
        let at = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| in_file(&at, e))?;
        let v = schema::parse_value(&text).map_err(|e| in_file(&at, e))?;
        return schema::module(&v, "").map_err(|e| in_file(&at, e));
    }
    let alg = algebra(&a.builtin)?;
    let m = match a.kind.as_str() {
        "trivial" => DgModule::trivial(&alg, &Complex::unit())?,
        "regular" => DgModule::regular(&alg),
        "random" => bar::random::module(&mut ChaCha8Rng::seed_from_u64(seed), &alg, 3),
        other => return Err(Error::Parse(format!("--kind `{other}`: expected trivial, regular or random"))),
    };
    Ok((alg, m))
}

fn instance_header(r: Report, command: &str, a: &InstanceArgs, alg: &DgAlgebra, m: &DgModule) -> Report {
    r.with_header("command", command)
        .with_header("algebra", &alg.name)
        .with_header("module", a.module.as_ref().map_or(a.kind.clone(), |p| p.display().to_string()))
        .with_header("module-dim", m.m.dim())
        .with_header("trunc", a.trunc)
}

fn resolve(a: &InstanceArgs, seed: u64, r: Report) -> Run {
    let (alg, m) = instance(a, seed)?;
    let mut r = instance_header(r, "bar resolve", a, &alg, &m);
    let level = usize_of(a.trunc);
    let full = BarComplex::new(&alg, &m, level + 1)?;
    let cod = Codescent::new(&alg, &m, level)?;
    r.extend(full.check(&alg)?);
    r.extend(cod.check(&alg, &full)?);
    r.extend(cod.lali().validate("bar lali")?);
    let dims = full.normalized_dims();
    let mut pieces = Table {
        name: "normalized-pieces".into(),
        columns: vec!["n".into(), "dim X_n".into(), "dim N(X_n)".into(), "dim A⊗Ā^n⊗M".into()],
        rows: Vec::new(),
    };
    for n in 0..=level {
        let expected = cod.piece(n).dim();
        r.equal("normalized-dimension", format!("n={n}"), &dims[n], &expected);
        pieces.rows.push(vec![n.to_string(), full.x(n as i64).dim().to_string(), dims[n].to_string(), expected.to_string()]);
    }
    r.table(pieces);
    let total = cod.total();
    let lo = total.degrees().iter().copied().min().unwrap_or(0);
    let hi = total.degrees().iter().copied().max().unwrap_or(0);
    let exact_below = level as i32 + cod.piece(level).degrees().iter().copied().min().unwrap_or(0);
    let ranks = total.homology_ranks(lo..=hi);
    r.table(Table {
        name: "homology".into(),
        columns: vec!["degree".into(), "rank".into(), "below-truncation".into()],
        rows: ranks
            .iter()
            .map(|(k, n)| vec![k.to_string(), n.to_string(), (*k < exact_below).to_string()])
            .collect(),
    });
    Ok(r)
}

fn dg_algebras(name: &str) -> Result<Vec<DgAlgebra>, Error> {
    if name == "all" {
        Ok(vec![DgAlgebra::rationals(), DgAlgebra::dual_numbers(), DgAlgebra::exterior(1)])
    } else {
        Ok(vec![algebra(name)?])
    }
}

/// One seeded instance: weak-map laws on a random composable triple and the
/// strictification round trips.
pub fn dg_instance(alg: &DgAlgebra, seed: u64, index: u64, level: usize, max_dim: usize) -> Run {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let ms: Vec<DgModule> = (0..4).map(|_| bar::random::module(&mut rng, alg, max_dim)).collect();
    let mut deg = || rng.gen_range(-1..=1);
    let (i, j, k) = (deg(), deg(), deg());
    let f = bar::random::weak(&mut rng, alg, &ms[0], &ms[1], i, level);
    let g = bar::random::weak(&mut rng, alg, &ms[1], &ms[2], j, level);
    let h = bar::random::weak(&mut rng, alg, &ms[2], &ms[3], k, level);
    let at = format!("{} #{index}", alg.name);
    let mut r = bar::weak_laws(alg, &f, &g, &h, &at)?;
    let cod = Codescent::new(alg, &ms[0], level)?;
    let strict = bar::random::module_map(&mut rng, alg, &cod.module, &ms[1], i);
    r.extend(bar::strictification(alg, &cod, &f, &strict, &at)?);
    Ok(r)
}

fn dg_check(a: &DgArgs, seed: u64, r: Report) -> Run {
    let algs = dg_algebras(&a.builtin)?;
    let mut r = r
        .with_header("command", "dg check")
        .with_header("algebras", algs.iter().map(|x| x.name.clone()).collect::<Vec<_>>().join(", "))
        .with_header("instances", a.instances)
        .with_header("max-dim", a.max_dim)
        .with_header("trunc", a.trunc);
    let level = usize_of(a.trunc);
    let reports = (0..a.instances)
        .into_par_iter()
        .map(|i| dg_instance(&algs[usize_of(i) % algs.len()], seed, i, level, usize_of(a.max_dim)))
        .collect::<Result<Vec<_>, _>>()?;
    for rep in reports {
        r.extend(rep);
    }
    Ok(r)
}

fn lift(a: &InstanceArgs, seed: u64, r: Report) -> Run {
    let (alg, m) = instance(a, seed)?;
    let mut r = instance_header(r, "lift lali", a, &alg, &m);
    let (n, l) = bar::random::ulali(&mut ChaCha8Rng::seed_from_u64(seed), &alg, &m);
    r.extend(l.validate("input lali")?);
    let lifted = bar::lift_ulali(&alg, &m, &n, &l, usize_of(a.trunc))?;
    r.extend(lifted.report);
    Ok(r)
}

fn factor(a: &InstanceArgs, seed: u64, r: Report) -> Run {
    let (alg, m) = instance(a, seed)?;
    let mut r = instance_header(r, "factor ulali", a, &alg, &m);
    let cod = Codescent::new(&alg, &m, usize_of(a.trunc))?;
    let (n, l) = bar::random::ulali(&mut ChaCha8Rng::seed_from_u64(seed), &alg, &m);
    r.extend(l.validate("input lali")?);
    r.extend(bar::free_ulali_factor(&alg, &cod, &n, &l)?.report);
    let own = bar::free_ulali_factor(&alg, &cod, &cod.module, &cod.lali())?;
    r.equal("factor-own-lali-is-identity", "QM", &own.h, &GradedMap::identity(cod.total()));
    Ok(r)
}
