//! Command-line surface for the minoralg toolkit.
//!
//! Exit codes: 0 success, 1 verification failure (a check found a
//! counterexample), 2 invalid input, 3 resource bound exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use minoralg::{
    gamma_shape, gamma_st, gamma_vector_st, membership, rho_st, straighten, verify, Error,
    HankelConfig, Limits, MatrixConfig, Polynomial, ProductOfMinors, Shape,
};

#[derive(Parser)]
#[command(
    name = "minoralg",
    version,
    about = "Exact computations in the algebras of minors of generic and Hankel matrices"
)]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

/// Resource caps: an optional JSON config file, overridden per flag.
#[derive(Args)]
struct CapArgs {
    /// JSON file with resource caps (fields of the limits object).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_minor_size: Option<usize>,
    #[arg(long, global = true)]
    max_straighten_degree: Option<usize>,
    #[arg(long, global = true)]
    max_enum_degree: Option<usize>,
    #[arg(long, global = true)]
    max_facet_cells: Option<usize>,
    #[arg(long, global = true)]
    max_rho_search_degree: Option<usize>,
    #[arg(long, global = true)]
    max_row_support: Option<usize>,
}

impl CapArgs {
    fn limits(&self) -> Result<Limits, Error> {
        let mut limits = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::invalid(format!("cannot read config {path:?}: {e}")))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::invalid(format!("bad config {path:?}: {e}")))?
            }
            None => Limits::default(),
        };
        if let Some(v) = self.max_minor_size {
            limits.max_minor_size = v;
        }
        if let Some(v) = self.max_straighten_degree {
            limits.max_straighten_degree = v;
        }
        if let Some(v) = self.max_enum_degree {
            limits.max_enum_degree = v;
        }
        if let Some(v) = self.max_facet_cells {
            limits.max_facet_cells = v;
        }
        if let Some(v) = self.max_rho_search_degree {
            limits.max_rho_search_degree = v;
        }
        if let Some(v) = self.max_row_support {
            limits.max_row_support = v;
        }
        Ok(limits)
    }
}

#[derive(Subcommand)]
enum Command {
    /// gamma of a shape, or gamma_1..gamma_t of a polynomial.
    Gamma(GammaCmd),
    /// rho_i of a monomial (with an optional T power).
    Rho(RhoCmd),
    /// Facets of the chain complex of an initial minor ideal.
    Facets(FacetsCmd),
    /// Standard-basis coordinates of a product of minors.
    Straighten(StraightenCmd),
    /// Membership oracles.
    Member(MemberCmd),
    /// Canonical classes and the Gorenstein flag.
    Canonical(CanonicalCmd),
    /// Hilbert function of the algebra of t-minors.
    Hilbert(HilbertCmd),
    /// The Hankel-matrix analogues.
    #[command(subcommand)]
    Hankel(HankelCmd),
    /// Run verification suites.
    Verify(VerifyCmd),
}

#[derive(Args)]
struct GammaCmd {
    #[arg(long)]
    t: usize,
    /// Shape as comma-separated parts, e.g. "3,1".
    #[arg(long, conflicts_with = "poly")]
    shape: Option<String>,
    /// Polynomial JSON file.
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Restrict the output to a single index i (default: all of 1..t).
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct RhoCmd {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    i: usize,
    /// Monomial as "r,c;r,c^e;..." over the grid.
    #[arg(long)]
    monomial: String,
    /// T power for the twisted value.
    #[arg(long, default_value_t = 0)]
    tpow: u32,
}

#[derive(Args)]
struct FacetsCmd {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: usize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StraightenCmd {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Product of minors, e.g. "[1|2]*[2|1]".
    #[arg(long)]
    product: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MemberKind {
    /// Symbolic power (gamma_t >= k).
    Sympow,
    /// Ordinary power (gamma_i >= k(t+1-i) for all i).
    Ordpow,
    /// The Rees algebra inside S[T].
    Rees,
    /// The algebra of t-minors inside S[T].
    At,
    /// The Veronese-type ring.
    Vt,
    /// Initial algebra of the Rees algebra.
    InRees,
    /// Initial algebra of the algebra of minors.
    InAt,
    /// Initial ideal of a symbolic power (monomial input).
    InSympow,
    /// Initial ideal of an ordinary power (monomial input).
    InOrdpow,
}

#[derive(Args)]
struct MemberCmd {
    #[arg(long, value_enum)]
    kind: MemberKind,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Polynomial JSON file.
    #[arg(long)]
    poly: Option<PathBuf>,
    /// Monomial for the initial-ideal kinds.
    #[arg(long)]
    monomial: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingKind {
    Rees,
    At,
}

#[derive(Args)]
struct CanonicalCmd {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "rees")]
    ring: RingKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum HilbertMethod {
    Enum,
    Hook,
    Both,
}

#[derive(Args)]
struct HilbertCmd {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, required_unless_present = "table")]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "both")]
    method: HilbertMethod,
    /// Emit a CSV table for k = 0..=KMAX instead of a single record.
    #[arg(long, value_name = "KMAX")]
    table: Option<usize>,
}

#[derive(Subcommand)]
enum HankelCmd {
    /// Canonical class of the Hankel blow-up algebra.
    Canonical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Case classification of the Hankel algebra of minors.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Facets of a Hankel initial complex.
    Facets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Hankel checks up to a variable count.
    Verify {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

#[derive(Args)]
struct VerifyCmd {
    /// Suite id, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Shrink the sweeps to this size (smoke tier).
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    dmax: Option<usize>,
    /// Number of random pairs for the valuation suite.
    #[arg(long, default_value_t = 500)]
    pairs: usize,
    #[arg(long, default_value_t = 0x5eed_cafe)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string(value)
        .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn write_or_print<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        None => print_json(value),
        Some(path) => {
            let text = serde_json::to_string_pretty(value)
                .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
            std::fs::write(path, text + "\n")
                .map_err(|e| Error::invalid(format!("cannot write {path:?}: {e}")))
        }
    }
}

fn read_poly(path: &PathBuf) -> Result<Polynomial, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {path:?}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("bad polynomial JSON: {e}")))
}

/// Grid inferred from a polynomial's support when not given explicitly.
fn config_for(
    m: Option<usize>,
    n: Option<usize>,
    t: usize,
    f: &Polynomial,
) -> Result<MatrixConfig, Error> {
    let (mut max_r, mut max_c) = (1usize, 1usize);
    for (mono, _) in f.terms() {
        for cell in mono.exps().keys() {
            max_r = max_r.max(cell.row as usize);
            max_c = max_c.max(cell.col as usize);
        }
    }
    MatrixConfig::new(m.unwrap_or(max_r.max(t)), n.unwrap_or(max_c.max(t)), t)
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    let limits = cli.caps.limits()?;
    match cli.command {
        Command::Gamma(cmd) => {
            match (&cmd.shape, &cmd.poly) {
                (Some(shape_str), None) => {
                    let parts = shape_str
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::invalid(format!("bad shape part {p:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let shape = Shape::new(parts)?;
                    println!("{}", gamma_shape(cmd.t, &shape));
                }
                (None, Some(path)) => {
                    let f = read_poly(path)?;
                    let cfg = config_for(cmd.m, cmd.n, cmd.t, &f)?;
                    match cmd.i {
                        Some(i) => {
                            if i == 0 || i > cmd.t {
                                return Err(Error::invalid("index i must be in 1..=t"));
                            }
                            println!("{}", gamma_st(&cfg, i, &f, &limits)?);
                        }
                        None => {
                            let v = gamma_vector_st(&cfg, &f, &limits)?;
                            print_json(&v)?;
                        }
                    }
                }
                _ => return Err(Error::invalid("give exactly one of --shape or --poly")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rho(cmd) => {
            let cfg = MatrixConfig::new(cmd.m, cmd.n, cmd.t)?;
            if cmd.i == 0 || cmd.i > cfg.min_dim() {
                return Err(Error::invalid("index i must be in 1..=min(m,n)"));
            }
            let mono = minoralg::poly::parse_monomial(&cmd.monomial)?.with_t_pow(cmd.tpow);
            println!("{}", rho_st(&cfg, cmd.i, &mono, &limits)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Facets(cmd) => {
            let fs = minoralg::enumerate_facets(cmd.m, cmd.n, cmd.i, &limits)?;
            write_or_print(fs.as_ref(), &cmd.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Straighten(cmd) => {
            let cfg = MatrixConfig::new(cmd.m, cmd.n, 1)?;
            let product: ProductOfMinors = cmd.product.parse()?;
            let rep = straighten(&cfg, &product, &limits)?;
            print_json(&rep)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Member(cmd) => {
            let cfg = MatrixConfig::new(cmd.m, cmd.n, cmd.t)?;
            let need_k = || cmd.k.ok_or_else(|| Error::invalid("this kind needs --k"));
            let need_poly = || -> Result<Polynomial, Error> {
                let path = cmd
                    .poly
                    .as_ref()
                    .ok_or_else(|| Error::invalid("this kind needs --poly"))?;
                read_poly(path)
            };
            let need_mono = || -> Result<minoralg::GridMonomial, Error> {
                let s = cmd
                    .monomial
                    .as_ref()
                    .ok_or_else(|| Error::invalid("this kind needs --monomial"))?;
                minoralg::poly::parse_monomial(s)
            };
            #[derive(Serialize)]
            struct BoolVerdict {
                verdict: bool,
            }
            match cmd.kind {
                MemberKind::Sympow => {
                    let report =
                        membership::in_symbolic_power(&cfg, &need_poly()?, need_k()?, &limits)?;
                    print_json(&report)?;
                }
                MemberKind::Ordpow => {
                    let report =
                        membership::in_ordinary_power(&cfg, &need_poly()?, need_k()?, &limits)?;
                    print_json(&report)?;
                }
                MemberKind::Rees => {
                    print_json(&membership::in_rees(&cfg, &need_poly()?, &limits)?)?;
                }
                MemberKind::At => {
                    print_json(&membership::in_at(&cfg, &need_poly()?, &limits)?)?;
                }
                MemberKind::Vt => {
                    print_json(&membership::in_vt(&cfg, &need_poly()?))?;
                }
                MemberKind::InRees => {
                    let verdict = membership::in_initial_rees_poly(&cfg, &need_poly()?, &limits)?;
                    print_json(&BoolVerdict { verdict })?;
                }
                MemberKind::InAt => {
                    let verdict = membership::in_initial_at_poly(&cfg, &need_poly()?, &limits)?;
                    print_json(&BoolVerdict { verdict })?;
                }
                MemberKind::InSympow => {
                    let verdict = membership::in_initial_power(
                        &cfg,
                        &need_mono()?,
                        need_k()?,
                        membership::PowerKind::Symbolic,
                        &limits,
                    )?;
                    print_json(&BoolVerdict { verdict })?;
                }
                MemberKind::InOrdpow => {
                    let verdict = membership::in_initial_power(
                        &cfg,
                        &need_mono()?,
                        need_k()?,
                        membership::PowerKind::Ordinary,
                        &limits,
                    )?;
                    print_json(&BoolVerdict { verdict })?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Canonical(cmd) => {
            match cmd.ring {
                RingKind::Rees => {
                    #[derive(Serialize)]
                    struct ReesOut {
                        basis: Vec<String>,
                        coeffs: Vec<i64>,
                    }
                    let class = minoralg::canonical_class_rees(cmd.m, cmd.n, cmd.t)?;
                    let basis = (1..=cmd.t).map(|i| format!("cl(P_{i})")).collect();
                    print_json(&ReesOut {
                        basis,
                        coeffs: class.coeffs,
                    })?;
                }
                RingKind::At => {
                    #[derive(Serialize)]
                    struct AtOut {
                        q_mult: i64,
                        gorenstein: bool,
                    }
                    let class = minoralg::canonical_class_at(cmd.m, cmd.n, cmd.t)?;
                    print_json(&AtOut {
                        q_mult: class.q_mult,
                        gorenstein: class.q_mult == 0,
                    })?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert(cmd) => {
            let cfg = MatrixConfig::new(cmd.m, cmd.n, cmd.t)?;
            if let Some(kmax) = cmd.table {
                println!("m,n,t,k,dim_enum,dim_hook,agree");
                for k in 0..=kmax {
                    let rec = minoralg::hilbert_record(&cfg, k, &limits)?;
                    println!(
                        "{},{},{},{},{},{},{}",
                        rec.m, rec.n, rec.t, rec.k, rec.dim_enum, rec.dim_hook, rec.agree
                    );
                }
                return Ok(ExitCode::SUCCESS);
            }
            let k = cmd.k.expect("clap enforces k unless --table");
            match cmd.method {
                HilbertMethod::Enum => {
                    println!("{}", minoralg::hilbert_at_enum(&cfg, k, &limits)?)
                }
                HilbertMethod::Hook => {
                    println!("{}", minoralg::hilbert_at_hook(&cfg, k, &limits)?)
                }
                HilbertMethod::Both => print_json(&minoralg::hilbert_record(&cfg, k, &limits)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hankel(cmd) => run_hankel(cmd, &limits),
        Command::Verify(cmd) => run_verify(cmd, limits),
    }
}

fn run_hankel(cmd: HankelCmd, limits: &Limits) -> Result<ExitCode, Error> {
    match cmd {
        HankelCmd::Canonical { n, t } => {
            #[derive(Serialize)]
            #[serde(tag = "case", rename_all = "snake_case")]
            enum Out {
                Class {
                    basis: Vec<String>,
                    coeffs: Vec<i64>,
                },
                CompleteIntersection {
                    coeffs: Vec<i64>,
                },
                Principal,
            }
            let out = match minoralg::canonical_class_rees_hankel(n, t)? {
                minoralg::HankelReesClass::Class(c) => Out::Class {
                    basis: (1..=t).map(|i| format!("cl(P_{i})")).collect(),
                    coeffs: c.coeffs,
                },
                minoralg::HankelReesClass::CompleteIntersection => {
                    Out::CompleteIntersection { coeffs: vec![0] }
                }
                minoralg::HankelReesClass::Principal => Out::Principal,
            };
            print_json(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        HankelCmd::Classify { n, t } => {
            #[derive(Serialize)]
            #[serde(tag = "case", rename_all = "snake_case")]
            enum Out {
                Polynomial { gorenstein: bool },
                Grassmann { gorenstein: bool, factorial: bool },
                Generic { q_mult: i64, gorenstein: bool },
            }
            let out = match minoralg::classify_at_hankel(n, t)? {
                minoralg::HankelAtCase::Polynomial => Out::Polynomial { gorenstein: true },
                minoralg::HankelAtCase::Grassmann => Out::Grassmann {
                    gorenstein: true,
                    factorial: true,
                },
                minoralg::HankelAtCase::Generic { class, gorenstein } => Out::Generic {
                    q_mult: class.q_mult,
                    gorenstein,
                },
            };
            print_json(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        HankelCmd::Facets { n, i, out } => {
            let cfg = HankelConfig::new(n, n.div_ceil(2))?;
            let fs = minoralg::hankel_facets(&cfg, i, limits)?;
            write_or_print(&fs, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        HankelCmd::Verify { nmax } => {
            let opts = verify::SuiteOptions {
                limits: limits.clone(),
                max_size: Some(nmax.min(6)),
                ..Default::default()
            };
            let report = verify::run_suite("hankel", &opts)?;
            print_json(&report)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_verify(cmd: VerifyCmd, limits: Limits) -> Result<ExitCode, Error> {
    let opts = verify::SuiteOptions {
        limits,
        max_size: cmd.max_size,
        m: cmd.m,
        n: cmd.n,
        t: cmd.t,
        k: cmd.k,
        dmax: cmd.dmax,
        pairs: cmd.pairs,
        seed: cmd.seed,
    };
    let reports = if cmd.suite == "all" {
        verify::run_all(&opts)?
    } else {
        vec![verify::run_suite(&cmd.suite, &opts)?]
    };
    let all_pass = reports.iter().all(|r| r.pass);
    match &cmd.out {
        None => print_json(&reports)?,
        Some(path) => {
            let text = serde_json::to_string_pretty(&reports)
                .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
            std::fs::write(path, text + "\n")
                .map_err(|e| Error::invalid(format!("cannot write {path:?}: {e}")))?;
            let mut stderr = std::io::stderr();
            let _ = writeln!(
                stderr,
                "{} suites, {}",
                reports.len(),
                if all_pass { "all pass" } else { "FAILURES" }
            );
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
