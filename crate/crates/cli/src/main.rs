use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ainf::catalog::CatalogKey;
use ainf::certificate::Certificate;
use ainf::config::Config;
use ainf::error::Error;
use ainf::io::{read_json, to_json, write_json, AlgebraDocument};
use ainf::pipelines;
use ainf::Q;
use clap::{Args, Parser, Subcommand};

/// Exact checks and certificates for A∞-algebras and their Hochschild invariants.
#[derive(Debug, Parser)]
#[command(name = "ainf", version)]
struct Cli {
    /// Directory that relative paths are resolved against.
    #[arg(long, global = true, env = "AINF_WORKDIR")]
    workdir: Option<PathBuf>,
    /// JSON file overriding the default bounds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Out {
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// A∞ relations and strict unitality of a catalog algebra or an algebra document.
    CheckAinfty {
        /// Catalog key, e.g. lambda1, truncated_poly(6), tensor(lambda1,dual_numbers)
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        algebra: Option<String>,
        /// Algebra document (JSON) to check instead of a catalog algebra
        #[arg(long)]
        input: Option<PathBuf>,
        /// Highest arity of the relation check [default: check_arity from the config]
        #[arg(long, value_parser = positive)]
        arity: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Hochschild homology by weight and the mixed-complex identities.
    Hochschild {
        /// Catalog key
        #[arg(long)]
        algebra: String,
        /// Highest weight slice [default: hochschild_weight]
        #[arg(long, value_parser = positive)]
        max_weight: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Ext over k[y]/y³, cohomology of C and the twisted HH of k[x]/x⁶.
    Ext {
        /// Length of the resolution of k over k[y]/y³ [default: ext_truncation]
        #[arg(long, value_parser = positive)]
        truncation: Option<usize>,
        /// Weight bound for C [default: c_bound]
        #[arg(long, value_parser = positive)]
        c_bound: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Solve the morphism k[x]/x⁶ → End(k) arity by arity.
    SolveMorphism {
        /// Arity N to solve through [default: solver_arity]
        #[arg(long, value_parser = positive)]
        target_arity: Option<usize>,
        /// Weight bound W of the End(k) truncation [default: weight_bound]
        #[arg(long, value_parser = positive)]
        weight_bound: Option<usize>,
        /// Length bound L of the End(k) truncation [default: length_bound]
        #[arg(long, value_parser = positive)]
        length_bound: Option<usize>,
        /// Where to write the solved components.
        #[arg(long)]
        prefix_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Build the glued 10-dimensional algebra and certify its μ₃ pairing.
    #[command(name = "certify-10dim")]
    CertifyTenDim {
        /// Arity N through which the glued algebra is certified [default: certify_arity]
        #[arg(long, value_parser = positive)]
        arity: Option<usize>,
        /// Also write the glued algebra as a document.
        #[arg(long)]
        algebra_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Nonvanishing of (id ⊗ B) on the class over Λ₁ ⊗ k[ε].
    #[command(name = "verify-section4")]
    VerifySection4 {
        /// Highest total weight of the Künneth check [default: section4_weight]
        #[arg(long, value_parser = positive)]
        max_weight: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Every pipeline; one certificate per pipeline plus a summary.
    RunAll {
        /// Directory for the certificates and summary.json
        #[arg(long, default_value = "certificates")]
        out_dir: PathBuf,
    },
    /// Write a catalog algebra as a JSON document.
    ExportAlgebra {
        /// Catalog key
        #[arg(long)]
        algebra: String,
        /// Output path; stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Dimension(_) => "dimension",
        Error::Invalid(_) => "invalid",
        Error::NotAComplex(_) => "not_a_complex",
        Error::Structure(_) => "structure",
        Error::Truncation(_) => "truncation",
        Error::Identity(_) => "identity",
        Error::Obstruction { .. } => "obstruction",
        Error::Io(_) => "io",
    }
}

struct Ctx {
    base: PathBuf,
    config: Config,
}

impl Ctx {
    fn path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    fn emit(&self, cert: &Certificate, out: &Out) -> Result<bool, Error> {
        match &out.out {
            Some(p) => {
                write_json(&self.path(p), cert)?;
                println!("{}: {}", cert.pipeline, if cert.verdict { "PASS" } else { "FAIL" });
            }
            None => print!("{}", to_json(cert)?),
        }
        if !cert.verdict {
            for c in cert.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}: {} [{}]", c.name, c.statement, c.value);
            }
        }
        Ok(cert.verdict)
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let base = match &cli.workdir {
        Some(d) => d.clone(),
        None => std::env::current_dir()?,
    };
    let config = match &cli.config {
        Some(p) => read_json(&if p.is_absolute() { p.clone() } else { base.join(p) })?,
        None => Config::default(),
    };
    let mut ctx = Ctx { base, config };
    match cli.command {
        Command::CheckAinfty { algebra, input, arity, out } => {
            if let Some(a) = arity {
                ctx.config.check_arity = a;
            }
            let alg = match (algebra, input) {
                (Some(key), _) => ainf::catalog::make_algebra::<Q>(&key.parse::<CatalogKey>()?)?,
                (None, Some(p)) => read_json::<AlgebraDocument>(&ctx.path(&p))?.to_algebra::<Q>()?,
                (None, None) => return Err(Error::Invalid("pass --algebra or --input".into())),
            };
            let cert = pipelines::check_ainfty(&alg, ctx.config.check_arity, &ctx.config)?;
            ctx.emit(&cert, &out)
        }
        Command::Hochschild { algebra, max_weight, out } => {
            if let Some(w) = max_weight {
                ctx.config.hochschild_weight = w;
            }
            let key: CatalogKey = algebra.parse()?;
            let cert = pipelines::hochschild::<Q>(&key, ctx.config.hochschild_weight, &ctx.config)?;
            ctx.emit(&cert, &out)
        }
        Command::Ext { truncation, c_bound, out } => {
            if let Some(t) = truncation {
                ctx.config.ext_truncation = t;
            }
            if let Some(c) = c_bound {
                ctx.config.c_bound = c;
            }
            let cert = pipelines::ext::<Q>(&ctx.config)?;
            ctx.emit(&cert, &out)
        }
        Command::SolveMorphism { target_arity, weight_bound, length_bound, prefix_out, out } => {
            if let Some(n) = target_arity {
                ctx.config.solver_arity = n;
            }
            if let Some(w) = weight_bound {
                ctx.config.weight_bound = w;
            }
            if let Some(l) = length_bound {
                ctx.config.length_bound = l;
            }
            let (cert, doc) = pipelines::solve_morphism::<Q>(&ctx.config)?;
            if let Some(p) = prefix_out {
                write_json(&ctx.path(&p), &doc)?;
            }
            ctx.emit(&cert, &out)
        }
        Command::CertifyTenDim { arity, algebra_out, out } => {
            if let Some(n) = arity {
                ctx.config.certify_arity = n;
            }
            let (ten, cert) = pipelines::certify_ten_dim::<Q>(&ctx.config)?;
            if let Some(p) = algebra_out {
                write_json(&ctx.path(&p), &AlgebraDocument::from_algebra(&ten.algebra, "certify-10dim"))?;
            }
            ctx.emit(&cert, &out)
        }
        Command::VerifySection4 { max_weight, out } => {
            if let Some(w) = max_weight {
                ctx.config.section4_weight = w;
            }
            let cert = pipelines::verify_section4::<Q>(&ctx.config)?;
            ctx.emit(&cert, &out)
        }
        Command::RunAll { out_dir } => {
            let dir = ctx.path(&out_dir);
            let all = pipelines::run_all::<Q>(&ctx.config)?;
            let mut summary = serde_json::Map::new();
            let mut ok = true;
            for (name, cert) in &all {
                write_json(&dir.join(format!("{name}.json")), cert)?;
                println!("{name}: {}", if cert.verdict { "PASS" } else { "FAIL" });
                summary.insert(name.clone(), serde_json::json!(cert.verdict));
                ok &= cert.verdict;
            }
            let summary = serde_json::json!({ "verdict": ok, "pipelines": summary, "config": ctx.config });
            write_json(&dir.join("summary.json"), &summary)?;
            Ok(ok)
        }
        Command::ExportAlgebra { algebra, out } => {
            let key: CatalogKey = algebra.parse()?;
            let doc = AlgebraDocument::from_algebra(&ainf::catalog::make_algebra::<Q>(&key)?, "catalog");
            match out {
                Some(p) => write_json(&ctx.path(&p), &doc)?,
                None => print!("{}", to_json(&doc)?),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": kind(&e), "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
