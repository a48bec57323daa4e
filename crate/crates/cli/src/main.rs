//! `nideal`: command-line front end for neural codes and neural ideals.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 2 parse error, 3 resource bound exceeded, 4 semantic or validation error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use neural_ideals::ideals::DEFAULT_ENUMERATION_BOUND;
use neural_ideals::text::{self, Realization};
use neural_ideals::{
    Code, Codeword, Error, NeuralIdeal, NipHom, Permutation, Pseudomonomial, Transform,
};

#[derive(Parser, Debug)]
#[command(name = "nideal", version, about = "Neural codes, neural ideals and the maps between them")]
struct Cli {
    /// Ambient variable count, for inputs where it cannot be inferred.
    #[arg(long = "n", global = true, value_name = "INT")]
    n: Option<usize>,

    /// Largest ambient size for exhaustive canonical-form enumeration.
    #[arg(long = "max-n", global = true, value_name = "INT", default_value_t = DEFAULT_ENUMERATION_BOUND)]
    max_n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for the component hom files written by `hom decompose`.
    #[arg(long = "emit-parts", global = true, value_name = "DIR")]
    emit_parts: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of the neural ideal of a code.
    Cf { codefile: PathBuf },
    /// Print the indicator generators of the neural ideal of a code.
    Gens { codefile: PathBuf },
    /// Print the code whose neural ideal is generated by a generator file.
    CodeOfGens { genfile: PathBuf },
    /// Validate, apply, decompose or compose homomorphisms.
    #[command(subcommand)]
    Hom(HomCommand),
    /// Transform codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Work with point or interval realizations.
    #[command(subcommand)]
    Realize(RealizeCommand),
    /// Decide membership of a pseudomonomial in the neural ideal of a code.
    Member {
        pmfile: PathBuf,
        codefile: PathBuf,
        /// Also print the indicator decomposition.
        #[arg(long)]
        certificate: bool,
    },
}

#[derive(Subcommand, Debug)]
enum HomCommand {
    /// Print VALID or the violated condition.
    Check { homfile: PathBuf },
    /// Apply to a generator file (header `n=`) or a code file.
    Apply { homfile: PathBuf, target: PathBuf },
    /// Print the flip, permutation and restriction components.
    Decompose { homfile: PathBuf },
    /// Compose hom files given in application order.
    #[command(arg_required_else_help = true)]
    Compose {
        #[arg(required = true)]
        homfiles: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Apply one basic transformation to a code file.
    Transform {
        codefile: PathBuf,
        #[command(flatten)]
        descriptor: Descriptor,
    },
}

#[derive(Subcommand, Debug)]
enum RealizeCommand {
    /// Print the code of a realization.
    Code { file: PathBuf },
    /// Transform a realization and print the code of the result.
    Transform {
        file: PathBuf,
        #[command(flatten)]
        descriptor: Descriptor,
        /// Write the transformed realization here.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Also report whether the result is convex (interval form only).
        #[arg(long)]
        check_convex: bool,
    },
    /// Print CONVEX or NONCONVEX (interval form only).
    Convexity { file: PathBuf },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Descriptor {
    /// Permutation as space-separated images, e.g. "2 1".
    #[arg(long, value_name = "IMAGES")]
    permute: Option<String>,
    /// Flip bit i.
    #[arg(long, value_name = "I")]
    flip: Option<usize>,
    /// Restrict to (m, m').
    #[arg(long, num_args = 2, value_names = ["M", "MP"])]
    restrict: Option<Vec<usize>>,
}

enum Failure {
    Parse(String),
    Resource(String),
    Semantic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Semantic(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Resource(m) | Failure::Semantic(m) => m,
        }
    }
}

/// Library errors tagged with the file they came from.
fn lib_failure(source: Option<&Path>, err: Error) -> Failure {
    let prefix = source.map(|p| format!("{}: ", p.display())).unwrap_or_default();
    let message = format!("{prefix}{err}");
    match err {
        Error::Parse { .. } => Failure::Parse(message),
        Error::AmbientTooLarge { .. } => Failure::Resource(message),
        _ => Failure::Semantic(message),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        lib_failure(None, err)
    }
}

type Outcome = Result<Output, Failure>;

/// Text for stdout plus the exit code of a completed command.
struct Output {
    stdout: String,
    code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: neural_ideals::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| lib_failure(Some(path), e))
}

fn warn(msg: impl AsRef<str>) {
    eprintln!("warning: {}", msg.as_ref());
}

fn load_code(path: &Path, n: Option<usize>) -> Result<Code, Failure> {
    let parsed = with_path(path, text::parse_code(&read(path)?, n))?;
    for line in parsed.duplicates {
        warn(format!("{}: line {line}: duplicate codeword dropped", path.display()));
    }
    Ok(parsed.code)
}

fn load_hom(path: &Path) -> Result<NipHom, Failure> {
    let raw = with_path(path, text::parse_hom(&read(path)?))?;
    raw.validate()
        .map_err(|e| Failure::Semantic(format!("{}: {}", path.display(), violation(&e))))
}

fn load_realization(path: &Path) -> Result<Realization, Failure> {
    with_path(path, text::parse_realization(&read(path)?))
}

/// The diagnostic line for a rejected hom.
fn violation(err: &Error) -> String {
    let vars = |v: &[usize]| v.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(", ");
    match err {
        Error::NonLinearImage { variable } => format!("NONLINEAR IMAGE at x{variable}"),
        Error::DuplicateTarget { target, sources } => {
            format!("DUPLICATE TARGET x{target} from {}", vars(sources))
        }
        Error::MissedTarget { target } => format!("MISSED TARGET x{target}"),
        Error::IndexOutOfRange { index, n } => {
            format!("TARGET OUT OF RANGE x{index} (m={n})")
        }
        other => other.to_string(),
    }
}

fn join_indices(v: &[usize]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn render_pms<'a>(format: Format, pms: impl IntoIterator<Item = &'a Pseudomonomial>) -> String {
    pms.into_iter().fold(String::new(), |mut out, f| {
        let _ = match format {
            Format::Text => writeln!(out, "{f}"),
            Format::Tsv => writeln!(out, "{f}\t{}\t{}", join_indices(&f.sigma()), join_indices(&f.tau())),
        };
        out
    })
}

fn render_code(format: Format, code: &Code) -> String {
    match format {
        Format::Text => text::write_code(code),
        Format::Tsv => code.iter().fold(String::new(), |mut out, w: &Codeword| {
            let _ = writeln!(out, "{w}\t{}", join_indices(&w.support()));
            out
        }),
    }
}

fn descriptor_transform(d: &Descriptor) -> Result<Transform, Failure> {
    if let Some(images) = &d.permute {
        let images = images
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Failure::Parse(format!("--permute: bad image {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Transform::Permute(Permutation::new(images)?));
    }
    if let Some(i) = d.flip {
        return Ok(Transform::Flip(i));
    }
    match d.restrict.as_deref() {
        Some(&[m, mp]) => Ok(Transform::Restrict { m, mp }),
        _ => Err(Failure::Parse("expected one of --permute, --flip, --restrict".into())),
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Cf { codefile } => {
            let code = load_code(codefile, cli.n)?;
            let cf = NeuralIdeal::from_code(code).canonical_form_bounded(cli.max_n)?;
            Ok(Output::ok(render_pms(format, cf.iter())))
        }
        Command::Gens { codefile } => {
            let code = load_code(codefile, cli.n)?;
            let gens = NeuralIdeal::from_code(code).generators()?;
            let out = match format {
                Format::Text => text::write_generators(&gens),
                Format::Tsv => format!("n\t{}\n{}", gens.n(), render_pms(format, gens.gens())),
            };
            Ok(Output::ok(out))
        }
        Command::CodeOfGens { genfile } => {
            let gens = with_path(genfile, text::parse_generators(&read(genfile)?))?;
            Ok(Output::ok(render_code(format, &gens.code()?)))
        }
        Command::Hom(cmd) => run_hom(cli, cmd),
        Command::Code(CodeCommand::Transform {
            codefile,
            descriptor,
        }) => {
            let code = load_code(codefile, cli.n)?;
            let t = descriptor_transform(descriptor)?;
            Ok(Output::ok(render_code(format, &t.apply_code(&code)?)))
        }
        Command::Realize(cmd) => run_realize(cli, cmd),
        Command::Member {
            pmfile,
            codefile,
            certificate,
        } => {
            let code = load_code(codefile, cli.n)?;
            let n = code.n();
            let f = with_path(pmfile, text::parse_pm_file(&read(pmfile)?, Some(n)))?;
            let ideal = NeuralIdeal::from_code(code);
            let mut out = String::new();
            match ideal.witness(&f)? {
                None => {
                    out.push_str("MEMBER\n");
                    if *certificate {
                        let cert = ideal.membership_certificate(&f)?;
                        let _ = match format {
                            Format::Text => writeln!(out, "{cert}"),
                            Format::Tsv => writeln!(out, "certificate\t{cert}"),
                        };
                    }
                }
                Some(w) => {
                    let _ = match format {
                        Format::Text => writeln!(out, "NOT MEMBER\nwitness {w}"),
                        Format::Tsv => writeln!(out, "NOT MEMBER\t{w}"),
                    };
                }
            }
            Ok(Output::ok(out))
        }
    }
}

fn run_hom(cli: &Cli, cmd: &HomCommand) -> Outcome {
    let format = cli.format;
    match cmd {
        HomCommand::Check { homfile } => {
            let raw = with_path(homfile, text::parse_hom(&read(homfile)?))?;
            Ok(match raw.validate() {
                Ok(_) => Output::ok("VALID\n".into()),
                Err(e) => {
                    let line = match format {
                        Format::Text => violation(&e),
                        Format::Tsv => violation(&e).replacen(" at ", "\t", 1),
                    };
                    Output {
                        stdout: format!("{line}\n"),
                        code: 4,
                    }
                }
            })
        }
        HomCommand::Apply { homfile, target } => {
            let phi = load_hom(homfile)?;
            let content = read(target)?;
            if text::looks_like_generators(&content) {
                let gens = with_path(target, text::parse_generators(&content))?;
                let (images, zeros) = phi.apply_generators(&gens)?;
                for k in zeros {
                    eprintln!("zero image: generator {} ({}) maps to 0", k + 1, gens.gens()[k]);
                }
                Ok(Output::ok(render_pms(format, images.gens())))
            } else {
                let parsed = with_path(target, text::parse_code(&content, cli.n.or(Some(phi.n()))))?;
                for line in parsed.duplicates {
                    warn(format!("{}: line {line}: duplicate codeword dropped", target.display()));
                }
                Ok(Output::ok(render_code(format, &phi.apply_code(&parsed.code)?)))
            }
        }
        HomCommand::Decompose { homfile } => {
            let phi = load_hom(homfile)?;
            let d = phi.decompose();
            if let Some(dir) = &cli.emit_parts {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Semantic(format!("{}: {e}", dir.display())))?;
                for (name, part) in [("delta", d.delta()), ("lambda", d.lambda()), ("omega", d.omega())] {
                    let path = dir.join(format!("{name}.hom"));
                    fs::write(&path, text::write_hom(&part))
                        .map_err(|e| Failure::Semantic(format!("{}: {e}", path.display())))?;
                }
            }
            let out = match format {
                Format::Text => format!("{d}\n"),
                Format::Tsv => {
                    let (m, mp) = d.restriction();
                    let mut out = format!("delta\t{}\n", join_indices(&d.flips()));
                    for (i, j) in d.perm().images().iter().enumerate() {
                        let _ = writeln!(out, "lambda\t{}\t{j}", i + 1);
                    }
                    let _ = writeln!(out, "omega\t{m}\t{mp}");
                    out
                }
            };
            Ok(Output::ok(out))
        }
        HomCommand::Compose { homfiles } => {
            let mut maps = homfiles.iter().map(|p| load_hom(p));
            let mut acc = maps.next().expect("clap requires one file")?;
            for next in maps {
                acc = next?.compose(&acc)?;
            }
            Ok(Output::ok(text::write_hom(&acc)))
        }
    }
}

fn convexity_line(convex: bool) -> String {
    if convex { "CONVEX\n" } else { "NONCONVEX\n" }.to_string()
}

fn interval_only(file: &Path) -> Failure {
    Failure::Semantic(format!(
        "{}: convexity is only defined for interval realizations",
        file.display()
    ))
}

fn run_realize(cli: &Cli, cmd: &RealizeCommand) -> Outcome {
    let format = cli.format;
    match cmd {
        RealizeCommand::Code { file } => {
            let r = load_realization(file)?;
            Ok(Output::ok(render_code(format, &r.code())))
        }
        RealizeCommand::Transform {
            file,
            descriptor,
            output,
            check_convex,
        } => {
            let r = load_realization(file)?;
            let t = descriptor_transform(descriptor)?;
            if *check_convex && matches!(r, Realization::Points(_)) {
                return Err(interval_only(file));
            }
            let result = match &r {
                Realization::Points(c) => Realization::Points(with_path(file, c.transform(&t))?),
                Realization::Intervals(c) => {
                    Realization::Intervals(with_path(file, c.transform(&t))?)
                }
            };
            if let Some(path) = output {
                fs::write(path, text::write_realization(&result))
                    .map_err(|e| Failure::Semantic(format!("{}: {e}", path.display())))?;
            }
            let mut out = render_code(format, &result.code());
            if let (true, Realization::Intervals(c)) = (*check_convex, &result) {
                out.push_str(&convexity_line(c.is_convex()));
            }
            Ok(Output::ok(out))
        }
        RealizeCommand::Convexity { file } => match load_realization(file)? {
            Realization::Intervals(c) => Ok(Output::ok(convexity_line(c.is_convex()))),
            Realization::Points(_) => Err(interval_only(file)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
