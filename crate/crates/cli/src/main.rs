use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use geotype::boundary::classify_code;
use geotype::oracle::{cut_lines, oracle_s_refine, realize, svg_diagram};
use geotype::refine::{
    bin_refine, corner_refine, corner_refine_along, s_refine, split_s_boundary, split_u_boundary,
    u_refine, wp_refine,
};
use geotype::render::incidence_dot;
use geotype::report::{codes_report, serialize_chain, serialize_refinement};
use geotype::shift::enumerate_orbits;
use geotype::text::{
    checked, parse_codes, parse_eventual_code, parse_type_prefix, serialize_codes,
    serialize_matrix, serialize_type, ParseError,
};
use geotype::{Error, GeometricType, IncidenceMatrix, PeriodicCode};

#[derive(Parser)]
#[command(
    name = "geotype",
    version,
    about = "Geometric types of Markov partitions: validation, codes and refinements"
)]
struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a type file and list every violated invariant.
    Validate {
        file: PathBuf,
    },
    Invert {
        file: PathBuf,
    },
    Alpha {
        file: PathBuf,
    },
    /// Print the incidence matrix, optionally checking a property.
    Incidence {
        file: PathBuf,
        #[arg(long)]
        check: Option<MatrixCheck>,
    },
    /// List periodic orbits up to the given period.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        max_period: usize,
    },
    Bin {
        file: PathBuf,
    },
    /// Boundary labels, periodic boundary codes and the corner verdict.
    Codes {
        file: PathBuf,
    },
    /// Leaf class of an eventually periodic code `left|middle|right`.
    Classify {
        file: PathBuf,
        #[arg(long)]
        code: String,
    },
    Srefine {
        file: PathBuf,
        #[arg(long)]
        codes: PathBuf,
        /// Drop s-boundary codes instead of failing on them.
        #[arg(long)]
        drop_boundary: bool,
    },
    Urefine {
        file: PathBuf,
        #[arg(long)]
        codes: PathBuf,
        /// Drop u-boundary codes instead of failing on them.
        #[arg(long)]
        drop_boundary: bool,
    },
    Corner {
        file: PathBuf,
        #[arg(long)]
        along: Option<PathBuf>,
    },
    Wp {
        file: PathBuf,
        #[arg(long)]
        max_period: usize,
    },
    /// Run the formula engine and the affine model and compare them.
    OracleCheck {
        file: PathBuf,
        #[arg(long)]
        codes: PathBuf,
    },
    Render {
        file: PathBuf,
        #[arg(long)]
        format: Format,
        /// Cut lines to draw (svg only).
        #[arg(long)]
        codes: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixCheck {
    Binary,
    Mixing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Usage(format!("{}:{e}", path.display()))
}

fn load_type(path: &Path) -> Result<GeometricType, Failure> {
    let text = read(path)?;
    let (data, _) = parse_type_prefix(&text).map_err(|e| parse_failure(path, e))?;
    let violations = data.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidType(violations).into());
    }
    checked(data).map_err(|e| parse_failure(path, e))
}

fn load_codes(path: &Path) -> Result<Vec<PeriodicCode>, Failure> {
    parse_codes(&read(path)?).map_err(|e| parse_failure(path, e))
}

fn note(msg: &str) {
    eprintln!("note: {msg}");
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let text = read(&file)?;
            let (data, _) = parse_type_prefix(&text).map_err(|e| parse_failure(&file, e))?;
            let violations = data.validate();
            if violations.is_empty() {
                Ok("ok\n".into())
            } else {
                let mut out = String::new();
                for v in &violations {
                    out.push_str(&format!("violation: {v}\n"));
                }
                print!("{out}");
                Err(Error::InvalidType(violations).into())
            }
        }
        Command::Invert { file } => Ok(serialize_type(&load_type(&file)?.invert())),
        Command::Alpha { file } => Ok(format!("{}\n", load_type(&file)?.alpha())),
        Command::Incidence { file, check } => {
            let a = IncidenceMatrix::of(&load_type(&file)?);
            let out = serialize_matrix(&a);
            match check {
                None => Ok(out),
                Some(MatrixCheck::Binary) if !a.is_binary() => Err(Error::NonBinary.into()),
                Some(MatrixCheck::Mixing) if !a.is_mixing() => {
                    print!("{out}");
                    Err(Failure::Domain(Error::Inconsistent(
                        "incidence matrix is not mixing".into(),
                    )))
                }
                Some(_) => Ok(out),
            }
        }
        Command::Orbits { file, max_period } => {
            let a = IncidenceMatrix::of(&load_type(&file)?);
            let orbits = enumerate_orbits(&a, max_period)?;
            Ok(serialize_codes(orbits.iter().map(|o| o.canonical())))
        }
        Command::Bin { file } => Ok(serialize_type(&bin_refine(&load_type(&file)?).refined)),
        Command::Codes { file } => Ok(codes_report(&load_type(&file)?)?),
        Command::Classify { file, code } => {
            let t = load_type(&file)?;
            let code = parse_eventual_code(&code)
                .map_err(|e| Failure::Usage(format!("--code: {}", e.message)))?;
            Ok(format!("{}\n", classify_code(&t, &code)?))
        }
        Command::Srefine {
            file,
            codes,
            drop_boundary,
        } => {
            let t = load_type(&file)?;
            let mut w = load_codes(&codes)?;
            if drop_boundary {
                let (keep, dropped) = split_s_boundary(&t, &w)?;
                for c in dropped {
                    note(&format!("dropped s-boundary code {c}"));
                }
                w = keep;
            }
            Ok(serialize_refinement(&s_refine(&t, &w)?))
        }
        Command::Urefine {
            file,
            codes,
            drop_boundary,
        } => {
            let t = load_type(&file)?;
            let mut w = load_codes(&codes)?;
            if drop_boundary {
                let (keep, dropped) = split_u_boundary(&t, &w)?;
                for c in dropped {
                    note(&format!("dropped u-boundary code {c}"));
                }
                w = keep;
            }
            Ok(serialize_refinement(&u_refine(&t, &w)?))
        }
        Command::Corner { file, along } => {
            let t = load_type(&file)?;
            let chain = match along {
                None => corner_refine(&t)?,
                Some(path) => corner_refine_along(&t, &load_codes(&path)?)?,
            };
            Ok(serialize_chain(&chain))
        }
        Command::Wp { file, max_period } => {
            Ok(serialize_chain(&wp_refine(&load_type(&file)?, max_period)?))
        }
        Command::OracleCheck { file, codes } => {
            let t = load_type(&file)?;
            let w = load_codes(&codes)?;
            let formula = s_refine(&t, &w)?;
            let oracle = oracle_s_refine(&t, &w)?;
            let (a, b) = (
                serialize_type(&formula.refined),
                serialize_type(&oracle.refined),
            );
            if a == b && formula.labels == oracle.labels {
                return Ok(format!("{a}AGREE\n"));
            }
            for (n, (x, y)) in a.lines().zip(b.lines()).enumerate() {
                if x != y {
                    eprintln!("line {}: formula `{x}` oracle `{y}`", n + 1);
                }
            }
            if formula.labels != oracle.labels {
                eprintln!("label maps differ");
            }
            Err(Error::Inconsistent("formula and oracle refinements differ".into()).into())
        }
        Command::Render {
            file,
            format,
            codes,
        } => {
            let t = load_type(&file)?;
            match format {
                Format::Dot => Ok(incidence_dot(&IncidenceMatrix::of(&t))),
                Format::Svg => {
                    let model = realize(&t);
                    let cuts = match codes {
                        Some(path) => cut_lines(&model, &load_codes(&path)?)?,
                        None => Vec::new(),
                    };
                    Ok(svg_diagram(&model, &cuts))
                }
            }
        }
    }
}

fn color() -> bool {
    std::env::var("GEOTYPE_COLOR").as_deref() == Ok("1")
}

fn report(label: &str, msg: &str) {
    let mut err = io::stderr();
    if color() {
        let _ = writeln!(err, "\x1b[1;31m{label}\x1b[0m: {msg}");
    } else {
        let _ = writeln!(err, "{label}: {msg}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, out.as_bytes()),
                None => io::stdout().write_all(out.as_bytes()),
            };
            if let Err(e) = written {
                report("error", &e.to_string());
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            report("error", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            report(&format!("error[{}]", e.module()), &e.to_string());
            ExitCode::from(1)
        }
    }
}
