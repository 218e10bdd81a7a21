use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sutured_core::gluing::{compose_iso, self_glue_iso_with, GlueOptions};
use sutured_core::grading::format_rational;
use sutured_core::linalg::SparseMatrix;
use sutured_core::statespace::{ReferenceFormula, StateSpace};
use sutured_core::superalg::GradedIso;
use sutured_core::surface::{parse_surface, ParsedSurface};
use sutured_core::verify::{run_suite, Suite, VerifyOptions};
use sutured_core::{Error, Grading, ParityParams, ParityRule, ShiftParams};

#[derive(Parser)]
#[command(name = "sutured", version, about = "Graded state spaces of sutured surfaces and their gluing isomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an invariant of one surface.
    Compute {
        file: PathBuf,
        what: Quantity,
        #[command(flatten)]
        grading: GradingArgs,
    },
    /// Glue two outgoing intervals of one surface and verify the isomorphism.
    Glue {
        file: PathBuf,
        first: String,
        second: String,
        #[command(flatten)]
        grading: GradingArgs,
        /// Use the opposite orientation for a circle created by the gluing.
        #[arg(long)]
        flip_split_sign: bool,
        /// Also print the matrix of the isomorphism.
        #[arg(long)]
        matrix: bool,
    },
    /// Compose `outer ∘ inner` and verify the isomorphism with the tensor product.
    Compose {
        outer: PathBuf,
        inner: PathBuf,
        #[command(flatten)]
        grading: GradingArgs,
        #[arg(long)]
        matrix: bool,
    },
    /// Run a seeded verification suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_h: usize,
    },
    /// Print closed-form graded dimensions of F_{g,p}.
    Reference {
        genus: u32,
        circles: u32,
        /// Also print the formulas for generic local systems.
        #[arg(long)]
        generic: bool,
        /// Puncture labels for the generic formulas.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        labels: Vec<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    H,
    Delta,
    Pi,
    Superdim,
    Actions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Tensor,
    Half,
}

#[derive(Args)]
struct GradingArgs {
    #[arg(long, value_enum, default_value = "tensor")]
    preset: Preset,
    /// Degree shift parameters `A1,A2,A3,A4` (rationals as n/d).
    #[arg(long)]
    shift: Option<ShiftParams>,
    /// Parity bits `N1,N2,N3,N4`.
    #[arg(long)]
    parity: Option<ParityParams>,
}

impl GradingArgs {
    fn grading(&self) -> Grading {
        let mut g = match self.preset {
            Preset::Tensor => Grading::tensor(),
            Preset::Half => Grading::half(),
        };
        if let Some(shift) = &self.shift {
            g.shift = shift.clone();
            if self.parity.is_none() {
                g.parity = ParityRule::Linear(ParityParams::default());
            }
        }
        if let Some(parity) = self.parity {
            g.parity = ParityRule::Linear(parity);
        }
        g
    }
}

/// A failure with its exit code: 1 for a failed verification, 2 for bad
/// input.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConventionMismatch(_) | Error::TorsionDetected { .. } => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

fn load(path: &Path) -> Result<ParsedSurface, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    parse_surface(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn interval(parsed: &ParsedSurface, name: &str) -> Result<sutured_core::SPlusId, Failure> {
    parsed
        .id_of(name)
        .ok_or_else(|| Failure(2, format!("no S+ component named `{name}`")))
}

fn rank_table(iso: &GradedIso) -> String {
    let mut out = String::from("degree  parity  rank\n");
    for (degree, parity, rank) in &iso.block_ranks {
        let _ = writeln!(out, "{:>6}  {:>6}  {rank:>4}", format_rational(degree), parity);
    }
    out
}

fn dense(m: &SparseMatrix) -> String {
    let mut out = String::new();
    for row in m.to_dense() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
        let _ = writeln!(out, "[{}]", cells.join(" "));
    }
    out
}

fn monomial(s: &StateSpace, i: usize) -> String {
    let mask = s.monomials.mask(i);
    if mask == 0 {
        return "1".into();
    }
    let parts: Vec<String> = (0..s.h()).filter(|b| mask >> b & 1 == 1).map(|b| format!("e{b}")).collect();
    parts.join("^")
}

fn compute(file: &Path, what: Quantity, grading: &Grading) -> Result<String, Failure> {
    let parsed = load(file)?;
    let f = &parsed.surface;
    Ok(match what {
        Quantity::H => format!("{}\n", f.rank_h()),
        Quantity::Delta => format!("{}\n", format_rational(&grading.delta(f))),
        Quantity::Pi => format!("{}\n", grading.pi(f)?),
        Quantity::Superdim => format!("{}\n", StateSpace::build(f, grading)?.graded_superdim()),
        Quantity::Actions => {
            let s = StateSpace::build(f, grading)?;
            let mut out = format!("basis of H1(F, S+):\n{}", s.basis);
            let _ = writeln!(out, "delta {}, pi {}, rank {}", format_rational(&s.delta), s.pi, s.rank());
            for id in f.outgoing_intervals().into_iter().chain(f.incoming_intervals()) {
                let side = if f.is_outgoing(id) { "outgoing" } else { "incoming" };
                let e = s.e_action(id)?;
                let _ = writeln!(out, "E_{} ({side}):", parsed.name_of(id));
                for c in 0..e.matrix.cols() {
                    for &(r, v) in e.matrix.column(c) {
                        let _ = writeln!(out, "  {} -> {v} * {}", monomial(&s, c), monomial(&s, r));
                    }
                }
            }
            out
        }
    })
}

fn glue(
    file: &Path,
    first: &str,
    second: &str,
    grading: &Grading,
    options: &GlueOptions,
    matrix: bool,
) -> Result<String, Failure> {
    let parsed = load(file)?;
    let (i1, i2) = (interval(&parsed, first)?, interval(&parsed, second)?);
    let r = self_glue_iso_with(&parsed.surface, i1, i2, grading, options)?;
    let mut out = String::new();
    let _ = writeln!(out, "case {}", r.glued.case);
    let _ = writeln!(out, "new S- circles {}", r.glued.created_sminus_circles);
    let _ = writeln!(out, "degree shift {}", format_rational(&r.degree_shift));
    let _ = writeln!(out, "parity shift {}", r.parity_shift);
    let _ = writeln!(out, "quotient basis: {}", r.quotient_basis);
    let _ = writeln!(out, "rank {} -> {}", r.source.rank(), r.target.rank());
    out.push_str(&rank_table(&r.iso));
    if matrix {
        out.push_str("matrix (columns: quotient basis, rows: monomials of the glued surface)\n");
        out.push_str(&dense(&r.iso.matrix));
    }
    let _ = write!(out, "glued surface:\n{}", r.glued.surface.to_text());
    Ok(out)
}

fn compose_cmd(outer: &Path, inner: &Path, grading: &Grading, matrix: bool) -> Result<String, Failure> {
    let (fp, f) = (load(outer)?, load(inner)?);
    let r = compose_iso(&fp.surface, &f.surface, grading)?;
    let mut out = String::new();
    let cases: Vec<String> = r.steps.iter().map(|s| s.glued.case.to_string()).collect();
    let _ = writeln!(out, "glued pairs {} (cases: {})", r.steps.len(), cases.join(", "));
    let _ = writeln!(out, "rank {} = {}", r.tensor.module.dim(), r.composite.rank());
    let _ = writeln!(
        out,
        "delta {}, pi {}",
        format_rational(&r.composite.delta),
        r.composite.pi
    );
    out.push_str(&rank_table(&r.iso));
    if matrix {
        out.push_str("matrix (columns: tensor product basis, rows: monomials of the composite)\n");
        out.push_str(&dense(&r.iso.matrix));
    }
    let _ = write!(out, "composite:\n{}", r.composition.surface.to_text());
    Ok(out)
}

fn reference(g: u32, p: u32, generic: bool, labels: &[i64]) -> Result<String, Failure> {
    let mut out = String::new();
    for formula in ReferenceFormula::ALL {
        if formula.is_generic() && !generic {
            continue;
        }
        let value = formula
            .evaluate(g, p, labels)
            .map_or_else(|| "undefined".to_string(), |v| v.to_string());
        let _ = writeln!(out, "{:<24} {value}", formula.name());
    }
    if generic {
        out.push_str("warning: generic formulas describe local systems these state spaces do not model\n");
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Compute { file, what, grading } => compute(&file, what, &grading.grading()),
        Command::Glue {
            file,
            first,
            second,
            grading,
            flip_split_sign,
            matrix,
        } => {
            let options = GlueOptions {
                split_circle_sign: if flip_split_sign { -1 } else { 1 },
            };
            glue(&file, &first, &second, &grading.grading(), &options, matrix)
        }
        Command::Compose {
            outer,
            inner,
            grading,
            matrix,
        } => compose_cmd(&outer, &inner, &grading.grading(), matrix),
        Command::Verify {
            suite,
            seed,
            trials,
            max_h,
        } => {
            let report = run_suite(suite, &VerifyOptions { seed, trials, max_h });
            print!("{}", report.render());
            eprintln!("wall time {:.2} s", report.wall_time.as_secs_f64());
            if report.passed() {
                Ok(String::new())
            } else {
                Err(Failure(1, format!("{} failed", report.suite)))
            }
        }
        Command::Reference {
            genus,
            circles,
            generic,
            labels,
        } => {
            if circles == 0 {
                return Err(Failure(2, "the formulas need at least one boundary circle".into()));
            }
            reference(genus, circles, generic, &labels)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, message)) => {
            eprint!("{message}");
            if !message.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(code)
        }
    }
}
