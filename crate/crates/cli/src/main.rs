use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rees_core::error::Error;
use rees_core::field::{FieldError, FieldSpec, DEFAULT_PRIME};
use rees_core::generators::{GeneratorSet, Provenance};
use rees_core::mubasis::{generate_instance, MuData, SpaceCurve, Triple};
use rees_core::plane_rees::{enumerate_region, PlaneRees};
use rees_core::rees_space::rees_space_generators;
use rees_core::ringmaps::SpaceMaps;
use rees_core::scroll::scroll_generators;
use rees_core::staircase::{psi_count, staircase_min_gens};

mod instance;
mod render;

use instance::Instance;
use render::M2Claim;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) | CliError::Field(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Core(e) => match e {
                Error::Field(_)
                | Error::SpaceMismatch(..)
                | Error::NotHomogeneous(_)
                | Error::ZeroPolynomial
                | Error::DivisorZero
                | Error::BothZero
                | Error::DegreeMismatch { .. }
                | Error::CommonFactor(_)
                | Error::LinearlyDependent
                | Error::DegreeTooSmall(_)
                | Error::GenerationFailed { .. }
                | Error::InvalidParameters(_)
                | Error::BudgetExceeded { .. }
                | Error::Parse(_) => 2,
                Error::CommonFactorInP(_)
                | Error::DecompositionMismatch
                | Error::InternalInconsistency(_)
                | Error::NotInPIdeal(..)
                | Error::NotInPAIdeal(..)
                | Error::SPairNonzero(..)
                | Error::CongruenceFailed(..) => 3,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Svg,
    M2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Space,
    Plane,
}

/// Rees algebras of rational plane curves and their scroll lifts.
#[derive(Debug, Parser)]
#[command(name = "rees-lift", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON instance file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `rational` or a prime such as `32003`.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    mu1: Option<u32>,
    #[arg(long, global = true)]
    mu2: Option<u32>,
    /// Degree of the parametrization.
    #[arg(short = 'd', global = true)]
    d: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// μ-basis, split and the forms α, β of a plane curve.
    Mu,
    /// Minimal generators of the space-curve Rees ideal.
    SpaceGens,
    /// The determinantal family of the plane-curve Rees ideal, plus p.
    PlaneGens,
    /// Minimal generators of the staircase ideal.
    Staircase,
    /// Generators of the scroll ideal.
    Scroll,
    /// The (a,b) region of the determinantal family.
    Region {
        /// Also form the members outside the guaranteed range (needs --input).
        #[arg(long)]
        attempt: bool,
    },
    /// Lifting congruences for every family member.
    LiftCheck,
    /// Random plane curve with the given degree and split.
    GenInstance,
    /// Macaulay2 script checking a generator set against the kernel.
    ExportM2 {
        #[arg(long, value_enum, default_value_t = Side::Space)]
        what: Side,
    },
}

fn load(cli: &Cli) -> Result<Instance, CliError> {
    let path = cli.input.as_ref().ok_or_else(|| CliError::Input("--input FILE is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Instance::parse(&text)
}

fn plane_mu(cli: &Cli) -> Result<MuData, CliError> {
    match load(cli)? {
        Instance::Plane(c) => Ok(MuData::compute(&c)?),
        Instance::Space(_) => Err(CliError::Input("this command needs a plane-curve instance".into())),
    }
}

fn space_curve(cli: &Cli) -> Result<SpaceCurve, CliError> {
    match load(cli)? {
        Instance::Plane(c) => Ok(MuData::compute(&c)?.space_curve()),
        Instance::Space(s) => Ok(s),
    }
}

/// `(d, μ1, μ2)` from the instance file if given, else from the flags.
fn parameters(cli: &Cli) -> Result<(u32, u32, u32), CliError> {
    if cli.input.is_some() {
        let s = space_curve(cli)?;
        return Ok((s.d, s.mu1, s.mu2));
    }
    match (cli.d, cli.mu1, cli.mu2) {
        (Some(d), Some(m1), Some(m2)) => Ok((d, m1, m2)),
        _ => Err(CliError::Input("give --input FILE or all of -d, --mu1, --mu2".into())),
    }
}

fn formats(cli: &Cli, allowed: &[Format]) -> Result<Format, CliError> {
    if allowed.contains(&cli.format) {
        Ok(cli.format)
    } else {
        Err(CliError::Input(format!("--format {:?} is not available here", cli.format).to_lowercase()))
    }
}

fn triple(t: &Triple) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

fn mu_report(m: &MuData) -> String {
    [
        format!("field: {}", m.field),
        format!("d: {}", m.d),
        format!("p: {}", triple(&m.p)),
        format!("q: {}", triple(&m.q)),
        format!("mu: {}", m.mu),
        format!("A: {}", triple(&m.a)),
        format!("B: {}", triple(&m.b)),
        format!("split: ({},{})", m.mu1, m.mu2),
        format!("alpha: {}", m.alpha),
        format!("beta: {}", m.beta),
        String::new(),
    ]
    .join("\n")
}

fn plane_set(pr: &PlaneRees) -> Result<GeneratorSet, CliError> {
    let (family, diagram) = pr.dd_family()?;
    for w in &diagram.warnings {
        eprintln!("warning: {w}");
    }
    let mut set = GeneratorSet::new(pr.tz(), pr.field());
    set.push(Provenance::PForm, pr.maps.p_form().clone());
    set.items.extend(family.items);
    Ok(set)
}

fn space_m2(curve: &SpaceCurve) -> Result<String, CliError> {
    let maps = SpaceMaps::new(curve);
    let set = rees_space_generators(&maps)?;
    Ok(render::m2_script(&set, &maps.phi, &maps.ts, curve.d, M2Claim::Equal))
}

fn plane_m2(m: &MuData) -> Result<String, CliError> {
    let pr = PlaneRees::new(m)?;
    let set = plane_set(&pr)?;
    Ok(render::m2_script(&set, &pr.maps.psi, &pr.maps.space.ts, m.d, M2Claim::Contained))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.cmd {
        Cmd::Mu => {
            formats(cli, &[Format::Text])?;
            Ok(mu_report(&plane_mu(cli)?))
        }
        Cmd::SpaceGens => {
            let curve = space_curve(cli)?;
            match formats(cli, &[Format::Text, Format::M2])? {
                Format::M2 => space_m2(&curve),
                _ => Ok(render::generator_text(&rees_space_generators(&SpaceMaps::new(&curve))?)),
            }
        }
        Cmd::PlaneGens => {
            let m = plane_mu(cli)?;
            match formats(cli, &[Format::Text, Format::M2])? {
                Format::M2 => plane_m2(&m),
                _ => Ok(render::generator_text(&plane_set(&PlaneRees::new(&m)?)?)),
            }
        }
        Cmd::Staircase => {
            formats(cli, &[Format::Text])?;
            let (d, mu1, mu2) = parameters(cli)?;
            let gens = staircase_min_gens(mu1, mu2, d)?;
            let mut out: String = gens.iter().map(|g| format!("({},{},{}) s={}\n", g.v.0, g.v.1, g.v.2, g.s)).collect();
            out.push_str(&format!("psi-count: {}\n", psi_count(&gens)));
            Ok(out)
        }
        Cmd::Scroll => {
            formats(cli, &[Format::Text])?;
            let (mu1, mu2, field) = match (cli.mu1, cli.mu2) {
                (Some(a), Some(b)) if cli.input.is_none() => (a, b, cli.field.unwrap_or(FieldSpec::Rationals)),
                _ => {
                    let s = space_curve(cli)?;
                    (s.mu1, s.mu2, s.field)
                }
            };
            if mu1 > mu2 {
                return Err(CliError::Input(format!("need mu1 <= mu2, got ({mu1},{mu2})")));
            }
            let basis = scroll_generators(mu1, mu2, field);
            let mut set = GeneratorSet::new(&basis.space, field);
            basis.pencils.iter().for_each(|p| set.push(Provenance::Pencil, p.clone()));
            basis.quadrics.iter().for_each(|p| set.push(Provenance::Quadric, p.clone()));
            Ok(render::generator_text(&set))
        }
        Cmd::Region { attempt } => {
            let format = formats(cli, &[Format::Text, Format::Csv, Format::Svg])?;
            let diagram = if *attempt {
                PlaneRees::new(&plane_mu(cli)?)?.dd_family()?.1
            } else {
                let (d, mu1, mu2) = parameters(cli)?;
                enumerate_region(d, mu1, mu2)?
            };
            for w in &diagram.warnings {
                eprintln!("warning: {w}");
            }
            match format {
                Format::Csv => render::region_csv(&diagram),
                Format::Svg => Ok(render::region_svg(&diagram)),
                _ => Ok(render::region_text(&diagram)),
            }
        }
        Cmd::LiftCheck => {
            formats(cli, &[Format::Text])?;
            let pr = PlaneRees::new(&plane_mu(cli)?)?;
            let (family, _) = pr.dd_family()?;
            let report = pr.lift_and_check(&family)?;
            if !report.all_pass() {
                print!("{report}");
                return Err(CliError::Invariant("a lifting congruence failed".into()));
            }
            Ok(format!("{report}all {} members pass\n", report.rows.len()))
        }
        Cmd::GenInstance => {
            formats(cli, &[Format::Text])?;
            let (Some(d), Some(mu1), Some(mu2)) = (cli.d, cli.mu1, cli.mu2) else {
                return Err(CliError::Input("gen-instance needs -d, --mu1 and --mu2".into()));
            };
            let field = match cli.field {
                Some(f) => f,
                None => FieldSpec::prime(DEFAULT_PRIME)?,
            };
            let curve = generate_instance(d, mu1, mu2, field, cli.seed.unwrap_or(0))?;
            Ok(Instance::Plane(curve).to_json())
        }
        Cmd::ExportM2 { what } => {
            formats(cli, &[Format::Text, Format::M2])?;
            match what {
                Side::Space => space_m2(&space_curve(cli)?),
                Side::Plane => plane_m2(&plane_mu(cli)?),
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
