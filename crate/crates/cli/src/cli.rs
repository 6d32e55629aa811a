use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use burnside_core::obstruction::{obstruct_4_with, obstruct_p_with, CheckOptions, Overall};
use burnside_core::oracle::{enumerate_colorings, naive_expand};
use burnside_core::{
    coloring_rank, magnus, parse_word, BraidWord, Error, GroupWord, ObstructionReport,
    Presentation, Sequential, DEFAULT_MAX_TERMS,
};
use clap::{Args, Parser, Subcommand};

use crate::format::{load_braid, load_presentation, PresentationFile};
use crate::parallel::Parallel;
use crate::report::{render_report, to_json, ColoringJson, ReportJson, SeriesJson};

pub const EXIT_NO_OBSTRUCTION: i32 = 0;
pub const EXIT_OBSTRUCTED: i32 = 10;
pub const EXIT_INAPPLICABLE: i32 = 11;

#[derive(Debug, Parser)]
#[command(
    name = "burnside",
    version,
    about = "Core group presentations, Magnus expansions mod p, and p-move / 4-move obstructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the core group presentation of a braid closure as JSON.
    Present(PresentArgs),
    /// Expand a word (or one relator) into a truncated power series mod p.
    Expand(ExpandArgs),
    /// Order of the Z/p coloring group.
    Color(ColorArgs),
    /// p-move obstruction. Exit code 0 = no obstruction, 10 = obstructed, 11 = inapplicable.
    Obstruct(ObstructArgs),
    /// 4-move obstruction, same exit codes as `obstruct`.
    Fourmove(FourMoveArgs),
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct InputArgs {
    /// Braid word, e.g. "(1 2 3 4)^10"; negative letters are inverse crossings, vK virtual.
    #[arg(long, requires = "strands")]
    pub braid: Option<String>,
    /// TOML file with `strands` and `word`.
    #[arg(long)]
    pub braid_file: Option<PathBuf>,
    /// JSON presentation file: {"generators": m, "relators": [[1, -2, ...], ...]}.
    #[arg(long)]
    pub relators: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Cap on stored series terms per relator expansion.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    /// Only check vanishing up to this degree (can prove obstruction, never a pass).
    #[arg(long)]
    pub screen_degree: Option<usize>,
    /// Check relators one after another instead of in parallel.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub strands: Option<usize>,
    /// One generator per arc of the closed diagram, one relator per crossing.
    #[arg(long)]
    pub arc_level: bool,
    /// Print `<x1, ... | r1, ...>` instead of JSON.
    #[arg(long)]
    pub words: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Word such as "x1 x2^-1 x3" or "1 -2 3".
    #[arg(long, conflicts_with_all = ["braid", "braid_file", "relators"])]
    pub word: Option<String>,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub strands: Option<usize>,
    /// 1-based relator index when expanding from a presentation.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long)]
    pub p: u32,
    /// Truncation degree, default p.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub json: bool,
    /// Cross-check against the naive expansion.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub strands: Option<usize>,
    #[arg(long)]
    pub p: u32,
    /// Use the arc-level presentation of a braid closure.
    #[arg(long)]
    pub arc_level: bool,
    #[arg(long)]
    pub json: bool,
    /// Cross-check by enumerating all assignments.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub strands: Option<usize>,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub json: bool,
    /// Cross-check the coloring precondition by enumeration.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub check: CheckArgs,
}

#[derive(Debug, Args)]
pub struct FourMoveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub strands: Option<usize>,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub check: CheckArgs,
}

enum Input {
    Braid(BraidWord),
    Relators(Presentation),
}

impl Input {
    fn resolve(args: &InputArgs, strands: Option<usize>) -> Result<Option<Self>> {
        if let Some(text) = &args.braid {
            let strands = strands.context("--braid needs --strands")?;
            return Ok(Some(Self::Braid(
                BraidWord::parse(text, strands).context("invalid braid")?,
            )));
        }
        if let Some(path) = &args.braid_file {
            return Ok(Some(Self::Braid(load_braid(path)?)));
        }
        if let Some(path) = &args.relators {
            return Ok(Some(Self::Relators(load_presentation(path)?)));
        }
        Ok(None)
    }

    fn require(args: &InputArgs, strands: Option<usize>) -> Result<Self> {
        Self::resolve(args, strands)?
            .context("one of --braid/--strands, --braid-file or --relators is required")
    }

    fn presentation(&self, arc_level: bool) -> Presentation {
        match (self, arc_level) {
            (Self::Braid(b), false) => b.closure_presentation(),
            (Self::Braid(b), true) => b.arc_level_presentation(),
            (Self::Relators(pr), _) => pr.clone(),
        }
    }
}

fn options(args: &CheckArgs) -> CheckOptions {
    CheckOptions {
        max_terms: args.max_terms,
        screen_degree: args.screen_degree,
    }
}

fn exit_code(report: &ObstructionReport) -> i32 {
    match report.overall {
        Overall::NoObstruction => EXIT_NO_OBSTRUCTION,
        Overall::Obstructed => EXIT_OBSTRUCTED,
        Overall::Inapplicable => EXIT_INAPPLICABLE,
    }
}

/// Runs one command, writing its output to `out`; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Present(args) => present(&args, out),
        Command::Expand(args) => expand(&args, out),
        Command::Color(args) => color(&args, out),
        Command::Obstruct(args) => obstruct(&args, out),
        Command::Fourmove(args) => fourmove(&args, out),
    }
}

fn present(args: &PresentArgs, out: &mut dyn Write) -> Result<i32> {
    let pr = Input::require(&args.input, args.strands)?.presentation(args.arc_level);
    if args.words {
        writeln!(out, "{pr}")?;
    } else {
        out.write_all(
            PresentationFile::from_presentation(&pr)
                .to_json_pretty()
                .as_bytes(),
        )?;
    }
    Ok(0)
}

fn expand(args: &ExpandArgs, out: &mut dyn Write) -> Result<i32> {
    let word: GroupWord = match (&args.word, Input::resolve(&args.input, args.strands)?) {
        (Some(text), _) => parse_word(text).context("invalid word")?,
        (None, Some(input)) => {
            let pr = input.presentation(false);
            let index = args
                .index
                .context("--index is required with a presentation")?;
            pr.relators()
                .get(index.wrapping_sub(1))
                .cloned()
                .with_context(|| {
                    format!(
                        "relator {index} does not exist ({} relators)",
                        pr.relators().len()
                    )
                })?
        }
        (None, None) => {
            bail!("one of --word, --braid/--strands, --braid-file or --relators is required")
        }
    };
    let degree = args.degree.unwrap_or(args.p as usize);
    let series = magnus::expand_capped(&word, args.p, degree, args.max_terms)?;

    let oracle = if args.verify {
        match naive_expand(&word, args.p, degree) {
            Ok(naive) => Some(Ok(naive == series)),
            Err(Error::OracleGuard(reason)) => Some(Err(reason)),
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    if args.json {
        let mut json = SeriesJson::new(&series);
        json.oracle_agrees = oracle.as_ref().and_then(|o| o.as_ref().ok().copied());
        out.write_all(to_json(&json).as_bytes())?;
    } else {
        writeln!(out, "{series}")?;
        match &oracle {
            Some(Ok(true)) => writeln!(out, "oracle: agrees")?,
            Some(Ok(false)) => writeln!(out, "oracle: DISAGREES")?,
            Some(Err(reason)) => writeln!(out, "oracle: skipped ({reason})")?,
            None => {}
        }
    }
    if let Some(Ok(false)) = oracle {
        bail!("naive expansion disagrees with the incremental expansion");
    }
    Ok(0)
}

fn color(args: &ColorArgs, out: &mut dyn Write) -> Result<i32> {
    let pr = Input::require(&args.input, args.strands)?.presentation(args.arc_level);
    let rank = coloring_rank(&pr, args.p)?;
    let mut json = ColoringJson::new(args.p, pr.generators(), rank);
    let mut note = None;
    if args.verify {
        match enumerate_colorings(&pr, args.p) {
            Ok(count) => json.enumerated = Some(count),
            Err(Error::OracleGuard(reason)) => note = Some(reason),
            Err(e) => return Err(e.into()),
        }
    }
    if args.json {
        out.write_all(to_json(&json).as_bytes())?;
    } else {
        out.write_all(json.render().as_bytes())?;
        if let Some(count) = json.enumerated {
            writeln!(out, "enumerated: {count}")?;
        }
        if let Some(reason) = note {
            writeln!(out, "oracle: skipped ({reason})")?;
        }
    }
    if let Some(count) = json.enumerated {
        if Some(count) != json.order {
            bail!(
                "enumeration found {count} colorings, rank predicts {:?}",
                json.order
            );
        }
    }
    Ok(0)
}

fn obstruct(args: &ObstructArgs, out: &mut dyn Write) -> Result<i32> {
    let pr = Input::require(&args.input, args.strands)?.presentation(false);
    let opts = options(&args.check);
    let report = if args.check.serial {
        obstruct_p_with(&pr, args.p, &opts, &Sequential)?
    } else {
        obstruct_p_with(&pr, args.p, &opts, &Parallel)?
    };
    emit_report(&report, &pr, args.json, out)?;
    if args.verify {
        verify_precondition(&report, &pr, args.p, args.json, out)?;
    }
    Ok(exit_code(&report))
}

fn fourmove(args: &FourMoveArgs, out: &mut dyn Write) -> Result<i32> {
    let pr = Input::require(&args.input, args.strands)?.presentation(false);
    let opts = options(&args.check);
    let report = if args.check.serial {
        obstruct_4_with(&pr, &opts, &Sequential)?
    } else {
        obstruct_4_with(&pr, &opts, &Parallel)?
    };
    emit_report(&report, &pr, args.json, out)?;
    Ok(exit_code(&report))
}

fn emit_report(
    report: &ObstructionReport,
    pr: &Presentation,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    if json {
        out.write_all(to_json(&ReportJson::new(report)).as_bytes())?;
    } else {
        out.write_all(render_report(report, pr.generators()).as_bytes())?;
    }
    Ok(())
}

fn verify_precondition(
    report: &ObstructionReport,
    pr: &Presentation,
    p: u32,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let count = match enumerate_colorings(pr, p) {
        Ok(count) => count,
        Err(Error::OracleGuard(reason)) => {
            if !json {
                writeln!(out, "oracle: skipped ({reason})")?;
            }
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let full = u64::from(p).pow(pr.generators() as u32);
    let holds = report.overall != Overall::Inapplicable;
    if !json {
        writeln!(out, "oracle: {count} colorings enumerated")?;
    }
    if holds != (count == full) {
        bail!("enumerated {count} colorings, which contradicts the precondition verdict");
    }
    Ok(())
}
