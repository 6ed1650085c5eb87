use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tonal_ambiguity::output::Format;

mod commands;

#[derive(Parser)]
#[command(name = "tai", version, about = "Tonal ambiguity of pitch-class sets in equal divisions of the octave")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Common {
    /// Number of equal steps in the octave.
    #[arg(long, default_value_t = 12)]
    pub edo: u32,
    /// Output format: csv, json or markdown.
    #[arg(long, default_value = "markdown")]
    pub format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Surviving transpositions of SET that contain COMBO.
    Interpretations {
        set: String,
        combo: String,
        #[command(flatten)]
        common: Common,
    },
    /// Tonal ambiguity index, normalised forms and the per-cardinality profile.
    Tai {
        #[arg(required = true)]
        sets: Vec<String>,
        /// Also report the expected tonic count after this many random draws.
        #[arg(long)]
        draws: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate a published table (t1..t7, t3-scales, appendix, draws).
    Tables {
        which: String,
        /// Family file replacing the built-in scales for t7 and appendix.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Census averaging convention for t6 and t7.
        #[arg(long, default_value = "distinct-class")]
        weighting: String,
        /// Draw count for the draws table.
        #[arg(long, default_value_t = 8)]
        draws: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Expected tonic count as a function of the number of draws.
    Curve {
        sets: Vec<String>,
        /// Sweep every transposition class of this cardinality.
        #[arg(long, value_name = "K")]
        all_tnclasses: Option<usize>,
        #[arg(long, default_value_t = 32)]
        nmax: usize,
        /// Report the area under each curve above this baseline (asymptote, unity, zero).
        #[arg(long)]
        auc_baseline: Option<String>,
        /// Draw range for the area, as START:END.
        #[arg(long)]
        auc_range: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Members of a scale family that contain COMBO.
    Survivors {
        combo: String,
        #[arg(long)]
        family: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match cli.command {
        Command::Interpretations { set, combo, common } => {
            (commands::interpretations(&set, &combo, common), common.format)
        }
        Command::Tai { sets, draws, common } => (commands::tai(&sets, draws, common), common.format),
        Command::Tables { which, family, weighting, draws, common } => (
            commands::tables(&which, family.as_deref(), &weighting, draws, common),
            common.format,
        ),
        Command::Curve { sets, all_tnclasses, nmax, auc_baseline, auc_range, common } => (
            commands::curve(&commands::CurveRequest {
                sets: &sets,
                all_tnclasses,
                nmax,
                auc_baseline: auc_baseline.as_deref(),
                auc_range: auc_range.as_deref(),
                common,
            }),
            common.format,
        ),
        Command::Survivors { combo, family, common } => {
            (commands::survivors(&combo, family.as_deref(), common), common.format)
        }
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.document.render(format));
            if let Some(err) = &outcome.error {
                eprintln!("tai: {err}");
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(err) => {
            eprintln!("tai: {err}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
