use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bhseq::cli::{self, Command, Outcome, ReportFormat, SequenceFormat};

#[derive(Parser)]
#[command(name = "bhseq", version, about = "Greedy B_h sets: construction, verification, and cross-checks")]
struct Args {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFormatArg {
    Bfile,
    Json,
    Csv,
}

impl From<SeqFormatArg> for SequenceFormat {
    fn from(f: SeqFormatArg) -> Self {
        match f {
            SeqFormatArg::Bfile => SequenceFormat::BFile,
            SeqFormatArg::Json => SequenceFormat::Json,
            SeqFormatArg::Csv => SequenceFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormatArg {
    Text,
    Json,
    Csv,
}

impl From<ReportFormatArg> for ReportFormat {
    fn from(f: ReportFormatArg) -> Self {
        match f {
            ReportFormatArg::Text => ReportFormat::Text,
            ReportFormatArg::Json => ReportFormat::Json,
            ReportFormatArg::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Sub {
    /// Construct the greedy B_h sequence and print or save it.
    /// Indexing starts at offset 0 (the initial term a_0 = 0 is included);
    /// json and csv outputs state the offset explicitly.
    Generate {
        /// Order of the representation bound
        #[arg(long)]
        h: u32,
        /// Number of terms to generate after the initial 0
        #[arg(long, default_value_t = 4)]
        terms: u32,
        /// Output format
        #[arg(long, value_enum, default_value_t = SeqFormatArg::Bfile)]
        format: SeqFormatArg,
        /// Write to this file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads for the candidate scan (1 = sequential)
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Verify that a set read from a file has the B_h property
    Verify {
        /// Order of the representation bound
        #[arg(long)]
        h: u32,
        /// File with one element per line (# starts a comment)
        #[arg(long)]
        set: PathBuf,
    },
    /// Cross-check the fourth greedy term by three routes over a range of h
    Theorem {
        /// Smallest h to check
        #[arg(long, default_value_t = 1)]
        h_min: u32,
        /// Largest h to check
        #[arg(long, default_value_t = 24)]
        h_max: u32,
        /// Report format
        #[arg(long, value_enum, default_value_t = ReportFormatArg::Text)]
        format: ReportFormatArg,
        /// Worker threads across the h range (1 = sequential)
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Search for a collision witness blocking one candidate
    Witness {
        /// Order of the representation bound
        #[arg(long)]
        h: u32,
        /// Candidate value to test against the four-term prefix
        #[arg(long)]
        c: u64,
    },
    /// Print the blocked-candidate interval family and verify its structure
    Lemma1 {
        /// Order of the representation bound
        #[arg(long)]
        h: u32,
    },
    /// Time the greedy scan and report table memory
    Bench {
        /// Order of the representation bound
        #[arg(long)]
        h: u32,
        /// Number of terms to generate
        #[arg(long, default_value_t = 4)]
        terms: u32,
    },
}

impl From<Sub> for Command {
    fn from(sub: Sub) -> Self {
        match sub {
            Sub::Generate { h, terms, format, output, parallel } => Command::Generate {
                h,
                terms,
                format: format.into(),
                output,
                parallel,
            },
            Sub::Verify { h, set } => Command::Verify { h, set },
            Sub::Theorem { h_min, h_max, format, parallel } => Command::Theorem {
                h_min,
                h_max,
                format: format.into(),
                parallel,
            },
            Sub::Witness { h, c } => Command::Witness { h, c },
            Sub::Lemma1 { h } => Command::Lemma1 { h },
            Sub::Bench { h, terms } => Command::Bench { h, terms },
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Outcome { exit_code, stdout, stderr } = cli::dispatch(&args.command.into());
    if !stdout.is_empty() {
        print!("{stdout}");
        let _ = std::io::stdout().flush();
    }
    if !stderr.is_empty() {
        eprint!("{stderr}");
    }
    ExitCode::from(exit_code as u8)
}
