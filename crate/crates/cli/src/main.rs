use clap::{Args, Parser, Subcommand, ValueEnum};
use monodromy_cli::commands::{cmd_classify, cmd_cover, cmd_corpus, cmd_kodaira, RunOptions};
use monodromy_cli::descriptor::{parse_descriptor, Descriptor};
use monodromy_cli::error::CliError;
use monodromy_cli::report::{OutputFormat, Report};
use std::io::Read as _;

/// Exact classification of finite monodromy: trichotomy labels, local
/// fiber types, and trivializing covers, from JSON descriptors.
#[derive(Parser)]
#[command(name = "monodromy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Args)]
struct IoArgs {
    /// Descriptor path, or "-" for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Report path, or "-" for stdout.
    #[arg(long, default_value = "-")]
    output: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized (but reproducible) splitting steps.
    #[arg(long, default_value_t = 0x00C0_FFEE)]
    seed: u64,
    /// Cap on group-closure enumeration.
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a representation or polarized datum into the trichotomy.
    Classify(IoArgs),
    /// List local fiber types, orders, and eigenvalues of a fibration.
    Kodaira(IoArgs),
    /// Compute the trivializing cover of a fibration and classify it.
    Cover(IoArgs),
    /// Re-run the golden checks for the embedded fixtures.
    Corpus {
        /// Fixture name; omit to run the whole corpus.
        fixture: Option<String>,
        /// Report path, or "-" for stdout.
        #[arg(long, default_value = "-")]
        output: String,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Cap on group-closure enumeration.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
}

fn read_input(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))
}

fn write_output(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {path}: {e}")))
}

fn emit(output: &str, format: OutputFormat, report: &Report, code: i32) -> i32 {
    if let Err(e) = write_output(output, &report.render(format)) {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    code
}

fn run_descriptor_command(
    command: &'static str,
    io: &IoArgs,
    run: impl FnOnce(&Descriptor, &[u8], &RunOptions) -> Result<(Report, i32), CliError>,
) -> i32 {
    let format = OutputFormat::from(io.format);
    let input = match read_input(&io.input) {
        Ok(bytes) => bytes,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let opts = RunOptions {
        seed: io.seed,
        cap: io.cap,
    };
    let outcome = std::str::from_utf8(&input)
        .map_err(|_| CliError::parse("input", "not valid UTF-8"))
        .and_then(parse_descriptor)
        .and_then(|d| run(&d, &input, &opts));
    match outcome {
        Ok((report, code)) => emit(&io.output, format, &report, code),
        Err(e) => {
            eprintln!("error: {e}");
            let report = Report::failure(command, &input, &e);
            emit(&io.output, format, &report, e.exit_code())
        }
    }
}

fn run_corpus_command(fixture: Option<&str>, output: &str, format: OutputFormat, cap: usize) -> i32 {
    match cmd_corpus(fixture, cap) {
        Ok((report, code)) => emit(output, format, &report, code),
        Err(e) => {
            eprintln!("error: {e}");
            let report = Report::failure("corpus", fixture.unwrap_or("").as_bytes(), &e);
            emit(output, format, &report, e.exit_code())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Classify(io) => run_descriptor_command("classify", io, |d, i, o| {
            cmd_classify(d, i, o)
        }),
        Command::Kodaira(io) => {
            run_descriptor_command("kodaira", io, |d, i, _| cmd_kodaira(d, i))
        }
        Command::Cover(io) => {
            run_descriptor_command("cover", io, |d, i, o| cmd_cover(d, i, o))
        }
        Command::Corpus {
            fixture,
            output,
            format,
            cap,
        } => run_corpus_command(fixture.as_deref(), output, (*format).into(), *cap),
    };
    std::process::exit(code);
}
