use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sequent_trainer::feedback::Catalogs;
use sequent_trainer::service::cli::{self, ExportFormat, Outcome};
use sequent_trainer::service::http::{serve, ServerConfig};

#[derive(Parser)]
#[command(name = "seqtrainer", version, about = "Sequent calculus proof checker and tutoring server")]
struct Args {
    /// Message locale.
    #[arg(long, global = true, env = "SEQTRAIN_LOCALE", default_value = "en")]
    locale: String,
    /// Directory of additional `<locale>.txt` message catalogs.
    #[arg(long, global = true)]
    catalogs: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file of sequents, one per line.
    Check { file: PathBuf },
    /// Replay a proof file and report every rejected step and open goal.
    Verify { file: PathBuf },
    /// Render a proof file as text or SVG.
    Export {
        file: PathBuf,
        #[arg(long, default_value = "text", value_parser = clap::builder::PossibleValuesParser::new(["text", "svg"]))]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Where sessions are persisted; in memory only when omitted.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
}

fn emit(o: Outcome) -> ExitCode {
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    ExitCode::from(o.code as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let catalogs: &'static Catalogs = match &args.catalogs {
        Some(dir) => match Catalogs::from_dir(dir) {
            Ok(c) => Box::leak(Box::new(c)),
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(cli::EXIT_IO as u8);
            }
        },
        None => Catalogs::shipped(),
    };
    match args.command {
        Command::Check { file } => emit(cli::check(&file)),
        Command::Verify { file } => emit(cli::verify_file(&file, catalogs, &args.locale)),
        Command::Export { file, format, out } => {
            let format: ExportFormat = format.parse().expect("restricted by clap");
            emit(cli::export(&file, format, out.as_deref()))
        }
        Command::Serve { port, host, data_dir } => {
            let config = ServerConfig { addr: SocketAddr::new(host, port), data_dir, locale: args.locale, catalogs };
            let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
            match rt.block_on(serve(config)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("serve: {e}");
                    ExitCode::from(cli::EXIT_IO as u8)
                }
            }
        }
    }
}
