use clap::error::ErrorKind;
use clap::Parser;
use sepgraph_cli::{run, Cli, CliError};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SEPGRAPH_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            std::process::exit(0);
        }
        Err(e) => {
            let err = CliError::invalid(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    };
    if let Err(e) = run(cli) {
        log::debug!("{e:?}");
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}
