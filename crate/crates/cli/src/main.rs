use clap::Parser;
use fourdb_cli::{commands, exit_code, Cli};
use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the parse-error code
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match commands::run(cli, &mut out, &mut io::stderr()) {
        Ok(code) => code,
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
