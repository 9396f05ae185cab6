use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = gpnerve::cli::run(std::env::args_os());
    std::io::stdout().write_all(&out.stdout).ok();
    std::io::stderr().write_all(&out.stderr).ok();
    ExitCode::from(out.code as u8)
}
