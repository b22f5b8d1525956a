use std::io::{stderr, stdout, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = stdout().lock();
    let code = entscale_cli::dispatch(std::env::args_os(), &mut out, &mut stderr().lock());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
