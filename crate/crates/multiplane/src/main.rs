use std::process::ExitCode;

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic from `head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match multiplane::cli::run(std::env::args()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
