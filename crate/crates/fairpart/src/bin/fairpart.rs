fn main() {
    // Die quietly when stdout closes early (e.g. `fairpart bounds | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(fairpart::cli::run_command(std::env::args_os()));
}
