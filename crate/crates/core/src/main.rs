fn main() -> std::process::ExitCode {
    so_center::cli::run(std::env::args_os())
}
