fn main() {
    std::process::exit(dualgomory::cli::run_cli(std::env::args_os()));
}
