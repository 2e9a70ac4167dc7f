fn main() {
    std::process::exit(vortexq_cli::run(std::env::args_os()));
}
