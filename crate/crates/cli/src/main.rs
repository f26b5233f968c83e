fn main() {
    std::process::exit(pulseforge_cli::run(std::env::args_os()));
}
