fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(holistic_fd::cli::run(&args));
}
