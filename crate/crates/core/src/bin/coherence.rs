fn main() {
    std::process::exit(coherence::cli::run(std::env::args_os()));
}
