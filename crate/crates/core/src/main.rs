fn main() {
    std::process::exit(cv_entangle::cli::run(std::env::args_os()));
}
