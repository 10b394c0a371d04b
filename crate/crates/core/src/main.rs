fn main() {
    std::process::exit(advclass_ne::cli::run(std::env::args_os()));
}
