fn main() {
    std::process::exit(qspeckle_cli::main_with_args(std::env::args_os()));
}
