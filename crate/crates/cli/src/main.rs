fn main() {
    std::process::exit(entshare_cli::main_with_args(std::env::args_os()));
}
