fn main() {
    std::process::exit(cdyn_cli::main_with(std::env::args_os()));
}
