fn main() {
    std::process::exit(trinomia_cli::main_with_args(std::env::args_os()));
}
