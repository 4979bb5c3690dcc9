fn main() {
    std::process::exit(consistent_oracle::cli::main_with_args(std::env::args_os()));
}
