fn main() {
    std::process::exit(regular_partitions::cli::main_with_args(std::env::args_os()));
}
