fn main() -> std::process::ExitCode {
    frobscan::cli::main()
}
