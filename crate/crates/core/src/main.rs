fn main() -> std::process::ExitCode {
    reachlab::cli::main()
}
