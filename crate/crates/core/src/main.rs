fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(hecke_ip::cli::main())
}
