use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args_os()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let report = rosetta_cli::run_command(&args);
    print!("{}", report.stdout());
    eprint!("{}", report.stderr());
    let _ = std::io::stdout().flush();
    std::process::exit(report.exit_code);
}
