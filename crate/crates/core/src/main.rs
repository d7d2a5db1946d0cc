use std::io::Write;

fn main() {
    let result = pellab::cli::run(std::env::args_os());
    print!("{}", result.output());
    let mut stderr = std::io::stderr();
    for d in &result.diagnostics {
        let _ = writeln!(stderr, "{d}");
    }
    std::process::exit(result.status.exit_code());
}
