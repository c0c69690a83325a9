use std::io::Write;

fn main() {
    let out = fpsc_cli::run(std::env::args_os());
    print!("{}", out.report);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
