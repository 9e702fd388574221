use std::io::Write;

fn main() {
    let out = pdiscrete::cli::run(std::env::args_os(), |k| std::env::var(k).ok());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
