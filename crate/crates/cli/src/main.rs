use std::io::Write;

fn main() {
    let seed = std::env::var(nestrad_cli::SEED_ENV).ok();
    let out = nestrad_cli::run(std::env::args_os(), seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
