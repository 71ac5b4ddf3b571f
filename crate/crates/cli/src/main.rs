use std::io::Write;

fn main() {
    let out = dimscale_cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(out.stdout.as_bytes())
        .expect("stdout");
    std::io::stderr()
        .write_all(out.stderr.as_bytes())
        .expect("stderr");
    std::process::exit(out.code);
}
