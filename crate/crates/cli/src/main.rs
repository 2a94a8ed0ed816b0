use std::io::Write;

fn main() {
    let response = dwpf_cli::run(std::env::args_os());
    print!("{}", response.stdout);
    eprint!("{}", response.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(response.code);
}
