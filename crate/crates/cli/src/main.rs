fn main() {
    let out = qhopf_cli::run(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
