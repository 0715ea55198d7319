fn main() {
    let (out, err, code) = bruhat_frattini::cli::execute(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
