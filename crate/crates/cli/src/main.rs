use clap::Parser;

fn main() {
    let cli = hopfq_cli::Cli::parse();
    let code = hopfq_cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
