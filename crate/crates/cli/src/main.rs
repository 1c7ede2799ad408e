use clap::Parser;

fn main() {
    let cli = sturm_cli::Cli::parse();
    let code = sturm_cli::run(
        cli,
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
