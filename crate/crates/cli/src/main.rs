use std::io;

fn main() {
    let env_tol = std::env::var(apollonius_cli::TOL_ENV).ok();
    let code = apollonius_cli::run(
        std::env::args_os(),
        env_tol.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
