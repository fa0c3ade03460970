use clap::Parser;
use pavinglab::{run, Args};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PAVINGLAB_LOG", "warn")).init();
    let args = Args::parse();
    if let Some(jobs) = args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("pavinglab: cannot start {jobs} workers: {e}");
            std::process::exit(1);
        }
    }
    if let Err(e) = run(&args) {
        eprintln!("pavinglab: {e}");
        std::process::exit(e.exit_code());
    }
}
