use clap::Parser;

fn main() {
    // optional worker-parallelism cap
    if let Ok(text) = std::env::var("LWF_THREADS") {
        if let Ok(threads) = text.parse::<usize>() {
            if threads > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .ok();
            }
        }
    }
    let cli = lagwave::cli::Cli::parse();
    std::process::exit(lagwave::cli::run(cli));
}
