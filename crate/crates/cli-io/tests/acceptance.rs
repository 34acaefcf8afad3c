use cli_io::suite::{criteria, run_criterion};
use cli_io::Corpus;

fn main() {
    let corpus = Corpus::Bundled;
    let mut failed = 0;
    for (id, _, _) in criteria() {
        let outcome = run_criterion(&corpus, id).expect("every listed criterion runs");
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria().len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
