//! Driving the command line in-process.

use adelic_orbit::cli::run;

fn main() {
    let point = r#"{"r":{"global":"0"},"a":"unit"}"#;
    let calls: [&[&str]; 5] = [
        &["--field", "d=-5", "classgroup"],
        &["--field", "Q", "stabilizer", "--point", point],
        &["--field", "Q", "witness"],
        &["--field", "d=-5", "cofactor", "--primes", "P2", "--exps", "1"],
        &["--field", "Q", "stabilizer", "--point", "{}"],
    ];
    for args in calls {
        let out = run(std::iter::once("adelic-orbit").chain(args.iter().copied()));
        println!("$ adelic-orbit {}\n[{}] {}", args.join(" "), out.code, out.stdout);
    }
}
