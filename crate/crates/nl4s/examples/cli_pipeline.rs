// Drives the command-line runner in-process: ground state, a short run, and a
// concentration scan of its final snapshot.

use std::path::Path;

use nl4s::cli::run;

fn nl4s(out: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["nl4s".to_string(), "--out".into(), out.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

/// Exit codes of the three invocations.
pub fn run_example() -> Vec<i32> {
    let root = std::env::temp_dir().join(format!("nl4s-cli-example-{}", std::process::id()));
    let gs = root.join("gs");
    let ev = root.join("evolve");
    let conc = root.join("conc");
    let snap = ev.join("final.nl4s");
    let codes = vec![
        nl4s(&gs, &["groundstate", "--equation", "sobolev", "-d", "1", "-a", "10", "-L", "80", "-N", "1024"]),
        nl4s(
            &ev,
            &["evolve", "-d", "1", "-a", "10", "-L", "40", "-N", "256", "--amplitude", "0.8", "--width", "1", "--t-end", "0.1"],
        ),
        nl4s(&conc, &["concentration", "--snapshot", snap.to_str().unwrap(), "--gamma", "0.1", "-r", "1.5"]),
    ];
    let _ = std::fs::remove_dir_all(&root);
    codes
}

fn main() {
    let codes = run_example();
    std::process::exit(codes.iter().copied().find(|&c| c != 0).unwrap_or(0));
}
