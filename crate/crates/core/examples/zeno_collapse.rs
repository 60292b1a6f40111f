//! Barrier collapse frequency against gate-timing jitter.
//!
//! Run: `cargo run --release --example zeno_collapse [jitter] [trials] [correlation]`

use chainlab::schemes::zeno::{collapse_frequency_scan, ZenoConfig, ZenoSetup};

fn main() -> chainlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let jitter: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let trials: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let correlation: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let setup = ZenoSetup::reduced_g_sequence(1.0, 20)?;
    let base = ZenoConfig { jitter_stddev: jitter, trials, jitter_correlation: correlation, ..ZenoConfig::default() };
    println!("20 gates, jitter {jitter} (correlation {correlation}), {trials} trials");
    for st in collapse_frequency_scan(&setup, &base, &[0, 4, 2, 1])? {
        let every = if st.collapse_interval == 0 { "end only".to_string() } else { format!("every {}", st.collapse_interval) };
        println!(
            "{every:>9}: P(wrong) = {:.4} ± {:.4}, F = {:.4} ± {:.4}",
            st.wrong_collapse_probability, st.wrong_collapse_stderr, st.mean_fidelity, st.fidelity_stderr
        );
    }
    Ok(())
}
