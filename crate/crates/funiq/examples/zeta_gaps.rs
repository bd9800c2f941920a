//! Empirical gap statistics of Riemann zeta zero ordinates, and the zero
//! count against its main term.
//!
//! Needs an ordinate table: either run `scripts/fetch_zeta.sh`, point
//! FUNIQ_DATA_DIR at a directory containing `zeros1.txt`, or let the test
//! suite generate `data/zeros1.txt` (`cargo test --test acceptance`).
//!
//! ```bash
//! cargo run --example zeta_gaps [path/to/zeros1.txt]
//! ```

use funiq::density::{ingest_zeta, riemann_von_mangoldt_compare, zeta_gap_stats};
use std::path::PathBuf;

fn table_path() -> Option<PathBuf> {
    if let Some(arg) = std::env::args().nth(1) {
        return Some(PathBuf::from(arg));
    }
    if let Ok(dir) = std::env::var("FUNIQ_DATA_DIR") {
        let p = PathBuf::from(dir).join("zeros1.txt");
        if p.exists() {
            return Some(p);
        }
    }
    let local = PathBuf::from("data/zeros1.txt");
    if local.exists() {
        return Some(local);
    }
    None
}

fn main() -> funiq::Result<()> {
    let Some(path) = table_path() else {
        eprintln!(
            "no ordinate table found; run scripts/fetch_zeta.sh or `cargo test --test acceptance`"
        );
        std::process::exit(2);
    };
    let table = ingest_zeta(&path)?;
    println!("{} ordinates from {}", table.ordinates.len(), path.display());

    let stats = zeta_gap_stats(&table, 40)?;
    println!(
        "normalized gaps (log gamma_j / 4pi) * (gamma_j+1 - gamma_j):\n  min = {:.4}  max = {:.4}  mean = {:.4}",
        stats.min, stats.max, stats.mean
    );
    println!(
        "  density-calibrated mean (log(gamma/2pi)/4pi normalization) = {:.4}",
        stats.mean_density_normalized
    );
    println!(
        "  gaps reach above and below 1/2: {}",
        stats.max > 0.5 && stats.min < 0.5
    );

    let top = *table.ordinates.last().unwrap();
    let heights: Vec<f64> = [100.0, 1000.0, 10_000.0, top.floor()]
        .into_iter()
        .filter(|t| *t <= top)
        .collect();
    println!("zero counts against the (T/2pi) log(T/2pi e) main term:");
    for row in riemann_von_mangoldt_compare(&table, &heights)? {
        println!(
            "  T = {:>8}: N(T) = {:>6}  main = {:>12.3}  residual = {:+.3}",
            row.t, row.count, row.main_term, row.residual
        );
    }
    Ok(())
}
