//! Writes fig1..fig4 CSV tables and gnuplot scripts into a directory.
//!
//!     cargo run --release --example reproduce_figures -- out/figures

fn main() -> eqpot::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    for path in eqpot::figures::emit_all(&out)? {
        println!("{}", path.display());
    }
    Ok(())
}
