//! Counts of five-dimensional weighted projective spaces by the singularities of the
//! anticanonical polytope and the quasismoothness of its general member.
//!
//! Usage: `cargo run --release --example table1 -- [max_w]` (default 6).

use std::time::Instant;

use toricy::survey::{format_table1, table1};

fn main() -> toricy::Result<()> {
    let max_w = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);
    let start = Instant::now();
    let rows = table1(max_w)?;
    print!("{}", format_table1(&rows));
    eprintln!("{:.1}s", start.elapsed().as_secs_f64());
    Ok(())
}
