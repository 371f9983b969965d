//! Regenerates the golden files into a directory (default: a fresh temporary one)
//! and reports which differ from the shipped copies.
//!
//! `cargo run --release --example golden_regen -- [DIR]`

use std::fs;
use std::path::PathBuf;

use cliffverify::catalog::{default_golden_dir, emit_golden_all};

fn main() -> cliffverify::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("cliffverify-golden-{}", std::process::id())));
    let written = emit_golden_all(&dir)?;
    let shipped = default_golden_dir();
    for name in &written {
        let same = fs::read(dir.join(name))? == fs::read(shipped.join(name)).unwrap_or_default();
        println!("{} {name}", if same { "same   " } else { "CHANGED" });
    }
    println!("written to {}", dir.display());
    Ok(())
}
