//! Writes DOT files for the four spectra drawn as Hasse diagrams.
//!
//! cargo run --example export_figures -- out/
//! dot -Tsvg out/weyl3.dot > weyl3.svg

use std::path::PathBuf;

use bruhatspec::poset::ExportFormat;
use bruhatspec::spectra::{builtin, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    for name in ["weyl3", "horton3", "m2-ext-A3", "m2-ext-affineA2"] {
        let run = run_pipeline(&builtin(name)?)?;
        let path = dir.join(format!("{name}.dot"));
        std::fs::write(&path, run.poset().export(ExportFormat::Dot))?;
        println!("{} ({} nodes)", path.display(), run.poset().len());
    }
    Ok(())
}
