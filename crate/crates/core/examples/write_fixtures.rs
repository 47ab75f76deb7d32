//! Regenerates the JSON files under `fixtures/`.

use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    for (name, doc) in dgcat::fixtures::shipped() {
        let text = doc.to_text();
        std::fs::write(dir.join(name), &text)?;
        println!("{name:32} {:>9} bytes", text.len());
    }
    Ok(())
}
