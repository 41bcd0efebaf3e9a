//! Braid word files: a strand-count header, then the letters.
//!
//! ```text
//! n=4
//! 2 1 3 2 -3
//! ```
//!
//! Round-trips are bit-exact for canonical files.

use braidtile_core::braid::BraidWord;

pub fn parse_word(text: &str) -> Result<BraidWord, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty word file")?;
    let n = header
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.parse::<u32>().ok())
        .ok_or_else(|| format!("bad header `{header}`, expected n=<strands>"))?;
    let letters = match lines.next() {
        None => Vec::new(),
        Some(line) => {
            let mut out = Vec::new();
            for tok in line.split_whitespace() {
                let l = tok
                    .parse::<i32>()
                    .map_err(|_| format!("bad letter `{tok}`"))?;
                out.push(l);
            }
            out
        }
    };
    if let Some(extra) = lines.next() {
        if !extra.trim().is_empty() {
            return Err(format!("unexpected trailing line `{extra}`"));
        }
    }
    BraidWord::new(n, letters).map_err(|e| e.to_string())
}

pub fn serialize_word(w: &BraidWord) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "n={}", w.strands());
    for (i, l) in w.letters().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{l}");
    }
    out.push('\n');
    out
}
