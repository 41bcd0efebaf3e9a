//! The tiling document format.
//!
//! Line-oriented, one record per line, `#` comments allowed:
//!
//! ```text
//! tiling v1
//! braid_index 4
//! trivial_discs 0
//! vertex 1 rank 0 parity +
//! point 5 component 0 rank 0
//! tile 11 kind aa sign + theta 0 vertices 2 1 endpoints 9 10
//! ```
//!
//! Serialization is canonical (ids ascending), so parse-then-serialize
//! canonicalizes and serialize-then-parse is the identity.

use std::fmt;

use braidtile_core::error::BuildError;
use braidtile_core::tiling::{AxisVertex, BoundaryPoint, Sign, Tile, TileKind, Tiling};

pub const FORMAT_VERSION: u32 = 1;

/// Raw document mirror of a tiling, before structural checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingDocument {
    pub format_version: u32,
    pub braid_index: u32,
    pub trivial_discs: u32,
    pub vertices: Vec<AxisVertex>,
    pub points: Vec<BoundaryPoint>,
    pub tiles: Vec<Tile>,
}

/// Parse failure with its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn parse_u32(line: usize, field: &str, tok: Option<&str>) -> Result<u32, FormatError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {field}")))?;
    tok.parse::<u32>().map_err(|_| {
        err(
            line,
            format!("{field}: expected an unsigned integer, got `{tok}`"),
        )
    })
}

fn parse_sign(line: usize, field: &str, tok: Option<&str>) -> Result<Sign, FormatError> {
    match tok {
        Some("+") => Ok(Sign::Plus),
        Some("-") => Ok(Sign::Minus),
        Some(other) => Err(err(
            line,
            format!("{field}: expected + or -, got `{other}`"),
        )),
        None => Err(err(line, format!("missing {field}"))),
    }
}

fn expect_keyword(line: usize, tok: Option<&str>, word: &str) -> Result<(), FormatError> {
    match tok {
        Some(t) if t == word => Ok(()),
        Some(t) => Err(err(line, format!("expected `{word}`, got `{t}`"))),
        None => Err(err(line, format!("expected `{word}`"))),
    }
}

fn parse_kind(line: usize, tok: Option<&str>) -> Result<TileKind, FormatError> {
    match tok {
        Some("aa") => Ok(TileKind::Aa),
        Some("ab") => Ok(TileKind::Ab),
        Some("bb") => Ok(TileKind::Bb),
        Some("bc") => Ok(TileKind::Bc),
        Some("cc") => Ok(TileKind::Cc),
        Some(other) => Err(err(line, format!("unknown tile kind `{other}`"))),
        None => Err(err(line, "missing tile kind")),
    }
}

/// Parse the document syntax; the structural checks run in
/// [`TilingDocument::into_tiling`].
pub fn parse_document(text: &str) -> Result<TilingDocument, FormatError> {
    let mut header = false;
    let mut braid_index: Option<u32> = None;
    let mut trivial_discs: u32 = 0;
    let mut vertices = Vec::new();
    let mut points = Vec::new();
    let mut tiles = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "tiling" => {
                let v = toks
                    .next()
                    .ok_or_else(|| err(line_no, "missing format version"))?;
                let v = v
                    .strip_prefix('v')
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or_else(|| err(line_no, format!("bad format version `{v}`")))?;
                if v != FORMAT_VERSION {
                    return Err(err(line_no, format!("unsupported format version {v}")));
                }
                header = true;
            }
            "braid_index" => braid_index = Some(parse_u32(line_no, "braid_index", toks.next())?),
            "trivial_discs" => {
                trivial_discs = parse_u32(line_no, "trivial_discs", toks.next())?;
            }
            "vertex" => {
                let id = parse_u32(line_no, "vertex id", toks.next())?;
                expect_keyword(line_no, toks.next(), "rank")?;
                let axis_rank = parse_u32(line_no, "vertex rank", toks.next())?;
                expect_keyword(line_no, toks.next(), "parity")?;
                let parity = parse_sign(line_no, "vertex parity", toks.next())?;
                vertices.push(AxisVertex {
                    id: id.into(),
                    axis_rank,
                    parity,
                });
            }
            "point" => {
                let id = parse_u32(line_no, "point id", toks.next())?;
                expect_keyword(line_no, toks.next(), "component")?;
                let component = parse_u32(line_no, "point component", toks.next())?;
                expect_keyword(line_no, toks.next(), "rank")?;
                let link_rank = parse_u32(line_no, "point rank", toks.next())?;
                points.push(BoundaryPoint {
                    id: id.into(),
                    component,
                    link_rank,
                });
            }
            "tile" => {
                let id = parse_u32(line_no, "tile id", toks.next())?;
                expect_keyword(line_no, toks.next(), "kind")?;
                let kind = parse_kind(line_no, toks.next())?;
                expect_keyword(line_no, toks.next(), "sign")?;
                let sign = parse_sign(line_no, "tile sign", toks.next())?;
                expect_keyword(line_no, toks.next(), "theta")?;
                let theta_rank = parse_u32(line_no, "tile theta", toks.next())?;
                expect_keyword(line_no, toks.next(), "vertices")?;
                let rest: Vec<&str> = toks.collect();
                let split = rest
                    .iter()
                    .position(|t| *t == "endpoints")
                    .ok_or_else(|| err(line_no, "missing `endpoints`"))?;
                let mut vs = Vec::new();
                for tok in &rest[..split] {
                    vs.push(parse_u32(line_no, "tile vertex", Some(tok))?.into());
                }
                let mut es = Vec::new();
                for tok in &rest[split + 1..] {
                    es.push(parse_u32(line_no, "tile endpoint", Some(tok))?.into());
                }
                tiles.push(Tile {
                    id: id.into(),
                    kind,
                    sign,
                    theta_rank,
                    vertices: vs,
                    endpoints: es,
                });
            }
            other => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
    }

    if !header {
        return Err(err(1, "missing `tiling v1` header"));
    }
    let braid_index = braid_index.ok_or_else(|| err(1, "missing braid_index"))?;
    Ok(TilingDocument {
        format_version: FORMAT_VERSION,
        braid_index,
        trivial_discs,
        vertices,
        points,
        tiles,
    })
}

/// Canonical serialization: ids ascending within each section.
pub fn serialize_document(doc: &TilingDocument) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "tiling v{}", doc.format_version);
    let _ = writeln!(out, "braid_index {}", doc.braid_index);
    let _ = writeln!(out, "trivial_discs {}", doc.trivial_discs);
    let mut vertices = doc.vertices.clone();
    vertices.sort_by_key(|v| v.id);
    for v in vertices {
        let _ = writeln!(
            out,
            "vertex {} rank {} parity {}",
            v.id, v.axis_rank, v.parity
        );
    }
    let mut points = doc.points.clone();
    points.sort_by_key(|p| p.id);
    for p in points {
        let _ = writeln!(
            out,
            "point {} component {} rank {}",
            p.id, p.component, p.link_rank
        );
    }
    let mut tiles = doc.tiles.clone();
    tiles.sort_by_key(|t| t.id);
    for t in tiles {
        let _ = write!(
            out,
            "tile {} kind {} sign {} theta {} vertices",
            t.id, t.kind, t.sign, t.theta_rank
        );
        for v in &t.vertices {
            let _ = write!(out, " {v}");
        }
        let _ = write!(out, " endpoints");
        for p in &t.endpoints {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}

impl TilingDocument {
    pub fn from_tiling(t: &Tiling) -> TilingDocument {
        TilingDocument {
            format_version: FORMAT_VERSION,
            braid_index: t.braid_index(),
            trivial_discs: t.trivial_discs(),
            vertices: t.vertices().cloned().collect(),
            points: t.points().cloned().collect(),
            tiles: t.tiles().cloned().collect(),
        }
    }

    /// Structural assembly; errors name the offending ids.
    pub fn into_tiling(self) -> Result<Tiling, BuildError> {
        Tiling::build(
            self.braid_index,
            self.trivial_discs,
            self.vertices,
            self.points,
            self.tiles,
        )
    }
}

/// Parse straight to a tiling.
pub fn parse_tiling(text: &str) -> Result<Tiling, String> {
    let doc = parse_document(text).map_err(|e| e.to_string())?;
    doc.into_tiling().map_err(|e| format!("schema: {e}"))
}

/// Serialize a tiling canonically.
pub fn serialize_tiling(t: &Tiling) -> String {
    serialize_document(&TilingDocument::from_tiling(t))
}
