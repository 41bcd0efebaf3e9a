//! IO companion for `braidtile-core`: the tiling document and braid word
//! formats, DOT export, and dispatch of named moves for the `apply`
//! command and transcript replay.

pub mod dot;
pub mod format;
pub mod wordfmt;

use braidtile_core::moves::{
    cf_collapse_ab, change_of_foliation, destabilize_a, exchange_ab, exchange_bb, stabilize_ab,
    MoveRecord, Variant,
};
use braidtile_core::tiling::Tiling;

fn parse_variant(tok: &str) -> Result<Variant, String> {
    match tok {
        "first" => Ok(Variant::First),
        "rotated" => Ok(Variant::Rotated),
        other => Err(format!("unknown variant `{other}`")),
    }
}

/// Apply a move named the way transcripts name them.
///
/// The site is a comma-separated id list whose meaning is fixed per
/// kind; a change of foliation takes `t1,t2,v,w[,variant]`.
pub fn apply_named_move(
    t: &Tiling,
    kind: &str,
    site: &str,
    variant: Option<&str>,
) -> Result<(Tiling, MoveRecord), String> {
    let mut parts: Vec<&str> = site.split(',').filter(|s| !s.is_empty()).collect();
    let mut variant = match variant {
        Some(v) => Some(parse_variant(v)?),
        None => None,
    };
    if let Some(last) = parts.last() {
        if let Ok(v) = parse_variant(last) {
            variant = Some(v);
            parts.pop();
        }
    }
    let ids: Vec<u32> = parts
        .iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| format!("bad id `{p}` in site"))
        })
        .collect::<Result<_, _>>()?;

    let one = |what: &str| -> Result<u32, String> {
        if ids.len() == 1 {
            Ok(ids[0])
        } else {
            Err(format!("{kind} expects one {what} id, got `{site}`"))
        }
    };

    let result = match kind {
        "destabilize_a" => destabilize_a(t, one("vertex")?.into()),
        "stabilize_ab" => stabilize_ab(t, one("tile")?.into()),
        "exchange_ab" => exchange_ab(t, one("vertex")?.into()),
        "exchange_bb" => exchange_bb(t, one("vertex")?.into()),
        "cf_collapse_ab" => cf_collapse_ab(t, one("vertex")?.into()),
        "change_of_foliation" => {
            if ids.len() != 4 {
                return Err(format!(
                    "change_of_foliation expects t1,t2,v,w[,variant], got `{site}`"
                ));
            }
            change_of_foliation(
                t,
                ids[0].into(),
                ids[1].into(),
                (ids[2].into(), ids[3].into()),
                variant.unwrap_or(Variant::First),
            )
        }
        other => return Err(format!("unknown move kind `{other}`")),
    };
    result.map_err(|e| e.to_string())
}
