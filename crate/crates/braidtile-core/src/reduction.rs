//! Normalization subroutines and the reduction pipelines.
//!
//! The pipelines drive the local moves until nothing is left to do:
//! flattening stabilizes along `ab` tiles until only `aa` tiles remain,
//! the unknot pipeline then destabilizes the resulting disc down to the
//! trivial braid, and the unlink pipeline reduces a union of disc
//! components to trivial discs using only valence-lowering changes of
//! foliation, exchange moves and destabilizations.  The vertex count is
//! the termination measure: every exchange and destabilization strictly
//! decreases it.
//!
//! Sites are processed in deterministic rounds: all eligible sites are
//! collected, sorted by (valence, id), and attempted in order, skipping
//! any whose preconditions broke mid-round; refused sites (unclean
//! pockets, obstructed fibration windows) are retried in later rounds
//! once earlier moves have cleared them.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{MoveError, ReduceError};
use crate::moves::{
    cf_collapse_ab, change_of_foliation, destabilize_a, exchange_ab, exchange_bb, stabilize_ab,
    MoveKind, MoveRecord, Variant,
};
use crate::tiling::{
    derive_adjacency, euler_and_classification, vertex_star, EdgeRef, Expectation, Star, TileKind,
    Tiling, VertexId,
};

/// Snapshot of the bookkeeping quantities of a tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    /// Axis piercings, counting trivial discs.
    pub vertex_count: u32,
    pub singularities: u32,
    pub braid_index: u32,
    pub trivial_discs: u32,
    pub components: u32,
    /// Euler characteristic per component, sorted.
    pub chi: Vec<i64>,
}

impl Summary {
    pub fn of(t: &Tiling) -> Summary {
        let (components, chi) = match euler_and_classification(t) {
            Ok(report) => {
                let mut chi: Vec<i64> = report.components.iter().map(|c| c.chi).collect();
                chi.sort_unstable();
                (report.component_count() as u32, chi)
            }
            Err(_) => (0, Vec::new()),
        };
        Summary {
            vertex_count: t.vertex_count(),
            singularities: t.singularity_count(),
            braid_index: t.braid_index(),
            trivial_discs: t.trivial_discs(),
            components,
            chi,
        }
    }

    pub fn line(&self, label: &str) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(
            s,
            "{label} V={} t={} n={} discs={} components={} chi=",
            self.vertex_count,
            self.singularities,
            self.braid_index,
            self.trivial_discs,
            self.components
        );
        if self.chi.is_empty() {
            s.push('-');
        }
        for (i, c) in self.chi.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s
    }
}

/// An executed move sequence with its before and after summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub initial: Summary,
    pub steps: Vec<MoveRecord>,
    pub final_state: Summary,
}

impl Transcript {
    /// The summaries chain exactly: applying each step's deltas to the
    /// previous (V, t, n) gives the next, ending at the final summary.
    pub fn verify_chain(&self) -> bool {
        let mut v = i64::from(self.initial.vertex_count);
        let mut t = i64::from(self.initial.singularities);
        let mut n = i64::from(self.initial.braid_index);
        for step in &self.steps {
            v += step.delta_v;
            t += step.delta_t;
            n += step.delta_n;
        }
        v == i64::from(self.final_state.vertex_count)
            && t == i64::from(self.final_state.singularities)
            && n == i64::from(self.final_state.braid_index)
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    /// Line-oriented text log: summary, one move per line, summary.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.initial.line("initial"));
        for step in &self.steps {
            let _ = writeln!(
                s,
                "{} {} {} {} {}",
                step.kind.name(),
                step.site_token(),
                step.delta_v,
                step.delta_t,
                step.delta_n
            );
        }
        let _ = write!(s, "{}", self.final_state.line("final"));
        s
    }
}

/// Pipeline failure: a precondition rejection, or a stuck state carrying
/// the partial work for diagnosis.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineError {
    Precondition(ReduceError),
    Stuck {
        tiling: Box<Tiling>,
        transcript: Box<Transcript>,
    },
}

impl From<ReduceError> for PipelineError {
    fn from(e: ReduceError) -> Self {
        PipelineError::Precondition(e)
    }
}

fn star_or_reduce(t: &Tiling, v: VertexId) -> Result<Star, ReduceError> {
    let edges = derive_adjacency(t).map_err(|e| ReduceError::InvalidInput(format!("{e}")))?;
    vertex_star(t, &edges, v).map_err(|e| ReduceError::InvalidInput(format!("{e}")))
}

/// Merge two fibration-adjacent like-sign corners of the star by a
/// change of foliation, trying both variants.  Returns the move on
/// success.
fn merge_like_signs(t: &Tiling, star: &Star, linear: &[usize]) -> Option<(Tiling, MoveRecord)> {
    let edges = derive_adjacency(t).ok()?;
    let n = star.corners.len();
    for w in 0..linear.len().saturating_sub(1) {
        let i = linear[w];
        let j = linear[w + 1];
        debug_assert_eq!((i + 1) % n, j);
        if star.sign_cycle[i] != star.sign_cycle[j] {
            continue;
        }
        let (t1, t2) = (star.cyclic_tiles[i], star.cyclic_tiles[j]);
        if t1 == t2 {
            continue;
        }
        let EdgeRef::B(b) = star.edges[i] else {
            continue;
        };
        let gamma = edges.b_edges[b].ends;
        for variant in [Variant::First, Variant::Rotated] {
            if let Ok(done) = change_of_foliation(t, t1, t2, gamma, variant) {
                return Some(done);
            }
        }
    }
    None
}

/// Eliminate an interior vertex whose sign cycle is a single block of
/// each sign: changes of foliation merge the like-sign neighbors until
/// the vertex has valence 2, then an exchange move removes it.
pub fn eliminate_interior_pm(
    t: &Tiling,
    v: VertexId,
) -> Result<(Tiling, Vec<MoveRecord>), ReduceError> {
    let star = star_or_reduce(t, v)?;
    if !star.is_interior() {
        return Err(ReduceError::IneligibleSite {
            vertex: v,
            reason: String::from("not an interior vertex"),
        });
    }
    match star.sign_changes() {
        2 => {}
        0 => {
            return Err(ReduceError::IneligibleSite {
                vertex: v,
                reason: String::from("one-sign star (not a valid tiling)"),
            })
        }
        _ => {
            return Err(ReduceError::IneligibleSite {
                vertex: v,
                reason: String::from("sign cycle is not a single block of each sign"),
            })
        }
    }

    let mut current = t.clone();
    let mut moves = Vec::new();
    loop {
        let star = star_or_reduce(&current, v)?;
        if star.valence() == 2 {
            break;
        }
        let linear: Vec<usize> = (0..star.valence() + 1)
            .map(|i| i % star.valence())
            .collect();
        match merge_like_signs(&current, &star, &linear) {
            Some((next, record)) => {
                moves.push(record);
                current = next;
            }
            None => {
                return Err(ReduceError::MoveFailed {
                    vertex: v,
                    error: MoveError::PocketNotClean {
                        vertex: v,
                        reason: String::from("no mergeable like-sign pair (obstructed windows)"),
                    },
                })
            }
        }
    }
    match exchange_bb(&current, v) {
        Ok((next, record)) => {
            moves.push(record);
            Ok((next, moves))
        }
        Err(error) => Err(ReduceError::MoveFailed { vertex: v, error }),
    }
}

/// Eliminate a vertex whose type has exactly one a-entry.
///
/// Changes of foliation merge like-sign neighbors inside the b-block;
/// the endgame is a destabilization (after a collapsing change of
/// foliation when the last two signs agree) or an exchange move (when
/// they oppose).
pub fn eliminate_ab_vertex(
    t: &Tiling,
    v: VertexId,
) -> Result<(Tiling, Vec<MoveRecord>), ReduceError> {
    let star = star_or_reduce(t, v)?;
    let a_count = star.type_cycle.iter().filter(|k| **k == 'a').count();
    if a_count != 1 {
        return Err(ReduceError::IneligibleSite {
            vertex: v,
            reason: format!("type has {a_count} a-entries, need exactly one"),
        });
    }

    let mut current = t.clone();
    let mut moves = Vec::new();
    loop {
        let star = star_or_reduce(&current, v)?;
        let n = star.valence();
        if n == 1 {
            let (next, record) = destabilize_a(&current, v)
                .map_err(|error| ReduceError::MoveFailed { vertex: v, error })?;
            moves.push(record);
            return Ok((next, moves));
        }
        // Linear order of corners from just after the a-edge.
        let ia = star
            .type_cycle
            .iter()
            .position(|k| *k == 'a')
            .expect("single-a vertex keeps its a-edge");
        let linear: Vec<usize> = (1..=n).map(|j| (ia + j) % n).collect();
        let runs = 1 + linear
            .windows(2)
            .filter(|w| star.sign_cycle[w[0]] != star.sign_cycle[w[1]])
            .count();
        if n == 2 {
            if runs == 1 {
                let (next, record) = cf_collapse_ab(&current, v)
                    .map_err(|error| ReduceError::MoveFailed { vertex: v, error })?;
                moves.push(record);
                let (next, record) = destabilize_a(&next, v)
                    .map_err(|error| ReduceError::MoveFailed { vertex: v, error })?;
                moves.push(record);
                return Ok((next, moves));
            }
            let (next, record) = exchange_ab(&current, v)
                .map_err(|error| ReduceError::MoveFailed { vertex: v, error })?;
            moves.push(record);
            return Ok((next, moves));
        }
        if runs > 2 {
            return Err(ReduceError::IneligibleSite {
                vertex: v,
                reason: String::from("more than one sign change along the b-block"),
            });
        }
        match merge_like_signs(&current, &star, &linear) {
            Some((next, record)) => {
                moves.push(record);
                current = next;
            }
            None => {
                return Err(ReduceError::MoveFailed {
                    vertex: v,
                    error: MoveError::PocketNotClean {
                        vertex: v,
                        reason: String::from("no mergeable like-sign pair (obstructed windows)"),
                    },
                })
            }
        }
    }
}

fn require_valid(t: &Tiling) -> Result<(), ReduceError> {
    let report = t.validate(None);
    if report.all_passed() {
        Ok(())
    } else {
        let detail = report
            .failed()
            .map(|c| c.name)
            .collect::<Vec<_>>()
            .join(", ");
        Err(ReduceError::InvalidInput(detail))
    }
}

/// Flatten a spanning surface to all-`aa` form by stabilizing along
/// `ab` tiles.  The number of stabilizations equals the number of
/// negative vertices of the input.
pub fn make_special_markov(t: &Tiling) -> Result<(Tiling, Transcript), PipelineError> {
    require_valid(t)?;
    let report =
        euler_and_classification(t).map_err(|e| ReduceError::InvalidInput(format!("{e}")))?;
    if report.components.iter().any(|c| c.is_closed()) {
        return Err(PipelineError::Precondition(ReduceError::ClosedComponent));
    }

    let initial = Summary::of(t);
    let mut current = t.clone();
    let mut steps = Vec::new();
    while let Some(tid) = current
        .tiles()
        .filter(|tl| tl.kind == TileKind::Ab)
        .map(|tl| tl.id)
        .min()
    {
        match stabilize_ab(&current, tid) {
            Ok((next, record)) => {
                steps.push(record);
                current = next;
            }
            Err(_) => {
                let transcript = Transcript {
                    initial,
                    steps,
                    final_state: Summary::of(&current),
                };
                return Err(PipelineError::Stuck {
                    tiling: Box::new(current),
                    transcript: Box::new(transcript),
                });
            }
        }
    }
    if current.tiles().any(|tl| tl.kind == TileKind::Bb) {
        // A bb tile with no ab tile on its component means the component
        // is closed; ruled out above, so this is unreachable on valid
        // input.
        let transcript = Transcript {
            initial,
            steps,
            final_state: Summary::of(&current),
        };
        return Err(PipelineError::Stuck {
            tiling: Box::new(current),
            transcript: Box::new(transcript),
        });
    }
    let transcript = Transcript {
        initial,
        steps,
        final_state: Summary::of(&current),
    };
    Ok((current, transcript))
}

fn destab_round(current: &mut Tiling, steps: &mut Vec<MoveRecord>) -> usize {
    let mut done = 0;
    let sites = collect_sites(current, SiteKind::TypeA);
    for v in sites {
        if let Ok((next, record)) = destabilize_a(current, v) {
            steps.push(record);
            *current = next;
            done += 1;
        }
    }
    done
}

/// Reduce a single disc to the trivial 1-braid: stabilizations first
/// (flattening to all-`aa`), then destabilizations only.
pub fn reduce_unknot_markov(t: &Tiling) -> Result<(Tiling, Transcript), PipelineError> {
    require_valid(t)?;
    let report = t.validate(Some(Expectation::Discs(1)));
    if !report.all_passed() {
        return Err(PipelineError::Precondition(ReduceError::NotADisc {
            detail: String::from("expected a single disc component"),
        }));
    }

    let initial = Summary::of(t);
    let (mut current, flat) = make_special_markov(t)?;
    let mut steps = flat.steps;
    loop {
        if destab_round(&mut current, &mut steps) == 0 {
            break;
        }
    }
    let final_state = Summary::of(&current);
    let transcript = Transcript {
        initial,
        steps,
        final_state,
    };
    if current.singularity_count() != 0 {
        return Err(PipelineError::Stuck {
            tiling: Box::new(current),
            transcript: Box::new(transcript),
        });
    }
    debug_assert_eq!(current.braid_index(), 1);
    Ok((current, transcript))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SiteKind {
    /// Interior vertex, one block of each sign.
    InteriorBlock,
    /// Exactly one a-entry, at most one sign change along the b-block.
    SingleA,
    /// Valence 1, type (a).
    TypeA,
}

fn site_matches(star: &Star, kind: SiteKind) -> bool {
    match kind {
        SiteKind::InteriorBlock => star.is_interior() && star.sign_changes() == 2,
        SiteKind::TypeA => star.valence() == 1 && star.type_cycle == alloc::vec!['a'],
        SiteKind::SingleA => {
            let n = star.valence();
            let a_count = star.type_cycle.iter().filter(|k| **k == 'a').count();
            if a_count != 1 {
                return false;
            }
            if n == 1 {
                return true;
            }
            let ia = star.type_cycle.iter().position(|k| *k == 'a').unwrap();
            let linear: Vec<usize> = (1..=n).map(|j| (ia + j) % n).collect();
            let runs = 1 + linear
                .windows(2)
                .filter(|w| star.sign_cycle[w[0]] != star.sign_cycle[w[1]])
                .count();
            runs <= 2
        }
    }
}

/// Eligible sites of the given shape, sorted by (valence, id).
fn collect_sites(t: &Tiling, kind: SiteKind) -> Vec<VertexId> {
    let Ok(edges) = derive_adjacency(t) else {
        return Vec::new();
    };
    let mut sites: Vec<(usize, VertexId)> = Vec::new();
    for v in t.vertices() {
        if let Ok(star) = vertex_star(t, &edges, v.id) {
            if site_matches(&star, kind) {
                sites.push((star.valence(), v.id));
            }
        }
    }
    sites.sort();
    sites.into_iter().map(|(_, v)| v).collect()
}

/// Reduce a union of disc components to trivial discs.
///
/// Emits only changes of foliation, collapses, exchange moves and
/// destabilizations; the vertex count strictly decreases at every
/// exchange and destabilization, which bounds the run.
pub fn reduce_unlink(t: &Tiling) -> Result<(Tiling, Transcript), PipelineError> {
    require_valid(t)?;
    let report =
        euler_and_classification(t).map_err(|e| ReduceError::InvalidInput(format!("{e}")))?;
    if !report.all_discs() {
        return Err(PipelineError::Precondition(ReduceError::NotADisc {
            detail: report.describe(),
        }));
    }

    let initial = Summary::of(t);
    let mut current = t.clone();
    let mut steps: Vec<MoveRecord> = Vec::new();

    loop {
        let mut moved = 0usize;

        // Stage A: interior one-block vertices, in rounds until quiet.
        loop {
            let mut round_moves = 0usize;
            for v in collect_sites(&current, SiteKind::InteriorBlock) {
                // Re-verify on the current state; earlier moves in the
                // round may have consumed the site.
                let Ok(star) = star_or_reduce(&current, v) else {
                    continue;
                };
                if !site_matches(&star, SiteKind::InteriorBlock) {
                    continue;
                }
                if let Ok((next, records)) = eliminate_interior_pm(&current, v) {
                    steps.extend(records);
                    current = next;
                    round_moves += 1;
                }
            }
            moved += round_moves;
            if round_moves == 0 {
                break;
            }
        }

        // Stage B: single-a vertices (destabilizations land here last,
        // after every exchange opportunity is spent).
        let mut round_moves = 0usize;
        for v in collect_sites(&current, SiteKind::SingleA) {
            if current.vertex(v).is_none() {
                continue;
            }
            let Ok(star) = star_or_reduce(&current, v) else {
                continue;
            };
            if !site_matches(&star, SiteKind::SingleA) {
                continue;
            }
            if let Ok((next, records)) = eliminate_ab_vertex(&current, v) {
                steps.extend(records);
                current = next;
                round_moves += 1;
            }
        }
        moved += round_moves;

        if moved == 0 {
            break;
        }
    }

    let final_state = Summary::of(&current);
    let transcript = Transcript {
        initial,
        steps,
        final_state,
    };
    if current.singularity_count() != 0 {
        return Err(PipelineError::Stuck {
            tiling: Box::new(current),
            transcript: Box::new(transcript),
        });
    }
    debug_assert_eq!(current.braid_index(), current.trivial_discs());
    Ok((current, transcript))
}
