//! Validation of the necessary realizability conditions.
//!
//! The report is a value, not an exception stream: every check runs and
//! records pass/fail so a front end can print all failures at once.
//! Sufficient conditions for geometric realizability are open; these
//! checks are the necessary ones the combinatorics forces.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::adjacency::{corners_at, derive_adjacency, expected_corner_parities, vertex_star};
use super::surface::classify_with_edges;
use super::{Sign, TileKind, Tiling};

/// Expected shape of the surface, supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Exactly `r` components, all discs (trivial discs count).
    Discs(u32),
}

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of all validation checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

impl Tiling {
    /// Run every validation check and report pass/fail per check.
    ///
    /// Closed-surface kinds (`bc`/`cc`) are checked for arity and parity
    /// pattern only; all adjacency-derived checks are skipped when they
    /// are present.
    pub fn validate(&self, expect: Option<Expectation>) -> ValidationReport {
        let mut report = ValidationReport { checks: Vec::new() };

        // (c) per-tile parity patterns (arity already holds by build).
        let mut parity_ok = true;
        let mut parity_detail = String::new();
        for tile in self.tiles() {
            let pattern: Option<Vec<Option<Sign>>> = match tile.kind {
                TileKind::Bc => Some(alloc::vec![Some(Sign::Plus), Some(Sign::Minus)]),
                TileKind::Cc => Some(Vec::new()),
                _ => expected_corner_parities(tile.kind).map(|cs| {
                    cs.iter()
                        .filter_map(|c| c.map(Some))
                        .collect::<Vec<Option<Sign>>>()
                }),
            };
            if let Some(expected) = pattern {
                for (v, want) in tile.vertices.iter().zip(expected.iter()) {
                    if let (Some(actual), Some(want)) = (self.parity(*v), want) {
                        if actual != *want {
                            parity_ok = false;
                            parity_detail =
                                format!("tile {} expects parity {} at vertex {v}", tile.id, want);
                        }
                    }
                }
            }
        }
        report.push("tile-parity-patterns", parity_ok, parity_detail);

        let closed_kinds = self.tiles().any(|t| !t.kind.is_spanning());
        if closed_kinds {
            report.push(
                "side-pairing",
                true,
                String::from("skipped: closed-surface kinds present"),
            );
            return report;
        }

        // (a) side pairing and fans.
        let edges = match derive_adjacency(self) {
            Ok(e) => e,
            Err(e) => {
                report.push("side-pairing", false, format!("{e}"));
                return report;
            }
        };
        let mut fan_ok = true;
        let mut fan_detail = String::new();
        let mut stars = Vec::new();
        for v in self.vertices() {
            match vertex_star(self, &edges, v.id) {
                Ok(star) => stars.push(star),
                Err(e) => {
                    fan_ok = false;
                    fan_detail = format!("{e}");
                }
            }
        }
        report.push("side-pairing", fan_ok, fan_detail);

        // (b) every b-edge joins opposite parities.
        let mut bparity_ok = true;
        let mut bparity_detail = String::new();
        for e in &edges.b_edges {
            let (a, b) = e.ends;
            if self.parity(a) == self.parity(b) {
                bparity_ok = false;
                bparity_detail = format!("b-edge ({a}, {b})");
            }
        }
        report.push("b-edges-opposite-parity", bparity_ok, bparity_detail);

        // (d) every interior vertex sees both singularity signs.
        let mut interior_ok = true;
        let mut interior_detail = String::new();
        for star in &stars {
            if star.is_interior() {
                let has_plus = star.sign_cycle.contains(&Sign::Plus);
                let has_minus = star.sign_cycle.contains(&Sign::Minus);
                if !(has_plus && has_minus) {
                    interior_ok = false;
                    interior_detail = format!("interior vertex {} has one-sign star", star.center);
                }
            }
        }
        report.push("interior-mixed-signs", interior_ok, interior_detail);

        // Every vertex carries a corner (bare piercings belong to the
        // trivial-disc count, which stores no vertices).
        let mut incident_ok = true;
        let mut incident_detail = String::new();
        for v in self.vertices() {
            if corners_at(self, v.id).is_empty() {
                incident_ok = false;
                incident_detail = format!("vertex {} has no incident tile", v.id);
            }
        }
        report.push("vertices-have-tiles", incident_ok, incident_detail);

        if !fan_ok || !incident_ok {
            return report;
        }

        let surface = classify_with_edges(self, &edges);

        // Braid index consistency with the strand count the a-arc
        // structure forces (skipped when a closed component exists).
        match surface.derived_strands {
            Some(n) => {
                let ok = n == self.braid_index();
                report.push(
                    "braid-index-consistent",
                    ok,
                    if ok {
                        String::new()
                    } else {
                        format!(
                            "declared {} but fibers carry {n} strands",
                            self.braid_index()
                        )
                    },
                );
            }
            None => report.push(
                "braid-index-consistent",
                true,
                String::from("skipped: closed component"),
            ),
        }

        let n_components = surface
            .components
            .iter()
            .filter(|c| c.boundary_components > 0)
            .map(|c| c.boundary_components)
            .sum::<u32>();
        report.push(
            "braid-index-covers-components",
            self.braid_index() >= n_components,
            format!("n={} link components={}", self.braid_index(), n_components),
        );

        // (e) graph facts.
        let graphs = crate::graphs::graph_report(self, &edges);
        report.push("graph-disjointness", graphs.disjointness, String::new());
        report.push("graph-tile-coverage", graphs.tile_coverage, String::new());
        report.push(
            "graph-vertex-coverage",
            graphs.vertex_coverage,
            String::new(),
        );
        let mut isolated_detail = String::new();
        if !graphs.no_isolated_interior {
            for f in &graphs.facts {
                for v in &f.isolated_interior {
                    isolated_detail = format!("vertex {v} isolated in G({},{})", f.eps, f.delta);
                }
            }
        }
        report.push(
            "no-isolated-interior-graph-vertex",
            graphs.no_isolated_interior,
            isolated_detail,
        );

        // (f) declared expectation.
        if let Some(Expectation::Discs(r)) = expect {
            let ok = surface.component_count() == r as usize && surface.all_discs();
            report.push(
                "expected-classification",
                ok,
                format!("expected {r} discs, found {}", surface.describe()),
            );
        }

        report
    }
}
