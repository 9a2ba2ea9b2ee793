//! Stable, machine-readable verification reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::invariance::InvarianceReport;
use crate::pairing::{
    HorosphereReport, RidgeConditionReport, RidgeCycleSummary, TorsionReport, ValidationReport,
};
use crate::polytope::Polyhedron;
use crate::scalar::QSqrt2;
use crate::topology::{CycleCensus, Invariants, TopologyError};

/// Pass/fail of each checked hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionSummary {
    pub pairing_valid: bool,
    pub ridge_cycles: bool,
    pub horospheres: bool,
    pub torsion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub name: String,
    pub dimension: usize,
    pub passed: bool,
    pub conditions: ConditionSummary,
    /// Faces per dimension `0..=n`.
    pub face_counts: Vec<usize>,
    pub finite_vertices: usize,
    pub ideal_vertices: usize,
    pub validation: ValidationReport,
    pub ridge_cycles: Vec<RidgeCycleSummary>,
    pub ridge_condition: Option<RidgeConditionReport>,
    pub horospheres: Option<HorosphereReport>,
    pub torsion: Option<TorsionReport>,
    pub census: CycleCensus,
    pub ends: usize,
    pub euler_characteristic: i64,
    /// In units of `4π²/3`.
    pub volume_units: Option<i64>,
    /// `4 + 4n − k` for stacked blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_ends: Option<usize>,
    /// Wall-clock milliseconds; left out of golden comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(
        name: &str,
        p: &Polyhedron<QSqrt2>,
        inv: Invariants,
    ) -> Result<Self, TopologyError> {
        let lattice = p
            .face_lattice()
            .map_err(|e| TopologyError::Pairing(e.into()))?;
        let r = inv.report;
        let conditions = ConditionSummary {
            pairing_valid: r.validation.passed(),
            ridge_cycles: r.ridge_condition.as_ref().is_some_and(|c| c.passed),
            horospheres: r.horospheres.as_ref().is_some_and(|h| h.passed),
            torsion_free: r.torsion.as_ref().is_some_and(|t| t.passed),
        };
        Ok(ReportDocument {
            name: name.to_string(),
            dimension: r.dimension,
            passed: conditions.pairing_valid
                && conditions.ridge_cycles
                && conditions.horospheres
                && conditions.torsion_free,
            conditions,
            face_counts: lattice.counts(),
            finite_vertices: lattice.finite_vertex_count(),
            ideal_vertices: lattice.ideal_vertex_count(),
            validation: r.validation,
            ridge_cycles: r.ridge_cycles,
            ridge_condition: r.ridge_condition,
            horospheres: r.horospheres,
            torsion: r.torsion,
            census: inv.census,
            ends: inv.ends,
            euler_characteristic: inv.euler_characteristic,
            volume_units: inv.volume_units,
            expected_ends: None,
            timing_ms: None,
        })
    }

    /// Adds the expected end count; a mismatch fails the report.
    pub fn expect_ends(mut self, expected: usize) -> Self {
        self.expected_ends = Some(expected);
        self.passed &= self.ends == expected;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        let mut s = String::new();
        let _ = writeln!(s, "{} (dimension {})", self.name, self.dimension);
        let _ = writeln!(
            s,
            "  faces by dimension: {:?} ({} finite, {} ideal vertices)",
            self.face_counts, self.finite_vertices, self.ideal_vertices
        );
        let _ = writeln!(s, "  pairing valid:      {}", mark(self.conditions.pairing_valid));
        for c in self.validation.failures() {
            let _ = writeln!(
                s,
                "    {} → {} ({}): hyperplane {} facet {} far side {} involution {}",
                c.side, c.partner, c.label, c.hyperplane, c.facet, c.far_side, c.involution
            );
        }
        let _ = writeln!(
            s,
            "  ridge cycles:       {} ({} cycles)",
            mark(self.conditions.ridge_cycles),
            self.ridge_cycles.len()
        );
        let _ = writeln!(s, "  horospheres:        {}", mark(self.conditions.horospheres));
        let _ = writeln!(s, "  torsion-free:       {}", mark(self.conditions.torsion_free));
        let _ = writeln!(s, "  cycle census:       {:?}", self.census.c);
        match self.expected_ends {
            Some(e) => {
                let _ = writeln!(s, "  ends:               {} (expected {e})", self.ends);
            }
            None => {
                let _ = writeln!(s, "  ends:               {}", self.ends);
            }
        }
        let _ = writeln!(s, "  euler char:         {}", self.euler_characteristic);
        if let Some(v) = self.volume_units {
            let _ = writeln!(s, "  volume:             {v} × 4π²/3");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "  time:               {t} ms");
        }
        let _ = writeln!(s, "  result:             {}", mark(self.passed));
        s
    }
}

impl InvarianceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.case);
        let bad: Vec<&str> = self
            .generators
            .iter()
            .filter(|g| !g.preserves)
            .map(|g| g.name.as_str())
            .collect();
        let _ = writeln!(
            s,
            "  generators preserve H: {}{}",
            mark(bad.is_empty()),
            if bad.is_empty() {
                String::new()
            } else {
                format!(" ({})", bad.join(", "))
            }
        );
        let c1 = &self.condition_1;
        let _ = writeln!(
            s,
            "  condition 1 (H ∩ P fundamental for J): {} [{} sides]",
            mark(c1.passed),
            c1.sides.len()
        );
        for m in &c1.mismatches {
            let _ = writeln!(s, "    {m}");
        }
        let _ = writeln!(
            s,
            "  condition 2 (sides on H moved off H): {} [{} sides on H]",
            mark(self.condition_2.passed),
            self.condition_2.sides.len()
        );
        let _ = writeln!(
            s,
            "  condition 3 (edge chases through H):  {} [{} instances]",
            mark(self.condition_3.passed),
            self.condition_3.instances.len()
        );
        for i in &self.condition_3.instances {
            let sum = i
                .angle_sum
                .map_or_else(|| "unrecognized".to_string(), |a| a.to_string());
            let _ = writeln!(
                s,
                "    {} l={} → {}: {} (angle sum {sum})",
                i.ridge,
                i.l,
                i.target,
                mark(i.preserves)
            );
        }
        let _ = writeln!(s, "  result: {}", mark(self.passed));
        if self.embedded_hypersurface {
            let _ = writeln!(s, "  H/J is an embedded totally geodesic hypersurface");
        }
        s
    }
}
