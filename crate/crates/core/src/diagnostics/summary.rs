use serde::Serialize;

use super::EnergyRecord;

/// Runs whose total energy exceeds this multiple of the initial energy are
/// flagged unstable.
pub const INSTABILITY_FACTOR: f64 = 1e3;

/// Below this maximum kinetic energy the curve is considered flat and its
/// argmax carries no information.
pub const FLAT_CURVE_THRESHOLD: f64 = 1e-20;

/// Whether `record` signals a blow-up relative to the initial energy `e0`.
pub fn is_unstable(record: &EnergyRecord, e0: f64) -> bool {
    !record.is_finite() || record.total > INSTABILITY_FACTOR * e0.abs().max(f64::MIN_POSITIVE)
}

/// Whether the defects of the initial director annihilated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Annihilation {
    /// The defect count first reached zero at this time.
    Observed { time: f64 },
    /// Defects remained until the end of the run.
    NotObserved,
    /// No defect data (or the run was unstable).
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub stable: bool,
    /// Time of maximal kinetic energy; `None` for unstable runs. On a flat
    /// curve the defect annihilation time is used instead, when known.
    pub t_a: Option<f64>,
    pub e_kin_max: Option<f64>,
    /// `e_kin_max` is below [`FLAT_CURVE_THRESHOLD`].
    pub flat_curve: bool,
    pub annihilation: Annihilation,
    pub final_record: Option<EnergyRecord>,
}

impl RunSummary {
    /// Attaches the defect history (one count per record).
    pub fn with_defects(mut self, records: &[EnergyRecord], defects: &[usize]) -> Self {
        if !self.stable || defects.is_empty() {
            return self;
        }
        self.annihilation = records
            .iter()
            .zip(defects)
            .find(|(_, &n)| n == 0)
            .map_or(Annihilation::NotObserved, |(r, _)| Annihilation::Observed { time: r.t });
        if let (true, Annihilation::Observed { time }) = (self.flat_curve, self.annihilation) {
            self.t_a = Some(time);
        }
        self
    }

    pub fn annihilated(&self) -> Option<bool> {
        match self.annihilation {
            Annihilation::Observed { .. } => Some(true),
            Annihilation::NotObserved => Some(false),
            Annihilation::Unknown => None,
        }
    }
}

/// `T_A = argmax E_kin` (earliest on ties) of a run; unstable runs give no `T_A`.
pub fn detect_annihilation(records: &[EnergyRecord]) -> RunSummary {
    let e0 = records.first().map_or(0.0, |r| r.total);
    let stable = !records.is_empty() && !records.iter().any(|r| is_unstable(r, e0));
    if !stable {
        return RunSummary {
            stable: false,
            t_a: None,
            e_kin_max: None,
            flat_curve: false,
            annihilation: Annihilation::Unknown,
            final_record: records.last().copied(),
        };
    }
    let mut best = &records[0];
    for r in &records[1..] {
        if r.kinetic > best.kinetic {
            best = r;
        }
    }
    RunSummary {
        stable: true,
        t_a: Some(best.t),
        e_kin_max: Some(best.kinetic),
        flat_curve: best.kinetic < FLAT_CURVE_THRESHOLD,
        annihilation: Annihilation::Unknown,
        final_record: records.last().copied(),
    }
}
