//! Per-iteration run log: bounds, effort counters and phase timings.

/// Why an iteration stopped refining at the centre point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerExit {
    /// The oracle sandwich at the centre point became at least as tight as
    /// the certified global gap of the previous iteration.
    Tightened,
    /// The oracle lower bound at the centre point reached the incumbent:
    /// the point cannot improve on it, so no further exactness is needed.
    Rejected,
    /// One exact solve per node was spent without either of the above.
    Exhausted,
    /// A full pass solved every node exactly (the single-proposal strategy
    /// always does this).
    FullPass,
}

impl InnerExit {
    pub fn as_str(self) -> &'static str {
        match self {
            InnerExit::Tightened => "tightened",
            InnerExit::Rejected => "rejected",
            InnerExit::Exhausted => "exhausted",
            InnerExit::FullPass => "full-pass",
        }
    }

    /// Stable numeric code for columnar export.
    pub fn code(self) -> f64 {
        match self {
            InnerExit::Tightened => 0.0,
            InnerExit::Rejected => 1.0,
            InnerExit::Exhausted => 2.0,
            InnerExit::FullPass => 3.0,
        }
    }
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminationStatus {
    /// The certified gap closed below the configured tolerance.
    Converged,
    /// The iteration budget ran out first; bounds are valid but not final.
    IterationLimit,
    /// The wall-clock budget ran out first; bounds are valid but not final.
    TimeLimit,
}

/// One master iteration.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Best certified lower bound after this iteration.
    pub lower: f64,
    /// Best certified upper bound after this iteration.
    pub upper: f64,
    /// Oracle lower bound of the candidate point examined this iteration.
    pub candidate_lower: f64,
    /// Oracle upper bound of the same candidate point.
    pub candidate_upper: f64,
    /// Cumulative count of exact subproblem evaluations.
    pub exact_solves: usize,
    /// Cumulative count of oracle queries (one lower/upper pair per node).
    pub oracle_calls: usize,
    /// Level parameter in force during this iteration.
    pub gamma: f64,
    pub inner_exit: InnerExit,
    pub master_seconds: f64,
    pub centre_seconds: f64,
    pub oracle_seconds: f64,
    pub exact_seconds: f64,
}

/// Full run log with cumulative counters.
#[derive(Clone, Debug, Default)]
pub struct RunLog {
    pub iterations: Vec<IterationRecord>,
    pub exact_solves: usize,
    pub oracle_calls: usize,
}

impl RunLog {
    /// Deterministic quantities in columnar form, one column per named
    /// series. Timings are deliberately excluded; see
    /// [`RunLog::timing_columns`].
    pub fn columns(&self) -> Vec<(&'static str, Vec<f64>)> {
        let grab = |f: &dyn Fn(&IterationRecord) -> f64| self.iterations.iter().map(f).collect();
        vec![
            ("iteration", grab(&|r| r.iteration as f64)),
            ("lower", grab(&|r| r.lower)),
            ("upper", grab(&|r| r.upper)),
            ("candidate_lower", grab(&|r| r.candidate_lower)),
            ("candidate_upper", grab(&|r| r.candidate_upper)),
            ("exact_solves", grab(&|r| r.exact_solves as f64)),
            ("oracle_calls", grab(&|r| r.oracle_calls as f64)),
            ("gamma", grab(&|r| r.gamma)),
            ("inner_exit", grab(&|r| r.inner_exit.code())),
        ]
    }

    /// Wall-clock phase timings, kept apart from the deterministic columns
    /// so reproducible outputs stay byte-identical across runs.
    pub fn timing_columns(&self) -> Vec<(&'static str, Vec<f64>)> {
        let grab = |f: &dyn Fn(&IterationRecord) -> f64| self.iterations.iter().map(f).collect();
        vec![
            ("master_seconds", grab(&|r| r.master_seconds)),
            ("centre_seconds", grab(&|r| r.centre_seconds)),
            ("oracle_seconds", grab(&|r| r.oracle_seconds)),
            ("exact_seconds", grab(&|r| r.exact_seconds)),
        ]
    }
}
