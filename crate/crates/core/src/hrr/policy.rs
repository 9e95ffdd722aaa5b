use rug::{Float, Integer};

/// How many terms of the series to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Stop at `N = max(4 ceil(sqrt n), 2 r s)` once the rounded partial sums
    /// have agreed over the last `r s` terms, extending up to
    /// `max(64 ceil(sqrt n), initial)` if they have not.
    Default,
    /// Sum exactly this many terms.
    Fixed(u64),
    /// Same rule as `Default` with explicit numbers.
    Window { initial: u64, window: u64, max: u64 },
}

/// Truncation rule plus evaluation options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub truncation: Truncation,
    /// Working precision in bits; chosen automatically when `None`.
    pub precision_bits: Option<u32>,
    /// Compare the rounded value against the partition-counting oracle.
    pub oracle_check: bool,
    /// Keep every partial sum in the report.
    pub keep_trace: bool,
    /// Evaluate terms whose total size is provably tiny in double precision.
    /// Turning this off runs every term at the working precision.
    pub adaptive: bool,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            truncation: Truncation::Default,
            precision_bits: None,
            oracle_check: false,
            keep_trace: false,
            adaptive: true,
        }
    }
}

impl TruncationPolicy {
    pub fn fixed(n_terms: u64) -> Self {
        TruncationPolicy {
            truncation: Truncation::Fixed(n_terms),
            ..Self::default()
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.keep_trace = true;
        self
    }

    pub fn with_oracle(mut self) -> Self {
        self.oracle_check = true;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = Some(bits);
        self
    }

    pub fn uniform_precision(mut self) -> Self {
        self.adaptive = false;
        self
    }

    /// `(initial, window, max)` for a series with the given default start,
    /// stability window and cap.
    pub(crate) fn plan(
        &self,
        default_initial: u64,
        default_window: u64,
        default_max: u64,
    ) -> (u64, u64, u64) {
        match self.truncation {
            Truncation::Fixed(n) => (n, 1, n),
            Truncation::Default => {
                let max = default_max.max(default_initial);
                (default_initial, default_window, max)
            }
            Truncation::Window {
                initial,
                window,
                max,
            } => (initial.max(window), window.max(1), max.max(initial)),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self.truncation, Truncation::Fixed(_))
    }
}

/// Side information collected while summing.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    /// Largest `|Im A| / (1 + |Re A|)` seen over the inner exponential sums.
    pub max_imag_ratio: f64,
    /// `(k, m)` pairs whose imaginary part exceeded the realness tolerance.
    pub realness_violations: Vec<(u64, u64)>,
    /// Terms evaluated in double precision.
    pub fast_terms: u64,
    /// Terms evaluated at the working precision.
    pub full_terms: u64,
    pub warnings: Vec<String>,
}

/// Result of summing one of the series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReport {
    /// Nearest integer to the last partial sum.
    pub value: Integer,
    /// Number of terms summed.
    pub n_used: u64,
    /// The last partial sum `S_N`.
    pub sum: Float,
    /// `|S_N - value|`.
    pub residual: Float,
    /// `(N, S_N)` for every `N` up to `n_used`, if requested.
    pub partial_sums: Option<Vec<(u64, Float)>>,
    pub precision_bits: u32,
    pub oracle_checked: bool,
    pub diagnostics: Diagnostics,
}

/// Tracks how long the rounded partial sums have stayed the same.
#[derive(Debug, Default)]
pub(crate) struct StabilityTracker {
    last: Option<Integer>,
    streak: u64,
}

impl StabilityTracker {
    pub fn push(&mut self, partial: &Float) -> u64 {
        let r = crate::bigfloat::round_to_integer(partial);
        if self.last.as_ref() == Some(&r) {
            self.streak += 1;
        } else {
            self.last = Some(r);
            self.streak = 1;
        }
        self.streak
    }
}
