//! Test reports: human-readable text and the machine-readable JSON shape.

use serde::Serialize;

/// One test's outcome with full reproducibility metadata.
#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub test: String,
    pub statistic: f64,
    pub p_value: f64,
    pub critical_values: Vec<CriticalValue>,
    pub k: usize,
    pub n: Vec<usize>,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ecdf: Option<String>,
    pub null: NullProvenance,
    pub ties: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalValue {
    pub alpha: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NullProvenance {
    pub method: String,
    pub reps: usize,
    pub seed: u64,
    pub grid: usize,
}

/// Formats with six significant digits for the human-readable output.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl TestReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("test {}\n", self.test));
        out.push_str(&format!("  statistic        {}\n", sig6(self.statistic)));
        out.push_str(&format!(
            "  p-value          {}  (method={}, reps={}, seed={}, grid={})\n",
            sig6(self.p_value),
            self.null.method,
            self.null.reps,
            self.null.seed,
            self.null.grid
        ));
        let crits: Vec<String> = self
            .critical_values
            .iter()
            .map(|cv| format!("alpha={} -> {}", cv.alpha, sig6(cv.value)))
            .collect();
        out.push_str(&format!("  critical values  {}\n", crits.join(" | ")));
        let group_sizes: Vec<String> = self.n.iter().map(|n| n.to_string()).collect();
        out.push_str(&format!(
            "  design           k={} n=[{}] order={}{}\n",
            self.k,
            group_sizes.join(", "),
            self.order,
            self.ecdf
                .as_ref()
                .map(|e| format!(" ecdf={e}"))
                .unwrap_or_default()
        ));
        out.push_str(&format!(
            "  ties             {} pooled point(s) with multiplicity > 1\n",
            self.ties
        ));
        out
    }
}
