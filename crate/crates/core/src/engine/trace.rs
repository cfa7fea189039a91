//! Per-cycle trace records (JSON lines).

use serde::Serialize;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CycleTrace {
    pub cycle: u64,
    /// 1-based cell column read this cycle; `None` for a DR-free cycle.
    pub column: Option<usize>,
    pub dr_symbols: Vec<(usize, u32)>,
    pub excluded_rows: Vec<usize>,
    pub recorded: bool,
    pub reloaded: bool,
    /// Records dropped by the load check this cycle.
    pub discarded: u32,
    pub emitted_row: Option<usize>,
    /// Survivor group handed to the next bit slice.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub forwarded_rows: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<usize>,
}

impl CycleTrace {
    pub fn new(cycle: u64) -> Self {
        CycleTrace { cycle, ..Default::default() }
    }
}

pub fn to_jsonl(trace: &[CycleTrace]) -> String {
    let mut out = String::new();
    for t in trace {
        out.push_str(&serde_json::to_string(t).expect("trace records always serialize"));
        out.push('\n');
    }
    out
}
