//! Browser bindings. Every export takes plain values and returns a JSON
//! string; errors surface as thrown JS errors carrying the message.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use zpm_core::{enumerate_free_classes, enumerate_weak_classes, strong_invariant, weak_invariant, ActionData, Limits};

#[derive(Serialize)]
struct Report {
    total_genus: u64,
    strong_invariant: zpm_core::StrongInvariant,
    weak_invariant: zpm_core::WeakInvariant,
}

#[derive(Serialize)]
struct Row {
    k: usize,
    g: usize,
    n: usize,
    r: usize,
    total_genus: u64,
    multiset: Vec<Vec<u32>>,
}

// The browser has less headroom than the command line.
fn demo_limits() -> Limits {
    Limits { max_candidates: 200_000, max_oracle_candidates: 20_000, ..Limits::default() }
}

pub fn classify_json(input: &str) -> Result<String, String> {
    let a = ActionData::from_json(input).map_err(|e| format!("parse error: {e}"))?;
    let report = Report {
        total_genus: a.total_genus().map_err(|e| e.to_string())?,
        strong_invariant: strong_invariant(&a).map_err(|e| e.to_string())?,
        weak_invariant: weak_invariant(&a).map_err(|e| e.to_string())?,
    };
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

pub fn enumerate_json(p: u32, m: usize, g: usize, r_max: usize) -> Result<String, String> {
    let rows: Vec<Row> = enumerate_weak_classes(p, m, g, r_max, &demo_limits())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|w| Row { k: w.k, g: w.g, n: w.n, r: w.r, total_genus: w.total_genus(), multiset: w.canonical_multiset })
        .collect();
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

/// `grid[m-1][g]` = number of weak classes of free Z_p^m actions over a
/// genus-g quotient (the same for every p).
pub fn free_grid_json(m_max: usize, g_max: usize) -> Result<String, String> {
    if m_max == 0 || m_max > 64 || g_max > 64 {
        return Err("choose 1 <= m <= 64 and g <= 64".into());
    }
    let grid: Vec<Vec<usize>> =
        (1..=m_max).map(|m| (0..=g_max).map(|g| enumerate_free_classes(m, g).len()).collect()).collect();
    Ok(serde_json::to_string(&grid).expect("grid serializes"))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(input: &str) -> Result<String, JsError> {
    js(classify_json(input))
}

#[wasm_bindgen]
pub fn enumerate(p: u32, m: usize, g: usize, r_max: usize) -> Result<String, JsError> {
    js(enumerate_json(p, m, g, r_max))
}

#[wasm_bindgen]
pub fn free_class_grid(m_max: usize, g_max: usize) -> Result<String, JsError> {
    js(free_grid_json(m_max, g_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn classify_torus() {
        let raw = r#"{"p":3,"m":1,"g":0,"alpha_images":[],"beta_images":[],"branch_images":[[1],[1],[1]]}"#;
        let v: Value = serde_json::from_str(&classify_json(raw).unwrap()).unwrap();
        assert_eq!(v["total_genus"], 1);
        assert_eq!(v["weak_invariant"]["canonical_multiset"], serde_json::json!([[1], [1], [1]]));
        assert!(classify_json("{").unwrap_err().starts_with("parse error"));
        let bad = r#"{"p":3,"m":1,"g":0,"alpha_images":[],"beta_images":[],"branch_images":[[1]]}"#;
        assert!(classify_json(bad).unwrap_err().contains("sum"));
    }

    #[test]
    fn enumerate_rows() {
        let v: Vec<Value> = serde_json::from_str(&enumerate_json(3, 1, 0, 3).unwrap()).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1]["total_genus"], 1);
        assert!(enumerate_json(7, 3, 0, 9).unwrap_err().contains("exceeds limit"));
    }

    #[test]
    fn grid() {
        let grid: Vec<Vec<usize>> = serde_json::from_str(&free_grid_json(3, 2).unwrap()).unwrap();
        assert_eq!(grid, vec![vec![0, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]);
        assert!(free_grid_json(0, 1).is_err());
    }
}
