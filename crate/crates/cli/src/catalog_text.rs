//! The `catalog` subcommand: a stable, human-readable table of every graph
//! family the builder accepts, with the closed forms the verifier relies on.
//!
//! `f(k)` is the maximum number of edges induced by `k` vertices; `g(r)` is
//! the minimum number of vertices in a ball of radius `r`. Entries without a
//! proven formula say where their values come from instead.

use range_lab_core::graph::catalog;

/// Closed-form (or provenance) text per family, keyed by catalog name.
fn closed_forms(name: &str) -> (&'static str, &'static str) {
    match name {
        "clique" => ("f(k)=k(k-1)/2", "g(0)=1; g(r)=m for r>=1"),
        "path" => ("f(k)=k-1", "g(r)=min(r+1, m)"),
        "cycle" => ("f(k)=k-1 for k<m; f(m)=m", "g(r)=min(2r+1, m)"),
        "star" => ("f(k)=k-1", "g(0)=1; g(1)=2; g(r)=k+1 for r>=2"),
        "box" => (
            "f: exact enumeration (small k), flagged ceiling beyond",
            "g: exact all-vertex sweep",
        ),
        "lollipop" => (
            "f(k)=k(k-1)/2 up to the clique, then +1 per path vertex",
            "g: exact all-vertex sweep",
        ),
        "ray" => ("f(k)=k-1", "g(r)=r+1"),
        "line" => ("f(k)=k-1", "g(r)=2r+1"),
        "lattice" => (
            "f: flagged ceiling k(k-1)/2",
            "g: d=1: 2r+1; d=2: 2r(r+1)+1; d=3: (2r+1)(2r^2+2r+3)/3",
        ),
        "regular-tree" => ("f(k)=k-1", "g(r)=1+d((d-1)^r-1)/(d-2)"),
        "infinite-lollipop" => (
            "f(k)=k(k-1)/2 up to the clique, then +1 per tail vertex",
            "q=floor(n/2): q<=2: g(r)=r+1; q>=3: g(0)=1, g(r)=min(2r+1, q+r-1)",
        ),
        "star-ray" => (
            "f(k)=k-1",
            "k=1: g(r)=r+1; k>=2: g(0)=1, g(1)=2, g(r)=min(2r+1, k+r-1) for r>=2",
        ),
        "multiscale-lollipop" => (
            "f: exact block-prefix maximum",
            "g: derived closed form, see docs",
        ),
        _ => ("f: see docs", "g: see docs"),
    }
}

/// Render the catalog table. One block per family, fixed order, no
/// timestamps: the output is byte-stable across runs.
pub fn render() -> String {
    let mut out = String::new();
    out.push_str("graph catalog: families accepted by run configurations\n");
    out.push_str("format: name (kind) params: ... | f, g closed forms | notes\n\n");
    for info in catalog::families() {
        let (f_text, g_text) = closed_forms(info.name);
        out.push_str(&format!("{} ({})\n", info.name, info.kind));
        let params = if info.params.is_empty() { "(none)" } else { info.params };
        out.push_str(&format!("  params: {params}\n"));
        out.push_str(&format!("  {f_text}\n"));
        out.push_str(&format!("  {g_text}\n"));
        if !info.notes.is_empty() {
            out.push_str(&format!("  note: {}\n", info.notes));
        }
        out.push('\n');
    }
    out
}
