//! Instances shared by the benchmarks.

use nullcert::encoders::{encode_perfect_matching_v1, PolySystem};
use nullcert::graphs::Graph;
use nullcert::nulla::build_linear_system;

/// Bipartite graphs with unequal sides, so the degree-zero matching system
/// has a certificate. The graph has `n + 1` vertices.
pub fn unbalanced_bipartite(n: usize) -> Graph {
    Graph::complete_bipartite(n / 2, n - n / 2 + 1)
}

pub fn matching_system(n: usize) -> PolySystem {
    encode_perfect_matching_v1(&unbalanced_bipartite(n))
}

/// One CSV line per vertex count: `vertices,rows,cols,nonzeros` of the
/// degree-zero linear system.
pub fn dimension_csv(sizes: impl IntoIterator<Item = usize>) -> String {
    let mut out = String::from("vertices,rows,cols,nonzeros\n");
    for n in sizes {
        let s = matching_system(n);
        let ls = build_linear_system(&s, 0);
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.graph.n(),
            ls.matrix.n_rows(),
            ls.matrix.n_cols(),
            ls.matrix.nnz()
        ));
    }
    out
}
