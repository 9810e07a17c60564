//! Fixed workloads shared by the criterion benches.

use wreath_core::{basilica, Element};

/// The sixteen relators `λ^k(τ_m)`, `m ∈ {1,3,5,7}`, `k ∈ 0..4`.
pub fn relators() -> Vec<Element> {
    let mut out = Vec::new();
    for m in [1, 3, 5, 7] {
        for k in 0..4 {
            out.push(basilica::relator(m, k).expect("odd index"));
        }
    }
    out
}

/// Positive words of length `len` in `a`, `b`, in lexicographic order.
pub fn positive_words(len: usize) -> Vec<Element> {
    (0..1usize << len)
        .map(|bits| {
            let s: String = (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 0 {
                        'a'
                    } else {
                        'b'
                    }
                })
                .collect();
            basilica::parse(&s).expect("letters are a and b")
        })
        .collect()
}
