use super::{bi, BiIndex, Domain, SchemeParams};

/// A linear combination of labels with integer coefficients, one term per
/// target label.
pub type Expansion = Vec<(BiIndex, i64)>;

fn keep_in_domain(domain: &Domain, terms: &[(BiIndex, i64)]) -> Expansion {
    terms
        .iter()
        .copied()
        .filter(|&(t, c)| c != 0 && domain.contains(t))
        .collect()
}

/// Expansion of `A_10 A_ij` in the adjacency basis. Targets outside the
/// domain are dropped.
pub fn a10_expansion(domain: &Domain, label: BiIndex) -> Expansion {
    let SchemeParams { r, k, .. } = domain.params();
    let BiIndex { i, j } = label;
    keep_in_domain(
        domain,
        &[
            (bi(i - 1, j), (k - i - j + 1) * (r - 2)),
            (bi(i, j), i * (r - 3) + j * (r - 2)),
            (bi(i + 1, j), i + 1),
        ],
    )
}

/// Expansion of `A_01 A_ij` in the adjacency basis (seven terms before
/// dropping out-of-domain targets).
pub fn a01_expansion(domain: &Domain, label: BiIndex) -> Expansion {
    let SchemeParams { r, k, n } = domain.params();
    let BiIndex { i, j } = label;
    keep_in_domain(
        domain,
        &[
            (bi(i - 1, j), (k - i - j + 1) * (r - 2) * j),
            (bi(i, j - 1), (k - i - j + 1) * (n - k - j + 1) * (r - 1)),
            (bi(i + 1, j), (i + 1) * j),
            (bi(i, j + 1), (j + 1) * (j + 1)),
            (bi(i + 1, j - 1), (i + 1) * (n - k - j + 1) * (r - 1)),
            (bi(i - 1, j + 1), (j + 1) * (j + 1) * (r - 2)),
            (
                bi(i, j),
                j * (k - i - j + (r - 2) * i + (n - k - j) * (r - 1)),
            ),
        ],
    )
}
