//! Dual adjacency matrices and dual idempotents with respect to a base
//! vertex, the relations of the subconstituent algebra, and its primary
//! module.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bispectral::{
    build_quadruple, gl2_relations, hahn_relations, record_relation, Relation,
};
use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::error::{Error, Result};
use crate::exact::{int, one, ratio, solve_system, zero, BinaryMatrix, ExactMatrix, Scalar};
use crate::scheme::{bi, AdjacencyFamily, BiIndex, SchemeParams, Vertex};
use crate::spectra::SpectralData;

/// Dual adjacency matrices `A*_mn` and dual idempotents `E*_ij` with respect
/// to one base vertex, in domain order.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub base: Vertex,
    pub base_index: usize,
    pub dual_adjacency: Vec<ExactMatrix>,
    pub dual_idempotents: Vec<BinaryMatrix>,
}

impl DualPair {
    /// Diagonal of `A*_mn`.
    pub fn dual_adjacency_diagonal(&self, pos: usize) -> Vec<Scalar> {
        self.dual_adjacency[pos].diagonal_entries()
    }
}

/// `(A*_mn)_yy = v (E_mn)_{x0 y}` and `(E*_ij)_yy = (A_ij)_{x0 y}`.
pub fn build_duals(
    fam: &AdjacencyFamily,
    idempotents: &[ExactMatrix],
    base: &Vertex,
) -> Result<DualPair> {
    let base_index = fam.vertex_index(base).ok_or_else(|| {
        Error::Usage(format!(
            "base vertex {base} is not a vertex of {}",
            fam.params()
        ))
    })?;
    let v = fam.v();
    let vs = int(v as i64);
    let dual_adjacency = idempotents
        .iter()
        .map(|e| ExactMatrix::diagonal((0..v).map(|y| e.get(base_index, y) * &vs).collect()))
        .collect();
    let dual_idempotents = fam
        .matrices()
        .iter()
        .map(|a| BinaryMatrix::from_fn(v, |y, z| y == z && a.get(base_index, y)))
        .collect();
    Ok(DualPair {
        base: base.clone(),
        base_index,
        dual_adjacency,
        dual_idempotents,
    })
}

/// `count` vertex indices spread evenly over `0..v`, always including the
/// first and (for `count >= 2`) the last; the default of 3 gives first,
/// middle and last.
pub fn select_bases(v: usize, count: usize) -> Vec<usize> {
    if v == 0 || count == 0 {
        return Vec::new();
    }
    let mut out: Vec<usize> = if count == 1 {
        vec![0]
    } else {
        (0..count).map(|t| t * (v - 1) / (count - 1)).collect()
    };
    out.dedup();
    out
}

/// The invariants of the dual pair: diagonal shape, `sum E* = I`,
/// `E*_a E*_b = delta E*_a`, `A*_mn = sum q_mn(ij) E*_ij`,
/// `E*_ij = (1/v) sum p_ij(mn) A*_mn` and `A*_a A*_b = sum q_ab^c A*_c`.
pub fn dual_pair_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Certificate {
    let mut cert = CertificateBuilder::new("dual-pair", spec.params());
    let v = fam.v();
    let labels = spec.domain().labels();
    let a_star: Vec<Vec<Scalar>> = (0..labels.len())
        .map(|p| duals.dual_adjacency_diagonal(p))
        .collect();
    let e_star: Vec<Vec<bool>> = duals
        .dual_idempotents
        .iter()
        .map(|m| (0..v).map(|y| m.get(y, y)).collect())
        .collect();
    let base = duals.base_index as i64;

    for (p, m) in duals.dual_adjacency.iter().enumerate() {
        if !m.is_diagonal() {
            cert.fail(Witness::new(
                format!("A*{} not diagonal", labels[p]),
                vec![base],
                "diagonal",
                "not diagonal",
            ));
        }
    }
    for (p, m) in duals.dual_idempotents.iter().enumerate() {
        if (0..v).any(|y| m.row_sum(y) != usize::from(m.get(y, y))) {
            cert.fail(Witness::new(
                format!("E*{} not diagonal", labels[p]),
                vec![base],
                "diagonal",
                "not diagonal",
            ));
        }
    }
    for y in 0..v {
        let hits = e_star.iter().filter(|d| d[y]).count();
        if hits != 1 {
            cert.fail(Witness::new(
                "sum of dual idempotents != I (E* not orthogonal or incomplete)",
                vec![base, y as i64],
                1,
                hits,
            ));
        }
    }
    for y in 0..v {
        let Some(ij) = (0..labels.len()).find(|&p| e_star[p][y]) else {
            continue;
        };
        for (pm, &mn) in labels.iter().enumerate() {
            cert.expect_eq(
                || {
                    (
                        format!("A*{mn} = sum q{mn}(ij) E*ij"),
                        vec![base, y as i64, mn.i, mn.j],
                    )
                },
                spec.q(mn, labels[ij]),
                &a_star[pm][y],
            );
        }
        let vs = int(v as i64);
        for (pi, &l) in labels.iter().enumerate() {
            let value = labels.iter().enumerate().fold(zero(), |acc, (pm, &mn)| {
                acc + spec.p(l, mn) * &a_star[pm][y]
            }) / &vs;
            cert.expect_eq(
                || {
                    (
                        format!("E*{l} = (1/v) sum p{l}(mn) A*mn"),
                        vec![base, y as i64, l.i, l.j],
                    )
                },
                &int(i64::from(e_star[pi][y])),
                &value,
            );
        }
        for (pa, &a) in labels.iter().enumerate() {
            for (pb, &b) in labels.iter().enumerate().skip(pa) {
                let product = &a_star[pa][y] * &a_star[pb][y];
                let expansion = labels.iter().enumerate().fold(zero(), |acc, (pc, &c)| {
                    acc + spec.krein(a, b, c) * &a_star[pc][y]
                });
                cert.expect_eq(
                    || {
                        (
                            format!("A*{a} A*{b} = sum q_{{{a},{b}}}^c A*c"),
                            vec![base, y as i64, a.i, a.j, b.i, b.j],
                        )
                    },
                    &expansion,
                    &product,
                );
            }
        }
    }
    cert.finish()
}

/// `counts[(a, c, b)]`: number of ordered pairs `(y, z)` with `y` in relation
/// `a` to the base, `(y, z)` in relation `c` and `z` in relation `b` to the
/// base. Positions are domain positions.
fn triple_counts(fam: &AdjacencyFamily, base: usize) -> HashMap<(usize, usize, usize), u64> {
    let v = fam.v();
    let base_class: Vec<usize> = (0..v).map(|y| fam.class_position(base, y)).collect();
    let partial: Vec<HashMap<(usize, usize, usize), u64>> = (0..v)
        .into_par_iter()
        .map(|y| {
            let mut local = HashMap::new();
            for z in 0..v {
                *local
                    .entry((base_class[y], fam.class_position(y, z), base_class[z]))
                    .or_insert(0) += 1;
            }
            local
        })
        .collect();
    let mut out = HashMap::new();
    for local in partial {
        for (key, c) in local {
            *out.entry(key).or_insert(0) += c;
        }
    }
    out
}

/// `E*_ij A_mn E*_rs = 0` iff `p_{ij,mn}^{rs} = 0`, and `E_ij A*_mn E_rs = 0`
/// iff `q_{ij,mn}^{rs} = 0`, over all index triples.
///
/// The second product is tested through its squared Frobenius norm
/// `sum_{y,z} d_y d_z (E_ij)_yz (E_rs)_yz` with `d` the diagonal of `A*_mn`.
pub fn triple_product_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Certificate {
    let mut cert = CertificateBuilder::new("triple-products", spec.params());
    let labels = spec.domain().labels();
    let len = labels.len();
    let counts = triple_counts(fam, duals.base_index);
    let base = duals.base_index as i64;

    for (a, &ij) in labels.iter().enumerate() {
        for (c, &mn) in labels.iter().enumerate() {
            for (b, &rs) in labels.iter().enumerate() {
                let vanishes = !counts.contains_key(&(a, c, b));
                let p_zero = *spec.intersection(ij, mn, rs) == zero();
                if vanishes != p_zero {
                    cert.fail(Witness::new(
                        format!("E*{ij} A{mn} E*{rs} vanishing vs p_{{{ij},{mn}}}^{rs} = 0"),
                        vec![base, ij.i, ij.j, mn.i, mn.j, rs.i, rs.j],
                        if p_zero {
                            "zero product"
                        } else {
                            "nonzero product"
                        },
                        if vanishes {
                            "zero product"
                        } else {
                            "nonzero product"
                        },
                    ));
                }
            }
        }
    }

    // d_y depends only on the relation of y to the base
    let class_value: Vec<Vec<Scalar>> = (0..len)
        .map(|pm| {
            let diag = duals.dual_adjacency_diagonal(pm);
            (0..len)
                .map(|a| {
                    (0..fam.v())
                        .find(|&y| fam.class_position(duals.base_index, y) == a)
                        .map_or_else(zero, |y| diag[y].clone())
                })
                .collect()
        })
        .collect();
    let entries: Vec<((usize, usize, usize), Scalar)> = counts
        .iter()
        .map(|(&key, &c)| (key, int(c as i64)))
        .collect();
    let results: Vec<(usize, usize, usize, bool)> = (0..len * len * len)
        .into_par_iter()
        .map(|t| {
            let (ij, mn, rs) = (t / (len * len), (t / len) % len, t % len);
            let norm = entries.iter().fold(zero(), |acc, ((a, c, b), count)| {
                acc + count
                    * &class_value[mn][*a]
                    * &class_value[mn][*b]
                    * spec.q(labels[ij], labels[*c])
                    * spec.q(labels[rs], labels[*c])
            });
            (ij, mn, rs, norm == zero())
        })
        .collect();
    for (ij, mn, rs, vanishes) in results {
        let (ij, mn, rs) = (labels[ij], labels[mn], labels[rs]);
        let q_zero = *spec.krein(ij, mn, rs) == zero();
        if vanishes != q_zero {
            cert.fail(Witness::new(
                format!("E{ij} A*{mn} E{rs} vanishing vs q_{{{ij},{mn}}}^{rs} = 0"),
                vec![base, ij.i, ij.j, mn.i, mn.j, rs.i, rs.j],
                if q_zero {
                    "zero product"
                } else {
                    "nonzero product"
                },
                if vanishes {
                    "zero product"
                } else {
                    "nonzero product"
                },
            ));
        }
    }
    cert.finish()
}

/// The constants `c1`, `c2` of the fifth subconstituent relation.
pub fn tridiagonal_constants(params: SchemeParams) -> (i64, i64) {
    let SchemeParams { r, k, n } = params;
    let c1 = n * (n + 2) * (r - 1) * (r - 1) + k * k * r * r - 2 * k * (r - 1) * (r * (n + 1) - 2);
    let c2 = 2 * (k * r - (n - 1) * (r - 1));
    (c1, c2)
}

/// The five relations between `A_10`, `A_01`, `A*_10`, `A*_01`.
pub fn subconstituent_relations(
    params: SchemeParams,
    a10: &ExactMatrix,
    a01: &ExactMatrix,
    s10: &ExactMatrix,
    s01: &ExactMatrix,
) -> Vec<Relation> {
    let SchemeParams { r, k, n } = params;
    let dim = a10.dim();
    let s = |c: Scalar| ExactMatrix::scalar(dim, c);
    let (c1, c2) = tridiagonal_constants(params);
    let dg = (ratio(n * (r - 1), k)) * ratio(n * (r - 1), k);
    let td = ratio(n * (n - 1), k * (n - k)) * ratio(n * (n - 1), k * (n - k));

    let inner10 = s10.bracket(a10);
    let inner10_rev = a10.bracket(s10);
    let inner01 = s01.bracket(a01);
    let a01_sq = a01 * a01;
    let coefficient = &(&s(int(c1)) + &(&s(int(c2)) * a10)) + &(a10 * a10);
    let fifth_inner = &(&(&(&s(int(2)) * &(&(a01 * s01) * a01)) - &a01_sq.anticommutator(s01))
        + &(&s(int(2 * (r - 1))) * &a01.anticommutator(s01)))
        + &(&coefficient * s01);
    vec![
        Relation {
            name: "[A*01, A10] = 0",
            lhs: s01.bracket(a10),
            rhs: ExactMatrix::zeros(dim),
        },
        Relation {
            name: "[A*10,[A*10,[A*10,A10]]] = (n(r-1)/k)^2 [A*10,A10]",
            lhs: s10.bracket(&s10.bracket(&inner10)),
            rhs: inner10.scale(&dg),
        },
        Relation {
            name: "[A10,[A10,[A10,A*10]]] = (r-1)^2 [A10,A*10]",
            lhs: a10.bracket(&a10.bracket(&inner10_rev)),
            rhs: inner10_rev.scale(&int((r - 1) * (r - 1))),
        },
        Relation {
            name: "[A*01,[A*01,[A*01,A01]]] = (n(n-1)/(k(n-k)))^2 [A*01,A01]",
            lhs: s01.bracket(&s01.bracket(&inner01)),
            rhs: inner01.scale(&td),
        },
        Relation {
            name: "[A01, 2A01A*01A01 - {A01^2,A*01} + 2(r-1){A01,A*01} + (c1 + c2A10 + A10^2)A*01] = 0",
            lhs: a01.bracket(&fifth_inner),
            rhs: ExactMatrix::zeros(dim),
        },
    ]
}

fn generators(fam: &AdjacencyFamily, spec: &SpectralData, duals: &DualPair) -> [ExactMatrix; 4] {
    let pos = |l: BiIndex| {
        spec.domain()
            .index_of(l)
            .expect("generator label in the domain")
    };
    [
        fam.matrix(bi(1, 0)).expect("(1,0) label").to_exact(),
        fam.matrix(bi(0, 1)).expect("(0,1) label").to_exact(),
        duals.dual_adjacency[pos(bi(1, 0))].clone(),
        duals.dual_adjacency[pos(bi(0, 1))].clone(),
    ]
}

/// The five subconstituent relations as exact `v x v` identities.
pub fn subconstituent_relations_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Certificate {
    let mut cert = CertificateBuilder::new("subconstituent-relations", spec.params());
    let [a10, a01, s10, s01] = generators(fam, spec, duals);
    let context = format!("base {}: ", duals.base);
    for relation in subconstituent_relations(spec.params(), &a10, &a01, &s10, &s01) {
        record_relation(&mut cert, &context, &relation);
    }
    cert.finish()
}

/// Matrix of `op` on the basis `{A_ij x^}`: `R[t][s]` is the coefficient of
/// `A_t x^` in `op A_s x^`.
fn represent(basis: &[Vec<Scalar>], images: &[Vec<Scalar>]) -> Option<ExactMatrix> {
    let v = basis.first().map_or(0, Vec::len);
    let len = basis.len();
    let a: Vec<Vec<Scalar>> = (0..v)
        .map(|y| basis.iter().map(|b| b[y].clone()).collect())
        .collect();
    let rhs: Vec<Vec<Scalar>> = (0..v)
        .map(|y| images.iter().map(|b| b[y].clone()).collect())
        .collect();
    let solution = solve_system(&a, &rhs)?;
    ExactMatrix::from_entries(len, solution.into_iter().flatten().collect()).ok()
}

fn apply(m: &ExactMatrix, vector: &[Scalar]) -> Vec<Scalar> {
    (0..m.dim())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(vector)
                .filter(|(e, _)| **e != zero())
                .fold(zero(), |acc, (e, x)| acc + e * x)
        })
        .collect()
}

/// Representations of `A_10`, `A_01`, `A*_10`, `A*_01` on the primary module
/// with basis `{A_ij x^}`.
pub fn primary_module_representation(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Result<[ExactMatrix; 4]> {
    let v = fam.v();
    let base = duals.base_index;
    let basis: Vec<Vec<Scalar>> = fam
        .matrices()
        .iter()
        .map(|a| (0..v).map(|y| int(i64::from(a.get(y, base)))).collect())
        .collect();
    let gens = generators(fam, spec, duals);
    let mut out = Vec::with_capacity(4);
    for g in &gens {
        let images: Vec<Vec<Scalar>> = basis.iter().map(|b| apply(g, b)).collect();
        let rep = represent(&basis, &images).ok_or_else(|| {
            Error::Internal(format!(
                "primary module at base {} is degenerate",
                duals.base
            ))
        })?;
        out.push(rep);
    }
    Ok(out.try_into().expect("four generators"))
}

/// On the primary module: `A*_10`, `A*_01` are diagonal with `theta*_ij`,
/// `mu*_ij`; `A_10 = X + k(r-2)`, `A_01 = Y`; the dual formulas give `X*`,
/// `Y*`; and the five subconstituent relations hold for the representation.
pub fn primary_module_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Certificate {
    let params = spec.params();
    let SchemeParams { r, k, n } = params;
    let mut cert = CertificateBuilder::new("primary-module", params);
    let [a10, a01, s10, s01] = match primary_module_representation(fam, spec, duals) {
        Ok(reps) => reps,
        Err(e) => {
            cert.fail(Witness::new(
                e.to_string(),
                vec![duals.base_index as i64],
                "basis",
                "degenerate",
            ));
            return cert.finish();
        }
    };
    let q = build_quadruple(params);
    let len = q.basis.len();
    let s = |c: Scalar| ExactMatrix::scalar(len, c);
    let theta_star = ExactMatrix::diagonal(
        q.basis
            .iter()
            .map(|&l| spec.q(bi(1, 0), l).clone())
            .collect(),
    );
    let mu_star = ExactMatrix::diagonal(
        q.basis
            .iter()
            .map(|&l| spec.q(bi(0, 1), l).clone())
            .collect(),
    );

    let x_star = &(&s(ratio(k * (r - 2), n * (r - 1)))
        * &(&s(int(k)) + &(&s(ratio(n - k, n - 1)) * &s01)))
        - &(&s(ratio(k, n * (r - 1))) * &s10);
    let y_star = &s(ratio(k * (n - k), n)) * &(&s(one()) - &(&s(ratio(1, n - 1)) * &s01));

    let checks = [
        ("rep(A*10) = diag(theta*)", &s10, theta_star),
        ("rep(A*01) = diag(mu*)", &s01, mu_star),
        ("rep(A10) = X + k(r-2)", &a10, &q.x + &s(int(k * (r - 2)))),
        ("rep(A01) = Y", &a01, q.y.clone()),
        ("X* from A*10, A*01", &x_star, q.x_star.clone()),
        ("Y* from A*01", &y_star, q.y_star.clone()),
    ];
    let context = format!("base {}: ", duals.base);
    for (name, lhs, rhs) in checks {
        record_relation(
            &mut cert,
            &context,
            &Relation {
                name,
                lhs: lhs.clone(),
                rhs,
            },
        );
    }
    for relation in subconstituent_relations(params, &a10, &a01, &s10, &s01) {
        record_relation(&mut cert, &format!("{context}primary module: "), &relation);
    }
    cert.finish()
}

/// Substitutes `A_10`, `A_01`, `A*_10`, `A*_01` for `X`, `Y`, `X*`, `Y*` in
/// the `gl_2` and Hahn-algebra relations; passes when at least one residual
/// is nonzero, i.e. the raw generators do not satisfy those relations.
pub fn raw_generator_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    duals: &DualPair,
) -> Certificate {
    let params = spec.params();
    let mut cert = CertificateBuilder::new("raw-generators", params);
    let [a10, a01, s10, s01] = generators(fam, spec, duals);
    let mut relations = gl2_relations(params, &a10, &s10, &s01);
    relations.extend(hahn_relations(params, &a10, &a01, &s01));
    let broken: Vec<&str> = relations
        .iter()
        .filter(|r| !r.holds())
        .map(|r| r.name)
        .collect();
    if broken.is_empty() {
        cert.fail(Witness::new(
            "A10, A01, A*10, A*01 satisfy every gl2 and Hahn-algebra relation",
            vec![duals.base_index as i64],
            "some nonzero residual",
            "all residuals zero",
        ));
    } else {
        cert.note(format!(
            "nonzero residuals for the raw generators: {}",
            broken.join("; ")
        ));
    }
    cert.finish()
}

/// All subconstituent-algebra checks for the given base vertex indices, plus
/// the raw-generator check at the first base.
pub fn terwilliger_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    idempotents: &[ExactMatrix],
    bases: &[usize],
) -> Certificate {
    let params = spec.params();
    if !(spec.domain().contains(bi(1, 0)) && spec.domain().contains(bi(0, 1))) {
        return Certificate::skipped(
            "terwilliger",
            params,
            "needs both (1,0) and (0,1) in the domain (0 < k < n)",
        );
    }
    if !params.q_polynomial_range() {
        return Certificate::skipped(
            "terwilliger",
            params,
            "relations stated for n >= 2k - 1 only",
        );
    }
    let mut parts: Vec<Certificate> = bases
        .par_iter()
        .flat_map_iter(|&b| {
            let vertex = &fam.vertices()[b];
            match build_duals(fam, idempotents, vertex) {
                Ok(duals) => {
                    let mut out = vec![
                        dual_pair_check(fam, spec, &duals),
                        triple_product_check(fam, spec, &duals),
                        subconstituent_relations_check(fam, spec, &duals),
                        primary_module_check(fam, spec, &duals),
                    ];
                    if Some(&b) == bases.first() {
                        out.push(raw_generator_check(fam, spec, &duals));
                    }
                    out
                }
                Err(e) => {
                    let mut c = CertificateBuilder::new("dual-pair", params);
                    c.fail(Witness::new(
                        e.to_string(),
                        vec![b as i64],
                        "vertex",
                        "missing",
                    ));
                    vec![c.finish()]
                }
            }
        })
        .collect();
    let mut note = CertificateBuilder::new("bases", params);
    note.note(format!(
        "base vertices: {}",
        bases
            .iter()
            .map(|&b| fam.vertices()[b].to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    parts.push(note.finish());
    Certificate::merge("terwilliger", params, &parts)
}
