//! Eigenvalues, dual eigenvalues, idempotents, Krein parameters and the
//! spectral route to the intersection numbers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::error::{Error, Result};
use crate::exact::{int, one, pow, ratio, zero, ExactMatrix, Scalar};
use crate::orthopoly::{binomial, eberlein, hahn, krawtchouk};
use crate::scheme::{bi, intersection_numbers, AdjacencyFamily, BiIndex, Domain, SchemeParams};

/// Largest vertex count for which Krein parameters are also recomputed from
/// explicit Hadamard products of the idempotents.
pub const HADAMARD_CROSS_CHECK_LIMIT: usize = 30;

/// Offsets `(m - i, n - j)` at which `p_{10,ij}^{mn}` may be nonzero.
pub const P10_STENCIL: &[(i64, i64)] = &[(0, 0), (1, 0), (-1, 0)];
/// Offsets at which `p_{01,ij}^{mn}` may be nonzero.
pub const P01_STENCIL: &[(i64, i64)] = &[
    (0, 0),
    (0, 1),
    (0, -1),
    (1, 0),
    (-1, 0),
    (1, -1),
    (-1, 1),
    (2, -1),
    (-2, 1),
];
/// Offsets at which `q_{10,ij}^{mn}` may be nonzero.
pub const Q10_STENCIL: &[(i64, i64)] = &[(0, 0), (1, 0), (-1, 0), (-1, 1), (1, -1)];
/// Offsets at which `q_{01,ij}^{mn}` may be nonzero.
pub const Q01_STENCIL: &[(i64, i64)] = &[(0, 0), (0, 1), (0, -1)];

/// `p_ij(x, y) = (r-1)^j K_i(x, k-j, r-1) E_j(y, n-x, k-x)`.
pub fn eigenvalue_p(params: SchemeParams, i: i64, j: i64, x: i64, y: i64) -> Scalar {
    let SchemeParams { r, k, n } = params;
    pow(&int(r - 1), j as u32) * krawtchouk(i, x, k - j, r - 1) * eberlein(j, y, n - x, k - x)
}

/// `q_ij(x, y) = C(n,i)/C(k,i) K_i(x, k-y, r-1) H_j(y, n-i, k-i)`.
///
/// The Hahn factor is undefined exactly when `y > k - i`; there the
/// Krawtchouk factor vanishes (degree `i` exceeds `k - y >= x`) and the value
/// is 0.
pub fn dual_eigenvalue_q(params: SchemeParams, i: i64, j: i64, x: i64, y: i64) -> Result<Scalar> {
    let SchemeParams { r, k, n } = params;
    let kraw = krawtchouk(i, x, k - y, r - 1);
    if kraw == zero() {
        return Ok(zero());
    }
    let h = hahn(j, y, n - i, k - i)?;
    Ok(binomial(n, i) / binomial(k, i) * kraw * h)
}

/// `m_xy = (r-2)^x C(n,x) (C(n-x,y) - C(n-x,y-1))`.
pub fn multiplicity(params: SchemeParams, x: i64, y: i64) -> Scalar {
    let SchemeParams { r, n, .. } = params;
    pow(&int(r - 2), x as u32) * binomial(n, x) * (binomial(n - x, y) - binomial(n - x, y - 1))
}

/// `theta_xy = k(r-2) - x(r-1)`, the eigenvalue of `A_10`.
pub fn theta(params: SchemeParams, x: i64, _y: i64) -> Scalar {
    let SchemeParams { r, k, .. } = params;
    int(k * (r - 2) - x * (r - 1))
}

/// `mu_xy = (r-1)((k-x-y)(n-k-y) - y)`, the eigenvalue of `A_01`.
pub fn mu(params: SchemeParams, x: i64, y: i64) -> Scalar {
    let SchemeParams { r, k, n } = params;
    int((r - 1) * ((k - x - y) * (n - k - y) - y))
}

/// `theta*_xy = (n/k)((r-2)(k-y) - x(r-1))`. Requires `k > 0`.
pub fn theta_star(params: SchemeParams, x: i64, y: i64) -> Scalar {
    let SchemeParams { r, k, n } = params;
    ratio(n, k) * int((r - 2) * (k - y) - x * (r - 1))
}

/// `mu*_xy = (n-1)(1 - n y / (k(n-k)))`. Requires `0 < k < n`.
pub fn mu_star(params: SchemeParams, _x: i64, y: i64) -> Scalar {
    let SchemeParams { k, n, .. } = params;
    int(n - 1) * (one() - ratio(n * y, k * (n - k)))
}

/// Eigenvalue and dual eigenvalue tables of one instance together with the
/// derived structure constants.
#[derive(Debug, Clone)]
pub struct SpectralData {
    params: SchemeParams,
    domain: Domain,
    /// `p[rel * len + idem] = p_rel(idem)`.
    p: Vec<Scalar>,
    /// `q[idem * len + rel] = q_idem(rel)`.
    q: Vec<Scalar>,
    /// `krein[(a * len + b) * len + c] = q_{a,b}^c`.
    krein: Vec<Scalar>,
    /// `intersection[(a * len + b) * len + c] = p_{a,b}^c`.
    intersection: Vec<Scalar>,
}

impl SpectralData {
    /// Evaluates both tables and solves for the Krein parameters and the
    /// intersection numbers.
    pub fn new(params: SchemeParams) -> Result<Self> {
        let domain = Domain::new(params);
        let labels = domain.labels();
        let len = labels.len();
        let grid: Vec<(BiIndex, BiIndex)> = labels
            .iter()
            .flat_map(|&a| labels.iter().map(move |&b| (a, b)))
            .collect();
        let p: Vec<Scalar> = grid
            .par_iter()
            .map(|&(rel, idem)| eigenvalue_p(params, rel.i, rel.j, idem.i, idem.j))
            .collect();
        let q: Vec<Scalar> = grid
            .par_iter()
            .map(|&(idem, rel)| dual_eigenvalue_q(params, idem.i, idem.j, rel.i, rel.j))
            .collect::<Result<_>>()?;

        // row (a,b), column (m,n): value of the (m,n) entry of the table at (a,b)
        let q_by_point = ExactMatrix::from_fn(len, |ab, mn| q[mn * len + ab].clone());
        let p_by_point = ExactMatrix::from_fn(len, |ab, mn| p[mn * len + ab].clone());
        let q_inv = q_by_point
            .inverse()
            .ok_or_else(|| Error::Singular(format!("Q-table of {params} is singular")))?;
        let p_inv = p_by_point
            .inverse()
            .ok_or_else(|| Error::Singular(format!("P-table of {params} is singular")))?;

        let structure = |table: &[Scalar], inv: &ExactMatrix| -> Vec<Scalar> {
            (0..len * len)
                .into_par_iter()
                .flat_map_iter(|ab| {
                    let (a, b) = (ab / len, ab % len);
                    let rhs: Vec<Scalar> = (0..len)
                        .map(|pt| &table[a * len + pt] * &table[b * len + pt])
                        .collect();
                    (0..len)
                        .map(|c| (0..len).fold(zero(), |acc, pt| acc + inv.get(c, pt) * &rhs[pt]))
                        .collect::<Vec<_>>()
                })
                .collect()
        };
        let krein = structure(&q, &q_inv);
        let intersection = structure(&p, &p_inv);

        Ok(SpectralData {
            params,
            domain,
            p,
            q,
            krein,
            intersection,
        })
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    fn pos(&self, l: BiIndex) -> usize {
        self.domain
            .index_of(l)
            .unwrap_or_else(|| panic!("label {l} outside the domain of {}", self.params))
    }

    /// `p_rel(idem)`. Panics if a label lies outside the domain.
    pub fn p(&self, rel: BiIndex, idem: BiIndex) -> &Scalar {
        &self.p[self.pos(rel) * self.domain.len() + self.pos(idem)]
    }

    /// `q_idem(rel)`. Panics if a label lies outside the domain.
    pub fn q(&self, idem: BiIndex, rel: BiIndex) -> &Scalar {
        &self.q[self.pos(idem) * self.domain.len() + self.pos(rel)]
    }

    pub fn valency(&self, rel: BiIndex) -> &Scalar {
        self.p(rel, bi(0, 0))
    }

    pub fn multiplicity(&self, idem: BiIndex) -> &Scalar {
        self.q(idem, bi(0, 0))
    }

    /// Krein parameter `q_{a,b}^c`.
    pub fn krein(&self, a: BiIndex, b: BiIndex, c: BiIndex) -> &Scalar {
        let len = self.domain.len();
        &self.krein[(self.pos(a) * len + self.pos(b)) * len + self.pos(c)]
    }

    /// Krein parameter, or 0 when any label lies outside the domain.
    pub fn krein_or_zero(&self, a: BiIndex, b: BiIndex, c: BiIndex) -> Scalar {
        if [a, b, c].iter().all(|&l| self.domain.contains(l)) {
            self.krein(a, b, c).clone()
        } else {
            zero()
        }
    }

    /// Intersection number `p_{a,b}^c` from the eigenvalue table.
    pub fn intersection(&self, a: BiIndex, b: BiIndex, c: BiIndex) -> &Scalar {
        let len = self.domain.len();
        &self.intersection[(self.pos(a) * len + self.pos(b)) * len + self.pos(c)]
    }

    /// Number of vertices, `sum k_ij`.
    pub fn v(&self) -> Scalar {
        self.domain
            .iter()
            .fold(zero(), |acc, l| acc + self.valency(l))
    }
}

/// Krein parameters `q_{ij,kl}^{mn}` for all `(m, n)`.
pub fn krein_parameters(
    spec: &SpectralData,
    ij: BiIndex,
    kl: BiIndex,
) -> Result<BTreeMap<BiIndex, Scalar>> {
    require(spec, &[ij, kl])?;
    Ok(spec
        .domain()
        .iter()
        .map(|mn| (mn, spec.krein(ij, kl, mn).clone()))
        .collect())
}

/// Intersection numbers `p_{ij,kl}^{mn}` for all `(m, n)`, from the eigenvalue table.
pub fn intersection_numbers_spectral(
    spec: &SpectralData,
    ij: BiIndex,
    kl: BiIndex,
) -> Result<BTreeMap<BiIndex, Scalar>> {
    require(spec, &[ij, kl])?;
    Ok(spec
        .domain()
        .iter()
        .map(|mn| (mn, spec.intersection(ij, kl, mn).clone()))
        .collect())
}

fn require(spec: &SpectralData, labels: &[BiIndex]) -> Result<()> {
    match labels.iter().find(|&&l| !spec.domain().contains(l)) {
        Some(l) => Err(Error::Usage(format!(
            "label {l} not in the domain of {}",
            spec.params()
        ))),
        None => Ok(()),
    }
}

/// `E_mn = (1/v) sum_ij q_mn(ij) A_ij`, in domain order.
pub fn build_idempotents(fam: &AdjacencyFamily, spec: &SpectralData) -> Vec<ExactMatrix> {
    let v = fam.v();
    let vs = int(v as i64);
    let labels = spec.domain().labels();
    labels
        .par_iter()
        .map(|&mn| {
            let by_class: Vec<Scalar> = labels.iter().map(|&ij| spec.q(mn, ij) / &vs).collect();
            ExactMatrix::from_fn(v, |x, y| by_class[fam.class_position(x, y)].clone())
        })
        .collect()
}

/// Checks the eigenvalue tables against the scheme: valencies and
/// multiplicities, the special eigenvalues, the idempotent invariants, the
/// spectral decomposition, Wilson duality, Krein nonnegativity, agreement of
/// the two routes to the intersection numbers and the stencils of `A_10`,
/// `A_01` (and of `E_10`, `E_01` when `n >= 2k - 1`).
pub fn spectra_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    idempotents: &[ExactMatrix],
) -> Certificate {
    let parts = [
        table_check(fam, spec),
        idempotent_check(fam, spec, idempotents),
        wilson_duality_check(spec),
        krein_check(fam, spec, idempotents),
        intersection_agreement_check(fam, spec),
        stencil_check(spec),
    ];
    Certificate::merge("spectra", spec.params(), &parts)
}

fn table_check(fam: &AdjacencyFamily, spec: &SpectralData) -> Certificate {
    let params = spec.params();
    let mut cert = CertificateBuilder::new("tables", params);
    let v = int(fam.v() as i64);
    for l in spec.domain().iter() {
        let rows = fam.valency(l).map(|c| int(c as i64));
        match rows {
            Some(rows) => cert.expect_eq(
                || (format!("valency k{l}"), vec![l.i, l.j]),
                &rows,
                spec.valency(l),
            ),
            None => cert.fail(Witness::new(
                format!("A{l} has unequal row sums"),
                vec![l.i, l.j],
                "constant",
                "varies",
            )),
        }
        let m = multiplicity(params, l.i, l.j);
        cert.expect_eq(
            || (format!("multiplicity m{l} vs q{l}(0,0)"), vec![l.i, l.j]),
            &m,
            spec.multiplicity(l),
        );
        if m <= zero() {
            cert.fail(Witness::scalars(
                format!("multiplicity m{l} not positive"),
                vec![l.i, l.j],
                &one(),
                &m,
            ));
        }
        cert.expect_eq(
            || (format!("p00{l}"), vec![l.i, l.j]),
            &one(),
            spec.p(bi(0, 0), l),
        );
        cert.expect_eq(
            || (format!("q00{l}"), vec![l.i, l.j]),
            &one(),
            spec.q(bi(0, 0), l),
        );
    }
    let msum = spec
        .domain()
        .iter()
        .fold(zero(), |acc, l| acc + spec.multiplicity(l));
    cert.expect_eq(|| ("sum of valencies".into(), vec![]), &v, &spec.v());
    cert.expect_eq(|| ("sum of multiplicities".into(), vec![]), &v, &msum);

    let SchemeParams { k, n, .. } = params;
    for l in spec.domain().iter() {
        let (x, y) = (l.i, l.j);
        if spec.domain().contains(bi(1, 0)) {
            cert.expect_eq(
                || (format!("p10{l} = theta"), vec![x, y]),
                &theta(params, x, y),
                spec.p(bi(1, 0), l),
            );
            cert.expect_eq(
                || (format!("q10{l} = theta*"), vec![x, y]),
                &theta_star(params, x, y),
                spec.q(bi(1, 0), l),
            );
        }
        if spec.domain().contains(bi(0, 1)) && k > 0 && k < n {
            cert.expect_eq(
                || (format!("p01{l} = mu"), vec![x, y]),
                &mu(params, x, y),
                spec.p(bi(0, 1), l),
            );
            cert.expect_eq(
                || (format!("q01{l} = mu*"), vec![x, y]),
                &mu_star(params, x, y),
                spec.q(bi(0, 1), l),
            );
        }
    }
    cert.finish()
}

/// Symmetry, `E00 = J/v`, orthogonality, idempotency, `sum E = I`,
/// `trace E_mn = m_mn` and `A_ij = sum p_ij(mn) E_mn`.
pub fn idempotent_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    idempotents: &[ExactMatrix],
) -> Certificate {
    let mut cert = CertificateBuilder::new("idempotents", spec.params());
    let v = fam.v();
    let labels = spec.domain().labels();
    let entry_witness = |cert: &mut CertificateBuilder,
                         ctx: String,
                         idx: Vec<i64>,
                         a: &ExactMatrix,
                         b: &ExactMatrix| {
        if let Some((x, y)) = a.first_difference(b) {
            let mut index = idx;
            index.extend([x as i64, y as i64]);
            cert.fail(Witness::scalars(ctx, index, b.get(x, y), a.get(x, y)));
        }
    };

    let j_over_v = ExactMatrix::ones(v).scale(&ratio(1, v as i64));
    entry_witness(
        &mut cert,
        "E(0,0) != J/v".into(),
        vec![],
        &idempotents[0],
        &j_over_v,
    );

    let mut sum = ExactMatrix::zeros(v);
    for (pos, e) in idempotents.iter().enumerate() {
        let l = labels[pos];
        if !e.is_symmetric() {
            cert.fail(Witness::new(
                format!("E{l} not symmetric"),
                vec![l.i, l.j],
                "symmetric",
                "asymmetric",
            ));
        }
        cert.expect_eq(
            || (format!("trace E{l} = m{l}"), vec![l.i, l.j]),
            spec.multiplicity(l),
            &e.trace(),
        );
        sum = &sum + e;
    }
    entry_witness(
        &mut cert,
        "sum of idempotents != I".into(),
        vec![],
        &sum,
        &ExactMatrix::identity(v),
    );

    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (a..labels.len()).map(move |b| (a, b)))
        .collect();
    let products: Vec<(usize, usize, ExactMatrix)> = pairs
        .into_par_iter()
        .map(|(a, b)| (a, b, &idempotents[a] * &idempotents[b]))
        .collect();
    for (a, b, prod) in products {
        let (la, lb) = (labels[a], labels[b]);
        let expected = if a == b {
            idempotents[a].clone()
        } else {
            ExactMatrix::zeros(v)
        };
        entry_witness(
            &mut cert,
            format!("E{la} E{lb}"),
            vec![la.i, la.j, lb.i, lb.j],
            &prod,
            &expected,
        );
    }

    for &ij in labels {
        let decomposition = labels
            .iter()
            .zip(idempotents)
            .fold(ExactMatrix::zeros(v), |acc, (&mn, e)| {
                &acc + &e.scale(spec.p(ij, mn))
            });
        let a = fam.matrix(ij).expect("domain label").to_exact();
        entry_witness(
            &mut cert,
            format!("A{ij} != sum p{ij}(mn) E(mn)"),
            vec![ij.i, ij.j],
            &decomposition,
            &a,
        );
    }
    cert.finish()
}

/// `q_mn(ij) k_ij = p_ij(mn) m_mn` on all of `D x D`.
pub fn wilson_duality_check(spec: &SpectralData) -> Certificate {
    let mut cert = CertificateBuilder::new("wilson-duality", spec.params());
    for ij in spec.domain().iter() {
        for mn in spec.domain().iter() {
            let lhs = spec.q(mn, ij) * spec.valency(ij);
            let rhs = spec.p(ij, mn) * spec.multiplicity(mn);
            cert.expect_eq(
                || {
                    (
                        format!("q{mn}({ij}) k{ij} vs p{ij}({mn}) m{mn}"),
                        vec![ij.i, ij.j, mn.i, mn.j],
                    )
                },
                &rhs,
                &lhs,
            );
        }
    }
    cert.finish()
}

/// Krein parameters are nonnegative; on small instances they also match the
/// expansion of explicit Hadamard products `E_a o E_b = (1/v) sum q_ab^c E_c`.
pub fn krein_check(
    fam: &AdjacencyFamily,
    spec: &SpectralData,
    idempotents: &[ExactMatrix],
) -> Certificate {
    let mut cert = CertificateBuilder::new("krein", spec.params());
    let labels = spec.domain().labels();
    for &a in labels {
        for &b in labels {
            for &c in labels {
                let value = spec.krein(a, b, c);
                if *value < zero() {
                    cert.fail(Witness::scalars(
                        format!("Krein parameter q_{{{a},{b}}}^{c} negative"),
                        vec![a.i, a.j, b.i, b.j, c.i, c.j],
                        &zero(),
                        value,
                    ));
                }
                if spec.krein(b, a, c) != value {
                    cert.fail(Witness::scalars(
                        format!("Krein parameters not symmetric in {a}, {b}"),
                        vec![a.i, a.j, b.i, b.j, c.i, c.j],
                        value,
                        spec.krein(b, a, c),
                    ));
                }
            }
        }
    }
    let v = fam.v();
    if v > HADAMARD_CROSS_CHECK_LIMIT {
        return cert.finish();
    }
    let inv_v = ratio(1, v as i64);
    for (pa, &a) in labels.iter().enumerate() {
        for (pb, &b) in labels.iter().enumerate().skip(pa) {
            let product = idempotents[pa].hadamard(&idempotents[pb]);
            let expansion = labels
                .iter()
                .zip(idempotents)
                .fold(ExactMatrix::zeros(v), |acc, (&c, e)| {
                    &acc + &e.scale(&(spec.krein(a, b, c) * &inv_v))
                });
            if let Some((x, y)) = product.first_difference(&expansion) {
                cert.fail(Witness::scalars(
                    format!("E{a} o E{b} differs from its Krein expansion"),
                    vec![a.i, a.j, b.i, b.j, x as i64, y as i64],
                    expansion.get(x, y),
                    product.get(x, y),
                ));
            }
        }
    }
    cert.finish()
}

/// Intersection numbers from the eigenvalue table equal the combinatorial counts.
pub fn intersection_agreement_check(fam: &AdjacencyFamily, spec: &SpectralData) -> Certificate {
    let mut cert = CertificateBuilder::new("intersection-numbers", spec.params());
    let labels = spec.domain().labels();
    let pairs: Vec<(BiIndex, BiIndex)> = labels
        .iter()
        .flat_map(|&a| labels.iter().map(move |&b| (a, b)))
        .collect();
    let counted: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| (a, b, intersection_numbers(fam, a, b)))
        .collect();
    for (a, b, result) in counted {
        match result {
            Err(e) => cert.fail(Witness::new(
                format!("combinatorial p_{{{a},{b}}}: {e}"),
                vec![a.i, a.j, b.i, b.j],
                "well defined",
                "representatives disagree",
            )),
            Ok(map) => {
                for (c, value) in map {
                    cert.expect_eq(
                        || {
                            (
                                format!("p_{{{a},{b}}}^{c}"),
                                vec![a.i, a.j, b.i, b.j, c.i, c.j],
                            )
                        },
                        &value,
                        spec.intersection(a, b, c),
                    );
                }
            }
        }
    }
    cert.finish()
}

/// Nonzero structure constants off the allowed offsets of `stencil`.
pub fn stencil_violations(
    domain: &Domain,
    generator: BiIndex,
    stencil: &[(i64, i64)],
    constant: impl Fn(BiIndex, BiIndex, BiIndex) -> Scalar,
) -> Vec<(BiIndex, BiIndex, Scalar)> {
    let mut out = Vec::new();
    for ij in domain.iter() {
        for mn in domain.iter() {
            let offset = (mn.i - ij.i, mn.j - ij.j);
            if stencil.contains(&offset) {
                continue;
            }
            let value = constant(generator, ij, mn);
            if value != zero() {
                out.push((ij, mn, value));
            }
        }
    }
    out
}

/// Support of `p_{10,ij}`, `p_{01,ij}` and, for `n >= 2k - 1`, of
/// `q_{10,ij}`, `q_{01,ij}` lies in the corresponding stencils.
pub fn stencil_check(spec: &SpectralData) -> Certificate {
    let params = spec.params();
    let mut cert = CertificateBuilder::new("stencils", params);
    let domain = spec.domain();
    let mut run = |name: &str, generator: BiIndex, stencil: &[(i64, i64)], krein: bool| {
        if !domain.contains(generator) {
            cert.note(format!(
                "{name} stencil vacuous: {generator} not in the domain"
            ));
            return;
        }
        let violations = stencil_violations(domain, generator, stencil, |g, ij, mn| {
            if krein {
                spec.krein(g, ij, mn).clone()
            } else {
                spec.intersection(g, ij, mn).clone()
            }
        });
        for (ij, mn, value) in violations {
            cert.fail(Witness::scalars(
                format!("{name}: coefficient of {mn} in {generator}*{ij} outside the stencil"),
                vec![ij.i, ij.j, mn.i, mn.j],
                &zero(),
                &value,
            ));
        }
    };
    run("p10", bi(1, 0), P10_STENCIL, false);
    run("p01", bi(0, 1), P01_STENCIL, false);
    if params.q_polynomial_range() {
        run("q10", bi(1, 0), Q10_STENCIL, true);
        run("q01", bi(0, 1), Q01_STENCIL, true);
    } else {
        cert.note("Krein stencils not checked: n < 2k - 1");
    }
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::build_adjacency;

    fn params(r: i64, k: i64, n: i64) -> SchemeParams {
        SchemeParams::new(r, k, n).unwrap()
    }

    #[test]
    fn valencies_of_small_instance() {
        let spec = SpectralData::new(params(3, 2, 3)).unwrap();
        let expected = [
            (bi(0, 0), 1),
            (bi(1, 0), 2),
            (bi(2, 0), 1),
            (bi(0, 1), 4),
            (bi(1, 1), 4),
        ];
        for (l, k) in expected {
            assert_eq!(*spec.valency(l), int(k), "{l}");
        }
        assert_eq!(spec.v(), int(12));
    }

    #[test]
    fn multiplicities_sum_to_v() {
        let p = params(3, 2, 4);
        let total = Domain::new(p)
            .iter()
            .fold(zero(), |acc, l| acc + multiplicity(p, l.i, l.j));
        assert_eq!(total, int(24));
        assert_eq!(multiplicity(p, 0, 0), one());
        assert_eq!(multiplicity(p, 1, 0), int(4));
    }

    #[test]
    fn dual_eigenvalue_closed_forms() {
        for p in [
            params(3, 2, 4),
            params(4, 2, 5),
            params(3, 3, 6),
            params(5, 3, 7),
        ] {
            for l in Domain::new(p).iter() {
                let (x, y) = (l.i, l.j);
                assert_eq!(dual_eigenvalue_q(p, 0, 0, x, y).unwrap(), one());
                assert_eq!(
                    dual_eigenvalue_q(p, 1, 0, x, y).unwrap(),
                    theta_star(p, x, y)
                );
                assert_eq!(dual_eigenvalue_q(p, 0, 1, x, y).unwrap(), mu_star(p, x, y));
                assert_eq!(eigenvalue_p(p, 1, 0, x, y), theta(p, x, y));
                assert_eq!(eigenvalue_p(p, 0, 1, x, y), mu(p, x, y));
            }
        }
    }

    #[test]
    fn dual_eigenvalues_defined_on_whole_domain() {
        for (r, k, n) in [(3, 3, 4), (3, 4, 5), (4, 3, 3), (3, 2, 2)] {
            let p = params(r, k, n);
            for idem in Domain::new(p).iter() {
                for rel in Domain::new(p).iter() {
                    dual_eigenvalue_q(p, idem.i, idem.j, rel.i, rel.j).unwrap();
                }
            }
        }
    }

    #[test]
    fn krein_identity_row() {
        let spec = SpectralData::new(params(3, 2, 4)).unwrap();
        for kl in spec.domain().iter() {
            for (mn, value) in krein_parameters(&spec, bi(0, 0), kl).unwrap() {
                assert_eq!(value, int(i64::from(mn == kl)));
            }
        }
    }

    #[test]
    fn q01_support_on_small_instance() {
        let spec = SpectralData::new(params(3, 2, 4)).unwrap();
        for ij in spec.domain().iter() {
            for (mn, value) in krein_parameters(&spec, bi(0, 1), ij).unwrap() {
                if mn.i != ij.i || (mn.j - ij.j).abs() > 1 {
                    assert_eq!(value, zero(), "{ij} -> {mn}");
                }
            }
        }
    }

    #[test]
    fn full_spectral_check_passes() {
        for (r, k, n) in [(3, 2, 3), (3, 2, 4), (3, 3, 4), (4, 1, 3), (3, 2, 2)] {
            let p = params(r, k, n);
            let fam = build_adjacency(p, 5000).unwrap();
            let spec = SpectralData::new(p).unwrap();
            let idem = build_idempotents(&fam, &spec);
            let cert = spectra_check(&fam, &spec, &idem);
            assert!(cert.passed(), "{p}: {:?}", cert.witnesses);
        }
    }

    #[test]
    fn idempotent_trace_is_multiplicity() {
        let p = params(3, 2, 3);
        let fam = build_adjacency(p, 5000).unwrap();
        let spec = SpectralData::new(p).unwrap();
        for (l, e) in spec.domain().iter().zip(build_idempotents(&fam, &spec)) {
            assert_eq!(e.trace(), multiplicity(p, l.i, l.j));
        }
    }

    #[test]
    fn wrong_table_entry_breaks_wilson_duality() {
        let mut spec = SpectralData::new(params(3, 2, 3)).unwrap();
        spec.p[7] = &spec.p[7] + one();
        assert!(wilson_duality_check(&spec).failed());
    }
}
