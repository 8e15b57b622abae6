use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{
    a01_expansion, a10_expansion, bi, classify_pair, enumerate_vertices, BiIndex, Domain,
    Expansion, SchemeParams, Vertex,
};
use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::error::{Error, Result};
use crate::exact::{int, BinaryMatrix, CountMatrix, Scalar};

/// Number of representative pairs per class used to spot-check that an
/// intersection number does not depend on the chosen pair.
const REPRESENTATIVES: usize = 5;

/// The vertex set of `J_r(k, n)` together with its relation labels and one
/// 0/1 adjacency matrix per label.
#[derive(Debug, Clone)]
pub struct AdjacencyFamily {
    params: SchemeParams,
    domain: Domain,
    vertices: Vec<Vertex>,
    /// Domain position of the label of each ordered vertex pair, row-major.
    classes: Vec<u16>,
    matrices: Vec<BinaryMatrix>,
}

/// Enumerates the vertices, classifies every pair and builds the adjacency
/// matrices. Rows are classified in parallel; the result is deterministic.
pub fn build_adjacency(params: SchemeParams, max_vertices: usize) -> Result<AdjacencyFamily> {
    let vertices = enumerate_vertices(params, max_vertices)?;
    let domain = Domain::new(params);
    let v = vertices.len();

    let rows: Vec<Vec<u16>> = vertices
        .par_iter()
        .map(|x| {
            vertices
                .iter()
                .map(|y| {
                    let label = classify_pair(params, x, y)?;
                    Ok(domain
                        .index_of(label)
                        .expect("classified label lies in the domain")
                        as u16)
                })
                .collect::<Result<Vec<u16>>>()
        })
        .collect::<Result<_>>()?;
    let classes: Vec<u16> = rows.into_iter().flatten().collect();

    let words = BinaryMatrix::words_per_row(v);
    let matrices = (0..domain.len())
        .into_par_iter()
        .map(|label| {
            let rows = (0..v)
                .map(|x| {
                    let mut row = vec![0u64; words];
                    for y in 0..v {
                        if classes[x * v + y] as usize == label {
                            row[y / 64] |= 1 << (y % 64);
                        }
                    }
                    row
                })
                .collect();
            BinaryMatrix::from_rows(v, rows)
        })
        .collect();

    Ok(AdjacencyFamily {
        params,
        domain,
        vertices,
        classes,
        matrices,
    })
}

impl AdjacencyFamily {
    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn v(&self) -> usize {
        self.vertices.len()
    }

    pub fn matrix(&self, label: BiIndex) -> Option<&BinaryMatrix> {
        self.domain.index_of(label).map(|p| &self.matrices[p])
    }

    pub fn matrices(&self) -> &[BinaryMatrix] {
        &self.matrices
    }

    /// Label of the vertex pair `(x, y)` as recorded at construction.
    pub fn label_of(&self, x: usize, y: usize) -> BiIndex {
        self.domain.labels()[self.class_position(x, y)]
    }

    pub fn class_position(&self, x: usize, y: usize) -> usize {
        self.classes[x * self.v() + y] as usize
    }

    pub fn vertex_index(&self, vertex: &Vertex) -> Option<usize> {
        self.vertices.binary_search(vertex).ok()
    }

    /// Copy of the family with the matrix of `label` replaced. Used for
    /// negative controls.
    pub fn with_matrix(&self, label: BiIndex, matrix: BinaryMatrix) -> Result<Self> {
        let pos = self
            .domain
            .index_of(label)
            .ok_or_else(|| Error::Usage(format!("label {label} not in the domain")))?;
        if matrix.dim() != self.v() {
            return Err(Error::Usage(
                "replacement matrix has the wrong dimension".into(),
            ));
        }
        let mut copy = self.clone();
        copy.matrices[pos] = matrix;
        Ok(copy)
    }

    /// Common row sum of the adjacency matrix of `label`, if constant.
    pub fn valency(&self, label: BiIndex) -> Option<usize> {
        let m = self.matrix(label)?;
        let first = m.row_sum(0);
        (1..m.dim()).all(|r| m.row_sum(r) == first).then_some(first)
    }

    /// Integer combination `sum c_t A_t`.
    pub fn combination(&self, expansion: &Expansion) -> CountMatrix {
        expansion
            .iter()
            .fold(CountMatrix::zeros(self.v()), |acc, &(t, c)| {
                acc.add_scaled(
                    c,
                    self.matrix(t).expect("expansion targets lie in the domain"),
                )
            })
    }
}

/// Checks the association-scheme axioms on the matrices of `fam`: identity,
/// partition of all pairs, symmetry, nonemptiness, and closure of products
/// in the linear span together with commutativity.
pub fn verify_axioms(fam: &AdjacencyFamily) -> Certificate {
    let mut cert = CertificateBuilder::new("axioms", fam.params());
    let domain = fam.domain();
    let v = fam.v();
    let labels = domain.labels();

    for (pos, m) in fam.matrices().iter().enumerate() {
        let l = labels[pos];
        if m.is_zero() {
            cert.fail(Witness::new(
                format!("relation {l} is empty"),
                vec![l.i, l.j],
                "nonzero",
                "zero",
            ));
        }
        if !m.is_symmetric() {
            cert.fail(Witness::new(
                format!("A{l} is not symmetric"),
                vec![l.i, l.j],
                "symmetric",
                "asymmetric",
            ));
        }
    }

    let identity = fam.matrix(bi(0, 0)).expect("(0,0) is always a label");
    if let Some((r, c)) = (0..v)
        .flat_map(|r| (0..v).map(move |c| (r, c)))
        .find(|&(r, c)| identity.get(r, c) != (r == c))
    {
        cert.fail(Witness::new(
            "A(0,0) differs from the identity",
            vec![r as i64, c as i64],
            i64::from(r == c),
            i64::from(identity.get(r, c)),
        ));
    }

    // every ordered pair in exactly one relation
    let mut owner = vec![usize::MAX; v * v];
    let mut partition_ok = true;
    for x in 0..v {
        for y in 0..v {
            let hits: Vec<usize> = (0..labels.len())
                .filter(|&p| fam.matrices()[p].get(x, y))
                .collect();
            if hits.len() != 1 {
                partition_ok = false;
                let context = if hits.is_empty() {
                    format!("missing pair ({x},{y}): covered by no relation")
                } else {
                    format!("pair ({x},{y}) covered by {} relations", hits.len())
                };
                cert.fail(Witness::new(
                    context,
                    vec![x as i64, y as i64],
                    1,
                    hits.len(),
                ));
            } else {
                owner[x * v + y] = hits[0];
            }
        }
    }

    if !partition_ok {
        cert.note("closure not checked: the matrices do not partition all pairs");
        return cert.finish();
    }

    let products: Vec<(usize, usize, CountMatrix)> = (0..labels.len())
        .flat_map(|a| (0..labels.len()).map(move |b| (a, b)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(a, b)| (a, b, fam.matrices()[a].mul_counts(&fam.matrices()[b])))
        .collect();

    for (a, b, prod) in &products {
        let (la, lb) = (labels[*a], labels[*b]);
        if a < b {
            let other = &products[*b * labels.len() + *a].2;
            if let Some((x, y)) = prod.first_difference(other) {
                cert.fail(Witness::new(
                    format!("A{la} A{lb} != A{lb} A{la}"),
                    vec![la.i, la.j, lb.i, lb.j, x as i64, y as i64],
                    other.get(x, y),
                    prod.get(x, y),
                ));
            }
        }
        // closure: the product is constant on every relation
        let mut value: Vec<Option<i64>> = vec![None; labels.len()];
        for x in 0..v {
            for y in 0..v {
                let cls = owner[x * v + y];
                let entry = prod.get(x, y);
                match value[cls] {
                    None => value[cls] = Some(entry),
                    Some(expected) if expected != entry => {
                        let lc = labels[cls];
                        cert.fail(Witness::new(
                            format!("A{la} A{lb} not constant on relation {lc}"),
                            vec![la.i, la.j, lb.i, lb.j, x as i64, y as i64],
                            expected,
                            entry,
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    cert.finish()
}

/// Intersection numbers `p_{ij,kl}^{mn}` by direct counting: for a few
/// representative pairs `(x, y)` in each relation `(m, n)`, count the vertices
/// `z` with `(x, z)` in relation `ij` and `(z, y)` in relation `kl`.
///
/// Fails if two representatives of the same relation disagree.
pub fn intersection_numbers(
    fam: &AdjacencyFamily,
    ij: BiIndex,
    kl: BiIndex,
) -> Result<BTreeMap<BiIndex, Scalar>> {
    let domain = fam.domain();
    let (a, b) = match (domain.index_of(ij), domain.index_of(kl)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Usage(format!(
                "labels {ij}, {kl} must lie in the domain"
            )))
        }
    };
    let v = fam.v();
    let mut out = BTreeMap::new();
    for (mn_pos, mn) in domain.iter().enumerate() {
        let reps = representatives(fam, mn_pos);
        let mut counts = reps.iter().map(|&(x, y)| {
            (0..v)
                .filter(|&z| fam.class_position(x, z) == a && fam.class_position(z, y) == b)
                .count() as i64
        });
        let first = counts
            .next()
            .ok_or_else(|| Error::Internal(format!("relation {mn} is empty")))?;
        if let Some(other) = counts.find(|&c| c != first) {
            return Err(Error::Internal(format!(
                "p_{{{ij},{kl}}}^{mn} not well defined: representatives give {first} and {other}"
            )));
        }
        out.insert(mn, int(first));
    }
    Ok(out)
}

fn representatives(fam: &AdjacencyFamily, class: usize) -> Vec<(usize, usize)> {
    let v = fam.v();
    let mut reps = Vec::new();
    for t in 0..REPRESENTATIVES {
        let x = t * v / REPRESENTATIVES;
        if let Some(y) = (0..v).find(|&y| fam.class_position(x, y) == class) {
            if !reps.contains(&(x, y)) {
                reps.push((x, y));
            }
        }
    }
    reps
}

/// Checks `A_10 A_ij` and `A_01 A_ij` against their closed-form expansions as
/// exact integer matrices, for every label `(i, j)`.
pub fn adjacency_recurrence_check(fam: &AdjacencyFamily) -> Certificate {
    let mut cert = CertificateBuilder::new("adjacency-recurrences", fam.params());
    let domain = fam.domain();
    type Expand = fn(&Domain, BiIndex) -> Expansion;
    let generators: [(BiIndex, Expand); 2] = [(bi(1, 0), a10_expansion), (bi(0, 1), a01_expansion)];
    for (g, expand) in generators {
        let Some(gm) = fam.matrix(g) else {
            cert.note(format!(
                "A{g} absent from the domain; its recurrence is vacuous"
            ));
            continue;
        };
        for label in domain.iter() {
            let product = gm.mul_counts(fam.matrix(label).expect("domain label"));
            let expected = fam.combination(&expand(domain, label));
            if let Some((x, y)) = product.first_difference(&expected) {
                cert.fail(Witness::new(
                    format!("A{g} A{label} differs from its expansion"),
                    vec![label.i, label.j, x as i64, y as i64],
                    expected.get(x, y),
                    product.get(x, y),
                ));
            }
        }
    }
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(r: i64, k: i64, n: i64) -> AdjacencyFamily {
        build_adjacency(SchemeParams::new(r, k, n).unwrap(), 5000).unwrap()
    }

    #[test]
    fn small_instance_labels_and_valencies() {
        let fam = family(3, 2, 3);
        assert_eq!(fam.domain().len(), 5);
        assert_eq!(fam.valency(bi(1, 0)), Some(2));
        assert_eq!(fam.valency(bi(0, 1)), Some(4));
        assert_eq!(fam.valency(bi(0, 0)), Some(1));
    }

    #[test]
    fn axioms_hold() {
        for (r, k, n) in [
            (3, 2, 3),
            (3, 2, 4),
            (3, 3, 4),
            (3, 1, 1),
            (4, 2, 2),
            (3, 0, 2),
        ] {
            let cert = verify_axioms(&family(r, k, n));
            assert!(cert.passed(), "J_{r}({k},{n}): {:?}", cert.witnesses);
        }
    }

    #[test]
    fn zeroed_matrix_is_reported_as_missing_pairs() {
        let fam = family(3, 2, 3);
        let broken = fam
            .with_matrix(bi(1, 1), BinaryMatrix::zeros(fam.v()))
            .unwrap();
        let cert = verify_axioms(&broken);
        assert!(cert.failed());
        assert!(cert
            .witnesses
            .iter()
            .any(|w| w.context.starts_with("missing pair")));
        assert!(cert.witnesses.iter().any(|w| w.context.contains("empty")));
    }

    #[test]
    fn intersection_number_examples() {
        let fam = family(3, 2, 3);
        let p = intersection_numbers(&fam, bi(1, 0), bi(1, 0)).unwrap();
        assert_eq!(p[&bi(0, 0)], int(2));
        for kl in fam.domain().iter() {
            let p = intersection_numbers(&fam, bi(0, 0), kl).unwrap();
            for (mn, value) in p {
                assert_eq!(value, int(i64::from(mn == kl)));
            }
        }
    }

    #[test]
    fn intersection_numbers_double_count() {
        let fam = family(3, 2, 4);
        let val = |l| int(fam.valency(l).unwrap() as i64);
        for ij in fam.domain().iter() {
            for kl in fam.domain().iter() {
                let p = intersection_numbers(&fam, ij, kl).unwrap();
                let total = p.iter().fold(int(0), |acc, (mn, c)| acc + c * val(*mn));
                assert_eq!(total, val(ij) * val(kl));
            }
        }
    }

    #[test]
    fn recurrences_hold_on_small_instances() {
        for (r, k, n) in [(3, 2, 3), (3, 2, 4), (4, 2, 4), (3, 3, 4), (3, 2, 2)] {
            let cert = adjacency_recurrence_check(&family(r, k, n));
            assert!(cert.passed(), "J_{r}({k},{n}): {:?}", cert.witnesses);
        }
    }
}
