//! The bispectral operators `X`, `Y`, `X*`, `Y*` on the span of the
//! eigenvalues `p_ij`, the difference relations in the variables `(x, y)`,
//! and the algebra relations between the four operators.

use std::collections::BTreeMap;

use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::exact::{int, ratio, zero, ExactMatrix, Scalar};
use crate::poly::ClosedForm;
use crate::scheme::{a01_expansion, a10_expansion, bi, BiIndex, Domain, Expansion, SchemeParams};
use crate::spectra::{SpectralData, P01_STENCIL, P10_STENCIL};

/// Matrices of the four operators in the basis `{p_ij : (i, j) in D}`, with
/// `M[target][source]` the coefficient of `p_target` in `M p_source`.
#[derive(Debug, Clone)]
pub struct OperatorQuadruple {
    pub params: SchemeParams,
    pub basis: Vec<BiIndex>,
    pub x: ExactMatrix,
    pub y: ExactMatrix,
    pub x_star: ExactMatrix,
    pub y_star: ExactMatrix,
}

fn expansion_matrix(domain: &Domain, expand: fn(&Domain, BiIndex) -> Expansion) -> ExactMatrix {
    let len = domain.len();
    let mut entries = vec![zero(); len * len];
    for (src, label) in domain.iter().enumerate() {
        for (t, c) in expand(domain, label) {
            let row = domain.index_of(t).expect("expansions stay in the domain");
            entries[row * len + src] = int(c);
        }
    }
    ExactMatrix::from_entries(len, entries).expect("square by construction")
}

/// `X` is the `A_10` recurrence shifted by `-k(r-2)`, `Y` the `A_01`
/// recurrence; `X* = diag(i)`, `Y* = diag(j)`.
pub fn build_quadruple(params: SchemeParams) -> OperatorQuadruple {
    let domain = Domain::new(params);
    let len = domain.len();
    let shift = ExactMatrix::scalar(len, int(params.k * (params.r - 2)));
    OperatorQuadruple {
        params,
        basis: domain.labels().to_vec(),
        x: &expansion_matrix(&domain, a10_expansion) - &shift,
        y: expansion_matrix(&domain, a01_expansion),
        x_star: ExactMatrix::diagonal(domain.iter().map(|l| int(l.i)).collect()),
        y_star: ExactMatrix::diagonal(domain.iter().map(|l| int(l.j)).collect()),
    }
}

/// One displayed identity `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: ExactMatrix,
    pub rhs: ExactMatrix,
}

impl Relation {
    pub fn holds(&self) -> bool {
        self.lhs.first_difference(&self.rhs).is_none()
    }
}

/// `[X, Y] = 0`, `[X*, Y*] = 0`, `[X, Y*] = 0`.
pub fn commutation_relations(
    x: &ExactMatrix,
    y: &ExactMatrix,
    xs: &ExactMatrix,
    ys: &ExactMatrix,
) -> Vec<Relation> {
    let zero = ExactMatrix::zeros(x.dim());
    vec![
        Relation {
            name: "[X,Y] = 0",
            lhs: x.bracket(y),
            rhs: zero.clone(),
        },
        Relation {
            name: "[X*,Y*] = 0",
            lhs: xs.bracket(ys),
            rhs: zero.clone(),
        },
        Relation {
            name: "[X,Y*] = 0",
            lhs: x.bracket(ys),
            rhs: zero,
        },
    ]
}

/// The two `gl_2` relations between `X` and `X*` (with `Y*` central).
pub fn gl2_relations(
    params: SchemeParams,
    x: &ExactMatrix,
    xs: &ExactMatrix,
    ys: &ExactMatrix,
) -> Vec<Relation> {
    let SchemeParams { r, k, .. } = params;
    let dim = x.dim();
    let s = |c: i64| ExactMatrix::scalar(dim, int(c));
    let ys_k = ys - &s(k);
    let inner = xs.bracket(x);
    vec![
        Relation {
            name: "[X*,[X*,X]] = X - (r-3)X* - (r-2)(Y*-k)",
            lhs: xs.bracket(&inner),
            rhs: &(x - &(&s(r - 3) * xs)) - &(&s(r - 2) * &ys_k),
        },
        Relation {
            name: "[X,[X*,X]] = (r-3)X - (r-1)^2 X* - (r-1)(r-2)(Y*-k)",
            lhs: x.bracket(&inner),
            rhs: &(&(&s(r - 3) * x) - &(&s((r - 1) * (r - 1)) * xs))
                - &(&s((r - 1) * (r - 2)) * &ys_k),
        },
    ]
}

/// The two relations of the centrally extended Hahn algebra between `Y` and
/// `Y*` (with `X` central).
pub fn hahn_relations(
    params: SchemeParams,
    x: &ExactMatrix,
    y: &ExactMatrix,
    ys: &ExactMatrix,
) -> Vec<Relation> {
    let SchemeParams { r, k, n } = params;
    let dim = x.dim();
    let s = |c: i64| ExactMatrix::scalar(dim, int(c));
    let inner = ys.bracket(y);

    let first_rhs = &(&(&s(-2 * (1 - r)) * &(ys * ys)) + &(&(&s(n * (1 - r)) - x) * ys)) + y;

    let x2 = x * x;
    let quadratic = &(&x2 + &(&s(2 * (1 - r) * (n - 2 * k - 1)) * x))
        + &s((r - 1) * (r - 1) * (2 * n + (n - 2 * k) * (n - 2 * k)));
    let second_rhs = &(&(&(&s(-2 * (r - 1)) * &y.anticommutator(ys))
        + &(y * &(x - &s(n * (1 - r)))))
        - &(&s(2 * (k - n) * (r - 1)) * &(x + &s(k * (r - 1)))))
        - &(ys * &quadratic);
    vec![
        Relation {
            name: "[Y*,[Y*,Y]] = -2(1-r)Y*^2 + (n(1-r) - X)Y* + Y",
            lhs: ys.bracket(&inner),
            rhs: first_rhs,
        },
        Relation {
            name: "[Y,[Y*,Y]] = -2(r-1){Y,Y*} + Y(X - n(1-r)) - 2(k-n)(r-1)(X + k(r-1)) - Y*(X^2 + ...)",
            lhs: y.bracket(&inner),
            rhs: second_rhs,
        },
    ]
}

/// All seven identities for a quadruple of matrices.
pub fn all_relations(
    params: SchemeParams,
    x: &ExactMatrix,
    y: &ExactMatrix,
    xs: &ExactMatrix,
    ys: &ExactMatrix,
) -> Vec<Relation> {
    let mut out = commutation_relations(x, y, xs, ys);
    out.extend(gl2_relations(params, x, xs, ys));
    out.extend(hahn_relations(params, x, y, ys));
    out
}

pub(crate) fn record_relation(cert: &mut CertificateBuilder, context: &str, relation: &Relation) {
    if let Some((a, b)) = relation.lhs.first_difference(&relation.rhs) {
        cert.fail(Witness::scalars(
            format!("{context}{}", relation.name),
            vec![a as i64, b as i64],
            relation.rhs.get(a, b),
            relation.lhs.get(a, b),
        ));
    }
}

/// The seven algebra relations, the annihilating polynomial of `X`, and the
/// support and diagonal shape of the four operators.
pub fn algebra_relations_check(q: &OperatorQuadruple) -> Certificate {
    let mut cert = CertificateBuilder::new("bispectral", q.params);
    for relation in all_relations(q.params, &q.x, &q.y, &q.x_star, &q.y_star) {
        record_relation(&mut cert, "", &relation);
    }
    let annihilator = annihilator(q);
    if let Some((a, b)) = annihilator.first_nonzero() {
        cert.fail(Witness::scalars(
            "prod_x (X + x(r-1)) != 0",
            vec![a as i64, b as i64],
            &zero(),
            annihilator.get(a, b),
        ));
    }
    if !q.x_star.is_diagonal() || !q.y_star.is_diagonal() {
        cert.fail(Witness::new(
            "X*, Y* not diagonal",
            vec![],
            "diagonal",
            "off-diagonal entries",
        ));
    }
    for (name, m, stencil) in [("X", &q.x, P10_STENCIL), ("Y", &q.y, P01_STENCIL)] {
        for (src, s) in q.basis.iter().enumerate() {
            for (tgt, t) in q.basis.iter().enumerate() {
                if *m.get(tgt, src) != zero() && !stencil.contains(&(t.i - s.i, t.j - s.j)) {
                    cert.fail(Witness::scalars(
                        format!("{name} maps p{s} onto p{t} outside its stencil"),
                        vec![s.i, s.j, t.i, t.j],
                        &zero(),
                        m.get(tgt, src),
                    ));
                }
            }
        }
    }
    cert.finish()
}

/// `prod_{x=0..k} (X + x(r-1) I)`; zero exactly when the eigenvalues of `X`
/// lie in `{-x(r-1)}` and `X` is diagonalizable.
pub fn annihilator(q: &OperatorQuadruple) -> ExactMatrix {
    let SchemeParams { r, k, .. } = q.params;
    let dim = q.x.dim();
    (0..=k).fold(ExactMatrix::identity(dim), |acc, x| {
        &acc * &(&q.x + &ExactMatrix::scalar(dim, int(x * (r - 1))))
    })
}

/// Coefficients of one difference relation at the point `(x, y)`: for each
/// shifted point, the value used and its closed form when defined.
type Coefficients = BTreeMap<BiIndex, Scalar>;

fn closed(num: Scalar, den: Scalar) -> ClosedForm {
    if den == zero() {
        ClosedForm::Singular {
            removable: num == zero(),
        }
    } else {
        ClosedForm::Value(num / den)
    }
}

fn value(form: &ClosedForm) -> Option<&Scalar> {
    match form {
        ClosedForm::Value(v) => Some(v),
        ClosedForm::Singular { .. } => None,
    }
}

/// Closed forms `B` and `D` at `(x, y)`.
fn b_d(params: SchemeParams, l: BiIndex) -> (ClosedForm, ClosedForm) {
    let SchemeParams { k, n, .. } = params;
    let (x, y) = (l.i, l.j);
    let d = 2 * y + x - n;
    let b = closed(
        int((y + x - k) * (y + x - n - 1) * (y + k - n)),
        int(d * (d - 1)),
    );
    let dd = closed(
        int(-y * (y + x - k - 1) * (y + k - n - 1)),
        int((d - 1) * (d - 2)),
    );
    (b, dd)
}

/// Closed-form coefficients of the `j`-relation at `(x, y)`.
fn j_closed(params: SchemeParams, l: BiIndex) -> Vec<(BiIndex, ClosedForm)> {
    let (b, d) = b_d(params, l);
    let middle = match (value(&b), value(&d)) {
        (Some(b), Some(d)) => ClosedForm::Value(-(b + d)),
        _ => ClosedForm::Singular { removable: false },
    };
    vec![(l.shift(0, 1), b), (l, middle), (l.shift(0, -1), d)]
}

/// Closed-form coefficients `P_1 .. P_7` of the `i`-relation at `(x, y)`.
fn i_closed(params: SchemeParams, l: BiIndex) -> Vec<(BiIndex, ClosedForm)> {
    let SchemeParams { r, k, n } = params;
    let (x, y) = (l.i, l.j);
    let den = int((r - 1) * (n - x - 2 * y + 1));
    let p1 = closed(int(-(r - 2) * (n - x - y + 1) * (k - x - y)), den.clone());
    let p2 = closed(int(y * (r - 2) * (y + k - n - 1)), den.clone());
    let p3 = closed(int(-(k - x + 1 - y) * x), den.clone());
    let p4 = closed(int(x * (y + k - n)), den);
    let (b, d) = b_d(params, l);
    let factor = -ratio(r - 2, r - 1);
    let p5 = value(&d).map_or(ClosedForm::Singular { removable: false }, |d| {
        ClosedForm::Value(&factor * d)
    });
    let p6 = value(&b).map_or(ClosedForm::Singular { removable: false }, |b| {
        ClosedForm::Value(&factor * b)
    });
    let six = [p1, p2, p3, p4, p5, p6];
    let p7 = six
        .iter()
        .try_fold(zero(), |acc, f| value(f).map(|v| acc - v))
        .map_or(ClosedForm::Singular { removable: false }, ClosedForm::Value);
    let [p1, p2, p3, p4, p5, p6] = six;
    vec![
        (l.shift(1, 0), p1),
        (l.shift(1, -1), p2),
        (l.shift(-1, 0), p3),
        (l.shift(-1, 1), p4),
        (l.shift(0, -1), p5),
        (l.shift(0, 1), p6),
        (l, p7),
    ]
}

/// `j`-relation coefficients at `(x, y)` from the Krein parameters
/// `q_{01,xy}^t` and the multiplicities.
fn j_dual(spec: &SpectralData, l: BiIndex) -> Coefficients {
    let SchemeParams { k, n, .. } = spec.params();
    let mut out = Coefficients::new();
    if !spec.domain().contains(bi(0, 1)) {
        return out;
    }
    let factor = ratio(k * (n - k), n * (n - 1));
    let m = spec.multiplicity(l);
    for t in spec.domain().iter() {
        let c = spec.krein(bi(0, 1), l, t);
        if *c != zero() {
            out.insert(t, -(&factor * c * spec.multiplicity(t) / m));
        }
    }
    *out.entry(l).or_insert_with(zero) += ratio(k * (n - k), n);
    out
}

/// `i`-relation coefficients at `(x, y)` from the Krein parameters
/// `q_{10,xy}^t`, the multiplicities and the `j`-relation.
fn i_dual(spec: &SpectralData, l: BiIndex, j_coefficients: &Coefficients) -> Coefficients {
    let SchemeParams { r, k, n } = spec.params();
    let mut out = Coefficients::new();
    let factor = ratio(k, n * (r - 1));
    let m = spec.multiplicity(l);
    for t in spec.domain().iter() {
        let c = spec.krein(bi(1, 0), l, t);
        if *c != zero() {
            out.insert(t, -(&factor * c * spec.multiplicity(t) / m));
        }
    }
    let weight = ratio(r - 2, r - 1);
    *out.entry(l).or_insert_with(zero) += &weight * int(k);
    for (t, c) in j_coefficients {
        *out.entry(*t).or_insert_with(zero) -= &weight * c;
    }
    out.retain(|_, c| *c != zero());
    out
}

/// Merges closed-form and duality-route coefficients: closed forms where the
/// target lies in `D` and the denominator is nonzero (compared with the
/// duality route), the duality route elsewhere.
fn resolve(
    cert: &mut CertificateBuilder,
    domain: &Domain,
    name: &str,
    l: BiIndex,
    closed_forms: Vec<(BiIndex, ClosedForm)>,
    dual: &Coefficients,
) -> Coefficients {
    let mut out = dual.clone();
    let mut singular = Vec::new();
    for (t, form) in closed_forms {
        if !domain.contains(t) {
            continue;
        }
        let dual_value = dual.get(&t).cloned().unwrap_or_else(zero);
        match form {
            ClosedForm::Value(v) => {
                cert.expect_eq(
                    || (format!("{name}-relation at {l}: closed-form coefficient of p({t}) vs duality route"), vec![l.i, l.j, t.i, t.j]),
                    &dual_value,
                    &v,
                );
                out.insert(t, v);
            }
            ClosedForm::Singular { .. } => singular.push(t.to_string()),
        }
    }
    if !singular.is_empty() {
        cert.note(format!(
            "{name}-relation at {l}: closed form singular for {}; duality route used",
            singular.join(", ")
        ));
    }
    out.retain(|_, c| *c != zero());
    out
}

/// The two difference relations `i p_ij(x,y) = sum P_t p_ij(t)` and
/// `j p_ij(x,y) = B p_ij(x,y+1) - (B+D) p_ij(x,y) + D p_ij(x,y-1)` at every
/// `((i, j), (x, y))`.
pub fn difference_relation_check(spec: &SpectralData) -> Certificate {
    let params = spec.params();
    let domain = spec.domain();
    let mut cert = CertificateBuilder::new("difference", params);
    if !domain.contains(bi(1, 0)) {
        cert.note("difference relations vacuous: (1,0) not in the domain");
        return cert.finish();
    }
    if !domain.contains(bi(0, 1)) {
        cert.note("j-relation vacuous: (0,1) not in the domain");
    }
    for xy in domain.iter() {
        let j_dual_coefficients = j_dual(spec, xy);
        let i_dual_coefficients = i_dual(spec, xy, &j_dual_coefficients);
        let j_coefficients = if domain.contains(bi(0, 1)) {
            resolve(
                &mut cert,
                domain,
                "j",
                xy,
                j_closed(params, xy),
                &j_dual_coefficients,
            )
        } else {
            Coefficients::new()
        };
        let i_coefficients = resolve(
            &mut cert,
            domain,
            "i",
            xy,
            i_closed(params, xy),
            &i_dual_coefficients,
        );

        for ij in domain.iter() {
            for (degree, coefficients, name) in
                [(ij.i, &i_coefficients, "i"), (ij.j, &j_coefficients, "j")]
            {
                let lhs = int(degree) * spec.p(ij, xy);
                let rhs = coefficients
                    .iter()
                    .fold(zero(), |acc, (t, c)| acc + c * spec.p(ij, *t));
                cert.expect_eq(
                    || {
                        (
                            format!("{name}-relation for p{ij} at {xy}"),
                            vec![ij.i, ij.j, xy.i, xy.j],
                        )
                    },
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    cert.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: i64, k: i64, n: i64) -> SchemeParams {
        SchemeParams::new(r, k, n).unwrap()
    }

    #[test]
    fn quadruple_shape() {
        let q = build_quadruple(params(3, 2, 3));
        let expected: i64 = q.basis.iter().map(|l| l.i).sum();
        assert_eq!(q.x_star.trace(), int(expected));
        // r = 3: the diagonal i(r-3) + (j-k)(r-2) reduces to j - k
        for (p, l) in q.basis.iter().enumerate() {
            assert_eq!(*q.x.get(p, p), int(l.j - 2));
        }
    }

    #[test]
    fn relations_hold() {
        for (r, k, n) in [(3, 2, 3), (4, 2, 5), (3, 2, 4), (3, 3, 6), (5, 3, 8)] {
            let q = build_quadruple(params(r, k, n));
            let cert = algebra_relations_check(&q);
            assert!(cert.passed(), "{r} {k} {n}: {:?}", cert.witnesses);
        }
    }

    #[test]
    fn perturbed_operator_breaks_a_relation() {
        let mut q = build_quadruple(params(3, 2, 4));
        q.x = &q.x + &ExactMatrix::scalar(q.x.dim(), int(1));
        let cert = algebra_relations_check(&q);
        assert!(cert.failed());
    }

    #[test]
    fn difference_relations_hold() {
        for (r, k, n) in [
            (3, 2, 3),
            (3, 2, 4),
            (4, 2, 5),
            (3, 3, 6),
            (4, 1, 3),
            (3, 2, 2),
        ] {
            let spec = SpectralData::new(params(r, k, n)).unwrap();
            let cert = difference_relation_check(&spec);
            assert!(cert.passed(), "{r} {k} {n}: {:?}", cert.witnesses);
        }
    }

    #[test]
    fn boundary_points_use_duality_route() {
        let spec = SpectralData::new(params(3, 2, 4)).unwrap();
        let cert = difference_relation_check(&spec);
        assert!(cert.passed());
        assert!(!cert.notes.is_empty());
    }

    #[test]
    fn constant_eigenvector_telescopes() {
        let p = params(3, 2, 4);
        for l in Domain::new(p).iter() {
            let total = i_closed(p, l)
                .iter()
                .filter_map(|(_, f)| value(f).cloned())
                .fold(zero(), |a, b| a + b);
            if i_closed(p, l).iter().all(|(_, f)| value(f).is_some()) {
                assert_eq!(total, zero());
            }
        }
    }
}
