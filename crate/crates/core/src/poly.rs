//! Bivariate polynomials, monomial orders and the certification of the
//! bivariate P- and Q-polynomial structure.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::error::{Error, Result};
use crate::exact::{int, one, pow, ratio, to_string, zero, Scalar};
use crate::scheme::{a01_expansion, a10_expansion, bi, BiIndex, Domain, Expansion, SchemeParams};
use crate::spectra::{eigenvalue_p, mu, theta, SpectralData};

/// A finitely supported map from monomials `x^m y^n` (keyed by `(m, n)`) to
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<BiIndex, Scalar>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(bi(0, 0), c)
    }

    pub fn monomial(exponents: BiIndex, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(bi(1, 0), one())
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::monomial(bi(0, 1), one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BiIndex, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, exponents: BiIndex, c: Scalar) {
        let entry = self.coeffs.entry(exponents).or_insert_with(zero);
        *entry += c;
        if *entry == zero() {
            self.coeffs.remove(&exponents);
        }
    }

    pub fn coefficient(&self, exponents: BiIndex) -> Scalar {
        self.coeffs.get(&exponents).cloned().unwrap_or_else(zero)
    }

    /// Monomials with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = BiIndex> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BiIndex, &Scalar)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|(m, v)| (m, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(bi(a.i + b.i, a.j + b.j), ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.terms().fold(zero(), |acc, (m, c)| {
            acc + c * pow(x, m.i as u32) * pow(y, m.j as u32)
        })
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| format!("({})x^{}y^{}", to_string(c), m.i, m.j))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serialized as a sorted list of `[m, n, "coefficient"]`.
impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (m, c) in self.terms() {
            seq.serialize_element(&(m.i, m.j, to_string(c)))?;
        }
        seq.end()
    }
}

/// The parameters `(alpha, beta)` of the partial order on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderType {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl OrderType {
    /// Requires `0 <= alpha <= 1` and `0 <= beta < 1`.
    pub fn new(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if alpha < zero() || alpha > one() || beta < zero() || beta >= one() {
            return Err(Error::Usage(format!(
                "order type needs 0 <= alpha <= 1 and 0 <= beta < 1, got ({}, {})",
                to_string(&alpha),
                to_string(&beta)
            )));
        }
        Ok(OrderType { alpha, beta })
    }

    /// Type `(1, 0)`.
    pub fn p_type() -> Self {
        OrderType {
            alpha: one(),
            beta: zero(),
        }
    }

    /// Type `(0, 1/2)`.
    pub fn q_type() -> Self {
        OrderType {
            alpha: zero(),
            beta: ratio(1, 2),
        }
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", to_string(&self.alpha), to_string(&self.beta))
    }
}

/// `x^m y^n <= x^i y^j` in the degree-lexicographic order.
pub fn deg_lex_leq(m: i64, n: i64, i: i64, j: i64) -> bool {
    m + n < i + j || (m + n == i + j && n <= j)
}

/// `(m, n) <=_(alpha, beta) (i, j)`.
pub fn partial_leq(order: &OrderType, m: i64, n: i64, i: i64, j: i64) -> bool {
    let OrderType { alpha, beta } = order;
    int(m) + alpha * int(n) <= int(i) + alpha * int(j)
        && beta * int(m) + int(n) <= beta * int(i) + int(j)
}

/// All `(m, n)` in `N^2` below `(i, j)`. Both coordinates of such a pair are
/// bounded by `i + j`.
fn lower_set(order: &OrderType, top: BiIndex) -> Vec<BiIndex> {
    let bound = top.i + top.j;
    (0..=bound)
        .flat_map(|m| (0..=bound).map(move |n| bi(m, n)))
        .filter(|l| partial_leq(order, l.i, l.j, top.i, top.j))
        .collect()
}

/// Pass iff `D` is downward closed under the order.
pub fn domain_compatible(domain: &Domain, order: &OrderType) -> Certificate {
    let mut cert = CertificateBuilder::new(format!("domain-compatibility{order}"), domain.params());
    for top in domain.iter() {
        for below in lower_set(order, top) {
            if !domain.contains(below) {
                cert.fail(Witness::new(
                    format!("{below} ≼ {top} but {below} ∉ D"),
                    vec![below.i, below.j, top.i, top.j],
                    "in D",
                    "not in D",
                ));
            }
        }
    }
    cert.finish()
}

/// `None` if `p` is compatible of degree `degree`, otherwise the reason.
pub fn compatibility_violation(
    p: &BivariatePolynomial,
    degree: BiIndex,
    order: &OrderType,
) -> Option<String> {
    if p.coefficient(degree) == zero() {
        return Some(format!(
            "leading monomial x^{}y^{} absent",
            degree.i, degree.j
        ));
    }
    p.support()
        .find(|m| !partial_leq(order, m.i, m.j, degree.i, degree.j))
        .map(|m| {
            format!(
                "monomial x^{}y^{} not below x^{}y^{}",
                m.i, m.j, degree.i, degree.j
            )
        })
}

/// True iff `x^i y^j` appears in `p` and every monomial of `p` lies below it.
pub fn poly_compatible(p: &BivariatePolynomial, degree: BiIndex, order: &OrderType) -> bool {
    compatibility_violation(p, degree, order).is_none()
}

/// One recurrence step: solves `var * v_source = sum_t c_t v_t` for the
/// polynomial of `target`.
fn solve_step(
    polys: &BTreeMap<BiIndex, BivariatePolynomial>,
    var: &BivariatePolynomial,
    source: BiIndex,
    target: BiIndex,
    terms: &[(BiIndex, Scalar)],
) -> std::result::Result<BivariatePolynomial, String> {
    let lead = terms
        .iter()
        .find(|(t, _)| *t == target)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(zero);
    if lead == zero() {
        return Err(format!(
            "coefficient of {target} in the relation at {source} is zero"
        ));
    }
    let mut acc = var.mul(&polys[&source]);
    for (t, c) in terms {
        if *t == target || *c == zero() {
            continue;
        }
        let known = polys
            .get(t)
            .ok_or_else(|| format!("relation at {source} involves {t} before it is built"))?;
        acc = acc.sub(&known.scale(c));
    }
    Ok(acc.scale(&(one() / lead)))
}

fn integer_terms(expansion: Expansion) -> Vec<(BiIndex, Scalar)> {
    expansion.into_iter().map(|(t, c)| (t, int(c))).collect()
}

/// The polynomials `v_ij` with `p_ij(x, y) = v_ij(theta_xy, mu_xy)`, built
/// from the adjacency recurrences: `v_{i+1,j}` from the `x`-recurrence at
/// `(i, j)` and `v_{0,j+1}` from the `y`-recurrence at `(0, j)`.
pub fn construct_v(params: SchemeParams) -> Result<BTreeMap<BiIndex, BivariatePolynomial>> {
    let domain = Domain::new(params);
    let mut polys = BTreeMap::new();
    polys.insert(bi(0, 0), BivariatePolynomial::constant(one()));
    let (x, y) = (BivariatePolynomial::x(), BivariatePolynomial::y());
    for j in 0..=params.j_max() {
        let mut i = 0;
        while domain.contains(bi(i + 1, j)) {
            let terms = integer_terms(a10_expansion(&domain, bi(i, j)));
            let p =
                solve_step(&polys, &x, bi(i, j), bi(i + 1, j), &terms).map_err(Error::Internal)?;
            polys.insert(bi(i + 1, j), p);
            i += 1;
        }
        if domain.contains(bi(0, j + 1)) {
            let terms = integer_terms(a01_expansion(&domain, bi(0, j)));
            let p =
                solve_step(&polys, &y, bi(0, j), bi(0, j + 1), &terms).map_err(Error::Internal)?;
            polys.insert(bi(0, j + 1), p);
        }
    }
    Ok(polys)
}

/// Nonzero Krein parameters `q_{g,source}^{t}` as recurrence terms.
fn krein_terms(spec: &SpectralData, generator: BiIndex, source: BiIndex) -> Vec<(BiIndex, Scalar)> {
    spec.domain()
        .iter()
        .map(|t| (t, spec.krein(generator, source, t).clone()))
        .filter(|(_, c)| *c != zero())
        .collect()
}

/// The polynomials `v*_ij` with `q_ij(x, y) = v*_ij(theta*_xy, mu*_xy)`,
/// built from the Krein parameters: `v*_{i,0}` from the `theta*`-relation at
/// `(i-1, 0)` and `v*_{i,j+1}` from the `mu*`-relation at `(i, j)`.
///
/// Fails with a witness when a leading Krein parameter vanishes or a relation
/// needs a polynomial that has not been built yet.
pub fn construct_v_star(
    spec: &SpectralData,
) -> std::result::Result<BTreeMap<BiIndex, BivariatePolynomial>, Witness> {
    let params = spec.params();
    let domain = spec.domain();
    let mut polys = BTreeMap::new();
    polys.insert(bi(0, 0), BivariatePolynomial::constant(one()));
    let (x, y) = (BivariatePolynomial::x(), BivariatePolynomial::y());
    let fail = |source: BiIndex, target: BiIndex, reason: String| {
        Witness::new(
            format!("v*{target}: {reason}"),
            vec![source.i, source.j, target.i, target.j],
            "nonzero leading Krein parameter",
            "construction blocked",
        )
    };
    for i in 0..=params.k {
        if i > 0 {
            let (source, target) = (bi(i - 1, 0), bi(i, 0));
            let terms = krein_terms(spec, bi(1, 0), source);
            let p = solve_step(&polys, &x, source, target, &terms)
                .map_err(|e| fail(source, target, e))?;
            polys.insert(target, p);
        }
        let mut j = 0;
        while domain.contains(bi(i, j + 1)) {
            let (source, target) = (bi(i, j), bi(i, j + 1));
            let terms = krein_terms(spec, bi(0, 1), source);
            let p = solve_step(&polys, &y, source, target, &terms)
                .map_err(|e| fail(source, target, e))?;
            polys.insert(target, p);
            j += 1;
        }
    }
    Ok(polys)
}

/// `(theta_xy, mu_xy)`, the eigenvalues of `A_10` and `A_01` on `E_xy`.
fn primal_point(params: SchemeParams, l: BiIndex) -> (Scalar, Scalar) {
    (theta(params, l.i, l.j), mu(params, l.i, l.j))
}

/// `(theta*_xy, mu*_xy)`; a coordinate is 0 when its generator is not a label.
fn dual_point(spec: &SpectralData, l: BiIndex) -> (Scalar, Scalar) {
    let coordinate = |g: BiIndex| {
        if spec.domain().contains(g) {
            spec.q(g, l).clone()
        } else {
            zero()
        }
    };
    (coordinate(bi(1, 0)), coordinate(bi(0, 1)))
}

fn polynomial_checks(
    cert: &mut CertificateBuilder,
    domain: &Domain,
    order: &OrderType,
    name: &str,
    polys: &BTreeMap<BiIndex, BivariatePolynomial>,
    point: impl Fn(BiIndex) -> (Scalar, Scalar),
    table: impl Fn(BiIndex, BiIndex) -> Scalar,
) {
    let points: Vec<(BiIndex, (Scalar, Scalar))> = domain.iter().map(|l| (l, point(l))).collect();
    for ij in domain.iter() {
        let Some(p) = polys.get(&ij) else {
            cert.fail(Witness::new(
                format!("{name}{ij} missing"),
                vec![ij.i, ij.j],
                "built",
                "missing",
            ));
            continue;
        };
        if let Some(reason) = compatibility_violation(p, ij, order) {
            cert.fail(Witness::new(
                format!("{name}{ij} not {order}-compatible of degree {ij}: {reason}"),
                vec![ij.i, ij.j],
                "compatible",
                p,
            ));
        }
        for (xy, (a, b)) in &points {
            cert.expect_eq(
                || (format!("{name}{ij} at {xy}"), vec![ij.i, ij.j, xy.i, xy.j]),
                &table(ij, *xy),
                &p.eval(a, b),
            );
        }
    }
}

/// Type-`(1, 0)` P-polynomial certification with the polynomials of
/// [`construct_v`].
pub fn certify_p(params: SchemeParams) -> Certificate {
    match construct_v(params) {
        Ok(polys) => certify_p_with(params, &polys),
        Err(e) => {
            let mut cert = CertificateBuilder::new("ppoly", params);
            cert.fail(Witness::new(
                format!("construction of v failed: {e}"),
                vec![],
                "built",
                "error",
            ));
            cert.finish()
        }
    }
}

/// Type-`(1, 0)` certification of a given family of polynomials: `D` is
/// compatible, every `v_ij` is compatible of degree `(i, j)` and reproduces
/// `p_ij` on the whole grid.
pub fn certify_p_with(
    params: SchemeParams,
    polys: &BTreeMap<BiIndex, BivariatePolynomial>,
) -> Certificate {
    let domain = Domain::new(params);
    let order = OrderType::p_type();
    let compat = domain_compatible(&domain, &order);
    let mut cert = CertificateBuilder::new("polynomials", params);
    polynomial_checks(
        &mut cert,
        &domain,
        &order,
        "v",
        polys,
        |l| primal_point(params, l),
        |ij, xy| eigenvalue_p(params, ij.i, ij.j, xy.i, xy.j),
    );
    Certificate::merge("ppoly", params, &[compat, cert.finish()])
}

/// Type-`(0, 1/2)` Q-polynomial certification by two independent routes that
/// must agree: the Krein-parameter conditions, and the polynomials `v*_ij`.
pub fn certify_q(spec: &SpectralData) -> Certificate {
    let params = spec.params();
    let order = OrderType::q_type();
    let compat = domain_compatible(spec.domain(), &order);
    let route_a = Certificate::merge(
        "krein-route",
        params,
        &[compat.clone(), krein_conditions(spec, &order)],
    );

    let mut poly = CertificateBuilder::new("polynomials", params);
    match construct_v_star(spec) {
        Ok(polys) => polynomial_checks(
            &mut poly,
            spec.domain(),
            &order,
            "v*",
            &polys,
            |l| dual_point(spec, l),
            |ij, xy| spec.q(ij, xy).clone(),
        ),
        Err(w) => poly.fail(w),
    }
    let route_b = Certificate::merge("polynomial-route", params, &[compat, poly.finish()]);

    let mut agreement = CertificateBuilder::new("route-agreement", params);
    if route_a.passed() != route_b.passed() {
        agreement.fail(Witness::new(
            "Krein route and polynomial route disagree",
            vec![],
            format!("{:?}", route_a.verdict),
            format!("{:?}", route_b.verdict),
        ));
    }
    Certificate::merge("qpoly", params, &[route_a, route_b, agreement.finish()])
}

/// Nonvanishing of `q_{10,ij}^{i+1,j}`, `q_{10,i+1j}^{ij}`, `q_{01,ij}^{i,j+1}`,
/// `q_{01,ij+1}^{ij}`, and the order conditions on the support of
/// `q_{10,ij}` and `q_{01,ij}`, for the index pairs where they are stated.
fn krein_conditions(spec: &SpectralData, order: &OrderType) -> Certificate {
    let params = spec.params();
    let domain = spec.domain();
    let mut cert = CertificateBuilder::new("krein-conditions", params);
    let leq = |a: BiIndex, b: BiIndex| partial_leq(order, a.i, a.j, b.i, b.j);
    for (generator, (di, dj)) in [(bi(1, 0), (1, 0)), (bi(0, 1), (0, 1))] {
        if !domain.contains(generator) {
            continue;
        }
        for ij in domain.iter() {
            let next = ij.shift(di, dj);
            if !domain.contains(next) {
                continue;
            }
            for (a, b, c) in [(generator, ij, next), (generator, next, ij)] {
                if *spec.krein(a, b, c) == zero() {
                    cert.fail(Witness::new(
                        format!("q_{{{a},{b}}}^{c} = 0"),
                        vec![b.i, b.j, c.i, c.j],
                        "nonzero",
                        "0",
                    ));
                }
            }
            for mn in domain.iter() {
                if *spec.krein(generator, ij, mn) == zero() {
                    continue;
                }
                let ok = leq(mn, next) && leq(ij, mn.shift(di, dj));
                if !ok {
                    cert.fail(Witness::scalars(
                        format!("q_{{{generator},{ij}}}^{mn} nonzero outside the order bounds"),
                        vec![ij.i, ij.j, mn.i, mn.j],
                        &zero(),
                        spec.krein(generator, ij, mn),
                    ));
                }
            }
        }
    }
    cert.finish()
}

/// A closed-form coefficient: its value, or the fact that the denominator
/// vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Value(Scalar),
    /// Denominator zero; `removable` when the numerator vanishes too.
    Singular {
        removable: bool,
    },
}

fn quotient(num: Scalar, den: Scalar) -> ClosedForm {
    if den == zero() {
        ClosedForm::Singular {
            removable: num == zero(),
        }
    } else {
        ClosedForm::Value(num / den)
    }
}

/// Closed-form coefficients of the `theta*` relation at `(i, j)`: the target
/// label and its coefficient. Requires `k > 0`.
pub fn theta_star_coefficients(params: SchemeParams, l: BiIndex) -> Vec<(BiIndex, ClosedForm)> {
    let SchemeParams { r, k, n } = params;
    let (i, j) = (l.i, l.j);
    let s = |v: i64| int(v);
    vec![
        (bi(i, j), quotient(s(n * (r - 3) * i), s(k))),
        (
            bi(i + 1, j),
            quotient(s(n * (i + 1) * (k - i - j)), s(k * (n - i - 2 * j))),
        ),
        (
            bi(i + 1, j - 1),
            quotient(s(n * (i + 1) * (n - k - j + 1)), s(k * (n - i - 2 * j + 2))),
        ),
        (
            bi(i - 1, j + 1),
            quotient(
                s(n * (n - j - k) * (j + 1) * (r - 2)),
                s(k * (n - i - 2 * j)),
            ),
        ),
        (
            bi(i - 1, j),
            quotient(
                s(n * (k - i - j + 1) * (n - i - j + 2) * (r - 2)),
                s(k * (n - i - 2 * j + 2)),
            ),
        ),
    ]
}

/// Closed-form coefficients `A^`, `B^`, `C^` of the `mu*` relation at `(i, j)`
/// for the targets `(i, j+1)`, `(i, j)`, `(i, j-1)`. Requires `0 < k < n`.
pub fn mu_star_coefficients(params: SchemeParams, l: BiIndex) -> Vec<(BiIndex, ClosedForm)> {
    let SchemeParams { k, n, .. } = params;
    let (i, j) = (l.i, l.j);
    let s = |v: i64| int(v);
    let knk = k * (n - k);
    let d = 2 * j + i - n;
    let a = quotient(
        s((n - 1) * n * (j + k - n) * (i + j - k) * (j + 1)),
        s(knk * d * (d + 1)),
    );
    let b_den = s(knk * (d - 2) * d);
    let b_num = s((n - 1)
        * n
        * (j * j * (n - i) - j * (n - i) * (n - i + 1) + (k - i) * (n - i + 2) * (n - k)));
    let b = match quotient(b_num, b_den) {
        ClosedForm::Value(v) => ClosedForm::Value(s(n - 1) - v),
        singular => singular,
    };
    let c = match quotient(
        s((n - 1) * n * (j + k - n - 1) * (i + j - k - 1) * (i + j - n - 2)),
        s(knk * (d - 2) * (d - 3)),
    ) {
        ClosedForm::Value(v) => ClosedForm::Value(-v),
        singular => singular,
    };
    vec![(bi(i, j + 1), a), (bi(i, j), b), (bi(i, j - 1), c)]
}

/// One relation `lambda_xy q_ij(x,y) = sum_t c_t q_t(x,y)` at every grid
/// point, with closed-form coefficients where defined (and then compared
/// with the Krein parameter) and Krein parameters elsewhere.
fn dual_relation(
    cert: &mut CertificateBuilder,
    spec: &SpectralData,
    name: &str,
    generator: BiIndex,
    closed: impl Fn(BiIndex) -> Vec<(BiIndex, ClosedForm)>,
) {
    let domain = spec.domain();
    for ij in domain.iter() {
        let mut terms: Vec<(BiIndex, Scalar)> = Vec::new();
        for (t, form) in closed(ij) {
            if !domain.contains(t) {
                continue;
            }
            let krein = spec.krein(generator, ij, t).clone();
            match form {
                ClosedForm::Value(v) => {
                    cert.expect_eq(
                        || (format!("{name} relation at {ij}: closed form vs Krein q_{{{generator},{ij}}}^{t}"), vec![ij.i, ij.j, t.i, t.j]),
                        &krein,
                        &v,
                    );
                    terms.push((t, v));
                }
                ClosedForm::Singular { removable } => {
                    let kind = if removable { "0/0" } else { "pole" };
                    cert.note(format!(
                        "{name} relation at {ij}: closed-form coefficient of q{t} is {kind}; Krein value {} used",
                        to_string(&krein)
                    ));
                    terms.push((t, krein));
                }
            }
        }
        for xy in domain.iter() {
            let lhs = spec.q(generator, xy) * spec.q(ij, xy);
            let rhs = terms
                .iter()
                .fold(zero(), |acc, (t, c)| acc + c * spec.q(*t, xy));
            cert.expect_eq(
                || {
                    (
                        format!("{name} relation at {ij}, point {xy}"),
                        vec![ij.i, ij.j, xy.i, xy.j],
                    )
                },
                &lhs,
                &rhs,
            );
        }
    }
}

/// The `theta*` (five-term) and `mu*` (three-term) relations of the dual
/// eigenvalues at every `((i, j), (x, y))`.
pub fn dual_recurrence_check(spec: &SpectralData) -> Certificate {
    let params = spec.params();
    let mut cert = CertificateBuilder::new("dual-recurrences", params);
    if spec.domain().contains(bi(1, 0)) {
        dual_relation(&mut cert, spec, "theta*", bi(1, 0), |l| {
            theta_star_coefficients(params, l)
        });
    } else {
        cert.note("theta* relation vacuous: (1,0) not in the domain");
    }
    if spec.domain().contains(bi(0, 1)) {
        dual_relation(&mut cert, spec, "mu*", bi(0, 1), |l| {
            mu_star_coefficients(params, l)
        });
    } else {
        cert.note("mu* relation vacuous: (0,1) not in the domain");
    }
    cert.finish()
}
