//! Krawtchouk, Eberlein (dual Hahn) and Hahn polynomials.
//!
//! All evaluations are exact finite sums. Binomials follow the generalized
//! convention: `C(a, b) = 0` for `b < 0`, and the falling-factorial quotient
//! `a (a-1) ... (a-b+1) / b!` otherwise, which also covers negative `a`.
//! Polynomials of negative degree evaluate to zero.
//!
//! Argument order is `(degree, point, size, parameter)` throughout, i.e.
//! `krawtchouk(i, x, n, p)` is `K_i(x, N, p)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::certificate::{Certificate, CertificateBuilder, Witness};
use crate::error::{Error, Result};
use crate::exact::{int, pow, ratio, Scalar};
use crate::scheme::SchemeParams;

fn binomial_int(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 && b > a {
        return BigInt::zero();
    }
    // C(a, b) == C(a, a - b) keeps the loop short for large non-negative a
    let b = if a >= 0 && a - b < b { a - b } else { b };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..b {
        num *= BigInt::from(a - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// Generalized binomial coefficient.
pub fn binomial(a: i64, b: i64) -> Scalar {
    Scalar::from_integer(binomial_int(a, b))
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `K_i(x, N, p) = sum_l (-1)^l (p-1)^(i-l) C(x, l) C(N-x, i-l)`.
pub fn krawtchouk(i: i64, x: i64, big_n: i64, p: i64) -> Scalar {
    if i < 0 {
        return Scalar::zero();
    }
    let pm1 = int(p - 1);
    (0..=i).fold(Scalar::zero(), |acc, l| {
        let term = pow(&pm1, (i - l) as u32)
            * Scalar::from_integer(binomial_int(x, l) * binomial_int(big_n - x, i - l));
        acc + term * int(sign(l))
    })
}

/// `E_i(x, N, p) = sum_l (-1)^l C(x, l) C(p-x, i-l) C(N-p-x, i-l)`.
pub fn eberlein(i: i64, x: i64, big_n: i64, p: i64) -> Scalar {
    if i < 0 {
        return Scalar::zero();
    }
    let sum = (0..=i).fold(BigInt::zero(), |acc, l| {
        acc + sign(l)
            * binomial_int(x, l)
            * binomial_int(p - x, i - l)
            * binomial_int(big_n - p - x, i - l)
    });
    Scalar::from_integer(sum)
}

/// Second closed form of the Eberlein polynomial,
/// `sum_l (-1)^(i+l) C(p-l, p-i) C(p-x, l) C(N-p-x+l, l)`.
pub fn eberlein_alt(i: i64, x: i64, big_n: i64, p: i64) -> Scalar {
    if i < 0 {
        return Scalar::zero();
    }
    let sum = (0..=i).fold(BigInt::zero(), |acc, l| {
        acc + sign(i + l)
            * binomial_int(p - l, p - i)
            * binomial_int(p - x, l)
            * binomial_int(big_n - p - x + l, l)
    });
    Scalar::from_integer(sum)
}

/// `H_i(x, N, p) = (C(N,i) - C(N,i-1)) / (C(p,x) C(N-p,x)) * E_x(i, N, p)`.
///
/// Note the swap: the Eberlein factor has degree `x` and is evaluated at `i`.
pub fn hahn(i: i64, x: i64, big_n: i64, p: i64) -> Result<Scalar> {
    if i < 0 {
        return Ok(Scalar::zero());
    }
    let den = binomial_int(p, x) * binomial_int(big_n - p, x);
    if den.is_zero() {
        return Err(Error::Domain(format!(
            "Hahn polynomial undefined at x={x}, N={big_n}, p={p}: C(p,x) C(N-p,x) = 0"
        )));
    }
    let lead = binomial_int(big_n, i) - binomial_int(big_n, i - 1);
    Ok(Scalar::new(lead, den) * eberlein(x, i, big_n, p))
}

/// `p x K_i - [-(i+1) K_{i+1} + (i + (p-1)(N-i)) K_i - (p-1)(N-i+1) K_{i-1}]`.
pub fn krawtchouk_recurrence_residual(i: i64, x: i64, big_n: i64, p: i64) -> Scalar {
    let k = |d| krawtchouk(d, x, big_n, p);
    let lhs = int(p * x) * k(i);
    let rhs = int(-(i + 1)) * k(i + 1) + int(i + (p - 1) * (big_n - i)) * k(i)
        - int((p - 1) * (big_n - i + 1)) * k(i - 1);
    lhs - rhs
}

/// Coefficients of `-x H_r = A_r H_{r+1} + B_r H_r + C_r H_{r-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HahnCoefficients {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

/// The three-term recurrence coefficients of the Hahn polynomials in degree.
///
/// Fails with [`Error::Singular`] when any of the denominators
/// `2r-N`, `N-2r-1`, `2r-N-2`, `N-2r+3` vanishes.
pub fn hahn_recurrence_coeffs(r: i64, big_n: i64, p: i64) -> Result<HahnCoefficients> {
    let dens = [
        2 * r - big_n,
        big_n - 2 * r - 1,
        2 * r - big_n - 2,
        big_n - 2 * r + 3,
    ];
    if dens.contains(&0) {
        return Err(Error::Singular(format!(
            "Hahn recurrence coefficients at r={r}, N={big_n}, p={p}"
        )));
    }
    let a = ratio(
        (r - big_n + p) * (p - r) * (r + 1),
        (2 * r - big_n) * (big_n - 2 * r - 1),
    );
    let b = -ratio(
        r * r * big_n - r * big_n * (big_n + 1) + (2 + big_n) * (big_n - p) * p,
        (2 * r - big_n - 2) * (2 * r - big_n),
    );
    let c = -ratio(
        (r - big_n - 1 + p) * (r - p - 1) * (big_n - r + 2),
        (2 * r - big_n - 2) * (big_n - 2 * r + 3),
    );
    Ok(HahnCoefficients { a, b, c })
}

/// `-x H_r - (A_r H_{r+1} + B_r H_r + C_r H_{r-1})`.
pub fn hahn_recurrence_residual(r: i64, x: i64, big_n: i64, p: i64) -> Result<Scalar> {
    let HahnCoefficients { a, b, c } = hahn_recurrence_coeffs(r, big_n, p)?;
    let h = |d| hahn(d, x, big_n, p);
    Ok(-int(x) * h(r)? - (a * h(r + 1)? + b * h(r)? + c * h(r - 1)?))
}

/// Residual of the parameter-shift identity expressing `H_r(x, N, p)` through
/// `H_r` and `H_{r-1}` at `(N-1, p-1)`.
pub fn hahn_parameter_shift_residual(r: i64, x: i64, big_n: i64, p: i64) -> Result<Scalar> {
    if p == 0 || big_n - 2 * r == 0 || big_n - 2 * r + 2 == 0 {
        return Err(Error::Domain(format!(
            "parameter shift undefined at r={r}, N={big_n}, p={p}"
        )));
    }
    let lhs = hahn(r, x, big_n, p)?;
    let shifted = ratio(p - r, big_n - 2 * r) * hahn(r, x, big_n - 1, p - 1)?
        + ratio(big_n - p - r + 1, big_n - 2 * r + 2) * hahn(r - 1, x, big_n - 1, p - 1)?;
    Ok(lhs - ratio(big_n, p) * shifted)
}

/// Pochhammer symbol `(a)_n`.
fn pochhammer(a: &Scalar, n: i64) -> Scalar {
    (0..n).fold(Scalar::one(), |acc, t| acc * (a + int(t)))
}

/// Terminating hypergeometric series `pFq(upper; lower | z)`, summed up to
/// `terms` (inclusive). Fails if a lower Pochhammer symbol vanishes inside the
/// summation range.
fn hypergeometric(upper: &[Scalar], lower: &[Scalar], z: &Scalar, terms: i64) -> Result<Scalar> {
    let mut sum = Scalar::zero();
    let mut zpow = Scalar::one();
    let mut fact = Scalar::one();
    for l in 0..=terms {
        if l > 0 {
            zpow *= z;
            fact *= int(l);
        }
        let den = lower
            .iter()
            .fold(Scalar::one(), |acc, b| acc * pochhammer(b, l))
            * &fact;
        if den.is_zero() {
            return Err(Error::Domain(format!(
                "vanishing lower Pochhammer symbol at term {l}"
            )));
        }
        let num = upper
            .iter()
            .fold(Scalar::one(), |acc, a| acc * pochhammer(a, l));
        sum += num * &zpow / den;
    }
    Ok(sum)
}

/// Krawtchouk polynomial in hypergeometric normalization,
/// `2F1(-i, -x; -N | 1/q)`.
pub fn krawtchouk_hat(i: i64, x: i64, q: &Scalar, big_n: i64) -> Result<Scalar> {
    if q.is_zero() {
        return Err(Error::Domain("Krawtchouk parameter q = 0".into()));
    }
    hypergeometric(&[int(-i), int(-x)], &[int(-big_n)], &q.recip(), i.min(x))
}

/// Hahn polynomial `Q_i(x; alpha, beta, n) = 3F2(-i, i+alpha+beta+1, -x; alpha+1, -n | 1)`.
pub fn hahn_q(i: i64, x: i64, alpha: i64, beta: i64, n: i64) -> Result<Scalar> {
    hypergeometric(
        &[int(-i), int(i + alpha + beta + 1), int(-x)],
        &[int(alpha + 1), int(-n)],
        &Scalar::one(),
        i.min(x),
    )
}

/// Dual Hahn polynomial `R_i(lambda(x); gamma, delta, n) = 3F2(-i, -x, x+gamma+delta+1; gamma+1, -n | 1)`.
pub fn dual_hahn_r(i: i64, x: i64, gamma: i64, delta: i64, n: i64) -> Result<Scalar> {
    hypergeometric(
        &[int(-i), int(-x), int(x + gamma + delta + 1)],
        &[int(gamma + 1), int(-n)],
        &Scalar::one(),
        i.min(x),
    )
}

/// Residuals of the three bridges between the combinatorial normalizations
/// (`K`, `H`, `E`) and the hypergeometric ones, with `mu = min(p, N-p)`:
///
/// * `K_i(x,N,p) - C(N,i) (p-1)^i Khat_i(x; (p-1)/p, N)`
/// * `H_i(x,N,p) - (C(N,i) - C(N,i-1)) Q_i(x; mu-N-1, -mu-1, mu)`
/// * `E_i(x,N,p) - C(p,i) C(N-p,i) R_i(lambda(x); mu-N-1, -mu-1, mu)`
pub fn hypergeometric_bridge_residuals(
    i: i64,
    x: i64,
    big_n: i64,
    p: i64,
) -> Result<(Scalar, Scalar, Scalar)> {
    if p == 0 || p == 1 {
        return Err(Error::Domain(format!(
            "Krawtchouk bridge needs p outside {{0, 1}}, got p={p}"
        )));
    }
    let k_bridge = krawtchouk(i, x, big_n, p)
        - binomial(big_n, i)
            * pow(&int(p - 1), i as u32)
            * krawtchouk_hat(i, x, &ratio(p - 1, p), big_n)?;

    let mu = p.min(big_n - p);
    let h_bridge = hahn(i, x, big_n, p)?
        - (binomial(big_n, i) - binomial(big_n, i - 1))
            * hahn_q(i, x, mu - big_n - 1, -mu - 1, mu)?;
    let e_bridge = eberlein(i, x, big_n, p)
        - binomial(p, i) * binomial(big_n - p, i) * dual_hahn_r(i, x, mu - big_n - 1, -mu - 1, mu)?;
    Ok((k_bridge, h_bridge, e_bridge))
}

/// Counts of grid points checked, skipped (undefined) and failed.
#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    undefined: usize,
}

/// Exhaustive exact check over `N <= max_n` of the two Eberlein closed forms,
/// the Krawtchouk and Hahn recurrences, the Hahn parameter shift and the
/// hypergeometric bridges. Points where an identity is undefined (vanishing
/// denominators) are counted and reported in the notes.
pub fn grid_check(instance: SchemeParams, max_n: i64) -> Certificate {
    let mut cert = CertificateBuilder::new("orthopoly", instance);
    let zero_residual = |cert: &mut CertificateBuilder,
                         tally: &mut Tally,
                         name: &str,
                         idx: [i64; 4],
                         value: Result<Scalar>| {
        match value {
            Ok(v) => {
                tally.checked += 1;
                if !v.is_zero() {
                    cert.fail(Witness::scalars(
                        format!("{name} residual at (i,x,N,p) = {idx:?}"),
                        idx.to_vec(),
                        &Scalar::zero(),
                        &v,
                    ));
                }
            }
            Err(_) => tally.undefined += 1,
        }
    };
    let mut tallies: Vec<(&str, Tally)> = Vec::new();

    let mut t = Tally::default();
    for big_n in 0..=max_n {
        for p in 0..=big_n {
            let mu = p.min(big_n - p);
            for i in 0..=mu {
                for x in 0..=mu {
                    let diff = eberlein(i, x, big_n, p) - eberlein_alt(i, x, big_n, p);
                    zero_residual(
                        &mut cert,
                        &mut t,
                        "Eberlein closed forms",
                        [i, x, big_n, p],
                        Ok(diff),
                    );
                }
            }
        }
    }
    tallies.push(("Eberlein closed forms", t));

    let mut t = Tally::default();
    for big_n in 0..=max_n {
        for p in 2..=max_n.max(2) {
            for i in 0..=big_n {
                for x in 0..=big_n {
                    let r = krawtchouk_recurrence_residual(i, x, big_n, p);
                    zero_residual(
                        &mut cert,
                        &mut t,
                        "Krawtchouk recurrence",
                        [i, x, big_n, p],
                        Ok(r),
                    );
                }
            }
        }
    }
    tallies.push(("Krawtchouk recurrence", t));

    let mut t = Tally::default();
    for big_n in 0..=max_n {
        for p in 0..=big_n {
            let mu = p.min(big_n - p);
            for r in 0..=mu {
                for x in 0..=mu {
                    let res = hahn_recurrence_residual(r, x, big_n, p);
                    zero_residual(&mut cert, &mut t, "Hahn recurrence", [r, x, big_n, p], res);
                }
            }
        }
    }
    tallies.push(("Hahn recurrence", t));

    let mut t = Tally::default();
    for big_n in 0..=max_n {
        for p in 0..=big_n {
            for r in 0..=p {
                for x in 0..=p.min(big_n - p) {
                    let res = hahn_parameter_shift_residual(r, x, big_n, p);
                    zero_residual(
                        &mut cert,
                        &mut t,
                        "Hahn parameter shift",
                        [r, x, big_n, p],
                        res,
                    );
                }
            }
        }
    }
    tallies.push(("Hahn parameter shift", t));

    let mut t = Tally::default();
    for big_n in 0..=max_n {
        for p in 2..=big_n {
            let mu = p.min(big_n - p);
            for i in 0..=mu {
                for x in 0..=mu {
                    match hypergeometric_bridge_residuals(i, x, big_n, p) {
                        Ok((a, b, c)) => {
                            for (name, v) in [
                                ("Krawtchouk bridge", a),
                                ("Hahn bridge", b),
                                ("Eberlein bridge", c),
                            ] {
                                zero_residual(&mut cert, &mut t, name, [i, x, big_n, p], Ok(v));
                            }
                        }
                        Err(e) => {
                            zero_residual(&mut cert, &mut t, "bridges", [i, x, big_n, p], Err(e))
                        }
                    }
                }
            }
        }
    }
    tallies.push(("hypergeometric bridges", t));

    for (name, t) in tallies {
        cert.note(format!(
            "{name}: {} points checked, {} undefined",
            t.checked, t.undefined
        ));
    }
    cert.finish()
}
