use rug::Integer;

use super::domain::{Domain, Exact, Real};
use super::truncated::{exp_recurrence, TruncatedSeries};
use crate::error::{Error, Result};
use crate::esf::EsfParams;

/// `n!/θ⁽ⁿ⁾` for `n = 0..=order`, the factor turning `[zⁿ]` into an
/// `ESF(θ)` expectation.
pub fn esf_normalizers<D: Domain>(dom: &D, theta: &D::Elem, order: usize) -> Vec<D::Elem> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(dom.one());
    for j in 0..order {
        let mut den = theta.clone();
        dom.add_assign(&mut den, &dom.from_int(j as i64));
        let step = dom.div(&dom.from_int(j as i64 + 1), &den);
        let next = dom.mul(&out[j], &step);
        out.push(next);
    }
    out
}

/// `F(z) = exp(θz/(1−z)) · (1−z²)^{−θ²/2}`, assembled factor by factor.
pub fn build_f<D: Domain>(dom: &D, theta: &D::Elem, order: usize) -> Result<TruncatedSeries<D>> {
    let mut a = TruncatedSeries::from_fn(dom.clone(), order, |_| theta.clone());
    a = a.sub(&TruncatedSeries::monomial(
        dom.clone(),
        0,
        theta.clone(),
        order,
    ));
    let one_minus_z2 = TruncatedSeries::new(
        dom.clone(),
        vec![dom.one(), dom.zero(), dom.from_int(-1)],
        order,
    );
    let mut r = dom.mul(theta, theta);
    r = dom.div_usize(&r, 2);
    let r = dom.mul(&r, &dom.from_int(-1));
    Ok(a.exp()?.mul(&one_minus_z2.pow(&r)?))
}

/// `F` again, from `log F = Σ (θ + [k even] θ²/k) z^k` and the exponential
/// recurrence. Cheaper than [`build_f`] and used for large orders.
pub fn build_f_explog<D: Domain>(dom: &D, theta: &D::Elem, order: usize) -> TruncatedSeries<D> {
    let theta2 = dom.mul(theta, theta);
    let mut h = vec![dom.zero(); order + 1];
    for (k, hk) in h.iter_mut().enumerate().skip(1) {
        *hk = theta.clone();
        if k % 2 == 0 {
            dom.add_assign(hk, &dom.div_usize(&theta2, k));
        }
    }
    exp_recurrence(dom, &h, dom.one())
}

/// `G(z) = Π_k (1−θ²z^{2k})^{−1/2} exp(θkz^k/(1−θz^k))`, as the literal
/// product over `k ≤ order` (later factors are `1 + O(z^{order+1})`).
pub fn build_g<D: Domain>(dom: &D, theta: &D::Elem, order: usize) -> Result<TruncatedSeries<D>> {
    let theta2 = dom.mul(theta, theta);
    let neg_half = dom.div(&dom.from_int(-1), &dom.from_int(2));
    let mut g = TruncatedSeries::one(dom.clone(), order);
    for k in 1..=order {
        let inner = order / k;
        let mut base = TruncatedSeries::zero(dom.clone(), inner);
        let quad = dom.mul(&theta2, &dom.from_int(-1));
        let quad_series =
            TruncatedSeries::new(dom.clone(), vec![dom.one(), dom.zero(), quad], inner);
        let mehler = quad_series.pow(&neg_half)?;
        // k·θw/(1−θw) = k Σ θ^ℓ w^ℓ
        let mut power = dom.one();
        let mut coeffs = vec![dom.zero(); inner + 1];
        for c in coeffs.iter_mut().skip(1) {
            power = dom.mul(&power, theta);
            *c = dom.mul_usize(&power, k);
        }
        base = base.add(&TruncatedSeries::new(dom.clone(), coeffs, inner));
        let factor = mehler.mul(&base.exp()?);
        g = g.mul(&factor.stretch_to(k, order));
    }
    Ok(g)
}

/// `G` from `log G = Σ_m (Σ_{ℓ|m} θ^ℓ m/ℓ + [m even] Σ_{ℓ|m/2} θ^{2ℓ}/(2ℓ)) z^m`.
pub fn build_g_explog<D: Domain>(dom: &D, theta: &D::Elem, order: usize) -> TruncatedSeries<D> {
    let mut powers = Vec::with_capacity(order + 1);
    powers.push(dom.one());
    for l in 1..=order {
        powers.push(dom.mul(&powers[l - 1], theta));
    }
    let mut h = vec![dom.zero(); order + 1];
    for l in 1..=order {
        for m in (l..=order).step_by(l) {
            dom.add_assign(&mut h[m], &dom.mul_usize(&powers[l], m / l));
        }
        for m in (2 * l..=order).step_by(2 * l) {
            dom.add_assign(&mut h[m], &dom.div_usize(&powers[2 * l], 2 * l));
        }
    }
    exp_recurrence(dom, &h, dom.one())
}

fn normalize<D: Domain>(dom: &D, theta: &D::Elem, s: TruncatedSeries<D>) -> Vec<D::Elem> {
    let norm = esf_normalizers(dom, theta, s.order());
    s.into_coeffs()
        .iter()
        .zip(&norm)
        .map(|(c, w)| dom.mul(c, w))
        .collect()
}

/// `E_n invol` under `ESF(θ)` for every `n ≤ order`.
pub fn mean_invol_all<D: Domain>(
    dom: &D,
    params: &EsfParams,
    order: usize,
) -> Result<Vec<D::Elem>> {
    let theta = dom.theta(params)?;
    Ok(normalize(dom, &theta, build_f_explog(dom, &theta, order)))
}

/// `E_n invol²` under `ESF(θ)` for every `n ≤ order`.
pub fn second_moment_all<D: Domain>(
    dom: &D,
    params: &EsfParams,
    order: usize,
) -> Result<Vec<D::Elem>> {
    let theta = dom.theta(params)?;
    Ok(normalize(dom, &theta, build_g_explog(dom, &theta, order)))
}

pub fn mean_invol_exact(n: usize, params: &EsfParams) -> Result<rug::Rational> {
    Ok(mean_invol_all(&Exact, params, n)?.swap_remove(n))
}

pub fn mean_invol_real(n: usize, params: &EsfParams, prec: u32) -> Result<rug::Float> {
    Ok(mean_invol_all(&Real::new(prec)?, params, n)?.swap_remove(n))
}

pub fn second_moment_exact(n: usize, params: &EsfParams) -> Result<rug::Rational> {
    Ok(second_moment_all(&Exact, params, n)?.swap_remove(n))
}

pub fn second_moment_real(n: usize, params: &EsfParams, prec: u32) -> Result<rug::Float> {
    Ok(second_moment_all(&Real::new(prec)?, params, n)?.swap_remove(n))
}

/// Row `n` of the unsigned Stirling numbers of the first kind, `[n m]` for
/// `m = 0..=n`.
pub fn stirling1_row(n: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for i in 0..n {
        let mut next = vec![Integer::new(); i + 2];
        for (m, v) in row.iter().enumerate() {
            next[m + 1] += v;
            next[m] += Integer::from(v * i);
        }
        row = next;
    }
    row
}

pub fn stirling1(n: usize, m: usize) -> Integer {
    if m > n {
        return Integer::new();
    }
    stirling1_row(n).swap_remove(m)
}

/// The exponential-formula series whose `n`-th coefficient times `n!/θ⁽ⁿ⁾`
/// is `P_n(σ ∈ P_ξ)`: lengths `k ≤ ξ` may repeat up to `⌊ξ⌋` times, longer
/// lengths at most once.
pub fn membership_series<D: Domain>(
    dom: &D,
    params: &EsfParams,
    xi: f64,
    order: usize,
) -> Result<TruncatedSeries<D>> {
    if !(xi >= 1.0) {
        return Err(Error::domain(format!("ξ must be at least 1, got {xi}")));
    }
    let theta = dom.theta(params)?;
    let cap = if xi >= order as f64 {
        order
    } else {
        xi.floor() as usize
    };
    let mut out = TruncatedSeries::one(dom.clone(), order);
    for k in 1..=order {
        let w = dom.div_usize(&theta, k);
        if k <= cap {
            // Σ_{j ≤ cap} (θz^k/k)^j / j!
            let inner = order / k;
            let mut coeffs = vec![dom.one()];
            for j in 1..=cap.min(inner) {
                let next = dom.div_usize(&dom.mul(&coeffs[j - 1], &w), j);
                coeffs.push(next);
            }
            let factor = TruncatedSeries::new(dom.clone(), coeffs, inner);
            out = out.mul(&factor.stretch_to(k, order));
        } else {
            // multiply by 1 + (θ/k) z^k in place, high degrees first
            let mut c = out.into_coeffs();
            for i in (k..=order).rev() {
                let add = dom.mul(&c[i - k], &w);
                dom.add_assign(&mut c[i], &add);
            }
            out = TruncatedSeries::new(dom.clone(), c, order);
        }
    }
    Ok(out)
}

/// `P_n(σ ∈ P_ξ)` for every `n ≤ order`.
pub fn membership_probabilities<D: Domain>(
    dom: &D,
    params: &EsfParams,
    xi: f64,
    order: usize,
) -> Result<Vec<D::Elem>> {
    let theta = dom.theta(params)?;
    Ok(normalize(
        dom,
        &theta,
        membership_series(dom, params, xi, order)?,
    ))
}

#[cfg(test)]
mod tests {
    use rug::Rational;

    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn theta(a: i64, b: i64) -> EsfParams {
        EsfParams::ratio(a, b).unwrap()
    }

    #[test]
    fn f_small_coefficients() {
        let f = build_f(&Exact, &q(1, 1), 4).unwrap();
        assert_eq!(*f.coeff(0), 1);
        assert_eq!(*f.coeff(1), 1);
        assert_eq!(*f.coeff(2), 2);
        assert_eq!(f, build_f_explog(&Exact, &q(1, 1), 4));
    }

    #[test]
    fn f_forms_agree() {
        for t in [q(1, 3), q(7, 2), q(2, 1)] {
            assert_eq!(
                build_f(&Exact, &t, 30).unwrap(),
                build_f_explog(&Exact, &t, 30)
            );
        }
    }

    #[test]
    fn g_forms_agree() {
        for t in [q(1, 2), q(1, 1), q(2, 1)] {
            assert_eq!(
                build_g(&Exact, &t, 20).unwrap(),
                build_g_explog(&Exact, &t, 20)
            );
        }
    }

    #[test]
    fn small_means() {
        assert_eq!(mean_invol_exact(1, &theta(5, 7)).unwrap(), 1);
        assert_eq!(mean_invol_exact(2, &theta(2, 1)).unwrap(), 2);
        // S₃: identity 4, three transpositions 2 each, two 3-cycles 3 each.
        assert_eq!(mean_invol_exact(3, &theta(1, 1)).unwrap(), q(16, 6));
        assert_eq!(second_moment_exact(2, &theta(1, 1)).unwrap(), 4);
        let g = build_g(&Exact, &q(3, 1), 3).unwrap();
        assert_eq!(*g.coeff(0), 1);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling1(3, 1), 2);
        assert_eq!(stirling1(4, 2), 11);
        assert_eq!(stirling1(6, 6), 1);
        assert_eq!(stirling1(2, 3), 0);
        for n in 0..12 {
            let total: Integer = stirling1_row(n).into_iter().sum();
            assert_eq!(total, Integer::from(Integer::factorial(n as u32)));
        }
    }

    #[test]
    fn membership_small() {
        let p = membership_probabilities(&Exact, &theta(1, 1), 1.0, 4).unwrap();
        assert_eq!(p[4], q(7, 12));
        let p = membership_probabilities(&Exact, &theta(3, 2), 9.0, 8).unwrap();
        assert!(p.iter().all(|v| *v == 1));
        assert!(membership_series(&Exact, &theta(1, 1), 0.5, 3).is_err());
    }

    #[test]
    fn real_matches_exact() {
        let params = theta(1, 2);
        let exact = mean_invol_all(&Exact, &params, 60).unwrap();
        let real = mean_invol_all(&Real::default(), &params, 60).unwrap();
        for (e, r) in exact.iter().zip(&real) {
            let rel = (rug::Float::with_val(200, r - e) / e).abs();
            assert!(rel < 1e-25);
        }
    }
}
