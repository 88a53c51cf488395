use rug::{Integer, Rational};

use super::domain::{Domain, Exact, Real};
use super::gf::stirling1;
use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};

/// Grid of `[u^m zⁿ] F(u, z)` for `F(u, z) = exp(u·z/(1−z) + (u²/2)·log(1/(1−z²)))`,
/// one [`TruncatedSeries`] in `z` per power of `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateTruncated<D: Domain> {
    rows: Vec<TruncatedSeries<D>>,
}

impl<D: Domain> BivariateTruncated<D> {
    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn order(&self) -> usize {
        self.rows[0].order()
    }

    pub fn row(&self, m: usize) -> &TruncatedSeries<D> {
        &self.rows[m]
    }

    pub fn coeff(&self, m: usize, n: usize) -> &D::Elem {
        self.rows[m].coeff(n)
    }
}

/// `z/(1−z)` and `log(1/(1−z²))`.
fn pieces<D: Domain>(dom: &D, order: usize) -> (TruncatedSeries<D>, TruncatedSeries<D>) {
    let a = TruncatedSeries::from_fn(dom.clone(), order, |n| {
        if n == 0 {
            dom.zero()
        } else {
            dom.one()
        }
    });
    let l = TruncatedSeries::from_fn(dom.clone(), order, |n| {
        if n == 0 || n % 2 == 1 {
            dom.zero()
        } else {
            dom.div_usize(&dom.one(), n / 2)
        }
    });
    (a, l)
}

/// Rows `m = 0..=max_m` from `m F_m = a F_{m−1} + L F_{m−2}`, where
/// `a = z/(1−z)` and `L = log(1/(1−z²))` (differentiate in `u`).
pub fn build_f_bivariate<D: Domain>(dom: &D, max_m: usize, order: usize) -> BivariateTruncated<D> {
    let (a, l) = pieces(dom, order);
    let mut rows = vec![TruncatedSeries::one(dom.clone(), order)];
    for m in 1..=max_m {
        let mut next = rows[m - 1].mul(&a);
        if m >= 2 {
            next = next.add(&rows[m - 2].mul(&l));
        }
        let inv_m = dom.div_usize(&dom.one(), m);
        rows.push(next.scale(&inv_m));
    }
    BivariateTruncated { rows }
}

/// `[u^m] F(u, z)` from the closed form
/// `Σ_{k=⌈m/2⌉}^{m} C(k, m−k)/(k! 2^{m−k}) · (z/(1−z))^{2k−m} · log^{m−k}(1/(1−z²))`.
pub fn vertical_closed_form<D: Domain>(dom: &D, m: usize, order: usize) -> TruncatedSeries<D> {
    if m == 0 {
        return TruncatedSeries::one(dom.clone(), order);
    }
    let (a, l) = pieces(dom, order);
    let power = |s: &TruncatedSeries<D>, e: usize| {
        (0..e).fold(TruncatedSeries::one(dom.clone(), order), |acc, _| {
            acc.mul(s)
        })
    };
    let mut out = TruncatedSeries::zero(dom.clone(), order);
    for k in m.div_ceil(2)..=m {
        let c = Rational::from((
            Integer::from(Integer::binomial_u(k as u32, (m - k) as u32)),
            Integer::from(Integer::factorial(k as u32)) << (m - k) as u32,
        ));
        let term = power(&a, 2 * k - m).mul(&power(&l, m - k));
        out = out.add(&term.scale(&dom.from_rational(&c)));
    }
    out
}

fn check_range(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::domain(format!(
            "need 1 ≤ m ≤ n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// `E_n(invol | K = m) = [u^m zⁿ]F(u, z) · n!/[n m]`, the same for every θ.
pub fn conditional_mean_given_cycles(n: usize, m: usize) -> Result<Rational> {
    check_range(n, m)?;
    let grid = build_f_bivariate(&Exact, m, n);
    let ratio = Rational::from((Integer::from(Integer::factorial(n as u32)), stirling1(n, m)));
    Ok(Rational::from(grid.coeff(m, n) * &ratio))
}

/// [`conditional_mean_given_cycles`] in MPFR arithmetic, for large `n`.
pub fn conditional_mean_real(n: usize, m: usize, prec: u32) -> Result<rug::Float> {
    check_range(n, m)?;
    let dom = Real::new(prec)?;
    let grid = build_f_bivariate(&dom, m, n);
    let fact = rug::Float::with_val(prec, rug::Float::factorial(n as u32));
    let ratio = fact / rug::Float::with_val(prec, &stirling1(n, m));
    Ok(rug::Float::with_val(prec, grid.coeff(m, n) * &ratio))
}
