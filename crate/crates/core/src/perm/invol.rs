use rug::ops::Pow;
use rug::{Integer, Rational};

use super::cycle_type::{CycleCounts, CycleType};
use super::permutation::{involutions, Permutation};
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 8;

/// `V_m(k) = Σ_{j ≤ m/2} (m)_{2j} / ((2k)^j j!)`, the per-length factor of `invol / B`.
pub fn v_factor(m: usize, k: usize) -> Rational {
    assert!(k > 0, "cycle length must be positive");
    let mut term = Rational::from(1);
    let mut sum = term.clone();
    for j in 0..m / 2 {
        let num = Integer::from(m - 2 * j) * (m - 2 * j - 1);
        let den = Integer::from(2 * k) * (j + 1);
        term *= Rational::from((num, den));
        sum += &term;
    }
    sum
}

/// Natural log of [`v_factor`] in double precision, summed in log space so
/// that large multiplicities do not overflow.
pub fn ln_v_factor(m: usize, k: usize) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let two_k = 2.0 * k as f64;
    let mut ln_term = 0.0f64;
    let mut terms = Vec::with_capacity(m / 2 + 1);
    terms.push(0.0);
    for j in 0..m / 2 {
        let a = (m - 2 * j) as f64;
        ln_term += (a * (a - 1.0)).ln() - (two_k * (j + 1) as f64).ln();
        terms.push(ln_term);
    }
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
}

/// `B(σ) = Π k^{c_k}`, the product of the cycle lengths.
pub fn big_b(c: &CycleType) -> Integer {
    c.iter().fold(Integer::from(1), |acc, (k, m)| {
        acc * Integer::from(k).pow(u32::try_from(m).expect("multiplicity fits u32"))
    })
}

/// Number of ordered involution pairs `(τ₁, τ₂)` with `σ = τ₂ ∘ τ₁`, from the
/// falling-factorial product formula.
pub fn invol(c: &CycleType) -> Integer {
    let mut prod = Rational::from(big_b(c));
    for (k, m) in c.iter() {
        prod *= v_factor(m, k);
    }
    assert_eq!(
        *prod.denom(),
        1,
        "invol({c}) evaluated to the non-integer {prod}"
    );
    prod.into_numer_denom().0
}

/// Same count via the Hermite form `Π k^{c_k} He_{c_k}(i√k) / (i√k)^{c_k}`.
///
/// With `x = i√k`, the term `x^{m−2r}` of `He_m` divided by `x^m` is
/// `x^{−2r} = i^{−2r} k^{−r}`. The power of `i` is tracked as an exponent
/// mod 4 and must land on a real unit, so only rationals are ever formed.
pub fn invol_hermite(c: &CycleType) -> Integer {
    let mut prod = Rational::from(1);
    for (k, m) in c.iter() {
        let mut ratio = Rational::new();
        let m_fact = Integer::from(Integer::factorial(m as u32));
        for r in 0..=m / 2 {
            // He_m coefficient of x^{m-2r}: m! (-1)^r / (r! (m-2r)! 2^r).
            let mut coeff = Rational::from((
                m_fact.clone(),
                Integer::from(Integer::factorial(r as u32))
                    * Integer::from(Integer::factorial((m - 2 * r) as u32))
                    * (Integer::from(1) << r as u32),
            ));
            let he_sign = if r % 2 == 0 { 1 } else { -1 };
            let i_sign = real_unit_of_i_power(-2 * r as i64);
            if he_sign * i_sign < 0 {
                coeff = -coeff;
            }
            ratio += coeff / Integer::from(k).pow(r as u32);
        }
        prod *= ratio * Integer::from(k).pow(m as u32);
    }
    assert_eq!(
        *prod.denom(),
        1,
        "Hermite form of invol({c}) is not an integer"
    );
    prod.into_numer_denom().0
}

/// `i^e` for even `e`, as ±1.
fn real_unit_of_i_power(e: i64) -> i32 {
    match e.rem_euclid(4) {
        0 => 1,
        2 => -1,
        _ => panic!("i^{e} is not real"),
    }
}

/// `ln invol_j(counts)`: the product formula restricted to lengths `k ≤ upto`,
/// in double precision. `counts` need not sum to anything in particular.
pub fn ln_invol(counts: &CycleCounts, upto: usize) -> f64 {
    counts
        .iter()
        .take_while(|&(k, _)| k <= upto)
        .map(|(k, m)| m as f64 * (k as f64).ln() + ln_v_factor(m, k))
        .sum()
}

/// `ln B_j(counts)`, lengths `k ≤ upto`.
pub fn ln_big_b(counts: &CycleCounts, upto: usize) -> f64 {
    counts
        .iter()
        .take_while(|&(k, _)| k <= upto)
        .map(|(k, m)| m as f64 * (k as f64).ln())
        .sum()
}

/// Telephone number `t_n`, the number of involutions of `[n]`.
pub fn telephone(n: usize) -> Integer {
    let (mut prev, mut cur) = (Integer::from(1), Integer::from(1));
    for m in 2..=n {
        let next: Integer = &cur + &prev * Integer::from(m - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Enumerates involution pairs directly. Build once per `n` and reuse.
pub struct InvolutionPairs {
    n: usize,
    involutions: Vec<Permutation>,
}

impl InvolutionPairs {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::TooLarge {
                n,
                cap,
                hint: "brute-force enumeration grows like t_n²; raise the cap explicitly",
            });
        }
        Ok(Self {
            n,
            involutions: involutions(n),
        })
    }

    /// Counts involutions `τ₁` for which `τ₂ = σ ∘ τ₁` is also an involution.
    pub fn count(&self, sigma: &Permutation) -> Result<Integer> {
        if sigma.n() != self.n {
            return Err(Error::InvalidPermutation(format!(
                "expected a permutation of [{}], got one of [{}]",
                self.n,
                sigma.n()
            )));
        }
        let s = sigma.as_slice();
        let hits = self
            .involutions
            .iter()
            .filter(|tau| {
                let t = tau.as_slice();
                // (σ∘τ)² = id  ⇔  σ(τ(σ(τ(x)))) = x for all x
                (0..self.n).all(|x| s[t[s[t[x]]]] == x)
            })
            .count();
        Ok(Integer::from(hits))
    }
}

/// Brute-force `invol(p)` with the default cap of `n ≤ 8`.
pub fn brute_force_invol(p: &Permutation) -> Result<Integer> {
    brute_force_invol_with_cap(p, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_invol_with_cap(p: &Permutation, cap: usize) -> Result<Integer> {
    InvolutionPairs::new(p.n(), cap)?.count(p)
}
