use super::domain::Domain;
use crate::error::{Error, Result};

/// A power series `c₀ + c₁z + ⋯ + c_N z^N`, computed modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<D: Domain> {
    dom: D,
    coeffs: Vec<D::Elem>,
}

impl<D: Domain> TruncatedSeries<D> {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(dom: D, mut coeffs: Vec<D::Elem>, order: usize) -> Self {
        coeffs.resize(order + 1, dom.zero());
        Self { dom, coeffs }
    }

    pub fn from_fn(dom: D, order: usize, mut f: impl FnMut(usize) -> D::Elem) -> Self {
        let coeffs = (0..=order).map(&mut f).collect();
        Self { dom, coeffs }
    }

    pub fn zero(dom: D, order: usize) -> Self {
        Self::new(dom, Vec::new(), order)
    }

    pub fn one(dom: D, order: usize) -> Self {
        let one = dom.one();
        Self::new(dom, vec![one], order)
    }

    /// `c·z^k`.
    pub fn monomial(dom: D, k: usize, c: D::Elem, order: usize) -> Self {
        let mut s = Self::zero(dom, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &D::Elem {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D::Elem> {
        self.coeffs
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| self.dom.to_f64(c)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.dom.clone(), self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = self.truncate(order);
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            self.dom.add_assign(a, b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = self.truncate(order);
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            self.dom.sub_assign(a, b);
        }
        out
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.dom.mul(a, c)).collect();
        Self {
            dom: self.dom.clone(),
            coeffs,
        }
    }

    /// Schoolbook product. Zero coefficients of `other` are skipped, so a
    /// sparse right factor (such as a stretched series) is cheap.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(self.dom.clone(), order);
        for (j, b) in other.coeffs.iter().enumerate().take(order + 1) {
            if self.dom.is_zero(b) {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate().take(order + 1 - j) {
                self.dom.mul_add_assign(&mut out.coeffs[i + j], a, b);
            }
        }
        out
    }

    /// `f(z^k)`, truncated at the same order.
    pub fn stretch(&self, k: usize) -> Self {
        self.stretch_to(k, self.order())
    }

    /// `f(z^k)` truncated at `order`; `f` needs only `⌊order/k⌋ + 1` terms.
    pub fn stretch_to(&self, k: usize, order: usize) -> Self {
        assert!(k > 0, "stretch factor must be positive");
        let mut out = Self::zero(self.dom.clone(), order);
        for (i, c) in self.coeffs.iter().enumerate().take(order / k + 1) {
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// `exp(f)`. The exact domain needs `f₀ = 0`; the real domain factors out
    /// `e^{f₀}`.
    pub fn exp(&self) -> Result<Self> {
        let head = self
            .dom
            .exp(&self.coeffs[0])
            .ok_or_else(|| Error::domain("exp of a series needs a zero constant term here"))?;
        let mut g = exp_recurrence(&self.dom, &self.coeffs, head.clone());
        g.coeffs[0] = head;
        Ok(g)
    }

    /// `log(f)`; needs `f₀ = 1` (any positive `f₀` in the real domain).
    pub fn log(&self) -> Result<Self> {
        let dom = &self.dom;
        let c0 = &self.coeffs[0];
        let head = dom
            .ln(c0)
            .ok_or_else(|| Error::domain("log of a series needs constant term 1"))?;
        let order = self.order();
        // f = c₀ g with g₀ = 1, and n·ℓ_n = n g_n − Σ_{k<n} k ℓ_k g_{n−k}.
        let g: Vec<D::Elem> = self.coeffs.iter().map(|c| dom.div(c, c0)).collect();
        let mut out = vec![dom.zero(); order + 1];
        for n in 1..=order {
            let mut acc = dom.mul_usize(&g[n], n);
            let mut sub = dom.zero();
            for k in 1..n {
                let kl = dom.mul_usize(&out[k], k);
                dom.mul_add_assign(&mut sub, &kl, &g[n - k]);
            }
            dom.sub_assign(&mut acc, &sub);
            out[n] = dom.div_usize(&acc, n);
        }
        out[0] = head;
        Ok(Self {
            dom: self.dom.clone(),
            coeffs: out,
        })
    }

    /// `f^r` for `f₀ = 1`, via `n h_n = Σ_{k=1}^n ((r+1)k − n) f_k h_{n−k}`.
    pub fn pow(&self, r: &D::Elem) -> Result<Self> {
        let dom = &self.dom;
        if self.coeffs[0] != dom.one() {
            return Err(Error::domain("power of a series needs constant term 1"));
        }
        let order = self.order();
        let mut r1 = r.clone();
        dom.add_assign(&mut r1, &dom.one());
        let mut h = vec![dom.zero(); order + 1];
        h[0] = dom.one();
        for n in 1..=order {
            let mut acc = dom.zero();
            for k in 1..=n {
                if dom.is_zero(&self.coeffs[k]) {
                    continue;
                }
                let mut w = dom.mul_usize(&r1, k);
                dom.sub_assign(&mut w, &dom.from_int(n as i64));
                let wf = dom.mul(&w, &self.coeffs[k]);
                dom.mul_add_assign(&mut acc, &wf, &h[n - k]);
            }
            h[n] = dom.div_usize(&acc, n);
        }
        Ok(Self {
            dom: self.dom.clone(),
            coeffs: h,
        })
    }
}

/// `g = exp(f − f₀)·g₀` from `n g_n = Σ k f_k g_{n−k}`.
pub(crate) fn exp_recurrence<D: Domain>(dom: &D, f: &[D::Elem], g0: D::Elem) -> TruncatedSeries<D> {
    let order = f.len() - 1;
    let kf: Vec<D::Elem> = f
        .iter()
        .enumerate()
        .map(|(k, c)| dom.mul_usize(c, k))
        .collect();
    let mut g = Vec::with_capacity(order + 1);
    g.push(g0);
    for n in 1..=order {
        let mut acc = dom.zero();
        for k in 1..=n {
            dom.mul_add_assign(&mut acc, &kf[k], &g[n - k]);
        }
        g.push(dom.div_usize(&acc, n));
    }
    TruncatedSeries {
        dom: dom.clone(),
        coeffs: g,
    }
}
