//! Truncated power series over exact rationals or MPFR reals, and the
//! generating functions behind the moments of `invol` under `ESF(θ)`.
//!
//! Every quantity here is a coefficient extraction: `E_n invol` and
//! `E_n invol²` are `n!/θ⁽ⁿ⁾` times `[zⁿ]F` and `[zⁿ]G`, conditional means
//! come from the bivariate `F(u, z)`, and membership probabilities of `P_ξ`
//! from an exponential-formula product. Products are schoolbook, `O(N²)`.

mod bivariate;
mod domain;
mod gf;
mod truncated;

use std::io::Write;

pub use bivariate::{
    build_f_bivariate, conditional_mean_given_cycles, conditional_mean_real, vertical_closed_form,
    BivariateTruncated,
};
pub use domain::{Domain, Exact, Real, DEFAULT_PREC, MIN_PREC};
pub use gf::{
    build_f, build_f_explog, build_g, build_g_explog, esf_normalizers, mean_invol_all,
    mean_invol_exact, mean_invol_real, membership_probabilities, membership_series,
    second_moment_all, second_moment_exact, second_moment_real, stirling1, stirling1_row,
};
pub use truncated::TruncatedSeries;

use crate::error::Result;

/// Writes `index, <domain columns>` rows for each coefficient.
pub fn write_coeffs_csv<D: Domain, W: Write>(dom: &D, coeffs: &[D::Elem], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["index"];
    header.extend_from_slice(dom.csv_header());
    w.write_record(&header)?;
    for (i, c) in coeffs.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(dom.csv_fields(c));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use rug::Rational;

    use super::*;

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        let coeffs = [Rational::from(1), Rational::from((3, 4))];
        write_coeffs_csv(&Exact, &coeffs, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "index,numerator,denominator\n0,1,1\n1,3,4\n"
        );
    }
}
