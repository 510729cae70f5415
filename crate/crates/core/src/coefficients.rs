//! Coefficient functions of advection-diffusion models.
//!
//! At γ = 1 a derived advection-diffusion model takes the form
//!
//! ```text
//! u̇_j = −(ε/h)(μδ − κ₂ μδ³)u_j + (1/h²)(ν₁ δ² − ν₂ δ⁴)u_j
//! ```
//!
//! with ν₁, ν₂, κ₂ even power series in `z = εh`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::construct::ModelSeries;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffName {
    Nu1,
    Nu2,
    Kappa2,
}

impl CoeffName {
    pub fn as_str(self) -> &'static str {
        match self {
            CoeffName::Nu1 => "nu1",
            CoeffName::Nu2 => "nu2",
            CoeffName::Kappa2 => "kappa2",
        }
    }

    /// Conjectured large-z behaviour.
    pub fn asymptote(self, z: f64) -> f64 {
        match self {
            CoeffName::Nu1 => z / 2.0,
            CoeffName::Nu2 => z / 4.0 - 0.5,
            CoeffName::Kappa2 => 0.5 - 1.0 / z,
        }
    }
}

impl fmt::Display for CoeffName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoeffName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu1" => Ok(CoeffName::Nu1),
            "nu2" => Ok(CoeffName::Nu2),
            "kappa2" => Ok(CoeffName::Kappa2),
            _ => Err(Error::InvalidArgument(format!(
                "unknown coefficient {s:?}; expected nu1, nu2 or kappa2"
            ))),
        }
    }
}

/// `Σ_i c_i z^{2i}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSeries {
    pub name: CoeffName,
    /// `coeffs[i]` multiplies `z^{2i}`.
    pub coeffs: Vec<Rational>,
}

impl CoeffSeries {
    /// Coefficient of `z^n`; zero for odd `n`.
    pub fn coeff(&self, n: usize) -> Rational {
        if n % 2 == 1 {
            return Rational::zero();
        }
        self.coeffs
            .get(n / 2)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Partial sums `S_0, S_1, …` with `S_i = Σ_{m≤i} c_m z^{2m}`.
    pub fn partial_sums(&self, z: f64) -> Vec<f64> {
        let z2 = z * z;
        let mut acc = 0.0;
        let mut zp = 1.0;
        self.coeffs
            .iter()
            .map(|c| {
                acc += to_f64(c) * zp;
                zp *= z2;
                acc
            })
            .collect()
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.partial_sums(z).last().copied().unwrap_or(0.0)
    }
}

fn series_len(eps_order: u32) -> usize {
    eps_order.div_ceil(2) as usize
}

/// Reads ν₁ (ℓ = 2) or ν₂ and κ₂ (ℓ = 3) off a derived model.
///
/// Every `εᵉ` term must carry exactly `h^{e−2}` and only the operators of
/// the canonical form; anything else is reported as non-canonical.
pub fn extract_coefficients(model: &ModelSeries) -> Result<Vec<CoeffSeries>> {
    let ell = model.gamma_order();
    if ell != 2 && ell != 3 {
        return Err(Error::InvalidArgument(format!(
            "coefficient extraction needs a model with gamma order 2 or 3, got {ell}"
        )));
    }
    let len = series_len(model.eps_order());
    let mut nu1 = vec![Rational::zero(); len];
    let mut nu2 = vec![Rational::zero(); len];
    let mut kappa2 = vec![Rational::zero(); len];
    let mut residue = Vec::new();

    for e in 0..model.eps_order() {
        let stencil = model.eps_coefficient(e);
        for comp in stencil.components() {
            let hp = comp.hpower();
            let form = comp.canonical();
            for (label, c) in form.entries() {
                let expected_h = e as i32 - 2;
                let mut accepted = false;
                if hp == expected_h {
                    accepted = match (label.as_str(), e % 2) {
                        ("δ²", 0) if ell == 2 => {
                            nu1[e as usize / 2] = c.clone();
                            true
                        }
                        ("δ²", 0) => e == 0 && c.is_one(),
                        ("δ⁴", 0) if ell == 3 => {
                            nu2[e as usize / 2] = -c.clone();
                            true
                        }
                        ("μδ", 1) => e == 1 && c == -Rational::one(),
                        ("μδ³", 1) if ell == 3 => {
                            kappa2[e as usize / 2] = c.clone();
                            true
                        }
                        _ => false,
                    };
                }
                if !accepted {
                    residue.push(format!("ε^{e}·({c})h^{hp}·{label}"));
                }
            }
        }
    }
    if !residue.is_empty() {
        return Err(Error::NonCanonical(residue.join(", ")));
    }
    Ok(if ell == 2 {
        vec![CoeffSeries {
            name: CoeffName::Nu1,
            coeffs: nu1,
        }]
    } else {
        vec![
            CoeffSeries {
                name: CoeffName::Nu2,
                coeffs: nu2,
            },
            CoeffSeries {
                name: CoeffName::Kappa2,
                coeffs: kappa2,
            },
        ]
    })
}

/// Result of [`shanks`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShanksResult {
    pub value: f64,
    /// Some cell hit a zero denominator and copied its centre input.
    pub degenerate: bool,
}

/// Iterated Shanks transform
/// `S(A_n) = (A_{n+1}A_{n−1} − A_n²) / (A_{n+1} + A_{n−1} − 2A_n)`.
///
/// Returns the last entry of the final table, the estimate using the
/// longest stretch of the sequence. A cell with zero denominator copies
/// its centre input and sets `degenerate`.
pub fn shanks(sequence: &[f64], iterations: usize) -> Result<ShanksResult> {
    if sequence.len() < 2 * iterations + 1 {
        return Err(Error::InvalidArgument(format!(
            "{iterations} Shanks iterations need at least {} terms, got {}",
            2 * iterations + 1,
            sequence.len()
        )));
    }
    let mut table = sequence.to_vec();
    let mut degenerate = false;
    for _ in 0..iterations {
        table = table
            .windows(3)
            .map(|w| {
                let denom = w[2] + w[0] - 2.0 * w[1];
                if denom == 0.0 || !denom.is_finite() {
                    degenerate = true;
                    w[1]
                } else {
                    (w[2] * w[0] - w[1] * w[1]) / denom
                }
            })
            .collect();
    }
    Ok(ShanksResult {
        value: *table.last().expect("nonempty table"),
        degenerate,
    })
}

/// `(z/2) coth(z/2)`, equal to 1 at `z = 0`.
pub fn nu1_closed_form(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        // 1 + z²/12 to double precision
        return 1.0 + z * z / 12.0;
    }
    let half = z / 2.0;
    half / half.tanh()
}

/// One row of a coefficient sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub z: f64,
    pub series_value: f64,
    pub shanks_value: f64,
    pub degenerate: bool,
    pub closed_form: Option<f64>,
    pub asymptote: f64,
}

/// Evaluates a coefficient series over `zs`, with Shanks acceleration of the
/// partial sums.
pub fn sweep(
    series: &CoeffSeries,
    zs: &[f64],
    iterations: usize,
    threads: usize,
) -> Result<Vec<SweepRow>> {
    if series.coeffs.len() < 2 * iterations + 1 {
        return Err(Error::InvalidArgument(format!(
            "{iterations} Shanks iterations need {} series terms, the series has {}",
            2 * iterations + 1,
            series.coeffs.len()
        )));
    }
    crate::parallel::map_ordered(zs, threads, |&z| {
        let sums = series.partial_sums(z);
        let s = shanks(&sums, iterations)?;
        Ok(SweepRow {
            z,
            series_value: *sums.last().expect("nonempty"),
            shanks_value: s.value,
            degenerate: s.degenerate,
            closed_form: (series.name == CoeffName::Nu1).then(|| nu1_closed_form(z)),
            asymptote: series.name.asymptote(z),
        })
    })
    .into_iter()
    .collect()
}

/// CSV with columns `z,series_value,shanks_value,closed_form,asymptote`.
///
/// The asymptote column holds the conjectured large-z form; `closed_form`
/// is empty except for ν₁.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    use crate::format::sci;
    let mut out = String::from("z,series_value,shanks_value,closed_form,asymptote\n");
    for r in rows {
        let closed = r.closed_form.map(sci).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sci(r.z),
            sci(r.series_value),
            sci(r.shanks_value),
            closed,
            sci(r.asymptote)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shanks_on_geometric_and_constant() {
        let seq: Vec<f64> = (0..7).map(|n| 2.5 + 0.75 * (-0.6f64).powi(n)).collect();
        let r = shanks(&seq, 1).unwrap();
        assert!((r.value - 2.5).abs() < 1e-12);
        let r = shanks(&[4.0; 5], 2).unwrap();
        assert_eq!(r.value, 4.0);
        assert!(r.degenerate);
        assert!(shanks(&[1.0, 2.0], 1).is_err());
    }

    #[test]
    fn shanks_alternating_harmonic() {
        let mut acc = 0.0;
        let sums: Vec<f64> = (1..=8)
            .map(|n| {
                let s = if n % 2 == 1 { 1.0 } else { -1.0 };
                acc += s / n as f64;
                acc
            })
            .collect();
        let r = shanks(&sums, 3).unwrap();
        assert!(
            (r.value - std::f64::consts::LN_2).abs() < 1e-4,
            "{}",
            r.value
        );
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(nu1_closed_form(0.0), 1.0);
        assert!((nu1_closed_form(4.0) - 2.0 / 2f64.tanh()).abs() < 1e-15);
        assert!((nu1_closed_form(4.0) - 2.0746).abs() < 1e-4);
        assert!((nu1_closed_form(1e-9) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn names_parse() {
        for n in [CoeffName::Nu1, CoeffName::Nu2, CoeffName::Kappa2] {
            assert_eq!(n.as_str().parse::<CoeffName>().unwrap(), n);
        }
        assert!("nu3".parse::<CoeffName>().is_err());
    }
}
