//! Linear constant-coefficient PDEs `u_t = 𝒜u + ε𝓑u`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::opseries::{derivative_to_series, OperatorSeries, SeriesKind};
use crate::rational::{format_rational, is_negative, parse_rational, Rational};
use crate::xipoly::XiOperator;

use super::field::SubgridField;

/// A linear operator acting on subgrid fields, split by the power of ε it carries.
pub trait LinearPde {
    /// Applies the part of the right-hand side multiplied by `ε^eps_power`.
    fn apply(&self, eps_power: u32, field: &SubgridField) -> SubgridField;

    /// Highest power of ε carried by any term.
    fn max_eps_power(&self) -> u32;
}

/// `coeff · ε^eps_power · ∂ⁿu/∂xⁿ` with `n = order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeTerm {
    pub order: u32,
    pub coeff: Rational,
    pub eps_power: u32,
}

/// Sum of derivative terms. Terms with `eps_power = 0` form 𝒜, those with
/// `eps_power = 1` form 𝓑.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PdeSpec {
    terms: Vec<PdeTerm>,
}

impl PdeSpec {
    /// Builds the spec, summing duplicate (order, ε-power) pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = PdeTerm>) -> Result<Self> {
        let mut out = PdeSpec::default();
        for t in terms {
            if t.eps_power > 1 {
                return Err(Error::MalformedPde(format!(
                    "terms may carry at most one factor of eps, got eps^{}",
                    t.eps_power
                )));
            }
            out.push(t);
        }
        Ok(out)
    }

    fn push(&mut self, t: PdeTerm) {
        match self
            .terms
            .iter_mut()
            .find(|s| s.order == t.order && s.eps_power == t.eps_power)
        {
            Some(s) => s.coeff += t.coeff,
            None => self.terms.push(t),
        }
        self.terms.retain(|s| !s.coeff.is_zero());
        self.terms.sort_by_key(|s| (s.eps_power, s.order));
    }

    /// `u_t = −ε u_x + u_xx`
    pub fn advection_diffusion() -> Self {
        PdeSpec::from_terms([
            PdeTerm {
                order: 1,
                coeff: -Rational::one(),
                eps_power: 1,
            },
            PdeTerm {
                order: 2,
                coeff: Rational::one(),
                eps_power: 0,
            },
        ])
        .expect("valid spec")
    }

    /// `u_t = u_xx`
    pub fn diffusion() -> Self {
        PdeSpec::from_terms([PdeTerm {
            order: 2,
            coeff: Rational::one(),
            eps_power: 0,
        }])
        .expect("valid spec")
    }

    pub fn terms(&self) -> &[PdeTerm] {
        &self.terms
    }

    /// Coefficient of `ε^e ∂ⁿ`.
    pub fn coeff(&self, order: u32, eps_power: u32) -> Rational {
        self.terms
            .iter()
            .find(|t| t.order == order && t.eps_power == eps_power)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The constant term a₀ of 𝒜.
    pub fn a0(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// The diffusion coefficient a₁ of 𝒜.
    pub fn a1(&self) -> Rational {
        self.coeff(2, 0)
    }

    /// Checks the class handled by the iterative constructor: 𝒜 even with
    /// nonzero diffusion.
    pub fn check_supported(&self) -> Result<()> {
        if let Some(t) = self
            .terms
            .iter()
            .find(|t| t.eps_power == 0 && t.order % 2 == 1)
        {
            return Err(Error::UnsupportedPde(format!(
                "odd derivative of order {} outside the eps slot",
                t.order
            )));
        }
        if self.a1().is_zero() {
            return Err(Error::UnsupportedPde(
                "leading operator needs a nonzero u_xx term".into(),
            ));
        }
        Ok(())
    }

    fn series_of(&self, eps_power: u32, kind: SeriesKind, len: usize) -> OperatorSeries {
        let mut acc = vec![HPoly::zero(); len];
        for t in self.terms.iter().filter(|t| t.eps_power == eps_power) {
            let parity = if t.order % 2 == 0 {
                SeriesKind::Even
            } else {
                SeriesKind::Odd
            };
            if parity != kind {
                continue;
            }
            if t.order == 0 {
                if len > 0 {
                    acc[0] = acc[0].clone() + HPoly::constant(t.coeff.clone());
                }
                continue;
            }
            let s = derivative_to_series(t.order, len).expect("positive order");
            for (i, slot) in acc.iter_mut().enumerate() {
                let m = match kind {
                    SeriesKind::Even => i,
                    SeriesKind::Odd => i + 1,
                };
                *slot = std::mem::take(slot) + s.coeff(m).scale(&t.coeff);
            }
        }
        OperatorSeries::new(kind, acc)
    }

    /// `a_m` of 𝒜 = Σ a_m δ^{2m}, first `len` coefficients from m = 0.
    pub fn even_part(&self, len: usize) -> OperatorSeries {
        self.series_of(0, SeriesKind::Even, len)
    }

    /// `b_m` of 𝓑 = Σ b_m μδ^{2m−1}, first `len` coefficients from m = 1.
    pub fn odd_part(&self, len: usize) -> OperatorSeries {
        self.series_of(1, SeriesKind::Odd, len)
    }
}

impl LinearPde for PdeSpec {
    fn apply(&self, eps_power: u32, field: &SubgridField) -> SubgridField {
        self.terms
            .iter()
            .filter(|t| t.eps_power == eps_power)
            .fold(SubgridField::zero(), |acc, t| {
                acc + field.derivative_x(t.order).scale(&t.coeff)
            })
    }

    fn max_eps_power(&self) -> u32 {
        self.terms.iter().map(|t| t.eps_power).max().unwrap_or(0)
    }
}

impl FromStr for PdeSpec {
    type Err = Error;

    /// Parses e.g. `"ut = -eps*ux + uxx"` or `"ut = 1/2*u + eps*uxxx"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::MalformedPde(msg);
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| bad(format!("expected `ut = ...`, got {s:?}")))?;
        if lhs.trim() != "ut" {
            return Err(bad(format!("left side must be `ut`, got {:?}", lhs.trim())));
        }
        let rhs = rhs.trim();
        if rhs.is_empty() {
            return Err(bad("empty right side".into()));
        }
        // split into signed terms
        let mut chunks = Vec::new();
        let mut current = String::new();
        let mut prev_significant: Option<char> = None;
        for c in rhs.chars() {
            let binary =
                matches!(c, '+' | '-') && prev_significant.is_some_and(|p| p != '*' && p != '/');
            if binary {
                chunks.push(std::mem::take(&mut current));
            }
            current.push(c);
            if !c.is_whitespace() {
                prev_significant = Some(c);
            }
        }
        chunks.push(current);

        let mut terms = Vec::new();
        for chunk in chunks {
            let text: String = chunk.chars().filter(|c| !c.is_whitespace()).collect();
            if text.is_empty() {
                return Err(bad(format!("empty term in {rhs:?}")));
            }
            let (negate, body) = match text.as_bytes()[0] {
                b'-' => (true, &text[1..]),
                b'+' => (false, &text[1..]),
                _ => (false, text.as_str()),
            };
            let mut coeff = Rational::one();
            let mut eps_power = 0;
            let mut order = None;
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad(format!("empty factor in term {text:?}")));
                }
                if factor == "eps" {
                    eps_power += 1;
                } else if let Some(xs) = factor.strip_prefix('u') {
                    if order.is_some() {
                        return Err(bad(format!("term {text:?} has two u factors")));
                    }
                    if !xs.chars().all(|c| c == 'x') {
                        return Err(bad(format!("unknown derivative {factor:?}")));
                    }
                    order = Some(xs.len() as u32);
                } else {
                    let c = parse_rational(factor)
                        .map_err(|_| bad(format!("unknown factor {factor:?} in term {text:?}")))?;
                    coeff *= c;
                }
            }
            let order = order.ok_or_else(|| bad(format!("term {text:?} has no u factor")))?;
            if negate {
                coeff = -coeff;
            }
            terms.push(PdeTerm {
                order,
                coeff,
                eps_power,
            });
        }
        PdeSpec::from_terms(terms)
    }
}

impl fmt::Display for PdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ut =")?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if is_negative(&t.coeff) {
                "-"
            } else if i == 0 {
                ""
            } else {
                "+"
            };
            let mag = t.coeff.abs();
            let mut factors = Vec::new();
            if !mag.is_one() {
                factors.push(format_rational(&mag));
            }
            if t.eps_power == 1 {
                factors.push("eps".into());
            }
            factors.push(format!("u{}", "x".repeat(t.order as usize)));
            if sign.is_empty() {
                write!(f, " {}", factors.join("*"))?;
            } else {
                write!(f, " {sign} {}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A PDE given directly by difference-operator series:
/// `𝒜 = Σ a_m δ_x^{2m}` and `𝓑 = Σ b_m μ_xδ_x^{2m−1}` acting on subgrid fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPde {
    even: OperatorSeries,
    odd: Option<OperatorSeries>,
}

impl SeriesPde {
    pub fn new(even: OperatorSeries, odd: Option<OperatorSeries>) -> Result<Self> {
        if even.kind() != SeriesKind::Even {
            return Err(Error::InvalidOperator(
                "even part must be an even series".into(),
            ));
        }
        if odd.as_ref().is_some_and(|b| b.kind() != SeriesKind::Odd) {
            return Err(Error::InvalidOperator(
                "odd part must be an odd series".into(),
            ));
        }
        Ok(SeriesPde { even, odd })
    }

    pub fn even(&self) -> &OperatorSeries {
        &self.even
    }

    pub fn odd(&self) -> Option<&OperatorSeries> {
        self.odd.as_ref()
    }
}

/// Applies Σ c_i · (μδ)^{odd} δ^{2i} to a field; `first` is the field
/// already hit by the leading basis operator.
fn apply_series(coeffs: &[HPoly], first: SubgridField) -> SubgridField {
    let mut acc = SubgridField::zero();
    let mut power = first;
    for c in coeffs {
        if power.is_zero() {
            break;
        }
        if !c.is_zero() {
            acc = acc + power.scale_h(c);
        }
        power = power.apply_xi(XiOperator::SecondDifference);
    }
    acc
}

impl LinearPde for SeriesPde {
    fn apply(&self, eps_power: u32, field: &SubgridField) -> SubgridField {
        match eps_power {
            0 => apply_series(self.even.coeffs(), field.clone()),
            1 => match &self.odd {
                Some(b) => apply_series(b.coeffs(), field.apply_xi(XiOperator::MeanDifference)),
                None => SubgridField::zero(),
            },
            _ => SubgridField::zero(),
        }
    }

    fn max_eps_power(&self) -> u32 {
        u32::from(self.odd.is_some())
    }
}
