//! The semi-discrete model `u̇_j = g(u)` as a series in γ and ε.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_negative, Rational};
use crate::series::BiSeries;
use crate::stencil::{superscript, Stencil, StencilSum};

/// `u̇_j = Σ γ^k ε^e (G_{k,e} u)_j + O(γ^ℓ, ε^E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSeries {
    series: BiSeries<StencilSum>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    gamma_order: u32,
    eps_order: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    g: u32,
    e: u32,
    stencil: Stencil,
}

impl ModelSeries {
    pub fn new(gamma_order: u32, eps_order: u32) -> Self {
        ModelSeries {
            series: BiSeries::new(gamma_order, eps_order),
        }
    }

    pub fn from_series(series: BiSeries<StencilSum>) -> Self {
        ModelSeries { series }
    }

    pub fn series(&self) -> &BiSeries<StencilSum> {
        &self.series
    }

    pub fn gamma_order(&self) -> u32 {
        self.series.gamma_order()
    }

    pub fn eps_order(&self) -> u32 {
        self.series.eps_order()
    }

    pub fn term(&self, k: u32, e: u32) -> StencilSum {
        self.series.get(k, e)
    }

    pub fn set_term(&mut self, k: u32, e: u32, stencil: StencilSum) {
        self.series.set(k, e, stencil);
    }

    pub fn add_term(&mut self, k: u32, e: u32, stencil: StencilSum) {
        self.series.add_at(k, e, stencil);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &StencilSum)> {
        self.series.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Sum with another model (or increment), to the smaller truncation.
    pub fn plus(&self, other: &ModelSeries) -> ModelSeries {
        ModelSeries {
            series: self.series.plus(&other.series),
        }
    }

    /// Re-declares the truncation orders, dropping terms beyond them.
    pub fn truncate(&self, gamma_order: u32, eps_order: u32) -> ModelSeries {
        ModelSeries {
            series: self.series.truncate(gamma_order, eps_order),
        }
    }

    /// Sets γ = 1: all γ-powers collapse onto the γ⁰ slot.
    pub fn at_gamma_one(&self) -> ModelSeries {
        let mut out = ModelSeries::new(1, self.eps_order());
        for (_, e, s) in self.iter() {
            out.add_term(0, e, s.clone());
        }
        out
    }

    /// The ε^e coefficient after setting γ = 1.
    pub fn eps_coefficient(&self, e: u32) -> StencilSum {
        self.iter()
            .filter(|&(_, ee, _)| ee == e)
            .fold(StencilSum::zero(), |acc, (_, _, s)| acc + s.clone())
    }

    /// Numeric taps of the combined stencil at concrete γ, ε, h.
    pub fn numeric_taps(&self, gamma: f64, eps: f64, h: f64) -> Vec<(i64, f64)> {
        let mut acc = std::collections::BTreeMap::<i64, f64>::new();
        for (k, e, s) in self.iter() {
            let w = gamma.powi(k as i32) * eps.powi(e as i32);
            for (r, c) in s.eval(h) {
                *acc.entry(r).or_default() += w * c;
            }
        }
        acc.into_iter().collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut terms = Vec::new();
        for (k, e, s) in self.iter() {
            for stencil in s.components() {
                terms.push(TermJson { g: k, e, stencil });
            }
        }
        let doc = ModelJson {
            gamma_order: self.gamma_order(),
            eps_order: self.eps_order(),
            terms,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<ModelSeries> {
        let doc: ModelJson = serde_json::from_str(text)?;
        let mut model = ModelSeries::new(doc.gamma_order, doc.eps_order);
        for t in doc.terms {
            if !model.series.in_range(t.g, t.e) {
                return Err(Error::Truncation(format!(
                    "term γ^{} ε^{} lies beyond the declared orders",
                    t.g, t.e
                )));
            }
            model.add_term(t.g, t.e, StencilSum::from(&t.stencil));
        }
        Ok(model)
    }

    /// Human-readable listing, one canonical operator per line, e.g.
    /// `+ γ²ε·(1/6)h⁻¹·μδ³`.
    pub fn report(&self) -> String {
        let mut lines = Vec::new();
        for (k, e, s) in self.iter() {
            for comp in s.components() {
                for (label, c) in comp.canonical().entries() {
                    lines.push(format_term(k, e, &c, comp.hpower(), &label));
                }
            }
        }
        let mut out = String::from("u̇_j = ");
        if lines.is_empty() {
            out.push('0');
        } else {
            for (i, line) in lines.iter().enumerate() {
                if i == 0 {
                    out.push_str(line.strip_prefix("+ ").unwrap_or(line));
                } else {
                    out.push_str("\n      ");
                    out.push_str(line);
                }
            }
        }
        let gamma = match self.gamma_order() {
            1 => "γ".to_string(),
            n => format!("γ{}", superscript(n)),
        };
        let _ = match self.eps_order() {
            1 => write!(out, " + O({gamma})"),
            n => write!(out, " + O({gamma}, ε{})", superscript(n)),
        };
        out.push('\n');
        out
    }
}

fn format_term(k: u32, e: u32, c: &Rational, hpower: i32, label: &str) -> String {
    let sign = if is_negative(c) { "−" } else { "+" };
    let mag = format_rational(&c.abs());
    let mut vars = String::new();
    if k > 0 {
        vars.push('γ');
        if k > 1 {
            vars.push_str(&superscript(k));
        }
    }
    if e > 0 {
        vars.push('ε');
        if e > 1 {
            vars.push_str(&superscript(e));
        }
    }
    let h = match hpower {
        0 => String::new(),
        1 => "h".to_string(),
        p if p < 0 => format!("h⁻{}", superscript(p.unsigned_abs())),
        p => format!("h{}", superscript(p as u32)),
    };
    let mut out = format!("{sign} ");
    if !vars.is_empty() {
        out.push_str(&vars);
        out.push('·');
    }
    out.push_str(&format!("({mag})"));
    out.push_str(&h);
    if label != "1" {
        out.push('·');
        out.push_str(label);
    }
    out
}
