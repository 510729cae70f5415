//! Grid difference operators.
//!
//! A [`Stencil`] is a finite tap table `r ↦ c_r` meaning
//! `(S u)_j = h^hpower Σ_r c_r u_{j+r}`. Model terms routinely mix powers
//! of `h` (for instance `δ²/h² + ε²δ²/12`), so [`StencilSum`] keeps a
//! Laurent polynomial in `h` per tap.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::rational::{format_rational, int, parse_rational, rat, to_f64, Rational};

pub type Taps = BTreeMap<i64, Rational>;

/// Homogeneous stencil: every tap carries the same factor `h^hpower`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stencil {
    hpower: i32,
    taps: Taps,
}

/// Named generators accepted by [`grid_operator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridOpName {
    /// Central difference δ (even powers only).
    Delta,
    /// μδ^p for odd p.
    MuDelta,
    /// Backward difference ∇ = 1 − E⁻¹.
    Nabla,
    Identity,
}

impl FromStr for GridOpName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(GridOpName::Delta),
            "mu_delta" => Ok(GridOpName::MuDelta),
            "nabla" => Ok(GridOpName::Nabla),
            "identity" => Ok(GridOpName::Identity),
            other => Err(Error::InvalidOperator(format!(
                "unknown grid operator {other:?}"
            ))),
        }
    }
}

impl Stencil {
    pub fn new(hpower: i32, taps: Taps) -> Self {
        let taps = taps.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Stencil { hpower, taps }
    }

    pub fn from_pairs(hpower: i32, pairs: &[(i64, Rational)]) -> Self {
        let mut taps = Taps::new();
        for (r, c) in pairs {
            *taps.entry(*r).or_insert_with(Rational::zero) += c;
        }
        Self::new(hpower, taps)
    }

    pub fn identity() -> Self {
        Self::from_pairs(0, &[(0, Rational::one())])
    }

    pub fn zero() -> Self {
        Stencil {
            hpower: 0,
            taps: Taps::new(),
        }
    }

    /// The shift E^r.
    pub fn shift(r: i64) -> Self {
        Self::from_pairs(0, &[(r, Rational::one())])
    }

    pub fn hpower(&self) -> i32 {
        self.hpower
    }

    pub fn taps(&self) -> &Taps {
        &self.taps
    }

    pub fn tap(&self, r: i64) -> Rational {
        self.taps.get(&r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.taps.is_empty()
    }

    /// Offsets spanned, `(min, max)`; `None` when empty.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.taps.keys().next()?, *self.taps.keys().next_back()?))
    }

    pub fn width(&self) -> i64 {
        self.support().map_or(0, |(lo, hi)| hi - lo)
    }

    pub fn tap_sum(&self) -> Rational {
        self.taps.values().fold(Rational::zero(), |a, c| a + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            self.hpower,
            self.taps.iter().map(|(&r, a)| (r, a * c)).collect(),
        )
    }

    pub fn with_hpower(&self, hpower: i32) -> Self {
        Stencil {
            hpower,
            taps: self.taps.clone(),
        }
    }

    /// Sum of two stencils; both must carry the same power of `h`.
    pub fn add(&self, other: &Stencil) -> Result<Stencil> {
        if !self.is_zero() && !other.is_zero() && self.hpower != other.hpower {
            return Err(Error::InvalidOperator(format!(
                "cannot add stencils with h^{} and h^{}",
                self.hpower, other.hpower
            )));
        }
        let hpower = if self.is_zero() {
            other.hpower
        } else {
            self.hpower
        };
        let mut taps = self.taps.clone();
        for (r, c) in &other.taps {
            *taps.entry(*r).or_insert_with(Rational::zero) += c;
        }
        Ok(Stencil::new(hpower, taps))
    }

    /// Convolution of tap tables; powers of `h` add.
    pub fn compose(&self, other: &Stencil) -> Stencil {
        let mut taps = Taps::new();
        for (r, a) in &self.taps {
            for (s, b) in &other.taps {
                *taps.entry(r + s).or_insert_with(Rational::zero) += a * b;
            }
        }
        Stencil::new(self.hpower + other.hpower, taps)
    }

    pub fn pow(&self, n: u32) -> Stencil {
        (0..n).fold(Stencil::identity(), |acc, _| acc.compose(self))
    }

    /// Growth rate of the grid mode `u_j = e^{ijθ}`: `h^hpower Σ_r c_r e^{irθ}`.
    pub fn symbol(&self, theta: f64, h: f64) -> Complex64 {
        let sum: Complex64 = self
            .taps
            .iter()
            .map(|(&r, c)| Complex64::from_polar(to_f64(c), r as f64 * theta))
            .sum();
        sum * h.powi(self.hpower)
    }

    /// Splits the taps into the canonical central basis
    /// `Σ_m e_m δ^{2m} + Σ_m o_m μδ^{2m−1}`.
    pub fn canonical(&self) -> CanonicalForm {
        canonical_form(&self.taps)
    }
}

/// Exact tap table of a named operator raised to `power`.
pub fn grid_operator(name: GridOpName, power: u32) -> Result<Stencil> {
    let second = Stencil::from_pairs(0, &[(-1, int(1)), (0, int(-2)), (1, int(1))]);
    let mean_diff = Stencil::from_pairs(0, &[(-1, rat(-1, 2)), (1, rat(1, 2))]);
    match name {
        GridOpName::Identity => Ok(Stencil::identity()),
        GridOpName::Delta => {
            if power % 2 == 1 {
                return Err(Error::InvalidOperator(format!(
                    "δ^{power}: odd powers of δ map integer grid points to half-integer ones; use mu_delta"
                )));
            }
            Ok(second.pow(power / 2))
        }
        GridOpName::MuDelta => {
            if power % 2 == 0 {
                return Err(Error::InvalidOperator(format!(
                    "μδ^{power}: only odd exponents are canonical; even ones reduce via μ² = 1 + δ²/4"
                )));
            }
            Ok(mean_diff.compose(&second.pow((power - 1) / 2)))
        }
        GridOpName::Nabla => Ok(Stencil::from_pairs(0, &[(-1, int(-1)), (0, int(1))]).pow(power)),
    }
}

pub fn compose(a: &Stencil, b: &Stencil) -> Stencil {
    a.compose(b)
}

pub fn symbol(s: &Stencil, theta: f64, h: f64) -> Complex64 {
    s.symbol(theta, h)
}

/// δ^{2m}
pub fn even_power(m: u32) -> Stencil {
    grid_operator(GridOpName::Delta, 2 * m).expect("even power")
}

/// μδ^{2m−1}, m ≥ 1
pub fn odd_power(m: u32) -> Stencil {
    grid_operator(GridOpName::MuDelta, 2 * m - 1).expect("odd power")
}

/// Coefficients on `δ^{2m}` (`even[m]`) and `μδ^{2m−1}` (`odd[m−1]`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CanonicalForm {
    pub even: Vec<Rational>,
    pub odd: Vec<Rational>,
}

impl CanonicalForm {
    pub fn even_coeff(&self, m: usize) -> Rational {
        self.even.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of μδ^{2m−1}.
    pub fn odd_coeff(&self, m: usize) -> Rational {
        m.checked_sub(1)
            .and_then(|i| self.odd.get(i).cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// Non-zero entries as (operator label, coefficient).
    pub fn entries(&self) -> Vec<(String, Rational)> {
        let mut out = Vec::new();
        for (m, c) in self.even.iter().enumerate() {
            if !c.is_zero() {
                out.push((even_label(m as u32), c.clone()));
            }
        }
        for (i, c) in self.odd.iter().enumerate() {
            if !c.is_zero() {
                out.push((odd_label(i as u32 + 1), c.clone()));
            }
        }
        out
    }
}

pub(crate) fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub fn even_label(m: u32) -> String {
    match m {
        0 => "1".to_string(),
        1 => "δ²".to_string(),
        _ => format!("δ{}", superscript(2 * m)),
    }
}

pub fn odd_label(m: u32) -> String {
    match m {
        1 => "μδ".to_string(),
        _ => format!("μδ{}", superscript(2 * m - 1)),
    }
}

fn canonical_form(taps: &Taps) -> CanonicalForm {
    let reach = taps.keys().map(|r| r.unsigned_abs()).max().unwrap_or(0) as u32;
    let half = rat(1, 2);
    let get = |t: &Taps, r: i64| t.get(&r).cloned().unwrap_or_else(Rational::zero);
    let mut sym = Taps::new();
    let mut anti = Taps::new();
    for r in -(reach as i64)..=reach as i64 {
        let a = get(taps, r);
        let b = get(taps, -r);
        sym.insert(r, (&a + &b) * &half);
        anti.insert(r, (&a - &b) * &half);
    }
    let mut even = vec![Rational::zero(); reach as usize + 1];
    for m in (0..=reach).rev() {
        // δ^{2m} has unit outer taps at ±m
        let c = get(&sym, m as i64);
        if c.is_zero() {
            continue;
        }
        for (r, b) in even_power(m).taps() {
            *sym.entry(*r).or_insert_with(Rational::zero) -= &c * b;
        }
        even[m as usize] = c;
    }
    let mut odd = vec![Rational::zero(); reach as usize];
    for m in (1..=reach).rev() {
        // μδ^{2m−1} has outer taps ±1/2 at ±m
        let c = get(&anti, m as i64) * int(2);
        if c.is_zero() {
            continue;
        }
        for (r, b) in odd_power(m).taps() {
            *anti.entry(*r).or_insert_with(Rational::zero) -= &c * b;
        }
        odd[m as usize - 1] = c;
    }
    while even.last().is_some_and(Zero::is_zero) {
        even.pop();
    }
    while odd.last().is_some_and(Zero::is_zero) {
        odd.pop();
    }
    CanonicalForm { even, odd }
}

impl Serialize for Stencil {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct TapMap<'a>(&'a Taps);
        impl Serialize for TapMap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (r, c) in self.0 {
                    map.serialize_entry(&r.to_string(), &format_rational(c))?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("hpower", &self.hpower)?;
        map.serialize_entry("taps", &TapMap(&self.taps))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Stencil {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            hpower: i32,
            taps: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut taps = Taps::new();
        for (k, v) in raw.taps {
            let r: i64 = k
                .parse()
                .map_err(|_| de::Error::custom(format!("bad offset {k:?}")))?;
            let c = parse_rational(&v).map_err(de::Error::custom)?;
            taps.insert(r, c);
        }
        Ok(Stencil::new(raw.hpower, taps))
    }
}

impl fmt::Display for Stencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let taps: Vec<String> = self.taps.iter().map(|(r, c)| format!("{r}:{c}")).collect();
        write!(f, "h^{}·{{{}}}", self.hpower, taps.join(", "))
    }
}

/// A grid operator whose taps are Laurent polynomials in `h`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct StencilSum {
    taps: BTreeMap<i64, HPoly>,
}

impl StencilSum {
    pub fn identity() -> Self {
        Self::from(&Stencil::identity())
    }

    /// c(h)·S
    pub fn weighted(weight: &HPoly, s: &Stencil) -> Self {
        let mut out = StencilSum::zero();
        for (r, c) in s.taps() {
            out.add_tap(*r, &weight.scale(c).shift(s.hpower()));
        }
        out
    }

    pub fn add_tap(&mut self, r: i64, c: &HPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.taps.entry(r).or_default();
        *entry = std::mem::take(entry) + c.clone();
        if entry.is_zero() {
            self.taps.remove(&r);
        }
    }

    pub fn taps(&self) -> &BTreeMap<i64, HPoly> {
        &self.taps
    }

    pub fn tap(&self, r: i64) -> HPoly {
        self.taps.get(&r).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = StencilSum::zero();
        for (r, p) in &self.taps {
            out.add_tap(*r, &p.scale(c));
        }
        out
    }

    /// Multiplies every tap by h^p.
    pub fn shift_h(&self, p: i32) -> Self {
        StencilSum {
            taps: self.taps.iter().map(|(&r, c)| (r, c.shift(p))).collect(),
        }
    }

    pub fn compose(&self, other: &StencilSum) -> StencilSum {
        let mut out = StencilSum::zero();
        for (r, a) in &self.taps {
            for (s, b) in &other.taps {
                out.add_tap(r + s, &(a * b));
            }
        }
        out
    }

    /// Homogeneous pieces, one per power of `h`, in increasing power.
    pub fn components(&self) -> Vec<Stencil> {
        let mut by_power: BTreeMap<i32, Taps> = BTreeMap::new();
        for (&r, poly) in &self.taps {
            for (p, c) in poly.iter() {
                by_power.entry(p).or_default().insert(r, c.clone());
            }
        }
        by_power
            .into_iter()
            .map(|(p, taps)| Stencil::new(p, taps))
            .collect()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.taps.keys().next()?, *self.taps.keys().next_back()?))
    }

    /// Numeric taps at a concrete grid spacing.
    pub fn eval(&self, h: f64) -> Vec<(i64, f64)> {
        self.taps.iter().map(|(&r, c)| (r, c.eval(h))).collect()
    }

    /// Sum of taps as a polynomial in `h`; zero means constants are annihilated.
    pub fn tap_sum(&self) -> HPoly {
        self.taps
            .values()
            .cloned()
            .fold(HPoly::zero(), |a, b| a + b)
    }
}

impl From<&Stencil> for StencilSum {
    fn from(s: &Stencil) -> Self {
        StencilSum::weighted(&HPoly::constant(Rational::one()), s)
    }
}

impl Zero for StencilSum {
    fn zero() -> Self {
        StencilSum::default()
    }

    fn is_zero(&self) -> bool {
        self.taps.is_empty()
    }
}

impl std::ops::Add for StencilSum {
    type Output = StencilSum;

    fn add(mut self, rhs: StencilSum) -> StencilSum {
        for (r, c) in &rhs.taps {
            self.add_tap(*r, c);
        }
        self
    }
}

impl std::ops::Sub for StencilSum {
    type Output = StencilSum;

    fn sub(self, rhs: StencilSum) -> StencilSum {
        self + (-rhs)
    }
}

impl std::ops::Neg for StencilSum {
    type Output = StencilSum;

    fn neg(self) -> StencilSum {
        StencilSum {
            taps: self.taps.into_iter().map(|(r, c)| (r, -c)).collect(),
        }
    }
}
