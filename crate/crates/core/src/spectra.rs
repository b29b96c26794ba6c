//! Hodge numbers of nearby cycles and irregular Hodge spectra, as finite
//! multisets of exact rationals.
//!
//! A monodromy eigenvalue `exp(-2πi a)` is always stored through its exponent
//! residue `a ∈ [0,1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::params::{BarBeta, ParamSeq};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("length mismatch: {left} exponents against {right} merged parameters")]
    LengthMismatch { left: usize, right: usize },
    #[error("non-resonance violated: a_{index} = {value} also occurs among the merged parameters")]
    Resonant { index: usize, value: Rational },
    #[error("exponent residue 0 (eigenvalue 1) is excluded at infinity")]
    UnitEigenvalue,
    #[error("spectrum is attached to {found}, expected {expected}")]
    WrongPoint { expected: PointLabel, found: PointLabel },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("exponent residue {0} is outside [0,1)")]
    ResidueOutOfRange(Rational),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLabel {
    Zero,
    Infinity,
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointLabel::Zero => "zero",
            PointLabel::Infinity => "infinity",
        })
    }
}

/// Multiplicities `ν^p_a` keyed by exponent residue `a` and Hodge index `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NearbyCycleSpectrum {
    entries: BTreeMap<(Rational, i64), u64>,
    point: PointLabel,
}

impl NearbyCycleSpectrum {
    pub fn new(point: PointLabel) -> Self {
        NearbyCycleSpectrum {
            entries: BTreeMap::new(),
            point,
        }
    }

    pub fn from_entries(
        point: PointLabel,
        entries: impl IntoIterator<Item = ((Rational, i64), u64)>,
    ) -> Result<Self, SpectraError> {
        let mut out = NearbyCycleSpectrum::new(point);
        for ((a, p), m) in entries {
            if !a.in_unit_interval() {
                return Err(SpectraError::ResidueOutOfRange(a));
            }
            if m == 0 {
                return Err(SpectraError::ZeroMultiplicity);
            }
            out.add(a, p, m);
        }
        Ok(out)
    }

    fn add(&mut self, a: Rational, p: i64, mult: u64) {
        debug_assert!(a.in_unit_interval());
        *self.entries.entry((a, p)).or_insert(0) += mult;
    }

    pub fn point(&self) -> PointLabel {
        self.point
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Rational, i64, u64)> {
        self.entries.iter().map(|((a, p), m)| (a, *p, *m))
    }

    pub fn get(&self, a: &Rational, p: i64) -> u64 {
        self.entries.get(&(a.clone(), p)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Jumps of a filtration indexed by rationals, with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HodgeSpectrum {
    entries: BTreeMap<Rational, u64>,
}

impl HodgeSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collects a multiset of jumps.
    pub fn from_jumps(jumps: impl IntoIterator<Item = Rational>) -> Self {
        let mut out = HodgeSpectrum::new();
        for j in jumps {
            out.add(j, 1);
        }
        out
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Rational, u64)>) -> Result<Self, SpectraError> {
        let mut out = HodgeSpectrum::new();
        for (j, m) in entries {
            if m == 0 {
                return Err(SpectraError::ZeroMultiplicity);
            }
            out.add(j, m);
        }
        Ok(out)
    }

    fn add(&mut self, jump: Rational, mult: u64) {
        *self.entries.entry(jump).or_insert(0) += mult;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.entries.iter().map(|(j, m)| (j, *m))
    }

    pub fn get(&self, jump: &Rational) -> u64 {
        self.entries.get(jump).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn min_jump(&self) -> Option<&Rational> {
        self.entries.keys().next()
    }

    /// Every jump translated by `c`.
    pub fn shift(&self, c: &Rational) -> HodgeSpectrum {
        HodgeSpectrum {
            entries: self.entries.iter().map(|(j, m)| (j + c, *m)).collect(),
        }
    }

    /// Jumps repeated by multiplicity, ascending.
    pub fn jumps(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .flat_map(|(j, m)| std::iter::repeat_n(j.clone(), *m as usize))
            .collect()
    }

    /// `Some(c)` when `other = self.shift(c)`.
    pub fn offset_to(&self, other: &HodgeSpectrum) -> Option<Rational> {
        let c = other.min_jump()? - self.min_jump()?;
        (self.shift(&c) == *other).then_some(c)
    }
}

/// Hodge numbers of a regular hypergeometric local system with one Jordan
/// block per eigenvalue: `ν^p_{a_k} = 1` exactly for `p = #{i : b_i < a_k} - k`.
pub fn fedorov_nu(a_seq: &ParamSeq, b_seq: &BarBeta) -> Result<NearbyCycleSpectrum, SpectraError> {
    if a_seq.len() != b_seq.len() {
        return Err(SpectraError::LengthMismatch {
            left: a_seq.len(),
            right: b_seq.len(),
        });
    }
    let mut out = NearbyCycleSpectrum::new(PointLabel::Zero);
    for (idx, a) in a_seq.iter().enumerate() {
        let below = b_seq.count_below(a);
        if b_seq.as_slice().get(below) == Some(a) {
            return Err(SpectraError::Resonant {
                index: idx + 1,
                value: a.clone(),
            });
        }
        let k = idx as i64 + 1;
        out.add(a.clone(), below as i64 - k, 1);
    }
    Ok(out)
}

/// Hodge numbers after the cyclic covering of degree `μ`: each residue `a`
/// becomes `frac(μa)` and colliding keys add up.
pub fn kummer_pullback(s: &NearbyCycleSpectrum, mu: u32) -> NearbyCycleSpectrum {
    assert!(mu > 0, "covering degree must be positive");
    if mu == 1 {
        return s.clone();
    }
    let factor = Rational::from_int(mu as i64);
    let mut out = NearbyCycleSpectrum::new(s.point);
    for ((a, p), m) in &s.entries {
        out.add((&factor * a).fract(), *p, *m);
    }
    out
}

/// Moves a spectrum computed at `zero` to `infinity` under `τ' = 1/τ`; the data is unchanged.
pub fn relabel_infinity(s: &NearbyCycleSpectrum) -> Result<NearbyCycleSpectrum, SpectraError> {
    if s.point != PointLabel::Zero {
        return Err(SpectraError::WrongPoint {
            expected: PointLabel::Zero,
            found: s.point,
        });
    }
    Ok(NearbyCycleSpectrum {
        entries: s.entries.clone(),
        point: PointLabel::Infinity,
    })
}

/// Irregular Hodge jumps of the Laplace transform from the Hodge numbers at
/// infinity: `(a, p) ↦ a + p`.
pub fn stationary_phase_reindex(s: &NearbyCycleSpectrum) -> Result<HodgeSpectrum, SpectraError> {
    if s.point != PointLabel::Infinity {
        return Err(SpectraError::WrongPoint {
            expected: PointLabel::Infinity,
            found: s.point,
        });
    }
    let mut out = HodgeSpectrum::new();
    for ((a, p), m) in &s.entries {
        if a.is_zero() {
            return Err(SpectraError::UnitEigenvalue);
        }
        out.add(a + &Rational::from_int(*p), *m);
    }
    Ok(out)
}

/// Translates so that the smallest jump is `0`.
pub fn normalize(s: &HodgeSpectrum) -> Result<HodgeSpectrum, SpectraError> {
    let min = s.min_jump().ok_or(SpectraError::EmptySpectrum)?;
    if min.is_zero() {
        return Ok(s.clone());
    }
    Ok(s.shift(&-min))
}

#[derive(Serialize, Deserialize)]
struct JumpRecord {
    jump: Rational,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct NearbyRecord {
    a: Rational,
    p: i64,
    mult: u64,
}

/// `[{"jump": "p/q", "mult": n}, …]` by ascending jump.
impl Serialize for HodgeSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(|(j, m)| JumpRecord {
            jump: j.clone(),
            mult: *m,
        }))
    }
}

impl<'de> Deserialize<'de> for HodgeSpectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<JumpRecord>::deserialize(deserializer)?;
        HodgeSpectrum::from_entries(records.into_iter().map(|r| (r.jump, r.mult))).map_err(D::Error::custom)
    }
}

/// `[{"a": "p/q", "p": n, "mult": n}, …]` by `(a, p)`; the point label is not serialized.
impl Serialize for NearbyCycleSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(|((a, p), m)| NearbyRecord {
            a: a.clone(),
            p: *p,
            mult: *m,
        }))
    }
}

impl NearbyCycleSpectrum {
    /// Reads the JSON array form, attaching the given point label.
    pub fn from_json(point: PointLabel, json: &str) -> Result<Self, serde_json::Error> {
        let records: Vec<NearbyRecord> = serde_json::from_str(json)?;
        Self::from_entries(point, records.into_iter().map(|r| ((r.a, r.p), r.mult))).map_err(serde_json::Error::custom)
    }
}

impl fmt::Display for HodgeSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (j, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}:{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for NearbyCycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, ((a, p), m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({a},{p}):{m}")?;
        }
        write!(f, "}} at {}", self.point)
    }
}
