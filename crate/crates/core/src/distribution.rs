use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;

/// Fractions `p_k` of nodes with degree `k`.
///
/// Only strictly positive fractions are stored; [`DegreeDistribution::get`]
/// returns zero for anything else.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<DegreeKey, f64>", into = "BTreeMap<usize, f64>")]
pub struct DegreeDistribution {
    entries: BTreeMap<usize, f64>,
}

impl DegreeDistribution {
    /// Validates exact fractions: non-negative, summing to one within 1e-12,
    /// with some mass on a positive degree.
    pub fn new(entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, p) in entries {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "fraction for degree {k} is {p}"
                )));
            }
            if p > 0.0 {
                *map.entry(k).or_insert(0.0) += p;
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "fractions sum to {total}"
            )));
        }
        if !map.keys().any(|&k| k > 0) {
            return Err(Error::InvalidDistribution(
                "no mass on a positive degree".into(),
            ));
        }
        Ok(Self { entries: map })
    }

    /// Normalizes non-negative weights into fractions.
    pub fn from_weights(weights: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let weights: Vec<_> = weights.into_iter().collect();
        if let Some((k, w)) = weights.iter().find(|(_, w)| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "weight for degree {k} is {w}"
            )));
        }
        let total: f64 = weights.iter().map(|(_, w)| w).sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        let mut map = BTreeMap::new();
        for (k, w) in weights {
            if w > 0.0 {
                *map.entry(k).or_insert(0.0) += w / total;
            }
        }
        // Renormalize once more so the sum is within rounding of one.
        let s: f64 = map.values().sum();
        map.values_mut().for_each(|p| *p /= s);
        Self::new(map)
    }

    pub fn from_counts(counts: &BTreeMap<usize, usize>) -> Result<Self> {
        let total: usize = counts.values().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("no nodes".into()));
        }
        Self::new(counts.iter().map(|(&k, &c)| (k, c as f64 / total as f64)))
    }

    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &k in degrees {
            *counts.entry(k).or_insert(0) += 1;
        }
        Self::from_counts(&counts)
    }

    /// Truncated power law `p_k ∝ k^(-exponent)` on `[k_min, k_max]`.
    pub fn power_law(exponent: f64, k_min: usize, k_max: usize) -> Result<Self> {
        if k_min == 0 || k_min > k_max || !exponent.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "power law needs 1 <= k_min <= k_max, got [{k_min}, {k_max}] exponent {exponent}"
            )));
        }
        Self::from_weights((k_min..=k_max).map(|k| (k, (k as f64).powf(-exponent))))
    }

    pub fn regular(degree: usize) -> Result<Self> {
        Self::new([(degree, 1.0)])
    }

    pub fn get(&self, k: usize) -> f64 {
        self.entries.get(&k).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&k, &p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        *self
            .entries
            .keys()
            .next_back()
            .expect("validated non-empty")
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, p)| k as f64 * p).sum()
    }

    /// `(⟨k⟩, ⟨k²⟩/⟨k⟩)`.
    pub fn moments(&self) -> Result<(f64, f64)> {
        let mean = self.mean();
        if mean <= 0.0 {
            return Err(Error::DegenerateDistribution);
        }
        let second: f64 = self.iter().map(|(k, p)| (k * k) as f64 * p).sum();
        Ok((mean, second / mean))
    }

    pub fn as_map(&self) -> &BTreeMap<usize, f64> {
        &self.entries
    }

    /// Compact JSON object `{"k": p, ...}` used in CSV cells.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("map of numbers serializes")
    }
}

/// Map key accepting both `"3"` (JSON object keys) and `3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreeKey(pub usize);

impl<'de> Deserialize<'de> for DegreeKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct KeyVisitor;

        impl serde::de::Visitor<'_> for KeyVisitor {
            type Value = DegreeKey;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a non-negative integer degree")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<DegreeKey, E> {
                usize::try_from(v).map(DegreeKey).map_err(E::custom)
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<DegreeKey, E> {
                v.trim().parse().map(DegreeKey).map_err(E::custom)
            }
        }

        d.deserialize_any(KeyVisitor)
    }
}

impl TryFrom<BTreeMap<DegreeKey, f64>> for DegreeDistribution {
    type Error = Error;

    fn try_from(map: BTreeMap<DegreeKey, f64>) -> Result<Self> {
        Self::new(map.into_iter().map(|(k, p)| (k.0, p)))
    }
}

impl From<DegreeDistribution> for BTreeMap<usize, f64> {
    fn from(d: DegreeDistribution) -> Self {
        d.entries
    }
}
