use std::fmt;

use serde::Serialize;

use super::FockError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Sector {
    pub name: String,
    pub statistics: Statistics,
    pub modes: Vec<String>,
}

impl Sector {
    pub fn new(name: impl Into<String>, statistics: Statistics, modes: &[&str]) -> Self {
        Sector { name: name.into(), statistics, modes: modes.iter().map(|m| m.to_string()).collect() }
    }
}

/// Ordered collection of sectors; modes get global indices in declaration
/// order (sector by sector, then mode by mode).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Universe {
    sectors: Vec<Sector>,
    #[serde(skip)]
    offsets: Vec<usize>,
}

impl Universe {
    pub fn new(sectors: Vec<Sector>) -> Result<Self, FockError> {
        let mut offsets = Vec::with_capacity(sectors.len());
        let mut total = 0;
        for (i, s) in sectors.iter().enumerate() {
            if sectors[..i].iter().any(|t| t.name == s.name) {
                return Err(FockError::DuplicateSector(s.name.clone()));
            }
            for (j, m) in s.modes.iter().enumerate() {
                if s.modes[..j].contains(m) {
                    return Err(FockError::DuplicateMode { sector: s.name.clone(), label: m.clone() });
                }
            }
            offsets.push(total);
            total += s.modes.len();
        }
        Ok(Universe { sectors, offsets })
    }

    /// One fermion sector `f` and one boson sector `b`, each with the given
    /// number of modes labelled `1..=n`.
    pub fn two_sector(fermion_modes: usize, boson_modes: usize) -> Self {
        let labels = |n: usize| (1..=n).map(|k| k.to_string()).collect();
        Universe::new(vec![
            Sector { name: "f".into(), statistics: Statistics::Fermion, modes: labels(fermion_modes) },
            Sector { name: "b".into(), statistics: Statistics::Boson, modes: labels(boson_modes) },
        ])
        .expect("distinct names")
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn mode_count(&self) -> usize {
        self.sectors.iter().map(|s| s.modes.len()).sum()
    }

    fn locate(&self, k: usize) -> (usize, usize) {
        let s = (0..self.sectors.len())
            .find(|&s| self.sector_modes(s).contains(&k))
            .unwrap_or_else(|| panic!("mode index {k} out of range"));
        (s, k - self.offsets[s])
    }

    pub fn statistics(&self, k: usize) -> Statistics {
        self.sectors[self.locate(k).0].statistics
    }

    pub fn is_fermion(&self, k: usize) -> bool {
        self.statistics(k) == Statistics::Fermion
    }

    pub fn mode_index(&self, sector: &str, label: &str) -> Result<usize, FockError> {
        let s = self
            .sectors
            .iter()
            .position(|s| s.name == sector)
            .ok_or_else(|| FockError::UnknownSector(sector.to_string()))?;
        let m = self.sectors[s]
            .modes
            .iter()
            .position(|m| m == label)
            .ok_or_else(|| FockError::UnknownMode { sector: sector.to_string(), label: label.to_string() })?;
        Ok(self.offsets[s] + m)
    }

    /// `sector:label`.
    pub fn mode_name(&self, k: usize) -> String {
        let (s, m) = self.locate(k);
        format!("{}:{}", self.sectors[s].name, self.sectors[s].modes[m])
    }

    /// All global mode indices of one sector.
    pub fn sector_modes(&self, sector: usize) -> std::ops::Range<usize> {
        self.offsets[sector]..self.offsets[sector] + self.sectors[sector].modes.len()
    }
}
