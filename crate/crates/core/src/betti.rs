//! Multigraded Betti tables and the homological statistics derived from them.

use std::collections::BTreeMap;

use crate::ideal::VariableSet;

/// Ranks per (homological level, multidegree). Level 0 holds the minimal
/// generators of the ideal; level i the i-th syzygies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub vars: VariableSet,
    pub entries: BTreeMap<(usize, Vec<u16>), u64>,
}

impl BettiTable {
    pub fn new(vars: VariableSet) -> Self {
        BettiTable { vars, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, level: usize, degree: Vec<u16>, rank: u64) {
        if rank > 0 {
            *self.entries.entry((level, degree)).or_insert(0) += rank;
        }
    }

    /// Total rank of one homological level.
    pub fn level_rank(&self, level: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == level)
            .map(|(_, &r)| r)
            .sum()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// Ranks per level, from 0 up to the top nonzero level.
    pub fn level_ranks(&self) -> Vec<u64> {
        match self.max_level() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|i| self.level_rank(i)).collect(),
        }
    }

    /// Z-graded collapse: (level, total degree) -> rank.
    pub fn z_graded(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for ((i, deg), &r) in &self.entries {
            let d: usize = deg.iter().map(|&e| e as usize).sum();
            *out.entry((*i, d)).or_insert(0) += r;
        }
        out
    }

    pub fn total_rank(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((i, deg), r)| {
                serde_json::json!({
                    "i": i,
                    "degree": deg,
                    "rank": r,
                })
            })
            .collect();
        serde_json::json!({
            "variables": self.vars.names(),
            "entries": entries,
            "level_ranks": self.level_ranks(),
        })
    }
}

/// Projective dimension and regularity in both the ideal and quotient
/// conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomologicalStats {
    pub pd_ideal: usize,
    pub pd_quotient: usize,
    pub reg_ideal: usize,
    pub reg_quotient: usize,
}

impl HomologicalStats {
    pub fn from_table(t: &BettiTable) -> Option<HomologicalStats> {
        let pd_ideal = t.max_level()?;
        let reg_ideal = t
            .entries
            .iter()
            .map(|((i, deg), _)| deg.iter().map(|&e| e as usize).sum::<usize>() - i)
            .max()?;
        Some(HomologicalStats {
            pd_ideal,
            pd_quotient: pd_ideal + 1,
            reg_ideal,
            reg_quotient: reg_ideal.saturating_sub(1),
        })
    }
}
