//! Fuzzy sets given by finitely many level sets, and the passage between
//! such chains and partitions.
//!
//! A chain is stored at the points of a finite `P ⊂ [0,1]` and read as a
//! step function: for `a` in `(p_{i-1}, p_i]` the level set is `A_{p_i}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::universe::ElementSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzySet {
    width: usize,
    levels: BTreeMap<Ratio, ElementSet>,
}

fn check_unit(a: Ratio) -> Result<()> {
    if a < Ratio::zero() || a > Ratio::one() {
        return Err(Error::Precondition(format!("level {a} lies outside [0,1]")));
    }
    Ok(())
}

impl FuzzySet {
    /// Builds a chain over a universe of `width` elements. A missing level 0
    /// is filled with S and a missing level 1 with ∅.
    pub fn new(width: usize, levels: impl IntoIterator<Item = (Ratio, ElementSet)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, set) in levels {
            check_unit(a)?;
            if set.width() != width {
                return Err(Error::LengthMismatch { left: set.width(), right: width });
            }
            if map.insert(a, set).is_some() {
                return Err(Error::Precondition(format!("level {a} given twice")));
            }
        }
        let full = ElementSet::full(width);
        match map.get(&Ratio::zero()) {
            Some(s) if *s != full => return Err(Error::Precondition("A_0 must be the whole universe".into())),
            Some(_) => {}
            None => {
                map.insert(Ratio::zero(), full);
            }
        }
        map.entry(Ratio::one()).or_insert_with(|| ElementSet::empty(width));
        let sets: Vec<&ElementSet> = map.values().collect();
        if let Some(w) = sets.windows(2).position(|w| !w[1].is_subset(w[0])) {
            let keys: Vec<&Ratio> = map.keys().collect();
            return Err(Error::Precondition(format!(
                "levels are not descending: A_{} ⊄ A_{}",
                keys[w + 1],
                keys[w]
            )));
        }
        Ok(FuzzySet { width, levels: map })
    }

    /// The chain with `A_a = c` for every `a > 0`.
    pub fn crisp(c: &ElementSet) -> Self {
        Self::new(c.width(), [(Ratio::one(), c.clone())]).expect("crisp chain")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn points(&self) -> impl Iterator<Item = Ratio> + '_ {
        self.levels.keys().copied()
    }

    pub fn levels(&self) -> impl Iterator<Item = (Ratio, &ElementSet)> + '_ {
        self.levels.iter().map(|(a, s)| (*a, s))
    }

    /// `A_a` for any `a ∈ [0,1]`, using the step reading between points.
    pub fn level(&self, a: Ratio) -> Result<ElementSet> {
        check_unit(a)?;
        Ok(self.levels.range(a..).next().map(|(_, s)| s.clone()).expect("level 1 present"))
    }

    pub fn membership(&self, x: usize) -> Ratio {
        self.levels.iter().rev().find(|(_, s)| s.contains(x)).map(|(a, _)| *a).expect("A_0 = S")
    }

    pub fn core(&self) -> ElementSet {
        self.levels[&Ratio::one()].clone()
    }

    pub fn support(&self) -> ElementSet {
        ElementSet::from_indices(self.width, (0..self.width).filter(|&x| !self.membership(x).is_zero()))
    }

    pub fn height(&self) -> Ratio {
        (0..self.width).map(|x| self.membership(x)).max().unwrap_or_else(Ratio::zero)
    }

    /// `U(μ, a) = {x : μ(x) ≥ a}`.
    pub fn upper_level(&self, a: Ratio) -> Result<ElementSet> {
        check_unit(a)?;
        Ok(ElementSet::from_indices(self.width, (0..self.width).filter(|&x| self.membership(x) >= a)))
    }

    /// Adds a level between existing points (a refinement of the chain).
    pub fn refine(&self, a: Ratio, set: ElementSet) -> Result<Self> {
        Self::new(self.width, self.levels.iter().map(|(k, s)| (*k, s.clone())).chain([(a, set)]))
    }
}

fn check_points(points: &[Ratio]) -> Result<()> {
    if points.first() != Some(&Ratio::zero()) || points.last() != Some(&Ratio::one()) {
        return Err(Error::Precondition("P must start at 0 and end at 1".into()));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("P must be strictly increasing".into()));
    }
    Ok(())
}

/// Differences of consecutive levels at the points of `points ⊆ P`, with the
/// core appended as the last cell; empty cells are dropped.
pub fn construction1(f: &FuzzySet, points: &[Ratio]) -> Result<Vec<ElementSet>> {
    check_points(points)?;
    if let Some(p) = points.iter().find(|p| !f.levels.contains_key(p)) {
        return Err(Error::Precondition(format!("{p} is not a level of the chain")));
    }
    let b: Vec<&ElementSet> = points.iter().map(|p| &f.levels[p]).collect();
    let mut cells: Vec<ElementSet> = b.windows(2).map(|w| w[0].difference(w[1])).collect();
    cells.push(b[b.len() - 1].clone());
    cells.retain(|c| !c.is_empty());
    Ok(cells)
}

/// Rebuilds a chain on `points` whose [`construction1`] is `cells`: the
/// first `m - 1` cells are peeled off level by level and the last cell is
/// the core. Needs `|points| ≥ m`.
pub fn reverse_transform(cells: &[ElementSet], points: &[Ratio]) -> Result<FuzzySet> {
    check_points(points)?;
    let width = cells.first().map(ElementSet::width).ok_or_else(|| Error::Precondition("no cells".into()))?;
    if points.len() < cells.len() {
        return Err(Error::LengthMismatch { left: cells.len(), right: points.len() });
    }
    let mut seen = ElementSet::empty(width);
    for c in cells {
        if c.width() != width || c.is_empty() || c.meets(&seen) {
            return Err(Error::Precondition("cells must be nonempty and pairwise disjoint".into()));
        }
        seen = seen.union(c);
    }
    if !seen.is_full() {
        return Err(Error::Precondition("cells do not cover the universe".into()));
    }
    let mut rest = ElementSet::full(width);
    let mut levels = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        if i > 0 && i < cells.len() {
            rest = rest.difference(&cells[i - 1]);
        }
        levels.push((p, rest.clone()));
    }
    FuzzySet::new(width, levels)
}
