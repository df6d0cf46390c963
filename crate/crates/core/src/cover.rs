//! Cover approximation systems.
//!
//! A cover system is an ordered, named family of blocks `K_1 .. K_n`; the
//! virtual members `K_0 = ∅` and `K_{n+1} = S` are used where the operator
//! definitions call for them. Operators needing `nbd`, `Fr` or `Md` require
//! every element to be covered.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::universe::{ElementSet, Relation, Universe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSystem {
    universe: Arc<Universe>,
    names: Vec<String>,
    blocks: Vec<ElementSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Auai {
    L1,
    L2,
    U1,
    U2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UPlus {
    U1,
    U2,
    U3,
    U4,
    U5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NbdDir {
    L6,
    U6,
}

/// The `lp*/up*` and `lm*/um*` operator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmKind {
    Lp1,
    Up1,
    Lp2,
    Up2,
    Lp3,
    Up3,
    Lp4,
    Up4,
    Lm1,
    Um1,
    Lm2,
    Um2,
    Lm3,
    Um3,
    Lm4,
    Um4,
    Lm5,
    Um5,
}

impl CoverSystem {
    pub fn new(universe: &Arc<Universe>, blocks: Vec<(String, ElementSet)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut sets = Vec::new();
        for (n, b) in blocks {
            if names.contains(&n) {
                return Err(Error::Precondition(format!("block name `{n}` used twice")));
            }
            if b.width() != universe.len() {
                return Err(Error::LengthMismatch { left: universe.len(), right: b.width() });
            }
            names.push(n);
            sets.push(b);
        }
        Ok(CoverSystem {
            universe: universe.clone(),
            names,
            blocks: sets,
        })
    }

    /// Blocks named `K1, K2, ...` in the given order.
    pub fn from_sets(universe: &Arc<Universe>, blocks: Vec<ElementSet>) -> Result<Self> {
        Self::new(
            universe,
            blocks.into_iter().enumerate().map(|(i, b)| (format!("K{}", i + 1), b)).collect(),
        )
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn width(&self) -> usize {
        self.universe.len()
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn block(&self, name: &str) -> Option<&ElementSet> {
        self.names.iter().position(|n| n == name).map(|i| &self.blocks[i])
    }

    pub fn is_cover(&self) -> bool {
        self.union_of(self.blocks.iter()).is_full()
    }

    fn union_of<'a>(&self, it: impl Iterator<Item = &'a ElementSet>) -> ElementSet {
        it.fold(ElementSet::empty(self.width()), |a, b| a.union(b))
    }

    fn containing(&self, x: usize) -> impl Iterator<Item = (usize, &ElementSet)> + '_ {
        self.blocks.iter().enumerate().filter(move |(_, b)| b.contains(x))
    }

    fn require_covered(&self, x: usize) -> Result<()> {
        if self.containing(x).next().is_none() {
            Err(Error::Uncovered(self.universe.name(x).to_string()))
        } else {
            Ok(())
        }
    }

    fn require_cover(&self) -> Result<()> {
        for x in 0..self.width() {
            self.require_covered(x)?;
        }
        Ok(())
    }

    /// Intersection of the blocks containing `x`.
    pub fn nbd(&self, x: usize) -> Result<ElementSet> {
        self.require_covered(x)?;
        Ok(self
            .containing(x)
            .fold(ElementSet::full(self.width()), |a, (_, b)| a.intersection(b)))
    }

    /// Union of the blocks containing `x`.
    pub fn friends(&self, x: usize) -> Result<ElementSet> {
        self.require_covered(x)?;
        Ok(self.union_of(self.containing(x).map(|(_, b)| b)))
    }

    /// Indices of the inclusion-minimal blocks containing `x`. When several
    /// blocks are the same set only the first-declared one is listed.
    pub fn md_indices(&self, x: usize) -> Result<Vec<usize>> {
        self.require_covered(x)?;
        let cont: Vec<(usize, &ElementSet)> = self.containing(x).collect();
        Ok(cont
            .iter()
            .filter(|(i, a)| {
                !cont.iter().any(|(_, b)| b.is_proper_subset(a))
                    && !cont.iter().any(|(j, b)| j < i && *b == *a)
            })
            .map(|(i, _)| *i)
            .collect())
    }

    pub fn minimal_description(&self, x: usize) -> Result<Vec<String>> {
        Ok(self.md_indices(x)?.into_iter().map(|i| self.names[i].clone()).collect())
    }

    fn md_union(&self, x: usize) -> Result<ElementSet> {
        Ok(self.union_of(self.md_indices(x)?.iter().map(|&i| &self.blocks[i])))
    }

    fn reducible_indices(&self) -> Result<Vec<usize>> {
        self.require_cover()?;
        let md: Vec<Vec<usize>> = (0..self.width()).map(|x| self.md_indices(x)).collect::<Result<_>>()?;
        Ok((0..self.blocks.len())
            .filter(|&k| self.blocks[k].iter().all(|x| !md[x].contains(&k)))
            .collect())
    }

    /// Blocks that are a minimal description of none of their members.
    pub fn reducible_blocks(&self) -> Result<Vec<String>> {
        Ok(self.reducible_indices()?.into_iter().map(|i| self.names[i].clone()).collect())
    }

    /// Removes all reducible blocks at once.
    pub fn covering_reduct(&self) -> Result<CoverSystem> {
        let red = self.reducible_indices()?;
        let keep: Vec<(String, ElementSet)> = (0..self.blocks.len())
            .filter(|i| !red.contains(i))
            .map(|i| (self.names[i].clone(), self.blocks[i]))
            .collect();
        CoverSystem::new(&self.universe, keep)
    }

    /// Repeats [`covering_reduct`](Self::covering_reduct) until nothing is removed.
    pub fn iterated_reduct(&self) -> Result<CoverSystem> {
        let mut cur = self.clone();
        loop {
            let next = cur.covering_reduct()?;
            if next.blocks.len() == cur.blocks.len() {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// The four union/intersection operators, with empty index sets allowed.
    pub fn auai(&self, x: &ElementSet, kind: Auai) -> ElementSet {
        let w = self.width();
        // For each y, the union of blocks avoiding y.
        let avoid = |y: usize| self.union_of(self.blocks.iter().filter(|b| !b.contains(y)));
        match kind {
            Auai::L1 => self.union_of(self.blocks.iter().filter(|b| b.is_subset(x))),
            Auai::U2 => self
                .blocks
                .iter()
                .filter(|b| !b.meets(x))
                .fold(ElementSet::full(w), |a, b| a.intersection(&b.complement())),
            Auai::L2 => ElementSet::from_indices(w, (0..w).filter(|&y| avoid(y).complement().is_subset(x))),
            Auai::U1 => ElementSet::from_indices(w, (0..w).filter(|&y| !x.is_subset(&avoid(y)))),
        }
    }

    fn index_sets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        // Indices 0..n-1 are blocks, index n is the virtual K_{n+1} = S.
        let n = self.blocks.len();
        assert!(n < 20, "index-set enumeration capped at 19 blocks");
        (0u32..(1 << (n + 1))).map(move |m| (0..=n).filter(|i| m >> i & 1 == 1).collect())
    }

    fn member(&self, i: usize) -> ElementSet {
        if i < self.blocks.len() {
            self.blocks[i]
        } else {
            ElementSet::full(self.width())
        }
    }

    /// Inclusion-minimal unions of blocks that include `x`.
    pub fn min_union_components(&self, x: &ElementSet) -> Vec<ElementSet> {
        let unions: Vec<ElementSet> = self
            .index_sets()
            .map(|idx| idx.iter().fold(ElementSet::empty(self.width()), |a, &i| a.union(&self.member(i))))
            .filter(|u| x.is_subset(u))
            .collect();
        extremal(unions, |a, b| a.is_proper_subset(b))
    }

    /// Inclusion-maximal intersections of block complements included in `x`.
    pub fn max_intersection_components(&self, x: &ElementSet) -> Vec<ElementSet> {
        let inters: Vec<ElementSet> = self
            .index_sets()
            .map(|idx| {
                idx.iter()
                    .fold(ElementSet::full(self.width()), |a, &i| a.intersection(&self.member(i).complement()))
            })
            .filter(|s| s.is_subset(x))
            .collect();
        extremal(inters, |a, b| b.is_proper_subset(a))
    }

    pub fn uplus(&self, x: &ElementSet, kind: UPlus) -> Result<ElementSet> {
        let w = self.width();
        let l1 = self.auai(x, Auai::L1);
        Ok(match kind {
            UPlus::U1 => {
                let mut acc = l1;
                for p in x.iter() {
                    acc = acc.union(&self.md_union(p)?);
                }
                acc
            }
            UPlus::U2 => self.union_of(self.blocks.iter().filter(|b| b.meets(x))),
            UPlus::U3 => {
                let mut acc = ElementSet::empty(w);
                for p in x.iter() {
                    acc = acc.union(&self.md_union(p)?);
                }
                acc
            }
            UPlus::U4 => {
                let rest = x.difference(&l1);
                l1.union(&self.union_of(self.blocks.iter().filter(|b| b.meets(&rest))))
            }
            UPlus::U5 => {
                let mut acc = l1;
                for p in x.difference(&l1).iter() {
                    acc = acc.union(&self.nbd(p)?);
                }
                acc
            }
        })
    }

    pub fn nbd_pair(&self, x: &ElementSet, dir: NbdDir) -> Result<ElementSet> {
        self.require_cover()?;
        let w = self.width();
        let nb: Vec<ElementSet> = (0..w).map(|p| self.nbd(p)).collect::<Result<_>>()?;
        Ok(ElementSet::from_indices(
            w,
            (0..w).filter(|&p| match dir {
                NbdDir::L6 => nb[p].is_subset(x),
                NbdDir::U6 => nb[p].meets(x),
            }),
        ))
    }

    /// The partition into atoms of equal block-membership signature, in
    /// order of least member.
    pub fn pi_cover(&self) -> Vec<ElementSet> {
        let w = self.width();
        let sig = |p: usize| -> Vec<bool> { self.blocks.iter().map(|b| b.contains(p)).collect() };
        let mut seen = ElementSet::empty(w);
        let mut out = Vec::new();
        for p in 0..w {
            if seen.contains(p) {
                continue;
            }
            let sp = sig(p);
            let cls = ElementSet::from_indices(w, (p..w).filter(|&q| sig(q) == sp));
            seen = seen.union(&cls);
            out.push(cls);
        }
        out
    }

    pub fn lp_lm(&self, x: &ElementSet, kind: PmKind) -> Result<ElementSet> {
        use PmKind::*;
        let w = self.width();
        let all = 0..w;
        let need_cover = !matches!(kind, Up1 | Lp3 | Up3 | Lm1 | Um1);
        if need_cover {
            self.require_cover()?;
        }
        let fr = |p: usize| self.friends(p).expect("cover checked");
        let nb = |p: usize| self.nbd(p).expect("cover checked");
        let pick = |f: &dyn Fn(usize) -> bool| ElementSet::from_indices(w, all.clone().filter(|&p| f(p)));
        Ok(match kind {
            Lp1 => pick(&|p| fr(p).is_subset(x)),
            Up1 => self.union_of(self.blocks.iter().filter(|b| b.meets(x))),
            Lp2 => (0..w)
                .map(fr)
                .filter(|f| f.is_subset(x))
                .fold(ElementSet::empty(w), |a, f| a.union(&f)),
            Up2 => pick(&|z| (0..w).all(|y| !fr(y).contains(z) || fr(y).meets(x))),
            Lp3 | Lm1 => self.auai(x, Auai::L1),
            Up3 => pick(&|y| self.blocks.iter().all(|b| !b.contains(y) || b.meets(x))),
            Lp4 | Up4 => {
                let atoms = self.pi_cover();
                let keep = |a: &&ElementSet| if kind == Lp4 { a.is_subset(x) } else { a.meets(x) };
                self.union_of(atoms.iter().filter(keep))
            }
            Um1 => self.auai(x, Auai::U2),
            Lm2 => self.nbd_pair(x, NbdDir::L6)?,
            Um2 | Um4 => self.nbd_pair(x, NbdDir::U6)?,
            Lm3 => pick(&|p| nb(p).iter().any(|q| nb(q).is_subset(x))),
            Um3 => pick(&|p| nb(p).iter().all(|q| nb(q).meets(x))),
            Lm4 => pick(&|p| (0..w).all(|q| !nb(q).contains(p) || nb(q).is_subset(x))),
            Lm5 => pick(&|p| (0..w).all(|q| !nb(q).contains(p) || x.contains(q))),
            Um5 => x.iter().map(nb).fold(ElementSet::empty(w), |a, s| a.union(&s)),
        })
    }

    /// `{(x, y) : y ∈ nbd(x)}`.
    pub fn relation_from_neighbourhoods(&self) -> Result<Relation> {
        self.require_cover()?;
        let mut r = Relation::empty(&self.universe);
        for p in 0..self.width() {
            for q in self.nbd(p)?.iter() {
                r.insert(p, q);
            }
        }
        Ok(r)
    }

    /// Blocks `n(x) = {y : (x, y) ∈ R}`, deduplicated, named `n_<x>`.
    pub fn from_relation(rel: &Relation) -> Result<CoverSystem> {
        if !rel.is_antiserial() {
            return Err(Error::Precondition("relation is not antiserial, neighbourhoods do not cover".into()));
        }
        let u = rel.universe().clone();
        let mut blocks: Vec<(String, ElementSet)> = Vec::new();
        for p in 0..rel.len() {
            let b = rel.row(p);
            if !b.is_empty() && !blocks.iter().any(|(_, o)| *o == b) {
                blocks.push((format!("n_{}", u.name(p)), b));
            }
        }
        CoverSystem::new(&u, blocks)
    }
}

/// Number of identities checked by [`CoverSystem::auai_laws`].
pub const AUAI_LAW_COUNT: usize = 15;

impl CoverSystem {
    /// Evaluates the fifteen standard identities of the l1/l2/u1/u2 operators
    /// on the pair (x, y); entry k is item k+1. Items with a hypothesis on
    /// the blocks are vacuously true when it fails. The last item needs a
    /// genuine cover: otherwise S itself is a minimal covering union that
    /// l1 does not fix.
    pub fn auai_laws(&self, x: &ElementSet, y: &ElementSet) -> [bool; AUAI_LAW_COUNT] {
        self.auai_laws_with(x, y, |s, k| self.auai(s, k))
    }

    /// As [`auai_laws`](Self::auai_laws), with the four operators supplied by
    /// the caller (for instance a literal-definition oracle).
    pub fn auai_laws_with(
        &self,
        x: &ElementSet,
        y: &ElementSet,
        op: impl Fn(&ElementSet, Auai) -> ElementSet,
    ) -> [bool; AUAI_LAW_COUNT] {
        use Auai::*;
        let w = self.width();
        let (empty, full) = (ElementSet::empty(w), ElementSet::full(w));
        let sub = |a: &ElementSet, b: &ElementSet| a.is_subset(b);
        let f = |s: &ElementSet, k| op(s, k);
        let (xy_and, xy_or) = (x.intersection(y), x.union(y));
        let covers = self.union_of(self.blocks.iter()) == full;
        let meet_empty = self.blocks.iter().fold(full, |a, b| a.intersection(b)).is_empty();
        let disjoint = self
            .blocks
            .iter()
            .enumerate()
            .all(|(i, a)| self.blocks[i + 1..].iter().all(|b| !a.meets(b)));
        let monotone = |k| !sub(x, y) || sub(&f(x, k), &f(y, k));
        let xc = x.complement();
        [
            sub(&f(x, L1), x) && sub(x, &f(x, U1)) && sub(&f(x, L2), x) && sub(x, &f(x, U2))
                && f(&empty, L1).is_empty() && f(&empty, L2).is_empty(),
            !covers || (f(&full, U1) == full && f(&full, U2) == full && f(&empty, U2).is_empty() && f(&full, L1) == full),
            !meet_empty || (f(&empty, U1).is_empty() && f(&full, L2) == full),
            sub(&f(&xy_and, L1), &f(x, L1).intersection(&f(y, L1)))
                && f(&xy_and, L2) == f(x, L2).intersection(&f(y, L2)),
            f(&xy_or, U1) == f(x, U1).union(&f(y, U1)) && sub(&f(x, U2).union(&f(y, U2)), &f(&xy_or, U2)),
            [L1, L2, U1, U2].into_iter().all(monotone),
            !disjoint
                || (f(&xy_and, L1) == f(x, L1).intersection(&f(y, L1))
                    && f(&xy_or, U2) == f(x, U2).union(&f(y, U2))),
            sub(&f(x, L1).union(&f(y, L1)), &f(&xy_or, L1)) && sub(&f(x, L2).union(&f(y, L2)), &f(&xy_or, L2)),
            sub(&f(&xy_and, U1), &f(x, U1).intersection(&f(y, U1)))
                && sub(&f(&xy_and, U2), &f(x, U2).intersection(&f(y, U2))),
            f(&xc, L1) == f(x, U2).complement() && f(&xc, L2) == f(x, U1).complement(),
            f(&xc, U1) == f(x, L2).complement() && f(&xc, U2) == f(x, L1).complement(),
            f(&f(x, L1), L1) == f(x, L1) && f(&f(x, L2), L2) == f(x, L2) && f(&f(x, U1), U1) == f(x, U1),
            f(&f(x, U2), U2) == f(x, U2) && f(&f(x, L1), U1) == f(x, L1) && f(&f(x, U2), L2) == f(x, U2),
            sub(&f(x, L2), &f(&f(x, L2), U2)) && sub(&f(&f(x, U1), L1), &f(x, U1)),
            self.max_intersection_components(x).iter().all(|c| f(c, U2) == *c)
                && self.min_union_components(x).iter().all(|c| f(c, L1) == *c),
        ]
    }
}

/// Keeps members not strictly beaten by another, deduplicated and in
/// canonical order.
fn extremal(v: Vec<ElementSet>, beats: impl Fn(&ElementSet, &ElementSet) -> bool) -> Vec<ElementSet> {
    let keep: Vec<ElementSet> = v.iter().filter(|a| !v.iter().any(|b| beats(b, a))).copied().collect();
    crate::universe::canonical_family(keep)
}
