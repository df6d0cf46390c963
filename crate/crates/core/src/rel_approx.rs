//! Relation-based approximations: classical, esoteric (partial
//! equivalence), reflexive, multiple and tolerance spaces, plus the
//! tolerance granule families and the generic granule-based schemas.

use crate::error::{Error, Result};
use crate::universe::{canonical_family, ElementSet, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Equivalence,
    PartialEquivalence,
    Reflexive,
    Tolerance,
    Multiple,
}

impl SpaceKind {
    fn name(self) -> &'static str {
        match self {
            SpaceKind::Equivalence => "an equivalence space",
            SpaceKind::PartialEquivalence => "a partial-equivalence space",
            SpaceKind::Reflexive => "a reflexive space",
            SpaceKind::Tolerance => "a tolerance space",
            SpaceKind::Multiple => "a multiple space",
        }
    }
}

/// A universe with one relation (or a tuple of equivalences) whose kind was
/// validated at construction.
#[derive(Clone, Debug)]
pub struct ApproxSpace {
    kind: SpaceKind,
    rels: Vec<Relation>,
}

impl ApproxSpace {
    pub fn equivalence(rel: Relation) -> Result<Self> {
        rel.require_equivalence()?;
        Ok(ApproxSpace {
            kind: SpaceKind::Equivalence,
            rels: vec![rel],
        })
    }

    /// Symmetric and transitive (hence partially reflexive).
    pub fn partial_equivalence(rel: Relation) -> Result<Self> {
        if !rel.is_partial_equivalence() {
            return Err(Error::KindMismatch {
                expected: "a symmetric transitive relation",
                found: "a relation failing symmetry or transitivity".into(),
            });
        }
        Ok(ApproxSpace {
            kind: SpaceKind::PartialEquivalence,
            rels: vec![rel],
        })
    }

    pub fn reflexive(rel: Relation) -> Result<Self> {
        if !rel.is_reflexive() {
            return Err(Error::KindMismatch {
                expected: "a reflexive relation",
                found: "a non-reflexive relation".into(),
            });
        }
        Ok(ApproxSpace {
            kind: SpaceKind::Reflexive,
            rels: vec![rel],
        })
    }

    pub fn tolerance(rel: Relation) -> Result<Self> {
        rel.require_tolerance()?;
        Ok(ApproxSpace {
            kind: SpaceKind::Tolerance,
            rels: vec![rel],
        })
    }

    pub fn multiple(rels: Vec<Relation>) -> Result<Self> {
        if rels.is_empty() {
            return Err(Error::Precondition("multiple space needs at least one equivalence".into()));
        }
        let n = rels[0].len();
        for r in &rels {
            r.require_equivalence()?;
            if r.len() != n {
                return Err(Error::LengthMismatch { left: n, right: r.len() });
            }
        }
        Ok(ApproxSpace {
            kind: SpaceKind::Multiple,
            rels,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn relation(&self) -> &Relation {
        &self.rels[0]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    pub fn width(&self) -> usize {
        self.rels[0].len()
    }

    fn expect(&self, k: SpaceKind) -> Result<()> {
        if self.kind == k {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: k.name(),
                found: self.kind.name().to_string(),
            })
        }
    }

    fn rows(&self) -> impl Iterator<Item = (usize, ElementSet)> + '_ {
        let r = &self.rels[0];
        (0..r.len()).map(move |x| (x, r.row(x)))
    }

    fn plain_lower(&self, x: &ElementSet) -> ElementSet {
        self.rows()
            .filter(|(_, g)| g.is_subset(x))
            .fold(ElementSet::empty(self.width()), |a, (_, g)| a.union(&g))
    }

    fn plain_upper(&self, x: &ElementSet) -> ElementSet {
        self.rows()
            .filter(|(_, g)| g.meets(x))
            .fold(ElementSet::empty(self.width()), |a, (_, g)| a.union(&g))
    }

    /// Union of classes inside / meeting `x`.
    pub fn classical(&self, x: &ElementSet, dir: Dir) -> Result<ElementSet> {
        self.expect(SpaceKind::Equivalence)?;
        Ok(match dir {
            Dir::Lower => self.plain_lower(x),
            Dir::Upper => self.plain_upper(x),
        })
    }

    /// Same schema over pseudo-classes `[x]`, which may be empty or miss `x`.
    pub fn esoteric(&self, x: &ElementSet, dir: Dir) -> Result<ElementSet> {
        self.expect(SpaceKind::PartialEquivalence)?;
        Ok(match dir {
            Dir::Lower => self.plain_lower(x),
            Dir::Upper => self.plain_upper(x),
        })
    }

    /// Only neighbourhoods of members of `a` contribute.
    pub fn reflexive_approx(&self, a: &ElementSet, dir: Dir) -> Result<ElementSet> {
        self.expect(SpaceKind::Reflexive)?;
        let w = self.width();
        Ok(self
            .rows()
            .filter(|(x, g)| {
                a.contains(*x)
                    && match dir {
                        Dir::Lower => g.is_subset(a),
                        Dir::Upper => g.meets(a),
                    }
            })
            .fold(ElementSet::empty(w), |acc, (_, g)| acc.union(&g)))
    }

    pub fn multi_approx(&self, x: &ElementSet, kind: MultiKind) -> Result<ElementSet> {
        self.expect(SpaceKind::Multiple)?;
        let per: Vec<ElementSet> = self
            .rels
            .iter()
            .map(|r| {
                let single = ApproxSpace {
                    kind: SpaceKind::Equivalence,
                    rels: vec![r.clone()],
                };
                match kind {
                    MultiKind::Ls | MultiKind::Lw => single.plain_lower(x),
                    MultiKind::Us | MultiKind::Uw => single.plain_upper(x),
                }
            })
            .collect();
        let w = self.width();
        Ok(match kind {
            MultiKind::Ls | MultiKind::Uw => per.iter().fold(ElementSet::full(w), |a, s| a.intersection(s)),
            MultiKind::Us | MultiKind::Lw => per.iter().fold(ElementSet::empty(w), |a, s| a.union(s)),
        })
    }

    pub fn tolerance_ops(&self, x: &ElementSet, kind: ToleranceOp) -> Result<ElementSet> {
        self.expect(SpaceKind::Tolerance)?;
        let t = &self.rels[0];
        let n = self.width();
        Ok(match kind {
            ToleranceOp::LT => self.plain_lower(x),
            ToleranceOp::UT => self.plain_upper(x),
            ToleranceOp::LStar => ElementSet::from_indices(
                n,
                (0..n).filter(|&p| t.row(p).iter().any(|y| t.row(y).is_subset(x))),
            ),
            ToleranceOp::UStar => ElementSet::from_indices(
                n,
                (0..n).filter(|&p| t.row(p).iter().all(|y| t.row(y).meets(x))),
            ),
            ToleranceOp::BittenUpper => self.plain_upper(x).difference(&self.plain_lower(&x.complement())),
        })
    }

    /// Granule families of a tolerance space.
    pub fn granule_family(&self, kind: FamilyKind) -> Result<GranuleFamily> {
        let members = match kind {
            FamilyKind::Custom => {
                return Err(Error::Precondition("custom families are built with GranuleFamily::custom".into()))
            }
            FamilyKind::Classes => {
                self.expect(SpaceKind::Equivalence)?;
                self.rels[0].partition_classes()?
            }
            _ => {
                self.expect(SpaceKind::Tolerance)?;
                let t = &self.rels[0];
                match kind {
                    FamilyKind::Relateds => neighbourhood_family(t),
                    FamilyKind::Blocks => maximal_cliques(t),
                    FamilyKind::BlockIntersections | FamilyKind::AllBlockIntersections => {
                        intersection_closure(&maximal_cliques(t))
                    }
                    FamilyKind::RelatedIntersections => intersection_closure(&neighbourhood_family(t)),
                    FamilyKind::Classes | FamilyKind::Custom => unreachable!(),
                }
            }
        };
        Ok(GranuleFamily { kind, members })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiKind {
    Ls,
    Us,
    Lw,
    Uw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToleranceOp {
    LT,
    UT,
    LStar,
    UStar,
    BittenUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// 𝒯: the sets `[x]`.
    Relateds,
    /// ℬ: maximal cliques of the tolerance.
    Blocks,
    /// 𝒜: finite intersections of blocks.
    BlockIntersections,
    /// 𝒜σ: arbitrary intersections of blocks (same as 𝒜 on a finite universe).
    AllBlockIntersections,
    /// 𝒯ℐ: intersections of 𝒯-sets.
    RelatedIntersections,
    /// Classes of an equivalence.
    Classes,
    /// A family supplied by the caller.
    Custom,
}

/// An ordered family of nonempty, distinct granules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GranuleFamily {
    pub kind: FamilyKind,
    pub members: Vec<ElementSet>,
}

impl GranuleFamily {
    /// Keeps the given order, dropping empties and repeated sets.
    pub fn custom(members: Vec<ElementSet>) -> Self {
        let mut out: Vec<ElementSet> = Vec::new();
        for m in members {
            if !m.is_empty() && !out.contains(&m) {
                out.push(m);
            }
        }
        GranuleFamily {
            kind: FamilyKind::Custom,
            members: out,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn neighbourhood_family(t: &Relation) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = Vec::new();
    for x in 0..t.len() {
        let g = t.row(x);
        if !g.is_empty() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Bron–Kerbosch with pivoting on the symmetric part of `t` (self loops
/// ignored). Every vertex lies in some clique, so isolated points give
/// singleton blocks.
pub fn maximal_cliques(t: &Relation) -> Vec<ElementSet> {
    let n = t.len();
    let adj: Vec<u64> = (0..n)
        .map(|x| {
            let mut r = t.row(x).bits() & t.column(x).bits();
            r &= !(1u64 << x);
            r
        })
        .collect();
    let mut out = Vec::new();
    fn bk(r: u64, mut p: u64, mut x: u64, adj: &[u64], out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let px = p | x;
        let pivot = px.trailing_zeros() as usize;
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(r | 1 << v, p & adj[v], x & adj[v], adj, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    if n > 0 {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        bk(0, all, 0, &adj, &mut out);
    }
    canonical_family(out.into_iter().map(|b| ElementSet::from_bits(n, b)).collect())
}

/// Closure under pairwise intersection, empties removed, canonical order.
pub fn intersection_closure(base: &[ElementSet]) -> Vec<ElementSet> {
    let mut fam: Vec<ElementSet> = canonical_family(base.iter().copied().filter(|s| !s.is_empty()).collect());
    loop {
        let mut added = false;
        let snapshot = fam.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let c = a.intersection(b);
                if !c.is_empty() && !fam.contains(&c) {
                    fam.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return canonical_family(fam);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericKind {
    L,
    U,
    L2,
    U1,
    U2,
}

/// The five granule-based schemas. Index sets range over `{1..n+1}` with
/// `H_{n+1} = S` (and `{0..n}` with `H_0 = ∅` for the last schema); the
/// empty index set is admitted, contributing `S` to intersections and `∅`
/// to unions.
pub fn generic_granule_approx(g: &GranuleFamily, x: &ElementSet, kind: GenericKind) -> ElementSet {
    let w = x.width();
    let hs = &g.members;
    match kind {
        GenericKind::L => hs
            .iter()
            .filter(|h| h.is_subset(x))
            .fold(ElementSet::empty(w), |a, h| a.union(h)),
        GenericKind::U => hs
            .iter()
            .filter(|h| h.meets(x))
            .fold(ElementSet::empty(w), |a, h| a.union(h)),
        GenericKind::L2 => ElementSet::from_indices(
            w,
            (0..w).filter(|&y| {
                // Smallest intersection of complements containing y.
                let avoid = hs
                    .iter()
                    .filter(|h| !h.contains(y))
                    .fold(ElementSet::empty(w), |a, h| a.union(h));
                avoid.complement().is_subset(x)
            }),
        ),
        GenericKind::U1 => ElementSet::from_indices(
            w,
            (0..w).filter(|&y| {
                // Largest union of granules avoiding y.
                let avoid = hs
                    .iter()
                    .filter(|h| !h.contains(y))
                    .fold(ElementSet::empty(w), |a, h| a.union(h));
                !x.is_subset(&avoid)
            }),
        ),
        GenericKind::U2 => hs
            .iter()
            .filter(|h| !h.meets(x))
            .fold(ElementSet::full(w), |a, h| a.intersection(&h.complement())),
    }
}
