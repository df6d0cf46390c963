//! Dependency and consistency degrees between two equivalences, their
//! granule-indexed refinements, and granular rough inclusion vectors.
//!
//! Everything is exact: values are [`Ratio`]s. Granules of an equivalence
//! are its classes ordered by least member.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::universe::{ElementSet, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureVector(pub Vec<Ratio>);

impl MeasureVector {
    pub fn sum(&self) -> Ratio {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MeasureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

fn check_pair(r: &Relation, q: &Relation) -> Result<()> {
    if r.universe() != q.universe() {
        return Err(Error::KindMismatch { expected: "relations on one universe", found: "two universes".into() });
    }
    if r.is_empty() {
        return Err(Error::Precondition("empty universe".into()));
    }
    r.require_equivalence()?;
    q.require_equivalence()
}

fn lower(classes: &[ElementSet], x: &ElementSet) -> ElementSet {
    classes.iter().filter(|c| c.is_subset(x)).fold(ElementSet::empty(x.width()), |a, c| a.union(c))
}

fn frac(num: usize, den: usize) -> Ratio {
    Ratio::new(num as i64, den as i64)
}

/// `POS_R(Q)`: the union of the R-lower approximations of the Q-classes.
pub fn pos(r: &Relation, q: &Relation) -> Result<ElementSet> {
    check_pair(r, q)?;
    let rc = r.partition_classes()?;
    Ok(q.partition_classes()?
        .iter()
        .fold(ElementSet::empty(r.len()), |a, x| a.union(&lower(&rc, x))))
}

/// `δ(Q, R) = |POS_R(Q)| / |S|`, the dependence of Q on R.
pub fn delta(r: &Relation, q: &Relation) -> Result<Ratio> {
    Ok(frac(pos(r, q)?.len(), r.len()))
}

/// `gk(Q, R)`: entry i is `|G_i| / |S|` for the i-th R-class when it lies
/// inside `POS_R(Q)`, else 0.
pub fn gk(r: &Relation, q: &Relation) -> Result<MeasureVector> {
    let p = pos(r, q)?;
    let n = r.len();
    Ok(MeasureVector(
        r.partition_classes()?
            .iter()
            .map(|g| if g.is_subset(&p) { frac(g.len(), n) } else { Ratio::zero() })
            .collect(),
    ))
}

/// `Cons(Q, R) = (a + b + n·a·b) / (n + 2)` with `a = δ(Q,R)`, `b = δ(R,Q)`.
pub fn cons(r: &Relation, q: &Relation, n: u32) -> Result<Ratio> {
    let (a, b) = (delta(r, q)?, delta(q, r)?);
    let n = Ratio::from_int(n.into());
    Ok((a + b + n * a * b) / (n + Ratio::from_int(2)))
}

/// Granular consistency: the entries of `gk(Q,R)` and `gk(R,Q)` scaled by
/// `1/(n+2)`, followed by the cross terms `n·k_i·l_j/(n+2)` in row-major
/// order. Its entries sum to [`cons`].
pub fn gcons(r: &Relation, q: &Relation, n: u32) -> Result<MeasureVector> {
    let (k, l) = (gk(r, q)?, gk(q, r)?);
    let nn = Ratio::from_int(n.into());
    let d = nn + Ratio::from_int(2);
    let mut v: Vec<Ratio> = k.0.iter().chain(&l.0).map(|&x| x / d).collect();
    v.extend(k.0.iter().cartesian_product(&l.0).map(|(&ki, &lj)| nn * ki * lj / d));
    Ok(MeasureVector(v))
}

/// `χ_G(X)`: 1 when the granule lies inside X.
pub fn chi(g: &ElementSet, x: &ElementSet) -> u8 {
    u8::from(g.is_subset(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incl {
    K,
    K1,
    K2,
}

pub fn incl(kind: Incl, x: &ElementSet, y: &ElementSet) -> Ratio {
    match kind {
        Incl::K if x.is_empty() => Ratio::one(),
        Incl::K => frac(x.intersection(y).len(), x.len()),
        Incl::K1 if x.union(y).is_empty() => Ratio::one(),
        Incl::K1 => frac(y.len(), x.union(y).len()),
        Incl::K2 => frac(x.complement().union(y).len(), x.width()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclStar {
    KStar,
    K1Star,
    K2Star,
}

/// Granular replacements of the inclusion functions over the ordered
/// granules `g`; lower approximations are unions of granules inside the set.
pub fn incl_star(kind: InclStar, x: &ElementSet, y: &ElementSet, g: &[ElementSet]) -> Result<MeasureVector> {
    if g.is_empty() {
        return Err(Error::Precondition("no granules".into()));
    }
    let uniform = || MeasureVector(vec![frac(1, g.len()); g.len()]);
    let weighted = |target: &ElementSet, den: usize| {
        MeasureVector(g.iter().map(|gi| frac(gi.len() * usize::from(chi(gi, target)), den)).collect())
    };
    let xl = lower(g, x);
    Ok(match kind {
        InclStar::KStar if xl.is_empty() => uniform(),
        InclStar::KStar => weighted(&x.intersection(y), xl.len()),
        // The guard on X^l keeps (X ∪ Y)^l nonempty.
        InclStar::K1Star if xl.is_empty() => uniform(),
        InclStar::K1Star => weighted(y, lower(g, &x.union(y)).len()),
        InclStar::K2Star => weighted(&x.complement().union(y), x.width()),
    })
}
