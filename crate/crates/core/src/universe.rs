//! Finite ordered universes, element sets and binary relations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest universe supported by the bitset representation.
pub const MAX_UNIVERSE: usize = 64;

/// An ordered list of distinct element names.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Arc<Universe>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Universe {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for n in names {
            let n = n.into();
            if out.index.contains_key(&n) {
                return Err(Error::DuplicateElement(n));
            }
            out.index.insert(n.clone(), out.names.len());
            out.names.push(n);
        }
        if out.names.len() > MAX_UNIVERSE {
            return Err(Error::SizeCap {
                what: "universe",
                size: out.names.len(),
                max: MAX_UNIVERSE,
            });
        }
        Ok(Arc::new(out))
    }

    /// Universe whose elements are named `x0, x1, ...`.
    pub fn anonymous(n: usize) -> Result<Arc<Universe>> {
        Universe::new((0..n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    /// Parses `{a, b}`, `{a,b}`, `a b`, or `{}`.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let t = text.trim();
        let t = t.strip_prefix('{').unwrap_or(t);
        let t = t.strip_suffix('}').unwrap_or(t);
        let names: Vec<&str> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        self.set_of(&names)
    }

    /// `{a, b, c}` in universe order.
    pub fn format_set(&self, s: &ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// A subset of a universe stored as a fixed-width bit vector.
///
/// Sets are lightweight values; the universe they belong to is carried by
/// the surrounding structure. Binary operations assume equal widths.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u64,
    width: u8,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl ElementSet {
    pub fn empty(width: usize) -> Self {
        debug_assert!(width <= MAX_UNIVERSE);
        ElementSet {
            bits: 0,
            width: width as u8,
        }
    }

    pub fn full(width: usize) -> Self {
        ElementSet {
            bits: mask(width),
            width: width as u8,
        }
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(i);
        s
    }

    pub fn from_bits(width: usize, bits: u64) -> Self {
        ElementSet {
            bits: bits & mask(width),
            width: width as u8,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, it: I) -> Self {
        let mut s = Self::empty(width);
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width() && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width(), "element index {i} outside width {}", self.width);
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width() {
            self.bits &= !(1 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == mask(self.width())
    }

    pub fn union(&self, o: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.width, o.width);
        ElementSet {
            bits: self.bits | o.bits,
            width: self.width,
        }
    }

    pub fn intersection(&self, o: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.width, o.width);
        ElementSet {
            bits: self.bits & o.bits,
            width: self.width,
        }
    }

    pub fn difference(&self, o: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.width, o.width);
        ElementSet {
            bits: self.bits & !o.bits,
            width: self.width,
        }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet {
            bits: !self.bits & mask(self.width()),
            width: self.width,
        }
    }

    pub fn is_subset(&self, o: &ElementSet) -> bool {
        self.bits & !o.bits == 0
    }

    pub fn is_proper_subset(&self, o: &ElementSet) -> bool {
        self.is_subset(o) && self.bits != o.bits
    }

    pub fn meets(&self, o: &ElementSet) -> bool {
        self.bits & o.bits != 0
    }

    /// Least member index, if any.
    pub fn first(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut b = self.bits;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(i)
            }
        })
    }

    /// Order used for listing families of sets: lexicographic comparison of
    /// the ascending member lists, so `{a,b,c}` precedes `{a,c}` precedes `{b}`.
    pub fn canonical_cmp(&self, o: &ElementSet) -> std::cmp::Ordering {
        self.iter().cmp(o.iter())
    }

    /// All subsets of a universe of the given width, in binary counting order.
    pub fn all_subsets(width: usize) -> impl Iterator<Item = ElementSet> {
        assert!(width < 31, "powerset enumeration capped at 30 elements");
        (0u64..(1u64 << width)).map(move |b| ElementSet::from_bits(width, b))
    }
}

/// Sorts a family in canonical order and removes duplicates.
pub fn canonical_family(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort_by(|a, b| a.canonical_cmp(b));
    v.dedup();
    v
}

/// State of a structural property of a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    True,
    False,
    Unchecked,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Flag {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationFlags {
    pub reflexive: Flag,
    pub symmetric: Flag,
    pub transitive: Flag,
    pub partially_reflexive: Flag,
    pub antiserial: Flag,
}

impl Default for RelationFlags {
    fn default() -> Self {
        RelationFlags {
            reflexive: Flag::Unchecked,
            symmetric: Flag::Unchecked,
            transitive: Flag::Unchecked,
            partially_reflexive: Flag::Unchecked,
            antiserial: Flag::Unchecked,
        }
    }
}

/// Closure kinds accepted by [`Relation::closure`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureKinds {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl ClosureKinds {
    pub const EQUIVALENCE: ClosureKinds = ClosureKinds {
        reflexive: true,
        symmetric: true,
        transitive: true,
    };
    pub const TOLERANCE: ClosureKinds = ClosureKinds {
        reflexive: true,
        symmetric: true,
        transitive: false,
    };
}

/// A binary relation on a universe, stored as one bit row per element.
#[derive(Clone)]
pub struct Relation {
    universe: Arc<Universe>,
    rows: Vec<u64>,
    flags: RelationFlags,
}

impl PartialEq for Relation {
    fn eq(&self, o: &Relation) -> bool {
        self.universe.len() == o.universe.len() && self.rows == o.rows
    }
}

impl Eq for Relation {}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .pairs()
            .map(|(a, b)| (self.universe.name(a), self.universe.name(b)))
            .collect();
        f.debug_struct("Relation").field("pairs", &pairs).finish()
    }
}

impl Relation {
    pub fn empty(universe: &Arc<Universe>) -> Relation {
        Relation {
            universe: universe.clone(),
            rows: vec![0; universe.len()],
            flags: RelationFlags::default(),
        }
    }

    pub fn identity(universe: &Arc<Universe>) -> Relation {
        let mut r = Relation::empty(universe);
        for i in 0..universe.len() {
            r.insert(i, i);
        }
        r
    }

    pub fn full(universe: &Arc<Universe>) -> Relation {
        let mut r = Relation::empty(universe);
        let m = mask(universe.len());
        for row in &mut r.rows {
            *row = m;
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        universe: &Arc<Universe>,
        pairs: I,
    ) -> Relation {
        let mut r = Relation::empty(universe);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_named_pairs<S: AsRef<str>>(
        universe: &Arc<Universe>,
        pairs: &[(S, S)],
    ) -> Result<Relation> {
        let mut r = Relation::empty(universe);
        for (a, b) in pairs {
            r.insert(universe.index_of(a.as_ref())?, universe.index_of(b.as_ref())?);
        }
        Ok(r)
    }

    /// The equivalence whose classes are the given disjoint sets; elements
    /// not mentioned become singleton classes.
    pub fn from_partition(universe: &Arc<Universe>, classes: &[ElementSet]) -> Relation {
        let mut r = Relation::identity(universe);
        for c in classes {
            for a in c.iter() {
                r.rows[a] |= c.bits();
            }
        }
        r
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| *r == 0)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let n = self.len();
        assert!(a < n && b < n, "pair ({a},{b}) outside universe of size {n}");
        self.rows[a] |= 1 << b;
        self.flags = RelationFlags::default();
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.row(a).iter().map(move |b| (a, b)).collect::<Vec<_>>())
    }

    /// `{y : (x, y) ∈ R}` by index.
    pub fn row(&self, x: usize) -> ElementSet {
        ElementSet::from_bits(self.len(), self.rows[x])
    }

    /// `{y : (y, x) ∈ R}` by index.
    pub fn column(&self, x: usize) -> ElementSet {
        ElementSet::from_indices(self.len(), (0..self.len()).filter(|&y| self.contains(y, x)))
    }

    /// Neighbourhood `[x] = {y : (x, y) ∈ R}` of a named element.
    pub fn neighbourhood(&self, x: &str) -> Result<ElementSet> {
        Ok(self.row(self.universe.index_of(x)?))
    }

    pub fn flags(&self) -> RelationFlags {
        self.flags
    }

    /// Computes every flag from the matrix.
    pub fn checked(mut self) -> Relation {
        self.flags = RelationFlags {
            reflexive: self.reflexive_witness().is_none().into(),
            symmetric: self.symmetric_witness().is_none().into(),
            transitive: self.transitive_witness().is_none().into(),
            partially_reflexive: self.partially_reflexive_witness().is_none().into(),
            antiserial: self.is_antiserial().into(),
        };
        self
    }

    fn reflexive_witness(&self) -> Option<(usize, usize)> {
        (0..self.len()).find(|&i| !self.contains(i, i)).map(|i| (i, i))
    }

    fn symmetric_witness(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !self.contains(b, a))
    }

    fn transitive_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in self.row(a).iter() {
                let missing = self.rows[b] & !self.rows[a];
                if missing != 0 {
                    return Some((a, missing.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    fn partially_reflexive_witness(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .find(|&i| self.rows[i] != 0 && !self.contains(i, i))
            .map(|i| (i, i))
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive_witness().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_witness().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive_witness().is_none()
    }

    /// `x R y` for some y implies `x R x`.
    pub fn is_partially_reflexive(&self) -> bool {
        self.partially_reflexive_witness().is_none()
    }

    /// Every element lies in some neighbourhood: `∀x ∃y (y, x) ∈ R`.
    pub fn is_antiserial(&self) -> bool {
        let all = self.rows.iter().fold(0u64, |a, r| a | r);
        all == mask(self.len())
    }

    pub fn is_tolerance(&self) -> bool {
        self.is_reflexive() && self.is_symmetric()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    pub fn is_partial_equivalence(&self) -> bool {
        self.is_symmetric() && self.is_transitive()
    }

    fn violation(&self, law: &'static str, w: (usize, usize)) -> Error {
        Error::LawViolated {
            law,
            a: self.universe.name(w.0).to_string(),
            b: self.universe.name(w.1).to_string(),
        }
    }

    /// Fails with the first violated law of an equivalence and a witness.
    pub fn require_equivalence(&self) -> Result<()> {
        if let Some(w) = self.reflexive_witness() {
            return Err(self.violation("reflexive", w));
        }
        if let Some(w) = self.symmetric_witness() {
            return Err(self.violation("symmetric", w));
        }
        if let Some(w) = self.transitive_witness() {
            return Err(self.violation("transitive", w));
        }
        Ok(())
    }

    pub fn require_tolerance(&self) -> Result<()> {
        if let Some(w) = self.reflexive_witness() {
            return Err(self.violation("reflexive", w));
        }
        if let Some(w) = self.symmetric_witness() {
            return Err(self.violation("symmetric", w));
        }
        Ok(())
    }

    /// Smallest superset with the requested properties.
    pub fn closure(&self, kinds: ClosureKinds) -> Relation {
        let n = self.len();
        let mut rows = self.rows.clone();
        if kinds.reflexive {
            for (i, r) in rows.iter_mut().enumerate() {
                *r |= 1 << i;
            }
        }
        if kinds.symmetric {
            for a in 0..n {
                for b in 0..n {
                    if rows[a] >> b & 1 == 1 {
                        rows[b] |= 1 << a;
                    }
                }
            }
        }
        if kinds.transitive {
            // Warshall: after step k, rows reach through intermediates < k+1.
            for k in 0..n {
                let rk = rows[k];
                for r in rows.iter_mut() {
                    if *r >> k & 1 == 1 {
                        *r |= rk;
                    }
                }
            }
        }
        let mut out = Relation {
            universe: self.universe.clone(),
            rows,
            flags: RelationFlags::default(),
        };
        if kinds.reflexive {
            out.flags.reflexive = Flag::True;
        }
        if kinds.symmetric {
            out.flags.symmetric = Flag::True;
        }
        if kinds.transitive {
            out.flags.transitive = Flag::True;
        }
        out
    }

    /// Equivalence classes ordered by least member.
    pub fn partition_classes(&self) -> Result<Vec<ElementSet>> {
        self.require_equivalence()?;
        let mut seen = 0u64;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen >> x & 1 == 0 {
                seen |= self.rows[x];
                out.push(self.row(x));
            }
        }
        Ok(out)
    }

    /// The equivalence `x θ0 y ⇔ dom(x) = dom(y)` with
    /// `dom(z) = ⋂{[x] : z ∈ [x]}`.
    pub fn theta0(&self) -> Result<Relation> {
        self.require_tolerance()
            .map_err(|e| Error::Precondition(format!("theta0 needs a tolerance: {e}")))?;
        let n = self.len();
        let full = mask(n);
        let dom: Vec<u64> = (0..n)
            .map(|z| {
                (0..n)
                    .filter(|&x| self.contains(x, z))
                    .fold(full, |acc, x| acc & self.rows[x])
            })
            .collect();
        let mut r = Relation::empty(&self.universe);
        for a in 0..n {
            for b in 0..n {
                if dom[a] == dom[b] {
                    r.rows[a] |= 1 << b;
                }
            }
        }
        Ok(r.checked())
    }
}
