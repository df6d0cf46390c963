//! Dialectical counting of a totally ordered universe under a weak
//! indiscernibility relation, and recovery of granules from counts.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::universe::{ElementSet, Relation, Universe};

/// Largest universe for which countability indices enumerate all orders.
pub const INDEX_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    /// `s^{value-1}(1_ty)`, printed `value_ty`.
    Typed { value: u32, ty: u32 },
    /// A partial-count value, printed as the bare number.
    Plain(u32),
    Star,
}

impl Token {
    pub fn value(&self) -> Option<u32> {
        match *self {
            Token::Typed { value, .. } | Token::Plain(value) => Some(value),
            Token::Star => None,
        }
    }

    fn is_one(&self) -> bool {
        self.value() == Some(1)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Typed { value, ty } => write!(f, "{value}_{ty}"),
            Token::Plain(v) => write!(f, "{v}"),
            Token::Star => f.write_str("*"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Token> {
        let bad = || Error::MalformedCount(format!("bad token `{s}`"));
        let num = |t: &str| t.parse::<u32>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        if s == "*" {
            return Ok(Token::Star);
        }
        match s.split_once('_') {
            Some((v, t)) => Ok(Token::Typed { value: num(v)?, ty: num(t)? }),
            None => Ok(Token::Plain(num(s)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Count {
    pub tokens: Vec<Token>,
}

impl Count {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The tokens at the positions of `subset`'s elements, in counting order.
    pub fn induced(&self, seq: &CountedSequence, subset: &ElementSet) -> Result<Count> {
        if self.len() != seq.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: seq.len() });
        }
        Ok(Count {
            tokens: seq.order.iter().zip(&self.tokens).filter(|(x, _)| subset.contains(**x)).map(|(_, t)| *t).collect(),
        })
    }

    /// Lengths of the maximal runs of consecutive tokens with value 1.
    pub fn one_runs(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut cur = 0;
        for t in &self.tokens {
            if t.is_one() {
                cur += 1;
            } else if cur > 0 {
                runs.push(cur);
                cur = 0;
            }
        }
        if cur > 0 {
            runs.push(cur);
        }
        runs
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens.iter().join(" "))
    }
}

impl FromStr for Count {
    type Err = Error;

    fn from_str(s: &str) -> Result<Count> {
        Ok(Count {
            tokens: s.split_whitespace().map(str::parse).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Ipc,
    Hpc,
    Hppc,
    Ippc,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        match s.to_ascii_lowercase().as_str() {
            "ipc" => Ok(Scheme::Ipc),
            "hpc" => Ok(Scheme::Hpc),
            "hppc" => Ok(Scheme::Hppc),
            "ippc" => Ok(Scheme::Ippc),
            _ => Err(Error::KindMismatch {
                expected: "one of ipc, hpc, hppc, ippc",
                found: s.into(),
            }),
        }
    }
}

/// A universe listed in a fixed order, together with the relation used
/// to decide indiscernibility while counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountedSequence {
    pub order: Vec<usize>,
    pub rel: Relation,
}

impl CountedSequence {
    pub fn new(rel: &Relation, order: Vec<usize>) -> Result<Self> {
        let n = rel.len();
        if order.len() != n {
            return Err(Error::LengthMismatch { left: order.len(), right: n });
        }
        let mut seen = ElementSet::empty(n);
        for &x in &order {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, len: n });
            }
            if seen.contains(x) {
                return Err(Error::Precondition(format!(
                    "order lists `{}` twice",
                    rel.universe().name(x)
                )));
            }
            seen.insert(x);
        }
        Ok(CountedSequence { order, rel: rel.clone() })
    }

    pub fn from_names<S: AsRef<str>>(rel: &Relation, names: &[S]) -> Result<Self> {
        let u = rel.universe();
        let order = names.iter().map(|s| u.index_of(s.as_ref())).collect::<Result<_>>()?;
        Self::new(rel, order)
    }

    /// The universe in its declared order.
    pub fn natural(rel: &Relation) -> Self {
        CountedSequence { order: (0..rel.len()).collect(), rel: rel.clone() }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.rel.universe()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn related(&self, p: usize, q: usize) -> bool {
        self.rel.contains(self.order[p], self.order[q])
    }

    fn related_to_earlier(&self, i: usize) -> bool {
        (0..i).any(|k| self.related(k, i))
    }

    pub fn count(&self, scheme: Scheme) -> Count {
        let mut tokens = Vec::with_capacity(self.len());
        match scheme {
            Scheme::Ipc | Scheme::Hpc => {
                let (mut value, mut ty) = (1u32, 1u32);
                for i in 0..self.len() {
                    if i > 0 {
                        let indisc = match scheme {
                            Scheme::Ipc => self.related(i - 1, i),
                            // Related to some earlier element but not the
                            // immediate one falls under the same rule as an
                            // immediate relation.
                            _ => self.related_to_earlier(i),
                        };
                        if indisc {
                            value = 1;
                            ty += 1;
                        } else {
                            value += 1;
                        }
                    }
                    tokens.push(Token::Typed { value, ty });
                }
            }
            Scheme::Hppc | Scheme::Ippc => {
                let mut top = 0u32;
                for i in 0..self.len() {
                    let star = i > 0
                        && match scheme {
                            Scheme::Ippc => self.related(i - 1, i),
                            _ => self.related_to_earlier(i),
                        };
                    if star {
                        tokens.push(Token::Star);
                    } else {
                        top += 1;
                        tokens.push(Token::Plain(top));
                    }
                }
            }
        }
        Count { tokens }
    }

    /// τ: the earliest position related to `position`; ε: the latest
    /// strictly earlier position related to it.
    pub fn tau_eps(&self, position: usize) -> Result<(usize, Option<usize>)> {
        if position >= self.len() {
            return Err(Error::IndexOutOfRange { index: position, len: self.len() });
        }
        let tau = (0..self.len()).find(|&k| self.related(k, position)).unwrap_or(position);
        let eps = (0..position).rev().find(|&k| self.related(k, position));
        Ok((tau, eps))
    }
}

fn check_index_size(n: usize) -> Result<()> {
    if n > INDEX_CAP {
        return Err(Error::SizeCap { what: "countability universe", size: n, max: INDEX_CAP });
    }
    Ok(())
}

fn partial_scheme(scheme: Scheme) -> Result<()> {
    match scheme {
        Scheme::Hppc | Scheme::Ippc => Ok(()),
        _ => Err(Error::KindMismatch { expected: "a partial scheme (hppc or ippc)", found: format!("{scheme:?}") }),
    }
}

fn star_free_orders(rel: &Relation, scheme: Scheme) -> impl Iterator<Item = bool> + '_ {
    (0..rel.len()).permutations(rel.len()).map(move |order| {
        let seq = CountedSequence { order, rel: rel.clone() };
        !seq.count(scheme).tokens.contains(&Token::Star)
    })
}

/// Whether some order counts every element with a distinct number.
pub fn countable(rel: &Relation, scheme: Scheme) -> Result<bool> {
    partial_scheme(scheme)?;
    check_index_size(rel.len())?;
    Ok(star_free_orders(rel, scheme).any(|b| b))
}

/// Fraction of all orders that count every element with a distinct number.
pub fn countability_index(rel: &Relation, scheme: Scheme) -> Result<Ratio> {
    partial_scheme(scheme)?;
    check_index_size(rel.len())?;
    let (mut good, mut total) = (0i64, 0i64);
    for ok in star_free_orders(rel, scheme) {
        total += 1;
        good += i64::from(ok);
    }
    Ok(Ratio::new(good, total))
}

/// `α ≼ β`: β's 1-runs dominate α's position by position and β has at
/// least as many runs longer than one.
pub fn count_preceq(alpha: &Count, beta: &Count) -> Result<bool> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch { left: alpha.len(), right: beta.len() });
    }
    let (ra, rb) = (alpha.one_runs(), beta.one_runs());
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    let dominated = (0..ra.len().max(rb.len())).all(|i| at(&ra, i) <= at(&rb, i));
    let long = |v: &[usize]| v.iter().filter(|&&r| r > 1).count();
    Ok(dominated && long(&rb) >= long(&ra))
}

/// An order listing each class contiguously; classes by least member,
/// members in universe order.
pub fn max_ipc_order(rel: &Relation) -> Result<CountedSequence> {
    let classes = rel.partition_classes()?;
    let order = classes.iter().flat_map(|c| c.iter()).collect();
    CountedSequence::new(rel, order)
}

fn require_known_count(seq: &CountedSequence, cnt: &Count) -> Result<()> {
    if cnt.len() != seq.len() {
        return Err(Error::LengthMismatch { left: cnt.len(), right: seq.len() });
    }
    if *cnt != seq.count(Scheme::Hpc) && *cnt != seq.count(Scheme::Ipc) {
        return Err(Error::MalformedCount(format!("`{cnt}` is neither the IPC nor the HPC count of the sequence")));
    }
    Ok(())
}

/// Recovers granules from an IPC or HPC count: every position whose token
/// is not a 1 (and the first position) opens a granule, which collects the
/// later 1-valued positions with that opener as τ, kept while all members
/// stay pairwise related.
pub fn granules_from_count(seq: &CountedSequence, cnt: &Count) -> Result<Vec<ElementSet>> {
    require_known_count(seq, cnt)?;
    let n = seq.universe().len();
    let mut out = Vec::new();
    for p in 0..seq.len() {
        if p > 0 && cnt.tokens[p].is_one() {
            continue;
        }
        let mut members = vec![p];
        for q in p + 1..seq.len() {
            if cnt.tokens[q].is_one()
                && seq.tau_eps(q)?.0 == p
                && members.iter().all(|&m| seq.related(m, q) && seq.related(q, m))
            {
                members.push(q);
            }
        }
        out.push(ElementSet::from_indices(n, members.iter().map(|&m| seq.order[m])));
    }
    Ok(out)
}

/// All unions of the recovered granules, restricted to `carrier` when given.
pub fn definites_from_count(seq: &CountedSequence, cnt: &Count, carrier: Option<&[ElementSet]>) -> Result<Vec<ElementSet>> {
    let g = granules_from_count(seq, cnt)?;
    if g.len() > 20 {
        return Err(Error::SizeCap { what: "recovered granule family", size: g.len(), max: 20 });
    }
    let n = seq.universe().len();
    let mut out: Vec<ElementSet> = (0u32..1 << g.len())
        .map(|mask| {
            g.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(ElementSet::empty(n), |a, (_, s)| a.union(s))
        })
        .filter(|s| carrier.map_or(true, |c| c.contains(s)))
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok(out)
}

pub fn lower_from_granules(granules: &[ElementSet], b: &ElementSet) -> ElementSet {
    granules.iter().filter(|g| g.is_subset(b)).fold(ElementSet::empty(b.width()), |a, g| a.union(g))
}

pub fn upper_from_granules(granules: &[ElementSet], b: &ElementSet) -> ElementSet {
    granules.iter().filter(|g| g.meets(b)).fold(ElementSet::empty(b.width()), |a, g| a.union(g))
}

/// The HPC count with, between each pair of consecutive tokens, the least
/// complete reduced word of guarantor letters `(G1, G2)` (indices into the
/// granule list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GranularCount {
    pub count: Count,
    pub words: Vec<Vec<(usize, usize)>>,
}

impl GranularCount {
    /// Consecutive pairs (by position of the later element) with no guarantor.
    pub fn empty_words(&self) -> Vec<usize> {
        self.words.iter().enumerate().filter(|(_, w)| w.is_empty()).map(|(i, _)| i + 1).collect()
    }
}

impl fmt::Display for GranularCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.count.tokens.iter().enumerate() {
            if i > 0 {
                let w = self.words[i - 1].iter().map(|(a, b)| format!("(G{},G{})", a + 1, b + 1)).join("");
                write!(f, " [{w}] ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn granular_hpc(seq: &CountedSequence, granules: &[ElementSet]) -> GranularCount {
    let words = seq
        .order
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mut letters: Vec<(usize, usize)> = (0..granules.len())
                .cartesian_product(0..granules.len())
                .filter(|&(i, j)| {
                    let (g1, g2) = (&granules[i], &granules[j]);
                    i != j && g1.contains(a) && g2.contains(b) && !g2.contains(a) && !g1.contains(b)
                })
                .collect();
            letters.sort();
            letters
        })
        .collect();
    GranularCount { count: seq.count(Scheme::Hpc), words }
}

/// Rough-equality classes of subsets as (lower, upper) pairs, with the
/// pairwise operations of the rough algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoughQuotient {
    pub objects: Vec<(ElementSet, ElementSet)>,
}

impl RoughQuotient {
    /// Built from the classes of an equivalence.
    pub fn from_relation(rel: &Relation) -> Result<Self> {
        Self::from_granules(rel.universe(), &rel.partition_classes()?)
    }

    /// Built from a partition alone, e.g. granules recovered from a count.
    pub fn from_granules(u: &Arc<Universe>, granules: &[ElementSet]) -> Result<Self> {
        if u.len() > 20 {
            return Err(Error::SizeCap { what: "rough quotient universe", size: u.len(), max: 20 });
        }
        let mut objects: Vec<(ElementSet, ElementSet)> = ElementSet::all_subsets(u.len())
            .map(|a| (lower_from_granules(granules, &a), upper_from_granules(granules, &a)))
            .collect();
        objects.sort_by(|x, y| x.0.canonical_cmp(&y.0).then(x.1.canonical_cmp(&y.1)));
        objects.dedup();
        Ok(RoughQuotient { objects })
    }

    pub fn contains(&self, o: &(ElementSet, ElementSet)) -> bool {
        self.objects.binary_search_by(|x| x.0.canonical_cmp(&o.0).then(x.1.canonical_cmp(&o.1))).is_ok()
    }

    pub fn join(a: &(ElementSet, ElementSet), b: &(ElementSet, ElementSet)) -> (ElementSet, ElementSet) {
        (a.0.union(&b.0), a.1.union(&b.1))
    }

    pub fn meet(a: &(ElementSet, ElementSet), b: &(ElementSet, ElementSet)) -> (ElementSet, ElementSet) {
        (a.0.intersection(&b.0), a.1.intersection(&b.1))
    }

    pub fn neg(a: &(ElementSet, ElementSet)) -> (ElementSet, ElementSet) {
        (a.1.complement(), a.0.complement())
    }

    pub fn l(a: &(ElementSet, ElementSet)) -> (ElementSet, ElementSet) {
        (a.0, a.0)
    }
}
