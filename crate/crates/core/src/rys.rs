//! Rough Y-systems over carriers of sets.
//!
//! An instance tabulates a parthood relation and a list of lower/upper
//! operator pairs over a finite carrier of [`ElementSet`]s, and answers
//! mereological queries, partial sums/products/differences, granule axioms
//! and mereology axioms by exhaustive quantification over the carrier.
//!
//! Everything is computed on carrier indices. The derived predicates use
//! bit matrices; partial operations are decided by comparing overlap or
//! down-set signatures, which makes the description operator exact.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::universe::{ElementSet, Universe};

/// A total map on sets used as an approximation operator.
pub type SetOp<'a> = Rc<dyn Fn(&ElementSet) -> ElementSet + 'a>;

/// Largest universe for which the full powerset is used as carrier.
pub const POWERSET_CAP: usize = 12;

/// How the empty set is treated when it belongs to the carrier.
///
/// `Object` keeps it as an ordinary object: it is part of everything and
/// therefore makes every pair overlap. `Excluded` removes it from every
/// quantifier range while keeping it as a possible value of operators and
/// of the partial operations (a mereological null).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NullPolicy {
    Object,
    #[default]
    Excluded,
}

/// How a shorter operator list is extended to match the longer one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    RepeatLast,
    Identity,
}

pub struct OpPair<'a> {
    pub name: String,
    pub lower: SetOp<'a>,
    pub upper: SetOp<'a>,
}

impl<'a> OpPair<'a> {
    pub fn new(
        name: impl Into<String>,
        lower: impl Fn(&ElementSet) -> ElementSet + 'a,
        upper: impl Fn(&ElementSet) -> ElementSet + 'a,
    ) -> Self {
        OpPair {
            name: name.into(),
            lower: Rc::new(lower),
            upper: Rc::new(upper),
        }
    }
}

/// Zips lower and upper operator lists, padding the shorter one.
pub fn pad_ops<'a>(
    lowers: Vec<(String, SetOp<'a>)>,
    uppers: Vec<(String, SetOp<'a>)>,
    padding: Padding,
) -> Vec<OpPair<'a>> {
    let n = lowers.len().max(uppers.len());
    let ident = || -> (String, SetOp<'a>) { ("id".to_string(), Rc::new(|x: &ElementSet| *x)) };
    let fill = |mut v: Vec<(String, SetOp<'a>)>| {
        while v.len() < n {
            let extra = match (padding, v.last()) {
                (Padding::RepeatLast, Some((name, f))) => (name.clone(), f.clone()),
                _ => ident(),
            };
            v.push(extra);
        }
        v
    };
    fill(lowers)
        .into_iter()
        .zip(fill(uppers))
        .map(|((ln, l), (un, u))| OpPair {
            name: format!("{ln}/{un}"),
            lower: l,
            upper: u,
        })
        .collect()
}

pub enum Parthood<'a> {
    Subset,
    Custom(Box<dyn Fn(&ElementSet, &ElementSet) -> bool + 'a>),
}

pub struct RysConfig<'a> {
    /// `None` means the full powerset of the universe.
    pub carrier: Option<Vec<ElementSet>>,
    pub parthood: Parthood<'a>,
    pub policy: NullPolicy,
    /// Defaults to a greatest element of the carrier when one exists.
    pub top: Option<ElementSet>,
}

impl Default for RysConfig<'_> {
    fn default() -> Self {
        RysConfig {
            carrier: None,
            parthood: Parthood::Subset,
            policy: NullPolicy::default(),
            top: None,
        }
    }
}

impl RysConfig<'_> {
    pub fn with_policy(policy: NullPolicy) -> Self {
        RysConfig {
            policy,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
struct BitMatrix {
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            words,
            data: vec![0; words * n],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }
}

fn and_row(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|w| *w == 0)
}

fn row_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Outcome of a partial operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partial {
    Defined(usize),
    Undefined,
    NotUnique(Vec<usize>),
}

impl Partial {
    pub fn defined(&self) -> Option<usize> {
        match self {
            Partial::Defined(i) => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mereo {
    /// Overlap.
    O,
    /// Underlap.
    U,
    /// Proper part.
    PP,
    /// Overcross.
    X,
    /// Proper overlap.
    PO,
}

/// Which of the five defining conditions failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RysCondition {
    Reflexive,
    Antisymmetric,
    Monotone,
    Inclusion,
    WeakTransitivity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: RysCondition,
    pub op: Option<usize>,
    pub objects: Vec<usize>,
}

/// A granule family: an ordered list of carrier indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GranuleSet {
    members: Vec<usize>,
}

impl GranuleSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

macro_rules! axiom_ids {
    ($($v:ident),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum AxiomId { $($v),* }

        impl AxiomId {
            pub const ALL: &'static [AxiomId] = &[$(AxiomId::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(AxiomId::$v => stringify!($v)),* }
            }
        }
    };
}

axiom_ids!(
    RA, WRA, SubRA, STRA, LRA, URA, LSRA, USRA, ACG, SCG, LACG, UACG, LSCG, USCG, MER, SMER, IMER, LMER,
    ILMER, UMER, LSMER, USMER, IUMER, LS, US, ST, LSS, USS, SST, NO, FU, LFU, SFU, LSFU, UU, PS, LI, UI, I,
);

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    /// Case-insensitive; also accepts the aliases `AS` (stability), `LU`
    /// (lower full underlap), `SRA` (sub representability) and `LCG`
    /// (lower crispness).
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let alias = match up.as_str() {
            "AS" => Some(AxiomId::ST),
            "LU" => Some(AxiomId::LFU),
            "SRA" => Some(AxiomId::SubRA),
            "LCG" => Some(AxiomId::LACG),
            _ => None,
        };
        alias
            .or_else(|| AxiomId::ALL.iter().copied().find(|a| a.name().to_ascii_uppercase() == up))
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MereologyAxiom {
    Transitivity,
    Supplementation,
    WeakSupplementation,
    P5,
    P6,
    P7,
    Top,
}

impl MereologyAxiom {
    pub const ALL: [MereologyAxiom; 7] = [
        MereologyAxiom::Transitivity,
        MereologyAxiom::Supplementation,
        MereologyAxiom::WeakSupplementation,
        MereologyAxiom::P5,
        MereologyAxiom::P6,
        MereologyAxiom::P7,
        MereologyAxiom::Top,
    ];
}

/// The quantifier-free matrix of an axiom instance. A witness case names
/// one of these together with the operator index and the objects that
/// falsify it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    LowerRep,
    UpperRep,
    LowerTerm,
    UpperTerm,
    Crisp,
    LowerCrisp,
    UpperCrisp,
    Mer,
    LowerMer,
    UpperMer,
    InwardMer,
    InwardLowerMer,
    InwardUpperMer,
    LowerStable,
    UpperStable,
    NoOverlap,
    FullUnderlap,
    LowerFullUnderlap,
    UniqueUnderlap,
    PreSimilar,
    LowerIdem,
    UpperIdem,
    Transitivity,
    Supplementation,
    WeakSupplementation,
    P5,
    P6,
    P7,
    Top,
    S5Dual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub clause: Clause,
    pub op: Option<usize>,
    pub objects: Vec<usize>,
}

/// For a universally quantified axiom the witness has one case; for an
/// axiom quantified by "for some operator" it has one case per operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            Verdict::Holds => None,
        }
    }

    fn single(c: Option<Case>) -> Verdict {
        match c {
            None => Verdict::Holds,
            Some(c) => Verdict::Fails(Witness { cases: vec![c] }),
        }
    }

    fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds => other(),
            f => f,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndiscKind {
    /// Same lower and upper images under operator `i`.
    Fixed(usize),
    /// Same images under some operator.
    Any,
    /// Same images under every operator.
    All,
    /// Same granules below both images of operator `i`.
    GranuleFixed(usize),
    GranuleAny,
    GranuleAll,
}

/// A binary relation on carrier indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierRelation {
    m: BitMatrixEq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMatrixEq {
    n: usize,
    data: Vec<bool>,
}

impl CarrierRelation {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.m.data[a * self.m.n + b]
    }

    pub fn size(&self) -> usize {
        self.m.n
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.m.n;
        (0..n * n).filter(|k| self.m.data[*k]).map(move |k| (k / n, k % n))
    }
}

/// Generator of the term field used for weak representability.
enum TermField {
    /// Atoms of the Boolean field of sets generated by the granules.
    Atoms(Vec<ElementSet>),
    /// Closure of the granules under the partial operations.
    Closure(Vec<bool>),
    Nothing,
}

pub struct RysInstance {
    universe: Arc<Universe>,
    elems: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    subset: bool,
    /// `up.get(x, y)` iff `P x y`.
    up: BitMatrix,
    /// `down.get(y, x)` iff `P x y`.
    down: BitMatrix,
    live: Vec<u64>,
    live_list: Vec<usize>,
    ops: Vec<(Vec<usize>, Vec<usize>)>,
    op_names: Vec<String>,
    top: Option<usize>,
    policy: NullPolicy,
    overlap: OnceLock<BitMatrix>,
    sum_index: OnceLock<HashMap<Vec<u64>, Vec<usize>>>,
    prod_index: OnceLock<HashMap<Vec<u64>, Vec<usize>>>,
}

impl fmt::Debug for RysInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RysInstance")
            .field("carrier", &self.elems.len())
            .field("ops", &self.op_names)
            .field("policy", &self.policy)
            .finish()
    }
}

impl RysInstance {
    /// Builds and validates the five defining conditions.
    pub fn new(universe: &Arc<Universe>, ops: Vec<OpPair<'_>>, cfg: RysConfig<'_>) -> Result<Self> {
        let r = Self::new_unvalidated(universe, ops, cfg)?;
        if let Err(v) = r.validate() {
            return Err(Error::Precondition(format!(
                "not a rough Y-system: {:?} fails{} at {}",
                v.condition,
                v.op.map(|i| format!(" for operator {}", r.op_names[i])).unwrap_or_default(),
                r.format_objects(&v.objects)
            )));
        }
        Ok(r)
    }

    /// Builds without checking the defining conditions, for operator
    /// families that are known to break them.
    pub fn new_unvalidated(universe: &Arc<Universe>, ops: Vec<OpPair<'_>>, cfg: RysConfig<'_>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::Precondition("at least one operator pair is required".into()));
        }
        let w = universe.len();
        let elems: Vec<ElementSet> = match cfg.carrier {
            Some(c) => c,
            None => {
                if w > POWERSET_CAP {
                    return Err(Error::SizeCap {
                        what: "powerset carrier universe",
                        size: w,
                        max: POWERSET_CAP,
                    });
                }
                ElementSet::all_subsets(w).collect()
            }
        };
        if elems.is_empty() {
            return Err(Error::Precondition("empty carrier".into()));
        }
        let mut index = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            if e.width() != w {
                return Err(Error::LengthMismatch { left: w, right: e.width() });
            }
            if index.insert(*e, i).is_some() {
                return Err(Error::Precondition(format!("carrier lists {} twice", universe.format_set(e))));
            }
        }
        let n = elems.len();
        let subset = matches!(cfg.parthood, Parthood::Subset);
        let p = |a: &ElementSet, b: &ElementSet| match &cfg.parthood {
            Parthood::Subset => a.is_subset(b),
            Parthood::Custom(f) => f(a, b),
        };
        let mut up = BitMatrix::new(n);
        let mut down = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                if p(&elems[x], &elems[y]) {
                    up.set(x, y);
                    down.set(y, x);
                }
            }
        }
        let null = match cfg.policy {
            NullPolicy::Excluded => index.get(&ElementSet::empty(w)).copied(),
            NullPolicy::Object => None,
        };
        let live_list: Vec<usize> = (0..n).filter(|i| Some(*i) != null).collect();
        let mut live = vec![0u64; n.div_ceil(64).max(1)];
        for &i in &live_list {
            live[i / 64] |= 1 << (i % 64);
        }
        let tab = |f: &SetOp<'_>| -> Result<Vec<usize>> {
            elems
                .iter()
                .map(|e| index.get(&f(e)).copied().ok_or(Error::ForeignObject))
                .collect()
        };
        let mut tabulated = Vec::new();
        let mut op_names = Vec::new();
        for op in &ops {
            tabulated.push((tab(&op.lower)?, tab(&op.upper)?));
            op_names.push(op.name.clone());
        }
        let top = match cfg.top {
            Some(t) => Some(*index.get(&t).ok_or(Error::ForeignObject)?),
            None => live_list.iter().copied().find(|&z| live_list.iter().all(|&x| up.get(x, z))),
        };
        Ok(RysInstance {
            universe: universe.clone(),
            elems,
            index,
            subset,
            up,
            down,
            live,
            live_list,
            ops: tabulated,
            op_names,
            top,
            policy: cfg.policy,
            overlap: OnceLock::new(),
            sum_index: OnceLock::new(),
            prod_index: OnceLock::new(),
        })
    }

    /// Checks the five defining conditions; the first failure is returned.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let all = 0..self.elems.len();
        let fail = |condition, op, objects| Err(Violation { condition, op, objects });
        for x in all.clone() {
            if !self.up.get(x, x) {
                return fail(RysCondition::Reflexive, None, vec![x]);
            }
            for y in x + 1..self.elems.len() {
                if self.up.get(x, y) && self.up.get(y, x) {
                    return fail(RysCondition::Antisymmetric, None, vec![x, y]);
                }
            }
        }
        for (i, (l, u)) in self.ops.iter().enumerate() {
            for x in all.clone() {
                if !self.up.get(l[x], x) || !self.up.get(x, u[x]) {
                    return fail(RysCondition::Inclusion, Some(i), vec![x]);
                }
                if self.up.get(u[x], l[x]) && !(l[x] == x && u[x] == x) {
                    return fail(RysCondition::WeakTransitivity, Some(i), vec![x]);
                }
                for y in all.clone() {
                    if self.up.get(x, y) && (!self.up.get(l[x], l[y]) || !self.up.get(u[x], u[y])) {
                        return fail(RysCondition::Monotone, Some(i), vec![x, y]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn object(&self, i: usize) -> ElementSet {
        self.elems[i]
    }

    pub fn index_of(&self, s: &ElementSet) -> Result<usize> {
        self.index.get(s).copied().ok_or(Error::ForeignObject)
    }

    pub fn op_count(&self) -> usize {
        self.ops.len()
    }

    pub fn op_name(&self, i: usize) -> &str {
        &self.op_names[i]
    }

    pub fn policy(&self) -> NullPolicy {
        self.policy
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    /// Carrier indices quantified over (the null object is absent under
    /// [`NullPolicy::Excluded`]).
    pub fn quantifier_range(&self) -> &[usize] {
        &self.live_list
    }

    pub fn lower(&self, i: usize, x: usize) -> usize {
        self.ops[i].0[x]
    }

    pub fn upper(&self, i: usize, x: usize) -> usize {
        self.ops[i].1[x]
    }

    pub fn format_object(&self, i: usize) -> String {
        self.universe.format_set(&self.elems[i])
    }

    pub fn format_objects(&self, v: &[usize]) -> String {
        v.iter().map(|&i| self.format_object(i)).collect::<Vec<_>>().join(", ")
    }

    /// Registers a granule family; every member must lie in the carrier.
    /// Repeated members are kept once, in first-seen order.
    pub fn granules(&self, sets: &[ElementSet]) -> Result<GranuleSet> {
        let mut members = Vec::new();
        for s in sets {
            let i = self.index_of(s)?;
            if !members.contains(&i) {
                members.push(i);
            }
        }
        Ok(GranuleSet { members })
    }

    pub fn part(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    fn masked(&self, row: &[u64]) -> Vec<u64> {
        and_row(row, &self.live)
    }

    fn overlap_matrix(&self) -> &BitMatrix {
        self.overlap.get_or_init(|| {
            let n = self.elems.len();
            let mut m = BitMatrix::new(n);
            let w = self.universe.len();
            if self.subset && w <= 20 {
                // has[m]: some quantified carrier object is a subset of m.
                let mut has = vec![false; 1 << w];
                for &i in &self.live_list {
                    has[self.elems[i].bits() as usize] = true;
                }
                for b in 0..w {
                    for mask in 0..(1usize << w) {
                        if mask >> b & 1 == 1 && has[mask & !(1 << b)] {
                            has[mask] = true;
                        }
                    }
                }
                for x in 0..n {
                    for y in x..n {
                        if has[(self.elems[x].bits() & self.elems[y].bits()) as usize] {
                            m.set(x, y);
                            m.set(y, x);
                        }
                    }
                }
            } else {
                for x in 0..n {
                    for y in x..n {
                        let both = and_row(self.down.row(x), self.down.row(y));
                        if !is_zero(&self.masked(&both)) {
                            m.set(x, y);
                            m.set(y, x);
                        }
                    }
                }
            }
            m
        })
    }

    pub fn overlaps(&self, x: usize, y: usize) -> bool {
        self.overlap_matrix().get(x, y)
    }

    pub fn underlaps(&self, x: usize, y: usize) -> bool {
        !is_zero(&self.masked(&and_row(self.up.row(x), self.up.row(y))))
    }

    pub fn mereo(&self, pred: Mereo, x: usize, y: usize) -> bool {
        match pred {
            Mereo::O => self.overlaps(x, y),
            Mereo::U => self.underlaps(x, y),
            Mereo::PP => self.part(x, y) && !self.part(y, x),
            Mereo::X => self.overlaps(x, y) && !self.part(x, y),
            Mereo::PO => self.mereo(Mereo::X, x, y) && self.mereo(Mereo::X, y, x),
        }
    }

    fn osig(&self, x: usize) -> Vec<u64> {
        self.masked(self.overlap_matrix().row(x))
    }

    fn dsig(&self, x: usize) -> Vec<u64> {
        self.masked(self.down.row(x))
    }

    fn sums(&self) -> &HashMap<Vec<u64>, Vec<usize>> {
        self.sum_index.get_or_init(|| {
            let mut m: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for z in 0..self.elems.len() {
                m.entry(self.osig(z)).or_default().push(z);
            }
            m
        })
    }

    fn prods(&self) -> &HashMap<Vec<u64>, Vec<usize>> {
        self.prod_index.get_or_init(|| {
            let mut m: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for z in 0..self.elems.len() {
                m.entry(self.dsig(z)).or_default().push(z);
            }
            m
        })
    }

    fn lookup(map: &HashMap<Vec<u64>, Vec<usize>>, key: &[u64]) -> Partial {
        match map.get(key).map(|v| v.as_slice()) {
            None | Some([]) => Partial::Undefined,
            Some([z]) => Partial::Defined(*z),
            Some(v) => Partial::NotUnique(v.to_vec()),
        }
    }

    /// Generalised sum of a finite family; the empty family sums to the
    /// object overlapping nothing, if there is exactly one.
    pub fn sum_of(&self, ys: &[usize]) -> Partial {
        let mut acc = vec![0u64; self.live.len()];
        for &y in ys {
            for (a, b) in acc.iter_mut().zip(self.osig(y)) {
                *a |= b;
            }
        }
        Self::lookup(self.sums(), &acc)
    }

    pub fn sum(&self, x: usize, y: usize) -> Partial {
        self.sum_of(&[x, y])
    }

    pub fn product(&self, x: usize, y: usize) -> Partial {
        Self::lookup(self.prods(), &and_row(&self.dsig(x), &self.dsig(y)))
    }

    pub fn difference(&self, x: usize, y: usize) -> Partial {
        let o = self.osig(y);
        let key: Vec<u64> = self.dsig(x).iter().zip(&o).map(|(d, o)| d & !o).collect();
        Self::lookup(self.prods(), &key)
    }

    /// Whether `t` is the sum of some subfamily of `g`.
    pub fn representable(&self, g: &GranuleSet, t: usize) -> bool {
        let target = self.osig(t);
        let mut acc = vec![0u64; target.len()];
        for &y in &g.members {
            let s = self.osig(y);
            if row_subset(&s, &target) {
                for (a, b) in acc.iter_mut().zip(s) {
                    *a |= b;
                }
            }
        }
        acc == target && Self::lookup(self.sums(), &target) == Partial::Defined(t)
    }

    fn term_field(&self, g: &GranuleSet) -> TermField {
        if g.is_empty() {
            return TermField::Nothing;
        }
        let w = self.universe.len();
        if self.subset {
            let mut atoms: Vec<ElementSet> = Vec::new();
            let mut seen = ElementSet::empty(w);
            for p in 0..w {
                if seen.contains(p) {
                    continue;
                }
                let sig = |q: usize| g.members.iter().map(move |&m| self.elems[m].contains(q));
                let atom = ElementSet::from_indices(w, (p..w).filter(|&q| sig(q).eq(sig(p))));
                seen = seen.union(&atom);
                atoms.push(atom);
            }
            return TermField::Atoms(atoms);
        }
        let n = self.elems.len();
        let mut inside = vec![false; n];
        let mut list: Vec<usize> = Vec::new();
        for &m in &g.members {
            if !inside[m] {
                inside[m] = true;
                list.push(m);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = list.clone();
            let mut add = |z: Partial, list: &mut Vec<usize>| {
                if let Partial::Defined(z) = z {
                    if !inside[z] {
                        inside[z] = true;
                        list.push(z);
                        changed = true;
                    }
                }
            };
            for &a in &snapshot {
                if let Some(t) = self.top {
                    add(self.difference(t, a), &mut list);
                }
                for &b in &snapshot {
                    add(self.sum(a, b), &mut list);
                    add(self.product(a, b), &mut list);
                }
            }
        }
        TermField::Closure(inside)
    }

    fn in_field(&self, f: &TermField, t: usize) -> bool {
        match f {
            TermField::Nothing => false,
            TermField::Closure(v) => v[t],
            TermField::Atoms(atoms) => {
                let s = &self.elems[t];
                atoms.iter().all(|a| a.is_subset(s) || !a.meets(s))
            }
        }
    }

    fn crisp(&self, i: usize, x: usize, lower: bool, upper: bool) -> bool {
        (!lower || self.lower(i, x) == x) && (!upper || self.upper(i, x) == x)
    }

    /// Evaluates the matrix of an axiom at one instance. A witness case is
    /// confirmed when this returns `false`.
    pub fn clause_holds(&self, g: &GranuleSet, clause: Clause, op: Option<usize>, o: &[usize]) -> bool {
        use Clause::*;
        let i = op.unwrap_or(0);
        let pp = |a, b| self.mereo(Mereo::PP, a, b);
        let all_ops = 0..self.ops.len();
        let inward = |x: usize, lo: bool, hi: bool| all_ops.clone().all(|j| self.crisp(j, x, lo, hi));
        match clause {
            LowerRep => self.representable(g, self.lower(i, o[0])),
            UpperRep => self.representable(g, self.upper(i, o[0])),
            LowerTerm => self.in_field(&self.term_field(g), self.lower(i, o[0])),
            UpperTerm => self.in_field(&self.term_field(g), self.upper(i, o[0])),
            Crisp => self.crisp(i, o[0], true, true),
            LowerCrisp => self.crisp(i, o[0], true, false),
            UpperCrisp => self.crisp(i, o[0], false, true),
            Mer => !(self.part(o[1], o[0]) && self.crisp(i, o[1], true, true)) || o[0] == o[1],
            LowerMer => !(self.part(o[1], o[0]) && self.crisp(i, o[1], true, false)) || o[0] == o[1],
            UpperMer => !(self.part(o[1], o[0]) && self.crisp(i, o[1], false, true)) || o[0] == o[1],
            InwardMer => !(self.part(o[1], o[0]) && inward(o[1], true, true)) || o[0] == o[1],
            InwardLowerMer => !(self.part(o[1], o[0]) && inward(o[1], true, false)) || o[0] == o[1],
            InwardUpperMer => !(self.part(o[1], o[0]) && inward(o[1], false, true)) || o[0] == o[1],
            LowerStable => !self.part(o[0], o[1]) || self.part(o[0], self.lower(i, o[1])),
            UpperStable => !self.overlaps(o[0], o[1]) || self.part(o[0], self.upper(i, o[1])),
            NoOverlap => !self.mereo(Mereo::PO, o[0], o[1]),
            FullUnderlap | LowerFullUnderlap => {
                let hi = clause == FullUnderlap;
                self.live_list
                    .iter()
                    .any(|&z| pp(o[0], z) && pp(o[1], z) && self.crisp(i, z, true, hi))
            }
            UniqueUnderlap => {
                let ok = |z| pp(o[0], z) && pp(o[1], z) && self.crisp(i, z, true, true);
                !(ok(o[2]) && ok(o[3])) || o[2] == o[3]
            }
            PreSimilar => match self.product(o[0], o[1]) {
                Partial::Defined(p) => g.members.iter().any(|&z| self.part(p, z)),
                _ => false,
            },
            LowerIdem => {
                let l = self.lower(i, o[0]);
                self.lower(i, l) == l
            }
            UpperIdem => {
                let u = self.upper(i, o[0]);
                self.upper(i, u) == u
            }
            Transitivity => !(self.part(o[0], o[1]) && self.part(o[1], o[2])) || self.part(o[0], o[2]),
            Supplementation => {
                self.part(o[0], o[1])
                    || self.live_list.iter().any(|&z| self.part(z, o[0]) && !self.overlaps(z, o[1]))
            }
            WeakSupplementation => {
                self.part(o[0], o[1])
                    || self
                        .live_list
                        .iter()
                        .any(|&z| self.part(z, o[0]) && !self.mereo(Mereo::PO, z, o[1]))
            }
            P5 => {
                !self.underlaps(o[0], o[1]) || {
                    let target: Vec<u64> = self.osig(o[0]).iter().zip(self.osig(o[1])).map(|(a, b)| a | b).collect();
                    self.live_list.iter().any(|&z| self.osig(z) == target)
                }
            }
            P6 => {
                !self.overlaps(o[0], o[1]) || {
                    let target = and_row(&self.dsig(o[0]), &self.dsig(o[1]));
                    self.live_list.iter().any(|&z| self.dsig(z) == target)
                }
            }
            P7 => {
                let premise = self
                    .live_list
                    .iter()
                    .any(|&z| self.part(z, o[0]) && !self.overlaps(z, o[1]));
                !premise || {
                    let ov = self.osig(o[1]);
                    let target: Vec<u64> = self.dsig(o[0]).iter().zip(&ov).map(|(d, v)| d & !v).collect();
                    self.live_list.iter().any(|&z| self.dsig(z) == target)
                }
            }
            Top => self.top_exists(),
            S5Dual => {
                let (l, u) = (self.lower(i, o[0]), self.upper(i, o[0]));
                self.lower(i, u) == u && self.upper(i, l) == l
            }
        }
    }

    fn top_exists(&self) -> bool {
        self.live_list
            .iter()
            .any(|&z| self.live_list.iter().all(|&x| self.part(x, z)))
    }

    /// Re-evaluates every case of a witness; `true` when each case indeed
    /// falsifies its clause.
    pub fn recheck(&self, g: &GranuleSet, w: &Witness) -> bool {
        !w.cases.is_empty() && w.cases.iter().all(|c| !self.clause_holds(g, c.clause, c.op, &c.objects))
    }

    fn first_case(
        &self,
        g: &GranuleSet,
        clause: Clause,
        op: Option<usize>,
        tuples: impl Iterator<Item = Vec<usize>>,
    ) -> Option<Case> {
        for objects in tuples {
            if !self.clause_holds(g, clause, op, &objects) {
                return Some(Case { clause, op, objects });
            }
        }
        None
    }

    fn over_x(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.live_list.iter().map(|&x| vec![x])
    }

    fn over_g<'b>(&'b self, g: &'b GranuleSet) -> impl Iterator<Item = Vec<usize>> + 'b {
        g.members.iter().map(|&y| vec![y])
    }

    fn over_gx<'b>(&'b self, g: &'b GranuleSet) -> impl Iterator<Item = Vec<usize>> + 'b {
        g.members
            .iter()
            .flat_map(move |&y| self.live_list.iter().map(move |&x| vec![y, x]))
    }

    fn over_gg<'b>(&'b self, g: &'b GranuleSet) -> impl Iterator<Item = Vec<usize>> + 'b {
        g.members
            .iter()
            .flat_map(move |&x| g.members.iter().map(move |&y| vec![x, y]))
    }

    /// First failing instance of a per-operator clause group at operator `i`.
    fn op_case(&self, g: &GranuleSet, group: Group, i: usize) -> Option<Case> {
        use Clause::*;
        let op = Some(i);
        let one = |c: Clause, t: Box<dyn Iterator<Item = Vec<usize>> + '_>| self.first_case(g, c, op, t);
        match group {
            Group::Rep(lo, hi) => {
                let a = if lo { one(LowerRep, Box::new(self.over_x())) } else { None };
                a.or_else(|| if hi { one(UpperRep, Box::new(self.over_x())) } else { None })
            }
            Group::Term => {
                let f = self.term_field(g);
                for &x in &self.live_list {
                    if !self.in_field(&f, self.lower(i, x)) {
                        return Some(Case { clause: LowerTerm, op, objects: vec![x] });
                    }
                    if !self.in_field(&f, self.upper(i, x)) {
                        return Some(Case { clause: UpperTerm, op, objects: vec![x] });
                    }
                }
                None
            }
            Group::Single(c) => match c {
                Crisp | LowerCrisp | UpperCrisp | LowerIdem | UpperIdem => one(c, Box::new(self.over_g(g))),
                Mer | LowerMer | UpperMer | LowerStable | UpperStable => one(c, Box::new(self.over_gx(g))),
                FullUnderlap | LowerFullUnderlap => one(c, Box::new(self.over_gg(g))),
                S5Dual => one(c, Box::new(self.over_x())),
                UniqueUnderlap => {
                    for t in self.over_gg(g) {
                        let zs: Vec<usize> = self
                            .live_list
                            .iter()
                            .copied()
                            .filter(|&z| {
                                self.mereo(Mereo::PP, t[0], z) && self.mereo(Mereo::PP, t[1], z) && self.crisp(i, z, true, true)
                            })
                            .take(2)
                            .collect();
                        if zs.len() == 2 {
                            return Some(Case { clause: c, op, objects: vec![t[0], t[1], zs[0], zs[1]] });
                        }
                    }
                    None
                }
                _ => unreachable!("not a per-operator clause"),
            },
            Group::Both(a, b) => self.op_case(g, Group::Single(a), i).or_else(|| self.op_case(g, Group::Single(b), i)),
        }
    }

    fn for_all_ops(&self, g: &GranuleSet, group: Group) -> Verdict {
        Verdict::single((0..self.ops.len()).find_map(|i| self.op_case(g, group, i)))
    }

    fn for_some_op(&self, g: &GranuleSet, group: Group) -> Verdict {
        let mut cases = Vec::new();
        for i in 0..self.ops.len() {
            match self.op_case(g, group, i) {
                None => return Verdict::Holds,
                Some(c) => cases.push(c),
            }
        }
        Verdict::Fails(Witness { cases })
    }

    fn whole(&self, g: &GranuleSet, clause: Clause) -> Verdict {
        let tuples: Box<dyn Iterator<Item = Vec<usize>>> = match clause {
            Clause::NoOverlap | Clause::PreSimilar => Box::new(self.over_gg(g)),
            _ => Box::new(self.over_gx(g)),
        };
        Verdict::single(self.first_case(g, clause, None, tuples))
    }

    pub fn check_axiom(&self, g: &GranuleSet, axiom: AxiomId) -> Verdict {
        use AxiomId::*;
        use Clause as C;
        let all = |gr| self.for_all_ops(g, gr);
        let some = |gr| self.for_some_op(g, gr);
        let s = Group::Single;
        match axiom {
            RA => all(Group::Rep(true, true)),
            WRA => all(Group::Term),
            SubRA => some(Group::Rep(true, true)),
            STRA => some(Group::Term),
            LRA => all(Group::Rep(true, false)),
            URA => all(Group::Rep(false, true)),
            LSRA => some(Group::Rep(true, false)),
            USRA => some(Group::Rep(false, true)),
            ACG => all(s(C::Crisp)),
            SCG => some(s(C::Crisp)),
            LACG => all(s(C::LowerCrisp)),
            UACG => all(s(C::UpperCrisp)),
            LSCG => some(s(C::LowerCrisp)),
            USCG => some(s(C::UpperCrisp)),
            MER => all(s(C::Mer)),
            SMER => some(s(C::Mer)),
            IMER => self.whole(g, C::InwardMer),
            LMER => all(s(C::LowerMer)),
            ILMER => self.whole(g, C::InwardLowerMer),
            UMER => all(s(C::UpperMer)),
            LSMER => some(s(C::LowerMer)),
            USMER => some(s(C::UpperMer)),
            IUMER => self.whole(g, C::InwardUpperMer),
            LS => all(s(C::LowerStable)),
            US => all(s(C::UpperStable)),
            ST => all(s(C::LowerStable)).and(|| all(s(C::UpperStable))),
            LSS => some(s(C::LowerStable)),
            USS => some(s(C::UpperStable)),
            SST => some(s(C::LowerStable)).and(|| some(s(C::UpperStable))),
            NO => self.whole(g, C::NoOverlap),
            FU => all(s(C::FullUnderlap)),
            LFU => all(s(C::LowerFullUnderlap)),
            SFU => some(s(C::FullUnderlap)),
            LSFU => some(s(C::LowerFullUnderlap)),
            UU => some(s(C::UniqueUnderlap)),
            PS => self.whole(g, C::PreSimilar),
            LI => all(s(C::LowerIdem)),
            UI => all(s(C::UpperIdem)),
            I => all(Group::Both(C::LowerIdem, C::UpperIdem)),
        }
    }

    pub fn check_all(&self, g: &GranuleSet) -> Vec<(AxiomId, Verdict)> {
        AxiomId::ALL.iter().map(|&a| (a, self.check_axiom(g, a))).collect()
    }

    pub fn check_mereology(&self, axiom: MereologyAxiom) -> Verdict {
        let g = GranuleSet { members: Vec::new() };
        let live = &self.live_list;
        let pairs = || live.iter().flat_map(move |&x| live.iter().map(move |&y| vec![x, y]));
        let clause = match axiom {
            MereologyAxiom::Transitivity => {
                let triples = pairs().flat_map(move |p| live.iter().map(move |&z| vec![p[0], p[1], z]));
                return Verdict::single(self.first_case(&g, Clause::Transitivity, None, triples));
            }
            MereologyAxiom::Top => {
                return Verdict::single(
                    (!self.top_exists()).then_some(Case { clause: Clause::Top, op: None, objects: vec![] }),
                )
            }
            MereologyAxiom::Supplementation => Clause::Supplementation,
            MereologyAxiom::WeakSupplementation => Clause::WeakSupplementation,
            MereologyAxiom::P5 => Clause::P5,
            MereologyAxiom::P6 => Clause::P6,
            MereologyAxiom::P7 => Clause::P7,
        };
        Verdict::single(self.first_case(&g, clause, None, pairs()))
    }

    /// Whether operator pair `i` satisfies `A^{ul} = A^u` and `A^{lu} = A^l`.
    pub fn s5_dual(&self, i: usize) -> Verdict {
        let g = GranuleSet { members: Vec::new() };
        Verdict::single(self.op_case(&g, Group::Single(Clause::S5Dual), i))
    }

    /// Granules that satisfy weak representability, lower stability and
    /// lower full underlap.
    pub fn admissible(&self, g: &GranuleSet) -> bool {
        [AxiomId::WRA, AxiomId::LS, AxiomId::LFU]
            .iter()
            .all(|&a| self.check_axiom(g, a).holds())
    }

    pub fn indisc(&self, g: &GranuleSet, kind: IndiscKind) -> Result<CarrierRelation> {
        let n = self.elems.len();
        let k = self.ops.len();
        let check_i = |i: usize| {
            if i < k {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index: i, len: k })
            }
        };
        if let IndiscKind::Fixed(i) | IndiscKind::GranuleFixed(i) = kind {
            check_i(i)?;
        }
        let same = |i: usize, x: usize, y: usize| self.lower(i, x) == self.lower(i, y) && self.upper(i, x) == self.upper(i, y);
        let below = |a: usize| -> Vec<bool> { g.members.iter().map(|&m| self.part(m, a)).collect() };
        let gsame = |i: usize, x: usize, y: usize| {
            below(self.lower(i, x)) == below(self.lower(i, y)) && below(self.upper(i, x)) == below(self.upper(i, y))
        };
        let mut data = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                data[x * n + y] = match kind {
                    IndiscKind::Fixed(i) => same(i, x, y),
                    IndiscKind::Any => (0..k).any(|i| same(i, x, y)),
                    IndiscKind::All => (0..k).all(|i| same(i, x, y)),
                    IndiscKind::GranuleFixed(i) => gsame(i, x, y),
                    IndiscKind::GranuleAny => (0..k).any(|i| gsame(i, x, y)),
                    IndiscKind::GranuleAll => (0..k).all(|i| gsame(i, x, y)),
                };
            }
        }
        Ok(CarrierRelation {
            m: BitMatrixEq { n, data },
        })
    }

    pub fn describe_case(&self, c: &Case) -> String {
        let op = c.op.map(|i| format!(" [{}]", self.op_names[i])).unwrap_or_default();
        format!("{:?}{} at ({})", c.clause, op, self.format_objects(&c.objects))
    }

    pub fn describe(&self, v: &Verdict) -> String {
        match v {
            Verdict::Holds => "holds".to_string(),
            Verdict::Fails(w) => format!(
                "fails: {}",
                w.cases.iter().map(|c| self.describe_case(c)).collect::<Vec<_>>().join("; ")
            ),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Group {
    Rep(bool, bool),
    Term,
    Single(Clause),
    Both(Clause, Clause),
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rel_approx::{ApproxSpace, Dir, ToleranceOp};
    use crate::{ClosureKinds, Relation};
    use proptest::prelude::*;

    fn uni(n: usize) -> Arc<Universe> {
        Universe::anonymous(n).unwrap()
    }

    fn ident_pair<'a>() -> OpPair<'a> {
        OpPair::new("id", |x: &ElementSet| *x, |x: &ElementSet| *x)
    }

    pub(crate) fn classical_rys(rel: &Relation, policy: NullPolicy) -> (RysInstance, GranuleSet) {
        let sp = ApproxSpace::equivalence(rel.clone()).unwrap();
        let ops = vec![OpPair::new(
            "classical",
            |x: &ElementSet| sp.classical(x, Dir::Lower).unwrap(),
            |x: &ElementSet| sp.classical(x, Dir::Upper).unwrap(),
        )];
        let r = RysInstance::new(rel.universe(), ops, RysConfig::with_policy(policy)).unwrap();
        let g = r.granules(&rel.partition_classes().unwrap()).unwrap();
        (r, g)
    }

    fn three_classes() -> Relation {
        let u = uni(5);
        Relation::from_pairs(&u, [(0, 1), (2, 3)]).closure(ClosureKinds::EQUIVALENCE)
    }

    #[test]
    fn mereo_with_and_without_null() {
        let u = uni(3);
        let r = RysInstance::new(&u, vec![ident_pair()], RysConfig::with_policy(NullPolicy::Object)).unwrap();
        let s = |b| r.index_of(&ElementSet::from_bits(3, b)).unwrap();
        assert!(r.overlaps(s(1), s(2)));
        assert!(r.mereo(Mereo::PP, s(1), s(3)));
        assert!(!r.mereo(Mereo::PP, s(3), s(3)));
        let carrier: Vec<ElementSet> = (1..8).map(|b| ElementSet::from_bits(3, b)).collect();
        let r2 = RysInstance::new(
            &u,
            vec![ident_pair()],
            RysConfig { carrier: Some(carrier), ..Default::default() },
        )
        .unwrap();
        let t = |b| r2.index_of(&ElementSet::from_bits(3, b)).unwrap();
        assert!(!r2.overlaps(t(1), t(2)));
        assert!(r2.overlaps(t(3), t(6)));
        assert!(r2.mereo(Mereo::PO, t(3), t(6)));
        assert!(r2.underlaps(t(1), t(2)));
    }

    #[test]
    fn partial_operations_on_restricted_carriers() {
        let u = uni(3);
        let carrier: Vec<ElementSet> = [1u64, 2, 4, 6].iter().map(|b| ElementSet::from_bits(3, *b)).collect();
        let r = RysInstance::new(
            &u,
            vec![ident_pair()],
            RysConfig { carrier: Some(carrier), ..Default::default() },
        )
        .unwrap();
        let t = |b| r.index_of(&ElementSet::from_bits(3, b)).unwrap();
        // {0} ∪ {1} is missing from the carrier.
        assert_eq!(r.sum(t(1), t(2)), Partial::Undefined);
        assert_eq!(r.sum(t(2), t(4)), Partial::Defined(t(6)));
        assert_eq!(r.product(t(1), t(2)), Partial::Undefined);
        assert_eq!(r.product(t(6), t(2)), Partial::Defined(t(2)));
        assert_eq!(r.difference(t(6), t(4)), Partial::Defined(t(2)));
    }

    #[test]
    fn null_as_value_under_exclusion() {
        let u = uni(3);
        let r = RysInstance::new(&u, vec![ident_pair()], RysConfig::default()).unwrap();
        let t = |b| r.index_of(&ElementSet::from_bits(3, b)).unwrap();
        assert_eq!(r.product(t(1), t(2)), Partial::Defined(t(0)));
        assert_eq!(r.sum_of(&[]), Partial::Defined(t(0)));
        assert!(!r.overlaps(t(0), t(7)));
        assert!(!r.quantifier_range().contains(&t(0)));
    }

    fn brute_sum(r: &RysInstance, x: usize, y: usize) -> Vec<usize> {
        (0..r.len())
            .filter(|&z| {
                r.quantifier_range()
                    .iter()
                    .all(|&w| r.overlaps(w, z) == (r.overlaps(w, x) || r.overlaps(w, y)))
            })
            .collect()
    }

    proptest! {
        #[test]
        fn sums_are_unions_without_null(n in 1usize..5, a in any::<u64>(), b in any::<u64>()) {
            let u = uni(n);
            let carrier: Vec<ElementSet> = (1..1u64 << n).map(|m| ElementSet::from_bits(n, m)).collect();
            let r = RysInstance::new(&u, vec![ident_pair()], RysConfig { carrier: Some(carrier), ..Default::default() }).unwrap();
            let x = ElementSet::from_bits(n, a);
            let y = ElementSet::from_bits(n, b);
            prop_assume!(!x.is_empty() && !y.is_empty());
            let (xi, yi) = (r.index_of(&x).unwrap(), r.index_of(&y).unwrap());
            let expect = r.index_of(&x.union(&y)).unwrap();
            prop_assert_eq!(brute_sum(&r, xi, yi), vec![expect]);
            prop_assert_eq!(r.sum(xi, yi), Partial::Defined(expect));
        }
    }

    #[test]
    fn s5_duality() {
        let (r, _) = classical_rys(&three_classes(), NullPolicy::Object);
        assert!(r.s5_dual(0).holds());
        let u = uni(3);
        let id = RysInstance::new(&u, vec![ident_pair()], RysConfig::default()).unwrap();
        assert!(id.s5_dual(0).holds());
        let path = Relation::from_pairs(&u, [(0, 1), (1, 2)]).closure(ClosureKinds::TOLERANCE);
        let sp = ApproxSpace::tolerance(path).unwrap();
        let ops = vec![OpPair::new(
            "T",
            |x: &ElementSet| sp.tolerance_ops(x, ToleranceOp::LT).unwrap(),
            |x: &ElementSet| sp.tolerance_ops(x, ToleranceOp::UT).unwrap(),
        )];
        let t = RysInstance::new(&u, ops, RysConfig::default()).unwrap();
        let v = t.s5_dual(0);
        assert!(!v.holds());
        assert!(t.recheck(&t.granules(&[]).unwrap(), v.witness().unwrap()));
    }

    #[test]
    fn classical_granule_axioms() {
        let (r, g) = classical_rys(&three_classes(), NullPolicy::Excluded);
        for a in ["RA", "ACG", "MER", "AS", "FU", "NO", "PS", "WRA", "LS", "LFU"] {
            let v = r.check_axiom(&g, a.parse().unwrap());
            assert!(v.holds(), "{a}: {}", r.describe(&v));
        }
        let uu = r.check_axiom(&g, AxiomId::UU);
        assert!(!uu.holds());
        assert!(r.recheck(&g, uu.witness().unwrap()));
        assert!(r.admissible(&g));
    }

    /// Pseudo-classes of a partial equivalence are pairwise disjoint, so
    /// they are always crisp: an exhaustive sweep finds no ACG failure.
    #[test]
    fn esoteric_pseudo_classes_are_always_crisp() {
        for n in 1..=4usize {
            let u = uni(n);
            for mask in 0u32..(1 << (n * n)) {
                let pairs = (0..n * n).filter(|k| mask >> k & 1 == 1).map(|k| (k / n, k % n));
                let rel = Relation::from_pairs(&u, pairs);
                if !rel.is_partial_equivalence() {
                    continue;
                }
                let sp = ApproxSpace::partial_equivalence(rel.clone()).unwrap();
                let ops = vec![OpPair::new(
                    "esoteric",
                    |x: &ElementSet| sp.esoteric(x, Dir::Lower).unwrap(),
                    |x: &ElementSet| sp.esoteric(x, Dir::Upper).unwrap(),
                )];
                let r = RysInstance::new_unvalidated(&u, ops, RysConfig::default()).unwrap();
                let g = r.granules(&(0..n).map(|x| rel.row(x)).collect::<Vec<_>>()).unwrap();
                assert!(r.check_axiom(&g, AxiomId::ACG).holds());
            }
        }
    }

    #[test]
    fn mereology_on_powersets() {
        let u = uni(3);
        let r = RysInstance::new(&u, vec![ident_pair()], RysConfig::with_policy(NullPolicy::Object)).unwrap();
        for a in [MereologyAxiom::Transitivity, MereologyAxiom::P5, MereologyAxiom::P6, MereologyAxiom::Top] {
            assert!(r.check_mereology(a).holds(), "{a:?}");
        }
        let (c, _) = classical_rys(&three_classes(), NullPolicy::Object);
        let v = c.check_mereology(MereologyAxiom::Supplementation);
        assert!(!v.holds());
        assert!(c.check_mereology(MereologyAxiom::WeakSupplementation).holds());
        let (e, _) = classical_rys(&three_classes(), NullPolicy::Excluded);
        assert!(e.check_mereology(MereologyAxiom::Supplementation).holds());
        let single = RysInstance::new(
            &u,
            vec![ident_pair()],
            RysConfig { carrier: Some(vec![u.full_set()]), ..Default::default() },
        )
        .unwrap();
        for a in MereologyAxiom::ALL {
            assert!(single.check_mereology(a).holds(), "{a:?}");
        }
    }

    #[test]
    fn admissibility_edge_cases() {
        let (r, _) = classical_rys(&three_classes(), NullPolicy::Excluded);
        let whole = r.granules(&[r.universe().full_set()]).unwrap();
        assert!(!r.admissible(&whole));
        let none = r.granules(&[]).unwrap();
        assert!(!r.admissible(&none));
        assert!(!r.check_axiom(&none, AxiomId::WRA).holds());
    }

    #[test]
    fn indiscernibility_kinds() {
        let (r, g) = classical_rys(&three_classes(), NullPolicy::Excluded);
        let fixed = r.indisc(&g, IndiscKind::Fixed(0)).unwrap();
        let any = r.indisc(&g, IndiscKind::Any).unwrap();
        let all = r.indisc(&g, IndiscKind::All).unwrap();
        assert_eq!(fixed, any);
        assert_eq!(any, all);
        assert_eq!(fixed, r.indisc(&g, IndiscKind::GranuleFixed(0)).unwrap());
        for (x, y) in fixed.pairs() {
            assert_eq!(r.lower(0, x), r.lower(0, y));
        }
        assert!(r.indisc(&g, IndiscKind::Fixed(3)).is_err());
    }

    #[test]
    fn axiom_names_parse() {
        assert_eq!("as".parse::<AxiomId>().unwrap(), AxiomId::ST);
        assert_eq!("LU".parse::<AxiomId>().unwrap(), AxiomId::LFU);
        assert_eq!("SRA".parse::<AxiomId>().unwrap(), AxiomId::SubRA);
        assert_eq!("subra".parse::<AxiomId>().unwrap(), AxiomId::SubRA);
        assert!("XYZ".parse::<AxiomId>().is_err());
        for a in AxiomId::ALL {
            assert_eq!(a.to_string().parse::<AxiomId>().unwrap(), *a);
        }
    }

    #[test]
    fn validation_rejects_non_inclusive_ops() {
        let u = uni(2);
        let bad = vec![OpPair::new("bad", |_x: &ElementSet| ElementSet::full(2), |x: &ElementSet| *x)];
        assert!(RysInstance::new(&u, bad, RysConfig::default()).is_err());
    }

    #[test]
    fn padding_extends_shorter_list() {
        let l: Vec<(String, SetOp)> = vec![("a".into(), Rc::new(|x: &ElementSet| *x))];
        let us: Vec<(String, SetOp)> = vec![
            ("b".into(), Rc::new(|x: &ElementSet| *x)),
            ("c".into(), Rc::new(|x: &ElementSet| *x)),
        ];
        let p = pad_ops(l.clone(), us.clone(), Padding::RepeatLast);
        assert_eq!(p.iter().map(|o| o.name.clone()).collect::<Vec<_>>(), ["a/b", "a/c"]);
        let q = pad_ops(l, us, Padding::Identity);
        assert_eq!(q[1].name, "id/c");
    }

    fn random_instance(n: usize, seed: u64, kgran: usize) -> (RysInstance, GranuleSet) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = uni(n);
        let mut blocks: Vec<ElementSet> = (0..3).map(|_| ElementSet::from_bits(n, rng.gen::<u64>())).collect();
        for i in 0..n {
            if rng.gen_bool(0.5) {
                blocks.push(ElementSet::singleton(n, i));
            }
        }
        blocks.retain(|b| !b.is_empty());
        let cs = crate::cover::CoverSystem::from_sets(&u, blocks.clone()).unwrap();
        use crate::cover::Auai;
        let cs2 = cs.clone();
        let ops = vec![
            OpPair::new("l1/u1", move |x: &ElementSet| cs.auai(x, Auai::L1), {
                let c = cs2.clone();
                move |x: &ElementSet| c.auai(x, Auai::U1)
            }),
            OpPair::new("l2/u2", {
                let c = cs2.clone();
                move |x: &ElementSet| c.auai(x, Auai::L2)
            }, move |x: &ElementSet| cs2.auai(x, Auai::U2)),
        ];
        let r = RysInstance::new_unvalidated(&u, ops, RysConfig::default()).unwrap();
        let gran: Vec<ElementSet> = blocks.into_iter().take(kgran.max(1)).collect();
        let g = r.granules(&gran).unwrap();
        (r, g)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn implication_lattice_and_witnesses(n in 1usize..5, seed in any::<u64>(), k in 1usize..5) {
            let (r, g) = random_instance(n, seed, k);
            let h = |a: AxiomId| r.check_axiom(&g, a);
            for (p, c) in [
                (AxiomId::RA, AxiomId::WRA),
                (AxiomId::ACG, AxiomId::SCG),
                (AxiomId::MER, AxiomId::SMER),
                (AxiomId::MER, AxiomId::IMER),
                (AxiomId::FU, AxiomId::LFU),
            ] {
                if h(p).holds() { prop_assert!(h(c).holds(), "{} without {}", p, c); }
            }
            for (a, v) in r.check_all(&g) {
                if let Verdict::Fails(w) = v {
                    prop_assert!(r.recheck(&g, &w), "witness for {} not confirmed", a);
                }
            }
        }
    }
}
