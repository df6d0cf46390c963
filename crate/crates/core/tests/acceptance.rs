//! Acceptance run: nine criteria, each timed against its budget. Prints one
//! PASS/FAIL line per criterion (plus indented notes) and exits non-zero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rough_core::cipca::{build_cipca, ipc_semilinear, SemiLinear};
use rough_core::counting::{count_preceq, granules_from_count, max_ipc_order, Count, CountedSequence, Scheme, Token};
use rough_core::cover::Auai;
use rough_core::fuzzy::{construction1, reverse_transform, FuzzySet};
use rough_core::measures;
use rough_core::roughnat::{compatibility_laws, otimes_laws, ripcna_laws, run_laws, zeta_fragment};
use rough_core::rys::AxiomId;
use rough_core::theorems::{check_theorem, example_cover, theorem, Setting, COUNTING_UNIVERSE};
use rough_core::{ClosureKinds, CoverSystem, ElementSet, Ratio, Relation, Universe};

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(format!("violated: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn equivalence_from_labels(u: &std::sync::Arc<Universe>, labels: &[usize]) -> Relation {
    let n = labels.len();
    Relation::from_pairs(u, (0..n).cartesian_product(0..n).filter(|&(x, y)| labels[x] == labels[y]))
}

fn random_equivalence(n: usize, rng: &mut impl Rng) -> Relation {
    let u = Universe::anonymous(n).unwrap();
    let k = rng.gen_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    equivalence_from_labels(&u, &labels)
}

fn random_set(n: usize, rng: &mut impl Rng) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

/// Restricted growth strings: every set partition of `0..n` exactly once.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max {
            cur.push(l);
            go(n, cur, max.max(l + 1), out);
            cur.pop();
        }
    }
    go(n, &mut cur, 0, &mut out);
    out
}

fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort_by_key(|s| s.bits());
    v
}

// ---------------------------------------------------------------- 1

fn cover_example() -> Outcome {
    let mut o = Outcome::new();
    let cs = example_cover();
    let u = cs.universe().clone();
    let set = |s: &str| u.parse_set(s).unwrap();
    // element, Fr, Md, nbd as printed
    let table: [(&str, &str, &[&str], &str); 9] = [
        ("a", "{a, b, c, e, f, g, j}", &["K1", "K2", "K3"], "{a}"),
        ("b", "{a, b, f}", &["K3"], "{b}"),
        ("c", "{a, c, e}", &["K2"], "{a, c, e}"),
        ("e", "{a, c, e}", &["K2"], "{a, c, e}"),
        ("f", "{a, b, f, g, h, j}", &["K3", "K8"], "{f}"),
        ("g", "{a, f, g, h, j}", &["K8"], "{f, g}"),
        ("h", "{f, g, h}", &["K5"], "{f, g, h}"),
        ("i", "{i}", &["K6"], "{i}"),
        ("j", "{a, f, g, j}", &["K4"], "{j}"),
    ];
    let mut diverging = Vec::new();
    for (x, fr, md, nbd) in table {
        let i = u.index_of(x).unwrap();
        o.check(cs.friends(i).unwrap() == set(fr), format!("Fr({x})"));
        o.check(cs.nbd(i).unwrap() == set(nbd), format!("nbd({x})"));
        // minimality oracle: blocks containing x with no block containing x strictly inside
        let holding: Vec<usize> = (0..cs.blocks().len()).filter(|&k| cs.blocks()[k].contains(i)).collect();
        let oracle: Vec<String> = holding
            .iter()
            .filter(|&&k| !holding.iter().any(|&m| cs.blocks()[m].is_proper_subset(&cs.blocks()[k])))
            .map(|&k| cs.names()[k].clone())
            .collect();
        let got = cs.minimal_description(i).unwrap();
        o.check(got == oracle, format!("Md({x}) = {got:?}, oracle {oracle:?}"));
        if got != md {
            diverging.push(x);
            o.note(format!("erratum row {x}: printed Md {{{}}}, computed {{{}}}", md.join(", "), got.join(", ")));
        }
    }
    o.check(diverging == ["a", "b"], format!("Md divergences expected on rows a, b; found {diverging:?}"));
    o
}

// ---------------------------------------------------------------- 2

/// The printed layout: braces, comma separation, and the fixed 2-type 1 of
/// partial counts written out.
fn printed_form(c: &Count) -> String {
    let toks = c.tokens.iter().map(|t| match t {
        Token::Plain(v) => format!("{v}_1"),
        t => t.to_string(),
    });
    format!("{{{}}}", toks.format(", "))
}

fn counting_example() -> Outcome {
    let mut o = Outcome::new();
    let u = Universe::new(COUNTING_UNIVERSE).unwrap();
    let eq = |pairs: &[(&str, &str)]| Relation::from_named_pairs(&u, pairs).unwrap().closure(ClosureKinds::EQUIVALENCE);
    let r = eq(&[("a", "b"), ("b", "c"), ("e", "f"), ("i", "k"), ("l", "m"), ("m", "n"), ("g", "h")]);
    let q = eq(&[("a", "b"), ("e", "f"), ("i", "k"), ("l", "m"), ("m", "n")]);
    let order = ["f", "b", "c", "a", "k", "i", "n", "h", "e", "l", "g", "m"];
    let sr = CountedSequence::from_names(&r, &order).unwrap();
    let sq = CountedSequence::from_names(&q, &order).unwrap();

    let hpc_q = printed_form(&sq.count(Scheme::Hpc));
    o.check(hpc_q == "{1_1, 2_1, 3_1, 1_2, 2_2, 1_3, 2_3, 3_3, 1_4, 1_5, 2_5, 1_6}", format!("HPC relative Q: {hpc_q}"));
    let hppc_r = printed_form(&sr.count(Scheme::Hppc));
    o.check(hppc_r == "{1_1, 2_1, *, *, 3_1, *, 4_1, 5_1, *, *, *, *}", format!("HPPC relative R: {hppc_r}"));

    let printed_ipc = ["1_1", "2_1", "1_2", "1_3", "2_3", "1_4", "2_4", "3_4", "1_5", "2_5", "1_6", "2_6"];
    let ipc_r = sr.count(Scheme::Ipc);
    let ours: Vec<String> = ipc_r.tokens.iter().map(Token::to_string).collect();
    o.check(ours[..8] == printed_ipc[..8], format!("IPC relative R head: {}", ours[..8].join(" ")));
    if ours[8..] != printed_ipc[8..] {
        o.note(format!(
            "erratum IPC relative R tail: printed {}, rules give {}",
            printed_ipc[8..].join(" "),
            ours[8..].join(" ")
        ));
    }
    let printed_hpc_r = "{1_1, 2_1, 1_2, 1_3, 2_3, 1_4, 1_5, 2_5, 1_6, 1_7, 1_8, 1_9}";
    let hpc_r = printed_form(&sr.count(Scheme::Hpc));
    if hpc_r != printed_hpc_r {
        o.note(format!("erratum HPC relative R: printed {printed_hpc_r}, rules give {hpc_r}"));
    }

    let pos = measures::pos(&r, &q).unwrap();
    let induced = sq.count(Scheme::Hpc).induced(&sq, &pos).unwrap();
    let got: BTreeSet<String> = induced.tokens.iter().map(Token::to_string).collect();
    let want: BTreeSet<String> = ["1_1", "2_3", "1_4", "1_5", "1_6"].iter().map(|s| s.to_string()).collect();
    o.check(got == want, format!("induced HPC-Q on POS = {} is {{{}}}", u.format_set(&pos), got.iter().join(", ")));
    let printed_pos = u.parse_set("{e, f, l, m, n}").unwrap();
    if pos != printed_pos {
        let on_printed = sq.count(Scheme::Hpc).induced(&sq, &printed_pos).unwrap();
        o.note(format!(
            "erratum POS: printed {}, computed {}; the printed set induces {}",
            u.format_set(&printed_pos),
            u.format_set(&pos),
            on_printed
        ));
    }
    o
}

// ---------------------------------------------------------------- 3

/// The four operators straight from their definitions, index sets over the
/// blocks plus the virtual blocks ∅ and S.
fn auai_oracle(cs: &CoverSystem, x: &ElementSet, kind: Auai) -> ElementSet {
    let w = cs.width();
    let mut fam: Vec<ElementSet> = cs.blocks().to_vec();
    fam.push(ElementSet::empty(w));
    fam.push(ElementSet::full(w));
    let m = fam.len();
    let subsets = || (0u32..1 << m).map(|mask| (0..m).filter(move |i| mask >> i & 1 == 1).map(|i| fam[i]).collect::<Vec<_>>());
    let union = |v: &[ElementSet]| v.iter().fold(ElementSet::empty(w), |a, b| a.union(b));
    let meet_co = |v: &[ElementSet]| v.iter().fold(ElementSet::full(w), |a, b| a.intersection(&b.complement()));
    match kind {
        Auai::L1 => union(&fam.iter().filter(|k| k.is_subset(x)).copied().collect::<Vec<_>>()),
        Auai::U2 => meet_co(&fam.iter().filter(|k| !k.meets(x)).copied().collect::<Vec<_>>()),
        Auai::U1 => subsets()
            .map(|v| union(&v))
            .filter(|s| x.is_subset(s))
            .fold(ElementSet::full(w), |a, b| a.intersection(&b)),
        Auai::L2 => subsets()
            .map(|v| meet_co(&v))
            .filter(|s| s.is_subset(x))
            .fold(ElementSet::empty(w), |a, b| a.union(&b)),
    }
}

fn auai_theorem() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11);
    let mut item_hits = [0usize; 15];
    for case in 0..500 {
        let n = rng.gen_range(1..=8);
        let u = Universe::anonymous(n).unwrap();
        let k = rng.gen_range(1..=6);
        let mut blocks: Vec<ElementSet> = (0..k).map(|_| random_set(n, &mut rng)).collect();
        for x in 0..n {
            if !blocks.iter().any(|b| b.contains(x)) {
                let i = rng.gen_range(0..k);
                blocks[i].insert(x);
            }
        }
        let cs = CoverSystem::from_sets(&u, blocks).unwrap();
        let (x, y) = (random_set(n, &mut rng), random_set(n, &mut rng));
        for kind in [Auai::L1, Auai::L2, Auai::U1, Auai::U2] {
            for s in [&x, &y] {
                if cs.auai(s, kind) != auai_oracle(&cs, s, kind) {
                    o.check(false, format!("case {case}: {kind:?} disagrees with its definition"));
                }
            }
        }
        let laws = cs.auai_laws_with(&x, &y, |s, k| auai_oracle(&cs, s, k));
        for (i, ok) in laws.iter().enumerate() {
            if *ok {
                item_hits[i] += 1;
            } else {
                o.check(false, format!("case {case}: item {}", i + 1));
            }
        }
        o.check(cs.auai_laws(&x, &y).iter().all(|&b| b), format!("case {case}: library operators"));
    }
    o.note(format!("items holding per case: {item_hits:?}"));
    o
}

// ---------------------------------------------------------------- 4

fn granule_theorems() -> Outcome {
    let mut o = Outcome::new();
    for s in Setting::ALL {
        let t = theorem(s);
        match check_theorem(t) {
            Err(e) => o.check(false, format!("{}: {e}", s.slug())),
            Ok(rep) => {
                for (a, why) in &rep.broken_claims {
                    o.check(false, format!("{}: claimed {a} {why}", s.slug()));
                }
                for a in &rep.unrefuted {
                    o.check(false, format!("{}: non-axiom {a} not refuted", s.slug()));
                }
            }
        }
    }
    use AxiomId::*;
    let classical = theorem(Setting::Classical);
    let alias: AxiomId = "AS".parse().unwrap();
    for a in [RA, ACG, MER, alias, FU, NO, PS] {
        o.check(classical.holds.contains(&a), format!("classical theorem lists {a}"));
    }
    o.check(classical.fails.contains(&UU), "classical theorem refutes UU");
    let tol = theorem(Setting::ToleranceRelateds);
    for a in [RA, MER, ST] {
        o.check(tol.holds.contains(&a), format!("tolerance theorem lists {a}"));
    }
    o.check(tol.fails.contains(&ACG), "tolerance theorem refutes ACG");
    o.note(format!("{} theorems checked", Setting::ALL.len()));
    o
}

// ---------------------------------------------------------------- 5

fn measures_suite() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E5);
    for case in 0..200 {
        let size = rng.gen_range(1..=8);
        let (r, q) = (random_equivalence(size, &mut rng), random_equivalence(size, &mut rng));
        let q = Relation::from_pairs(r.universe(), (0..size).cartesian_product(0..size).filter(|&(a, b)| q.contains(a, b)));
        let d = measures::delta(&r, &q).unwrap();
        // independent reading: x is positive iff its R-class lies inside its Q-class
        let positive = (0..size).filter(|&x| r.row(x).is_subset(&q.row(x))).count();
        o.check(d == Ratio::new(positive as i64, size as i64), format!("case {case}: δ"));
        o.check(measures::gk(&r, &q).unwrap().sum() == d, format!("case {case}: Σ gk = δ"));
        for n in 0..=5 {
            let c = measures::cons(&r, &q, n).unwrap();
            o.check(measures::gcons(&r, &q, n).unwrap().sum() == c, format!("case {case}, n = {n}: Σ gcons = cons"));
        }
    }
    let u = Universe::new(COUNTING_UNIVERSE).unwrap();
    let eq = |pairs: &[(&str, &str)]| Relation::from_named_pairs(&u, pairs).unwrap().closure(ClosureKinds::EQUIVALENCE);
    let r = eq(&[("a", "b"), ("b", "c"), ("e", "f"), ("i", "k"), ("l", "m"), ("m", "n"), ("g", "h")]);
    let q = eq(&[("a", "b"), ("e", "f"), ("i", "k"), ("l", "m"), ("m", "n")]);
    let d = measures::delta(&r, &q).unwrap();
    o.check(d == Ratio::new(5, 12), format!("worked instance δ = {d}, expected 5/12"));
    if d != Ratio::new(5, 12) {
        o.note(format!(
            "erratum: POS = {} has {} elements; the printed POS omits i and k",
            u.format_set(&measures::pos(&r, &q).unwrap()),
            measures::pos(&r, &q).unwrap().len()
        ));
    }
    o
}

// ---------------------------------------------------------------- 6

fn rough_naturals() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6);
    let mut laws = ripcna_laws();
    laws.extend(otimes_laws());
    laws.extend(compatibility_laws());
    let results = run_laws(&laws, 5, 10_000, 8, &mut rng).unwrap();
    for r in &results {
        let ex = r.example.as_ref().map(|v| v.iter().map(|x| x.to_string()).join(", "));
        o.check(r.passed, format!("{} {} at [{}]", r.id, r.statement, ex.unwrap_or_default()));
    }
    o.note(format!("{} laws, {} cases", results.len(), results.iter().map(|r| r.cases).sum::<usize>()));
    if let Some(bad) = zeta_fragment(50) {
        o.check(false, format!("ζ fragment differs from integers at {bad}"));
    }
    o
}

// ---------------------------------------------------------------- 7

fn random_tolerance(n: usize, rng: &mut impl Rng) -> Relation {
    let u = Universe::anonymous(n).unwrap();
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().filter(|_| rng.gen_bool(0.4)).collect();
    Relation::from_pairs(&u, pairs).closure(ClosureKinds::TOLERANCE)
}

fn cipca_suite() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    let mut first_failure = None;
    for n in 1..=5 {
        for trial in 0..10 {
            let rel = random_tolerance(n, &mut rng);
            let c = build_cipca(&rel).unwrap();
            let cert = c.certificate(&rel);
            o.check(cert.passed(), format!("n = {n}, relation {trial}: {}", cert.problems.join("; ")));
            let (counts, verdict) = ipc_semilinear(&rel).unwrap();
            if verdict != SemiLinear::Holds {
                let detail = match verdict {
                    SemiLinear::DownSetNotChain { top, a, b } => {
                        format!("{} and {} lie below {} but are incomparable", counts[a], counts[b], counts[top])
                    }
                    SemiLinear::NoLowerBound { a, b } => format!("{} and {} have no common lower bound", counts[a], counts[b]),
                    SemiLinear::Holds => unreachable!(),
                };
                first_failure.get_or_insert(format!("n = {n}, relation {trial}: {detail}"));
                o.passed = false;
            }
        }
    }
    if let Some(f) = first_failure {
        o.note(format!("violated: semi-linearity of IPC counts, first at {f}"));
    }
    o
}

// ---------------------------------------------------------------- 8

fn construction_one() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    for case in 0..500 {
        let n = rng.gen_range(1..=8);
        let depth = rng.gen_range(1..=5);
        // a descending chain A_0 = S ⊇ A_p1 ⊇ ... on random rational points
        let mut pts: Vec<Ratio> = (0..depth).map(|_| Ratio::new(rng.gen_range(1..=12), 12)).collect();
        pts.sort();
        pts.dedup();
        let mut cur = ElementSet::full(n);
        let mut levels = vec![(Ratio::new(0, 1), cur)];
        for p in pts {
            cur = cur.intersection(&random_set(n, &mut rng).union(&random_set(n, &mut rng)));
            levels.push((p, cur));
        }
        let f = FuzzySet::new(n, levels).unwrap();
        let points: Vec<Ratio> = f.points().collect();
        let cells = construction1(&f, &points).unwrap();
        let mut seen = ElementSet::empty(n);
        for c in &cells {
            o.check(!c.is_empty() && !c.meets(&seen), format!("case {case}: cells overlap or are empty"));
            seen = seen.union(c);
        }
        o.check(seen.is_full(), format!("case {case}: cells miss elements"));
    }
    for case in 0..500 {
        let n = rng.gen_range(1..=8);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let mut cells: Vec<ElementSet> = labels
            .iter()
            .unique()
            .map(|&l| ElementSet::from_indices(n, (0..n).filter(|&x| labels[x] == l)))
            .collect();
        cells.sort_by_key(|_| rng.gen::<u32>());
        let extra = rng.gen_range(0..3);
        // P holds 0 and 1, so it has at least two points
        let m = (cells.len() + extra).max(2);
        let points: Vec<Ratio> = (0..m).map(|i| Ratio::new(i as i64, (m - 1) as i64)).collect();
        match reverse_transform(&cells, &points).and_then(|f| construction1(&f, &points)) {
            Ok(back) => o.check(back == cells, format!("case {case}: round trip changed the partition")),
            Err(e) => o.check(false, format!("case {case}: {e}")),
        }
    }
    o
}

// ---------------------------------------------------------------- 9

fn recovery() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    for case in 0..100 {
        let rel = random_equivalence(rng.gen_range(1..=8), &mut rng);
        let seq = max_ipc_order(&rel).unwrap();
        let got = granules_from_count(&seq, &seq.count(Scheme::Ipc)).unwrap();
        o.check(sorted(got) == sorted(rel.partition_classes().unwrap()), format!("case {case}: recovered granules"));
    }
    let mut checked = 0usize;
    for n in 1..=6 {
        let u = Universe::anonymous(n).unwrap();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        for labels in set_partitions(n) {
            let rel = equivalence_from_labels(&u, &labels);
            let best = max_ipc_order(&rel).unwrap().count(Scheme::Ipc);
            for p in &perms {
                let c = CountedSequence::new(&rel, p.clone()).unwrap().count(Scheme::Ipc);
                let above = count_preceq(&best, &c).unwrap() && !count_preceq(&c, &best).unwrap();
                o.check(!above, format!("n = {n}: {c} lies strictly above {best}"));
                checked += 1;
            }
        }
    }
    o.note(format!("{checked} (equivalence, order) pairs compared"));
    o
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 worked cover example", Duration::from_secs(1), cover_example),
        ("2 worked counting example", Duration::from_secs(1), counting_example),
        ("3 AUAI identities on random covers", Duration::from_secs(30), auai_theorem),
        ("4 granule-axiom theorems", Duration::from_secs(60), granule_theorems),
        ("5 measures", Duration::from_secs(10), measures_suite),
        ("6 rough naturals", Duration::from_secs(60), rough_naturals),
        ("7 CIPCA", Duration::from_secs(120), cipca_suite),
        ("8 construction-1", Duration::from_secs(5), construction_one),
        ("9 granule recovery", Duration::from_secs(60), recovery),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if took > budget {
            out.passed = false;
            out.notes.push(format!("violated: took {took:.2?}, budget {budget:?}"));
        }
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name} ({took:.2?})");
        // keep long violation lists readable
        let (violations, info): (Vec<_>, Vec<_>) = out.notes.iter().partition(|n| n.starts_with("violated"));
        for n in info.iter().chain(violations.iter().take(12)) {
            println!("    {n}");
        }
        if violations.len() > 12 {
            println!("    ... {} more violations", violations.len() - 12);
        }
        failed += usize::from(!out.passed);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
