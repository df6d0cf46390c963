//! The quotient of the symmetric group by "same IPC count", with its
//! partial composition, and a checker for lower semi-linear orders.
//!
//! A permutation is a counting order: the list of element indices in the
//! order they are counted. `x ∗ y` applies `x` and then `y`, so
//! `(x ∗ y)[i] = y[x[i]]`; the identity is the declaration order.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::counting::{count_preceq, Count, CountedSequence, Scheme};
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::universe::Relation;

pub const CIPCA_CAP: usize = 6;

pub fn compose(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().map(|&i| y[i]).collect()
}

#[derive(Clone, Debug)]
pub struct Cipca {
    pub n: usize,
    /// Every permutation, lexicographic.
    pub perms: Vec<Vec<usize>>,
    /// Class of each permutation (indexes `perms`).
    pub class_of: Vec<usize>,
    /// The IPC count shared by each class; classes are numbered by first
    /// appearance, so class 0 holds the identity.
    pub counts: Vec<Count>,
    /// `table[a][b]` is the class of every product, or `None` when the
    /// products spread over several classes.
    pub table: Vec<Vec<Option<usize>>>,
}

pub fn build_cipca(rel: &Relation) -> Result<Cipca> {
    let n = rel.len();
    if n > CIPCA_CAP {
        return Err(Error::SizeCap { what: "CIPCA universe", size: n, max: CIPCA_CAP });
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut counts: Vec<Count> = Vec::new();
    let mut class_of = Vec::with_capacity(perms.len());
    for p in &perms {
        let c = CountedSequence::new(rel, p.clone())?.count(Scheme::Ipc);
        let id = match counts.iter().position(|k| *k == c) {
            Some(i) => i,
            None => {
                counts.push(c);
                counts.len() - 1
            }
        };
        class_of.push(id);
    }
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let k = counts.len();
    let members: Vec<Vec<usize>> = (0..k).map(|c| (0..perms.len()).filter(|&i| class_of[i] == c).collect()).collect();
    let mut table = vec![vec![None; k]; k];
    for a in 0..k {
        for b in 0..k {
            let mut hit = BTreeSet::new();
            'scan: for &x in &members[a] {
                for &y in &members[b] {
                    hit.insert(class_of[index[compose(&perms[x], &perms[y]).as_slice()]]);
                    if hit.len() > 1 {
                        break 'scan;
                    }
                }
            }
            table[a][b] = (hit.len() == 1).then(|| *hit.iter().next().unwrap());
        }
    }
    Ok(Cipca { n, perms, class_of, counts, table })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub classes: usize,
    pub defined: usize,
    pub products_checked: usize,
    /// Problems found; empty when the certificate passes.
    pub problems: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn density(&self) -> Ratio {
        Ratio::new(self.defined as i64, (self.classes * self.classes).max(1) as i64)
    }
}

impl Cipca {
    pub fn class_count(&self) -> usize {
        self.counts.len()
    }

    pub fn op(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    /// Re-derives the table from all n!² products and checks that the
    /// classes partition the group, that every defined entry holds for
    /// every pair of representatives, and that every undefined entry has
    /// two products in different classes.
    pub fn certificate(&self, rel: &Relation) -> Certificate {
        let mut problems = Vec::new();
        let k = self.class_count();
        let index: HashMap<&[usize], usize> = self.perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        for (i, p) in self.perms.iter().enumerate() {
            match CountedSequence::new(rel, p.clone()) {
                Ok(s) if s.count(Scheme::Ipc) == self.counts[self.class_of[i]] => {}
                _ => problems.push(format!("order {p:?} sits in the wrong class")),
            }
        }
        if (0..k).any(|c| !self.class_of.contains(&c)) {
            problems.push("empty class".into());
        }
        let mut seen: Vec<Vec<BTreeSet<usize>>> = vec![vec![BTreeSet::new(); k]; k];
        let mut products = 0;
        for (xi, x) in self.perms.iter().enumerate() {
            for (yi, y) in self.perms.iter().enumerate() {
                let z = index[compose(x, y).as_slice()];
                seen[self.class_of[xi]][self.class_of[yi]].insert(self.class_of[z]);
                products += 1;
            }
        }
        let mut defined = 0;
        for a in 0..k {
            for b in 0..k {
                let s = &seen[a][b];
                match self.table[a][b] {
                    Some(c) => {
                        defined += 1;
                        if s.len() != 1 || !s.contains(&c) {
                            problems.push(format!("entry ({a}, {b}) = {c} but products land in {s:?}"));
                        }
                    }
                    None if s.len() < 2 => problems.push(format!("entry ({a}, {b}) undefined without a witness")),
                    None => {}
                }
            }
        }
        Certificate { classes: k, defined, products_checked: products, problems }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiLinear {
    Holds,
    /// `a` and `b` both lie below `top` but are incomparable.
    DownSetNotChain { top: usize, a: usize, b: usize },
    /// `a` and `b` have no common lower bound.
    NoLowerBound { a: usize, b: usize },
}

/// Checks both clauses of lower semi-linearity for the relation `le` on
/// `items`; witnesses are indices into `items`. For a preorder, "linearly
/// ordered" means any two elements are comparable.
pub fn check_semilinear<T>(items: &[T], le: impl Fn(&T, &T) -> bool) -> SemiLinear {
    let n = items.len();
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| le(&items[i], &items[j])).collect()).collect();
    for top in 0..n {
        let down: Vec<usize> = (0..n).filter(|&i| rel[i][top]).collect();
        for (&a, &b) in down.iter().tuple_combinations() {
            if !rel[a][b] && !rel[b][a] {
                return SemiLinear::DownSetNotChain { top, a, b };
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if !(0..n).any(|z| rel[z][a] && rel[z][b]) {
                return SemiLinear::NoLowerBound { a, b };
            }
        }
    }
    SemiLinear::Holds
}

/// The distinct IPC counts of all orders of the universe.
pub fn ipc_counts(rel: &Relation) -> Result<Vec<Count>> {
    Ok(build_cipca(rel)?.counts)
}

/// Semi-linearity of the IPC counts of `rel` under the count order ≼.
pub fn ipc_semilinear(rel: &Relation) -> Result<(Vec<Count>, SemiLinear)> {
    let counts = ipc_counts(rel)?;
    let verdict = check_semilinear(&counts, |a, b| count_preceq(a, b).expect("equal lengths"));
    Ok((counts, verdict))
}

/// Whether ≼ is antisymmetric on the given counts.
pub fn preceq_antisymmetric(counts: &[Count]) -> bool {
    counts.iter().tuple_combinations().all(|(a, b)| {
        !(count_preceq(a, b).expect("equal lengths") && count_preceq(b, a).expect("equal lengths"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::{ClosureKinds, Universe};
    use rand::{Rng, SeedableRng};

    fn random_tolerance(n: usize, rng: &mut impl Rng) -> Relation {
        let u = Universe::anonymous(n).unwrap();
        let mut r = Relation::identity(&u);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.35) {
                    r.insert(a, b);
                }
            }
        }
        r.closure(ClosureKinds::TOLERANCE)
    }

    #[test]
    fn degenerate_relations_give_one_class() {
        let u = Universe::anonymous(4).unwrap();
        for rel in [Relation::identity(&u), Relation::full(&u)] {
            let c = build_cipca(&rel).unwrap();
            assert_eq!(c.class_count(), 1);
            assert_eq!(c.op(0, 0), Some(0));
            assert!(c.certificate(&rel).passed());
        }
        assert_eq!(build_cipca(&Relation::identity(&u)).unwrap().counts[0].to_string(), "1_1 2_1 3_1 4_1");
    }

    #[test]
    fn one_related_pair_on_three() {
        let u = Universe::anonymous(3).unwrap();
        let rel = Relation::from_pairs(&u, [(0, 1)]).closure(ClosureKinds::TOLERANCE);
        let c = build_cipca(&rel).unwrap();
        // The pair is adjacent in four orders and split in two.
        assert_eq!(c.class_count(), 3);
        let cert = c.certificate(&rel);
        assert!(cert.passed(), "{:?}", cert.problems);
        assert_eq!(cert.products_checked, 36);
        assert_eq!(cert.classes, 3);
        assert!(cert.defined < 9);
    }

    #[test]
    fn composition_convention() {
        let x = [1, 2, 0];
        let y = [0, 2, 1];
        assert_eq!(compose(&x, &y), vec![2, 1, 0]);
        assert_eq!(compose(&[0, 1, 2], &y), y.to_vec());
    }

    #[test]
    fn semilinear_checker_examples() {
        // a chain
        assert_eq!(check_semilinear(&[1, 2, 3], |a, b| a <= b), SemiLinear::Holds);
        // two incomparable tops over a shared bottom
        let le = |a: &u8, b: &u8| a == b || *a == 0;
        assert_eq!(check_semilinear(&[0u8, 1, 2], le), SemiLinear::Holds);
        // two incomparable elements under one top
        let fork = |a: &u8, b: &u8| a == b || *a == 0 || *b == 3;
        assert!(matches!(check_semilinear(&[0u8, 1, 2, 3], fork), SemiLinear::DownSetNotChain { top: 3, .. }));
        let apart = |a: &u8, b: &u8| a == b;
        assert_eq!(check_semilinear(&[1u8, 2], apart), SemiLinear::NoLowerBound { a: 0, b: 1 });
    }

    #[test]
    fn certificates_on_random_relations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..4 {
                let rel = random_tolerance(n, &mut rng);
                let c = build_cipca(&rel).unwrap();
                let cert = c.certificate(&rel);
                assert!(cert.passed(), "{:?}", cert.problems);
                assert_eq!(c.class_of.len(), (1..=n).product::<usize>());
            }
        }
    }

    #[test]
    fn size_cap() {
        let u = Universe::anonymous(7).unwrap();
        assert!(matches!(build_cipca(&Relation::identity(&u)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn small_ipc_posets_are_semilinear() {
        let u = Universe::anonymous(3).unwrap();
        let rel = Relation::from_pairs(&u, [(0, 1)]).closure(ClosureKinds::TOLERANCE);
        assert_eq!(ipc_semilinear(&rel).unwrap().1, SemiLinear::Holds);
    }

    #[test]
    fn path_on_three_is_not_semilinear() {
        let u = Universe::anonymous(3).unwrap();
        let rel = Relation::from_pairs(&u, [(0, 1), (1, 2)]).closure(ClosureKinds::TOLERANCE);
        let (counts, v) = ipc_semilinear(&rel).unwrap();
        assert_eq!(counts.len(), 3);
        let SemiLinear::NoLowerBound { a, b } = v else { panic!("{v:?}") };
        assert!(!(0..3).any(|z| count_preceq(&counts[z], &counts[a]).unwrap() && count_preceq(&counts[z], &counts[b]).unwrap()));
    }

    #[test]
    #[ignore]
    fn explore_semilinearity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for n in 1..=5 {
            for _ in 0..10 {
                let rel = random_tolerance(n, &mut rng);
                let (counts, v) = ipc_semilinear(&rel).unwrap();
                if v != SemiLinear::Holds {
                    println!("n={n} {:?} {:?}", rel.pairs().collect::<Vec<_>>(), v);
                    if let SemiLinear::DownSetNotChain { top, a, b } = v {
                        println!("  top {} a {} b {}", counts[top], counts[a], counts[b]);
                    }
                }
                println!("n={n} classes {} antisym {}", counts.len(), preceq_antisymmetric(&counts));
            }
        }
    }
}
