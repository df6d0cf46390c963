// Canonical fixtures and frozen witnesses for the theorem table.

/// The fixture on which a setting's claimed axioms are checked.
pub fn canonical_fixture(setting: Setting) -> Fixture {
    match setting.fixture_kind() {
        // classes {0,1} {2,3,4} {5}
        FixtureKind::Equivalence => Fixture::Relation { n: 6, rows: vec![3, 3, 28, 28, 28, 32] },
        // pseudo-classes {0,1} {2,3}; 4 unrelated
        FixtureKind::PartialEquivalence => Fixture::Relation { n: 5, rows: vec![3, 3, 12, 12, 0] },
        FixtureKind::Reflexive => Fixture::Relation { n: 4, rows: vec![3, 6, 4, 9] },
        // path 0-1-2-3 and isolated 4
        FixtureKind::Tolerance => Fixture::Relation { n: 5, rows: vec![3, 7, 14, 12, 16] },
        FixtureKind::TwoEquivalences => Fixture::Relations {
            n: 4,
            rels: vec![vec![3, 3, 12, 12], vec![1, 6, 6, 8]],
        },
        FixtureKind::Cover => Fixture::from_cover(&example_cover()),
    }
}

/// A fixture on which `axiom` fails in `setting`, if one is known.
pub fn witness_fixture(setting: Setting, axiom: AxiomId) -> Option<Fixture> {
    use AxiomId::*;
    use Setting::*;
    Some(match (setting, axiom) {
        (Classical, UU) => Fixture::Relation { n: 3, rows: vec![1, 2, 4] },
        (ReflexiveRelateds, MER) => Fixture::Relation { n: 2, rows: vec![1, 3] },
        (ReflexiveRelateds, ACG) => Fixture::Relation { n: 3, rows: vec![5, 2, 6] },
        (ReflexiveRelateds, UI) => Fixture::Relation { n: 4, rows: vec![1, 3, 12, 10] },
        (ReflexiveRelateds, NO) => Fixture::Relation { n: 3, rows: vec![5, 2, 6] },
        (ReflexiveRelateds, FU) => Fixture::Relation { n: 1, rows: vec![1] },
        (Multiple, RA) => Fixture::Relations { n: 3, rels: vec![vec![3, 3, 4], vec![1, 6, 6]] },
        (Multiple, ACG) => Fixture::Relations { n: 2, rels: vec![vec![3, 3], vec![1, 2]] },
        (Multiple, NO) => Fixture::Relations { n: 3, rels: vec![vec![5, 2, 5], vec![3, 3, 4]] },
        (ToleranceRelateds, ACG) => Fixture::Relation { n: 3, rows: vec![5, 6, 7] },
        (ToleranceRelateds, NO) => Fixture::Relation { n: 3, rows: vec![3, 7, 6] },
        (ToleranceWithPlus, RA) => Fixture::Relation { n: 3, rows: vec![7, 3, 5] },
        (ToleranceWithPlus, NO) => Fixture::Relation { n: 3, rows: vec![7, 3, 5] },
        (ToleranceWithPlus, ACG) => Fixture::Relation { n: 3, rows: vec![7, 3, 5] },
        (Bitten, URA) => Fixture::Relation { n: 3, rows: vec![3, 7, 6] },
        (Bitten, MER) => Fixture::Relation { n: 4, rows: vec![9, 14, 6, 11] },
        (Bitten, NO) => Fixture::Relation { n: 3, rows: vec![3, 7, 6] },
        (BlockIntersections, RA) => Fixture::Relation { n: 3, rows: vec![5, 6, 7] },
        (BlockIntersections, ACG) => Fixture::Relation { n: 3, rows: vec![7, 3, 5] },
        (BlockIntersections, NO) => Fixture::Relation { n: 3, rows: vec![5, 6, 7] },
        (AuaiAll, ACG) => Fixture::Cover { n: 2, blocks: vec![3, 2, 3] },
        (AuaiAll, RA) => Fixture::Cover { n: 2, blocks: vec![2, 3] },
        (AuaiAll, SubRA) => Fixture::Cover { n: 3, blocks: vec![5, 6, 3] },
        (AuaiAll, MER) => Fixture::Cover { n: 2, blocks: vec![2, 3] },
        (AuaiFirst, MER) => Fixture::Cover { n: 2, blocks: vec![1, 3] },
        (AuaiFirst, NO) => Fixture::Cover { n: 3, blocks: vec![5, 6, 3] },
        (AuaiFirst, FU) => Fixture::Cover { n: 1, blocks: vec![1, 1] },
        (AuaiFirst, RA) => Fixture::Cover { n: 3, blocks: vec![7, 3, 7, 6] },
        (AuaiSecond, ACG) => Fixture::Cover { n: 2, blocks: vec![2, 3, 3] },
        (AuaiSecond, MER) => Fixture::Cover { n: 2, blocks: vec![2, 2, 3] },
        (AuaiSecond, RA) => Fixture::Cover { n: 2, blocks: vec![3, 2] },
        (AuaiSecond, NO) => Fixture::Cover { n: 3, blocks: vec![6, 3, 4] },
        (Lp1, ACG) => Fixture::Cover { n: 3, blocks: vec![5, 3] },
        (Lp1, NO) => Fixture::Cover { n: 3, blocks: vec![3, 6, 2] },
        (Lp1, LS) => Fixture::Cover { n: 3, blocks: vec![6, 6, 4, 5] },
        (Lp2, ACG) => Fixture::Cover { n: 3, blocks: vec![4, 1, 3, 5] },
        (Lp2, NO) => Fixture::Cover { n: 3, blocks: vec![6, 5] },
        (Lp3, ACG) => Fixture::Cover { n: 2, blocks: vec![3, 2, 3] },
        (Lp3, NO) => Fixture::Cover { n: 3, blocks: vec![5, 4, 6] },
        (Lp4Cover, RA) => Fixture::Cover { n: 2, blocks: vec![1, 3] },
        (Lp4Cover, MER) => Fixture::Cover { n: 2, blocks: vec![3, 3, 1] },
        (Lp4Cover, NO) => Fixture::Cover { n: 3, blocks: vec![2, 1, 6, 5] },
        (Lm1, RA) => Fixture::Cover { n: 2, blocks: vec![3, 3, 1] },
        (Lm1, ST) => Fixture::Cover { n: 2, blocks: vec![2, 3, 3] },
        (Lm1, LMER) => Fixture::Cover { n: 2, blocks: vec![2, 3] },
        (Lm2, RA) => Fixture::Cover { n: 2, blocks: vec![1, 3, 1] },
        (Lm2, ACG) => Fixture::Cover { n: 2, blocks: vec![3, 1, 3] },
        (Lm2, LMER) => Fixture::Cover { n: 2, blocks: vec![1, 3, 1] },
        (Lm2, NO) => Fixture::Cover { n: 3, blocks: vec![6, 5] },
        (Sixth, RA) => Fixture::Cover { n: 2, blocks: vec![2, 3] },
        (Sixth, ACG) => Fixture::Cover { n: 2, blocks: vec![1, 3] },
        (Sixth, LMER) => Fixture::Cover { n: 2, blocks: vec![3, 3, 1] },
        (Sixth, NO) => Fixture::Cover { n: 3, blocks: vec![3, 3, 6] },
        (Plus1, MER) => Fixture::Cover { n: 2, blocks: vec![1, 3, 2] },
        (Plus1, LMER) => Fixture::Cover { n: 2, blocks: vec![1, 3] },
        (Plus1, NO) => Fixture::Cover { n: 3, blocks: vec![6, 1, 3, 2] },
        (Plus2, LMER) => Fixture::Cover { n: 2, blocks: vec![3, 2] },
        (Plus2, NO) => Fixture::Cover { n: 3, blocks: vec![6, 7, 1, 3] },
        (Plus3, MER) => Fixture::Cover { n: 2, blocks: vec![1, 2, 3] },
        (Plus3, LMER) => Fixture::Cover { n: 2, blocks: vec![1, 3] },
        (Plus3, NO) => Fixture::Cover { n: 3, blocks: vec![2, 5, 3, 4] },
        (Plus4, MER) => Fixture::Cover { n: 2, blocks: vec![3, 3, 2] },
        (Plus4, LMER) => Fixture::Cover { n: 2, blocks: vec![2, 3] },
        (Plus4, NO) => Fixture::Cover { n: 3, blocks: vec![3, 7, 2, 6] },
        (Plus5, MER) => Fixture::Cover { n: 2, blocks: vec![2, 1, 3] },
        (Plus5, LMER) => Fixture::Cover { n: 2, blocks: vec![3, 2] },
        (Plus5, NO) => Fixture::Cover { n: 3, blocks: vec![6, 5, 2, 5] },
        _ => return None,
    })
}
