//! Calibration and randomized property suites, as run by `fts check`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generators::{CheckLine, GeneratorTable};
use crate::witness::{lemma1_witness, mixed_commutator, Preset};
use crate::word::GroupWord;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;
pub const MAX_WORD_LEN: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        self.passed += ok as usize;
    }

    pub fn all(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    /// The failing word, if the check has one.
    pub word: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub relations: Tally,
    pub support_facts: Tally,
    pub lemma1: Tally,
    pub mixed: Tally,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.relations.all() && self.support_facts.all() && self.lemma1.all() && self.mixed.all()
    }
}

fn tally_lines(lines: &[CheckLine], first: &mut Option<Counterexample>) -> Tally {
    let mut t = Tally::default();
    for line in lines {
        t.record(line.passed);
        if !line.passed && first.is_none() {
            *first = Some(Counterexample {
                check: line.name.to_string(),
                word: None,
                detail: "structural equality fails".into(),
            });
        }
    }
    t
}

/// Relations and support facts of `table`, then `samples` random words of
/// length at most 24 through the lemma and through the mixed identity.
pub fn run_checks(table: &GeneratorTable, samples: usize, seed: u64) -> CheckSummary {
    let mut first = None;
    let relations = tally_lines(&table.relation_lines(), &mut first);
    let support_facts = tally_lines(&table.support_fact_lines(), &mut first);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Preset::Std2.alphabet_with(table);
    let pair = Preset::Std2.pair_over(&alphabet);
    let mut lemma1 = Tally::default();
    let mut mixed = Tally::default();
    for _ in 0..samples {
        let xi = GroupWord::random(&alphabet, MAX_WORD_LEN, &mut rng);
        let outcome = pair
            .as_ref()
            .map_err(|e| e.to_string())
            .and_then(|p| lemma1_witness(&xi, p).map_err(|e| e.to_string()));
        lemma1.record(outcome.is_ok());
        if let (Err(detail), None) = (outcome, &first) {
            first = Some(Counterexample {
                check: "lemma1".into(),
                word: Some(xi.to_string()),
                detail,
            });
        }
    }
    for _ in 0..samples {
        let g = GroupWord::random(&alphabet, MAX_WORD_LEN, &mut rng);
        let ok = mixed_commutator(&g.evaluate(), table).is_identity();
        mixed.record(ok);
        if !ok && first.is_none() {
            first = Some(Counterexample {
                check: "mixed".into(),
                word: Some(g.to_string()),
                detail: "nested commutator is not the identity".into(),
            });
        }
    }
    CheckSummary {
        relations,
        support_facts,
        lemma1,
        mixed,
        seed,
        counterexample: first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_table_passes() {
        let s = run_checks(GeneratorTable::standard(), 20, 1);
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.relations, Tally { passed: 2, total: 2 });
        assert_eq!(s.lemma1.total, 20);
    }

    #[test]
    fn zero_samples_still_checks_relations() {
        let s = run_checks(GeneratorTable::standard(), 0, 1);
        assert_eq!(s.relations.total, 2);
        assert_eq!(s.mixed.total, 0);
        assert!(s.passed());
    }

    #[test]
    fn corrupted_table_names_a_relation() {
        let s = run_checks(&GeneratorTable::corrupted(), 5, 1);
        assert!(!s.passed());
        let c = s.counterexample.unwrap();
        assert!(crate::generators::RELATION_NAMES.contains(&c.check.as_str()), "{c:?}");
    }

    #[test]
    fn same_seed_same_summary() {
        let a = run_checks(GeneratorTable::standard(), 10, 42);
        let b = run_checks(GeneratorTable::standard(), 10, 42);
        assert_eq!(a, b);
    }
}
