//! Single-witness extraction against exhaustive classification.

use lcnf_core::{
    classify_all, complement_of, random_lcnf, AnalysisError, AnalysisReport, Analyzer,
    BruteForceConfig, Label, LabelSet, LcnfFormula, OracleConfig, Profile, WitnessKind,
};
use proptest::prelude::*;

fn formula(seed: u64) -> LcnfFormula {
    random_lcnf(seed, &Profile::varied(seed)).formula
}

fn report(phi: &LcnfFormula) -> AnalysisReport {
    classify_all(phi, &BruteForceConfig::default()).unwrap()
}

fn analyzer(phi: &LcnfFormula) -> Analyzer {
    Analyzer::new(phi, &OracleConfig::default())
}

/// A formula seed, a shuffled order of its labels and a subset mask.
fn case() -> impl Strategy<Value = (u64, Vec<Label>, u64)> {
    any::<u64>().prop_flat_map(|seed| {
        let labels = formula(seed).active_labels().to_vec();
        (Just(seed), Just(labels).prop_shuffle(), any::<u64>())
    })
}

fn pick(labels: &[Label], mask: u64) -> LabelSet {
    labels
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &l)| l)
        .collect()
}

/// `first` then the remaining labels of `all`.
fn order_with(first: &LabelSet, all: &LabelSet) -> Vec<Label> {
    first.iter().chain(all.difference(first).iter()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn deletion_results_are_family_members((seed, order, _) in case()) {
        let phi = formula(seed);
        let r = report(&phi);
        let mut a = analyzer(&phi);
        prop_assert!(r.lmes.contains(&a.compute_lmes(&order).unwrap()));
        match a.compute_lmus(&order) {
            Ok(u) => prop_assert!(r.lmus.contains(&u)),
            Err(AnalysisError::Satisfiable) => prop_assert!(r.satisfiable()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn growing_results_are_family_members((seed, order, mask) in case()) {
        let phi = formula(seed);
        let r = report(&phi);
        let seed_set = pick(&order, mask);
        let status = r.status(&seed_set).unwrap();
        let mut a = analyzer(&phi);

        match a.compute_lmss(&seed_set, &order) {
            Ok(s) => {
                prop_assert!(r.lmss.contains(&s));
                prop_assert!(seed_set.is_subset(&s));
            }
            Err(AnalysisError::UnsatisfiableBackground) => prop_assert!(!r.lmss_exists()),
            Err(AnalysisError::SeedUnsatisfiable) => prop_assert!(!status.sat),
            Err(e) => prop_assert!(false, "{e}"),
        }
        match a.compute_lmns(&seed_set, &order) {
            Ok(n) => {
                prop_assert!(r.lmns.contains(&n));
                prop_assert!(seed_set.is_subset(&n));
            }
            Err(AnalysisError::NoActiveLabels | AnalysisError::AllLabelsRedundant) => {
                prop_assert!(!r.lmns_exists())
            }
            Err(AnalysisError::SeedEquivalent) => prop_assert!(status.equivalent),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn every_member_is_reachable(seed in any::<u64>()) {
        let phi = formula(seed);
        let r = report(&phi);
        let all = phi.active_labels().clone();
        let mut a = analyzer(&phi);
        for e in r.lmes.iter() {
            let order = order_with(&all.difference(e), &all);
            prop_assert_eq!(&a.compute_lmes(&order).unwrap(), e);
        }
        for u in r.lmus.iter() {
            let order = order_with(&all.difference(u), &all);
            prop_assert_eq!(&a.compute_lmus(&order).unwrap(), u);
        }
        for s in r.lmss.iter() {
            prop_assert_eq!(&a.compute_lmss(&LabelSet::new(), &s.to_vec()).unwrap(), s);
        }
        for n in r.lmns.iter() {
            prop_assert_eq!(&a.compute_lmns(n, &[]).unwrap(), n);
        }
    }

    #[test]
    fn maximum_lmss_is_largest(seed in any::<u64>()) {
        let phi = formula(seed);
        let r = report(&phi);
        match analyzer(&phi).max_lmss() {
            Ok(m) => {
                prop_assert!(r.lmss.contains(&m));
                let best = r.lmss.iter().map(LabelSet::len).max().unwrap();
                prop_assert_eq!(m.len(), best);
                let first = r.lmss.iter().filter(|s| s.len() == best).min().unwrap();
                prop_assert_eq!(&m, first);
            }
            Err(AnalysisError::UnsatisfiableBackground) => prop_assert!(!r.lmss_exists()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn complements_match_co_families(seed in any::<u64>()) {
        let phi = formula(seed);
        let r = report(&phi);
        for s in r.lmss.iter() {
            let w = complement_of(&phi, s, WitnessKind::Lmss).unwrap();
            prop_assert_eq!(w.kind, WitnessKind::CoLmss);
            prop_assert!(r.colmss.contains(&w.labels));
        }
        for n in r.lmns.iter() {
            let w = complement_of(&phi, n, WitnessKind::Lmns).unwrap();
            prop_assert!(r.colmns.contains(&w.labels));
        }
        prop_assert!(complement_of(&phi, &LabelSet::new(), WitnessKind::Lmes).is_none());
    }

    #[test]
    fn redundancy_agrees_with_report(seed in any::<u64>()) {
        let phi = formula(seed);
        let r = report(&phi);
        prop_assert_eq!(analyzer(&phi).irredundant_labels().unwrap(), r.irredundant_labels());
        prop_assert_eq!(analyzer(&phi).duality_preconditions().is_ok(), r.duality_applies());
        prop_assert_eq!(r.lmes.intersection_all().unwrap(), r.irredundant_labels());
    }
}
