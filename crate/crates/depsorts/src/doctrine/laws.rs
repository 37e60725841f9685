//! Exhaustive hyperdoctrine condition suites over the finite-set cwf.
//!
//! Contexts range over `{0,…,k-1}` for `k ≤ n`, types over families with
//! fibers of size at most `n` whose comprehension has at most `n`
//! elements, and morphisms over all functions between those contexts.

use super::pat::PatDoctrine;
use super::subset::{Subset, SubsetDoctrine};
use super::{beck_chevalley, heyting_laws, quantifier_laws, reindex_composition, reindex_laws, Hyperdoctrine};
use crate::cwf::finset::{all_families, all_functions, objects_up_to, FinMor, FinSet, FinSetCwf};
use crate::cwf::laws::LawSuite;
use crate::cwf::Cwf;

/// Runs every condition for a doctrine on the finite-set cwf, where
/// `preds(Γ)` lists the predicates over `Γ` to quantify over.
pub fn finset_doctrine_laws<D>(d: &D, n: u32, preds: impl Fn(&FinSet) -> Vec<D::Pred>) -> LawSuite
where
    D: Hyperdoctrine<Base = FinSetCwf>,
{
    let c = FinSetCwf;
    let mut suite = LawSuite::new();
    let objs = objects_up_to(n);
    let maps_into = |gamma: &FinSet| -> Vec<FinMor> { objs.iter().flat_map(|d| all_functions(d, gamma)).collect() };
    for gamma in &objs {
        let here = preds(gamma);
        for x in &here {
            for y in &here {
                for z in &here {
                    heyting_laws(d, &mut suite, x, y, z);
                }
            }
        }
        let incoming = maps_into(gamma);
        for f in &incoming {
            let further = maps_into(&f.dom);
            for x in &here {
                for y in &here {
                    reindex_laws(d, &mut suite, x, y, f);
                }
                for g in &further {
                    reindex_composition(d, &mut suite, x, f, g);
                }
            }
        }
        for s in all_families(gamma, n) {
            let ext = c.ext(&s);
            if ext.len() > n as usize {
                continue;
            }
            let over_ext = preds(&ext);
            for r in &over_ext {
                for q in &here {
                    quantifier_laws(d, &mut suite, &s, q, r);
                }
                for f in &incoming {
                    beck_chevalley(d, &mut suite, &s, r, f);
                }
            }
        }
    }
    suite
}

/// The subset doctrine with every subset as a predicate.
pub fn subset_doctrine_laws(n: u32) -> LawSuite {
    finset_doctrine_laws(&SubsetDoctrine, n, Subset::all)
}

/// The propositions-as-types doctrine with every family of fiber size at
/// most `n` as a predicate.
pub fn pat_doctrine_laws(n: u32) -> LawSuite {
    finset_doctrine_laws(&PatDoctrine, n, |gamma| all_families(gamma, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_doctrine_at_size_two() {
        let suite = subset_doctrine_laws(2);
        assert!(suite.passed(), "{:?}", suite.reports());
    }

    #[test]
    fn pat_doctrine_at_size_two() {
        let suite = pat_doctrine_laws(2);
        assert!(suite.passed(), "{:?}", suite.reports().into_iter().filter(|r| !r.passed()).collect::<Vec<_>>());
    }
}
