mod oracle;

use gpdkit::fixtures::{groupoid, small_groupoids};
use gpdkit::groupoid::{enumerate_functors, FunctorFilter};
use std::sync::Arc;

#[test]
fn oracle_enumeration_matches_counts() {
    let g = |n: &str| Arc::new(groupoid(n).unwrap());
    // Fun(codiscrete2, codiscrete2) is determined by the object map
    assert_eq!(oracle::functors(&g("codiscrete2"), &g("codiscrete2")).len(), 4);
    // endomorphisms of Z2, of S3 (1 + 3 + 6)
    assert_eq!(oracle::functors(&g("BZ2"), &g("BZ2")).len(), 2);
    assert_eq!(oracle::functors(&g("BS3"), &g("BS3")).len(), 10);
    assert_eq!(oracle::functors(&g("discrete2"), &g("codiscrete3")).len(), 9);
}

#[test]
fn library_enumeration_matches_oracle() {
    let names = ["B1", "BZ2", "BZ3", "codiscrete2", "discrete2", "BZ2+B1", "codiscrete2xZ2"];
    for a in names {
        for b in names {
            let (ga, gb) = (Arc::new(groupoid(a).unwrap()), Arc::new(groupoid(b).unwrap()));
            let mut ours: Vec<_> = enumerate_functors(&ga, &gb, FunctorFilter::default()).iter().map(oracle::raw).collect();
            let mut theirs = oracle::functors(&ga, &gb);
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "{a} → {b}");
        }
    }
}

#[test]
fn pushouts_are_universal_among_small_groupoids() {
    let targets = small_groupoids(2, 8);
    for (name, i, f) in oracle::pushout_instances() {
        let check = oracle::pushout_universal_property(&i, &f, &targets);
        assert!(check.holds(), "{name}: {check:?}");
        assert!(check.cocones > 0, "{name}");
    }
}
