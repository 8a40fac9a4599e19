//! The numeric core instantiated at single precision.

use cnot_core::catalog::{audit_catalog, builtin_catalog};
use cnot_core::{check_similarity, classify_cnot_like, enumerate_family, lookup, Op4F32, Verdict};

#[test]
fn catalog_reproduces_in_single_precision() {
    let records = audit_catalog::<f32>(builtin_catalog(), 1e-5);
    assert!(records.iter().all(|r| r.r_matches_declared));
}

#[test]
fn similarity_in_single_precision() {
    let a: Op4F32 = lookup("C_c1").unwrap().matrix();
    let b: Op4F32 = lookup("C_c2").unwrap().matrix();
    assert_eq!(check_similarity(&a, &b, 1e-4).unwrap().verdict, Verdict::Similar);
    let g: Op4F32 = lookup("C_g").unwrap().matrix();
    assert_eq!(check_similarity(&g, &a, 1e-4).unwrap().verdict, Verdict::NotSimilar);
}

#[test]
fn family_classifies_in_single_precision() {
    let fam = enumerate_family::<f32>();
    assert_eq!(fam.len(), 16);
    for (_, m) in fam {
        classify_cnot_like(&m, 1e-5).unwrap();
    }
}
