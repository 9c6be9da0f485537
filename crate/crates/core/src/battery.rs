//! Cross-checks of the closed formulas against the symbolic oracle.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::ncpoly::NCPoly;
use crate::oracle::{
    embedding_respects_relations, plucker_realize, quantum_minor, quasi_commutation_exponent, verify_embedding,
    verify_qplucker_relation,
};
use crate::separation::{minor_exponent, plucker_exponent};
use crate::subset::{all_minors, k_subsets, KSubset, MinorIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Description of the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckReport {
    fn from_results(name: &str, results: Vec<std::result::Result<(), String>>) -> Self {
        let failed: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
        Self {
            name: name.to_string(),
            passed: results.len() - failed.len(),
            failed: failed.len(),
            first_failure: failed.into_iter().next(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckReport>,
}

impl BatteryReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn outcome(ok: Result<bool>, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    match ok {
        Ok(true) => Ok(()),
        Ok(false) => Err(what()),
        Err(e) => Err(format!("{}: {e}", what())),
    }
}

/// Symbolic exponent of every pair of minors against the closed formula.
pub fn minor_exponent_check(minors: &[MinorIndex], exec: Execution) -> CheckReport {
    let polys: Vec<NCPoly> = exec::map(exec, minors, quantum_minor);
    let pairs: Vec<(usize, usize)> = (0..minors.len()).cartesian_product(0..minors.len()).collect();
    let results = exec::map(exec, &pairs, |&(a, b)| {
        let (p, r) = (&minors[a], &minors[b]);
        let ok = quasi_commutation_exponent(&polys[a], &polys[b])
            .and_then(|sym| Ok(sym == minor_exponent(p, r)?));
        outcome(ok, || format!("minors {p:?} and {r:?}"))
    });
    let name = minors.first().map_or("minor exponents".to_string(), |m| format!("minor exponents {}x{}", m.k(), m.m()));
    CheckReport::from_results(&name, results)
}

/// Realized Plücker coordinates against the exponent formula.
pub fn plucker_exponent_check(k: u8, n: u8, exec: Execution) -> CheckReport {
    let sets: Vec<KSubset> = k_subsets(k, n).collect();
    let real: Vec<NCPoly> = exec::map(exec, &sets, |s| plucker_realize(s, k, n).expect("sizes match"));
    let pairs: Vec<(usize, usize)> = (0..sets.len()).cartesian_product(0..sets.len()).collect();
    let results = exec::map(exec, &pairs, |&(a, b)| {
        let ok = quasi_commutation_exponent(&real[a], &real[b])
            .and_then(|sym| Ok(sym == plucker_exponent(&sets[a], &sets[b])?));
        outcome(ok, || format!("coordinates {} and {}", sets[a], sets[b]))
    });
    CheckReport::from_results(&format!("plucker exponents k={k} n={n}"), results)
}

/// Every quantum Grassmannian relation for `(k+1, k-1)`-subsets.
pub fn qplucker_check(k: u8, n: u8, exec: Execution) -> CheckReport {
    let pairs: Vec<(KSubset, KSubset)> =
        k_subsets(k + 1, n).cartesian_product(k_subsets(k - 1, n).collect::<Vec<_>>()).collect();
    let results = exec::map(exec, &pairs, |(i, j)| {
        outcome(verify_qplucker_relation(i, j, k, n), || format!("relation I={i} J={j}"))
    });
    CheckReport::from_results(&format!("grassmannian relations k={k} n={n}"), results)
}

/// The matrix-to-Grassmannian embedding on every minor.
pub fn embedding_check(k: u8, m: u8, exec: Execution) -> CheckReport {
    let minors = all_minors(k, m, 1..=k.min(m));
    let mut results = vec![outcome(embedding_respects_relations(k, m), || "generator relations".to_string())];
    results.extend(exec::map(exec, &minors, |mi| {
        outcome(verify_embedding(mi).map(|c| c.minor_matches), || format!("minor {mi:?}"))
    }));
    CheckReport::from_results(&format!("embedding k={k} m={m}"), results)
}

/// `Δ13 Δ24 = q Δ12 Δ34 + q^-1 Δ14 Δ23` in the realization.
pub fn straightening_check() -> CheckReport {
    let ok = (|| -> Result<bool> {
        let p = |e: [u8; 2]| plucker_realize(&KSubset::new(4, e)?, 2, 4);
        let lhs = p([1, 3])?.multiply(&p([2, 4])?)?;
        let rhs = p([1, 2])?.multiply(&p([3, 4])?)?.shift(1).add(&p([1, 4])?.multiply(&p([2, 3])?)?.shift(-1))?;
        Ok(lhs == rhs)
    })();
    CheckReport::from_results("short plucker straightening", vec![outcome(ok, || "k=2 n=4".to_string())])
}

/// `Δ[1..k]` quasi-commutes with every realized coordinate.
pub fn quasi_central_check(k: u8, n: u8) -> CheckReport {
    let base = plucker_realize(&KSubset::initial(k, n), k, n).expect("sizes match");
    let results = k_subsets(k, n)
        .map(|s| {
            let ok = plucker_realize(&s, k, n)
                .and_then(|p| quasi_commutation_exponent(&base, &p))
                .map(|c| c.is_some());
            outcome(ok, || format!("coordinate {s}"))
        })
        .collect();
    CheckReport::from_results(&format!("quasi-central initial coordinate k={k} n={n}"), results)
}

/// Names of the available suites.
pub const SUITES: &[&str] = &["small"];

pub fn run_suite(name: &str, exec: Execution) -> Result<BatteryReport> {
    if name != "small" {
        return Err(Error::Unsupported(format!("unknown suite {name:?}; available: {}", SUITES.join(", "))));
    }
    let mut checks = vec![
        minor_exponent_check(&all_minors(2, 2, 1..=2), exec),
        minor_exponent_check(&all_minors(2, 3, 1..=2), exec),
    ];
    for n in 4..=5 {
        checks.push(plucker_exponent_check(2, n, exec));
        checks.push(qplucker_check(2, n, exec));
        checks.push(quasi_central_check(2, n));
    }
    checks.push(straightening_check());
    checks.push(embedding_check(2, 2, exec));
    let passed = checks.iter().map(|c| c.passed).sum();
    let failed = checks.iter().map(|c| c.failed).sum();
    Ok(BatteryReport { suite: name.to_string(), passed, failed, checks })
}
