//! Exhaustive low-degree torsion scan over small companionship trees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::integral::check_low_degree_torsion_free;
use crate::knot::{parse, validate, KnotExpr};

/// Shape of the enumerated trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub primes: Vec<u64>,
    /// Maximum number of internal vertices.
    pub max_internal: usize,
    pub leaves: Vec<KnotExpr>,
    /// Cable parameters `(alpha, beta)` used for cable vertices.
    pub cables: Vec<(i64, i64)>,
    /// One-child splice templates, `{}` standing for the child.
    pub splices: Vec<String>,
    pub max_arity: usize,
}

impl ScanConfig {
    /// Leaves `T(3,2)`, `T(5,2)`, cables `(3,2)`, reversed `W` splices, sums of at most five summands.
    pub fn standard(primes: Vec<u64>, max_internal: usize) -> Self {
        ScanConfig {
            primes,
            max_internal,
            leaves: vec![KnotExpr::torus(3, 2), KnotExpr::torus(5, 2)],
            cables: vec![(3, 2)],
            splices: vec!["hyp(W; m=2; rev=yes; {})".to_string()],
            max_arity: 5,
        }
    }
}

/// A failed or unevaluable check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanFinding {
    pub expr: String,
    pub prime: u64,
    /// First degree where the Betti numbers differ, or the error text.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub expressions: usize,
    pub checks: usize,
    pub violations: Vec<ScanFinding>,
    pub unsupported: Vec<ScanFinding>,
    pub errors: Vec<ScanFinding>,
}

impl ScanReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }
}

/// Admissible expressions with exactly `k` internal vertices, split into primes and sums.
fn layer(
    config: &ScanConfig,
    primes: &[Vec<KnotExpr>],
    sums: &[Vec<KnotExpr>],
    k: usize,
) -> (Vec<KnotExpr>, Vec<KnotExpr>) {
    if k == 0 {
        return (config.leaves.clone(), Vec::new());
    }
    let mut new_primes = Vec::new();
    for child in primes[k - 1].iter().chain(&sums[k - 1]) {
        for &(a, b) in &config.cables {
            new_primes.push(KnotExpr::cable(a, b, child.clone()));
        }
        for t in &config.splices {
            if let Ok(e) = parse(&t.replace("{}", &child.to_string())) {
                new_primes.push(e);
            }
        }
    }
    let mut new_sums = Vec::new();
    for arity in 2..=config.max_arity {
        multisets(primes, arity, k - 1, 0, 0, &mut Vec::new(), &mut new_sums);
    }
    (new_primes, new_sums)
}

/// Multisets of `left` primes with internal counts summing to `budget`, in non-decreasing (layer, index) order.
fn multisets(
    primes: &[Vec<KnotExpr>],
    left: usize,
    budget: usize,
    min_layer: usize,
    min_index: usize,
    acc: &mut Vec<KnotExpr>,
    out: &mut Vec<KnotExpr>,
) {
    if left == 0 {
        if budget == 0 {
            out.push(KnotExpr::sum(acc.clone()));
        }
        return;
    }
    for l in min_layer..=budget.min(primes.len() - 1) {
        let start = if l == min_layer { min_index } else { 0 };
        for i in start..primes[l].len() {
            acc.push(primes[l][i].clone());
            multisets(primes, left - 1, budget - l, l, i, acc, out);
            acc.pop();
        }
    }
}

/// Canonical admissible expressions, ordered by node count and then canonical text.
pub fn enumerate_expressions(config: &ScanConfig) -> Vec<KnotExpr> {
    let mut primes: Vec<Vec<KnotExpr>> = Vec::new();
    let mut sums: Vec<Vec<KnotExpr>> = Vec::new();
    for k in 0..=config.max_internal {
        let (p, s) = layer(config, &primes, &sums, k);
        primes.push(p);
        sums.push(s);
    }
    let unique: BTreeMap<(usize, String), KnotExpr> = primes
        .into_iter()
        .chain(sums)
        .flatten()
        .filter(|e| validate(e).is_empty())
        .map(|e| {
            let c = e.canonicalize();
            ((c.node_count(), c.to_string()), c)
        })
        .collect();
    unique.into_values().collect()
}

/// Runs the low-degree torsion check for every enumerated expression and prime.
pub fn scan(config: &ScanConfig) -> ScanReport {
    let exprs = enumerate_expressions(config);
    let jobs: Vec<(&KnotExpr, u64)> = exprs
        .iter()
        .flat_map(|e| config.primes.iter().map(move |&p| (e, p)))
        .collect();
    let results: Vec<(String, u64, Result<Option<usize>, Error>)> = jobs
        .par_iter()
        .map(|&(e, p)| {
            let r = check_low_degree_torsion_free(e, p).map(|r| r.first_failure);
            (e.to_string(), p, r)
        })
        .collect();
    let mut report = ScanReport {
        expressions: exprs.len(),
        checks: results.len(),
        violations: Vec::new(),
        unsupported: Vec::new(),
        errors: Vec::new(),
    };
    for (expr, prime, r) in results {
        let finding = |detail: String| ScanFinding {
            expr: expr.clone(),
            prime,
            detail,
        };
        match r {
            Ok(None) => {}
            Ok(Some(d)) => report.violations.push(finding(format!("degree {d}"))),
            Err(err @ (Error::UnsupportedSymmetry(_) | Error::UnsupportedClass(_))) => {
                report.unsupported.push(finding(err.to_string()))
            }
            Err(err) => report.errors.push(finding(err.to_string())),
        }
    }
    report
}
