//! Exhaustive desk-scale invariant sweeps. These back the `selftest` command
//! and the acceptance suite: three-way Hom agreement, the one-dimensionality
//! bounds, the AR formula, δ-parity, and the Main Theorem round trip.

use crate::ar::ArQuiver;
use crate::chain::{build_chain, validate_chain};
use crate::error::ChainError;
use crate::matrix::{enumerate_epsilon_classes, hom_dim_points, realize};
use crate::quiver::{DimVector, SymmetricQuiver};
use crate::rep::{delta, is_delta_fixed, EpsilonContext, HomTable, RepClass};

/// Outcome of one sweep: how many cases ran and the first failure, if any.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub name: &'static str,
    pub checked: u64,
    pub failure: Option<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("{}: PASS ({} cases)", self.name, self.checked),
            Some(f) => format!("{}: FAIL ({} cases) — {}", self.name, self.checked, f),
        }
    }
}

/// Every compatible quiver with `2 ≤ n ≤ n_max`.
pub fn all_quivers(n_max: usize) -> Vec<SymmetricQuiver> {
    (2..=n_max)
        .flat_map(SymmetricQuiver::all_compatible)
        .collect()
}

/// All σ-symmetric dimension vectors with total dimension in `1..=total_max`.
pub fn sigma_symmetric_dims(q: &SymmetricQuiver, total_max: i64) -> Vec<DimVector> {
    let n = q.n();
    let free = n.div_ceil(2);
    let mut out = Vec::new();
    let mut d = vec![0i64; n];
    fn rec(
        d: &mut DimVector,
        idx: usize,
        free: usize,
        n: usize,
        total_max: i64,
        out: &mut Vec<DimVector>,
    ) {
        if idx == free {
            let total: i64 = d.iter().sum();
            if total > 0 && total <= total_max {
                out.push(d.clone());
            }
            return;
        }
        let weight = if n - 1 - idx == idx { 1 } else { 2 };
        let used: i64 = d.iter().sum();
        let mut v = 0;
        while used + weight * v <= total_max {
            d[idx] = v;
            d[n - 1 - idx] = v;
            rec(d, idx + 1, free, n, total_max, out);
            v += 1;
        }
        d[idx] = 0;
        d[n - 1 - idx] = 0;
    }
    rec(&mut d, 0, free, n, total_max, &mut out);
    out.sort();
    out
}

/// Criterion sweep: for every interval pair, the path calculus, the linear
/// system, and the matrix-level intertwiner count must agree.
pub fn hom_three_way(n_max: usize) -> SweepReport {
    let mut checked = 0;
    for q in all_quivers(n_max) {
        let gamma = ArQuiver::build(&q);
        let table = HomTable::new(&q);
        let points: Vec<_> = q
            .intervals()
            .map(|e| realize(&q, &RepClass::single(e)))
            .collect();
        let intervals: Vec<_> = q.intervals().collect();
        for (ai, &a) in intervals.iter().enumerate() {
            for (bi, &b) in intervals.iter().enumerate() {
                checked += 1;
                let by_path = gamma.hom_dim_path(a, b);
                let by_linear = table.interval_hom(a, b);
                let by_points = hom_dim_points(&points[ai], &points[bi]) as i64;
                if by_path != by_linear || by_linear != by_points {
                    return SweepReport {
                        name: "hom three-way agreement",
                        checked,
                        failure: Some(format!(
                            "{} hom({a},{b}): path={by_path} linear={by_linear} points={by_points}",
                            q.text()
                        )),
                    };
                }
            }
        }
    }
    SweepReport {
        name: "hom three-way agreement",
        checked,
        failure: None,
    }
}

/// `[L,E] ≤ 1`, `[L,E]¹ ≤ 1`, and their product vanishes.
pub fn one_dimensional_bounds(n_max: usize) -> SweepReport {
    let mut checked = 0;
    for q in all_quivers(n_max) {
        let gamma = ArQuiver::build(&q);
        for a in q.intervals() {
            for b in q.intervals() {
                checked += 1;
                let h = gamma.hom_dim_path(a, b);
                let x = gamma.ext_dim_path(a, b);
                if !(0..=1).contains(&h) || !(0..=1).contains(&x) || h * x != 0 {
                    return SweepReport {
                        name: "one-dimensionality",
                        checked,
                        failure: Some(format!("{} pair ({a},{b}): hom={h} ext={x}", q.text())),
                    };
                }
            }
        }
    }
    SweepReport {
        name: "one-dimensionality",
        checked,
        failure: None,
    }
}

/// The AR formula `[L,E]¹ = [E, τL]` and the Euler-form identity
/// `[L,E] − [L,E]¹ = ⟨dim L, dim E⟩` on every interval pair.
pub fn ar_formula_and_euler(n_max: usize) -> SweepReport {
    let mut checked = 0;
    for q in all_quivers(n_max) {
        let gamma = ArQuiver::build(&q);
        let table = HomTable::new(&q);
        for a in q.intervals() {
            for b in q.intervals() {
                checked += 1;
                let ext = gamma.ext_dim_path(a, b);
                let via_tau = match gamma.tau(a) {
                    Some(ta) => table.interval_hom(b, ta),
                    None => 0,
                };
                let euler = q.euler_form(&a.dim_vector(q.n()), &b.dim_vector(q.n()));
                let hom = table.interval_hom(a, b);
                if ext != via_tau || hom - ext != euler {
                    return SweepReport {
                        name: "AR formula and Euler consistency",
                        checked,
                        failure: Some(format!(
                            "{} pair ({a},{b}): ext={ext} [E,τL]={via_tau} hom−ext={} euler={euler}",
                            q.text(),
                            hom - ext
                        )),
                    };
                }
            }
        }
    }
    SweepReport {
        name: "AR formula and Euler consistency",
        checked,
        failure: None,
    }
}

/// δ self-duality and, in the split types, evenness of `δ_{M,N}` on every
/// δ-fixed interval, over all admissible pairs of bounded total dimension.
pub fn delta_laws(n_max: usize, total_max: i64) -> SweepReport {
    let mut checked = 0;
    for q in all_quivers(n_max) {
        let gamma = ArQuiver::build(&q);
        let table = HomTable::new(&q);
        let intervals: Vec<_> = q.intervals().collect();
        // δ(m, n, e) pairs e with τ∇e; δ-fixed intervals demand even values
        let dual_index: Vec<Option<usize>> = intervals
            .iter()
            .map(|&e| {
                gamma
                    .tau(q.nabla_interval(e))
                    .map(|te| intervals.iter().position(|&x| x == te).unwrap())
            })
            .collect();
        let fixed: Vec<bool> = intervals.iter().map(|&e| is_delta_fixed(&gamma, e)).collect();
        for eps in [1i8, -1] {
            let ctx = EpsilonContext::new(q.clone(), eps);
            for d in sigma_symmetric_dims(&q, total_max) {
                let classes = enumerate_epsilon_classes(&q, &ctx, &d);
                let hom_vecs: Vec<Vec<i64>> = classes
                    .iter()
                    .map(|c| {
                        intervals
                            .iter()
                            .map(|&e| crate::rep::hom_dim(&table, c, &RepClass::single(e)))
                            .collect()
                    })
                    .collect();
                for (i, m) in classes.iter().enumerate() {
                    for (j, n_cl) in classes.iter().enumerate() {
                        for (ei, &e) in intervals.iter().enumerate() {
                            let dln = hom_vecs[j][ei] - hom_vecs[i][ei];
                            debug_assert_eq!(dln, delta(&table, m, n_cl, e));
                            if let Some(ti) = dual_index[ei] {
                                checked += 1;
                                let dual = hom_vecs[j][ti] - hom_vecs[i][ti];
                                if dln != dual {
                                    return SweepReport {
                                        name: "delta laws",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps} δ({m}, {n_cl}) differs at {e} vs τ∇{e}",
                                            q.text()
                                        )),
                                    };
                                }
                            }
                            if ctx.is_split() && fixed[ei] {
                                checked += 1;
                                if dln % 2 != 0 {
                                    return SweepReport {
                                        name: "delta laws",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps} δ_{{{m},{n_cl}}}({e}) = {dln} is odd",
                                            q.text()
                                        )),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    SweepReport {
        name: "delta laws",
        checked,
        failure: None,
    }
}

/// The Main Theorem round trip: over every admissible ordered pair of equal
/// dimension vector, `build_chain` succeeds exactly when the Hom-order
/// holds, and every produced chain validates.
pub fn main_theorem_round_trip(n_max: usize, total_max: i64) -> SweepReport {
    let mut checked = 0;
    for q in all_quivers(n_max) {
        let gamma = ArQuiver::build(&q);
        let table = HomTable::new(&q);
        for eps in [1i8, -1] {
            let ctx = EpsilonContext::new(q.clone(), eps);
            for d in sigma_symmetric_dims(&q, total_max) {
                let classes = enumerate_epsilon_classes(&q, &ctx, &d);
                // precompute the hom vectors once per class
                let hom_vecs: Vec<Vec<i64>> = classes
                    .iter()
                    .map(|c| {
                        table
                            .intervals()
                            .iter()
                            .map(|&e| {
                                crate::rep::hom_dim(&table, c, &RepClass::single(e))
                            })
                            .collect()
                    })
                    .collect();
                for (i, m) in classes.iter().enumerate() {
                    for (j, n_cl) in classes.iter().enumerate() {
                        checked += 1;
                        let expected = hom_vecs[i]
                            .iter()
                            .zip(&hom_vecs[j])
                            .all(|(a, b)| a <= b);
                        match build_chain(&gamma, &table, &ctx, m, n_cl) {
                            Ok(chain) => {
                                if !expected {
                                    return SweepReport {
                                        name: "main theorem round trip",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps}: chain built for non-degeneration {m} → {n_cl}",
                                            q.text()
                                        )),
                                    };
                                }
                                if let Err(why) = validate_chain(&gamma, &table, &ctx, &chain) {
                                    return SweepReport {
                                        name: "main theorem round trip",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps}: invalid chain {m} → {n_cl}: {why}",
                                            q.text()
                                        )),
                                    };
                                }
                                if chain.steps.len() as u64 > n_cl.summand_count() {
                                    return SweepReport {
                                        name: "main theorem round trip",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps}: chain {m} → {n_cl} too long",
                                            q.text()
                                        )),
                                    };
                                }
                            }
                            Err(ChainError::NotDegeneration) => {
                                if expected {
                                    return SweepReport {
                                        name: "main theorem round trip",
                                        checked,
                                        failure: Some(format!(
                                            "{} ε={eps}: no chain for degeneration {m} → {n_cl}",
                                            q.text()
                                        )),
                                    };
                                }
                            }
                            Err(other) => {
                                return SweepReport {
                                    name: "main theorem round trip",
                                    checked,
                                    failure: Some(format!(
                                        "{} ε={eps}: {m} → {n_cl}: {other}",
                                        q.text()
                                    )),
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    SweepReport {
        name: "main theorem round trip",
        checked,
        failure: None,
    }
}
