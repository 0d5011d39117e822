//! Construction and validation of symmetric degeneration chains: a sequence
//! of isotropic reductions (each certified by a one-parameter subgroup
//! grading) and split-offs of self-dual common summands taking one
//! ε-representation class to a Hom-smaller one.

use serde::{Deserialize, Serialize};

use crate::ar::ArQuiver;
use crate::error::ChainError;
use crate::generic::{
    can_embed_isotropically, generic_epsilon_subquotient, generic_quotient, IsotropicAnswer,
};
use crate::quiver::{DimVector, Interval};
use crate::rep::{is_epsilon_admissible, leq_hom, nabla_rep, EpsilonContext, HomTable, RepClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    SplitOff,
    IsotropicReduction,
}

/// One step of a chain. `stripped` records the common ε-summands normalized
/// away before the step; `lambda_blocks` lists, per vertex, the sizes of the
/// weight `+1 / 0 / -1` blocks of the certifying one-parameter subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub kind: StepKind,
    pub l: Interval,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<RepClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<RepClass>,
    pub stripped: RepClass,
    pub lambda_blocks: Vec<(u64, u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub start: RepClass,
    pub end: RepClass,
    pub steps: Vec<ChainStep>,
    pub intermediates: Vec<RepClass>,
}

/// A finite poset of classes with its covering relations.
#[derive(Debug, Clone, Serialize)]
pub struct Poset {
    pub nodes: Vec<RepClass>,
    pub covers: Vec<(usize, usize)>,
}

fn lambda_for(d: &DimVector, l: Interval, nabla_l: Interval) -> Vec<(u64, u64, u64)> {
    d.iter()
        .enumerate()
        .map(|(k, &dv)| {
            let v = k + 1;
            let a = l.contains(v) as u64;
            let c = nabla_l.contains(v) as u64;
            (a, dv as u64 - a - c, c)
        })
        .collect()
}

fn trivial_lambda(d: &DimVector) -> Vec<(u64, u64, u64)> {
    d.iter().map(|&dv| (0, dv as u64, 0)).collect()
}

/// The summands `l` of `b` with `[l, b]¹ = 0`. The construction is valid for
/// any such pivot; the ≼-minimal summands always qualify, so the set is
/// nonempty.
fn ext_vanishing_summands(gamma: &ArQuiver, table: &HomTable, b: &RepClass) -> Vec<Interval> {
    b.summands()
        .map(|(u, _)| u)
        .filter(|&l| match gamma.tau(l) {
            None => true,
            Some(tl) => b
                .summands()
                .all(|(v, _)| table.interval_hom(v, tl) == 0),
        })
        .collect()
}

/// The common ε-summands of `a` and `b`: these carry no degeneration content
/// and are normalized into the fixed part without spending a step. In split
/// types the invariant commons pair up hyperbolically, and both sides hold
/// them with even multiplicity, so the pointwise minimum is itself a valid
/// ε-class.
fn strippable_common(ctx: &EpsilonContext, a: &RepClass, b: &RepClass) -> RepClass {
    let c = a.common(b);
    debug_assert!(
        !ctx.is_split()
            || c.summands()
                .all(|(u, m)| !ctx.quiver.is_nabla_invariant(u) || m % 2 == 0)
    );
    c
}

/// Builds a symmetric degeneration chain from `m` to `n`, or decides that
/// none exists. Each round normalizes common ε-summands, then picks a pivot
/// summand `l` of the remaining target with `[l, target]¹ = 0` and performs
/// the generic isotropic reduction by it (or splits it off when self-dual).
/// Among the valid pivots the one whose subquotient shares the most
/// summands with the remaining target is taken, ties broken
/// lexicographically; this keeps the chains as short as the worked examples.
pub fn build_chain(
    gamma: &ArQuiver,
    table: &HomTable,
    ctx: &EpsilonContext,
    m: &RepClass,
    n: &RepClass,
) -> Result<Chain, ChainError> {
    let q = gamma.quiver();
    let nn = q.n();
    if !is_epsilon_admissible(ctx, m) || !is_epsilon_admissible(ctx, n) {
        return Err(ChainError::BadInput(
            "both endpoints must be ε-admissible".into(),
        ));
    }
    let d = m.dim_vector(nn);
    if d != n.dim_vector(nn) {
        return Err(ChainError::BadInput(
            "endpoints must share one dimension vector".into(),
        ));
    }
    if !leq_hom(table, m, n) {
        return Err(ChainError::NotDegeneration);
    }

    let mut a = m.clone();
    let mut b = n.clone();
    let mut fixed = RepClass::zero();
    let mut steps = Vec::new();
    let mut intermediates = vec![m.clone()];

    while a != b {
        let stripped = strippable_common(ctx, &a, &b);
        a = a.minus(&stripped).expect("stripped part is common");
        b = b.minus(&stripped).expect("stripped part is common");
        fixed = fixed.plus(&stripped);
        if a == b {
            break;
        }

        let candidates = ext_vanishing_summands(gamma, table, &b);
        if candidates.is_empty() {
            return Err(ChainError::Internal(
                "target residue has no Ext-vanishing summand".into(),
            ));
        }
        // score the non-invariant pivots by how much of the remaining target
        // their subquotient reproduces
        let mut best: Option<(u64, Interval, RepClass)> = None;
        for &l in &candidates {
            if q.is_nabla_invariant(l) {
                continue;
            }
            let Ok(y) = generic_epsilon_subquotient(gamma, table, ctx, &a, l) else {
                continue;
            };
            let mut rest = b.clone();
            rest.remove(l, 1);
            rest.remove(q.nabla_interval(l), 1);
            let overlap = y.common(&rest).summand_count();
            let better = match &best {
                None => true,
                Some((s, bl, _)) => overlap > *s || (overlap == *s && l < *bl),
            };
            if better {
                best = Some((overlap, l, y));
            }
        }

        let Some((_, l, y)) = best else {
            // only self-dual pivots remain; they must split off both sides
            let l = candidates[0];
            let copies = if ctx.is_split() { 2 } else { 1 };
            if b.multiplicity(l) < copies {
                return Err(ChainError::Internal(format!(
                    "invariant summand {l} lacks multiplicity {copies} in the target"
                )));
            }
            if a.multiplicity(l) < copies {
                return Err(ChainError::Internal(format!(
                    "invariant summand {l} should split off the source (multiplicity {})",
                    a.multiplicity(l)
                )));
            }
            let e = RepClass::of(&[(l, copies)]);
            a.remove(l, copies);
            b.remove(l, copies);
            fixed.add(l, copies);
            steps.push(ChainStep {
                kind: StepKind::SplitOff,
                l,
                y: None,
                e: Some(e),
                stripped,
                lambda_blocks: trivial_lambda(&d),
            });
            intermediates.push(fixed.plus(&a));
            continue;
        };

        let nabla_l = q.nabla_interval(l);
        if b.multiplicity(l) < 1 || b.multiplicity(nabla_l) < 1 {
            return Err(ChainError::Internal(format!(
                "target residue must contain {l} and {nabla_l}"
            )));
        }
        b.remove(l, 1);
        b.remove(nabla_l, 1);
        fixed.add(l, 1);
        fixed.add(nabla_l, 1);
        a = y.clone();
        steps.push(ChainStep {
            kind: StepKind::IsotropicReduction,
            l,
            y: Some(y),
            e: None,
            stripped,
            lambda_blocks: lambda_for(&d, l, nabla_l),
        });
        intermediates.push(fixed.plus(&a));
    }

    let chain = Chain {
        start: m.clone(),
        end: n.clone(),
        steps,
        intermediates,
    };
    debug_assert_eq!(chain.intermediates.last().unwrap(), n);
    Ok(chain)
}

/// Replays a chain and checks every step contract: bookkeeping of the
/// stripped and fixed parts, ε-admissibility of all intermediates, the
/// generic-subquotient equations for isotropic reductions, the split-off
/// pairing, the λ-block grading, and the Hom-order between consecutive
/// intermediates. Returns a diagnostic naming the first failing step.
pub fn validate_chain(
    gamma: &ArQuiver,
    table: &HomTable,
    ctx: &EpsilonContext,
    chain: &Chain,
) -> Result<(), String> {
    let q = gamma.quiver();
    let nn = q.n();
    let fail = |step: usize, reason: &str| Err(format!("step {step}: {reason}"));

    if !is_epsilon_admissible(ctx, &chain.start) || !is_epsilon_admissible(ctx, &chain.end) {
        return Err("endpoints are not ε-admissible".into());
    }
    let d = chain.start.dim_vector(nn);
    if d != chain.end.dim_vector(nn) {
        return Err("endpoint dimension vectors differ".into());
    }
    if !q.is_sigma_symmetric(&d) {
        return Err("dimension vector is not σ-symmetric".into());
    }
    if chain.intermediates.len() != chain.steps.len() + 1 {
        return Err("intermediates must list one class per step plus the start".into());
    }
    if chain.intermediates[0] != chain.start {
        return Err("first intermediate must equal the start".into());
    }

    let mut a = chain.start.clone();
    let mut b = chain.end.clone();
    let mut fixed = RepClass::zero();

    for (idx, step) in chain.steps.iter().enumerate() {
        let prev = &chain.intermediates[idx];
        let next = &chain.intermediates[idx + 1];

        if nabla_rep(q, &step.stripped) != step.stripped {
            return fail(idx, "stripped part is not self-dual");
        }
        let (Some(a2), Some(b2)) = (a.minus(&step.stripped), b.minus(&step.stripped)) else {
            return fail(idx, "stripped part is not a common summand");
        };
        a = a2;
        b = b2;
        fixed = fixed.plus(&step.stripped);

        match step.kind {
            StepKind::SplitOff => {
                let Some(e) = &step.e else {
                    return fail(idx, "split-off step carries no class E");
                };
                if !q.is_nabla_invariant(step.l) {
                    return fail(idx, "split-off pivot must be ∇-invariant");
                }
                let copies = if ctx.is_split() { 2 } else { 1 };
                if *e != RepClass::of(&[(step.l, copies)]) {
                    return fail(idx, "split-off class must be L (non-split) or L² (split)");
                }
                if !a.contains(e) || !b.contains(e) {
                    return fail(idx, "split-off class must be a common summand");
                }
                a = a.minus(e).unwrap();
                b = b.minus(e).unwrap();
                fixed = fixed.plus(e);
            }
            StepKind::IsotropicReduction => {
                let Some(y) = &step.y else {
                    return fail(idx, "isotropic reduction carries no subquotient Y");
                };
                if q.is_nabla_invariant(step.l) {
                    return fail(idx, "isotropic reduction needs L not isomorphic to ∇L");
                }
                if generic_quotient(gamma, &a, step.l).is_err() {
                    return fail(idx, "L does not embed into the active part");
                }
                if can_embed_isotropically(gamma, table, ctx, &a, step.l) != IsotropicAnswer::Yes
                {
                    return fail(idx, "no generic isotropic embedding of L");
                }
                match generic_epsilon_subquotient(gamma, table, ctx, &a, step.l) {
                    Ok(expected) if expected == *y => {}
                    _ => return fail(idx, "Y is not the generic ε-subquotient"),
                }
                let nabla_l = q.nabla_interval(step.l);
                if b.multiplicity(step.l) == 0 || b.multiplicity(nabla_l) == 0 {
                    return fail(idx, "target residue does not contain L ⊕ ∇L");
                }
                b.remove(step.l, 1);
                b.remove(nabla_l, 1);
                fixed.add(step.l, 1);
                fixed.add(nabla_l, 1);
                a = y.clone();
                let expect_lambda = lambda_for(&d, step.l, nabla_l);
                if step.lambda_blocks != expect_lambda {
                    return fail(idx, "λ-block grading does not match L, Y, ∇L");
                }
            }
        }

        let reassembled = fixed.plus(&a);
        if reassembled != *next {
            return fail(idx, "recorded intermediate does not match the replay");
        }
        if next.dim_vector(nn) != d {
            return fail(idx, "intermediate changes the dimension vector");
        }
        if !is_epsilon_admissible(ctx, next) {
            return fail(idx, "intermediate is not ε-admissible");
        }
        if !leq_hom(table, prev, next) {
            return fail(idx, "step is not a Hom-order degeneration");
        }
    }

    if a != b {
        return Err("chain does not reach the endpoint".into());
    }
    if chain.intermediates.last().unwrap() != &chain.end {
        return Err("last intermediate must equal the end".into());
    }
    Ok(())
}

/// The Hasse diagram of the symmetric degeneration order on all ε-admissible
/// classes of dimension vector `d`.
pub fn hasse(gamma: &ArQuiver, table: &HomTable, ctx: &EpsilonContext, d: &DimVector) -> Poset {
    let nodes = crate::matrix::enumerate_epsilon_classes(gamma.quiver(), ctx, d);
    let k = nodes.len();
    let mut less = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            less[i][j] = i != j && leq_hom(table, &nodes[i], &nodes[j]);
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if less[i][j] && !(0..k).any(|x| less[i][x] && less[x][j]) {
                covers.push((i, j));
            }
        }
    }
    Poset { nodes, covers }
}
