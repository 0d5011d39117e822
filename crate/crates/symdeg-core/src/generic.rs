//! Generic quotients by an indecomposable, their duals, and the generic
//! ε-subquotients obtained from generic isotropic embeddings.

use crate::ar::{ArQuiver, PathDirection};
use crate::error::GenericOpError;
use crate::quiver::{dim_sub, Interval};
use crate::rep::{ext_dim, nabla_rep, EpsilonContext, HomTable, RepClass};

/// Result of the generic-quotient construction: the ≼-minimal hammock
/// summands `t0` (top to bottom), the quotient's fresh summands `t1`, the
/// untouched complement, and the assembled quotient class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenQuotResult {
    pub t0: Vec<Interval>,
    pub t1: Vec<Interval>,
    pub mtilde: RepClass,
    pub quotient: RepClass,
}

/// Three-valued answer for isotropic embeddability; the hypotheses behind
/// `HypothesesFail` are sufficient but not known to be necessary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropicAnswer {
    Yes,
    No,
    HypothesesFail,
}

/// The generic quotient of `m` by the indecomposable `l`, or the proof that
/// `l` does not embed. Follows the hammock construction: take one copy of
/// each ≼-minimal summand inside the hammock of `l`, join consecutive ones,
/// and continue past the two boundary summands along sectional rays.
pub fn generic_quotient(
    gamma: &ArQuiver,
    m: &RepClass,
    l: Interval,
) -> Result<GenQuotResult, GenericOpError> {
    let n = gamma.quiver().n();
    let in_hammock: Vec<Interval> = m
        .summands()
        .map(|(u, _)| u)
        .filter(|&u| gamma.hom_dim_path(l, u) == 1)
        .collect();
    if in_hammock.is_empty() {
        return Err(GenericOpError::NotEmbeddable { l });
    }
    let mut t0: Vec<Interval> = in_hammock
        .iter()
        .copied()
        .filter(|&u| !in_hammock.iter().any(|&v| v != u && gamma.precedes(v, u)))
        .collect();
    t0.sort_by_key(|&u| gamma.level(u));
    debug_assert!(
        t0.windows(2).all(|w| gamma.level(w[0]) < gamma.level(w[1])),
        "minimal hammock summands sit at distinct levels"
    );

    let mut mtilde = m.clone();
    for &u in &t0 {
        mtilde.remove(u, 1);
    }

    let mut t1 = Vec::new();
    // north-east boundary of the hammock
    if !sectional_in_direction(gamma, l, t0[0], PathDirection::Ne) {
        match first_outside_hammock(gamma, l, t0[0], PathDirection::Ne) {
            Some(v) => t1.push(v),
            None => return Err(GenericOpError::NotEmbeddable { l }),
        }
    }
    // interior joins
    for w in t0.windows(2) {
        match gamma.join(w[0], w[1]) {
            Some(v) => t1.push(v),
            None => return Err(GenericOpError::NotEmbeddable { l }),
        }
    }
    // south-east boundary
    let last = *t0.last().unwrap();
    if !sectional_in_direction(gamma, l, last, PathDirection::Se) {
        match first_outside_hammock(gamma, l, last, PathDirection::Se) {
            Some(v) => t1.push(v),
            None => return Err(GenericOpError::NotEmbeddable { l }),
        }
    }

    let mut quotient = mtilde.clone();
    for &u in &t1 {
        quotient.add(u, 1);
    }
    let expect = dim_sub(&m.dim_vector(n), &l.dim_vector(n));
    assert_eq!(
        quotient.dim_vector(n),
        expect,
        "generic quotient must be exact on dimension vectors"
    );
    Ok(GenQuotResult {
        t0,
        t1,
        mtilde,
        quotient,
    })
}

fn sectional_in_direction(gamma: &ArQuiver, from: Interval, to: Interval, dir: PathDirection) -> bool {
    match gamma.sectional_path(from, to) {
        Some(p) => p.direction == dir || p.direction == PathDirection::Trivial,
        None => false,
    }
}

/// First vertex outside the hammock of `l` on the `dir`-sectional ray from
/// `start` (exclusive).
fn first_outside_hammock(
    gamma: &ArQuiver,
    l: Interval,
    start: Interval,
    dir: PathDirection,
) -> Option<Interval> {
    gamma
        .sectional_ray(start, dir)
        .into_iter()
        .skip(1)
        .find(|&v| gamma.hom_dim_path(l, v) == 0)
}

/// Generic kernel of a surjection onto the indecomposable `qt`, obtained
/// from the generic quotient of the dual.
pub fn generic_kernel(
    gamma: &ArQuiver,
    m: &RepClass,
    qt: Interval,
) -> Result<RepClass, GenericOpError> {
    let q = gamma.quiver();
    let dual = generic_quotient(gamma, &nabla_rep(q, m), q.nabla_interval(qt))
        .map_err(|_| GenericOpError::NoSurjection { q: qt })?;
    Ok(nabla_rep(q, &dual.quotient))
}

/// Can `l` be embedded isotropically into the ε-representation `m`? In the
/// split types every embedding is isotropic, so embeddability decides. In
/// the non-split types we verify the sufficient conditions: either
/// `[l, ∇l] = 0`, or the generic quotient surjects onto `∇l` with a kernel
/// that `l` does not extend.
pub fn can_embed_isotropically(
    gamma: &ArQuiver,
    table: &HomTable,
    ctx: &EpsilonContext,
    m: &RepClass,
    l: Interval,
) -> IsotropicAnswer {
    let Ok(gq) = generic_quotient(gamma, m, l) else {
        return IsotropicAnswer::No;
    };
    if ctx.is_split() {
        return IsotropicAnswer::Yes;
    }
    let q = gamma.quiver();
    let nabla_l = q.nabla_interval(l);
    if table.interval_hom(l, nabla_l) == 0 {
        return IsotropicAnswer::Yes;
    }
    let Ok(kernel) = generic_kernel(gamma, &gq.quotient, nabla_l) else {
        return IsotropicAnswer::HypothesesFail;
    };
    if ext_dim(q, table, &RepClass::single(l), &kernel) == 0 {
        IsotropicAnswer::Yes
    } else {
        IsotropicAnswer::HypothesesFail
    }
}

/// The class of `ι(l)^⊥ / ι(l)` for a generic isotropic embedding of `l`
/// into `m`: `T¹ ⊕ ∇T¹ ⊕ M̄` in the split types, the generic quotient of
/// `∇Q` by `l` in the non-split ones.
pub fn generic_epsilon_subquotient(
    gamma: &ArQuiver,
    table: &HomTable,
    ctx: &EpsilonContext,
    m: &RepClass,
    l: Interval,
) -> Result<RepClass, GenericOpError> {
    if can_embed_isotropically(gamma, table, ctx, m, l) != IsotropicAnswer::Yes {
        return Err(GenericOpError::PreconditionViolated(format!(
            "{l} has no generic isotropic embedding into {m}"
        )));
    }
    let q = gamma.quiver();
    let gq = generic_quotient(gamma, m, l).expect("checked by can_embed_isotropically");
    let y = if ctx.is_split() {
        let t0: RepClass = gq
            .t0
            .iter()
            .fold(RepClass::zero(), |mut acc, &u| {
                acc.add(u, 1);
                acc
            });
        let mbar = m
            .minus(&t0)
            .and_then(|rest| rest.minus(&nabla_rep(q, &t0)))
            .ok_or_else(|| {
                GenericOpError::PreconditionViolated(format!(
                    "{m} does not decompose as T0 + ∇T0 + rest; is it ε-admissible?"
                ))
            })?;
        let mut y = mbar;
        for &u in &gq.t1 {
            y.add(u, 1);
            y.add(q.nabla_interval(u), 1);
        }
        y
    } else {
        let nabla_q = nabla_rep(q, &gq.quotient);
        generic_quotient(gamma, &nabla_q, l)
            .map_err(|_| {
                GenericOpError::PreconditionViolated(format!(
                    "{l} does not embed into the dual quotient of {m}"
                ))
            })?
            .quotient
    };
    let n = q.n();
    let expect = dim_sub(
        &dim_sub(&m.dim_vector(n), &l.dim_vector(n)),
        &q.nabla_interval(l).dim_vector(n),
    );
    assert_eq!(y.dim_vector(n), expect, "ε-subquotient dimension bookkeeping");
    Ok(y)
}
