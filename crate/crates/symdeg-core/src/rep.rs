//! Isomorphism classes of representations as multisets of intervals, the
//! Hom/Ext dimensions, duality, ε-admissibility, the δ-function, and the
//! Hom-order test that decides degenerations.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ar::ArQuiver;
use crate::error::RepError;
use crate::quiver::{DimVector, Interval, SymmetricQuiver};

/// A finite multiset of intervals; by Krull-Schmidt this *is* the iso-class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct RepClass {
    mult: BTreeMap<Interval, u64>,
}

impl RepClass {
    pub fn zero() -> Self {
        RepClass::default()
    }

    pub fn of(summands: &[(Interval, u64)]) -> Self {
        let mut c = RepClass::zero();
        for &(u, m) in summands {
            c.add(u, m);
        }
        c
    }

    pub fn single(u: Interval) -> Self {
        RepClass::of(&[(u, 1)])
    }

    pub fn add(&mut self, u: Interval, m: u64) {
        if m > 0 {
            *self.mult.entry(u).or_insert(0) += m;
        }
    }

    /// Removes `m` copies of `u`; panics if fewer are present.
    pub fn remove(&mut self, u: Interval, m: u64) {
        if m == 0 {
            return;
        }
        let cur = self.mult.get_mut(&u).expect("summand not present");
        assert!(*cur >= m, "cannot remove {m} copies of {u}");
        *cur -= m;
        if *cur == 0 {
            self.mult.remove(&u);
        }
    }

    pub fn multiplicity(&self, u: Interval) -> u64 {
        self.mult.get(&u).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    /// Distinct summand iso-classes in lexicographic order.
    pub fn summands(&self) -> impl Iterator<Item = (Interval, u64)> + '_ {
        self.mult.iter().map(|(&u, &m)| (u, m))
    }

    pub fn summand_count(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn dim_vector(&self, n: usize) -> DimVector {
        let mut d = vec![0i64; n];
        for (u, m) in self.summands() {
            for v in u.i..=u.j {
                d[v - 1] += m as i64;
            }
        }
        d
    }

    pub fn total_dim(&self) -> u64 {
        self.mult.iter().map(|(u, m)| u.len() as u64 * m).sum()
    }

    pub fn plus(&self, other: &RepClass) -> RepClass {
        let mut c = self.clone();
        for (u, m) in other.summands() {
            c.add(u, m);
        }
        c
    }

    /// Multiset difference; `None` if `other` is not contained in `self`.
    pub fn minus(&self, other: &RepClass) -> Option<RepClass> {
        let mut c = self.clone();
        for (u, m) in other.summands() {
            if c.multiplicity(u) < m {
                return None;
            }
            c.remove(u, m);
        }
        Some(c)
    }

    pub fn contains(&self, other: &RepClass) -> bool {
        other.summands().all(|(u, m)| self.multiplicity(u) >= m)
    }

    /// Pointwise minimum with `other`.
    pub fn common(&self, other: &RepClass) -> RepClass {
        let mut c = RepClass::zero();
        for (u, m) in self.summands() {
            c.add(u, m.min(other.multiplicity(u)));
        }
        c
    }
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (u, m) in self.summands() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{u}")?;
            } else {
                write!(f, "{m}·{u}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RepEntry {
    i: usize,
    j: usize,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct RepClassWire {
    rep: Vec<RepEntry>,
}

impl Serialize for RepClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = RepClassWire {
            rep: self
                .summands()
                .map(|(u, mult)| RepEntry { i: u.i, j: u.j, mult })
                .collect(),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = RepClassWire::deserialize(d)?;
        let mut c = RepClass::zero();
        for e in wire.rep {
            if e.i < 1 || e.i > e.j {
                return Err(D::Error::custom(format!(
                    "invalid interval [{}, {}]",
                    e.i, e.j
                )));
            }
            c.add(Interval::new(e.i, e.j), e.mult);
        }
        Ok(c)
    }
}

/// A symmetric quiver together with the sign of the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonContext {
    pub quiver: SymmetricQuiver,
    pub epsilon: i8,
}

impl EpsilonContext {
    pub fn new(quiver: SymmetricQuiver, epsilon: i8) -> Self {
        assert!(epsilon == 1 || epsilon == -1, "epsilon must be ±1");
        EpsilonContext { quiver, epsilon }
    }

    /// `(A_odd, -1)` and `(A_even, +1)` are the split types: there the only
    /// indecomposable ε-representations are of the form `L ⊕ ∇L`.
    pub fn is_split(&self) -> bool {
        (self.quiver.is_odd() && self.epsilon == -1)
            || (!self.quiver.is_odd() && self.epsilon == 1)
    }
}

/// `dim Hom(u, v)` for two intervals by constraint propagation on the scalar
/// system: one unknown per vertex of the common support, an equality per
/// arrow inside it, and a vanishing constraint per arrow leaving it the wrong
/// way.
pub fn hom_dim_linear(q: &SymmetricQuiver, u: Interval, v: Interval) -> i64 {
    let lo = u.i.max(v.i);
    let hi = u.j.min(v.j);
    if lo > hi {
        return 0;
    }
    // All unknowns on [lo, hi] are identified by the equality constraints, so
    // only the vanishing constraints at the boundary arrows matter.
    for k in 1..q.n() {
        let (s, t) = q.arrow(k);
        let s_in_u = u.contains(s);
        let s_in_v = v.contains(s);
        let t_in_u = u.contains(t);
        let t_in_v = v.contains(t);
        if s_in_u && t_in_v {
            if t_in_u && !s_in_v {
                return 0; // λ_t forced to zero
            }
            if s_in_v && !t_in_u {
                return 0; // λ_s forced to zero
            }
        }
    }
    1
}

/// Precomputed interval-to-interval Hom table over the linear-system route.
#[derive(Debug, Clone)]
pub struct HomTable {
    n: usize,
    table: Vec<Vec<i64>>,
    index: BTreeMap<Interval, usize>,
    intervals: Vec<Interval>,
}

impl HomTable {
    pub fn new(q: &SymmetricQuiver) -> Self {
        let intervals: Vec<Interval> = q.intervals().collect();
        let index = intervals.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let table = intervals
            .iter()
            .map(|&a| intervals.iter().map(|&b| hom_dim_linear(q, a, b)).collect())
            .collect();
        HomTable {
            n: q.n(),
            table,
            index,
            intervals,
        }
    }

    pub fn interval_hom(&self, a: Interval, b: Interval) -> i64 {
        self.table[self.index[&a]][self.index[&b]]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `dim Hom(m, n)` as the bilinear extension of the interval table.
pub fn hom_dim(t: &HomTable, m: &RepClass, n: &RepClass) -> i64 {
    let mut total = 0;
    for (u, mu) in m.summands() {
        for (v, mv) in n.summands() {
            total += mu as i64 * mv as i64 * t.interval_hom(u, v);
        }
    }
    total
}

/// `dim Ext¹(m, n) = [m, n] − ⟨dim m, dim n⟩`.
pub fn ext_dim(q: &SymmetricQuiver, t: &HomTable, m: &RepClass, n: &RepClass) -> i64 {
    let h = hom_dim(t, m, n);
    let e = q.euler_form(&m.dim_vector(q.n()), &n.dim_vector(q.n()));
    let x = h - e;
    debug_assert!(x >= 0, "Ext dimension must be nonnegative");
    x
}

/// The twisted dual on iso-classes: reflect every summand.
pub fn nabla_rep(q: &SymmetricQuiver, m: &RepClass) -> RepClass {
    let mut c = RepClass::zero();
    for (u, mult) in m.summands() {
        c.add(q.nabla_interval(u), mult);
    }
    c
}

/// A class carries an ε-structure iff it is self-dual, and in the split types
/// every ∇-invariant summand must occur with even multiplicity.
pub fn is_epsilon_admissible(ctx: &EpsilonContext, m: &RepClass) -> bool {
    if nabla_rep(&ctx.quiver, m) != *m {
        return false;
    }
    if ctx.is_split() {
        for (u, mult) in m.summands() {
            if ctx.quiver.is_nabla_invariant(u) && mult % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// The Hom-order: equal dimension vectors and `[m, e] ≤ [n, e]` for every
/// interval `e`. For type A this decides the degeneration order.
pub fn leq_hom(t: &HomTable, m: &RepClass, n: &RepClass) -> bool {
    if m.dim_vector(t.n) != n.dim_vector(t.n) {
        return false;
    }
    t.intervals
        .iter()
        .all(|&e| hom_dim(t, m, &RepClass::single(e)) <= hom_dim(t, n, &RepClass::single(e)))
}

/// `δ_{m,n}(e) = [n, e] − [m, e]`.
pub fn delta(t: &HomTable, m: &RepClass, n: &RepClass, e: Interval) -> i64 {
    hom_dim(t, n, &RepClass::single(e)) - hom_dim(t, m, &RepClass::single(e))
}

/// `e` is δ-fixed when `e ≅ τ∇e`; false when `∇e` is projective.
pub fn is_delta_fixed(gamma: &ArQuiver, e: Interval) -> bool {
    let nabla = gamma.quiver().nabla_interval(e);
    gamma.tau(nabla) == Some(e)
}

/// Multiplicity of `e` as a direct summand, recovered from a Hom oracle
/// `[m, -]` through the almost split sequence ending in `e` (or the radical
/// cover when `e` is projective).
pub fn multiplicity_from_hom(
    gamma: &ArQuiver,
    hom: &mut dyn FnMut(Interval) -> i64,
    e: Interval,
) -> Result<u64, RepError> {
    let value = match gamma.tau(e) {
        Some(te) => {
            let middle: i64 = gamma.mesh_middle(e).iter().map(|&f| hom(f)).sum();
            hom(e) - middle + hom(te)
        }
        None => {
            // e = P_v for a unique vertex v; subtract the radical cover.
            let v = (e.i..=e.j)
                .find(|&v| gamma.quiver().projective(v) == e)
                .expect("τ-less vertex must be a projective");
            let rad: i64 = gamma
                .quiver()
                .radical_of_projective(v)
                .iter()
                .map(|&p| hom(p))
                .sum();
            hom(e) - rad
        }
    };
    if value < 0 {
        return Err(RepError::NegativeMultiplicity { interval: e, value });
    }
    Ok(value as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::SymmetricQuiver;

    fn q(text: &str) -> SymmetricQuiver {
        SymmetricQuiver::parse(text).unwrap()
    }

    fn u(i: usize, j: usize) -> Interval {
        Interval::new(i, j)
    }

    #[test]
    fn hom_dim_linear_examples() {
        let q3 = q("A3:>>");
        assert_eq!(hom_dim_linear(&q3, u(1, 3), u(1, 1)), 1);
        assert_eq!(hom_dim_linear(&q3, u(1, 1), u(1, 3)), 0);
        assert_eq!(hom_dim_linear(&q3, u(2, 2), u(2, 2)), 1);
    }

    #[test]
    fn hom_and_ext_examples() {
        let q2 = q("A2:>");
        let t2 = HomTable::new(&q2);
        let s1 = RepClass::single(u(1, 1));
        let s2 = RepClass::single(u(2, 2));
        assert_eq!(ext_dim(&q2, &t2, &s1, &s2), 1);

        let q4 = q("A4:>>>");
        let t4 = HomTable::new(&q4);
        assert_eq!(
            ext_dim(&q4, &t4, &RepClass::single(u(1, 2)), &RepClass::single(u(3, 4))),
            1
        );
        for e in q4.intervals() {
            assert_eq!(
                ext_dim(&q4, &t4, &RepClass::single(e), &RepClass::single(e)),
                0
            );
        }
    }

    #[test]
    fn nabla_rep_examples() {
        let q3 = q("A3:>>");
        let m = RepClass::of(&[(u(1, 2), 1), (u(3, 3), 1)]);
        let expect = RepClass::of(&[(u(2, 3), 1), (u(1, 1), 1)]);
        assert_eq!(nabla_rep(&q3, &m), expect);
        assert_eq!(nabla_rep(&q3, &RepClass::zero()), RepClass::zero());
        assert_eq!(nabla_rep(&q3, &nabla_rep(&q3, &m)), m);
    }

    #[test]
    fn epsilon_admissibility() {
        let q3 = q("A3:>>");
        let plus = EpsilonContext::new(q3.clone(), 1); // non-split
        let minus = EpsilonContext::new(q3.clone(), -1); // split
        assert!(!plus.is_split());
        assert!(minus.is_split());
        let u13 = RepClass::single(u(1, 3));
        assert!(is_epsilon_admissible(&plus, &u13));
        assert!(!is_epsilon_admissible(&minus, &u13));
        assert!(is_epsilon_admissible(&minus, &RepClass::of(&[(u(1, 3), 2)])));
        let asym = RepClass::single(u(1, 2));
        assert!(!is_epsilon_admissible(&plus, &asym));
    }

    #[test]
    fn hom_order_examples() {
        let q2 = q("A2:>");
        let t = HomTable::new(&q2);
        let m = RepClass::of(&[(u(1, 2), 2)]);
        let n = RepClass::of(&[(u(1, 1), 2), (u(2, 2), 2)]);
        assert!(leq_hom(&t, &m, &n));
        assert!(!leq_hom(&t, &n, &m));
        assert!(leq_hom(&t, &m, &m));
        let one = RepClass::single(u(1, 2));
        let split = RepClass::of(&[(u(1, 1), 1), (u(2, 2), 1)]);
        assert!(leq_hom(&t, &one, &split));
    }

    #[test]
    fn delta_examples() {
        let q3 = q("A3:>>");
        let gamma = ArQuiver::build(&q3);
        let t = HomTable::new(&q3);
        // P_2 = U[2,3] is the unique δ-fixed interval for A3:>>
        let fixed: Vec<Interval> = q3
            .intervals()
            .filter(|&e| is_delta_fixed(&gamma, e))
            .collect();
        assert_eq!(fixed, vec![u(2, 3)]);
        let m = RepClass::of(&[(u(1, 3), 2)]);
        let n = RepClass::of(&[(u(1, 1), 2), (u(2, 2), 2), (u(3, 3), 2)]);
        assert_eq!(delta(&t, &m, &n, u(2, 3)), 2);
        assert_eq!(delta(&t, &m, &m, u(2, 3)), 0);
    }

    #[test]
    fn delta_fixed_for_alternating_quivers() {
        // The τ∇ fixed points; the drawn examples list their ∇-images.
        let g4 = ArQuiver::build(&q("A4:><>"));
        let fixed: Vec<Interval> = g4
            .quiver()
            .intervals()
            .filter(|&e| is_delta_fixed(&g4, e))
            .collect();
        assert_eq!(fixed, vec![u(1, 2), u(2, 4)]);
        let g5 = ArQuiver::build(&q("A5:<>><"));
        let fixed5: Vec<Interval> = g5
            .quiver()
            .intervals()
            .filter(|&e| is_delta_fixed(&g5, e))
            .collect();
        assert_eq!(fixed5, vec![u(1, 4), u(3, 5)]);
    }

    #[test]
    fn multiplicity_recovery() {
        let q3 = q("A3:>>");
        let gamma = ArQuiver::build(&q3);
        let t = HomTable::new(&q3);
        let m = RepClass::of(&[(u(1, 3), 1), (u(2, 2), 1)]);
        let mut hom = |e: Interval| hom_dim(&t, &m, &RepClass::single(e));
        assert_eq!(multiplicity_from_hom(&gamma, &mut hom, u(2, 2)).unwrap(), 1);
        // self-consistency over random-ish classes
        let classes = [
            RepClass::of(&[(u(1, 1), 3), (u(2, 3), 2)]),
            RepClass::of(&[(u(1, 2), 1), (u(1, 3), 4), (u(3, 3), 2)]),
            RepClass::zero(),
        ];
        for m in &classes {
            for e in q3.intervals() {
                let mut hom = |x: Interval| hom_dim(&t, m, &RepClass::single(x));
                assert_eq!(
                    multiplicity_from_hom(&gamma, &mut hom, e).unwrap(),
                    m.multiplicity(e)
                );
            }
        }
    }

    #[test]
    fn rep_class_json_round_trip() {
        let m = RepClass::of(&[(u(1, 3), 2), (u(2, 2), 1)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rep":[{"i":1,"j":3,"mult":2},{"i":2,"j":2,"mult":1}]}"#);
        let back: RepClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn hom_duality() {
        for text in ["A2:>", "A3:>>", "A4:><>", "A5:<>><"] {
            let quiver = q(text);
            let t = HomTable::new(&quiver);
            for a in quiver.intervals() {
                for b in quiver.intervals() {
                    assert_eq!(
                        t.interval_hom(a, b),
                        t.interval_hom(quiver.nabla_interval(b), quiver.nabla_interval(a))
                    );
                }
            }
        }
    }
}
