//! Symmetric orientations of the type-A diagram, interval modules, and the
//! Euler form.
//!
//! Vertices are `1..=n` and edge `k` joins vertices `k` and `k+1` (both
//! 1-based). The involution is always `σ(i) = n + 1 - i`; an orientation is
//! compatible with it exactly when mirrored edges point in mirrored
//! directions, i.e. `orientation[k] == orientation[n-k]`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::QuiverError;

/// Direction of one edge of the diagram: `Right` means `k -> k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

/// A σ-compatible orientation of the type-A diagram on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricQuiver {
    n: usize,
    orientation: Vec<Direction>,
}

/// The thin indecomposable supported on vertices `i..=j` (so `U_{i,j}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

/// Graded dimension of a representation, indexed by vertex (0-based storage).
pub type DimVector = Vec<i64>;

impl Interval {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(1 <= i && i <= j, "interval indices must satisfy 1 <= i <= j");
        Interval { i, j }
    }

    /// The simple at vertex `v`.
    pub fn simple(v: usize) -> Self {
        Interval::new(v, v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i <= v && v <= self.j
    }

    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }

    pub fn dim_vector(&self, n: usize) -> DimVector {
        let mut d = vec![0i64; n];
        for v in self.i..=self.j {
            d[v - 1] = 1;
        }
        d
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U[{},{}]", self.i, self.j)
    }
}

impl SymmetricQuiver {
    /// Validates the orientation against the mirror condition and returns the
    /// quiver, or reports the first offending edge.
    pub fn new(n: usize, orientation: Vec<Direction>) -> Result<Self, QuiverError> {
        if n < 2 {
            return Err(QuiverError::TooFewVertices { n });
        }
        if orientation.len() != n - 1 {
            return Err(QuiverError::WrongOrientationLength {
                n,
                got: orientation.len(),
            });
        }
        for k in 1..n {
            // edge k mirrors to edge n - k (1-based)
            if orientation[k - 1] != orientation[n - k - 1] {
                return Err(QuiverError::IncompatibleOrientation { edge: k });
            }
        }
        Ok(SymmetricQuiver { n, orientation })
    }

    /// Parses the text form `A<n>:<dirs>` with `dirs` over `><`, e.g. `A4:><>`.
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let bad = || QuiverError::BadQuiverText {
            text: text.to_string(),
        };
        let rest = text.strip_prefix('A').ok_or_else(bad)?;
        let (num, dirs) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = num.parse().map_err(|_| bad())?;
        let orientation = dirs
            .chars()
            .map(|c| match c {
                '>' => Ok(Direction::Right),
                '<' => Ok(Direction::Left),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SymmetricQuiver::new(n, orientation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of interval modules, `n(n+1)/2`.
    pub fn interval_count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Direction of edge `k` (1-based, `1..=n-1`).
    pub fn edge(&self, k: usize) -> Direction {
        self.orientation[k - 1]
    }

    /// Source and target of edge `k` as an arrow of the quiver.
    pub fn arrow(&self, k: usize) -> (usize, usize) {
        match self.edge(k) {
            Direction::Right => (k, k + 1),
            Direction::Left => (k + 1, k),
        }
    }

    /// Arrows as `(source, target)` pairs, in edge order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).map(|k| self.arrow(k))
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn sigma_vertex(&self, v: usize) -> usize {
        debug_assert!(1 <= v && v <= self.n);
        self.n + 1 - v
    }

    /// The twisted dual on iso-classes of intervals: `∇U_{i,j} = U_{σ(j),σ(i)}`.
    pub fn nabla_interval(&self, u: Interval) -> Interval {
        Interval::new(self.sigma_vertex(u.j), self.sigma_vertex(u.i))
    }

    /// σ on intervals coincides with ∇ on iso-classes.
    pub fn sigma_interval(&self, u: Interval) -> Interval {
        self.nabla_interval(u)
    }

    pub fn is_nabla_invariant(&self, u: Interval) -> bool {
        u.i + u.j == self.n + 1
    }

    /// All intervals in lexicographic order.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        (1..=self.n).flat_map(move |i| (i..=self.n).map(move |j| Interval::new(i, j)))
    }

    /// Projective cover of the simple at `v`: follow the maximal directed
    /// paths out of `v` in both directions.
    pub fn projective(&self, v: usize) -> Interval {
        let mut r = v;
        while r < self.n && self.edge(r) == Direction::Right {
            r += 1;
        }
        let mut l = v;
        while l > 1 && self.edge(l - 1) == Direction::Left {
            l -= 1;
        }
        Interval::new(l, r)
    }

    /// Injective envelope of the simple at `v` (reverse directions).
    pub fn injective(&self, v: usize) -> Interval {
        let mut r = v;
        while r < self.n && self.edge(r) == Direction::Left {
            r += 1;
        }
        let mut l = v;
        while l > 1 && self.edge(l - 1) == Direction::Right {
            l -= 1;
        }
        Interval::new(l, r)
    }

    /// Radical of the projective at `v`: the projectives at the targets of
    /// the arrows leaving `v` (at most two).
    pub fn radical_of_projective(&self, v: usize) -> Vec<Interval> {
        let mut out = Vec::new();
        if v > 1 && self.edge(v - 1) == Direction::Left {
            out.push(self.projective(v - 1));
        }
        if v < self.n && self.edge(v) == Direction::Right {
            out.push(self.projective(v + 1));
        }
        out
    }

    /// Ringel-Euler form `⟨e, d⟩ = Σ_i e_i d_i − Σ_{a: i→j} e_i d_j`.
    pub fn euler_form(&self, e: &[i64], d: &[i64]) -> i64 {
        assert_eq!(e.len(), self.n);
        assert_eq!(d.len(), self.n);
        let mut val: i64 = e.iter().zip(d).map(|(a, b)| a * b).sum();
        for (s, t) in self.arrows() {
            val -= e[s - 1] * d[t - 1];
        }
        val
    }

    pub fn is_sigma_symmetric(&self, d: &[i64]) -> bool {
        d.len() == self.n && (0..self.n).all(|k| d[k] == d[self.n - 1 - k])
    }

    /// Text form `A<n>:<dirs>`.
    pub fn text(&self) -> String {
        let dirs: String = self
            .orientation
            .iter()
            .map(|d| match d {
                Direction::Right => '>',
                Direction::Left => '<',
            })
            .collect();
        format!("A{}:{}", self.n, dirs)
    }

    /// Every compatible orientation for the given `n`, in lexicographic order
    /// (free choices are the first `⌈(n-1)/2⌉` edges).
    pub fn all_compatible(n: usize) -> Vec<SymmetricQuiver> {
        let free = n / 2; // edges 1..=⌊n/2⌋; the middle edge of even n is self-mirrored
        let mut out = Vec::new();
        let count = 1usize << free.min(n - 1);
        for mask in 0..count {
            let mut orientation = vec![Direction::Right; n - 1];
            for b in 0..free.min(n - 1) {
                if mask >> b & 1 == 1 {
                    orientation[b] = Direction::Left;
                }
            }
            // mirror the free half onto the rest
            for k in 1..n {
                orientation[n - k - 1] = orientation[k - 1];
            }
            if let Ok(q) = SymmetricQuiver::new(n, orientation) {
                out.push(q);
            }
        }
        out.dedup_by(|a, b| a == b);
        out
    }
}

impl fmt::Display for SymmetricQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

pub fn dim_add(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dim_sub(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// The interval whose indicator equals `d`, if `d` is one.
pub fn interval_of_dim(d: &[i64]) -> Option<Interval> {
    let mut first = None;
    let mut last = None;
    for (k, &x) in d.iter().enumerate() {
        match x {
            0 => {}
            1 => {
                if first.is_none() {
                    first = Some(k + 1);
                } else if last != Some(k) {
                    return None; // gap
                }
                last = Some(k + 1);
            }
            _ => return None,
        }
    }
    match (first, last) {
        (Some(i), Some(j)) => Some(Interval::new(i, j)),
        _ => None,
    }
}
