//! Exact realizability of pairwise orientation constraints.
//!
//! Orientations are placed at absolute angles `θ_i ∈ [0, 2π)` with `θ_0 = 0`.
//! The anticlockwise angle `⟨x_i, x_j⟩` equals `θ_j - θ_i + 2πk` for a single
//! `k ∈ {0, 1}`, so once `k` is fixed per pair every constraint is a bound on a
//! difference of two variables. A system of strict and non-strict difference
//! bounds is feasible iff its constraint graph has no negative cycle, where a
//! zero-weight cycle through a strict edge also counts as negative.
//!
//! All quantities are integers in units of π.

use super::cyc::CycbAtom;

/// Upper bound on `to - from`; `strict` means `<` rather than `<=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Bound {
    value: i64,
    strict: bool,
}

impl Bound {
    const INF: Bound = Bound {
        value: i64::MAX / 4,
        strict: false,
    };

    fn tighter_than(self, other: Bound) -> bool {
        self.value < other.value || (self.value == other.value && self.strict && !other.strict)
    }

    fn add(self, other: Bound) -> Bound {
        if self.value >= Self::INF.value || other.value >= Self::INF.value {
            return Self::INF;
        }
        Bound {
            value: self.value + other.value,
            strict: self.strict || other.strict,
        }
    }
}

/// `(lo, lo_open, hi, hi_open)` of the region an atom denotes, in units of π.
fn region(b: CycbAtom) -> (i64, bool, i64, bool) {
    match b {
        CycbAtom::E => (0, false, 0, false),
        CycbAtom::L => (0, true, 1, true),
        CycbAtom::O => (1, false, 1, false),
        CycbAtom::R => (1, true, 2, true),
    }
}

struct DifferenceSystem {
    n: usize,
    d: Vec<Bound>,
}

impl DifferenceSystem {
    fn new(n: usize) -> Self {
        let mut d = vec![Bound::INF; n * n];
        for i in 0..n {
            d[i * n + i] = Bound {
                value: 0,
                strict: false,
            };
        }
        DifferenceSystem { n, d }
    }

    /// Adds `x_to - x_from <= value` (or `<` when strict).
    fn bound(&mut self, from: usize, to: usize, value: i64, strict: bool) {
        let b = Bound { value, strict };
        let slot = &mut self.d[from * self.n + to];
        if b.tighter_than(*slot) {
            *slot = b;
        }
    }

    /// Adds `lo <(=) x_to - x_from <(=) hi`.
    fn interval(&mut self, from: usize, to: usize, lo: i64, lo_open: bool, hi: i64, hi_open: bool) {
        self.bound(from, to, hi, hi_open);
        self.bound(to, from, -lo, lo_open);
    }

    fn feasible(mut self) -> bool {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                let ik = self.d[i * n + k];
                if ik.value >= Bound::INF.value {
                    continue;
                }
                for j in 0..n {
                    let cand = ik.add(self.d[k * n + j]);
                    if cand.tighter_than(self.d[i * n + j]) {
                        self.d[i * n + j] = cand;
                    }
                }
            }
        }
        (0..n).all(|i| {
            let c = self.d[i * n + i];
            c.value > 0 || (c.value == 0 && !c.strict)
        })
    }
}

/// Decides whether `n` orientations can satisfy the given constraints, where
/// `(i, j, b)` states that the anticlockwise angle from `x_i` to `x_j` lies in
/// the region of `b`. Pairs may repeat; `i == j` requires `b == E`.
pub fn realizable(n: usize, constraints: &[(usize, usize, CycbAtom)]) -> bool {
    let mut norm: Vec<(usize, usize, CycbAtom)> = Vec::with_capacity(constraints.len());
    for &(i, j, b) in constraints {
        assert!(i < n && j < n, "orientation index out of range");
        if i == j {
            if b != CycbAtom::E {
                return false;
            }
            continue;
        }
        if i < j {
            norm.push((i, j, b));
        } else {
            norm.push((j, i, b.converse()));
        }
    }
    // Closed hull of each θ_i implied by the constraints anchored at x_0.
    let mut hull = vec![(0i64, 2i64); n];
    hull[0] = (0, 0);
    for &(i, j, b) in &norm {
        if i == 0 {
            let (lo, _, hi, _) = region(b);
            hull[j] = (hull[j].0.max(lo), hull[j].1.min(hi));
            if hull[j].0 > hull[j].1 {
                return false;
            }
        }
    }
    // Pairs anchored at x_0 always have k = 0; the rest branch over the k
    // values compatible with the hulls, which is usually just one.
    let mut options: Vec<Vec<i64>> = Vec::with_capacity(norm.len());
    for &(i, j, b) in &norm {
        if i == 0 {
            options.push(vec![0]);
            continue;
        }
        let (lo, _, hi, _) = region(b);
        let (dlo, dhi) = (hull[j].0 - hull[i].1, hull[j].1 - hull[i].0);
        let ks: Vec<i64> = [0, 1]
            .into_iter()
            .filter(|k| lo - 2 * k <= dhi && hi - 2 * k >= dlo)
            .collect();
        if ks.is_empty() {
            return false;
        }
        options.push(ks);
    }
    let mut choice = vec![0usize; norm.len()];
    loop {
        let mut sys = DifferenceSystem::new(n);
        for i in 1..n {
            sys.interval(0, i, 0, false, 2, true);
        }
        for (c, &(i, j, b)) in norm.iter().enumerate() {
            let k = options[c][choice[c]];
            let (lo, lo_open, hi, hi_open) = region(b);
            sys.interval(i, j, lo - 2 * k, lo_open, hi - 2 * k, hi_open);
        }
        if sys.feasible() {
            return true;
        }
        // odometer over the option lists
        let mut c = 0;
        loop {
            if c == norm.len() {
                return false;
            }
            choice[c] += 1;
            if choice[c] < options[c].len() {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}
