//! Naive reference implementations used as oracles.
//!
//! Everything here is a direct, hand-unrolled transcription working on
//! plain coordinate sets — no bitmasks, no generated symmetry variants, no
//! shared code with the library paths under test. Slow and obvious on
//! purpose.

#![allow(dead_code)]

use idcode::{rat, Rational};
use std::collections::{BTreeMap, BTreeSet};

pub type Vertex = (i64, i64);
pub type VSet = BTreeSet<Vertex>;

pub fn vset(points: &[(i64, i64)]) -> VSet {
    points.iter().copied().collect()
}

pub fn r_ball_square(r: i64, (cx, cy): Vertex) -> VSet {
    let mut out = VSet::new();
    for dx in -r..=r {
        for dy in -r..=r {
            if dx.abs() + dy.abs() <= r {
                out.insert((cx + dx, cy + dy));
            }
        }
    }
    out
}

pub fn r_ball_king(r: i64, (cx, cy): Vertex) -> VSet {
    let mut out = VSet::new();
    for dx in -r..=r {
        for dy in -r..=r {
            out.insert((cx + dx, cy + dy));
        }
    }
    out
}

/// Whether `k` identifies every vertex of `j` at radius `r`: all I-sets
/// nonempty, and as many distinct I-sets as vertices.
pub fn id_on_square_grid(k: &VSet, j: &VSet, r: i64) -> bool {
    let mut seen: Vec<VSet> = Vec::new();
    for &u in j {
        let l: VSet = r_ball_square(r, u).intersection(k).copied().collect();
        if l.is_empty() {
            return false;
        }
        if !seen.contains(&l) {
            seen.push(l);
        }
    }
    j.len() == seen.len()
}

/// `Σ 1/|I(u)|` over the radius-`r` ball of `c`; `None` when some vertex
/// is uncovered.
pub fn code_share(k: &VSet, c: Vertex, r: i64) -> Option<Rational> {
    let mut total = rat(0, 1);
    for u in r_ball_square(r, c) {
        let size = r_ball_square(r, u).intersection(k).count();
        if size == 0 {
            return None;
        }
        total += rat(1, size as i128);
    }
    Some(total)
}

/// Grouped estimate: distinct I-sets with multiplicities, each group
/// contributing `1/|I| + (count−1)/(|I|+1)`.
pub fn approximated_share(k: &VSet, c: Vertex, r: i64) -> Rational {
    let mut groups: BTreeMap<VSet, i128> = BTreeMap::new();
    for u in r_ball_square(r, c) {
        let i: VSet = r_ball_square(r, u).intersection(k).copied().collect();
        assert!(!i.is_empty(), "estimate oracle needs c to cover its ball");
        *groups.entry(i).or_insert(0) += 1;
    }
    let mut total = rat(0, 1);
    for (i, count) in groups {
        let size = i.len() as i128;
        total += rat(1, size) + rat(count - 1, size + 1);
    }
    total
}

/// The ten shifting amounts, hand-unrolled condition by condition.
pub fn shifting_rule(n: u8, k: &VSet, (x, y): Vertex) -> Rational {
    let has = |dx: i64, dy: i64| k.contains(&(x + dx, y + dy));
    let king_alone = {
        let b = r_ball_king(1, (x, y));
        let i: VSet = b.intersection(k).copied().collect();
        i == vset(&[(x, y)])
    };
    let ball2_alone = {
        let b = r_ball_square(2, (x, y));
        let i: VSet = b.intersection(k).copied().collect();
        i == vset(&[(x, y)])
    };
    let axis_crowded = {
        let ball2 = r_ball_square(2, (x, y));
        let king = r_ball_king(1, (x, y));
        let s: VSet = ball2.difference(&king).copied().collect();
        s.intersection(k).count() > 1
    };
    let mut share = rat(0, 1);
    match n {
        1 => {
            if !king_alone {
                return share;
            }
            if !has(2, 0) && !has(2, -1) && has(3, 0) && has(3, -1) {
                share += rat(1, 5);
            }
            if !has(2, 0) && !has(2, 1) && has(3, 0) && has(3, 1) {
                share += rat(1, 5);
            }
            if !has(-2, 0) && !has(-2, -1) && has(-3, 0) && has(-3, -1) {
                share += rat(1, 5);
            }
            if !has(-2, 0) && !has(-2, 1) && has(-3, 0) && has(-3, 1) {
                share += rat(1, 5);
            }
            if !has(0, 2) && !has(-1, 2) && has(0, 3) && has(-1, 3) {
                share += rat(1, 5);
            }
            if !has(0, 2) && !has(1, 2) && has(0, 3) && has(1, 3) {
                share += rat(1, 5);
            }
            if !has(0, -2) && !has(-1, -2) && has(0, -3) && has(-1, -3) {
                share += rat(1, 5);
            }
            if !has(0, -2) && !has(1, -2) && has(0, -3) && has(1, -3) {
                share += rat(1, 5);
            }
        }
        2 => {
            if !king_alone {
                return share;
            }
            if !has(2, 0) && has(3, 0) && has(4, 0) {
                share += rat(1, 30);
            }
            if !has(-2, 0) && has(-3, 0) && has(-4, 0) {
                share += rat(1, 30);
            }
            if !has(0, 2) && has(0, 3) && has(0, 4) {
                share += rat(1, 30);
            }
            if !has(0, -2) && has(0, -3) && has(0, -4) {
                share += rat(1, 30);
            }
        }
        3 => {
            if !ball2_alone {
                return share;
            }
            if has(2, 1) && has(3, 1) {
                share += rat(1, 12);
            }
            if has(2, -1) && has(3, -1) {
                share += rat(1, 12);
            }
            if has(-2, 1) && has(-3, 1) {
                share += rat(1, 12);
            }
            if has(-2, -1) && has(-3, -1) {
                share += rat(1, 12);
            }
            if has(1, 2) && has(1, 3) {
                share += rat(1, 12);
            }
            if has(-1, 2) && has(-1, 3) {
                share += rat(1, 12);
            }
            if has(1, -2) && has(1, -3) {
                share += rat(1, 12);
            }
            if has(-1, -2) && has(-1, -3) {
                share += rat(1, 12);
            }
        }
        4 => {
            if !ball2_alone {
                return share;
            }
            if has(2, 1) && has(2, 2) {
                share += rat(7, 60);
            }
            if has(2, -1) && has(2, -2) {
                share += rat(7, 60);
            }
            if has(-2, 1) && has(-2, 2) {
                share += rat(7, 60);
            }
            if has(-2, -1) && has(-2, -2) {
                share += rat(7, 60);
            }
            if has(1, 2) && has(2, 2) {
                share += rat(7, 60);
            }
            if has(-1, 2) && has(-2, 2) {
                share += rat(7, 60);
            }
            if has(1, -2) && has(2, -2) {
                share += rat(7, 60);
            }
            if has(-1, -2) && has(-2, -2) {
                share += rat(7, 60);
            }
        }
        5 => {
            if !king_alone || axis_crowded {
                return share;
            }
            if has(2, 0) && has(2, 1) {
                share += rat(1, 30);
            }
            if has(2, 0) && has(2, -1) {
                share += rat(1, 30);
            }
            if has(-2, 0) && has(-2, 1) {
                share += rat(1, 30);
            }
            if has(-2, 0) && has(-2, -1) {
                share += rat(1, 30);
            }
            if has(0, 2) && has(1, 2) {
                share += rat(1, 30);
            }
            if has(0, 2) && has(-1, 2) {
                share += rat(1, 30);
            }
            if has(0, -2) && has(1, -2) {
                share += rat(1, 30);
            }
            if has(0, -2) && has(-1, -2) {
                share += rat(1, 30);
            }
        }
        6 => {
            if !king_alone || axis_crowded {
                return share;
            }
            if has(2, -1) && has(2, 0) && has(2, 1) {
                share += rat(1, 20);
            }
            if has(-2, -1) && has(-2, 0) && has(-2, 1) {
                share += rat(1, 20);
            }
            if has(-1, 2) && has(0, 2) && has(1, 2) {
                share += rat(1, 20);
            }
            if has(-1, -2) && has(0, -2) && has(1, -2) {
                share += rat(1, 20);
            }
        }
        7 => {
            if !ball2_alone {
                return share;
            }
            let alone_in_own_ball = |dx: i64, dy: i64| {
                let cand = (x + dx, y + dy);
                let i: VSet = r_ball_square(1, cand)
                    .intersection(k)
                    .copied()
                    .collect();
                i == vset(&[cand])
            };
            if has(3, 0) {
                if alone_in_own_ball(2, 1) {
                    share += rat(7, 60);
                }
                if alone_in_own_ball(2, -1) {
                    share += rat(7, 60);
                }
            }
            if has(-3, 0) {
                if alone_in_own_ball(-2, 1) {
                    share += rat(7, 60);
                }
                if alone_in_own_ball(-2, -1) {
                    share += rat(7, 60);
                }
            }
            if has(0, 3) {
                if alone_in_own_ball(1, 2) {
                    share += rat(7, 60);
                }
                if alone_in_own_ball(-1, 2) {
                    share += rat(7, 60);
                }
            }
            if has(0, -3) {
                if alone_in_own_ball(1, -2) {
                    share += rat(7, 60);
                }
                if alone_in_own_ball(-1, -2) {
                    share += rat(7, 60);
                }
            }
        }
        8 => {
            if !ball2_alone {
                return share;
            }
            if !has(2, -1)
                && !has(3, -1)
                && !has(2, 1)
                && !has(3, 1)
                && !has(4, 0)
                && !has(1, -2)
                && !has(1, 2)
                && has(2, -2)
                && has(2, 2)
                && has(3, 0)
            {
                share += rat(1, 20);
            }
            if !has(-2, -1)
                && !has(-3, -1)
                && !has(-2, 1)
                && !has(-3, 1)
                && !has(-4, 0)
                && !has(-1, -2)
                && !has(-1, 2)
                && has(-2, -2)
                && has(-2, 2)
                && has(-3, 0)
            {
                share += rat(1, 20);
            }
            if !has(-1, 2)
                && !has(-1, 3)
                && !has(1, 2)
                && !has(1, 3)
                && !has(0, 4)
                && !has(-2, 1)
                && !has(2, 1)
                && has(-2, 2)
                && has(2, 2)
                && has(0, 3)
            {
                share += rat(1, 20);
            }
            if !has(-1, -2)
                && !has(-1, -3)
                && !has(1, -2)
                && !has(1, -3)
                && !has(0, -4)
                && !has(-2, -1)
                && !has(2, -1)
                && has(-2, -2)
                && has(2, -2)
                && has(0, -3)
            {
                share += rat(1, 20);
            }
        }
        9 => {
            if !king_alone || axis_crowded {
                return share;
            }
            if has(2, 0) && has(1, -2) && has(1, 2) && !has(2, -1) && !has(2, 1) {
                share += rat(7, 60);
            }
            if has(-2, 0) && has(-1, -2) && has(-1, 2) && !has(-2, -1) && !has(-2, 1) {
                share += rat(7, 60);
            }
            if has(0, 2) && has(-2, 1) && has(2, 1) && !has(-1, 2) && !has(1, 2) {
                share += rat(7, 60);
            }
            if has(0, -2) && has(-2, -1) && has(2, -1) && !has(-1, -2) && !has(1, -2) {
                share += rat(7, 60);
            }
        }
        10 => {
            if !ball2_alone {
                return share;
            }
            if !has(3, -1)
                && !has(3, 0)
                && !has(3, 1)
                && has(2, -1)
                && has(2, 1)
                && !has(2, -2)
                && !has(2, 2)
                && has(4, 0)
            {
                share += rat(7, 60);
            }
            if !has(-3, -1)
                && !has(-3, 0)
                && !has(-3, 1)
                && has(-2, -1)
                && has(-2, 1)
                && !has(-2, -2)
                && !has(-2, 2)
                && has(-4, 0)
            {
                share += rat(7, 60);
            }
            if !has(-1, 3)
                && !has(0, 3)
                && !has(1, 3)
                && has(-1, 2)
                && has(1, 2)
                && !has(-2, 2)
                && !has(2, 2)
                && has(0, 4)
            {
                share += rat(7, 60);
            }
            if !has(-1, -3)
                && !has(0, -3)
                && !has(1, -3)
                && has(-1, -2)
                && has(1, -2)
                && !has(-2, -2)
                && !has(2, -2)
                && has(0, -4)
            {
                share += rat(7, 60);
            }
        }
        _ => panic!("rule number out of range"),
    }
    share
}

pub fn total_shift(k: &VSet, c: Vertex) -> Rational {
    (1..=10).fold(rat(0, 1), |acc, n| acc + shifting_rule(n, k, c))
}

/// A finite torus: the whole grid quotiented by `w` and `h`, with
/// toroidal Manhattan distance.
pub struct Torus {
    pub w: i64,
    pub h: i64,
    cells: Vec<bool>,
}

impl Torus {
    pub fn new(w: i64, h: i64, cells: Vec<bool>) -> Torus {
        assert!(w > 0 && h > 0 && cells.len() == (w * h) as usize);
        Torus { w, h, cells }
    }

    /// Tiles a periodic code over a `kw × kh` block of domains.
    pub fn from_periodic(code: &idcode::codeset::PeriodicCode, kw: u32, kh: u32) -> Torus {
        let (w, h) = (
            (code.width() * kw) as i64,
            (code.height() * kh) as i64,
        );
        let mut cells = vec![false; (w * h) as usize];
        for y in 0..h {
            for x in 0..w {
                cells[(y * w + x) as usize] = code
                    .is_codeword(idcode::GridPoint::new(x as i32, y as i32));
            }
        }
        Torus::new(w, h, cells)
    }

    pub fn is_codeword(&self, x: i64, y: i64) -> bool {
        let x = x.rem_euclid(self.w);
        let y = y.rem_euclid(self.h);
        self.cells[(y * self.w + x) as usize]
    }

    pub fn vertex_count(&self) -> usize {
        (self.w * self.h) as usize
    }

    pub fn codewords(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for y in 0..self.h {
            for x in 0..self.w {
                if self.cells[(y * self.w + x) as usize] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn circular(d: i64, period: i64) -> i64 {
        let d = d.rem_euclid(period);
        d.min(period - d)
    }

    pub fn distance(&self, a: Vertex, b: Vertex) -> i64 {
        Self::circular(a.0 - b.0, self.w) + Self::circular(a.1 - b.1, self.h)
    }

    /// Codewords within distance `r` of `u`, as canonical representatives.
    pub fn iset(&self, r: i64, u: Vertex) -> VSet {
        let mut out = VSet::new();
        for y in 0..self.h {
            for x in 0..self.w {
                if self.cells[(y * self.w + x) as usize]
                    && self.distance(u, (x, y)) <= r
                {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    /// Direct check over every torus vertex: all I-sets nonempty and
    /// pairwise distinct.
    pub fn is_identifying(&self, r: i64) -> bool {
        let mut seen: BTreeSet<VSet> = BTreeSet::new();
        for y in 0..self.h {
            for x in 0..self.w {
                let i = self.iset(r, (x, y));
                if i.is_empty() || !seen.insert(i) {
                    return false;
                }
            }
        }
        true
    }

    /// Share of one codeword; `None` when its ball has an uncovered vertex.
    pub fn share_of(&self, r: i64, c: Vertex) -> Option<Rational> {
        let mut total = rat(0, 1);
        for y in 0..self.h {
            for x in 0..self.w {
                if self.distance(c, (x, y)) <= r {
                    let size = self.iset(r, (x, y)).len();
                    if size == 0 {
                        return None;
                    }
                    total += rat(1, size as i128);
                }
            }
        }
        Some(total)
    }

    /// `Σ share` over all codewords; `None` when some vertex is uncovered.
    pub fn share_sum(&self, r: i64) -> Option<Rational> {
        let mut total = rat(0, 1);
        for c in self.codewords() {
            total += self.share_of(r, c)?;
        }
        Some(total)
    }
}
