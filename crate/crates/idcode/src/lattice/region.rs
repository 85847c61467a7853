use super::{GridPoint, SymmetryOp, COORD_BOUND};
use std::fmt;

/// A finite set of grid vertices, stored as a bit matrix over a tight
/// bounding box with rows packed into `u64` words.
///
/// Regions are always normalized: the box hugs the members, padding bits are
/// zero, and the empty set has a zero-size box. Equality is therefore set
/// equality, and the derived `Ord` is a canonical total order on vertex sets
/// (used wherever deterministic grouping or sorting of I-sets is needed).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    x0: i32,
    y0: i32,
    width: u32,
    height: u32,
    words_per_row: u32,
    bits: Vec<u64>,
}

impl Region {
    pub fn empty() -> Region {
        Region {
            x0: 0,
            y0: 0,
            width: 0,
            height: 0,
            words_per_row: 0,
            bits: Vec::new(),
        }
    }

    /// Builds the region holding exactly the given points.
    ///
    /// # Panics
    ///
    /// Panics if a coordinate magnitude exceeds [`COORD_BOUND`]; boundary
    /// inputs are validated before reaching this constructor.
    pub fn from_points<I>(points: I) -> Region
    where
        I: IntoIterator<Item = GridPoint>,
    {
        let pts: Vec<GridPoint> = points.into_iter().collect();
        let Some(&first) = pts.first() else {
            return Region::empty();
        };
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (first.x, first.x, first.y, first.y);
        for p in &pts {
            assert!(
                p.in_safe_range(),
                "coordinate of {p} outside the safe range ±{COORD_BOUND}",
            );
            xmin = xmin.min(p.x);
            xmax = xmax.max(p.x);
            ymin = ymin.min(p.y);
            ymax = ymax.max(p.y);
        }
        let mut region = Region::zeroed(
            xmin,
            ymin,
            (xmax - xmin + 1) as u32,
            (ymax - ymin + 1) as u32,
        );
        for &p in &pts {
            region.set(p);
        }
        region
    }

    pub fn single(p: GridPoint) -> Region {
        Region::from_points([p])
    }

    fn zeroed(x0: i32, y0: i32, width: u32, height: u32) -> Region {
        let words_per_row = width.div_ceil(64);
        Region {
            x0,
            y0,
            width,
            height,
            words_per_row,
            bits: vec![0; (words_per_row * height) as usize],
        }
    }

    fn set(&mut self, p: GridPoint) {
        let row = (p.y - self.y0) as u32;
        let col = (p.x - self.x0) as u32;
        self.bits[(row * self.words_per_row + col / 64) as usize] |= 1u64 << (col % 64);
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        if p.x < self.x0 || p.y < self.y0 {
            return false;
        }
        let (col, row) = ((p.x - self.x0) as u32, (p.y - self.y0) as u32);
        if col >= self.width || row >= self.height {
            return false;
        }
        self.bits[(row * self.words_per_row + col / 64) as usize] & (1u64 << (col % 64)) != 0
    }

    /// Number of vertices in the set.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.height == 0
    }

    /// Iterates rows bottom-up: `y` ascending, `x` ascending within a row.
    /// This is the canonical enumeration order of a region.
    pub fn iter(&self) -> Points<'_> {
        Points::new(self, false)
    }

    /// Iterates rows top-down: `y` descending, `x` ascending within a row.
    /// Identifying-check witnesses are defined in terms of this scan.
    pub fn iter_top_down(&self) -> Points<'_> {
        Points::new(self, true)
    }

    pub fn union(&self, other: &Region) -> Region {
        self.set_op(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Region) -> Region {
        self.set_op(other, |a, b| a & b)
    }

    /// Vertices of `self` not in `other`.
    pub fn difference(&self, other: &Region) -> Region {
        self.set_op(other, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// Translates the whole set; only the box origin moves.
    pub fn translate(&self, dx: i32, dy: i32) -> Region {
        if self.is_empty() {
            return Region::empty();
        }
        let corners = [
            (self.x0 as i64 + dx as i64, self.y0 as i64 + dy as i64),
            (
                self.x0 as i64 + dx as i64 + self.width as i64 - 1,
                self.y0 as i64 + dy as i64 + self.height as i64 - 1,
            ),
        ];
        for (x, y) in corners {
            assert!(
                x.abs() <= COORD_BOUND as i64 && y.abs() <= COORD_BOUND as i64,
                "translation leaves the safe coordinate range",
            );
        }
        Region {
            x0: self.x0 + dx,
            y0: self.y0 + dy,
            ..self.clone()
        }
    }

    /// Image of the set under a symmetry.
    pub fn transform(&self, op: &SymmetryOp) -> Region {
        Region::from_points(self.iter().map(|p| op.apply(p)))
    }

    /// Smallest and largest member corners `((xmin, ymin), (xmax, ymax))`.
    pub fn bounds(&self) -> Option<(GridPoint, GridPoint)> {
        if self.is_empty() {
            return None;
        }
        Some((
            GridPoint::new(self.x0, self.y0),
            GridPoint::new(
                self.x0 + self.width as i32 - 1,
                self.y0 + self.height as i32 - 1,
            ),
        ))
    }

    fn set_op(&self, other: &Region, word_op: impl Fn(u64, u64) -> u64) -> Region {
        if self.is_empty() && other.is_empty() {
            // Honor the operator even on empty inputs (it cannot produce bits).
            return Region::empty();
        }
        let (a, b) = (self, other);
        let x0 = match (a.is_empty(), b.is_empty()) {
            (false, false) => a.x0.min(b.x0),
            (false, true) => a.x0,
            (true, false) => b.x0,
            (true, true) => unreachable!(),
        };
        let y0 = match (a.is_empty(), b.is_empty()) {
            (false, false) => a.y0.min(b.y0),
            (false, true) => a.y0,
            (true, false) => b.y0,
            (true, true) => unreachable!(),
        };
        let x1 = [a, b]
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.x0 + r.width as i32 - 1)
            .max()
            .unwrap();
        let y1 = [a, b]
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.y0 + r.height as i32 - 1)
            .max()
            .unwrap();
        let width = (x1 - x0 + 1) as u32;
        let height = (y1 - y0 + 1) as u32;
        let words_per_row = width.div_ceil(64);
        let mut wa = vec![0u64; (words_per_row * height) as usize];
        let mut wb = vec![0u64; (words_per_row * height) as usize];
        blit(a, x0, y0, words_per_row, &mut wa);
        blit(b, x0, y0, words_per_row, &mut wb);
        for (dst, src) in wa.iter_mut().zip(&wb) {
            *dst = word_op(*dst, *src);
        }
        Region {
            x0,
            y0,
            width,
            height,
            words_per_row,
            bits: wa,
        }
        .normalized()
    }

    /// Shrinks the box to hug the members; identity on already-tight regions.
    fn normalized(self) -> Region {
        let wpr = self.words_per_row as usize;
        if self.height == 0 {
            return Region::empty();
        }
        let row_used = |r: usize| self.bits[r * wpr..(r + 1) * wpr].iter().any(|&w| w != 0);
        let Some(rmin) = (0..self.height as usize).find(|&r| row_used(r)) else {
            return Region::empty();
        };
        let rmax = (0..self.height as usize).rfind(|&r| row_used(r)).unwrap();
        let mut col_or = vec![0u64; wpr];
        for r in rmin..=rmax {
            for (acc, &w) in col_or.iter_mut().zip(&self.bits[r * wpr..(r + 1) * wpr]) {
                *acc |= w;
            }
        }
        let cmin = col_or
            .iter()
            .position(|&w| w != 0)
            .map(|wi| wi as u32 * 64 + col_or[wi].trailing_zeros())
            .unwrap();
        let cmax = col_or
            .iter()
            .rposition(|&w| w != 0)
            .map(|wi| wi as u32 * 64 + 63 - col_or[wi].leading_zeros())
            .unwrap();
        if rmin == 0
            && rmax == self.height as usize - 1
            && cmin == 0
            && cmax == self.width - 1
        {
            return self;
        }
        let mut tight = Region::zeroed(
            self.x0 + cmin as i32,
            self.y0 + rmin as i32,
            cmax - cmin + 1,
            (rmax - rmin + 1) as u32,
        );
        let twpr = tight.words_per_row as usize;
        for (tr, r) in (rmin..=rmax).enumerate() {
            let src = &self.bits[r * wpr..(r + 1) * wpr];
            let dst = &mut tight.bits[tr * twpr..(tr + 1) * twpr];
            extract_row(src, cmin, tight.width, dst);
        }
        tight
    }

    #[cfg(test)]
    fn check_invariants(&self) {
        if self.is_empty() {
            assert_eq!((self.width, self.words_per_row), (0, 0));
            assert!(self.bits.is_empty());
            return;
        }
        let wpr = self.words_per_row as usize;
        for r in 0..self.height as usize {
            let row = &self.bits[r * wpr..(r + 1) * wpr];
            let tail = self.width % 64;
            if tail != 0 {
                assert_eq!(row[wpr - 1] >> tail, 0, "padding bits must stay zero");
            }
        }
        let tight = self.clone().normalized();
        assert_eq!(
            (tight.x0, tight.y0, tight.width, tight.height),
            (self.x0, self.y0, self.width, self.height),
            "region box must be tight",
        );
    }
}

/// ORs `src`'s bits into a canvas anchored at `(x0, y0)`; the canvas must
/// cover `src`'s box, so all shifts are non-negative.
fn blit(src: &Region, x0: i32, y0: i32, words_per_row: u32, out: &mut [u64]) {
    if src.is_empty() {
        return;
    }
    let shift = (src.x0 - x0) as u32;
    let row_off = (src.y0 - y0) as usize;
    let swpr = src.words_per_row as usize;
    let dwpr = words_per_row as usize;
    for r in 0..src.height as usize {
        let dst_base = (row_off + r) * dwpr;
        for (wi, &w) in src.bits[r * swpr..(r + 1) * swpr].iter().enumerate() {
            if w == 0 {
                continue;
            }
            let bit = shift as usize + wi * 64;
            let (word, offset) = (bit / 64, (bit % 64) as u32);
            out[dst_base + word] |= w << offset;
            if offset != 0 {
                // A nonzero carry always fits: the canvas covers the box.
                let carry = w >> (64 - offset);
                if carry != 0 {
                    out[dst_base + word + 1] |= carry;
                }
            }
        }
    }
}

/// Copies `width` bits starting at bit `start` of a packed row into `dst`,
/// zeroing the padding.
fn extract_row(src: &[u64], start: u32, width: u32, dst: &mut [u64]) {
    let (word, offset) = ((start / 64) as usize, start % 64);
    for (di, d) in dst.iter_mut().enumerate() {
        let lo = src.get(word + di).copied().unwrap_or(0);
        *d = if offset == 0 {
            lo
        } else {
            let hi = src.get(word + di + 1).copied().unwrap_or(0);
            (lo >> offset) | (hi << (64 - offset))
        };
    }
    let tail = width % 64;
    if tail != 0 {
        let last = dst.len() - 1;
        dst[last] &= (1u64 << tail) - 1;
    }
}

/// Iterator over a region's vertices in row scan order.
pub struct Points<'a> {
    region: &'a Region,
    top_down: bool,
    rows_done: u32,
    word: u32,
    current: u64,
}

impl<'a> Points<'a> {
    fn new(region: &'a Region, top_down: bool) -> Points<'a> {
        let mut points = Points {
            region,
            top_down,
            rows_done: 0,
            word: 0,
            current: 0,
        };
        points.load_word();
        points
    }

    fn row(&self) -> u32 {
        if self.top_down {
            self.region.height - 1 - self.rows_done
        } else {
            self.rows_done
        }
    }

    fn load_word(&mut self) {
        let region = self.region;
        while self.rows_done < region.height {
            if self.word < region.words_per_row {
                let idx = (self.row() * region.words_per_row + self.word) as usize;
                self.current = region.bits[idx];
                if self.current != 0 {
                    return;
                }
                self.word += 1;
            } else {
                self.rows_done += 1;
                self.word = 0;
            }
        }
    }
}

impl Iterator for Points<'_> {
    type Item = GridPoint;

    fn next(&mut self) -> Option<GridPoint> {
        if self.current == 0 {
            self.load_word();
            if self.current == 0 {
                return None;
            }
        }
        let bit = self.current.trailing_zeros();
        self.current &= self.current - 1;
        let region = self.region;
        let p = GridPoint::new(
            region.x0 + (self.word * 64 + bit) as i32,
            region.y0 + self.row() as i32,
        );
        if self.current == 0 {
            self.word += 1;
            self.load_word();
        }
        Some(p)
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Region{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", p.x, p.y)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pts(v: &[(i32, i32)]) -> Region {
        Region::from_points(v.iter().map(|&(x, y)| GridPoint::new(x, y)))
    }

    fn as_set(r: &Region) -> BTreeSet<(i32, i32)> {
        r.iter().map(|p| (p.x, p.y)).collect()
    }

    #[test]
    fn equality_is_set_equality() {
        let a = pts(&[(0, 0), (5, 3), (-2, 1)]);
        let b = pts(&[(5, 3), (-2, 1), (0, 0), (0, 0)]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        a.check_invariants();
    }

    #[test]
    fn ops_agree_with_set_semantics() {
        let a = pts(&[(0, 0), (1, 0), (2, 5), (-70, 5), (90, -4)]);
        let b = pts(&[(1, 0), (2, 5), (3, 3), (-70, 6)]);
        let sa = as_set(&a);
        let sb = as_set(&b);
        assert_eq!(as_set(&a.union(&b)), sa.union(&sb).copied().collect());
        assert_eq!(
            as_set(&a.intersection(&b)),
            sa.intersection(&sb).copied().collect()
        );
        assert_eq!(
            as_set(&a.difference(&b)),
            sa.difference(&sb).copied().collect()
        );
        for r in [a.union(&b), a.intersection(&b), a.difference(&b)] {
            r.check_invariants();
        }
    }

    #[test]
    fn ops_handle_empty_inputs() {
        let a = pts(&[(2, 2)]);
        let e = Region::empty();
        assert_eq!(a.union(&e), a);
        assert_eq!(e.union(&a), a);
        assert_eq!(a.intersection(&e), e);
        assert_eq!(e.difference(&a), e);
        assert_eq!(a.difference(&e), a);
        assert!(e.is_empty());
        assert_eq!(e, Region::from_points([]));
    }

    #[test]
    fn difference_shrinks_to_tight_box() {
        let a = pts(&[(0, 0), (10, 10)]);
        let b = pts(&[(10, 10)]);
        let d = a.difference(&b);
        assert_eq!(d.bounds(), Some((GridPoint::new(0, 0), GridPoint::new(0, 0))));
        d.check_invariants();
    }

    #[test]
    fn iteration_orders() {
        let r = pts(&[(1, 1), (0, 0), (2, 0), (-1, 1)]);
        let up: Vec<_> = r.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(up, vec![(0, 0), (2, 0), (-1, 1), (1, 1)]);
        let down: Vec<_> = r.iter_top_down().map(|p| (p.x, p.y)).collect();
        assert_eq!(down, vec![(-1, 1), (1, 1), (0, 0), (2, 0)]);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let coords: Vec<_> = (0..200).step_by(7).map(|x| (x, 0)).collect();
        let a = pts(&coords);
        let b = pts(&[(63, 0), (64, 0), (127, 0), (128, 0)]);
        let u = a.union(&b);
        assert_eq!(u.len(), a.len() + 3); // 63 is the only overlap
        assert_eq!(as_set(&u), sa_union(&coords, &[(63, 0), (64, 0), (127, 0), (128, 0)]));
        u.check_invariants();
    }

    fn sa_union(a: &[(i32, i32)], b: &[(i32, i32)]) -> BTreeSet<(i32, i32)> {
        a.iter().chain(b.iter()).copied().collect()
    }

    #[test]
    fn translate_moves_membership() {
        let r = pts(&[(0, 0), (3, 1)]);
        let t = r.translate(-5, 2);
        assert_eq!(as_set(&t), [(-5, 2), (-2, 3)].into_iter().collect());
    }

    #[test]
    fn transform_preserves_cardinality() {
        let r = pts(&[(0, 0), (1, 0), (2, 1), (40, -3)]);
        for op in SymmetryOp::point_group() {
            let img = r.transform(&op);
            assert_eq!(img.len(), r.len());
            let back = img.transform(&op.inverse());
            assert_eq!(back, r);
        }
    }

    #[test]
    fn subset_checks() {
        let a = pts(&[(0, 0), (1, 1)]);
        let b = pts(&[(0, 0), (1, 1), (2, 2)]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(Region::empty().is_subset_of(&a));
    }
}
