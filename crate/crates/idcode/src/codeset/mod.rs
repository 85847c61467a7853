//! Code windows, periodic codes, and identifying-code checks.
//!
//! A [`CodeWindow`] is a finite view of a code: the vertices inside `support`
//! are fully known (codeword or not), everything outside is unknown, and
//! operations error out rather than guess. A [`PeriodicCode`] is total
//! knowledge given by a repeating `width × height` domain.
//!
//! Identifying checks report a deterministic witness on failure. Targets are
//! scanned row by row from the top of the bounding box downward (`y`
//! descending, `x` ascending within a row); coverage failures are reported
//! before separation failures, and a witness pair is printed with its
//! vertices sorted by `(y, x)` ascending.

mod pattern;

use crate::error::{Error, Result};
use crate::lattice::{ball_offsets, ball_region, GridPoint, Metric, Region, COORD_BOUND, MAX_RADIUS};
use crate::{rat, Rational};
use std::fmt;

/// A finite window of a code: `codewords ⊆ support`, and membership is only
/// meaningful inside `support`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeWindow {
    codewords: Region,
    support: Region,
}

impl CodeWindow {
    pub fn new(codewords: Region, support: Region) -> Result<CodeWindow> {
        if !codewords.is_subset_of(&support) {
            let stray = codewords
                .difference(&support)
                .iter()
                .next()
                .expect("nonempty difference");
            return Err(Error::InvalidParameter {
                reason: format!("codeword {stray} lies outside the support window"),
            });
        }
        Ok(CodeWindow { codewords, support })
    }

    /// Window whose support is the Manhattan ball of `radius` around
    /// `center`, holding the given codewords.
    pub fn in_ball(
        codewords: impl IntoIterator<Item = GridPoint>,
        center: GridPoint,
        radius: u32,
    ) -> Result<CodeWindow> {
        let support = crate::lattice::ball(Metric::Manhattan, radius, center)?;
        CodeWindow::new(Region::from_points(codewords), support)
    }

    pub fn codewords(&self) -> &Region {
        &self.codewords
    }

    pub fn support(&self) -> &Region {
        &self.support
    }

    /// Image of the window under a symmetry.
    pub fn transform(&self, op: &crate::lattice::SymmetryOp) -> CodeWindow {
        CodeWindow {
            codewords: self.codewords.transform(op),
            support: self.support.transform(op),
        }
    }
}

/// The I-set of `u`: codewords within distance `r`, as known by the window.
///
/// Errors with [`Error::InsufficientWindow`] when `B_r(u)` is not fully
/// inside the support.
pub fn iset(code: &CodeWindow, u: GridPoint, r: u32) -> Result<Region> {
    if r > MAX_RADIUS {
        return Err(Error::RadiusTooLarge {
            radius: r,
            max: MAX_RADIUS,
        });
    }
    let ball = ball_region(Metric::Manhattan, r, u);
    if !ball.is_subset_of(code.support()) {
        return Err(Error::InsufficientWindow {
            center: u,
            radius: r,
        });
    }
    Ok(ball.intersection(code.codewords()))
}

/// Whether the code tells `u` and `v` apart at radius `r`.
pub fn separated(code: &CodeWindow, u: GridPoint, v: GridPoint, r: u32) -> Result<bool> {
    Ok(iset(code, u, r)? != iset(code, v, r)?)
}

/// Why an identifying check failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Witness {
    /// A target with an empty I-set.
    Uncovered(GridPoint),
    /// Two targets sharing one I-set, sorted by `(y, x)` ascending.
    Unseparated(GridPoint, GridPoint),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Uncovered(u) => write!(f, "uncovered vertex {u}"),
            Witness::Unseparated(u, v) => write!(f, "unseparated pair {u}, {v}"),
        }
    }
}

/// Outcome of an identifying check: passes exactly when there is no witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IdVerdict {
    witness: Option<Witness>,
}

impl IdVerdict {
    fn pass() -> IdVerdict {
        IdVerdict { witness: None }
    }

    fn fail(witness: Witness) -> IdVerdict {
        IdVerdict {
            witness: Some(witness),
        }
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<Witness> {
        self.witness
    }
}

fn ordered_pair(a: GridPoint, b: GridPoint) -> (GridPoint, GridPoint) {
    if (b.y, b.x) < (a.y, a.x) {
        (b, a)
    } else {
        (a, b)
    }
}

/// Checks that every target has a nonempty I-set and that no two targets
/// share one. The first failure in the top-down scan becomes the witness.
pub fn is_identifying_on(code: &CodeWindow, targets: &Region, r: u32) -> Result<IdVerdict> {
    let scanned: Vec<GridPoint> = targets.iter_top_down().collect();
    let mut isets = Vec::with_capacity(scanned.len());
    for &u in &scanned {
        isets.push(iset(code, u, r)?);
    }
    for (&u, i) in scanned.iter().zip(&isets) {
        if i.is_empty() {
            return Ok(IdVerdict::fail(Witness::Uncovered(u)));
        }
    }
    for (j, &u) in scanned.iter().enumerate() {
        for (k, &v) in scanned.iter().enumerate().skip(j + 1) {
            if isets[j] == isets[k] {
                let (a, b) = ordered_pair(u, v);
                return Ok(IdVerdict::fail(Witness::Unseparated(a, b)));
            }
        }
    }
    Ok(IdVerdict::pass())
}

/// A code given by a `width × height` domain repeated over the whole grid.
/// Cell `(x, y)` of the domain fixes membership of every vertex congruent to
/// it modulo the periods.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicCode {
    width: u32,
    height: u32,
    cells: Vec<bool>,
}

impl PeriodicCode {
    /// `cells` is row-major: index `y * width + x`.
    pub fn new(width: u32, height: u32, cells: Vec<bool>) -> Result<PeriodicCode> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter {
                reason: "periodic domain must have positive dimensions".into(),
            });
        }
        if width > COORD_BOUND as u32 || height > COORD_BOUND as u32 {
            return Err(Error::CoordinateOutOfRange {
                value: width.max(height) as i64,
                bound: COORD_BOUND as i64,
            });
        }
        if cells.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidParameter {
                reason: format!(
                    "expected {} cells for a {width}×{height} domain, got {}",
                    (width as usize) * (height as usize),
                    cells.len()
                ),
            });
        }
        Ok(PeriodicCode {
            width,
            height,
            cells,
        })
    }

    /// Domain holding the given codeword cells.
    pub fn from_codewords(
        width: u32,
        height: u32,
        codewords: impl IntoIterator<Item = GridPoint>,
    ) -> Result<PeriodicCode> {
        let mut code = PeriodicCode::new(width, height, vec![false; (width * height) as usize])?;
        for p in codewords {
            if p.x < 0 || p.y < 0 || p.x as u32 >= width || p.y as u32 >= height {
                return Err(Error::InvalidParameter {
                    reason: format!("codeword {p} lies outside the {width}×{height} domain"),
                });
            }
            code.cells[(p.y as u32 * width + p.x as u32) as usize] = true;
        }
        Ok(code)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn is_codeword(&self, p: GridPoint) -> bool {
        let x = p.x.rem_euclid(self.width as i32) as u32;
        let y = p.y.rem_euclid(self.height as i32) as u32;
        self.cells[(y * self.width + x) as usize]
    }

    pub fn codeword_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Domain codewords, `y` ascending then `x` ascending.
    pub fn domain_codewords(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.height).flat_map(move |y| {
            (0..self.width)
                .filter(move |&x| self.cells[(y * self.width + x) as usize])
                .map(move |x| GridPoint::new(x as i32, y as i32))
        })
    }

    /// Materializes the window of this code on the Manhattan ball of
    /// `radius` around `center`.
    pub fn window(&self, center: GridPoint, radius: u32) -> Result<CodeWindow> {
        let support = crate::lattice::ball(Metric::Manhattan, radius, center)?;
        let codewords = Region::from_points(support.iter().filter(|&p| self.is_codeword(p)));
        CodeWindow::new(codewords, support)
    }

    /// Fraction of vertices that are codewords.
    pub fn density(&self) -> Rational {
        rat(
            self.codeword_count() as i128,
            self.width as i128 * self.height as i128,
        )
    }
}

/// Checks that the periodic code is `r`-identifying for the whole grid:
/// every vertex is covered, and every pair of vertices within distance `2r`
/// of each other (farther pairs always differ) is separated. One period of
/// representatives suffices. The scan order matches [`is_identifying_on`].
pub fn verify_periodic(code: &PeriodicCode, r: u32) -> Result<IdVerdict> {
    if r > MAX_RADIUS {
        return Err(Error::RadiusTooLarge {
            radius: r,
            max: MAX_RADIUS,
        });
    }
    let near = ball_offsets(Metric::Manhattan, r);
    let far = ball_offsets(Metric::Manhattan, 2 * r);
    let iset_at = |u: GridPoint, out: &mut Vec<GridPoint>| {
        out.clear();
        for &(dx, dy) in &near {
            let p = u.translate(dx, dy);
            if code.is_codeword(p) {
                out.push(p);
            }
        }
    };
    let domain_top_down = (0..code.height)
        .rev()
        .flat_map(|y| (0..code.width).map(move |x| GridPoint::new(x as i32, y as i32)));
    let mut iu = Vec::new();
    let mut iv = Vec::new();
    for u in domain_top_down.clone() {
        iset_at(u, &mut iu);
        if iu.is_empty() {
            return Ok(IdVerdict::fail(Witness::Uncovered(u)));
        }
    }
    for u in domain_top_down {
        iset_at(u, &mut iu);
        // Offsets are listed (dy, dx) ascending; negating dy scans v top-down.
        for &(dx, dy) in far.iter() {
            if (dx, dy) == (0, 0) {
                continue;
            }
            let v = u.translate(dx, -dy);
            iset_at(v, &mut iv);
            if iu == iv {
                let (a, b) = ordered_pair(u, v);
                return Ok(IdVerdict::fail(Witness::Unseparated(a, b)));
            }
        }
    }
    Ok(IdVerdict::pass())
}

/// Number of vertices of the centered square of half-width `k`, `(2k+1)²`.
pub fn centered_square_size(k: u32) -> u64 {
    let side = 2 * k as u64 + 1;
    side * side
}

/// Lower bound on the fraction of codewords any 2-identifying code must put
/// in a centered square of half-width `n ≥ 3`. The value is strictly below
/// 6/35 for every finite `n` and increases toward it.
pub fn density_lower_bound(n: u32) -> Result<Rational> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            reason: format!("half-width must be at least 3, got {n}"),
        });
    }
    if n as i64 + 3 > COORD_BOUND as i64 {
        return Err(Error::CoordinateOutOfRange {
            value: n as i64,
            bound: COORD_BOUND as i64,
        });
    }
    let q = |k: u32| Rational::from_integer(centered_square_size(k) as i128);
    Ok(rat(6, 35) * (q(n - 2) / q(n)) - (q(n + 3) - q(n)) / q(n))
}

pub use pattern::{parse_pattern, pattern_string};
