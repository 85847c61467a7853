//! Points, metrics, symmetries, and balls on the square grid.
//!
//! Vertices are points of Z². Distances come in two flavors: the Manhattan
//! metric of the square grid itself and the Chebyshev (king) metric used by
//! the isolation preconditions of the shifting rules. Finite vertex sets are
//! [`Region`]s — tight bounding boxes over row-packed bit matrices — so that
//! set algebra, membership, and popcounts are cheap and canonical.

mod region;

pub use region::Region;

use crate::error::{Error, Result};
use std::fmt;

/// Largest radius accepted by [`ball`] and the radius-taking operations.
pub const MAX_RADIUS: u32 = 16;

/// Coordinates are kept within `|v| <= COORD_BOUND`, leaving ample headroom
/// for distance and transform arithmetic in `i32`.
pub const COORD_BOUND: i32 = 1 << 20;

/// A vertex of the square grid.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridPoint {
    pub x: i32,
    pub y: i32,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub fn new(x: i32, y: i32) -> GridPoint {
        GridPoint { x, y }
    }

    /// Validating constructor for boundary inputs (CLI arguments, files).
    pub fn checked(x: i64, y: i64) -> Result<GridPoint> {
        for v in [x, y] {
            if v.abs() > COORD_BOUND as i64 {
                return Err(Error::CoordinateOutOfRange {
                    value: v,
                    bound: COORD_BOUND as i64,
                });
            }
        }
        Ok(GridPoint::new(x as i32, y as i32))
    }

    pub fn translate(self, dx: i32, dy: i32) -> GridPoint {
        GridPoint::new(self.x + dx, self.y + dy)
    }

    pub(crate) fn in_safe_range(self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The two grid metrics in play.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Metric {
    /// `|dx| + |dy|` — the graph metric of the square grid.
    Manhattan,
    /// `max(|dx|, |dy|)` — the king metric; its unit ball is the 3×3 block.
    Chebyshev,
}

impl Metric {
    pub fn distance(self, p: GridPoint, q: GridPoint) -> u32 {
        let dx = (p.x as i64 - q.x as i64).unsigned_abs();
        let dy = (p.y as i64 - q.y as i64).unsigned_abs();
        let d = match self {
            Metric::Manhattan => dx + dy,
            Metric::Chebyshev => dx.max(dy),
        };
        d as u32
    }
}

/// Quarter-turn rotations, counterclockwise.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rotation {
    R0,
    R90,
    R180,
    R270,
}

impl Rotation {
    fn quarter_turns(self) -> u8 {
        match self {
            Rotation::R0 => 0,
            Rotation::R90 => 1,
            Rotation::R180 => 2,
            Rotation::R270 => 3,
        }
    }

    fn from_quarter_turns(turns: u8) -> Rotation {
        match turns % 4 {
            0 => Rotation::R0,
            1 => Rotation::R90,
            2 => Rotation::R180,
            _ => Rotation::R270,
        }
    }
}

/// A symmetry of the grid: an optional reflection across the vertical axis,
/// followed by a counterclockwise rotation, followed by a translation.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymmetryOp {
    pub rotation: Rotation,
    pub mirror: bool,
    pub offset: (i32, i32),
}

impl SymmetryOp {
    pub const IDENTITY: SymmetryOp = SymmetryOp {
        rotation: Rotation::R0,
        mirror: false,
        offset: (0, 0),
    };

    /// The eight point symmetries fixing the origin, in a stable order:
    /// the four rotations, then the four reflected rotations.
    pub fn point_group() -> [SymmetryOp; 8] {
        let mut ops = [SymmetryOp::IDENTITY; 8];
        for (i, op) in ops.iter_mut().enumerate() {
            op.rotation = Rotation::from_quarter_turns(i as u8 % 4);
            op.mirror = i >= 4;
        }
        ops
    }

    pub fn translation(dx: i32, dy: i32) -> SymmetryOp {
        SymmetryOp {
            offset: (dx, dy),
            ..SymmetryOp::IDENTITY
        }
    }

    /// Applies the symmetry to a point.
    ///
    /// # Panics
    ///
    /// Panics if the image leaves the `i32` range (impossible for
    /// coordinates and offsets within [`COORD_BOUND`]).
    pub fn apply(&self, p: GridPoint) -> GridPoint {
        let (mut x, mut y) = (p.x as i64, p.y as i64);
        if self.mirror {
            x = -x;
        }
        for _ in 0..self.rotation.quarter_turns() {
            (x, y) = (-y, x);
        }
        x += self.offset.0 as i64;
        y += self.offset.1 as i64;
        GridPoint::new(
            i32::try_from(x).expect("transformed x out of range"),
            i32::try_from(y).expect("transformed y out of range"),
        )
    }

    /// The composite performing `self` first, then `then`.
    pub fn compose(self, then: SymmetryOp) -> SymmetryOp {
        let a = self.rotation.quarter_turns();
        let b = then.rotation.quarter_turns();
        // Conjugating a rotation by the mirror reverses its direction.
        let turns = if then.mirror { b + (4 - a % 4) } else { b + a };
        let linear = SymmetryOp {
            rotation: Rotation::from_quarter_turns(turns),
            mirror: self.mirror ^ then.mirror,
            offset: (0, 0),
        };
        let moved = then.apply(GridPoint::new(self.offset.0, self.offset.1));
        SymmetryOp {
            offset: (moved.x, moved.y),
            ..linear
        }
    }

    pub fn inverse(self) -> SymmetryOp {
        let turns = self.rotation.quarter_turns();
        let linear = SymmetryOp {
            rotation: Rotation::from_quarter_turns(if self.mirror { turns } else { 4 - turns % 4 }),
            mirror: self.mirror,
            offset: (0, 0),
        };
        let back = linear.apply(GridPoint::new(-self.offset.0, -self.offset.1));
        SymmetryOp {
            offset: (back.x, back.y),
            ..linear
        }
    }

    /// Compact label for the dihedral part, ignoring the translation:
    /// `r0`, `r90`, `r180`, `r270`, or the mirrored `mr0` … `mr270`.
    pub fn dihedral_label(&self) -> &'static str {
        match (self.mirror, self.rotation) {
            (false, Rotation::R0) => "r0",
            (false, Rotation::R90) => "r90",
            (false, Rotation::R180) => "r180",
            (false, Rotation::R270) => "r270",
            (true, Rotation::R0) => "mr0",
            (true, Rotation::R90) => "mr90",
            (true, Rotation::R180) => "mr180",
            (true, Rotation::R270) => "mr270",
        }
    }
}

/// The ball of the given radius around `center`, as a [`Region`].
pub fn ball(metric: Metric, radius: u32, center: GridPoint) -> Result<Region> {
    if radius > MAX_RADIUS {
        return Err(Error::RadiusTooLarge {
            radius,
            max: MAX_RADIUS,
        });
    }
    for v in [center.x, center.y] {
        if (v.abs() as i64 + radius as i64) > COORD_BOUND as i64 {
            return Err(Error::CoordinateOutOfRange {
                value: v as i64,
                bound: COORD_BOUND as i64,
            });
        }
    }
    Ok(ball_region(metric, radius, center))
}

/// Internal ball builder without the public radius cap; callers guarantee
/// `center ± radius` stays within the safe coordinate range.
pub(crate) fn ball_region(metric: Metric, radius: u32, center: GridPoint) -> Region {
    Region::from_points(
        ball_offsets(metric, radius)
            .into_iter()
            .map(|(dx, dy)| center.translate(dx, dy)),
    )
}

/// Offsets of the radius-`radius` ball around the origin, sorted by
/// `(y, x)` ascending.
pub(crate) fn ball_offsets(metric: Metric, radius: u32) -> Vec<(i32, i32)> {
    let r = radius as i32;
    let mut offsets = Vec::new();
    for dy in -r..=r {
        let span = match metric {
            Metric::Manhattan => r - dy.abs(),
            Metric::Chebyshev => r,
        };
        for dx in -span..=span {
            offsets.push((dx, dy));
        }
    }
    offsets
}
