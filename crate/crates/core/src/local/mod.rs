//! Local analysis over `K`: Newton polygons, Taylor expansions at points of
//! `K`, images of disks, injectivity, and repelling fixed points inside a
//! residue class.
//!
//! Disks are `{x : v(x − a) > s}` (open) or `{x : v(x − a) ≥ s}` (closed)
//! with rational `s`; larger `s` means a smaller disk.

mod disk;
mod fixed;
mod newton;

pub use disk::{disk_image, injectivity_isometry, taylor_expand, Disk, DiskKind, Injectivity, LocalExpansion};
pub use fixed::{repelling_fixed_class, RepellingVerdict};
pub use newton::{newton_polygon, NewtonPolygon, Segment, Slope};
