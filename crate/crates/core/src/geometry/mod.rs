//! Exact convex geometry over `Q(β)` and the torus partitions.

pub mod metallic;
pub mod partition;
pub mod polygon;

pub use metallic::{atom, build_partitions, east, pattern_region, tile_partition, tiles_of_partition, EdgePartitions};
pub use partition::Partition;
pub use polygon::{ConvexPolygon, HalfPlane, Point};
