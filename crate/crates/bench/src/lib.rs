//! Fixtures shared by the benchmarks.

use mahler::engine::zoo;
use mahler::SeriesSpec;

/// Catalog spec by name; panics on unknown names.
pub fn spec(name: &str) -> SeriesSpec {
    zoo(name, 0).expect("catalog entry").spec
}
