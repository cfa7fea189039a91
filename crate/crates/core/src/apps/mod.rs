//! Application drivers: sorter-backed Dijkstra and in-situ magnitude pruning.

pub mod dijkstra;
pub mod prune;

pub use dijkstra::{sorter_dijkstra, DijkstraResult, Graph};
pub use prune::{masked_mvm, prune_select, PruneRequest, PruneResult};
