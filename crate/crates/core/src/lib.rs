//! Structural controllability of directed networks through input graphs.
//!
//! A maximum matching of a network's bipartite split fixes one minimum set of
//! input nodes. The input graph links nodes that can replace each other in
//! such a set; its connected components (control components) decide which
//! nodes can ever serve as inputs, and adding a few well-chosen edges can
//! flip the type of a whole component.
//!
//! ```
//! use ctrlnet::{Analysis, DirectedNetwork};
//!
//! let net = DirectedNetwork::load_edge_list("c a\nc b").unwrap();
//! let analysis = Analysis::run(&net, 0).unwrap();
//! assert_eq!(analysis.mis_size(), 2);
//! assert_eq!(analysis.possible_input_count(), 3);
//! ```

pub mod alteration;
pub mod analysis;
pub mod components;
pub mod error;
pub mod generators;
pub mod graph;
pub mod input_graph;
pub mod matching;
pub mod oracle;
pub mod report;

pub use analysis::Analysis;
pub use components::{ComponentKind, ComponentReport, ControlComponent};
pub use error::{Error, Result};
pub use graph::{basic_stats, BasicStats, DirectedNetwork, NodeId};
pub use input_graph::{InputGraph, NodeClass};
pub use matching::Matching;
