//! Minimum poset covers of sets of linear orders.
//!
//! Given a set of linear orders, find the fewest partial orders whose sets of
//! linear extensions union to exactly that set. Each cover size is reduced to
//! CNF and handed to a SAT backend. The swap graph (orders joined by an
//! adjacent transposition) limits the excluded orders to a thin "moat" around
//! each connected component and splits the input into independent
//! sub-problems.
//!
//! ```
//! use posetcov::{instance::parse_instance, driver::{solve, SolveOptions}};
//!
//! let orders = parse_instance("abdce\nbadce\nabcde\nabdec\n").unwrap();
//! let cover = solve(&orders, &SolveOptions::default()).unwrap();
//! assert_eq!(cover.k(), 2);
//! ```

pub mod backend;
pub mod bench;
pub mod driver;
pub mod encoding;
pub mod error;
pub mod instance;
pub mod order;
pub mod poset;
pub mod report;
pub mod swap_graph;
pub mod testkit;

pub use driver::{solve, Cover, Method, SolveOptions};
pub use error::{Error, Result};
pub use order::{LinearOrder, OrderSet, Universe};
pub use poset::{HasseDiagram, Poset};
