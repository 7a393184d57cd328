//! Certified 7-colorings for squares of subcubic planar graphs.
//!
//! The pipeline decomposes a cubic planar graph's vertices into red and blue
//! classes so that the blue square-subgraph is 3-colorable and the red
//! square-subgraph is planar (hence 4-colorable); the two palettes combine
//! into a proper 7-coloring of the square. Every stage is checked by
//! independent verifiers, and small instances can be cross-checked against
//! exact brute-force oracles.

pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod precolor;
pub mod solver;
