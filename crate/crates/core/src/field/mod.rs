//! Exact arithmetic over ℚ: square classes, square roots, Hilbert symbols
//! and quadratic étale algebras.

pub mod etale;
pub mod factor;
pub mod hilbert;
pub mod quadratic_local;
pub mod square;

pub use etale::{EtaleElement, EtaleQuadratic, EtaleShape};
pub use hilbert::{hilbert_symbol, Place};
pub use square::{rational_sqrt, square_class, SquareClass};
