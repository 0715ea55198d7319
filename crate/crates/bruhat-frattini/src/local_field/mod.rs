//! Truncated Laurent-series models of local fields of positive
//! characteristic and of their quadratic and cubic extensions.

pub mod gf;
pub mod lemmas;
pub mod model;
pub mod series;

pub use gf::{Elt, Gf};
pub use lemmas::{
    epsilon, good_torus_element, hensel_sqrt, inversion_depth, min_trace_unipotent, solve_inversion,
    torus_valuations, trace_uniformizer, trace_uniformizer_from,
};
pub use model::{h_mul, ExtensionDesc, HPoint, LocalModel, TraceSubspaces, DEFAULT_PREC};
pub use series::{Comparison, Series, EXACT};

/// `ω(x)` with `None` for `+∞`.
pub fn valuation(x: &Series) -> crate::Result<Option<i64>> {
    x.valuation()
}
