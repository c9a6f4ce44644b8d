//! Exact truncated power series and the closed-form generating functions
//! they are checked against.

mod forms;
mod poly;
mod system;
mod xseries;

pub use forms::{build_closed_form, closed_form_names, verify_cleared, ClearedForm, FormTerm, IdentityReport, Offence};
pub use poly::{parse_aux, parse_xpoly, PolyAux, XPoly};
pub use system::{first_letter_series, joint_series, verify_system, vpoly_series, Equation, SystemCase, SystemReport};
pub use xseries::{Binding, XSeries, DEFAULT_GUARD};
