//! Reading, building and writing instances in a subset of the XCSP3 format.
//!
//! Supported: integer variables and arrays, extension, intension,
//! allDifferent, allEqual, ordered, lex, precedence, sum, count, nValues,
//! minimum, maximum, element and channel, with `<block>` and `<group>`
//! (scalar `%i` arguments), and a single objective. Anything else is
//! rejected with the list of offending elements.

mod build;
mod doc;
mod error;
mod read;
mod write;

pub use build::{build, build_with};
pub use doc::{CtrDoc, InstanceDoc, InstanceType, ObjectiveDoc, VarDecl, VarInfo};
pub use error::{Unsupported, XcspError};
pub use read::parse_instance;
pub use write::{domain_text, write_instance};

/// Parses and builds in one step.
pub fn load(text: &str) -> Result<(InstanceDoc, cpsolve::Problem), XcspError> {
    let doc = parse_instance(text)?;
    let p = build(&doc)?;
    Ok((doc, p))
}
