//! File formats for double-resolution tomography instances and images, plus
//! the pieces of the `drtomo` command-line tool. The algorithms live in
//! [`drtomo_core`].

pub mod layout;
pub mod nsr;
pub mod pnm;
pub mod sat;

pub use layout::write_layout;
pub use nsr::{parse_instance, write_instance, ParseError};
pub use pnm::{read_gray, read_image, write_gray, write_image, PnmError};
pub use sat::{format_assignment, parse_assignment, parse_sat, write_sat, SatError};
