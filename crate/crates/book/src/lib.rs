//! Guide chapters compiled as doctests, so the snippets in `book/` stay in
//! step with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}

#[doc = include_str!("../../../book/src/square-inequality.md")]
pub mod square_inequality {}

#[doc = include_str!("../../../book/src/plane-tables.md")]
pub mod plane_tables {}

#[doc = include_str!("../../../book/src/orbits.md")]
pub mod orbits {}

#[doc = include_str!("../../../book/src/rendering.md")]
pub mod rendering {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/checklist.md")]
pub mod checklist {}
