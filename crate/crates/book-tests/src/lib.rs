//! Runs the code blocks of the book as doctests.

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/cusps.md")]
    mod cusps {}
    #[doc = include_str!("../../../book/src/surface.md")]
    mod surface {}
    #[doc = include_str!("../../../book/src/plane.md")]
    mod plane {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
