pub mod document;
pub mod generate;
pub mod svg;
