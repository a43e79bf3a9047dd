pub mod clausegen;
pub mod evalharness;
pub mod models;
pub mod selpref;
pub mod typelogic;
pub mod udencoding;
