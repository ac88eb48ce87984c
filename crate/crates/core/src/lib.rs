pub mod cumulants;
pub mod json;
pub mod measures;
pub mod partitions;
pub mod random;
pub mod series;
pub mod transforms;
pub mod verify;
