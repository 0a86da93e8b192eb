pub mod blowdown;
pub mod geodesics;
pub mod invariant;
pub mod scatter;
pub mod simplicity;
