pub mod cli;
pub mod dgcore;
pub mod exactlin;
pub mod fixtures;
pub mod functors;
pub mod pretr;
pub mod ptring;
pub mod random;
pub mod sodgen;
