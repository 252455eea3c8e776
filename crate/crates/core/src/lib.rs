pub mod algebra;
pub mod cli;
pub mod groebner;
pub mod kernel;
pub mod moment_model;
pub mod oracle;
pub mod presets_hk;
