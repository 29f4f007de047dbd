pub mod format;
pub mod presets;
pub mod report;
