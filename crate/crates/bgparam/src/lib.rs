pub mod error;
pub mod io;
pub mod lattice;
pub mod root_datum;
pub mod kottwitz;
pub mod weyl;
pub mod disconnected;
pub mod packet;
pub mod endoscopy;
pub mod examples;
