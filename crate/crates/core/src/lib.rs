pub mod cohomology;
pub mod complex;
pub mod corpus;
pub mod depth;
pub mod face_ring;
pub mod generators;
pub mod io;
pub mod limits;
pub mod linalg;
pub mod report;
pub mod verify;
