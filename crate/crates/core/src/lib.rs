//! Directions of point multisets in `AG(2,q)` and the code of lines of `PG(2,q)`.

pub mod gf;
pub mod linalg;
pub mod directions;
pub mod plane;
pub mod planecode;
pub mod bridge;
pub mod search;
pub mod formats;
pub mod verify;
