pub mod error;
pub mod scalars;
pub mod linalg;
pub mod composition;
pub mod jordan;
pub mod freudenthal;
pub mod lie_m;
pub mod lie_h;
pub mod lie_g;
pub mod lie_g3;
pub mod cayley;
pub mod orthogonal;
pub mod bessel;
pub mod whittaker;
pub mod schmid;
pub mod verify;
