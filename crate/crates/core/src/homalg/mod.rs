//! Homological algebra over P: finitely presented graded modules, module
//! Groebner bases and syzygies, complexes, resolutions, duals, hyper-Ext.

pub mod complex;
pub mod linalg;
pub mod module;
pub mod modvec;
pub mod resolve;

pub use complex::{cone, ChainMap, Complex};
pub use module::{modules_isomorphic, PresentedModule, RingCtx};
pub use resolve::{
    ext_modules, free_resolution, hyper_ext, minimalize_free_complex, resolve_complex,
    Resolution,
};
