pub mod ode;
pub mod quad;
pub mod roots;
pub mod stencil;
