//! Exact spectral analysis of exceptional Laguerre operators built from
//! pairs of Maya diagrams: Darboux shift constants, Wronskian values at the
//! origin, Weyl m-functions, and the spectra of the self-adjoint
//! extensions, all in exact rational arithmetic with a brute-force series
//! oracle for cross-checking.

pub mod evalzero;
pub mod exact;
pub mod maya;
pub mod oracle;
pub mod seeds;
pub mod shifts;
pub mod spectral;
