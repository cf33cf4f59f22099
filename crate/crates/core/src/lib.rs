//! Exact computations with the fermionic basis of the homogeneous XXZ chain:
//! Fock-space models, Littlewood–Richardson coefficients, the `B_J` basis
//! vectors and the quasi-local lattice realisation at `q = i`.

pub mod basis;
pub mod exactmath;
pub mod fock;
pub mod harness;
pub mod lattice;
pub mod lrcoeff;

pub use basis::{BasisError, FamilyElement, RankCertificate, ReductionOutcome};
pub use exactmath::{ExactError, ExactMatrix, Field, GaussianRational, Poly, RatFun, Ring, SeriesVar, TruncatedSeries, Var, YFrac};
pub use fock::{AlgebraWord, Fermions, FockError, FockVector, Generator, PBWMonomial};
pub use harness::{HarnessError, Report, Status, Suite, SuiteConfig, VerdictRecord};
pub use lattice::{BosonForm, Eps, Fermion, FreeFermionLattice, LatticeError, QuasiLocalOp};
pub use lrcoeff::{LRTable, LrError, Partition, SubsetIndex};
