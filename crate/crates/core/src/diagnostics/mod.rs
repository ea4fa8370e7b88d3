//! Conserved quantities, energy-estimate witnesses, and empirical checks of
//! the Sobolev and Gagliardo–Nirenberg–Sobolev inequalities.
//!
//! Inequalities with implicit constants are never asserted here. Each check
//! returns a [`BoundWitness`] carrying both sides and their ratio; callers
//! decide what ceiling to enforce.

mod conserved;
mod ensemble;
mod inequalities;

pub use conserved::{hamiltonian, mass, weighted_norms, Hamiltonian, WeightedNorms};
pub use ensemble::{gns_ensemble, random_band_limited, EnsembleSummary};
pub use inequalities::{
    check_gns, check_sobolev, embedding_witness, lemma1_linfty_bound, BoundWitness, GnsParams,
};
