//! First-return induction of the toral action, 2D substitutions and the
//! resulting self-similarity.

mod known;
pub mod pet;
pub mod selfsim;
pub mod spectral;
pub mod substitution;

pub use pet::{Direction, Pet, ReturnBranch};
pub use selfsim::{find_conjugacy, known_n3, return_cap, self_similarity, SelfSimilarity};
pub use spectral::{charpoly, spectral_check, SpectralReport};
pub use substitution::{Block, IncidenceMatrix, Substitution2d, WordAxis};
