//! Census engine for groups generated by an involution and one further
//! element, together with the combinatorial structures derived from them:
//! cubic Cayley graphs, coset digraphs of out-valence two, oriented rotary
//! maps and regular maps.
//!
//! The census is built inductively by elementary abelian extensions and is
//! cross-validated by an independent search over quotients of the free
//! product C2 * Cinf.

pub mod cohomology;
pub mod gf;
pub mod grp;
pub mod modrep;
pub mod poly;
pub mod triples;
