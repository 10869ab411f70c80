//! Binomial edge ideals of simple graphs: Groebner bases, Hilbert series,
//! Betti numbers through Hochster's formula, minimal primes, and closed forms
//! for several graph families.

pub mod error;
pub mod families;
pub mod graph;
pub mod groebner;
pub mod harness;
pub mod hilbert;
pub mod hochster;
pub mod linalg;
pub mod poly;
pub mod primes;

pub use error::{Error, Result};
pub use families::{Family, FamilyExpectation};
pub use graph::{canonical_form, decode_graph6, encode_graph6, CanonicalForm, Graph, VertexSet};
pub use groebner::{binomial_edge_ideal, buchberger, BinomialIdeal, GroebnerBasis};
pub use harness::{compute_report, sweep, verify_family, GraphReport, PipelineConfig, SweepOptions};
pub use hilbert::{hilbert_numerator, summarize, HilbertSummary};
pub use hochster::{BettiTable, ComplexSpec, Field, RegReport};
pub use poly::{Binomial, Monomial, MonomialOrder, RationalSeries, UnivarPoly};
pub use primes::{minimal_primes, PrimeRecord};
