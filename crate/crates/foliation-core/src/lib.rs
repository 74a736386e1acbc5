//! Exact symbolic toolkit for codimension-one singular foliations in small
//! dimension: sparse rational polynomial arithmetic, differential forms,
//! charts with normal-crossings divisors, quadratic and monoidal blow-ups
//! with the dicriticality classifier, Camacho-Sad and Baum-Bott indices,
//! foliations on the projective plane and on Hirzebruch surfaces, and a
//! resolution-script verifier with a registry of worked examples.
//!
//! All arithmetic is exact; every verdict is three-valued where the
//! certification chain can fall short (yes / no / INCONCLUSIVE).

pub mod error;
pub mod poly;
pub mod resultant;
pub mod univar;
pub mod ratfunc;
pub mod verdict;
pub mod locus;
pub mod forms;
pub mod chart;
pub mod blowup;
pub mod surface;
pub mod projective;

pub use error::{Error, Result};
pub use forms::{from_closed_rational, isolated_singularity_2d, OneForm, ThreeForm, TwoForm};
pub use poly::{parse_poly, parse_rat, MPoly, PolyMap, Rat};
pub use ratfunc::{RatFunc, RatMap};
pub use verdict::{Emptiness, Verdict3};
