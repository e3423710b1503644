//! Exact-arithmetic engine for certifying that specialization of an elliptic
//! curve over Q(t) at a rational point t0 is injective on rational points.
//!
//! The pipeline, bottom to top:
//!
//! * [`arith`] — integer factorization, primality, and square classes in
//!   Q^*/(Q^*)^2, all exact.
//! * [`poly`] — univariate polynomials over Z and Q: parsing, gcd,
//!   square-free decomposition, and full factorization into irreducibles
//!   (Zassenhaus with Hensel lifting).
//! * [`gf2`] — square-class independence reduced to linear algebra over GF(2).
//! * [`criterion`] — the split-cubic injectivity test: no nonempty product of
//!   specialized factor values may become a square modulo the allowed
//!   constants.
//! * [`twist`] — the same test adapted to cubics with exactly one rational
//!   root, where the allowed constants also include divisors of a quadratic
//!   field discriminant.
//! * [`quadfield`] — square detection and unit square classes in real and
//!   imaginary quadratic fields of class number one.
//! * [`ec`], [`ffcurve`], [`heights`], [`specialize`] — generic Weierstrass
//!   group law, the degree-14 twist family with its two marked sections,
//!   naive heights and the height pairing, and exact specialization maps.
//! * [`report`] — serializable verdict documents.
//!
//! No floating point is used anywhere; every verdict is backed by an exact
//! certificate that can be re-checked independently.

pub mod arith;
pub mod criterion;
pub mod ec;
pub mod error;
pub mod ffcurve;
pub mod gf2;
pub mod heights;
pub mod poly;
pub mod quadfield;
pub mod report;
pub mod specialize;
pub mod twist;

pub use error::{Error, Result};
