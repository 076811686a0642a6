//! Balanced triangle presentations from the projective plane PG(2,q) in
//! Singer coordinates, the two-dimensional subshift they generate, and
//! the order of the identity class in the associated K0-model group,
//! computed by exact integer Smith normal form.
//!
//! The pipeline, bottom to top:
//!
//! * [`gf`] — arithmetic in F_q and F_{q^3} with the relative trace;
//! * [`plane`] — PG(2,q) as translates of the trace-zero difference set;
//! * [`presentation`] — the triangle presentation T0, its typed version
//!   T1 over three alphabets, and the balanced basic subset;
//! * [`subshift`] — the transition matrices M1, M2, conditions (H0)-(H3),
//!   word enumeration and the one-step shift multiset;
//! * [`intlat`] — Smith normal form and element orders in finitely
//!   presented abelian groups, over arbitrary-precision integers;
//! * [`ktheory`] — the relation lattice t = sum_s M(s,t) s, the group's
//!   invariant factors and the order of the all-ones class;
//! * [`pipeline`] — configuration, orchestration and JSON reports.

pub mod gf;
pub mod graph;
pub mod intlat;
pub mod ktheory;
pub mod pipeline;
pub mod plane;
pub mod presentation;
pub mod report;
pub mod subshift;
