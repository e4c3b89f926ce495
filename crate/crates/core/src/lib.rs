//! Structured robotic-mission requirements compiled to linear temporal logic
//! and checked over finite traces.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`fretish`] parses requirement sentences (`scope`, `condition`,
//!    `component`, `shall`, `probability`, `timing`, `response`).
//! 2. [`semantics`] compiles a requirement group to an LTL [`Formula`].
//! 3. [`ltl`] evaluates formulas over finite [`Trace`]s and compares formulas
//!    by exhaustive enumeration of short traces.
//! 4. [`patterns`] classifies requirements against the pattern catalogue and
//!    instantiates catalogue templates; [`corpus`] validates and tallies a
//!    requirement corpus.
//!
//! Batch operations run on rayon when the `parallel` feature is enabled (the
//! default) and fall back to plain iteration otherwise. See [`exec`].
//!
//! ```
//! use missionspec::{check, parse_fretish, patterns::classify, to_ltl, Trace};
//!
//! let g = parse_fretish("whenever moving Astrobee shall immediately !KOZ1 & !KOZ2").unwrap();
//! let f = to_ltl(&g).unwrap();
//! assert_eq!(f.to_string(), "G ((moving) -> ((! (KOZ1)) & (! (KOZ2))))");
//! assert_eq!(classify(&g).unwrap().name, "Keep-Out-Zone");
//!
//! let trace = Trace::from_json_str(r#"{
//!     "closed_world": true,
//!     "booleans": ["moving", "KOZ1", "KOZ2"],
//!     "steps": [{"moving": true}, {"moving": true, "KOZ2": true}]
//! }"#).unwrap();
//! let verdict = check(&f, &trace).unwrap();
//! assert!(!verdict.is_satisfied());
//! assert_eq!(verdict.witness, Some(1));
//! ```

pub mod corpus;
pub mod exec;
pub mod fretish;
pub mod ltl;
pub mod numeric;
pub mod patterns;
pub mod semantics;
pub mod trace;

pub use fretish::{parse_fretish, render_fretish, validate, Requirement, RequirementGroup};
pub use ltl::{check, eval_at, parse_ltl, render_ltl, Formula, Predicate, Verdict};
pub use semantics::{explain, to_ltl};
pub use trace::{State, Trace};
