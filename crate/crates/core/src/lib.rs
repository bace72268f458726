//! A workbench for the untyped lambda-calculus built on nominal sets.
//!
//! The crate provides atoms and finite permutations, lambda-terms up to
//! alpha-equivalence with capture-avoiding substitution, lambda-reduction
//! theories with a bounded three-valued reachability engine, the canonical
//! point model of a reduction theory with its operation suite, compact-open
//! sets and the term denotation over them, finite distributive lattices with
//! exhaustive filter machinery, and an exact finite-universe oracle used to
//! validate the symbolic rules. Every algebraic law in sight is executable as
//! a check that reports pass, refuted, or undecided.

pub mod atoms;
pub mod lattice;
pub mod nominal;
pub mod opens;
pub mod oracle;
pub mod points;
pub mod report;
pub mod terms;
pub mod theory;

pub use atoms::{fresh_atom, Atom, Perm};
pub use nominal::Nominal;
pub use opens::{denote, denote_leq, open_member, open_subset, OpenSet};
pub use points::{member, normalize, parse_point_expr, subset, Point, PointExpr};
pub use report::{Report, Verdict};
pub use terms::{alpha_eq, parse, print_term, subst, Term};
pub use theory::{eq_check, reach, successors, Budget, Decision3, Engine, Theory};
