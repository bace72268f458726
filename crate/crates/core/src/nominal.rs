//! The permutation-action interface, support, freshness, and executable
//! some/any and equivariance checks.
//!
//! Support is computed structurally per carrier (free atoms for terms, unions
//! over generators for points), never by quantifying over permutations; the
//! structural computation realizes the least supporting set for each carrier
//! we implement.

use std::collections::BTreeSet;

use crate::atoms::{fresh_atom, Atom, Perm};
use crate::report::{Report, Verdict};

/// A value with a permutation action and a computable supporting set.
///
/// Laws: `act(id) = x`, `act(pi, act(pi', x)) = act(pi ∘ pi', x)`, every
/// permutation fixing `support(x)` pointwise fixes `x`, and
/// `support(act(pi, x)) = pi · support(x)`.
pub trait Nominal {
    fn act(&self, pi: &Perm) -> Self;
    fn support(&self) -> BTreeSet<Atom>;
}

impl Nominal for Atom {
    fn act(&self, pi: &Perm) -> Atom {
        pi.apply(*self)
    }

    fn support(&self) -> BTreeSet<Atom> {
        [*self].into_iter().collect()
    }
}

impl Nominal for BTreeSet<Atom> {
    fn act(&self, pi: &Perm) -> BTreeSet<Atom> {
        self.iter().map(|a| pi.apply(*a)).collect()
    }

    fn support(&self) -> BTreeSet<Atom> {
        self.clone()
    }
}

impl<T: Nominal + Ord> Nominal for Vec<T> {
    fn act(&self, pi: &Perm) -> Vec<T> {
        self.iter().map(|x| x.act(pi)).collect()
    }

    fn support(&self) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        for x in self {
            s.extend(x.support());
        }
        s
    }
}

/// `true` iff `a` is outside the support of `x`.
pub fn is_fresh<T: Nominal>(a: Atom, x: &T) -> bool {
    !x.support().contains(&a)
}

/// Number of extra fresh atoms tried by [`check_some_any`] beyond the first.
/// One fresh atom suffices in principle; the extra trials catch support bugs.
pub const DEFAULT_SOME_ANY_TRIALS: usize = 3;

/// Tests the some/any property of an atom-indexed predicate whose fixed
/// parameters have the given support: the predicate is evaluated at one
/// deterministically fresh atom and at `trials` further fresh atoms, and all
/// answers must agree.
pub fn check_some_any(
    suite: &str,
    case: &str,
    params_support: &BTreeSet<Atom>,
    trials: usize,
    pred: impl Fn(Atom) -> bool,
) -> Report {
    let mut report = Report::new();
    let mut avoid = params_support.clone();
    let mut answers: Vec<(Atom, bool)> = Vec::new();
    for _ in 0..=trials {
        let c = fresh_atom(&avoid);
        avoid.insert(c);
        answers.push((c, pred(c)));
    }
    let first = answers[0].1;
    let disagreeing: Vec<String> = answers
        .iter()
        .filter(|(_, v)| *v != first)
        .map(|(a, _)| a.to_string())
        .collect();
    if disagreeing.is_empty() {
        report.push(
            suite,
            case,
            Verdict::Pass,
            None,
            format!("agree={} atoms={}", first, answers.len()),
        );
    } else {
        report.push(
            suite,
            case,
            Verdict::Refuted,
            None,
            format!("disagreeing atoms: {}", disagreeing.join(" ")),
        );
    }
    report
}

/// Asserts `f(pi . x) = pi . f(x)` for each sample and permutation.
pub fn check_equivariance<T, U>(
    suite: &str,
    case: &str,
    f: impl Fn(&T) -> U,
    samples: &[T],
    perms: &[Perm],
) -> Report
where
    T: Nominal + std::fmt::Debug,
    U: Nominal + PartialEq + std::fmt::Debug,
{
    let mut report = Report::new();
    let mut violations = Vec::new();
    for (i, x) in samples.iter().enumerate() {
        for (j, pi) in perms.iter().enumerate() {
            let lhs = f(&x.act(pi));
            let rhs = f(x).act(pi);
            if lhs != rhs {
                violations.push(format!("sample#{i} perm#{j} ({pi}): {lhs:?} != {rhs:?}"));
            }
        }
    }
    if violations.is_empty() {
        report.push(
            suite,
            case,
            Verdict::Pass,
            None,
            format!("{} samples x {} perms", samples.len(), perms.len()),
        );
    } else {
        report.push(suite, case, Verdict::Refuted, None, violations.join("; "));
    }
    report
}

/// Group laws for a slice of permutations, decided pointwise on the union of
/// their moved atoms (plus a spare atom outside it).
pub fn check_group_laws(suite: &str, perms: &[Perm]) -> Report {
    let mut report = Report::new();
    let mut probe: BTreeSet<Atom> = BTreeSet::new();
    for p in perms {
        probe.extend(p.moved());
    }
    probe.insert(fresh_atom(&probe));
    let agree = |p: &Perm, q: &Perm| probe.iter().all(|a| p.apply(*a) == q.apply(*a));

    let mut failures = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        if !agree(&p.compose(&Perm::identity()), p) || !agree(&Perm::identity().compose(p), p) {
            failures.push(format!("identity law fails for perm#{i}"));
        }
        if !p.compose(&p.invert()).is_identity() || !p.invert().compose(p).is_identity() {
            failures.push(format!("inverse law fails for perm#{i}"));
        }
        for (j, q) in perms.iter().enumerate() {
            // canonical form: pointwise-equal permutations have equal maps
            if agree(p, q) && p != q {
                failures.push(format!("canonical form differs for equal perms #{i},#{j}"));
            }
            for (k, r) in perms.iter().enumerate() {
                let lhs = p.compose(q).compose(r);
                let rhs = p.compose(&q.compose(r));
                if lhs != rhs {
                    failures.push(format!("associativity fails at #{i},#{j},#{k}"));
                }
            }
        }
    }
    if failures.is_empty() {
        report.push(
            suite,
            "group-laws",
            Verdict::Pass,
            None,
            format!("{} perms", perms.len()),
        );
    } else {
        report.push(suite, "group-laws", Verdict::Refuted, None, failures.join("; "));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::Atom;

    #[test]
    fn freshness_of_atoms() {
        let a = Atom(0);
        let b = Atom(1);
        assert!(!is_fresh(a, &a));
        assert!(is_fresh(b, &a));
    }

    #[test]
    fn some_any_on_freshness_predicate() {
        // pred(c) := c is fresh for {a}; all fresh atoms agree (true)
        let params: BTreeSet<Atom> = [Atom(0)].into_iter().collect();
        let report = check_some_any("nominal", "fresh-pred", &params, 3, |c| {
            is_fresh(c, &Atom(0))
        });
        assert!(report.all_passed());
    }

    #[test]
    fn some_any_vacuous_inequality() {
        // pred(c) := c = a is false at every fresh atom: PASS (vacuously agreeing)
        let params: BTreeSet<Atom> = [Atom(0)].into_iter().collect();
        let report = check_some_any("nominal", "neq", &params, 3, |c| c == Atom(0));
        assert!(report.all_passed());
        assert!(report.records[0].detail.contains("agree=false"));
    }

    #[test]
    fn equivariance_of_identity() {
        let samples = vec![Atom(0), Atom(5)];
        let perms = vec![Perm::swap(Atom(0), Atom(1)), Perm::identity()];
        let report = check_equivariance("nominal", "id", |x: &Atom| *x, &samples, &perms);
        assert!(report.all_passed());
    }

    #[test]
    fn non_equivariant_function_detected() {
        // f collapses everything to atom 0; moving 0 breaks equivariance
        let samples = vec![Atom(3)];
        let perms = vec![Perm::swap(Atom(0), Atom(1))];
        let report = check_equivariance("nominal", "const", |_: &Atom| Atom(0), &samples, &perms);
        assert_eq!(report.refuted(), 1);
    }

    #[test]
    fn group_laws_small_set() {
        let perms = vec![
            Perm::identity(),
            Perm::swap(Atom(0), Atom(1)),
            Perm::swap(Atom(1), Atom(2)),
            Perm::swap(Atom(0), Atom(1)).compose(&Perm::swap(Atom(1), Atom(2))),
        ];
        assert!(check_group_laws("nominal", &perms).all_passed());
    }
}
