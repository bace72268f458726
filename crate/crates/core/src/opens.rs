//! Compact open sets of the point model, the operation suite on them, and the
//! absolute denotation of lambda-terms with its coherence checks.
//!
//! A compact open is a finite union of up-sets `p•` where `p• = {q | p ⊆ q}`.
//! The disjuncts are point expressions, canonical wherever normalization
//! reaches generator form. Membership of a point in a `ppa` disjunct's up-set
//! has a direct characterisation: `q ∈ (℘h ⊘ p)•` iff every generator of `p`
//! is reached by some `App(rg, h)` with `rg` a generator of `q` — congruence
//! collapses the quantification over all members of `q` to its generators.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use crate::atoms::{fresh_atom, Atom};
use crate::points::{member, normalize, subset, Point, PointError, PointExpr};
use crate::report::{Report, Verdict};
use crate::nominal::Nominal;
use crate::terms::Term;
use crate::theory::{Decision3, Engine, Theory};

#[derive(Clone, Debug, PartialEq)]
pub struct OpenSet {
    theory: Rc<Theory>,
    disjuncts: Vec<PointExpr>,
}

impl OpenSet {
    /// The empty open set.
    pub fn empty(theory: Rc<Theory>) -> OpenSet {
        OpenSet {
            theory,
            disjuncts: Vec::new(),
        }
    }

    /// The set of all points: the up-set of the empty point.
    pub fn full(theory: Rc<Theory>) -> OpenSet {
        OpenSet {
            theory,
            disjuncts: vec![PointExpr::Canonical(BTreeSet::new())],
        }
    }

    /// The principal open `p•`.
    pub fn principal(point: &Point) -> OpenSet {
        OpenSet {
            theory: Rc::clone(point.theory()),
            disjuncts: vec![point.to_expr()],
        }
    }

    pub fn from_disjuncts(theory: Rc<Theory>, disjuncts: Vec<PointExpr>) -> OpenSet {
        OpenSet {
            theory,
            disjuncts: disjuncts.iter().map(normalize).collect(),
        }
    }

    pub fn theory(&self) -> &Rc<Theory> {
        &self.theory
    }

    pub fn disjuncts(&self) -> &[PointExpr] {
        &self.disjuncts
    }

    pub fn is_empty_union(&self) -> bool {
        self.disjuncts.is_empty()
    }

    fn check_same_theory(&self, other: &OpenSet) -> Result<(), PointError> {
        if *self.theory == *other.theory {
            Ok(())
        } else {
            Err(PointError::TheoryMismatch)
        }
    }

    /// Union of opens: disjunct union, deduplicated.
    pub fn join(&self, other: &OpenSet) -> Result<OpenSet, PointError> {
        self.check_same_theory(other)?;
        let mut disjuncts = self.disjuncts.clone();
        for d in &other.disjuncts {
            if !disjuncts.contains(d) {
                disjuncts.push(d.clone());
            }
        }
        Ok(OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts,
        })
    }

    /// Intersection: `p• ∩ q• = (p ∧ q)•`, pairwise over disjuncts.
    pub fn meet(&self, other: &OpenSet) -> Result<OpenSet, PointError> {
        self.check_same_theory(other)?;
        let mut disjuncts = Vec::new();
        for a in &self.disjuncts {
            for b in &other.disjuncts {
                let m = normalize(&PointExpr::meet(a.clone(), b.clone()));
                if !disjuncts.contains(&m) {
                    disjuncts.push(m);
                }
            }
        }
        Ok(OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts,
        })
    }

    /// Application: `p• ∗ q• = (p•q)•`, pairwise over disjuncts.
    pub fn app(&self, other: &OpenSet) -> Result<OpenSet, PointError> {
        self.check_same_theory(other)?;
        let mut disjuncts = Vec::new();
        for a in &self.disjuncts {
            for b in &other.disjuncts {
                let m = normalize(&PointExpr::app(a.clone(), b.clone()));
                if !disjuncts.contains(&m) {
                    disjuncts.push(m);
                }
            }
        }
        Ok(OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts,
        })
    }

    /// Right adjoint to application with a principal left operand: the
    /// disjuncts become symbolic `ppa` points; a union on the right splits
    /// disjunct-wise.
    pub fn ppa(q: &Point, x: &OpenSet) -> Result<OpenSet, PointError> {
        if **q.theory() != *x.theory {
            return Err(PointError::TheoryMismatch);
        }
        if !q.is_principal() {
            return Err(PointError::NotPrincipal);
        }
        let h = q.generators().iter().next().unwrap().clone();
        let disjuncts = x
            .disjuncts
            .iter()
            .map(|d| normalize(&PointExpr::ppa(h.clone(), d.clone())))
            .collect();
        Ok(OpenSet {
            theory: Rc::clone(&x.theory),
            disjuncts,
        })
    }

    /// The substitution action, disjunct-wise.
    pub fn subst_action(&self, a: Atom, u: &Term) -> OpenSet {
        OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts: self
                .disjuncts
                .iter()
                .map(|d| normalize(&PointExpr::subst(d.clone(), a, u.clone())))
                .collect(),
        }
    }

    /// The universal quantifier, disjunct-wise (it commutes with these
    /// unions in the canonical model).
    pub fn forall(&self, a: Atom) -> OpenSet {
        OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts: self
                .disjuncts
                .iter()
                .map(|d| normalize(&PointExpr::forall(a, d.clone())))
                .collect(),
        }
    }

    /// Semantic lambda-abstraction: `forall a` after `℘a ⊘ -`.
    pub fn lam(&self, a: Atom) -> Result<OpenSet, PointError> {
        let var_point = Point::up(Rc::clone(&self.theory), Term::var(a));
        OpenSet::ppa(&var_point, self).map(|x| x.forall(a))
    }

    /// Drops disjuncts whose up-set is certifiedly contained in another's:
    /// `pᵢ•` is contained in `pⱼ•` when `pⱼ ⊆ pᵢ`.
    pub fn prune(&self, engine: &mut Engine) -> OpenSet {
        let mut kept: Vec<PointExpr> = Vec::new();
        for d in &self.disjuncts {
            if kept
                .iter()
                .any(|k| subset(engine, k, d, &[]).yes())
            {
                continue;
            }
            kept.retain(|k| !subset(engine, d, k, &[]).yes());
            kept.push(d.clone());
        }
        OpenSet {
            theory: Rc::clone(&self.theory),
            disjuncts: kept,
        }
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disjuncts.is_empty() {
            return write!(f, "empty");
        }
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            match d.as_canonical() {
                Some(g) if g.is_empty() => write!(f, "any")?,
                _ => write!(f, "({d})•")?,
            }
        }
        Ok(())
    }
}

/// Is the point `q` inside the up-set of the (normalized) disjunct `d`?
fn point_in_disjunct(engine: &mut Engine, q: &Point, d: &PointExpr) -> Decision3 {
    match d {
        // canonical d: d ⊆ q iff every generator of d is a member of q
        PointExpr::Canonical(gens) => {
            let verdicts: Vec<Decision3> = gens
                .iter()
                .map(|g| {
                    let hits: Vec<Decision3> = q
                        .generators()
                        .iter()
                        .map(|rg| engine.reach(rg, g))
                        .collect();
                    or3(hits)
                })
                .collect();
            and3(verdicts)
        }
        // q ∈ (℘h ⊘ p)• iff p ⊆ q•(h↑); by congruence the applications of
        // all members of q collapse onto its generators
        PointExpr::Ppa(h, body) => match body.as_canonical() {
            Some(gens) => {
                let verdicts: Vec<Decision3> = gens
                    .iter()
                    .map(|g| {
                        let hits: Vec<Decision3> = q
                            .generators()
                            .iter()
                            .map(|rg| {
                                engine.reach(&Term::app(rg.clone(), h.clone()), g)
                            })
                            .collect();
                        or3(hits)
                    })
                    .collect();
                and3(verdicts)
            }
            None => Decision3::Unknown { pruned: false },
        },
        // q ∈ (forall a. p)•: when a is fresh for q the quantifier can be
        // discharged; a substitution instance that certifiedly escapes q
        // refutes membership
        PointExpr::Forall(a, body) => {
            if !q.support().contains(a) {
                return point_in_disjunct(engine, q, body);
            }
            let mut probe_atoms: BTreeSet<Atom> = q.support();
            probe_atoms.insert(*a);
            let mut refuted = false;
            let mut pruned = false;
            for x in probe_atoms {
                let inst = normalize(&PointExpr::subst(
                    body.as_ref().clone(),
                    *a,
                    Term::var(x),
                ));
                match point_in_disjunct(engine, q, &inst) {
                    Decision3::No => {
                        refuted = true;
                        break;
                    }
                    Decision3::Unknown { pruned: p } => pruned |= p,
                    Decision3::Yes { .. } => {}
                }
            }
            if refuted {
                Decision3::No
            } else {
                Decision3::Unknown { pruned }
            }
        }
        other => {
            let probes: Vec<Term> = q.generators().iter().cloned().collect();
            subset(engine, other, &q.to_expr(), &probes)
        }
    }
}

fn or3(verdicts: Vec<Decision3>) -> Decision3 {
    let mut all_no = true;
    let mut pruned = false;
    for v in verdicts {
        match v {
            Decision3::Yes { .. } => return v,
            Decision3::No => {}
            Decision3::Unknown { pruned: p } => {
                all_no = false;
                pruned |= p;
            }
        }
    }
    if all_no {
        Decision3::No
    } else {
        Decision3::Unknown { pruned }
    }
}

fn and3(verdicts: Vec<Decision3>) -> Decision3 {
    let mut all_yes = true;
    let mut pruned = false;
    let mut first: Option<Decision3> = None;
    for v in verdicts {
        match v {
            Decision3::No => return Decision3::No,
            Decision3::Yes { .. } => {
                if first.is_none() {
                    first = Some(v);
                }
            }
            Decision3::Unknown { pruned: p } => {
                all_yes = false;
                pruned |= p;
            }
        }
    }
    if all_yes {
        first.unwrap_or(Decision3::Yes {
            depth: 0,
            path: Vec::new(),
        })
    } else {
        Decision3::Unknown { pruned }
    }
}

/// Three-valued membership of a canonical point in an open set.
pub fn open_member(engine: &mut Engine, q: &Point, x: &OpenSet) -> Decision3 {
    or3(x
        .disjuncts
        .iter()
        .map(|d| point_in_disjunct(engine, q, d))
        .collect())
}

/// Membership of the point denoted by an expression in an open set: the open
/// is an up-set of the inclusion order, so `e`'s point is inside iff some
/// disjunct is included in it.
pub fn open_member_expr(engine: &mut Engine, e: &PointExpr, x: &OpenSet) -> Decision3 {
    let n = normalize(e);
    if let Some(gens) = n.as_canonical() {
        let q = Point::from_generators(Rc::clone(&x.theory), gens.clone());
        return open_member(engine, &q, x);
    }
    let probes: Vec<Term> = Vec::new();
    or3(x
        .disjuncts
        .iter()
        .map(|d| subset(engine, d, &n, &probes))
        .collect())
}

/// Inclusion of opens: every disjunct's base point must lie in the right-hand
/// open (each `pᵢ ∈ pᵢ•`, and opens are up-sets of inclusion).
pub fn open_subset(engine: &mut Engine, x: &OpenSet, y: &OpenSet) -> Decision3 {
    and3(
        x.disjuncts
            .iter()
            .map(|d| open_member_expr(engine, d, y))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Denotation

/// The absolute denotation: variables map to their principal open,
/// abstraction to the semantic lambda, application to `∗`. The result is
/// provably the principal open of the term itself; this is recomputed and
/// asserted on every call, so a mismatch aborts loudly.
pub fn denote(engine: &mut Engine, s: &Term) -> OpenSet {
    let theory = Rc::clone(&engine.theory);
    let result = denote_rec(&theory, s);
    let expected = OpenSet::principal(&Point::up(Rc::clone(&theory), s.clone()));
    assert_eq!(
        result, expected,
        "denotation of {s} failed to collapse to its principal open"
    );
    result
}

fn denote_rec(theory: &Rc<Theory>, s: &Term) -> OpenSet {
    match s {
        Term::Var(a) => {
            OpenSet::principal(&Point::up(Rc::clone(theory), Term::var(*a)))
        }
        Term::Lam(a, body) => {
            let inner = denote_rec(theory, body);
            inner.lam(*a).expect("lam on a denotation cannot fail")
        }
        Term::App(f, x) => {
            let df = denote_rec(theory, f);
            let dx = denote_rec(theory, x);
            df.app(&dx).expect("app on denotations cannot fail")
        }
    }
}

/// Denotational order between terms, with the internal coherence check that
/// the verdict agrees with direct reachability whenever both are decided.
pub fn denote_leq(engine: &mut Engine, s: &Term, t: &Term) -> Decision3 {
    let ds = denote(engine, s);
    let dt = denote(engine, t);
    let via_opens = open_subset(engine, &ds, &dt);
    let via_reach = engine.reach(s, t);
    match (&via_opens, &via_reach) {
        (Decision3::Yes { .. }, Decision3::No) | (Decision3::No, Decision3::Yes { .. }) => {
            panic!(
                "coherence failure for {s} vs {t}: opens say {via_opens}, reachability says {via_reach}"
            );
        }
        _ => {}
    }
    via_opens
}

// ---------------------------------------------------------------------------
// The open-law suite

/// Deterministic `(s, a, u)` instances for the open-law suite: a curated base
/// plus seeded random fills.
pub fn open_law_instances(seed: u64, count: usize) -> Vec<(Term, Atom, Term)> {
    let parse = |s: &str| crate::terms::parse(s).expect("curated instance");
    let curated: Vec<(Term, Atom, Term)> = vec![
        (parse("a b"), Atom(0), parse("c")),
        (parse("b"), Atom(0), parse("\\c.c")),
        (parse("\\b.b d"), Atom(3), parse("b")),
        (parse("a"), Atom(0), parse("b c")),
        (parse("b c"), Atom(1), parse("\\a.a")),
        (parse("\\a.a"), Atom(2), parse("c")),
    ];
    let mut out = curated;
    let mut gen = crate::terms::TermGen::new(seed);
    while out.len() < count {
        let s = gen.term(2);
        let u = gen.term(2);
        let a = gen.atom();
        if s.size() + u.size() <= 14 {
            out.push((s, a, u));
        }
    }
    out.truncate(count);
    out
}

/// Instantiates the compact-open laws over seeded instances: the beta and eta
/// inclusions, the adjunction unit/counit at principal instances, meet/join
/// algebra, the substitution action on opens, and separation of distinct
/// principal points.
pub fn check_open_laws(engine: &mut Engine, instances: &[(Term, Atom, Term)]) -> Report {
    let suite = "opens";
    let mut report = Report::new();
    let theory = Rc::clone(&engine.theory);

    let emit = |report: &mut Report, law: &str, idx: usize, d: Decision3, detail: String| {
        let verdict = match d {
            Decision3::Yes { .. } => Verdict::Pass,
            Decision3::No => Verdict::Refuted,
            Decision3::Unknown { .. } => Verdict::Undecided,
        };
        report.push(suite, format!("{law}#{idx:03}"), verdict, d.depth(), detail);
    };

    for (i, (s, a, u)) in instances.iter().enumerate() {
        let a = *a;
        let ds = denote(engine, s);
        let du = denote(engine, u);

        // beta inclusion: (lam a. [s]) ∗ [u]  ⊆  [s][a := u]
        let lhs = ds
            .lam(a)
            .and_then(|l| l.app(&du))
            .expect("open ops on denotations");
        let rhs = ds.subst_action(a, u);
        let d = open_subset(engine, &lhs, &rhs);
        emit(&mut report, "beta-opens", i, d, format!("s={s} a={a} u={u}"));

        // eta inclusion (a fresh for s): [s] ⊆ lam a. ([s] ∗ [a])
        if !s.free_atoms().contains(&a) {
            let da = denote(engine, &Term::var(a));
            let rhs = ds
                .app(&da)
                .and_then(|x| x.lam(a))
                .expect("open ops on denotations");
            let d = open_subset(engine, &ds, &rhs);
            emit(&mut report, "eta-opens", i, d, format!("s={s} a={a}"));
        }

        // adjunction counit at principal instances: (U ⊘ X) ∗ U ⊆ X
        {
            let x = &ds;
            let u_point = Point::up(Rc::clone(&theory), u.clone());
            let big_u = OpenSet::principal(&u_point);
            let lhs = OpenSet::ppa(&u_point, x)
                .and_then(|z| z.app(&big_u))
                .expect("ppa/app");
            let d = open_subset(engine, &lhs, x);
            emit(&mut report, "adjoint-counit", i, d, format!("s={s} u={u}"));
        }

        // adjunction unit at principal instances: X ⊆ U ⊘ (X ∗ U)
        {
            let x = &ds;
            let u_point = Point::up(Rc::clone(&theory), u.clone());
            let big_u = OpenSet::principal(&u_point);
            let rhs = x
                .app(&big_u)
                .and_then(|z| OpenSet::ppa(&u_point, &z))
                .expect("app/ppa");
            let d = open_subset(engine, x, &rhs);
            emit(&mut report, "adjoint-unit", i, d, format!("s={s} u={u}"));
        }

        // meet against the full open is identity; join with empty is identity
        {
            let full = OpenSet::full(Rc::clone(&theory));
            let empty = OpenSet::empty(Rc::clone(&theory));
            let m = ds.meet(&full).expect("meet");
            let j = ds.join(&empty).expect("join");
            let d = and3(vec![
                open_subset(engine, &m, &ds),
                open_subset(engine, &ds, &m),
                open_subset(engine, &j, &ds),
                open_subset(engine, &ds, &j),
            ]);
            emit(&mut report, "unit-laws", i, d, format!("s={s}"));
        }

        // application distributes over join
        {
            let x = denote(engine, s);
            let y = denote(engine, u);
            let xy = x.join(&y).expect("join");
            let z = denote(engine, &Term::var(a));
            let lhs = xy.app(&z).expect("app");
            let rhs = x
                .app(&z)
                .and_then(|l| y.app(&z).map(|r| (l, r)))
                .and_then(|(l, r)| l.join(&r))
                .expect("apps");
            let d = and3(vec![
                open_subset(engine, &lhs, &rhs),
                open_subset(engine, &rhs, &lhs),
            ]);
            emit(&mut report, "app-join-distrib", i, d, format!("s={s} u={u}"));
        }

        // substitution commutes with join
        {
            let x = denote(engine, s);
            let y = denote(engine, u);
            let b = fresh_atom(&{
                let mut all = s.free_atoms();
                all.extend(u.free_atoms());
                all.insert(a);
                all
            });
            let joined = x.join(&y).expect("join");
            let lhs = joined.subst_action(a, &Term::var(b));
            let rhs = x
                .subst_action(a, &Term::var(b))
                .join(&y.subst_action(a, &Term::var(b)))
                .expect("join");
            let d = and3(vec![
                open_subset(engine, &lhs, &rhs),
                open_subset(engine, &rhs, &lhs),
            ]);
            emit(&mut report, "subst-join-commute", i, d, format!("s={s} u={u}"));
        }

        // separation: distinct principal points are separated by some
        // principal open whenever the difference is certified
        {
            let p = Point::up(Rc::clone(&theory), s.clone());
            let q = Point::up(Rc::clone(&theory), u.clone());
            let g = s;
            let in_q = member(engine, g, &q.to_expr());
            if in_q.no() {
                // g is in p but certifiedly not in q: (g↑)• separates
                let sep = OpenSet::principal(&Point::up(Rc::clone(&theory), g.clone()));
                let p_in = open_member(engine, &p, &sep);
                let q_in = open_member(engine, &q, &sep);
                let d = match (&p_in, &q_in) {
                    (Decision3::Yes { .. }, Decision3::No) => p_in.clone(),
                    (Decision3::No, _) | (_, Decision3::Yes { .. }) => Decision3::No,
                    _ => Decision3::Unknown { pruned: false },
                };
                emit(&mut report, "separation", i, d, format!("p={p} q={q}"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse;
    use crate::theory::Budget;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn at(n: &str) -> Atom {
        Atom::parse(n).unwrap()
    }

    fn engine() -> Engine {
        Engine::new(Rc::new(Theory::beta_eta()), Budget::new(5, 40, 800)).unwrap()
    }

    #[test]
    fn denote_collapses_to_principal() {
        let mut eng = engine();
        for src in ["a", "(\\a.a) b", "\\a.a", "\\a.\\b.a b", "a b c"] {
            let d = denote(&mut eng, &t(src));
            assert_eq!(d.disjuncts().len(), 1, "{src}");
        }
    }

    #[test]
    fn open_member_examples() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        // q is in p• iff p ⊆ q: the up-set of a redex contains its reducts'
        // principal opens contravariantly
        let b_open = OpenSet::principal(&Point::up(Rc::clone(&theory), t("b")));
        let q = Point::up(Rc::clone(&theory), t("(\\a.a) b"));
        assert!(open_member(&mut eng, &q, &b_open).yes());
        // and not conversely: b never reduces to the redex
        let redex_open = OpenSet::principal(&q);
        let b_point = Point::up(Rc::clone(&theory), t("b"));
        assert!(!open_member(&mut eng, &b_point, &redex_open).yes());
        // p is in its own up-set
        let p = Point::up(Rc::clone(&theory), t("c d"));
        assert!(open_member(&mut eng, &p, &OpenSet::principal(&p)).yes());
        // the empty point is only in the full open
        let empty_point = Point::empty(Rc::clone(&theory));
        assert!(open_member(&mut eng, &empty_point, &b_open).no());
        assert!(open_member(&mut eng, &empty_point, &OpenSet::full(theory)).yes());
    }

    #[test]
    fn open_subset_examples() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let up = |s: &str| OpenSet::principal(&Point::up(Rc::clone(&theory), t(s)));
        // (s↑)• ⊆ (t↑)• iff s reaches t -- contravariance
        assert!(open_subset(&mut eng, &up("(\\a.a) b"), &up("b")).yes());
        // x ⊆ x ∪ y
        let x = up("b");
        let y = up("c");
        let xy = x.join(&y).unwrap();
        assert!(open_subset(&mut eng, &x, &xy).yes());
        // meet is the pairwise point-meet
        let m = x.meet(&y).unwrap();
        let direct = OpenSet::principal(
            &Point::up(Rc::clone(&theory), t("b"))
                .meet(&Point::up(Rc::clone(&theory), t("c")))
                .unwrap(),
        );
        assert!(open_subset(&mut eng, &m, &direct).yes());
        assert!(open_subset(&mut eng, &direct, &m).yes());
    }

    #[test]
    fn open_app_is_pointwise() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let up = |s: &str| OpenSet::principal(&Point::up(Rc::clone(&theory), t(s)));
        let lhs = up("a").app(&up("b")).unwrap();
        let rhs = up("a b");
        assert!(open_subset(&mut eng, &lhs, &rhs).yes());
        assert!(open_subset(&mut eng, &rhs, &lhs).yes());
        // empty absorbs
        let empty = OpenSet::empty(Rc::clone(&theory));
        assert!(up("a").app(&empty).unwrap().is_empty_union());
    }

    #[test]
    fn open_lam_collapses_to_principal() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let x = OpenSet::principal(&Point::up(Rc::clone(&theory), t("a b")));
        let l = x.lam(at("a")).unwrap();
        let expected = OpenSet::principal(&Point::up(Rc::clone(&theory), t("\\a.a b")));
        assert_eq!(l, expected);
        // lam distributes over join
        let y = OpenSet::principal(&Point::up(Rc::clone(&theory), t("c")));
        let joined = x.join(&y).unwrap();
        let lj = joined.lam(at("a")).unwrap();
        let direct = x
            .lam(at("a"))
            .unwrap()
            .join(&y.lam(at("a")).unwrap())
            .unwrap();
        assert!(open_subset(&mut eng, &lj, &direct).yes());
        assert!(open_subset(&mut eng, &direct, &lj).yes());
        // lam of the empty open is empty
        let empty = OpenSet::empty(theory);
        assert!(empty.lam(at("a")).unwrap().is_empty_union());
    }

    #[test]
    fn ppa_open_membership() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        // member r↑ of (℘t ⊘ (s↑)•) iff r t reaches s
        let t_point = Point::up(Rc::clone(&theory), t("b"));
        let x = OpenSet::principal(&Point::up(Rc::clone(&theory), t("b")));
        let open = OpenSet::ppa(&t_point, &x).unwrap();
        let r = Point::up(Rc::clone(&theory), t("\\a.a"));
        assert!(open_member(&mut eng, &r, &open).yes());
        // non-principal left operand is rejected
        let non_principal = Point::up(Rc::clone(&theory), t("b"))
            .meet(&Point::up(Rc::clone(&theory), t("c")))
            .unwrap();
        assert!(matches!(
            OpenSet::ppa(&non_principal, &x),
            Err(PointError::NotPrincipal)
        ));
    }

    #[test]
    fn open_subst_examples() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let up = |s: &str| OpenSet::principal(&Point::up(Rc::clone(&theory), t(s)));
        // ((s↑)•)[a := u] = ((s[a := u])↑)•
        let lhs = up("a c").subst_action(at("a"), &t("b"));
        let rhs = up("b c");
        assert!(open_subset(&mut eng, &lhs, &rhs).yes());
        assert!(open_subset(&mut eng, &rhs, &lhs).yes());
        // freshness: a # X means the action is identity
        let x = up("b c");
        let same = x.subst_action(at("a"), &t("d"));
        assert_eq!(x, same);
    }

    #[test]
    fn denote_leq_examples() {
        let mut eng = engine();
        assert!(denote_leq(&mut eng, &t("(\\a.a) b"), &t("b")).yes());
        assert!(denote_leq(&mut eng, &t("\\a.a"), &t("\\b.b")).yes());
        // the converse of a beta step is undecided under a small budget
        let mut small = Engine::new(
            Rc::new(Theory::beta_eta()),
            Budget::new(2, 20, 100),
        )
        .unwrap();
        assert!(denote_leq(&mut small, &t("b"), &t("(\\a.a) b")).unknown());
    }

    #[test]
    fn open_law_suite_smoke() {
        let mut eng = engine();
        let instances = vec![
            (t("a b"), at("a"), t("c")),
            (t("b"), at("a"), t("\\c.c")),
            (t("\\b.b d"), at("d"), t("b")),
        ];
        let report = check_open_laws(&mut eng, &instances);
        assert_eq!(report.refuted(), 0, "{report}");
        assert!(report.passed() > 0);
    }
}
