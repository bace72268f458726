//! The canonical point model of a reduction theory.
//!
//! A [`Point`] is a finite union of principal up-sets: it stores a finite
//! generator set and denotes every reduct of every generator. Finite unions of
//! principal up-sets are closed under the whole operation suite we need, and
//! they are the maximal fragment with a computable presentation.
//!
//! [`PointExpr`] is the symbolic side: expressions over points built from
//! meets, application, the right adjoint to application, quantifiers, the
//! substitution and amgis actions, and permutations. [`normalize`] rewrites an
//! expression towards canonical generator form without changing the denoted
//! set; [`member`] and [`subset`] decide membership and inclusion
//! three-valuedly, answering `Unknown` when neither a certificate nor a
//! refutation is in budget.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::atoms::{fresh_atom, Atom, Perm};
use crate::nominal::Nominal;
use crate::report::{Report, Verdict};
use crate::terms::{parse, subst, ParseError, Term};
use crate::theory::{Decision3, Engine, Theory};

#[derive(Debug, Error)]
pub enum PointError {
    #[error("points belong to different theories")]
    TheoryMismatch,
    #[error("operation requires a principal point (exactly one generator)")]
    NotPrincipal,
}

/// A canonical point: the union of the principal up-sets of its generators.
#[derive(Clone, Debug)]
pub struct Point {
    theory: Rc<Theory>,
    generators: BTreeSet<Term>,
}

impl PartialEq for Point {
    fn eq(&self, other: &Point) -> bool {
        *self.theory == *other.theory && self.generators == other.generators
    }
}

impl Eq for Point {}

impl Point {
    /// The principal point of `s`: everything `s` reduces to.
    pub fn up(theory: Rc<Theory>, s: Term) -> Point {
        Point {
            theory,
            generators: [s].into_iter().collect(),
        }
    }

    /// The empty set of phrases, which is a point; its up-set is everything.
    pub fn empty(theory: Rc<Theory>) -> Point {
        Point {
            theory,
            generators: BTreeSet::new(),
        }
    }

    pub fn from_generators(theory: Rc<Theory>, generators: BTreeSet<Term>) -> Point {
        Point { theory, generators }
    }

    pub fn theory(&self) -> &Rc<Theory> {
        &self.theory
    }

    pub fn generators(&self) -> &BTreeSet<Term> {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    fn check_same_theory(&self, other: &Point) -> Result<(), PointError> {
        if *self.theory == *other.theory {
            Ok(())
        } else {
            Err(PointError::TheoryMismatch)
        }
    }

    /// Meet of points is generator union (set union of the denoted sets).
    pub fn meet(&self, other: &Point) -> Result<Point, PointError> {
        self.check_same_theory(other)?;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Point {
            theory: Rc::clone(&self.theory),
            generators,
        })
    }

    /// Application: generator-wise application, distributed over the unions.
    pub fn papp(&self, other: &Point) -> Result<Point, PointError> {
        self.check_same_theory(other)?;
        let generators = self
            .generators
            .iter()
            .flat_map(|g| {
                other
                    .generators
                    .iter()
                    .map(move |h| Term::app(g.clone(), h.clone()))
            })
            .collect();
        Ok(Point {
            theory: Rc::clone(&self.theory),
            generators,
        })
    }

    /// The substitution action, generator-wise.
    pub fn psubst(&self, a: Atom, u: &Term) -> Point {
        Point {
            theory: Rc::clone(&self.theory),
            generators: self.generators.iter().map(|g| subst(g, a, u)).collect(),
        }
    }

    /// Drops generators reachable from another generator (their up-sets are
    /// then contained in the survivor's). Only certified reachability prunes.
    pub fn prune(&self, engine: &mut Engine) -> Point {
        let mut kept: Vec<Term> = Vec::new();
        for g in &self.generators {
            if kept.iter().any(|k| engine.reach(k, g).yes()) {
                continue;
            }
            kept.retain(|k| !engine.reach(g, k).yes());
            kept.push(g.clone());
        }
        Point {
            theory: Rc::clone(&self.theory),
            generators: kept.into_iter().collect(),
        }
    }

    pub fn to_expr(&self) -> PointExpr {
        PointExpr::Canonical(self.generators.clone())
    }
}

impl Nominal for Point {
    fn act(&self, pi: &Perm) -> Point {
        Point {
            theory: Rc::clone(&self.theory),
            generators: self.generators.iter().map(|g| g.act(pi)).collect(),
        }
    }

    /// Structural support: the union of the generators' free atoms.
    fn support(&self) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        for g in &self.generators {
            s.extend(g.free_atoms());
        }
        s
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}↑")
    }
}

// ---------------------------------------------------------------------------
// Symbolic point expressions

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointExpr {
    /// Normal form: a finite generator set.
    Canonical(BTreeSet<Term>),
    Up(Term),
    Meet(Box<PointExpr>, Box<PointExpr>),
    App(Box<PointExpr>, Box<PointExpr>),
    /// Right adjoint to application with a principal left operand.
    Ppa(Term, Box<PointExpr>),
    Forall(Atom, Box<PointExpr>),
    Exists(Atom, Box<PointExpr>),
    Nu(Atom, Box<PointExpr>),
    /// The substitution action `[a <= u]` on points.
    Subst(Box<PointExpr>, Atom, Term),
    /// The amgis action `[u => a]`: membership of `t` means `t[a := u]` is in.
    Amgis(Box<PointExpr>, Term, Atom),
    PermAct(Perm, Box<PointExpr>),
}

impl PointExpr {
    pub fn up(s: Term) -> PointExpr {
        PointExpr::Up(s)
    }

    pub fn meet(a: PointExpr, b: PointExpr) -> PointExpr {
        PointExpr::Meet(Box::new(a), Box::new(b))
    }

    pub fn app(a: PointExpr, b: PointExpr) -> PointExpr {
        PointExpr::App(Box::new(a), Box::new(b))
    }

    pub fn ppa(h: Term, e: PointExpr) -> PointExpr {
        PointExpr::Ppa(h, Box::new(e))
    }

    pub fn forall(a: Atom, e: PointExpr) -> PointExpr {
        PointExpr::Forall(a, Box::new(e))
    }

    pub fn exists(a: Atom, e: PointExpr) -> PointExpr {
        PointExpr::Exists(a, Box::new(e))
    }

    pub fn nu(a: Atom, e: PointExpr) -> PointExpr {
        PointExpr::Nu(a, Box::new(e))
    }

    pub fn subst(e: PointExpr, a: Atom, u: Term) -> PointExpr {
        PointExpr::Subst(Box::new(e), a, u)
    }

    pub fn amgis(e: PointExpr, u: Term, a: Atom) -> PointExpr {
        PointExpr::Amgis(Box::new(e), u, a)
    }

    pub fn perm(pi: Perm, e: PointExpr) -> PointExpr {
        PointExpr::PermAct(pi, Box::new(e))
    }

    pub fn as_canonical(&self) -> Option<&BTreeSet<Term>> {
        match self {
            PointExpr::Canonical(gens) => Some(gens),
            _ => None,
        }
    }

    /// Structural over-approximation of the support of the denoted point.
    /// An atom outside this set is certainly fresh for the denotation.
    pub fn support(&self) -> BTreeSet<Atom> {
        match self {
            PointExpr::Canonical(gens) => {
                let mut s = BTreeSet::new();
                for g in gens {
                    s.extend(g.free_atoms());
                }
                s
            }
            PointExpr::Up(t) => t.free_atoms(),
            PointExpr::Meet(a, b) | PointExpr::App(a, b) => {
                let mut s = a.support();
                s.extend(b.support());
                s
            }
            PointExpr::Ppa(h, e) => {
                let mut s = h.free_atoms();
                s.extend(e.support());
                s
            }
            PointExpr::Forall(a, e) | PointExpr::Exists(a, e) | PointExpr::Nu(a, e) => {
                let mut s = e.support();
                s.remove(a);
                s
            }
            PointExpr::Subst(e, a, u) => {
                let mut s = e.support();
                s.remove(a);
                s.extend(u.free_atoms());
                s
            }
            PointExpr::Amgis(e, u, a) => {
                let mut s = e.support();
                s.insert(*a);
                s.extend(u.free_atoms());
                s
            }
            PointExpr::PermAct(pi, e) => e.support().iter().map(|a| pi.apply(*a)).collect(),
        }
    }
}

impl fmt::Display for PointExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointExpr::Canonical(gens) => {
                let mut first = true;
                if gens.is_empty() {
                    return write!(f, "up()");
                }
                for g in gens {
                    if !first {
                        write!(f, " ∨ ")?;
                    }
                    first = false;
                    write!(f, "up({g})")?;
                }
                Ok(())
            }
            PointExpr::Up(t) => write!(f, "up({t})"),
            PointExpr::Meet(a, b) => write!(f, "meet({a},{b})"),
            PointExpr::App(a, b) => write!(f, "app({a},{b})"),
            PointExpr::Ppa(h, e) => write!(f, "ppa({h},{e})"),
            PointExpr::Forall(a, e) => write!(f, "forall {a}. {e}"),
            PointExpr::Exists(a, e) => write!(f, "exists {a}. {e}"),
            PointExpr::Nu(a, e) => write!(f, "nu {a}. {e}"),
            PointExpr::Subst(e, a, u) => write!(f, "subst({e},{a},{u})"),
            PointExpr::Amgis(e, u, a) => write!(f, "amgis({e},{u},{a})"),
            PointExpr::PermAct(pi, e) => write!(f, "perm({pi},{e})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Normalization

/// Denotation-preserving rewriting towards canonical generator form. Always
/// reaches a canonical form on the fragment built from `Up`, `Meet`, `App`,
/// `Subst`, and `PermAct`; other constructors normalize their bodies and
/// simplify where a rewrite applies:
///
/// * application of canonical points is generator-wise application,
/// * substitution into a canonical point is generator-wise substitution,
/// * substitution distributes over meet, application, and `ppa(b, -)`
///   when `b` is an atom with `b # u`,
/// * substitution and the universal quantifier vanish on points they are
///   fresh for,
/// * `forall a. ppa(a, up(s))` collapses to `up(\a.s)`,
/// * permutations push to the leaves.
pub fn normalize(e: &PointExpr) -> PointExpr {
    match e {
        PointExpr::Canonical(_) => e.clone(),
        PointExpr::Up(t) => PointExpr::Canonical([t.clone()].into_iter().collect()),
        PointExpr::Meet(a, b) => {
            let na = normalize(a);
            let nb = normalize(b);
            match (na.as_canonical(), nb.as_canonical()) {
                (Some(ga), Some(gb)) => {
                    PointExpr::Canonical(ga.iter().chain(gb.iter()).cloned().collect())
                }
                _ => PointExpr::Meet(Box::new(na), Box::new(nb)),
            }
        }
        PointExpr::App(a, b) => {
            let na = normalize(a);
            let nb = normalize(b);
            match (na.as_canonical(), nb.as_canonical()) {
                (Some(ga), Some(gb)) => PointExpr::Canonical(
                    ga.iter()
                        .flat_map(|g| gb.iter().map(move |h| Term::app(g.clone(), h.clone())))
                        .collect(),
                ),
                _ => PointExpr::App(Box::new(na), Box::new(nb)),
            }
        }
        PointExpr::Ppa(h, inner) => PointExpr::Ppa(h.clone(), Box::new(normalize(inner))),
        PointExpr::Forall(a, inner) => {
            let n = normalize(inner);
            if !n.support().contains(a) {
                return n;
            }
            // forall a. ppa(a, up(s))  =  up(\a.s)
            if let PointExpr::Ppa(h, body) = &n {
                if matches!(h, Term::Var(v) if v == a) {
                    if let Some(gens) = body.as_canonical() {
                        if gens.len() == 1 {
                            let s = gens.iter().next().unwrap().clone();
                            return PointExpr::Canonical(
                                [Term::lam(*a, s)].into_iter().collect(),
                            );
                        }
                    }
                }
            }
            PointExpr::Forall(*a, Box::new(n))
        }
        PointExpr::Exists(a, inner) => PointExpr::Exists(*a, Box::new(normalize(inner))),
        PointExpr::Nu(a, inner) => PointExpr::Nu(*a, Box::new(normalize(inner))),
        PointExpr::Subst(inner, a, u) => {
            let n = normalize(inner);
            if let Some(gens) = n.as_canonical() {
                return PointExpr::Canonical(gens.iter().map(|g| subst(g, *a, u)).collect());
            }
            if !n.support().contains(a) {
                return n;
            }
            match n {
                PointExpr::Meet(x, y) => normalize(&PointExpr::Meet(
                    Box::new(PointExpr::Subst(x, *a, u.clone())),
                    Box::new(PointExpr::Subst(y, *a, u.clone())),
                )),
                PointExpr::App(x, y) => normalize(&PointExpr::App(
                    Box::new(PointExpr::Subst(x, *a, u.clone())),
                    Box::new(PointExpr::Subst(y, *a, u.clone())),
                )),
                PointExpr::Ppa(h, x) => {
                    let distributes = matches!(
                        &h,
                        Term::Var(b) if b != a && !u.free_atoms().contains(b)
                    );
                    if distributes {
                        normalize(&PointExpr::Ppa(
                            h,
                            Box::new(PointExpr::Subst(x, *a, u.clone())),
                        ))
                    } else {
                        PointExpr::Subst(
                            Box::new(PointExpr::Ppa(h, x)),
                            *a,
                            u.clone(),
                        )
                    }
                }
                other => PointExpr::Subst(Box::new(other), *a, u.clone()),
            }
        }
        PointExpr::Amgis(inner, u, a) => {
            PointExpr::Amgis(Box::new(normalize(inner)), u.clone(), *a)
        }
        PointExpr::PermAct(pi, inner) => {
            if pi.is_identity() {
                return normalize(inner);
            }
            let pushed = match inner.as_ref() {
                PointExpr::Canonical(gens) => {
                    PointExpr::Canonical(gens.iter().map(|g| g.act(pi)).collect())
                }
                PointExpr::Up(t) => PointExpr::Up(t.act(pi)),
                PointExpr::Meet(x, y) => PointExpr::Meet(
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                    Box::new(PointExpr::PermAct(pi.clone(), y.clone())),
                ),
                PointExpr::App(x, y) => PointExpr::App(
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                    Box::new(PointExpr::PermAct(pi.clone(), y.clone())),
                ),
                PointExpr::Ppa(h, x) => PointExpr::Ppa(
                    h.act(pi),
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                ),
                PointExpr::Forall(a, x) => PointExpr::Forall(
                    pi.apply(*a),
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                ),
                PointExpr::Exists(a, x) => PointExpr::Exists(
                    pi.apply(*a),
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                ),
                PointExpr::Nu(a, x) => PointExpr::Nu(
                    pi.apply(*a),
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                ),
                PointExpr::Subst(x, a, u) => PointExpr::Subst(
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                    pi.apply(*a),
                    u.act(pi),
                ),
                PointExpr::Amgis(x, u, a) => PointExpr::Amgis(
                    Box::new(PointExpr::PermAct(pi.clone(), x.clone())),
                    u.act(pi),
                    pi.apply(*a),
                ),
                PointExpr::PermAct(pi2, x) => {
                    PointExpr::PermAct(pi.compose(pi2), x.clone())
                }
            };
            normalize(&pushed)
        }
    }
}

// ---------------------------------------------------------------------------
// Three-valued membership and inclusion

fn or3(verdicts: impl IntoIterator<Item = Decision3>) -> Decision3 {
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

fn and3(verdicts: impl IntoIterator<Item = Decision3>) -> Decision3 {
    let mut best: Option<Decision3> = None;
    let mut all_yes = true;
    let mut pruned = false;
    for v in verdicts {
        match v {
            Decision3::No => return Decision3::No,
            Decision3::Yes { .. } => {
                if best.is_none() {
                    best = Some(v);
                }
            }
            Decision3::Unknown { pruned: p } => {
                all_yes = false;
                pruned |= p;
            }
        }
    }
    if all_yes {
        best.unwrap_or(Decision3::Yes {
            depth: 0,
            path: Vec::new(),
        })
    } else {
        Decision3::Unknown { pruned }
    }
}

/// Probe substituends for a universal-quantifier certificate at atom `a`:
/// the identity `a` itself, one fresh atom, the free atoms in sight, and the
/// subterms of the candidate term.
fn forall_probes(a: Atom, t: &Term, e: &PointExpr) -> Vec<Term> {
    let mut avoid = t.free_atoms();
    avoid.extend(e.support());
    avoid.insert(a);
    let mut probes: BTreeSet<Term> = BTreeSet::new();
    probes.insert(Term::var(a));
    probes.insert(Term::var(fresh_atom(&avoid)));
    for x in &avoid {
        probes.insert(Term::var(*x));
    }
    collect_subterms_into(t, &mut probes);
    probes.into_iter().collect()
}

fn collect_subterms_into(t: &Term, out: &mut BTreeSet<Term>) {
    out.insert(t.clone());
    match t {
        Term::Var(_) => {}
        Term::Lam(_, s) => collect_subterms_into(s, out),
        Term::App(f, x) => {
            collect_subterms_into(f, out);
            collect_subterms_into(x, out);
        }
    }
}

/// Three-valued membership of a term in the point denoted by an expression.
pub fn member(engine: &mut Engine, t: &Term, e: &PointExpr) -> Decision3 {
    member_norm(engine, t, &normalize(e))
}

fn member_norm(engine: &mut Engine, t: &Term, e: &PointExpr) -> Decision3 {
    match e {
        PointExpr::Canonical(gens) => {
            or3(gens.iter().map(|g| engine.reach(g, t)).collect::<Vec<_>>())
        }
        PointExpr::Up(s) => engine.reach(s, t),
        PointExpr::Meet(a, b) => {
            let va = member_norm(engine, t, a);
            if va.yes() {
                return va;
            }
            let vb = member_norm(engine, t, b);
            or3([va, vb])
        }
        // application of non-canonical operands has no finite generator
        // presentation, but a certified member of the left operand applied to
        // a generator of the right lands in the application, and up-closure
        // then reaches t
        PointExpr::App(e1, e2) => {
            let Some(gens2) = e2.as_canonical() else {
                return Decision3::Unknown { pruned: false };
            };
            let gens2 = gens2.clone();
            let mut candidates: BTreeSet<Term> = BTreeSet::new();
            collect_subterms_into(t, &mut candidates);
            if let PointExpr::Ppa(h, body) = e1.as_ref() {
                if let Some(gens) = body.as_canonical() {
                    for g in gens {
                        let mut avoid = g.free_atoms();
                        avoid.extend(h.free_atoms());
                        candidates.insert(Term::lam(fresh_atom(&avoid), g.clone()));
                    }
                }
            }
            for x in candidates {
                if member_norm(engine, &x, e1).yes() {
                    for g in &gens2 {
                        let applied = Term::app(x.clone(), g.clone());
                        if engine.reach(&applied, t).yes() {
                            return Decision3::Yes {
                                depth: 0,
                                path: Vec::new(),
                            };
                        }
                    }
                }
            }
            Decision3::Unknown { pruned: false }
        }
        PointExpr::Ppa(h, inner) => match inner.as_canonical() {
            Some(gens) => {
                if gens.is_empty() {
                    // no point applied to anything covers the empty point's
                    // up-set, so the adjoint of the empty point is empty
                    return Decision3::No;
                }
                let verdicts: Vec<Decision3> = gens
                    .iter()
                    .map(|g| {
                        let applied = Term::app(t.clone(), h.clone());
                        engine.reach(&applied, g)
                    })
                    .collect();
                and3(verdicts)
            }
            None => Decision3::Unknown { pruned: false },
        },
        PointExpr::Subst(_, _, _) => Decision3::Unknown { pruned: false },
        PointExpr::Amgis(inner, u, a) => {
            let substituted = subst(t, *a, u);
            member_norm(engine, &substituted, inner)
        }
        PointExpr::Nu(a, inner) => {
            let mut avoid = inner.support();
            avoid.extend(t.free_atoms());
            avoid.insert(*a);
            let b = fresh_atom(&avoid);
            let swapped = t.act(&Perm::swap(b, *a));
            member_norm(engine, &swapped, inner)
        }
        PointExpr::Forall(a, inner) => {
            if !inner.support().contains(a) {
                return member_norm(engine, t, inner);
            }
            // witness route: the quantifier is the union of all substitution
            // instances, so any instance containing t certifies membership
            let mut pruned = false;
            for u in forall_probes(*a, t, inner) {
                let instance =
                    normalize(&PointExpr::Subst(inner.clone(), *a, u));
                match member_norm(engine, t, &instance) {
                    d @ Decision3::Yes { .. } => return d,
                    Decision3::Unknown { pruned: p } => pruned |= p,
                    Decision3::No => {}
                }
            }
            Decision3::Unknown { pruned }
        }
        PointExpr::Exists(a, inner) => {
            // a generator the quantified atom is fresh for certifies Yes
            if let Some(gens) = inner.as_canonical() {
                let witness = gens
                    .iter()
                    .filter(|g| !g.free_atoms().contains(a))
                    .map(|g| engine.reach(g, t))
                    .find(|d| d.yes());
                if let Some(d) = witness {
                    return d;
                }
            }
            // the identity instance refutes: t[a := a] = t must be a member
            match member_norm(engine, t, inner) {
                Decision3::No => Decision3::No,
                Decision3::Yes { .. } | Decision3::Unknown { .. } => {
                    Decision3::Unknown { pruned: false }
                }
            }
        }
        PointExpr::PermAct(pi, inner) => {
            let moved = t.act(&pi.invert());
            member_norm(engine, &moved, inner)
        }
    }
}

/// Three-valued inclusion of the denotation of `e1` in that of `e2`.
///
/// When `e1` is canonical, generator membership in `e2` is sufficient and
/// necessary (up-closure). Otherwise sound structural certificates are tried,
/// then the probe terms: any probe inside `e1` and certifiedly outside `e2`
/// refutes the inclusion.
pub fn subset(
    engine: &mut Engine,
    e1: &PointExpr,
    e2: &PointExpr,
    probes: &[Term],
) -> Decision3 {
    let n1 = normalize(e1);
    let n2 = normalize(e2);
    if n1 == n2 {
        return Decision3::Yes {
            depth: 0,
            path: Vec::new(),
        };
    }
    let mut pruned = false;
    if let Some(g1) = n1.as_canonical() {
        let verdicts: Vec<Decision3> = g1.iter().map(|g| member_norm(engine, g, &n2)).collect();
        match and3(verdicts) {
            d @ Decision3::Yes { .. } => return d,
            Decision3::No => return Decision3::No,
            Decision3::Unknown { pruned: p } => pruned |= p,
        }
    }
    // p is included in forall a. p
    if let PointExpr::Forall(_, body) = &n2 {
        if normalize(body) == n1 {
            return Decision3::Yes {
                depth: 0,
                path: Vec::new(),
            };
        }
    }
    // exists a. p is included in p
    if let PointExpr::Exists(_, body) = &n1 {
        if normalize(body) == n2 {
            return Decision3::Yes {
                depth: 0,
                path: Vec::new(),
            };
        }
    }
    // p is included in meet(p, q): meet is set union
    if let PointExpr::Meet(x, y) = &n2 {
        if normalize(x) == n1 || normalize(y) == n1 {
            return Decision3::Yes {
                depth: 0,
                path: Vec::new(),
            };
        }
    }
    for probe in probes {
        let in1 = member_norm(engine, probe, &n1);
        if in1.yes() {
            let in2 = member_norm(engine, probe, &n2);
            if in2.no() {
                return Decision3::No;
            }
            if in2.unknown() {
                pruned = true;
            }
        }
    }
    Decision3::Unknown { pruned }
}

// ---------------------------------------------------------------------------
// Parsing the expression syntax

/// Parses `up(TERM)`, `meet(E,E)`, `app(E,E)`, `ppa(TERM,E)`, `forall a. E`,
/// `exists a. E`, `nu a. E`, `subst(E,a,TERM)`, `amgis(E,TERM,a)`, and
/// `perm((a b)(c d),E)`.
pub fn parse_point_expr(src: &str) -> Result<PointExpr, ParseError> {
    let mut p = ExprParser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(ParseError {
            position: p.pos,
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.as_bytes().get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn keyword(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src.as_bytes()[self.pos].is_ascii_lowercase()
                || self.src.as_bytes()[self.pos].is_ascii_digit())
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    /// Consumes characters up to the matching delimiter at depth zero.
    fn until_balanced(&mut self, stop: &[u8]) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut depth = 0usize;
        while self.pos < self.src.len() {
            let b = bytes[self.pos];
            if b == b'(' {
                depth += 1;
            } else if b == b')' {
                if depth == 0 && stop.contains(&b) {
                    return Ok(&self.src[start..self.pos]);
                }
                if depth == 0 {
                    return self.err("unbalanced ')'");
                }
                depth -= 1;
            } else if depth == 0 && stop.contains(&b) {
                return Ok(&self.src[start..self.pos]);
            }
            self.pos += 1;
        }
        self.err("unterminated argument")
    }

    fn term_arg(&mut self, stop: &[u8]) -> Result<Term, ParseError> {
        let start = self.pos;
        let text = self.until_balanced(stop)?;
        parse(text).map_err(|e| ParseError {
            position: start + e.position,
            message: e.message,
        })
    }

    fn atom_arg(&mut self, stop: &[u8]) -> Result<Atom, ParseError> {
        let text = self.until_balanced(stop)?.trim().to_string();
        match Atom::parse(&text) {
            Some(a) => Ok(a),
            None => self.err(format!("'{text}' is not an atom")),
        }
    }

    fn binder(&mut self) -> Result<Atom, ParseError> {
        let name = self.keyword();
        match Atom::parse(&name) {
            Some(a) => Ok(a),
            None => self.err(format!("'{name}' is not an atom")),
        }
    }

    /// A product of cycles, e.g. `(a b)` or `(a b c)(d e)`.
    fn perm(&mut self) -> Result<Perm, ParseError> {
        let mut acc = Perm::identity();
        loop {
            self.skip_ws();
            if self.src.as_bytes().get(self.pos) != Some(&b'(') {
                break;
            }
            self.eat(b'(')?;
            let mut cycle = vec![self.binder()?];
            loop {
                self.skip_ws();
                if self.src.as_bytes().get(self.pos) == Some(&b')') {
                    break;
                }
                cycle.push(self.binder()?);
            }
            self.eat(b')')?;
            if cycle.len() < 2 {
                return self.err("a cycle needs at least two atoms");
            }
            let mut map = std::collections::BTreeMap::new();
            for w in cycle.windows(2) {
                map.insert(w[0], w[1]);
            }
            map.insert(*cycle.last().unwrap(), cycle[0]);
            match Perm::from_map(map) {
                Some(p) => acc = acc.compose(&p),
                None => return self.err("cycle repeats an atom"),
            }
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<PointExpr, ParseError> {
        let kw = self.keyword();
        match kw.as_str() {
            "up" => {
                self.eat(b'(')?;
                let t = self.term_arg(&[b')'])?;
                self.eat(b')')?;
                Ok(PointExpr::up(t))
            }
            "meet" | "app" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                Ok(if kw == "meet" {
                    PointExpr::meet(a, b)
                } else {
                    PointExpr::app(a, b)
                })
            }
            "ppa" => {
                self.eat(b'(')?;
                let h = self.term_arg(&[b','])?;
                self.eat(b',')?;
                let e = self.expr()?;
                self.eat(b')')?;
                Ok(PointExpr::ppa(h, e))
            }
            "forall" | "exists" | "nu" => {
                let a = self.binder()?;
                self.eat(b'.')?;
                let e = self.expr()?;
                Ok(match kw.as_str() {
                    "forall" => PointExpr::forall(a, e),
                    "exists" => PointExpr::exists(a, e),
                    _ => PointExpr::nu(a, e),
                })
            }
            "subst" => {
                self.eat(b'(')?;
                let e = self.expr()?;
                self.eat(b',')?;
                let a = self.atom_arg(&[b','])?;
                self.eat(b',')?;
                let u = self.term_arg(&[b')'])?;
                self.eat(b')')?;
                Ok(PointExpr::subst(e, a, u))
            }
            "amgis" => {
                self.eat(b'(')?;
                let e = self.expr()?;
                self.eat(b',')?;
                let u = self.term_arg(&[b','])?;
                self.eat(b',')?;
                let a = self.atom_arg(&[b')'])?;
                self.eat(b')')?;
                Ok(PointExpr::amgis(e, u, a))
            }
            "perm" => {
                self.eat(b'(')?;
                let pi = self.perm()?;
                self.eat(b',')?;
                let e = self.expr()?;
                self.eat(b')')?;
                Ok(PointExpr::perm(pi, e))
            }
            other => self.err(format!("unknown point expression '{other}'")),
        }
    }
}

// ---------------------------------------------------------------------------
// The point-law suite

/// A deterministic corpus of seed terms for the law suites: a curated base of
/// small shapes plus seeded random terms, capped in size.
pub fn law_corpus(seed: u64, size: usize) -> Vec<Term> {
    let curated = [
        "b",
        "c",
        "a",
        "(\\a.a) b",
        "\\a.a",
        "a b",
        "\\a.a b",
        "(\\a.\\b.a) c",
        "\\a.\\b.a b",
        "b c",
        "(\\a.a a) c",
        "\\b.c",
    ];
    let mut out: Vec<Term> = Vec::new();
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    for src in curated {
        let t = parse(src).expect("curated corpus term");
        if seen.insert(t.clone()) {
            out.push(t);
        }
        if out.len() == size {
            return out;
        }
    }
    let mut gen = crate::terms::TermGen::new(seed);
    while out.len() < size {
        let t = gen.term(3);
        if t.size() <= 12 && seen.insert(t.clone()) {
            out.push(t);
        }
    }
    out
}

/// Which law families to run; the CLI exposes them as separate suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawFamily {
    /// Substitution/amgis interaction and the canonical-form commutations.
    Points,
    /// The universal-quantifier axioms checked on points.
    ForallAxioms,
    /// The existential quantifier and quantifier/application inclusions.
    Appendix,
}

/// Instantiates the point laws over a corpus of seed terms, with membership
/// and inclusion decided three-valuedly. Any refutation is a build failure;
/// undecided instances are counted.
pub fn check_point_laws(
    engine: &mut Engine,
    corpus: &[Term],
    families: &[LawFamily],
    suite: &str,
) -> Report {
    let mut report = Report::new();
    if !engine.theory.conforming() {
        report.push(
            suite,
            "theory-flag",
            Verdict::Pass,
            None,
            format!("theory: {}", engine.theory.describe()),
        );
    }

    let atoms: Vec<Atom> = (0..3).map(Atom).collect();
    let mut probe_set: BTreeSet<Term> = corpus.iter().cloned().collect();
    for s in corpus {
        collect_subterms_into(s, &mut probe_set);
    }
    let probes: Vec<Term> = probe_set.into_iter().filter(|t| t.size() <= 20).collect();

    let exprs: Vec<PointExpr> = {
        let mut es: Vec<PointExpr> = corpus.iter().map(|s| PointExpr::up(s.clone())).collect();
        for w in corpus.windows(2) {
            es.push(PointExpr::meet(
                PointExpr::up(w[0].clone()),
                PointExpr::up(w[1].clone()),
            ));
        }
        es
    };

    let fresh_for = |things: &[&BTreeSet<Atom>]| -> Atom {
        let mut avoid = BTreeSet::new();
        for s in things {
            avoid.extend(s.iter().copied());
        }
        fresh_atom(&avoid)
    };

    let emit = |report: &mut Report, law: &str, idx: usize, d: &Decision3, detail: String| {
        let verdict = match d {
            Decision3::Yes { .. } => Verdict::Pass,
            Decision3::No => Verdict::Refuted,
            Decision3::Unknown { .. } => Verdict::Undecided,
        };
        report.push(suite, format!("{law}#{idx:03}"), verdict, d.depth(), detail);
    };

    // equivalence of two expressions, reported three-valuedly
    fn equiv(
        engine: &mut Engine,
        lhs: &PointExpr,
        rhs: &PointExpr,
        probes: &[Term],
    ) -> Decision3 {
        let fwd = subset(engine, lhs, rhs, probes);
        if fwd.no() {
            return Decision3::No;
        }
        let bwd = subset(engine, rhs, lhs, probes);
        and3([fwd, bwd])
    }

    for family in families {
        match family {
            LawFamily::Points => {
                for (i, s) in corpus.iter().enumerate() {
                    // application of principal points is principal
                    let t = &corpus[(i + 1) % corpus.len()];
                    let lhs = normalize(&PointExpr::app(
                        PointExpr::up(s.clone()),
                        PointExpr::up(t.clone()),
                    ));
                    let expected =
                        PointExpr::Canonical([Term::app(s.clone(), t.clone())].into_iter().collect());
                    let d = if lhs == expected {
                        Decision3::Yes { depth: 0, path: vec![] }
                    } else {
                        Decision3::No
                    };
                    emit(&mut report, "app-principal", i, &d, format!("s={s} t={t}"));

                    // forall a. ppa(a, up(s)) = up(\a.s)
                    let a = atoms[i % atoms.len()];
                    let lhs = normalize(&PointExpr::forall(
                        a,
                        PointExpr::ppa(Term::var(a), PointExpr::up(s.clone())),
                    ));
                    let expected = PointExpr::Canonical(
                        [Term::lam(a, s.clone())].into_iter().collect(),
                    );
                    let d = if lhs == expected {
                        Decision3::Yes { depth: 0, path: vec![] }
                    } else {
                        Decision3::No
                    };
                    emit(&mut report, "forall-ppa-lam", i, &d, format!("a={a} s={s}"));

                    // substitution on a principal point is term substitution
                    let u = &corpus[(i + 2) % corpus.len()];
                    let lhs = normalize(&PointExpr::subst(PointExpr::up(s.clone()), a, u.clone()));
                    let expected =
                        PointExpr::Canonical([subst(s, a, u)].into_iter().collect());
                    let d = if lhs == expected {
                        Decision3::Yes { depth: 0, path: vec![] }
                    } else {
                        Decision3::No
                    };
                    emit(&mut report, "subst-principal", i, &d, format!("s={s} a={a} u={u}"));
                }

                for (i, e) in exprs.iter().enumerate() {
                    let s_supp = e.support();
                    let u = &corpus[(i + 1) % corpus.len()];
                    let a = atoms[i % atoms.len()];

                    // a # u: subst(e, a, u) coincides with nu a.(subst(e, a, u))
                    if !u.free_atoms().contains(&a) {
                        let inner = PointExpr::subst(e.clone(), a, u.clone());
                        let lhs = inner.clone();
                        let rhs = PointExpr::nu(a, inner);
                        let d = equiv(engine, &lhs, &rhs, &probes);
                        emit(&mut report, "subst-nu-char", i, &d, format!("a={a} u={u}"));

                        // the substituted point is fresh for the atom
                        let n = normalize(&PointExpr::subst(e.clone(), a, u.clone()));
                        let d = if n.support().contains(&a) {
                            Decision3::No
                        } else {
                            Decision3::Yes { depth: 0, path: vec![] }
                        };
                        emit(&mut report, "subst-freshens", i, &d, format!("a={a} u={u}"));
                    }

                    // substitution distributes over meet and application
                    let e2 = &exprs[(i + 1) % exprs.len()];
                    let lhs = PointExpr::subst(
                        PointExpr::meet(e.clone(), e2.clone()),
                        a,
                        u.clone(),
                    );
                    let rhs = PointExpr::meet(
                        PointExpr::subst(e.clone(), a, u.clone()),
                        PointExpr::subst(e2.clone(), a, u.clone()),
                    );
                    let d = equiv(engine, &lhs, &rhs, &probes);
                    emit(&mut report, "subst-meet", i, &d, format!("a={a} u={u}"));

                    let lhs = PointExpr::subst(
                        PointExpr::app(e.clone(), e2.clone()),
                        a,
                        u.clone(),
                    );
                    let rhs = PointExpr::app(
                        PointExpr::subst(e.clone(), a, u.clone()),
                        PointExpr::subst(e2.clone(), a, u.clone()),
                    );
                    let d = equiv(engine, &lhs, &rhs, &probes);
                    emit(&mut report, "subst-app", i, &d, format!("a={a} u={u}"));

                    // amgis axiom: two commuting amgis actions
                    let b = fresh_for(&[&s_supp, &u.free_atoms(), &[a].into_iter().collect()]);
                    let v = Term::var(fresh_for(&[
                        &s_supp,
                        &u.free_atoms(),
                        &[a, b].into_iter().collect(),
                    ]));
                    // a # v by construction
                    let lhs = PointExpr::amgis(
                        PointExpr::amgis(e.clone(), v.clone(), b),
                        u.clone(),
                        a,
                    );
                    let rhs = PointExpr::amgis(
                        PointExpr::amgis(e.clone(), subst(u, b, &v), a),
                        v.clone(),
                        b,
                    );
                    let mut agree_all = Vec::new();
                    for probe in probes.iter().take(12) {
                        let dl = member(engine, probe, &lhs);
                        let dr = member(engine, probe, &rhs);
                        match (&dl, &dr) {
                            (Decision3::Yes { .. }, Decision3::No)
                            | (Decision3::No, Decision3::Yes { .. }) => {
                                agree_all.push(Decision3::No);
                            }
                            (Decision3::Unknown { .. }, _) | (_, Decision3::Unknown { .. }) => {
                                agree_all.push(Decision3::Unknown { pruned: false });
                            }
                            _ => agree_all.push(Decision3::Yes { depth: 0, path: vec![] }),
                        }
                    }
                    let d = and3(agree_all);
                    emit(&mut report, "amgis-amgis", i, &d, format!("a={a} b={b} u={u} v={v}"));

                    // sigma-freshness: members of e stay members after
                    // substituting a genuinely fresh atom
                    let c = fresh_for(&[&s_supp]);
                    let mut fresh_checks = Vec::new();
                    for probe in probes.iter().take(8) {
                        if member(engine, probe, e).yes() {
                            let moved = subst(probe, c, u);
                            let d = member(engine, &moved, e);
                            fresh_checks.push(d);
                        }
                    }
                    if !fresh_checks.is_empty() {
                        let d = and3(fresh_checks);
                        emit(&mut report, "sigma-fresh-members", i, &d, format!("c={c} u={u}"));
                    }
                }

                // ppa distributivity under substitution, dual-route:
                // membership in subst(ppa(b, e), a, u) via the nu route must
                // match the ppa rule applied to substituted generators
                for (i, e) in exprs.iter().enumerate() {
                    let Some(gens) = normalize(e).as_canonical().cloned() else {
                        continue;
                    };
                    if gens.is_empty() {
                        continue;
                    }
                    let supp = e.support();
                    let a = atoms[i % atoms.len()];
                    let b = fresh_for(&[&supp, &[a].into_iter().collect()]);
                    let u = &corpus[(i + 1) % corpus.len()];
                    if u.free_atoms().contains(&b) || u.free_atoms().contains(&a) {
                        continue;
                    }
                    let rhs = PointExpr::ppa(
                        Term::var(b),
                        PointExpr::subst(e.clone(), a, u.clone()),
                    );
                    let mut avoid = supp.clone();
                    avoid.extend(u.free_atoms());
                    avoid.insert(a);
                    avoid.insert(b);
                    let c = fresh_atom(&avoid);
                    let mut verdicts = Vec::new();
                    for w in probes.iter().take(8) {
                        // left route: w in (ppa(b,e))[a <= u] iff, unpacking the
                        // nu characterisation, (c a)·w is a reduct of some
                        // member of ppa(b, e) substituted
                        let target = w.act(&Perm::swap(c, a));
                        let mut lhs_yes = false;
                        for cand in probes.iter().take(8) {
                            let in_ppa = and3(
                                gens.iter()
                                    .map(|g| {
                                        engine.reach(&Term::app(cand.clone(), Term::var(b)), g)
                                    })
                                    .collect::<Vec<_>>(),
                            );
                            if in_ppa.yes()
                                && engine.reach(&subst(cand, a, u), &target).yes()
                            {
                                lhs_yes = true;
                                break;
                            }
                        }
                        let rhs_v = member(engine, w, &rhs);
                        match (&lhs_yes, &rhs_v) {
                            (true, Decision3::No) => verdicts.push(Decision3::No),
                            (true, Decision3::Yes { .. }) => {
                                verdicts.push(Decision3::Yes { depth: 0, path: vec![] })
                            }
                            _ => verdicts.push(Decision3::Unknown { pruned: false }),
                        }
                    }
                    // undecided probes are fine; a refutation is not
                    let d = if verdicts.iter().any(|v| v.no()) {
                        Decision3::No
                    } else if verdicts.iter().any(|v| v.yes()) {
                        Decision3::Yes { depth: 0, path: vec![] }
                    } else {
                        Decision3::Unknown { pruned: false }
                    };
                    emit(&mut report, "subst-ppa-distrib", i, &d, format!("a={a} b={b} u={u}"));
                }
            }
            LawFamily::ForallAxioms => {
                for (i, e) in exprs.iter().enumerate() {
                    let supp = e.support();
                    let a = atoms[i % atoms.len()];
                    let b = fresh_for(&[&supp, &[a].into_iter().collect()]);

                    // alpha: forall b. (b a)·e = forall a. e when b # e
                    let lhs = PointExpr::forall(
                        b,
                        PointExpr::perm(Perm::swap(b, a), e.clone()),
                    );
                    let rhs = PointExpr::forall(a, e.clone());
                    let d = equiv(engine, &lhs, &rhs, &probes);
                    emit(&mut report, "forall-alpha", i, &d, format!("a={a} b={b}"));

                    // forall distributes over meet
                    let e2 = &exprs[(i + 1) % exprs.len()];
                    let lhs = PointExpr::forall(a, PointExpr::meet(e.clone(), e2.clone()));
                    let rhs = PointExpr::meet(
                        PointExpr::forall(a, e.clone()),
                        PointExpr::forall(a, e2.clone()),
                    );
                    let d = equiv(engine, &lhs, &rhs, &probes);
                    emit(&mut report, "forall-meet", i, &d, format!("a={a}"));

                    // point-order dual of `forall a. x <= x`: e is included in forall a. e
                    let d = subset(engine, e, &PointExpr::forall(a, e.clone()), &probes);
                    emit(&mut report, "forall-extends", i, &d, format!("a={a}"));
                }
            }
            LawFamily::Appendix => {
                for (i, e) in exprs.iter().enumerate() {
                    let supp = e.support();
                    let a = atoms[i % atoms.len()];

                    // exists a. e is included in e
                    let d = subset(engine, &PointExpr::exists(a, e.clone()), e, &probes);
                    emit(&mut report, "exists-shrinks", i, &d, format!("a={a}"));

                    // members of exists a. e survive substitution at a
                    let ex = PointExpr::exists(a, e.clone());
                    let u = &corpus[(i + 1) % corpus.len()];
                    let mut checks = Vec::new();
                    for probe in probes.iter().take(8) {
                        if member(engine, probe, &ex).yes() {
                            let moved = subst(probe, a, u);
                            checks.push(member(engine, &moved, &ex));
                        }
                    }
                    if !checks.is_empty() {
                        let d = and3(checks);
                        emit(&mut report, "exists-sigma-fresh", i, &d, format!("a={a} u={u}"));
                    }

                    // a # q: forall a.(p·q) is included in (forall a. p)·q
                    let e2 = &exprs[(i + 1) % exprs.len()];
                    let q_supp = e2.support();
                    if !q_supp.contains(&a) && supp.contains(&a) {
                        let lhs = PointExpr::forall(a, PointExpr::app(e.clone(), e2.clone()));
                        let rhs = PointExpr::app(
                            PointExpr::forall(a, e.clone()),
                            e2.clone(),
                        );
                        let d = subset(engine, &lhs, &rhs, &probes);
                        emit(&mut report, "forall-app", i, &d, format!("a={a}"));
                    }

                    // a # q: (exists a. p)·q is included in exists a.(p·q)
                    if !q_supp.contains(&a) {
                        let lhs = PointExpr::app(
                            PointExpr::exists(a, e.clone()),
                            e2.clone(),
                        );
                        let rhs = PointExpr::exists(a, PointExpr::app(e.clone(), e2.clone()));
                        let d = subset(engine, &lhs, &rhs, &probes);
                        emit(&mut report, "exists-app", i, &d, format!("a={a}"));
                    }
                }
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
    fn up_membership() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let p = Point::up(theory, t("b"));
        assert_eq!(member(&mut eng, &t("b"), &p.to_expr()).depth(), Some(0));
        let q = PointExpr::up(t("(\\a.a) b"));
        assert_eq!(member(&mut eng, &t("b"), &q).depth(), Some(1));
    }

    #[test]
    fn point_ops_examples() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let p = Point::up(Rc::clone(&theory), t("b"));
        let q = Point::up(Rc::clone(&theory), t("c"));
        let meet = p.meet(&q).unwrap();
        // membership in a meet is disjunction
        assert!(member(&mut eng, &t("b"), &meet.to_expr()).yes());
        assert!(member(&mut eng, &t("c"), &meet.to_expr()).yes());
        // meet with the empty point is identity
        let empty = Point::empty(Rc::clone(&theory));
        assert_eq!(p.meet(&empty).unwrap(), p);
        // application of principal points
        let app = p.papp(&q).unwrap();
        assert_eq!(app, Point::up(Rc::clone(&theory), t("b c")));
        assert!(p.papp(&empty).unwrap().is_empty());
        // idempotent meet after pruning
        let doubled = p.meet(&p).unwrap();
        assert_eq!(doubled.prune(&mut eng), p);
    }

    #[test]
    fn pruning_drops_reachable_generators() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let p = Point::up(Rc::clone(&theory), t("(\\a.a) b"))
            .meet(&Point::up(Rc::clone(&theory), t("b")))
            .unwrap();
        let pruned = p.prune(&mut eng);
        assert_eq!(pruned, Point::up(theory, t("(\\a.a) b")));
    }

    #[test]
    fn psubst_examples() {
        let mut eng = engine();
        let theory = Rc::clone(&eng.theory);
        let a = at("a");
        let u = t("c d");
        // substitution into the principal point of a variable
        let p = Point::up(Rc::clone(&theory), t("a"));
        assert_eq!(p.psubst(a, &u), Point::up(Rc::clone(&theory), t("c d")));
        // a fresh for p: no-op
        let p = Point::up(Rc::clone(&theory), t("b"));
        assert_eq!(p.psubst(a, &u), p);
        // substituting a fresh variable is a swap
        let p = Point::up(Rc::clone(&theory), t("a c"));
        let b = at("b");
        assert_eq!(p.psubst(a, &Term::var(b)), p.act(&Perm::swap(b, a)));
        let _ = &mut eng;
    }

    #[test]
    fn normalize_examples() {
        // app(up(s), up(t)) = up(s t)
        let n = normalize(&PointExpr::app(PointExpr::up(t("a")), PointExpr::up(t("b"))));
        assert_eq!(n, PointExpr::Canonical([t("a b")].into_iter().collect()));
        // forall a. ppa(a, up(s)) = up(\a.s)
        let n = normalize(&PointExpr::forall(
            at("a"),
            PointExpr::ppa(t("a"), PointExpr::up(t("a b"))),
        ));
        assert_eq!(n, PointExpr::Canonical([t("\\a.a b")].into_iter().collect()));
        // subst(up(s), a, u) = up(s[a := u])
        let n = normalize(&PointExpr::subst(PointExpr::up(t("a c")), at("a"), t("b")));
        assert_eq!(n, PointExpr::Canonical([t("b c")].into_iter().collect()));
        // fresh substitution vanishes on a stuck expression
        let stuck = PointExpr::forall(at("a"), PointExpr::up(t("a b")));
        let n = normalize(&PointExpr::subst(stuck.clone(), at("c"), t("d")));
        assert_eq!(n, normalize(&stuck));
        // permutations push to the leaves
        let n = normalize(&PointExpr::perm(
            Perm::swap(at("a"), at("b")),
            PointExpr::up(t("a")),
        ));
        assert_eq!(n, PointExpr::Canonical([t("b")].into_iter().collect()));
    }

    #[test]
    fn member_constructor_cases() {
        let mut eng = engine();
        // lambda members its own forall-ppa point
        let e = PointExpr::forall(at("a"), PointExpr::ppa(t("a"), PointExpr::up(t("a b"))));
        assert!(member(&mut eng, &t("\\a.a b"), &e).yes());

        // ppa membership is reachability of the application
        let e = PointExpr::ppa(t("b"), PointExpr::up(t("b")));
        // s' = \a.a: (\a.a) b -> b
        assert!(member(&mut eng, &t("\\a.a"), &e).yes());

        // nu with a fresh atom on both sides is plain membership
        let e = PointExpr::nu(at("c"), PointExpr::up(t("(\\a.a) b")));
        assert!(member(&mut eng, &t("b"), &e).yes());

        // amgis membership substitutes into the candidate
        let e = PointExpr::amgis(PointExpr::up(t("b c")), t("c"), at("a"));
        assert!(member(&mut eng, &t("b a"), &e).yes());

        // permutation action moves the candidate
        let e = PointExpr::perm(Perm::swap(at("b"), at("c")), PointExpr::up(t("b")));
        assert!(member(&mut eng, &t("c"), &e).yes());

        // the adjoint of the empty point is empty
        let e = PointExpr::ppa(t("b"), PointExpr::Canonical(BTreeSet::new()));
        assert!(member(&mut eng, &t("b"), &e).no());
    }

    #[test]
    fn forall_witness_route() {
        let mut eng = engine();
        // b is in forall a. up(a): pick the instance u = b
        let e = PointExpr::forall(at("a"), PointExpr::up(t("a")));
        assert!(member(&mut eng, &t("b"), &e).yes());
        // and the identity instance picks up a itself
        assert!(member(&mut eng, &t("a"), &e).yes());
    }

    #[test]
    fn exists_certificates() {
        let mut eng = engine();
        // generator c is fresh for a, so exists a keeps its up-set
        let e = PointExpr::exists(
            at("a"),
            PointExpr::meet(PointExpr::up(t("c")), PointExpr::up(t("a b"))),
        );
        assert!(member(&mut eng, &t("c"), &e).yes());
        // candidates certifiedly outside the body are outside the exists
        let beta_only = Engine::new(Rc::new(Theory::beta_only()), Budget::new(4, 30, 400));
        let mut eng2 = beta_only.unwrap();
        let e = PointExpr::exists(at("a"), PointExpr::up(t("c")));
        assert!(member(&mut eng2, &t("d"), &e).no());
    }

    #[test]
    fn subset_examples() {
        let mut eng = engine();
        let probes = vec![t("b"), t("c"), t("(\\a.a) b")];
        // up(t) included in up(s) iff s reaches t
        let d = subset(
            &mut eng,
            &PointExpr::up(t("b")),
            &PointExpr::up(t("(\\a.a) b")),
            &probes,
        );
        assert!(d.yes());
        // p included in meet(p, q)
        let p = PointExpr::up(t("b"));
        let q = PointExpr::up(t("c"));
        let d = subset(&mut eng, &p, &PointExpr::meet(p.clone(), q), &probes);
        assert!(d.yes());
        // p included in forall a. p
        let e = PointExpr::forall(at("a"), PointExpr::up(t("a b")));
        let d = subset(&mut eng, &PointExpr::up(t("a b")), &e, &probes);
        assert!(d.yes());
        // refutation via certified non-membership under beta only
        let mut eng2 =
            Engine::new(Rc::new(Theory::beta_only()), Budget::new(4, 30, 400)).unwrap();
        let d = subset(
            &mut eng2,
            &PointExpr::up(t("b")),
            &PointExpr::up(t("c")),
            &probes,
        );
        assert!(d.no());
    }

    #[test]
    fn parse_point_expr_round_trip() {
        for src in [
            "up(b)",
            "up((\\a.a) b)",
            "meet(up(a),up(b))",
            "app(up(a),up(b))",
            "ppa(b,up(c))",
            "forall a. up(a b)",
            "exists a. meet(up(a),up(b))",
            "nu a. up(a)",
            "subst(up(a),a,b c)",
            "amgis(up(b),c,a)",
            "perm((a b),up(a))",
            "perm((a b)(b c),up(a))",
        ] {
            let e = parse_point_expr(src).unwrap_or_else(|err| panic!("{src}: {err}"));
            let printed = e.to_string();
            let reparsed = parse_point_expr(&printed)
                .unwrap_or_else(|err| panic!("reparse {printed}: {err}"));
            assert_eq!(e, reparsed, "print/parse for {src}");
        }
        assert!(parse_point_expr("up(").is_err());
        assert!(parse_point_expr("frob(a)").is_err());
    }

    #[test]
    fn law_suite_smoke() {
        let mut eng = engine();
        let corpus: Vec<Term> = ["b", "c", "(\\a.a) b", "\\a.a", "a b"]
            .iter()
            .map(|s| t(s))
            .collect();
        let report = check_point_laws(
            &mut eng,
            &corpus,
            &[LawFamily::Points, LawFamily::ForallAxioms, LawFamily::Appendix],
            "points",
        );
        assert_eq!(report.refuted(), 0, "{report}");
        assert!(report.passed() > 0);
    }
}
