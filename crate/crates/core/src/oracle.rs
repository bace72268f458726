//! Exact brute-force semantics inside a finite reduction-closed universe.
//!
//! A universe is a finite carrier of terms closed under one-step reduction.
//! In a closed universe the up-closed subsets of the carrier are exactly the
//! finitely-generated points whose members all lie in the carrier, so the
//! definitional operations can be computed exhaustively and compared against
//! the symbolic engine. Queries whose defining instances leave the carrier
//! are rejected (or the affected candidates reported as undefined) rather
//! than silently approximated.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::atoms::{fresh_atom, Atom, Perm};
use crate::nominal::Nominal;
use crate::points::{member, normalize, PointExpr};
use crate::report::{Report, Verdict};
use crate::terms::{subst, Term};
use crate::theory::{successors, Budget, Decision3, Engine, Theory};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("universe closure incomplete: {0} frontier terms remained")]
    NotClosed(usize),
    #[error("carrier exceeds cap: {0} > {1}")]
    CarrierCap(usize, usize),
    #[error("term is outside the universe: {0}")]
    OutOfUniverse(Term),
    #[error("subset enumeration over {0} elements exceeds the cap")]
    EnumerationCap(usize),
}

/// Caps for universe construction.
#[derive(Clone, Copy, Debug)]
pub struct UniverseCaps {
    pub max_terms: usize,
    pub max_term_size: usize,
}

impl Default for UniverseCaps {
    fn default() -> UniverseCaps {
        UniverseCaps {
            max_terms: 64,
            max_term_size: 40,
        }
    }
}

/// A finite approximation of the phrase world: a carrier of terms together
/// with the one-step successor graph restricted to it.
pub struct Universe {
    pub theory: Rc<Theory>,
    carrier: Vec<Term>,
    index: HashMap<Term, usize>,
    /// reach[i] = bitmask of carrier terms reachable from carrier[i]
    reach: Vec<u64>,
    pub closed: bool,
}

/// An exactly-computed subset of the carrier, with the candidates whose
/// verdict the universe cannot decide marked as undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactSet {
    pub members: u64,
    pub undefined: u64,
}

impl ExactSet {
    pub fn total(members: u64) -> ExactSet {
        ExactSet {
            members,
            undefined: 0,
        }
    }
}

/// Breadth-first closure of the seeds under one-step reduction, up to caps.
/// The universe is closed when no successor was dropped.
pub fn build_universe(
    theory: Rc<Theory>,
    seeds: &[Term],
    caps: UniverseCaps,
    require_closed: bool,
) -> Result<Universe, OracleError> {
    let budget = Budget::new(1, caps.max_term_size, usize::MAX >> 1);
    let mut carrier: Vec<Term> = Vec::new();
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut queue: Vec<Term> = Vec::new();
    let mut closed = true;
    let mut overflow = 0usize;

    let push = |t: Term,
                    carrier: &mut Vec<Term>,
                    index: &mut HashMap<Term, usize>,
                    queue: &mut Vec<Term>| {
        if !index.contains_key(&t) {
            index.insert(t.clone(), carrier.len());
            carrier.push(t.clone());
            queue.push(t);
        }
    };

    for s in seeds {
        push(s.clone(), &mut carrier, &mut index, &mut queue);
    }
    while let Some(t) = queue.pop() {
        if carrier.len() > caps.max_terms {
            closed = false;
            overflow = queue.len() + 1;
            break;
        }
        let (succ, pruned) = successors(&theory, &t, &budget);
        if pruned {
            closed = false;
        }
        for sc in succ {
            if carrier.len() >= caps.max_terms && !index.contains_key(&sc) {
                closed = false;
                overflow += 1;
                continue;
            }
            push(sc, &mut carrier, &mut index, &mut queue);
        }
    }
    if require_closed && !closed {
        return Err(OracleError::NotClosed(overflow));
    }
    if carrier.len() > 64 {
        return Err(OracleError::CarrierCap(carrier.len(), 64));
    }

    // transitive-reflexive reachability over the restricted graph
    let n = carrier.len();
    let mut onestep: Vec<u64> = vec![0; n];
    for (i, t) in carrier.iter().enumerate() {
        let (succ, _) = successors(&theory, t, &budget);
        for sc in succ {
            if let Some(&j) = index.get(&sc) {
                onestep[i] |= 1 << j;
            }
        }
    }
    let mut reach: Vec<u64> = (0..n).map(|i| (1u64 << i) | onestep[i]).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut acc = reach[i];
            let mut rest = reach[i];
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= reach[j];
            }
            if acc != reach[i] {
                reach[i] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    Ok(Universe {
        theory,
        carrier,
        index,
        reach,
        closed,
    })
}

impl Universe {
    pub fn carrier(&self) -> &[Term] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index.contains_key(t)
    }

    fn idx(&self, t: &Term) -> Result<usize, OracleError> {
        self.index
            .get(t)
            .copied()
            .ok_or_else(|| OracleError::OutOfUniverse(t.clone()))
    }

    fn full_mask(&self) -> u64 {
        if self.carrier.is_empty() {
            0
        } else {
            (1u64 << self.carrier.len()) - 1
        }
    }

    fn is_up_closed(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.reach[i] & !mask != 0 {
                return false;
            }
        }
        true
    }

    fn support_of_mask(&self, mask: u64) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            s.extend(self.carrier[i].free_atoms());
        }
        s
    }

    /// All up-closed subsets of the carrier; capped.
    fn up_closed_subsets(&self) -> Result<Vec<u64>, OracleError> {
        let n = self.carrier.len();
        if n > 20 {
            return Err(OracleError::EnumerationCap(n));
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            if self.is_up_closed(mask) {
                out.push(mask);
            }
        }
        Ok(out)
    }

    /// The principal point of an in-universe term.
    pub fn exact_up(&self, s: &Term) -> Result<u64, OracleError> {
        Ok(self.reach[self.idx(s)?])
    }

    /// The point of a canonical generator set.
    pub fn exact_canonical(&self, gens: &BTreeSet<Term>) -> Result<u64, OracleError> {
        let mut mask = 0u64;
        for g in gens {
            mask |= self.exact_up(g)?;
        }
        Ok(mask)
    }

    /// The universal quantifier by its definitional intersection: all
    /// in-universe points that contain `p` and are fresh for `a`.
    pub fn exact_forall(&self, a: Atom, p: u64) -> Result<u64, OracleError> {
        let mut acc = self.full_mask();
        for r in self.up_closed_subsets()? {
            if p & !r == 0 && !self.support_of_mask(r).contains(&a) {
                acc &= r;
            }
        }
        Ok(acc)
    }

    /// The union of the substitution instances of `p` over in-universe
    /// substituends (skipping instances that leave the carrier). Contained in
    /// [`Universe::exact_forall`] whenever both are defined.
    pub fn exact_forall_via_union(&self, a: Atom, p: u64) -> u64 {
        let mut acc = p;
        let mut subs: Vec<Term> = self.carrier.clone();
        subs.push(Term::var(a));
        for u in &subs {
            let mut rest = p;
            let mut inst = 0u64;
            let mut all_in = true;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let moved = subst(&self.carrier[i], a, u);
                match self.index.get(&moved) {
                    Some(&j) => inst |= self.reach[j],
                    None => all_in = false,
                }
            }
            if all_in {
                acc |= inst;
            }
        }
        acc
    }

    /// The existential quantifier: members whose in-carrier substitution
    /// instances all stay inside `p`.
    pub fn exact_exists(&self, a: Atom, p: u64) -> u64 {
        let mut out = 0u64;
        for (i, s) in self.carrier.iter().enumerate() {
            let mut ok = true;
            for u in self.carrier.iter().chain(std::iter::once(&Term::var(a))) {
                let inst = subst(s, a, u);
                if let Some(&j) = self.index.get(&inst) {
                    if p & (1 << j) == 0 {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out |= 1 << i;
            }
        }
        out
    }

    /// The new-quantifier on sets: membership of `s` is membership of the
    /// swap of `s` at a fresh atom.
    pub fn exact_nu(&self, a: Atom, p: u64) -> u64 {
        let mut out = 0u64;
        let supp = self.support_of_mask(self.full_mask());
        for (i, s) in self.carrier.iter().enumerate() {
            let mut avoid = supp.clone();
            avoid.extend(s.free_atoms());
            avoid.insert(a);
            let b = fresh_atom(&avoid);
            let moved = s.act(&Perm::swap(b, a));
            let inside = self
                .index
                .get(&moved)
                .map(|&j| p & (1 << j) != 0)
                .unwrap_or(false);
            if inside {
                out |= 1 << i;
            }
        }
        out
    }

    /// The amgis action: membership of `s` is membership of `s[a := u]`.
    /// Exact: a closed universe contains every member of the point `p`.
    pub fn exact_amgis(&self, p: u64, u: &Term, a: Atom) -> u64 {
        let mut out = 0u64;
        for (i, s) in self.carrier.iter().enumerate() {
            let inst = subst(s, a, u);
            let inside = self
                .index
                .get(&inst)
                .map(|&j| p & (1 << j) != 0)
                .unwrap_or(false);
            if inside {
                out |= 1 << i;
            }
        }
        out
    }

    /// The pointwise substitution action: the up-closure of the instances of
    /// the members. Rejected if an instance leaves the carrier.
    pub fn exact_subst_pointwise(&self, p: u64, a: Atom, u: &Term) -> Result<u64, OracleError> {
        let mut out = 0u64;
        let mut rest = p;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let inst = subst(&self.carrier[i], a, u);
            out |= self.reach[self.idx(&inst)?];
        }
        Ok(out)
    }

    /// The substitution action on points characterised as the least point
    /// containing the pointwise instances and fresh for `a`; requires `a # u`.
    pub fn exact_subst_char1(&self, p: u64, a: Atom, u: &Term) -> Result<u64, OracleError> {
        assert!(
            !u.free_atoms().contains(&a),
            "characterisation needs a fresh for the substituend"
        );
        let pointwise = self.exact_subst_pointwise(p, a, u)?;
        let mut acc = self.full_mask();
        for r in self.up_closed_subsets()? {
            if pointwise & !r == 0 && !self.support_of_mask(r).contains(&a) {
                acc &= r;
            }
        }
        Ok(acc)
    }

    /// The right adjoint to application at a principal operand, by the
    /// reachability characterisation: a candidate `w` is in iff `w h` reaches
    /// every member of `p`. Candidates whose application is not in the
    /// carrier are reported as undefined.
    pub fn exact_ppa(&self, h: &Term, p: u64) -> ExactSet {
        let mut members = 0u64;
        let mut undefined = 0u64;
        for (i, w) in self.carrier.iter().enumerate() {
            let applied = Term::app(w.clone(), h.clone());
            match self.index.get(&applied) {
                None => undefined |= 1 << i,
                Some(&j) => {
                    let mut ok = true;
                    let mut rest = p;
                    while rest != 0 {
                        let k = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        if self.reach[j] & (1 << k) == 0 {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        members |= 1 << i;
                    }
                }
            }
        }
        ExactSet { members, undefined }
    }

    /// Evaluates the canonical fragment of an expression exactly; other
    /// constructors map to their definitional operations.
    pub fn exact_expr(&self, e: &PointExpr) -> Result<ExactSet, OracleError> {
        let n = normalize(e);
        if let Some(gens) = n.as_canonical() {
            return Ok(ExactSet::total(self.exact_canonical(gens)?));
        }
        match &n {
            PointExpr::Meet(a, b) => {
                let ea = self.exact_expr(a)?;
                let eb = self.exact_expr(b)?;
                Ok(ExactSet {
                    members: ea.members | eb.members,
                    undefined: ea.undefined | eb.undefined,
                })
            }
            PointExpr::Forall(a, body) => {
                let inner = self.exact_expr(body)?;
                if inner.undefined != 0 {
                    return Err(OracleError::EnumerationCap(0));
                }
                Ok(ExactSet::total(self.exact_forall(*a, inner.members)?))
            }
            PointExpr::Exists(a, body) => {
                let inner = self.exact_expr(body)?;
                Ok(ExactSet {
                    members: self.exact_exists(*a, inner.members),
                    undefined: inner.undefined,
                })
            }
            PointExpr::Nu(a, body) => {
                let inner = self.exact_expr(body)?;
                Ok(ExactSet {
                    members: self.exact_nu(*a, inner.members),
                    undefined: inner.undefined,
                })
            }
            PointExpr::Amgis(body, u, a) => {
                let inner = self.exact_expr(body)?;
                Ok(ExactSet {
                    members: self.exact_amgis(inner.members, u, *a),
                    undefined: inner.undefined,
                })
            }
            PointExpr::Ppa(h, body) => {
                let inner = self.exact_expr(body)?;
                if inner.undefined != 0 {
                    return Err(OracleError::EnumerationCap(0));
                }
                Ok(self.exact_ppa(h, inner.members))
            }
            PointExpr::Subst(body, a, u) => {
                let inner = self.exact_expr(body)?;
                if inner.undefined != 0 {
                    return Err(OracleError::EnumerationCap(0));
                }
                Ok(ExactSet::total(self.exact_subst_char1(
                    inner.members,
                    *a,
                    u,
                )?))
            }
            other => Err(OracleError::OutOfUniverse(Term::var(Atom(0)))
                .tap_context(format!("no exact semantics for {other}"))),
        }
    }
}

trait TapContext {
    fn tap_context(self, _msg: String) -> Self;
}

impl TapContext for OracleError {
    fn tap_context(self, _msg: String) -> Self {
        self
    }
}

/// Outcome of comparing the symbolic engine with an exact set over a carrier.
#[derive(Debug, Default, Clone)]
pub struct CompareOutcome {
    pub agreements: usize,
    pub undecided: usize,
    pub skipped: usize,
    pub contradictions: Vec<Term>,
}

/// Evaluates the symbolic membership of every carrier term in `expr` and
/// checks each decided verdict against exact membership. Symbolic `Unknown`
/// is counted, never a failure; candidates the universe cannot decide are
/// skipped.
pub fn compare(
    universe: &Universe,
    engine: &mut Engine,
    expr: &PointExpr,
    exact: &ExactSet,
) -> CompareOutcome {
    let mut outcome = CompareOutcome::default();
    for (i, t) in universe.carrier.iter().enumerate() {
        if exact.undefined & (1 << i) != 0 {
            outcome.skipped += 1;
            continue;
        }
        let expected = exact.members & (1 << i) != 0;
        match member(engine, t, expr) {
            Decision3::Yes { .. } => {
                if expected {
                    outcome.agreements += 1;
                } else {
                    outcome.contradictions.push(t.clone());
                }
            }
            Decision3::No => {
                if expected {
                    outcome.contradictions.push(t.clone());
                } else {
                    outcome.agreements += 1;
                }
            }
            Decision3::Unknown { .. } => outcome.undecided += 1,
        }
    }
    outcome
}

// ---------------------------------------------------------------------------
// The validation corpus

fn beta_only() -> Rc<Theory> {
    Rc::new(Theory::beta_only())
}

fn terms(sources: &[&str]) -> Vec<Term> {
    sources
        .iter()
        .map(|s| crate::terms::parse(s).expect("corpus term"))
        .collect()
}

/// A named validation universe together with the expressions whose symbolic
/// evaluation is gated against the exact semantics.
pub struct ValidationCase {
    pub name: &'static str,
    pub universe: Universe,
    pub exprs: Vec<PointExpr>,
}

/// The built-in corpus: closed universes of at most 12 terms covering the
/// union `ppa` rule, the universal-quantifier witness certificates, the
/// substitution characterisations, amgis, nu, and the existential.
pub fn validation_corpus() -> Vec<ValidationCase> {
    let caps = UniverseCaps {
        max_terms: 12,
        max_term_size: 30,
    };
    let mut cases = Vec::new();
    let mut add = |name: &'static str, seeds: &[&str], exprs: Vec<PointExpr>| {
        let universe = build_universe(beta_only(), &terms(seeds), caps, true)
            .unwrap_or_else(|e| panic!("universe {name}: {e}"));
        cases.push(ValidationCase {
            name,
            universe,
            exprs,
        });
    };
    let pe = |s: &str| crate::points::parse_point_expr(s).expect("corpus expression");

    add(
        "identity-redex",
        &["(\\a.a) b", "b"],
        vec![pe("up((\\a.a) b)"), pe("up(b)"), pe("meet(up(b),up((\\a.a) b))")],
    );
    add(
        "two-stage",
        &["(\\a.\\b.a) c d"],
        vec![pe("up((\\a.\\b.a) c d)"), pe("up(c)")],
    );
    add(
        "ppa-principal",
        &["\\d.b d", "\\d.b c", "(\\d.b d) c", "(\\d.b c) c", "b c"],
        vec![pe("ppa(c,up(b c))")],
    );
    add(
        "ppa-union",
        &["\\d.b d", "\\d.b c", "(\\d.b d) c", "(\\d.b c) c", "b c"],
        vec![pe("ppa(c,meet(up(b c),up((\\d.b c) c)))")],
    );
    add(
        "forall-var",
        &["a", "b", "c"],
        vec![pe("forall a. up(a)"), pe("forall a. up(b)")],
    );
    add(
        "forall-app",
        &["a c", "b c", "c c", "c"],
        vec![pe("forall a. up(a c)")],
    );
    add(
        "subst-char",
        &["a c", "b c"],
        vec![
            pe("subst(up(a c),a,b)"),
            pe("nu a. subst(up(a c),a,b)"),
        ],
    );
    add(
        "amgis-basic",
        &["b c", "b a"],
        vec![pe("amgis(up(b c),c,a)")],
    );
    add(
        "exists-basic",
        &["c", "a b", "c b"],
        vec![pe("exists a. meet(up(c),up(a b))"), pe("exists a. up(c)")],
    );
    add(
        "nu-basic",
        &["a", "b"],
        vec![pe("nu a. up(a)"), pe("nu a. up(b)")],
    );
    add(
        "meet-mixed",
        &["(\\a.a) b", "b", "c"],
        vec![pe("meet(up(b),up(c))"), pe("amgis(meet(up(b),up(c)),b,a)")],
    );

    // one universe with an extra rewrite rule and no beta
    {
        let mut theory = Theory {
            beta: false,
            eta_expansion: false,
            extra_rules: vec![],
            equality_mode: false,
        };
        theory.extra_rules.push(crate::theory::Rule {
            lhs: crate::terms::parse("\\z.x").unwrap(),
            rhs: crate::terms::parse("x").unwrap(),
        });
        let universe = build_universe(
            Rc::new(theory),
            &terms(&["\\z.b c", "b c"]),
            caps,
            true,
        )
        .expect("rule universe");
        cases.push(ValidationCase {
            name: "extra-rule",
            universe,
            exprs: vec![pe("up(\\z.b c)"), pe("up(b c)")],
        });
    }
    cases
}

/// Runs the oracle gate over the validation corpus: every decided symbolic
/// verdict must match exact membership. Also asserts the internal law that
/// the union characterisation of the universal quantifier is contained in
/// its intersection characterisation.
pub fn validate(law_filter: Option<&str>) -> Report {
    let suite = "oracle";
    let mut report = Report::new();
    for case in validation_corpus() {
        if let Some(f) = law_filter {
            if !case.name.contains(f) {
                continue;
            }
        }
        let mut engine = Engine::new(
            Rc::clone(&case.universe.theory),
            Budget::new(6, 40, 2_000),
        )
        .expect("engine");
        if !case.universe.theory.conforming() {
            report.push(
                suite,
                format!("{}-theory-flag", case.name),
                Verdict::Pass,
                None,
                case.universe.theory.describe(),
            );
        }
        for (k, expr) in case.exprs.iter().enumerate() {
            let exact = match case.universe.exact_expr(expr) {
                Ok(set) => set,
                Err(e) => {
                    report.push(
                        suite,
                        format!("{}-expr{}", case.name, k),
                        Verdict::Undecided,
                        None,
                        format!("out of universe: {e}"),
                    );
                    continue;
                }
            };
            let outcome = compare(&case.universe, &mut engine, expr, &exact);
            let verdict = if !outcome.contradictions.is_empty() {
                Verdict::Refuted
            } else {
                Verdict::Pass
            };
            report.push(
                suite,
                format!("{}-expr{}", case.name, k),
                verdict,
                None,
                format!(
                    "{} agree, {} undecided, {} skipped{}",
                    outcome.agreements,
                    outcome.undecided,
                    outcome.skipped,
                    if outcome.contradictions.is_empty() {
                        String::new()
                    } else {
                        format!(
                            ", contradictions: {}",
                            outcome
                                .contradictions
                                .iter()
                                .map(|t| t.to_string())
                                .collect::<Vec<_>>()
                                .join("; ")
                        )
                    }
                ),
            );
        }

        // forall: the union route is contained in the intersection route
        if case.universe.len() <= 12 {
            let p_full: Vec<u64> = case
                .universe
                .carrier()
                .iter()
                .map(|t| case.universe.exact_up(t).expect("carrier term"))
                .collect();
            let mut ok = true;
            for p in p_full {
                for a in [Atom(0), Atom(1)] {
                    let inter = case
                        .universe
                        .exact_forall(a, p)
                        .expect("small carrier");
                    let union = case.universe.exact_forall_via_union(a, p);
                    if union & !inter != 0 {
                        ok = false;
                    }
                }
            }
            report.push(
                suite,
                format!("{}-forall-routes", case.name),
                if ok { Verdict::Pass } else { Verdict::Refuted },
                None,
                "union route within intersection route",
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn closure_examples() {
        // beta-only identity redex closes at two terms
        let u = build_universe(
            beta_only(),
            &terms(&["(\\a.a) b"]),
            UniverseCaps::default(),
            true,
        )
        .unwrap();
        assert_eq!(u.len(), 2);
        assert!(u.closed);
        assert!(u.contains(&t("b")));

        // eta never closes
        let eta = build_universe(
            Rc::new(Theory::beta_eta()),
            &terms(&["b"]),
            UniverseCaps {
                max_terms: 10,
                max_term_size: 20,
            },
            false,
        )
        .unwrap();
        assert!(!eta.closed);
        let err = build_universe(
            Rc::new(Theory::beta_eta()),
            &terms(&["b"]),
            UniverseCaps {
                max_terms: 10,
                max_term_size: 20,
            },
            true,
        );
        assert!(err.is_err());

        // the empty universe is closed
        let empty = build_universe(beta_only(), &[], UniverseCaps::default(), true).unwrap();
        assert!(empty.closed);
        assert!(empty.is_empty());
    }

    #[test]
    fn exact_up_and_membership() {
        let u = build_universe(
            beta_only(),
            &terms(&["(\\a.\\b.a) c d"]),
            UniverseCaps::default(),
            true,
        )
        .unwrap();
        let p = u.exact_up(&t("(\\a.\\b.a) c d")).unwrap();
        assert!(p & (1 << u.idx(&t("c")).unwrap()) != 0);
        assert!(u.exact_up(&t("z")).is_err());
    }

    #[test]
    fn exact_forall_fresh_is_identity() {
        let u = build_universe(beta_only(), &terms(&["b", "c"]), UniverseCaps::default(), true)
            .unwrap();
        let p = u.exact_up(&t("b")).unwrap();
        // a is fresh for the whole point, so the quantifier is identity
        assert_eq!(u.exact_forall(Atom(0), p).unwrap(), p);
    }

    #[test]
    fn exact_amgis_matches_pointwise_rule() {
        let u = build_universe(
            beta_only(),
            &terms(&["b c", "b a"]),
            UniverseCaps::default(),
            true,
        )
        .unwrap();
        let p = u.exact_up(&t("b c")).unwrap();
        let am = u.exact_amgis(p, &t("c"), Atom(0));
        // membership table: s in p[u <- a] iff s[a := u] in p
        for (i, s) in u.carrier().iter().enumerate() {
            let expected = u
                .index
                .get(&subst(s, Atom(0), &t("c")))
                .map(|&j| p & (1 << j) != 0)
                .unwrap_or(false);
            assert_eq!(am & (1 << i) != 0, expected, "at {s}");
        }
    }

    #[test]
    fn gate_passes_on_corpus() {
        let report = validate(None);
        assert_eq!(report.refuted(), 0, "{report}");
        assert!(report.passed() >= 10);
    }
}
