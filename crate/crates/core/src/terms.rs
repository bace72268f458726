//! Lambda-terms up to alpha-equivalence, with the permutation action and
//! capture-avoiding substitution.
//!
//! Terms are kept in a canonical form: every binder is the least atom not free
//! in the rest of its body. The canonical form is alpha-invariant, so the
//! derived `Eq`, `Ord`, and `Hash` decide alpha-equivalence, and term sets
//! never hold two alpha-variants of the same term. Construct terms through
//! [`Term::var`], [`Term::lam`], and [`Term::app`] only; `lam` re-canonicalises
//! its binder.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::atoms::{fresh_atom, Atom, Perm};
use crate::nominal::Nominal;
use crate::report::{Report, Verdict};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Atom),
    Lam(Atom, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(a: Atom) -> Term {
        Term::Var(a)
    }

    /// Abstraction; the binder is renamed to the least atom not free in the
    /// body outside the binder itself, keeping the whole term canonical.
    pub fn lam(a: Atom, body: Term) -> Term {
        let mut outside: BTreeSet<Atom> = body.free_atoms();
        outside.remove(&a);
        let c = fresh_atom(&outside);
        if c == a {
            Term::Lam(a, Box::new(body))
        } else {
            Term::Lam(c, Box::new(body.swap(c, a)))
        }
    }

    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Box::new(f), Box::new(x))
    }

    pub fn free_atoms(&self) -> BTreeSet<Atom> {
        match self {
            Term::Var(a) => [*a].into_iter().collect(),
            Term::Lam(a, s) => {
                let mut fa = s.free_atoms();
                fa.remove(a);
                fa
            }
            Term::App(f, x) => {
                let mut fa = f.free_atoms();
                fa.extend(x.free_atoms());
                fa
            }
        }
    }

    /// Node count; at least 1, invariant under renaming and permutation.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, s) => 1 + s.size(),
            Term::App(f, x) => 1 + f.size() + x.size(),
        }
    }

    /// Swap two atoms everywhere, bound and free.
    fn swap(&self, a: Atom, b: Atom) -> Term {
        self.act(&Perm::swap(a, b))
    }
}

impl Nominal for Term {
    /// Applies `pi` to every atom, bound and free; the result is rebuilt
    /// through the constructors and hence alpha-canonical.
    fn act(&self, pi: &Perm) -> Term {
        match self {
            Term::Var(a) => Term::var(pi.apply(*a)),
            Term::Lam(a, s) => Term::lam(pi.apply(*a), s.act(pi)),
            Term::App(f, x) => Term::app(f.act(pi), x.act(pi)),
        }
    }

    /// For lambda-terms the support is exactly the free atoms.
    fn support(&self) -> BTreeSet<Atom> {
        self.free_atoms()
    }
}

/// Alpha-equivalence. Terms are stored canonically, so this is `==`; the name
/// is kept for call sites that want to speak the contract.
pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    s == t
}

/// Capture-avoiding substitution of `u` for the free atom `a` in `s`. Bound
/// atoms clashing with `free_atoms(u) ∪ {a}` are renamed to the least fresh
/// atom available.
pub fn subst(s: &Term, a: Atom, u: &Term) -> Term {
    match s {
        Term::Var(b) => {
            if *b == a {
                u.clone()
            } else {
                s.clone()
            }
        }
        Term::App(f, x) => Term::app(subst(f, a, u), subst(x, a, u)),
        Term::Lam(b, t) => {
            if *b == a || !t.free_atoms().contains(&a) {
                s.clone()
            } else if u.free_atoms().contains(b) {
                let mut avoid = t.free_atoms();
                avoid.extend(u.free_atoms());
                avoid.insert(a);
                let c = fresh_atom(&avoid);
                Term::lam(c, subst(&t.swap(c, *b), a, u))
            } else {
                Term::lam(*b, subst(t, a, u))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Printing

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(self))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Pos {
    Top,
    AppLeft,
    AppRight,
}

/// Minimal-parenthesis printer; abstraction as `\x.` extending right,
/// application left-associative.
pub fn print_term(t: &Term) -> String {
    fn go(t: &Term, pos: Pos, out: &mut String) {
        match t {
            Term::Var(a) => out.push_str(&a.name()),
            Term::Lam(a, s) => {
                let parens = pos != Pos::Top;
                if parens {
                    out.push('(');
                }
                out.push('\\');
                out.push_str(&a.name());
                out.push('.');
                go(s, Pos::Top, out);
                if parens {
                    out.push(')');
                }
            }
            Term::App(f, x) => {
                let parens = pos == Pos::AppRight;
                if parens {
                    out.push('(');
                }
                go(f, Pos::AppLeft, out);
                out.push(' ');
                go(x, Pos::AppRight, out);
                if parens {
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    go(t, Pos::Top, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser { src, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
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

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", b as char))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < self.src.len()
            && (bytes[self.pos].is_ascii_lowercase() || bytes[self.pos].is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos > start {
            Some(&self.src[start..self.pos])
        } else {
            None
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let start = self.pos;
        match self.ident() {
            Some(name) => match Atom::parse(name) {
                Some(a) => Ok(a),
                None => {
                    self.pos = start;
                    self.error(format!("'{name}' is not an atom name"))
                }
            },
            None => self.error("expected an atom name"),
        }
    }

    fn lambda_start(&mut self) -> bool {
        match self.peek() {
            Some(b'\\') => true,
            Some(b'l') => {
                let rest = &self.src[self.pos..];
                rest.starts_with("lam")
                    && !rest[3..]
                        .bytes()
                        .next()
                        .map(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
                        .unwrap_or(false)
            }
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.lambda_start() {
            return self.lambda();
        }
        let mut acc = self.atomic()?;
        loop {
            if self.lambda_start() {
                let arg = self.lambda()?;
                acc = Term::app(acc, arg);
                break;
            }
            match self.peek() {
                Some(b'(') => {
                    let arg = self.atomic()?;
                    acc = Term::app(acc, arg);
                }
                Some(b) if b.is_ascii_lowercase() => {
                    let arg = self.atomic()?;
                    acc = Term::app(acc, arg);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(b'\\') {
            self.pos += 1;
        } else {
            // the keyword form `lam x. body`
            self.pos += 3;
        }
        let binder = self.atom()?;
        self.eat(b'.')?;
        if self.peek().is_none() {
            return self.error("missing body after '.'");
        }
        let body = self.term()?;
        Ok(Term::lam(binder, body))
    }

    fn atomic(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.eat(b'(')?;
                let inner = self.term()?;
                self.eat(b')')?;
                Ok(inner)
            }
            Some(b) if b.is_ascii_lowercase() => Ok(Term::var(self.atom()?)),
            _ => self.error("expected a term"),
        }
    }
}

/// Parses the term grammar: variables are atom names, `\x. body` or
/// `lam x. body` extends right, application is left-associative juxtaposition,
/// parentheses group.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src);
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.error("trailing input");
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Naive substitution oracle

/// Plain tree with no canonical-form invariant; private scaffolding for the
/// reference substitution below.
enum RawTerm {
    Var(Atom),
    Lam(Atom, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
}

fn to_raw(t: &Term) -> RawTerm {
    match t {
        Term::Var(a) => RawTerm::Var(*a),
        Term::Lam(a, s) => RawTerm::Lam(*a, Box::new(to_raw(s))),
        Term::App(f, x) => RawTerm::App(Box::new(to_raw(f)), Box::new(to_raw(x))),
    }
}

fn from_raw(t: &RawTerm) -> Term {
    match t {
        RawTerm::Var(a) => Term::var(*a),
        RawTerm::Lam(a, s) => Term::lam(*a, from_raw(s)),
        RawTerm::App(f, x) => Term::app(from_raw(f), from_raw(x)),
    }
}

/// Reference substitution: eagerly renames every binder of `s` to a globally
/// fresh atom (above everything in sight), then substitutes textually. This
/// route never needs a capture check, and stays independent of [`subst`].
pub fn subst_naive(s: &Term, a: Atom, u: &Term) -> Term {
    fn rename_all(t: &RawTerm, next: &mut u32) -> RawTerm {
        match t {
            RawTerm::Var(x) => RawTerm::Var(*x),
            RawTerm::Lam(b, body) => {
                let fresh = Atom(*next);
                *next += 1;
                let renamed = replace_free(body, *b, fresh);
                RawTerm::Lam(fresh, Box::new(rename_all(&renamed, next)))
            }
            RawTerm::App(f, x) => RawTerm::App(
                Box::new(rename_all(f, next)),
                Box::new(rename_all(x, next)),
            ),
        }
    }
    // textual variable-for-variable replacement of free occurrences
    fn replace_free(t: &RawTerm, from: Atom, to: Atom) -> RawTerm {
        match t {
            RawTerm::Var(x) => RawTerm::Var(if *x == from { to } else { *x }),
            RawTerm::Lam(b, body) => {
                if *b == from {
                    RawTerm::Lam(*b, Box::new(clone_raw(body)))
                } else {
                    RawTerm::Lam(*b, Box::new(replace_free(body, from, to)))
                }
            }
            RawTerm::App(f, x) => RawTerm::App(
                Box::new(replace_free(f, from, to)),
                Box::new(replace_free(x, from, to)),
            ),
        }
    }
    fn clone_raw(t: &RawTerm) -> RawTerm {
        match t {
            RawTerm::Var(a) => RawTerm::Var(*a),
            RawTerm::Lam(a, s) => RawTerm::Lam(*a, Box::new(clone_raw(s))),
            RawTerm::App(f, x) => RawTerm::App(Box::new(clone_raw(f)), Box::new(clone_raw(x))),
        }
    }
    // textual substitution once binders are globally fresh
    fn go(t: &RawTerm, a: Atom, u: &RawTerm) -> RawTerm {
        match t {
            RawTerm::Var(x) => {
                if *x == a {
                    clone_raw(u)
                } else {
                    RawTerm::Var(*x)
                }
            }
            RawTerm::Lam(b, body) => RawTerm::Lam(*b, Box::new(go(body, a, u))),
            RawTerm::App(f, x) => RawTerm::App(Box::new(go(f, a, u)), Box::new(go(x, a, u))),
        }
    }

    let mut next = {
        let mut m = 0;
        for atom in s.free_atoms().iter().chain(u.free_atoms().iter()) {
            m = m.max(atom.index() + 1);
        }
        fn max_bound(t: &Term, m: &mut u32) {
            match t {
                Term::Var(_) => {}
                Term::Lam(b, s) => {
                    *m = (*m).max(b.index() + 1);
                    max_bound(s, m);
                }
                Term::App(f, x) => {
                    max_bound(f, m);
                    max_bound(x, m);
                }
            }
        }
        max_bound(s, &mut m);
        max_bound(u, &mut m);
        m.max(a.index() + 1)
    };
    let freshened = rename_all(&to_raw(s), &mut next);
    from_raw(&go(&freshened, a, &to_raw(u)))
}

// ---------------------------------------------------------------------------
// Seeded term generation

/// Deterministic pseudo-random terms over a small atom pool, depth-bounded.
pub struct TermGen {
    rng: ChaCha8Rng,
    pool: Vec<Atom>,
}

impl TermGen {
    pub fn new(seed: u64) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: (0..5).map(Atom).collect(),
        }
    }

    pub fn atom(&mut self) -> Atom {
        self.pool[self.rng.gen_range(0..self.pool.len())]
    }

    pub fn term(&mut self, depth: usize) -> Term {
        if depth == 0 {
            return Term::var(self.atom());
        }
        match self.rng.gen_range(0..10) {
            0..=2 => Term::var(self.atom()),
            3..=5 => Term::lam(self.atom(), self.term(depth - 1)),
            6..=8 => Term::app(self.term(depth - 1), self.term(depth - 1)),
            // seed a visible beta-redex now and then
            _ => Term::app(
                Term::lam(self.atom(), self.term(depth - 1)),
                self.term(depth.saturating_sub(2)),
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// The substitution law suite

/// Runs `cases` seeded instances of each substitution law as exact
/// alpha-equalities, checking [`subst`] against [`subst_naive`] on every
/// instance as well. Side-condition violations are skipped and counted.
pub fn check_sigma_axioms(seed: u64, cases: usize) -> Report {
    let suite = "sigma";
    let mut report = Report::new();
    let mut gen = TermGen::new(seed);

    for i in 0..cases {
        let x = gen.term(4);
        let u = gen.term(3);
        let v = gen.term(3);
        let a = gen.atom();
        let b = gen.atom();

        let mut avoid = x.free_atoms();
        avoid.extend(u.free_atoms());
        avoid.extend(v.free_atoms());
        avoid.insert(a);
        avoid.insert(b);
        let fresh = fresh_atom(&avoid);

        let mut case = |law: &str, verdict: Verdict, detail: String| {
            report.push(suite, format!("{law}#{i:04}"), verdict, None, detail);
        };

        // law "sigma-a": a[a := u] = u
        {
            let lhs = subst(&Term::var(a), a, &u);
            case(
                "sigma-a",
                if lhs == u { Verdict::Pass } else { Verdict::Refuted },
                format!("a={a} u={u}"),
            );
        }

        // law "sigma-id": x[a := a] = x
        {
            let lhs = subst(&x, a, &Term::var(a));
            case(
                "sigma-id",
                if lhs == x { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a}"),
            );
        }

        // law "sigma-fresh": a#x implies x[a := u] = x  (use a guaranteed-fresh atom)
        {
            let lhs = subst(&x, fresh, &u);
            case(
                "sigma-fresh",
                if lhs == x { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={fresh} u={u}"),
            );
        }

        // law "sigma-alpha": b#x implies x[a := u] = ((b a)·x)[b := u]
        if !x.free_atoms().contains(&b) && b != a {
            let lhs = subst(&x, a, &u);
            let rhs = subst(&x.act(&Perm::swap(b, a)), b, &u);
            case(
                "sigma-alpha",
                if lhs == rhs { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a} b={b} u={u}"),
            );
        } else {
            case("sigma-alpha", Verdict::Skipped, "side condition b#x".into());
        }

        // law "sigma-sigma": a#v implies x[a := u][b := v] = x[b := v][a := u[b := v]]
        if !v.free_atoms().contains(&a) && a != b {
            let lhs = subst(&subst(&x, a, &u), b, &v);
            let rhs = subst(&subst(&x, b, &v), a, &subst(&u, b, &v));
            case(
                "sigma-sigma",
                if lhs == rhs { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a} u={u} b={b} v={v}"),
            );
        } else {
            case("sigma-sigma", Verdict::Skipped, "side condition a#v".into());
        }

        // law "rename-is-swap": b#x implies x[a := b] = (b a)·x
        if !x.free_atoms().contains(&b) && b != a {
            let lhs = subst(&x, a, &Term::var(b));
            let rhs = x.act(&Perm::swap(b, a));
            case(
                "rename-is-swap",
                if lhs == rhs { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a} b={b}"),
            );
        } else {
            case("rename-is-swap", Verdict::Skipped, "side condition b#x".into());
        }

        // law "fresh-after-subst": a#u implies a # x[a := u]
        if !u.free_atoms().contains(&a) {
            let lhs = subst(&x, a, &u);
            case(
                "fresh-after-subst",
                if lhs.free_atoms().contains(&a) {
                    Verdict::Refuted
                } else {
                    Verdict::Pass
                },
                format!("x={x} a={a} u={u}"),
            );
        } else {
            case("fresh-after-subst", Verdict::Skipped, "side condition a#u".into());
        }

        // law "swap-via-subst": c#x implies x[a := c][b := a][c := b] = (b a)·x
        if a != b {
            let c = fresh;
            let lhs = subst(&subst(&subst(&x, a, &Term::var(c)), b, &Term::var(a)), c, &Term::var(b));
            let rhs = x.act(&Perm::swap(b, a));
            case(
                "swap-via-subst",
                if lhs == rhs { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a} b={b} c={c}"),
            );
        } else {
            case("swap-via-subst", Verdict::Skipped, "needs distinct a,b".into());
        }

        // every instance: subst agrees with the naive renaming oracle
        {
            let fast = subst(&x, a, &u);
            let slow = subst_naive(&x, a, &u);
            case(
                "oracle-agreement",
                if fast == slow { Verdict::Pass } else { Verdict::Refuted },
                format!("x={x} a={a} u={u} fast={fast} slow={slow}"),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn at(n: &str) -> Atom {
        Atom::parse(n).unwrap()
    }

    #[test]
    fn parse_grammar_cases() {
        let lam = t("\\a. a b");
        assert_eq!(
            lam,
            Term::lam(at("a"), Term::app(Term::var(at("a")), Term::var(at("b"))))
        );
        let app = t("(\\a.a) b");
        assert_eq!(
            app,
            Term::app(Term::lam(at("a"), Term::var(at("a"))), Term::var(at("b")))
        );
        assert!(parse("\\a.").is_err());
        assert!(parse("(a b").is_err());
        assert!(parse("a )").is_err());
        // keyword form
        assert_eq!(t("lam a. a"), t("\\a.a"));
        // application is left-associative, lambda extends right
        assert_eq!(t("a b c"), Term::app(t("a b"), t("c")));
        assert_eq!(t("\\a. a \\b. b"), Term::lam(at("a"), Term::app(t("a"), t("\\b.b"))));
    }

    #[test]
    fn print_round_trip() {
        for src in [
            "a",
            "a b",
            "a b c",
            "a (b c)",
            "\\a.a",
            "(\\a.a) b",
            "\\a.\\b.a b",
            "a (\\b.b)",
            "(\\a.a a) (\\a.a a)",
        ] {
            let parsed = t(src);
            let reparsed = parse(&print_term(&parsed)).unwrap();
            assert_eq!(parsed, reparsed, "round trip failed for {src}");
        }
    }

    #[test]
    fn alpha_equivalence_cases() {
        assert_eq!(t("\\a.a"), t("\\b.b"));
        assert_ne!(t("\\a.\\b.a b"), t("\\a.\\b.b a"));
        assert_eq!(t("\\a.b"), t("\\c.b"));
        assert_ne!(t("\\a.a"), t("\\a.b"));
    }

    #[test]
    fn permutation_action_cases() {
        let swap = Perm::swap(at("b"), at("a"));
        // (b a)·(\a.b) = \b.a
        assert_eq!(t("\\a.b").act(&swap), t("\\b.a"));
        // id
        let s = t("\\a.a b");
        assert_eq!(s.act(&Perm::identity()), s);
        // swapping two fresh atoms fixes the term
        let fresh_swap = Perm::swap(at("x"), at("y"));
        assert_eq!(s.act(&fresh_swap), s);
    }

    #[test]
    fn support_is_free_atoms() {
        assert_eq!(t("\\a.a b").support(), [at("b")].into_iter().collect());
        assert!(t("\\a.a").support().is_empty());
    }

    #[test]
    fn subst_defining_cases() {
        let u = t("c d");
        assert_eq!(subst(&t("a"), at("a"), &u), u);
        // a fresh for s
        assert_eq!(subst(&t("\\a.a"), at("a"), &u), t("\\a.a"));
        assert_eq!(subst(&t("b"), at("a"), &u), t("b"));
        // capture avoidance: (\b.a)[a := b] must rename the binder
        let captured = subst(&t("\\b.a"), at("a"), &t("b"));
        assert_eq!(captured, t("\\c.b"));
        // shadowed binder: (\a.a)[a := u] untouched
        assert_eq!(subst(&t("\\a.a b"), at("a"), &u), t("\\a.a b"));
    }

    #[test]
    fn subst_matches_naive_oracle_on_tricky_cases() {
        let cases = [
            ("\\b.a", "a", "b"),
            ("\\b.\\c.a b c", "a", "b c"),
            ("(\\b.a b) (\\c.a)", "a", "\\d.b d"),
            ("\\b.b", "a", "b"),
            ("\\c.a c", "a", "c c"),
        ];
        for (s, a, u) in cases {
            let s = t(s);
            let a = at(a);
            let u = t(u);
            assert_eq!(subst(&s, a, &u), subst_naive(&s, a, &u), "mismatch on {s} [{a} := {u}]");
        }
    }

    #[test]
    fn canonical_binders_are_least() {
        // the binder of \x.y x canonicalises to the least atom not free
        let s = Term::lam(at("x"), Term::app(Term::var(at("y")), Term::var(at("x"))));
        match &s {
            Term::Lam(b, _) => assert_eq!(*b, at("a")),
            _ => unreachable!(),
        }
    }

    #[test]
    fn sigma_suite_clean() {
        let report = check_sigma_axioms(7, 60);
        assert_eq!(report.refuted(), 0, "{report}");
        assert_eq!(report.undecided(), 0);
    }

    #[test]
    fn size_invariant_under_action() {
        let s = t("(\\a.a a) (\\b.b c)");
        assert_eq!(s.size(), s.act(&Perm::swap(at("c"), at("z"))).size());
    }
}
