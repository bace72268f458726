//! Finite distributive lattices with exhaustive filter and prime-filter
//! machinery, and the classical fragment of the representation suite at desk
//! scale.
//!
//! Carriers are capped at 32 elements so every check can be exhaustive.
//! Filters in a finite lattice are principal (a nonempty, up-closed,
//! meet-closed set contains the meet of all its members), so filter
//! enumeration walks the non-bottom elements; primeness is checked against
//! every join. The Heyting instance interprets application as meet and its
//! right adjoint as Heyting implication, which every finite distributive
//! lattice possesses.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::report::{Report, Verdict};

pub type Elem = usize;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("not distributive: elements {0}, {1}, {2}")]
    NotDistributive(Elem, Elem, Elem),
    #[error("carrier too large: {0} > {1}")]
    CapExceeded(usize, usize),
    #[error("filter and ideal are not disjoint")]
    NotDisjoint,
    #[error("input line {line}: {message}")]
    Input { line: usize, message: String },
}

/// A finite poset given by its full order relation.
#[derive(Clone, Debug)]
pub struct Poset {
    pub n: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given strict pairs and
    /// verifies antisymmetry.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, LatticeError> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(LatticeError::NotPartialOrder(format!(
                    "pair ({i},{j}) out of range"
                )));
            }
            leq[i * n + j] = true;
        }
        // Floyd-Warshall style closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::NotPartialOrder(format!(
                        "{i} and {j} are mutually related"
                    )));
                }
            }
        }
        Ok(Poset { n, leq })
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }
}

/// Deterministic pseudo-random poset on `size` elements.
pub fn random_poset(size: usize, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in (i + 1)..size {
            if rng.gen_bool(0.35) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(size, &pairs).expect("i<j edges cannot create cycles")
}

/// An explicit finite distributive lattice: order matrix plus meet/join
/// tables, top and bottom.
#[derive(Clone)]
pub struct FiniteDL {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    pub top: Elem,
    pub bottom: Elem,
}

impl fmt::Debug for FiniteDL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteDL(n={}, top={}, bottom={})", self.n, self.top, self.bottom)
    }
}

impl FiniteDL {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }

    /// Builds a lattice from generating `i <= j` pairs: takes the closure,
    /// then checks that all meets and joins exist and distribute.
    pub fn from_leq_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<FiniteDL, LatticeError> {
        let poset = Poset::from_pairs(n, pairs)?;
        Self::from_poset_order(&poset)
    }

    fn from_poset_order(poset: &Poset) -> Result<FiniteDL, LatticeError> {
        let n = poset.n;
        if n == 0 {
            return Err(LatticeError::NotLattice("empty carrier".into()));
        }
        let leq: Vec<bool> = (0..n * n)
            .map(|idx| poset.leq(idx / n, idx % n))
            .collect();
        let glb = |x: usize, y: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..n)
                .filter(|&z| leq[z * n + x] && leq[z * n + y])
                .collect();
            lower
                .iter()
                .copied()
                .find(|&g| lower.iter().all(|&z| leq[z * n + g]))
        };
        let lub = |x: usize, y: usize| -> Option<usize> {
            let upper: Vec<usize> = (0..n)
                .filter(|&z| leq[x * n + z] && leq[y * n + z])
                .collect();
            upper
                .iter()
                .copied()
                .find(|&l| upper.iter().all(|&z| leq[l * n + z]))
        };
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = glb(x, y)
                    .ok_or_else(|| LatticeError::NotLattice(format!("no meet of {x},{y}")))?;
                join[x * n + y] = lub(x, y)
                    .ok_or_else(|| LatticeError::NotLattice(format!("no join of {x},{y}")))?;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|z| leq[b * n + z]))
            .ok_or_else(|| LatticeError::NotLattice("no bottom".into()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|z| leq[z * n + t]))
            .ok_or_else(|| LatticeError::NotLattice("no top".into()))?;
        let lattice = FiniteDL {
            n,
            leq,
            meet,
            join,
            top,
            bottom,
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = lattice.meet(x, lattice.join(y, z));
                    let rhs = lattice.join(lattice.meet(x, y), lattice.meet(x, z));
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive(x, y, z));
                    }
                }
            }
        }
        Ok(lattice)
    }

    /// The lattice of down-closed subsets of a poset, ordered by inclusion.
    /// Always distributive.
    pub fn birkhoff_from_poset(poset: &Poset) -> FiniteDL {
        assert!(poset.n <= 20, "poset too large for down-set enumeration");
        let mut downsets: Vec<u32> = Vec::new();
        for mask in 0u32..(1 << poset.n) {
            let closed = (0..poset.n).all(|j| {
                if mask & (1 << j) == 0 {
                    return true;
                }
                (0..poset.n).all(|i| !poset.leq(i, j) || mask & (1 << i) != 0)
            });
            if closed {
                downsets.push(mask);
            }
        }
        let n = downsets.len();
        let index_of = |m: u32| downsets.binary_search(&m).expect("closed under ops");
        let mut leq = vec![false; n * n];
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for (i, &a) in downsets.iter().enumerate() {
            for (j, &b) in downsets.iter().enumerate() {
                leq[i * n + j] = a & b == a;
                meet[i * n + j] = index_of(a & b);
                join[i * n + j] = index_of(a | b);
            }
        }
        let bottom = index_of(0);
        let top = index_of(((1u64 << poset.n) - 1) as u32);
        FiniteDL {
            n,
            leq,
            meet,
            join,
            top,
            bottom,
        }
    }
}

// ---------------------------------------------------------------------------
// Filters

/// A subset of the lattice carrier as a bitmask. Filters are nonempty,
/// consistent, up-closed, meet-closed subsets; in a finite lattice every
/// filter is the principal up-set of its least element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FilterSet {
    pub mask: u64,
}

impl FilterSet {
    pub fn contains(&self, x: Elem) -> bool {
        self.mask & (1 << x) != 0
    }

    pub fn elements(&self, n: usize) -> Vec<Elem> {
        (0..n).filter(|&x| self.contains(x)).collect()
    }
}

pub fn upset_mask(l: &FiniteDL, x: Elem) -> u64 {
    let mut mask = 0u64;
    for z in 0..l.size() {
        if l.leq(x, z) {
            mask |= 1 << z;
        }
    }
    mask
}

pub fn downset_mask(l: &FiniteDL, x: Elem) -> u64 {
    let mut mask = 0u64;
    for z in 0..l.size() {
        if l.leq(z, x) {
            mask |= 1 << z;
        }
    }
    mask
}

/// Is the mask a filter: nonempty, no bottom, up-closed, meet-closed?
pub fn is_filter(l: &FiniteDL, mask: u64) -> bool {
    if mask == 0 || mask & (1 << l.bottom) != 0 {
        return false;
    }
    for x in 0..l.size() {
        if mask & (1 << x) == 0 {
            continue;
        }
        for z in 0..l.size() {
            if l.leq(x, z) && mask & (1 << z) == 0 {
                return false;
            }
        }
        for y in 0..l.size() {
            if mask & (1 << y) != 0 && mask & (1 << l.meet(x, y)) == 0 {
                return false;
            }
        }
    }
    true
}

/// Is the mask an ideal: no top, down-closed, join-closed?
pub fn is_ideal(l: &FiniteDL, mask: u64) -> bool {
    if mask & (1 << l.top) != 0 {
        return false;
    }
    for x in 0..l.size() {
        if mask & (1 << x) == 0 {
            continue;
        }
        for z in 0..l.size() {
            if l.leq(z, x) && mask & (1 << z) == 0 {
                return false;
            }
        }
        for y in 0..l.size() {
            if mask & (1 << y) != 0 && mask & (1 << l.join(x, y)) == 0 {
                return false;
            }
        }
    }
    true
}

fn is_prime_filter(l: &FiniteDL, mask: u64) -> bool {
    if !is_filter(l, mask) {
        return false;
    }
    for x in 0..l.size() {
        for y in 0..l.size() {
            let j = l.join(x, y);
            if mask & (1 << j) != 0 && mask & (1 << x) == 0 && mask & (1 << y) == 0 {
                return false;
            }
        }
    }
    true
}

/// All prime filters, in deterministic order. Every filter of a finite
/// lattice is a principal up-set, so the scan ranges over the non-bottom
/// elements and keeps those whose up-set splits every join.
pub fn enumerate_prime_filters(l: &FiniteDL) -> Vec<FilterSet> {
    let mut out = Vec::new();
    for x in 0..l.size() {
        if x == l.bottom {
            continue;
        }
        let mask = upset_mask(l, x);
        if is_prime_filter(l, mask) && !out.iter().any(|f: &FilterSet| f.mask == mask) {
            out.push(FilterSet { mask });
        }
    }
    out.sort();
    out
}

/// `p + y`: the union of the up-sets of `x ∧ y` over `x ∈ p`. Contains `p`
/// and `y`; closed under everything except possibly consistency.
pub fn plus(l: &FiniteDL, p: FilterSet, y: Elem) -> u64 {
    let mut mask = 0u64;
    for x in p.elements(l.size()) {
        mask |= upset_mask(l, l.meet(x, y));
    }
    mask
}

/// Extends the filter `p` to a prime filter disjoint from the ideal `Z` by
/// deterministic least-index greedy element addition. In a finite carrier the
/// greedy fixpoint is maximal with respect to `Z`, hence prime.
pub fn extend_to_prime(
    l: &FiniteDL,
    p: FilterSet,
    z: u64,
) -> Result<FilterSet, LatticeError> {
    if p.mask & z != 0 {
        return Err(LatticeError::NotDisjoint);
    }
    let mut current = p;
    loop {
        let mut grew = false;
        for y in 0..l.size() {
            if current.contains(y) {
                continue;
            }
            let candidate = plus(l, current, y);
            if candidate & (1 << l.bottom) == 0 && candidate & z == 0 {
                current = FilterSet { mask: candidate };
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    debug_assert!(is_prime_filter(l, current.mask));
    Ok(current)
}

/// The representation map: the set of prime-filter indices containing `x`.
pub fn rep_map(_l: &FiniteDL, primes: &[FilterSet], x: Elem) -> u64 {
    let mut mask = 0u64;
    for (i, p) in primes.iter().enumerate() {
        if p.contains(x) {
            mask |= 1 << i;
        }
    }
    mask
}

/// The Heyting instance: application is meet, and its right adjoint is
/// Heyting implication `u -> x`, the join of everything whose meet with `u`
/// stays below `x`.
pub struct HeytingOps {
    pub app: Vec<Elem>,
    pub ppa: Vec<Elem>,
    n: usize,
}

impl HeytingOps {
    pub fn app(&self, x: Elem, y: Elem) -> Elem {
        self.app[x * self.n + y]
    }

    /// `ppa(u, x)` is `u -> x`.
    pub fn ppa(&self, u: Elem, x: Elem) -> Elem {
        self.ppa[u * self.n + x]
    }
}

pub fn heyting_ops(l: &FiniteDL) -> HeytingOps {
    let n = l.size();
    let mut app = vec![0usize; n * n];
    let mut ppa = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            app[x * n + y] = l.meet(x, y);
            // u -> x: join of {z | z ∧ u <= x}
            let mut imp = l.bottom;
            for z in 0..n {
                if l.leq(l.meet(z, x), y) {
                    imp = l.join(imp, z);
                }
            }
            ppa[x * n + y] = imp;
        }
    }
    HeytingOps { app, ppa, n }
}

// ---------------------------------------------------------------------------
// The duality suite

const DUALITY_CAP: usize = 32;

/// Exhaustively checks the representation identities on a finite distributive
/// lattice: the order embedding into sets of prime filters, preservation of
/// meets/joins/bounds, prime extension for every disjoint filter/ideal pair,
/// the Heyting-instance application identities over prime filters, and the
/// filter lemmas for maximal extensions.
pub fn check_duality(l: &FiniteDL) -> Result<Report, LatticeError> {
    if l.size() > DUALITY_CAP {
        return Err(LatticeError::CapExceeded(l.size(), DUALITY_CAP));
    }
    let suite = "lattice";
    let mut report = Report::new();
    let n = l.size();
    let primes = enumerate_prime_filters(l);
    let rep: Vec<u64> = (0..n).map(|x| rep_map(l, &primes, x)).collect();
    let all_primes: u64 = if primes.is_empty() {
        0
    } else {
        (1u64 << primes.len()) - 1
    };

    let push = |report: &mut Report, case: &str, ok: bool, detail: String| {
        report.push(
            suite,
            case,
            if ok { Verdict::Pass } else { Verdict::Refuted },
            None,
            detail,
        );
    };

    // order embedding: x <= y iff rep(x) ⊆ rep(y); injectivity follows
    {
        let mut ok = true;
        let mut detail = String::new();
        for x in 0..n {
            for y in 0..n {
                let incl = rep[x] & !rep[y] == 0;
                if l.leq(x, y) != incl {
                    ok = false;
                    detail = format!("x={x} y={y}");
                }
            }
        }
        push(&mut report, "order-embedding", ok, detail);
        let mut inj = true;
        for x in 0..n {
            for y in 0..n {
                if x != y && rep[x] == rep[y] {
                    inj = false;
                }
            }
        }
        push(&mut report, "rep-injective", inj, String::new());
    }

    // bounds and homomorphism: bottom/top, meets, joins
    {
        push(
            &mut report,
            "rep-bottom-top",
            rep[l.bottom] == 0 && rep[l.top] == all_primes,
            String::new(),
        );
        let mut ok = true;
        for x in 0..n {
            for y in 0..n {
                if rep[l.meet(x, y)] != rep[x] & rep[y] {
                    ok = false;
                }
            }
        }
        push(&mut report, "rep-meet", ok, String::new());
        let mut ok = true;
        for x in 0..n {
            for y in 0..n {
                if rep[l.join(x, y)] != rep[x] | rep[y] {
                    ok = false;
                }
            }
        }
        push(&mut report, "rep-join", ok, String::new());
    }

    // prime extension for every disjoint principal filter/ideal pair
    {
        let mut ok = true;
        let mut count = 0usize;
        for x in 0..n {
            if x == l.bottom {
                continue;
            }
            for y in 0..n {
                if y == l.top {
                    continue;
                }
                let p = FilterSet {
                    mask: upset_mask(l, x),
                };
                let z = downset_mask(l, y);
                if p.mask & z != 0 {
                    continue;
                }
                count += 1;
                match extend_to_prime(l, p, z) {
                    Ok(q) => {
                        if !is_prime_filter(l, q.mask)
                            || q.mask & p.mask != p.mask
                            || q.mask & z != 0
                        {
                            ok = false;
                        }
                    }
                    Err(_) => ok = false,
                }
            }
        }
        push(&mut report, "prime-extension", ok, format!("{count} pairs"));
    }

    // separation: x not <= y gives a prime containing x and excluding y
    {
        let mut ok = true;
        for x in 0..n {
            for y in 0..n {
                if !l.leq(x, y) {
                    let p = FilterSet {
                        mask: upset_mask(l, x),
                    };
                    let z = downset_mask(l, y);
                    match extend_to_prime(l, p, z) {
                        Ok(q) => {
                            if !q.contains(x) || q.contains(y) {
                                ok = false;
                            }
                        }
                        Err(_) => ok = false,
                    }
                }
            }
        }
        push(&mut report, "separation", ok, String::new());
    }

    // the Heyting instance: adjunction and the compatibility rows
    let h = heyting_ops(l);
    {
        let mut ok = true;
        for x in 0..n {
            for u in 0..n {
                for z in 0..n {
                    let lhs = l.leq(l.meet(x, u), z);
                    let rhs = l.leq(x, h.ppa(u, z));
                    if lhs != rhs {
                        ok = false;
                    }
                }
            }
        }
        push(&mut report, "heyting-adjunction", ok, String::new());

        let mut ok = true;
        for u in 0..n {
            for x in 0..n {
                // counit and unit
                if !l.leq(l.meet(h.ppa(u, x), u), x) {
                    ok = false;
                }
                if !l.leq(x, h.ppa(u, l.meet(x, u))) {
                    ok = false;
                }
                // bottom absorbs
                if h.app(l.bottom, u) != l.bottom || h.app(x, l.bottom) != l.bottom {
                    ok = false;
                }
            }
        }
        push(&mut report, "heyting-unit-counit", ok, String::new());

        let mut ok = true;
        for x in 0..n {
            for y in 0..n {
                for u in 0..n {
                    // app distributes over join, is sub-distributive over meet
                    if h.app(l.join(x, y), u) != l.join(h.app(x, u), h.app(y, u)) {
                        ok = false;
                    }
                    if !l.leq(h.app(l.meet(x, y), u), l.meet(h.app(x, u), h.app(y, u))) {
                        ok = false;
                    }
                    // ppa turns meets into meets and dominates joins
                    if h.ppa(u, l.meet(x, y)) != l.meet(h.ppa(u, x), h.ppa(u, y)) {
                        ok = false;
                    }
                    if !l.leq(l.join(h.ppa(u, x), h.ppa(u, y)), h.ppa(u, l.join(x, y))) {
                        ok = false;
                    }
                }
            }
        }
        push(&mut report, "heyting-compat-rows", ok, String::new());
    }

    // application over sets of primes: the combination of two primes is the
    // intersection of the representations of pairwise applications
    if !primes.is_empty() {
        let np = primes.len();
        let mut bpp = vec![0u64; np * np];
        for (i, p) in primes.iter().enumerate() {
            for (j, q) in primes.iter().enumerate() {
                let mut acc = all_primes;
                for x in p.elements(n) {
                    for y in q.elements(n) {
                        acc &= rep[h.app(x, y)];
                    }
                }
                bpp[i * np + j] = acc;
            }
        }
        let star = |x_set: u64, y_set: u64| -> u64 {
            let mut acc = 0u64;
            for i in 0..np {
                if x_set & (1 << i) == 0 {
                    continue;
                }
                for j in 0..np {
                    if y_set & (1 << j) != 0 {
                        acc |= bpp[i * np + j];
                    }
                }
            }
            acc
        };
        let adjoint = |y_set: u64, x_set: u64| -> u64 {
            let mut acc = 0u64;
            for i in 0..np {
                let ok = (0..np).all(|j| {
                    y_set & (1 << j) == 0 || bpp[i * np + j] & !x_set == 0
                });
                if ok {
                    acc |= 1 << i;
                }
            }
            acc
        };
        let mut ok_star = true;
        let mut ok_adj = true;
        for x in 0..n {
            for y in 0..n {
                if star(rep[x], rep[y]) != rep[h.app(x, y)] {
                    ok_star = false;
                }
                if adjoint(rep[y], rep[x]) != rep[h.ppa(y, x)] {
                    ok_adj = false;
                }
            }
        }
        push(&mut report, "rep-app", ok_star, String::new());
        push(&mut report, "rep-ppa", ok_adj, String::new());
    }

    // maximal filters against a prime are prime (spot instances)
    {
        let mut ok = true;
        let mut count = 0usize;
        for r in &primes {
            for x in 0..n {
                if !r.contains(x) {
                    continue;
                }
                // grow q maximal with q·x ⊆ r from the top filter
                let mut q = FilterSet {
                    mask: upset_mask(l, l.top),
                };
                loop {
                    let mut grew = false;
                    for y in 0..n {
                        if q.contains(y) {
                            continue;
                        }
                        let candidate = plus(l, q, y);
                        if candidate & (1 << l.bottom) != 0 {
                            continue;
                        }
                        let cand_filter = FilterSet { mask: candidate };
                        let all_in = cand_filter
                            .elements(n)
                            .iter()
                            .all(|&z| r.contains(h.app(z, x)));
                        if all_in {
                            q = cand_filter;
                            grew = true;
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                count += 1;
                if !is_prime_filter(l, q.mask) {
                    ok = false;
                }
            }
        }
        push(&mut report, "maximal-against-prime", ok, format!("{count} instances"));
    }

    // the adjoint preimage of a prime is up-closed and meet-closed, though
    // possibly inconsistent
    {
        let mut ok = true;
        let mut inconsistent = 0usize;
        for q in &primes {
            for y in 0..n {
                let mut mask = 0u64;
                for x in 0..n {
                    if q.contains(h.ppa(y, x)) {
                        mask |= 1 << x;
                    }
                }
                // up-closure and meet-closure
                for x in 0..n {
                    if mask & (1 << x) == 0 {
                        continue;
                    }
                    for z in 0..n {
                        if l.leq(x, z) && mask & (1 << z) == 0 {
                            ok = false;
                        }
                        if mask & (1 << z) != 0 && mask & (1 << l.meet(x, z)) == 0 {
                            ok = false;
                        }
                    }
                }
                if mask & (1 << l.bottom) != 0 {
                    inconsistent += 1;
                }
            }
        }
        push(
            &mut report,
            "adjoint-preimage-closure",
            ok,
            format!("{inconsistent} inconsistent instances allowed"),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// Input format

/// Parses a lattice description: either an element count followed by
/// `i <= j` lines, or a `poset N` header followed by `i < j` cover pairs for
/// Birkhoff generation. `#` starts a comment.
pub fn parse_lattice_file(src: &str) -> Result<FiniteDL, LatticeError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or(LatticeError::Input {
        line: 0,
        message: "empty input".into(),
    })?;
    let err = |line: usize, message: String| LatticeError::Input { line, message };

    if let Some(rest) = first.strip_prefix("poset") {
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| err(first_no, "expected `poset N`".into()))?;
        let mut pairs = Vec::new();
        for (no, line) in lines {
            let Some((i, j)) = line.split_once('<') else {
                return Err(err(no, "expected `i < j`".into()));
            };
            let i: usize = i.trim().parse().map_err(|_| err(no, "bad index".into()))?;
            let j: usize = j.trim().parse().map_err(|_| err(no, "bad index".into()))?;
            pairs.push((i, j));
        }
        let poset = Poset::from_pairs(n, &pairs)?;
        Ok(FiniteDL::birkhoff_from_poset(&poset))
    } else {
        let n: usize = first
            .parse()
            .map_err(|_| err(first_no, "expected an element count or `poset N`".into()))?;
        let mut pairs = Vec::new();
        for (no, line) in lines {
            let Some((i, j)) = line.split_once("<=") else {
                return Err(err(no, "expected `i <= j`".into()));
            };
            let i: usize = i.trim().parse().map_err(|_| err(no, "bad index".into()))?;
            let j: usize = j.trim().parse().map_err(|_| err(no, "bad index".into()))?;
            pairs.push((i, j));
        }
        FiniteDL::from_leq_pairs(n, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean4() -> FiniteDL {
        // bottom=0, atoms 1,2, top=3
        FiniteDL::from_leq_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn chain(k: usize) -> FiniteDL {
        let pairs: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        FiniteDL::from_leq_pairs(k, &pairs).unwrap()
    }

    #[test]
    fn birkhoff_small_cases() {
        // antichain of 2 gives the 4-element Boolean lattice
        let p = Poset::from_pairs(2, &[]).unwrap();
        assert_eq!(FiniteDL::birkhoff_from_poset(&p).size(), 4);
        // chain of 2 gives the 3-element chain
        let p = Poset::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(FiniteDL::birkhoff_from_poset(&p).size(), 3);
        // empty poset gives the 1-element lattice
        let p = Poset::from_pairs(0, &[]).unwrap();
        assert_eq!(FiniteDL::birkhoff_from_poset(&p).size(), 1);
    }

    #[test]
    fn prime_filters_examples() {
        // 2-chain: exactly the top filter
        let l = chain(2);
        let primes = enumerate_prime_filters(&l);
        assert_eq!(primes.len(), 1);
        assert!(primes[0].contains(l.top));
        // 4-element Boolean: the two atom up-sets
        let l = boolean4();
        let primes = enumerate_prime_filters(&l);
        assert_eq!(primes.len(), 2);
        for p in &primes {
            assert!(is_filter(&l, p.mask));
        }
        // 1-element lattice: none
        let p = Poset::from_pairs(0, &[]).unwrap();
        let l = FiniteDL::birkhoff_from_poset(&p);
        assert!(enumerate_prime_filters(&l).is_empty());
    }

    #[test]
    fn plus_examples() {
        let l = boolean4();
        // from the top filter, adding y gives y's up-set
        let top_filter = FilterSet {
            mask: upset_mask(&l, l.top),
        };
        assert_eq!(plus(&l, top_filter, 1), upset_mask(&l, 1));
        // adding an element already present is a no-op
        let f = FilterSet {
            mask: upset_mask(&l, 1),
        };
        assert_eq!(plus(&l, f, 1), f.mask);
        // adding the complement atom forces inconsistency
        let grown = plus(&l, f, 2);
        assert!(grown & (1 << l.bottom) != 0);
        assert!(!is_filter(&l, grown));
    }

    #[test]
    fn extend_to_prime_examples() {
        let l = boolean4();
        let top_filter = FilterSet {
            mask: upset_mask(&l, l.top),
        };
        let q = extend_to_prime(&l, top_filter, 1 << l.bottom).unwrap();
        // deterministic least-index greedy lands on the first atom's up-set
        assert_eq!(q.mask, upset_mask(&l, 1));
        // disjointness violations are an argument error
        assert!(extend_to_prime(&l, top_filter, upset_mask(&l, l.top)).is_err());
    }

    #[test]
    fn rep_map_examples() {
        let l = boolean4();
        let primes = enumerate_prime_filters(&l);
        assert_eq!(rep_map(&l, &primes, l.bottom), 0);
        assert_eq!(
            rep_map(&l, &primes, l.top),
            (1 << primes.len()) - 1
        );
        // an atom is contained in exactly its own up-set
        assert_eq!(rep_map(&l, &primes, 1).count_ones(), 1);
    }

    #[test]
    fn heyting_examples() {
        // 3-chain 0 < 1 < 2: 1 -> 0 is 0, and the counit holds
        let l = chain(3);
        let h = heyting_ops(&l);
        assert_eq!(h.ppa(1, 0), 0);
        assert!(l.leq(l.meet(h.ppa(1, 0), 1), 0));
        // u -> top is top
        for u in 0..3 {
            assert_eq!(h.ppa(u, l.top), l.top);
        }
    }

    #[test]
    fn duality_suite_on_fixed_lattices() {
        for l in [boolean4(), chain(2), chain(3), chain(5)] {
            let report = check_duality(&l).unwrap();
            assert_eq!(report.refuted(), 0, "{report}");
        }
    }

    #[test]
    fn duality_suite_on_random_birkhoff() {
        for seed in 0..10 {
            let poset = random_poset(4, seed);
            let l = FiniteDL::birkhoff_from_poset(&poset);
            let report = check_duality(&l).unwrap();
            assert_eq!(report.refuted(), 0, "seed {seed}: {report}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let poset = Poset::from_pairs(6, &[]).unwrap();
        let l = FiniteDL::birkhoff_from_poset(&poset);
        assert_eq!(l.size(), 64);
        assert!(matches!(
            check_duality(&l),
            Err(LatticeError::CapExceeded(64, 32))
        ));
    }

    #[test]
    fn parse_lattice_inputs() {
        let l = parse_lattice_file("4\n0 <= 1\n0 <= 2\n1 <= 3\n2 <= 3\n").unwrap();
        assert_eq!(l.size(), 4);
        let l = parse_lattice_file("poset 2\n0 < 1\n").unwrap();
        assert_eq!(l.size(), 3);
        assert!(parse_lattice_file("2\n0 <= 1\n1 <= 0\n").is_err());
        assert!(parse_lattice_file("nonsense\n").is_err());
    }

    #[test]
    fn non_distributive_rejected() {
        // the diamond M3: bottom, three incomparable middles, top
        let err = FiniteDL::from_leq_pairs(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        );
        assert!(matches!(err, Err(LatticeError::NotDistributive(_, _, _))));
    }
}
