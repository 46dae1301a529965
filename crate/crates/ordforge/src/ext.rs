//! Extended notation systems built from base decompositions.
//!
//! Two layers live here:
//!
//! * [`CoeffTerm`] — finitary Veblen normal forms `phi(a_1, ..., a_k)` of
//!   arbitrary arity. These serve as exponents and coefficients of the
//!   extended systems and strictly extend the binary forms of [`crate::ord`]
//!   (any binary term embeds via [`embed_ord`]).
//! * [`ExtTerm`] — normal forms `B^{a_1}·b_1 + ... + B^{a_n}·b_n` over a
//!   distinguished base `B`, in two flavours selected by [`ExtSystem`]:
//!   the `k` system, whose exponents are coefficient terms, and the `l`
//!   system, whose exponents are themselves short base-`l` towers
//!   `Σ l^g · d` with finite `g`.
//!
//! Every limit term carries a canonical cofinal family
//! ([`canonical_family`]), indexed either by coefficients below a bound or
//! by all coefficients (the unbounded, higher-type case), and each term has
//! a type ([`type_of`]) recording how many tower levels its family
//! penetrates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::ord::{OrdTerm, TermClass};
use crate::OrdError;

// ---------------------------------------------------------------------------
// Finitary Veblen coefficient terms
// ---------------------------------------------------------------------------

/// Sum of finitary Veblen principals, nonincreasing, repeats allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CoeffTerm {
    summands: Vec<FvPrincipal>,
}

/// A principal term `phi(args)` with arity ≥ 1. The leading argument is
/// nonzero whenever the arity exceeds 1, and no argument triggers the
/// fixed-point collapse below, so representation is unique.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FvPrincipal {
    args: Vec<CoeffTerm>,
}

impl FvPrincipal {
    pub fn args(&self) -> &[CoeffTerm] {
        &self.args
    }

    fn is_unit(&self) -> bool {
        self.args.len() == 1 && self.args[0].is_zero()
    }

    /// Entry at distance `r` from the right end (`r = 0` is the last
    /// argument); zero when out of range.
    fn entry(&self, r: usize) -> &CoeffTerm {
        static ZERO: CoeffTerm = CoeffTerm { summands: Vec::new() };
        if r < self.args.len() {
            &self.args[self.args.len() - 1 - r]
        } else {
            &ZERO
        }
    }

    fn top_position(&self) -> usize {
        self.args.len() - 1
    }
}

/// Does the index part of `q` dominate `args` above position `l`?
///
/// Positions count from the right end of each argument vector; the entries
/// of `q` and `args` strictly above `l` are compared lexicographically from
/// the top. This is the fixed-point criterion: `phi(args)` with zeros below
/// position `l` and `q` at position `l` denotes `q` itself exactly when the
/// comparison comes out strictly greater.
fn dominates_above(q: &FvPrincipal, args: &[CoeffTerm], l: usize) -> bool {
    let entry = |r: usize| -> &CoeffTerm {
        static ZERO: CoeffTerm = CoeffTerm { summands: Vec::new() };
        if r < args.len() {
            &args[args.len() - 1 - r]
        } else {
            &ZERO
        }
    };
    let top = q.top_position().max(args.len().saturating_sub(1));
    for pos in ((l + 1)..=top).rev() {
        match q.entry(pos).cmp(entry(pos)) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => continue,
        }
    }
    false
}

fn cmp_fvp(p: &FvPrincipal, q: &FvPrincipal) -> Ordering {
    let top = p.top_position().max(q.top_position());
    for pos in (1..=top).rev() {
        match p.entry(pos).cmp(q.entry(pos)) {
            Ordering::Equal => continue,
            Ordering::Less => {
                // q sits higher in the hierarchy; p stays below it exactly
                // when everything p carries beneath the difference does.
                for r in (0..pos).rev() {
                    if cmp_fvterm_principal(p.entry(r), q) != Ordering::Less {
                        return Ordering::Greater;
                    }
                }
                return Ordering::Less;
            }
            Ordering::Greater => {
                for r in (0..pos).rev() {
                    if cmp_fvterm_principal(q.entry(r), p) != Ordering::Less {
                        return Ordering::Less;
                    }
                }
                return Ordering::Greater;
            }
        }
    }
    p.entry(0).cmp(q.entry(0))
}

fn cmp_fvterm_principal(t: &CoeffTerm, p: &FvPrincipal) -> Ordering {
    match t.summands.as_slice() {
        [] => Ordering::Less,
        [s] => cmp_fvp(s, p),
        [s, ..] => match cmp_fvp(s, p) {
            Ordering::Less => Ordering::Less,
            _ => Ordering::Greater,
        },
    }
}

impl Ord for CoeffTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        for (p, q) in self.summands.iter().zip(other.summands.iter()) {
            match cmp_fvp(p, q) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.summands.len().cmp(&other.summands.len())
    }
}

impl PartialOrd for CoeffTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CoeffTerm {
    pub fn zero() -> CoeffTerm {
        CoeffTerm { summands: vec![] }
    }

    pub fn one() -> CoeffTerm {
        fv_veblen(&[CoeffTerm::zero()])
    }

    pub fn from_nat(n: u64) -> CoeffTerm {
        let unit = FvPrincipal {
            args: vec![CoeffTerm::zero()],
        };
        CoeffTerm {
            summands: vec![unit; n as usize],
        }
    }

    pub fn omega() -> CoeffTerm {
        fv_veblen(&[CoeffTerm::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_nat() == Some(1)
    }

    pub fn summands(&self) -> &[FvPrincipal] {
        &self.summands
    }

    pub fn as_single_principal(&self) -> Option<&FvPrincipal> {
        match self.summands.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        if self.summands.iter().all(|p| p.is_unit()) {
            Some(self.summands.len() as u64)
        } else {
            None
        }
    }

    pub fn classify(&self) -> TermClass {
        match self.summands.last() {
            None => TermClass::Zero,
            Some(p) if p.is_unit() => TermClass::Successor,
            Some(_) => TermClass::Limit,
        }
    }

    pub fn add(&self, other: &CoeffTerm) -> CoeffTerm {
        let Some(lead) = other.summands.first() else {
            return self.clone();
        };
        let mut kept: Vec<FvPrincipal> = self
            .summands
            .iter()
            .take_while(|p| cmp_fvp(p, lead) != Ordering::Less)
            .cloned()
            .collect();
        kept.extend(other.summands.iter().cloned());
        CoeffTerm { summands: kept }
    }

    /// Ordinal multiplication, distributing over the right argument.
    pub fn mul(&self, other: &CoeffTerm) -> CoeffTerm {
        if self.is_zero() || other.is_zero() {
            return CoeffTerm::zero();
        }
        let lead_log = fvp_log(&self.summands[0]);
        let mut acc = CoeffTerm::zero();
        for q in &other.summands {
            if q.is_unit() {
                acc = acc.add(self);
            } else {
                let exp = lead_log.add(&fvp_log(q));
                acc = acc.add(&fv_omega_pow(&exp));
            }
        }
        acc
    }

    pub fn pred(&self) -> Result<CoeffTerm, OrdError> {
        match self.classify() {
            TermClass::Successor => {
                let mut s = self.summands.clone();
                s.pop();
                Ok(CoeffTerm { summands: s })
            }
            _ => Err(OrdError::NotSuccessor(render_coeff(self))),
        }
    }

    pub fn is_normal(&self) -> bool {
        fn principal_normal(p: &FvPrincipal) -> bool {
            if p.args.is_empty() {
                return false;
            }
            if p.args.len() >= 2 && p.args[0].is_zero() {
                return false;
            }
            if !p.args.iter().all(CoeffTerm::is_normal) {
                return false;
            }
            collapse_target(&p.args).is_none()
        }
        self.summands.iter().all(principal_normal)
            && self
                .summands
                .windows(2)
                .all(|w| cmp_fvp(&w[0], &w[1]) != Ordering::Less)
    }
}

/// The exponent x with `p = phi(x)` as a base-ω power. Principals of arity
/// ≥ 2 are fixed points of that map and are their own logarithm.
fn fvp_log(p: &FvPrincipal) -> CoeffTerm {
    if p.args.len() == 1 {
        p.args[0].clone()
    } else {
        CoeffTerm {
            summands: vec![p.clone()],
        }
    }
}

/// When `phi(args)` denotes one of its own entries, that entry: the last
/// nonzero entry, provided it is a single principal whose index part
/// dominates ours above its position.
fn collapse_target(args: &[CoeffTerm]) -> Option<CoeffTerm> {
    let from_right = args.iter().rev().position(|a| !a.is_zero())?;
    let idx = args.len() - 1 - from_right;
    let q = args[idx].as_single_principal()?;
    if dominates_above(q, args, from_right) {
        Some(args[idx].clone())
    } else {
        None
    }
}

/// Normal form of `phi(args)` for any arity ≥ 1: strips leading zeros and
/// applies the fixed-point collapse.
pub fn fv_veblen(args: &[CoeffTerm]) -> CoeffTerm {
    let mut args = args.to_vec();
    while args.len() > 1 && args[0].is_zero() {
        args.remove(0);
    }
    assert!(!args.is_empty(), "a principal needs at least one argument");
    if let Some(t) = collapse_target(&args) {
        return t;
    }
    CoeffTerm {
        summands: vec![FvPrincipal { args }],
    }
}

/// `ω^a` in the coefficient system, i.e. unary `phi(a)`.
pub fn fv_omega_pow(a: &CoeffTerm) -> CoeffTerm {
    fv_veblen(&[a.clone()])
}

/// Convenience constructor from natural-number arguments.
pub fn fv_from_nats(args: &[u64]) -> CoeffTerm {
    let v: Vec<CoeffTerm> = args.iter().map(|&n| CoeffTerm::from_nat(n)).collect();
    fv_veblen(&v)
}

/// Embed a binary Veblen form: `phi(0, b)` becomes unary `phi(b)` and
/// `phi(a, b)` with nonzero `a` keeps both arguments.
pub fn embed_ord(t: &OrdTerm) -> CoeffTerm {
    let mut acc = CoeffTerm::zero();
    for p in t.summands() {
        let index = embed_ord(p.index());
        let arg = embed_ord(p.arg());
        let principal = if index.is_zero() {
            fv_veblen(&[arg])
        } else {
            fv_veblen(&[index, arg])
        };
        acc = acc.add(&principal);
    }
    acc
}

/// The tower 1, phi(1,0,0), phi(phi(1,0,0),0,0), ... of ternary leaps.
pub fn delta(n: u64) -> CoeffTerm {
    let mut t = CoeffTerm::one();
    for _ in 0..n {
        t = fv_veblen(&[t, CoeffTerm::zero(), CoeffTerm::zero()]);
    }
    t
}

/// Width-k analogue of [`delta`]: each step applies a principal of arity
/// k + 2 with the previous stage as leading argument.
pub fn tilde_delta(n: u64, k: u32) -> CoeffTerm {
    let mut t = CoeffTerm::one();
    for _ in 0..n {
        let mut args = vec![t];
        args.extend(std::iter::repeat(CoeffTerm::zero()).take(k as usize + 1));
        t = fv_veblen(&args);
    }
    t
}

// ---------------------------------------------------------------------------
// Extended base-decomposition terms
// ---------------------------------------------------------------------------

/// Which extended system a term belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtSystem {
    /// Base `k`: exponents are coefficient terms.
    Kappa,
    /// Base `l`: exponents are towers `Σ l^g · d` with finite `g`.
    Lambda,
}

/// One tower layer `l^g · d` of an `l`-system exponent; `d` is a single
/// coefficient principal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LambdaPiece {
    pub g: u32,
    pub d: CoeffTerm,
}

/// Exponent of an extended summand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtExp {
    /// `k` system: an arbitrary coefficient term.
    Plain(CoeffTerm),
    /// `l` system: a nonincreasing list of tower layers (empty = exponent 0).
    Tower(Vec<LambdaPiece>),
}

/// One summand `B^exp · coeff`; the coefficient is a single nonzero
/// coefficient principal, so finite and ω-fold multiples appear as repeated
/// summands and representation stays unique.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtSummand {
    pub exp: ExtExp,
    pub coeff: CoeffTerm,
}

/// Extended term: nonincreasing summands over one base.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtTerm {
    system: ExtSystem,
    summands: Vec<ExtSummand>,
}

fn cmp_piece(a: &LambdaPiece, b: &LambdaPiece) -> Ordering {
    a.g.cmp(&b.g).then_with(|| a.d.cmp(&b.d))
}

fn cmp_pieces(a: &[LambdaPiece], b: &[LambdaPiece]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match cmp_piece(x, y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

fn cmp_exp(a: &ExtExp, b: &ExtExp) -> Ordering {
    match (a, b) {
        (ExtExp::Plain(x), ExtExp::Plain(y)) => x.cmp(y),
        (ExtExp::Tower(x), ExtExp::Tower(y)) => cmp_pieces(x, y),
        // Mixed comparisons only arise transiently; a tower with any layer
        // of positive height exceeds every plain coefficient term.
        (ExtExp::Plain(x), ExtExp::Tower(y)) => {
            cmp_pieces(&plain_pieces(x), y)
        }
        (ExtExp::Tower(x), ExtExp::Plain(y)) => {
            cmp_pieces(x, &plain_pieces(y))
        }
    }
}

/// View a coefficient term as height-0 tower layers.
fn plain_pieces(c: &CoeffTerm) -> Vec<LambdaPiece> {
    c.summands()
        .iter()
        .map(|p| LambdaPiece {
            g: 0,
            d: CoeffTerm {
                summands: vec![p.clone()],
            },
        })
        .collect()
}

fn cmp_summand(a: &ExtSummand, b: &ExtSummand) -> Ordering {
    cmp_exp(&a.exp, &b.exp).then_with(|| a.coeff.cmp(&b.coeff))
}

impl Ord for ExtTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        for (p, q) in self.summands.iter().zip(other.summands.iter()) {
            match cmp_summand(p, q) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.summands.len().cmp(&other.summands.len())
    }
}

impl PartialOrd for ExtTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExtTerm {
    pub fn zero(system: ExtSystem) -> ExtTerm {
        ExtTerm {
            system,
            summands: vec![],
        }
    }

    pub fn from_nat(system: ExtSystem, n: u64) -> ExtTerm {
        let unit = ExtSummand {
            exp: zero_exp(system),
            coeff: CoeffTerm::one(),
        };
        ExtTerm {
            system,
            summands: vec![unit; n as usize],
        }
    }

    /// The base itself: `B^1 · 1`.
    pub fn base(system: ExtSystem) -> ExtTerm {
        ExtTerm {
            system,
            summands: vec![ExtSummand {
                exp: one_exp(system),
                coeff: CoeffTerm::one(),
            }],
        }
    }

    pub fn system(&self) -> ExtSystem {
        self.system
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[ExtSummand] {
        &self.summands
    }

    pub fn add(&self, other: &ExtTerm) -> ExtTerm {
        assert_eq!(self.system, other.system, "mixed-system addition");
        let Some(lead) = other.summands.first() else {
            return self.clone();
        };
        let mut kept: Vec<ExtSummand> = self
            .summands
            .iter()
            .take_while(|p| cmp_summand(p, lead) != Ordering::Less)
            .cloned()
            .collect();
        kept.extend(other.summands.iter().cloned());
        ExtTerm {
            system: self.system,
            summands: kept,
        }
    }

    pub fn classify(&self) -> TermClass {
        match self.summands.last() {
            None => TermClass::Zero,
            Some(s) if is_unit_summand(s) => TermClass::Successor,
            Some(_) => TermClass::Limit,
        }
    }

    pub fn pred(&self) -> Result<ExtTerm, OrdError> {
        match self.classify() {
            TermClass::Successor => {
                let mut s = self.summands.clone();
                s.pop();
                Ok(ExtTerm {
                    system: self.system,
                    summands: s,
                })
            }
            _ => Err(OrdError::NotSuccessor(render_ext(self))),
        }
    }

    pub fn is_normal(&self) -> bool {
        let piece_ok = |pieces: &[LambdaPiece]| {
            pieces.iter().all(|p| {
                p.d.as_single_principal().is_some() && p.d.is_normal()
            }) && pieces
                .windows(2)
                .all(|w| cmp_piece(&w[0], &w[1]) != Ordering::Less)
        };
        let summand_ok = |s: &ExtSummand| {
            let exp_ok = match (&s.exp, self.system) {
                (ExtExp::Plain(c), ExtSystem::Kappa) => c.is_normal(),
                (ExtExp::Tower(p), ExtSystem::Lambda) => piece_ok(p),
                _ => false,
            };
            exp_ok && s.coeff.as_single_principal().is_some() && s.coeff.is_normal()
        };
        self.summands.iter().all(summand_ok)
            && self
                .summands
                .windows(2)
                .all(|w| cmp_summand(&w[0], &w[1]) != Ordering::Less)
    }
}

pub(crate) fn zero_exp(system: ExtSystem) -> ExtExp {
    match system {
        ExtSystem::Kappa => ExtExp::Plain(CoeffTerm::zero()),
        ExtSystem::Lambda => ExtExp::Tower(vec![]),
    }
}

pub(crate) fn one_exp(system: ExtSystem) -> ExtExp {
    match system {
        ExtSystem::Kappa => ExtExp::Plain(CoeffTerm::one()),
        ExtSystem::Lambda => ExtExp::Tower(vec![LambdaPiece {
            g: 0,
            d: CoeffTerm::one(),
        }]),
    }
}

fn exp_is_zero(e: &ExtExp) -> bool {
    match e {
        ExtExp::Plain(c) => c.is_zero(),
        ExtExp::Tower(p) => p.is_empty(),
    }
}

fn is_unit_summand(s: &ExtSummand) -> bool {
    exp_is_zero(&s.exp) && s.coeff.is_one()
}

/// Build `B^exp · coeff` for an arbitrary coefficient term by splitting the
/// coefficient into principal layers.
pub fn ext_single(system: ExtSystem, exp: ExtExp, coeff: &CoeffTerm) -> ExtTerm {
    let summands = coeff
        .summands()
        .iter()
        .map(|p| ExtSummand {
            exp: exp.clone(),
            coeff: CoeffTerm {
                summands: vec![p.clone()],
            },
        })
        .collect();
    ExtTerm { system, summands }
}

/// Normalize an arbitrary (exponent, coefficient) list into a term by
/// summing the pieces in order.
pub fn ext_normalize(system: ExtSystem, parts: &[(ExtExp, CoeffTerm)]) -> ExtTerm {
    let mut acc = ExtTerm::zero(system);
    for (e, c) in parts {
        acc = acc.add(&ext_single(system, e.clone(), c));
    }
    acc
}

/// Tower exponent `Σ l^g · d` from (height, digit) pairs, normalizing by
/// ordinal addition of the layers.
pub fn tower_exp(layers: &[(u32, CoeffTerm)]) -> ExtExp {
    let mut pieces: Vec<LambdaPiece> = vec![];
    for (g, d) in layers {
        for p in d.summands() {
            let piece = LambdaPiece {
                g: *g,
                d: CoeffTerm {
                    summands: vec![p.clone()],
                },
            };
            while let Some(last) = pieces.last() {
                if cmp_piece(last, &piece) == Ordering::Less {
                    pieces.pop();
                } else {
                    break;
                }
            }
            pieces.push(piece);
        }
    }
    ExtExp::Tower(pieces)
}

fn exp_add(e1: &ExtExp, e2: &ExtExp) -> ExtExp {
    match (e1, e2) {
        (ExtExp::Plain(a), ExtExp::Plain(b)) => ExtExp::Plain(a.add(b)),
        (ExtExp::Tower(p), ExtExp::Tower(q)) => {
            let layers: Vec<(u32, CoeffTerm)> = p
                .iter()
                .chain(q.iter())
                .map(|x| (x.g, x.d.clone()))
                .collect();
            tower_exp(&layers)
        }
        _ => unreachable!("mixed exponent shapes"),
    }
}

/// Left-multiply by a single-summand term: `(B^e · c) · b`. Positive-exponent
/// summands of `b` absorb the left coefficient and add exponents; the
/// base-level tail of `b` multiplies into the left coefficient.
pub fn ext_left_mul(lead: &ExtTerm, b: &ExtTerm) -> ExtTerm {
    assert_eq!(
        lead.summands().len(),
        1,
        "left factor must be a single summand"
    );
    let s = &lead.summands()[0];
    let system = lead.system();
    let mut acc = ExtTerm::zero(system);
    let mut tail = CoeffTerm::zero();
    for t in b.summands() {
        if exp_is_zero(&t.exp) {
            tail = tail.add(&t.coeff);
        } else {
            let part = ext_single(system, exp_add(&s.exp, &t.exp), &t.coeff);
            acc = acc.add(&part);
        }
    }
    let tail_part = ext_single(system, s.exp.clone(), &s.coeff.mul(&tail));
    acc.add(&tail_part)
}

/// `(Bω)^a` in the `k` system: 1 at zero, `B^a · ω` at successors,
/// `B^a · 1` at limits (the ω factor is absorbed into the base there).
pub fn kappa_omega_pow(a: &CoeffTerm) -> ExtTerm {
    match a.classify() {
        TermClass::Zero => ExtTerm::from_nat(ExtSystem::Kappa, 1),
        TermClass::Successor => ext_single(
            ExtSystem::Kappa,
            ExtExp::Plain(a.clone()),
            &CoeffTerm::omega(),
        ),
        TermClass::Limit => ext_single(
            ExtSystem::Kappa,
            ExtExp::Plain(a.clone()),
            &CoeffTerm::one(),
        ),
    }
}

// ---------------------------------------------------------------------------
// Types and canonical families
// ---------------------------------------------------------------------------

/// How the canonical family of a term is generated from an index γ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyScheme {
    /// `base + B^exp · γ` for γ below the final coefficient.
    CoeffLimit { exp: ExtExp },
    /// Exponent-limit descent: in the `k` system `base + B^γ · 1` for γ
    /// below the final exponent; in the `l` system
    /// `base + B^{prefix + l^g · γ} · 1` for γ below the final digit.
    ExpLimit {
        lambda_tail: Option<(Vec<LambdaPiece>, u32)>,
    },
    /// Successor exponent peeled once: `base + B^exp · γ` for arbitrary γ.
    ExpSuccessor { exp: ExtExp },
    /// Tower-layer descent (type k ≥ 2):
    /// `base + B^{prefix + l^{k-2} · γ} · 1` for arbitrary γ.
    LambdaTower { k: u32, prefix: Vec<LambdaPiece> },
}

/// Canonical cofinal family of a term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CanonicalFamily {
    /// Zero has no family.
    Empty,
    /// Successors: the single predecessor.
    Finite(Vec<ExtTerm>),
    /// Limits: γ-indexed members, bounded or not.
    Indexed {
        base: ExtTerm,
        scheme: FamilyScheme,
        bound: Option<CoeffTerm>,
    },
}

/// Tower depth a term's family penetrates: 0 for zero, successors, and
/// coefficient- or digit-bounded limits; g + 1 when the final summand is
/// `B^{... + l^g · 1} · 1` (reading a successor `k`-exponent as g = 0).
pub fn type_of(a: &ExtTerm) -> u32 {
    let Some(last) = a.summands.last() else {
        return 0;
    };
    if !last.coeff.is_one() {
        return 0;
    }
    match &last.exp {
        ExtExp::Plain(c) => match c.classify() {
            TermClass::Successor => 1,
            _ => 0,
        },
        ExtExp::Tower(pieces) => match pieces.last() {
            Some(p) if p.d.is_one() => p.g + 1,
            _ => 0,
        },
    }
}

/// The canonical family of `a`.
pub fn canonical_family(a: &ExtTerm) -> CanonicalFamily {
    let Some(last) = a.summands.last().cloned() else {
        return CanonicalFamily::Empty;
    };
    let base = ExtTerm {
        system: a.system,
        summands: a.summands[..a.summands.len() - 1].to_vec(),
    };
    if !last.coeff.is_one() {
        // Final coefficient is an ω-power: descend through it.
        return CanonicalFamily::Indexed {
            base,
            scheme: FamilyScheme::CoeffLimit {
                exp: last.exp.clone(),
            },
            bound: Some(last.coeff.clone()),
        };
    }
    match &last.exp {
        ExtExp::Plain(c) => match c.classify() {
            TermClass::Zero => CanonicalFamily::Finite(vec![base]),
            TermClass::Successor => CanonicalFamily::Indexed {
                base,
                scheme: FamilyScheme::ExpSuccessor {
                    exp: ExtExp::Plain(c.pred().expect("successor")),
                },
                bound: None,
            },
            TermClass::Limit => CanonicalFamily::Indexed {
                base,
                scheme: FamilyScheme::ExpLimit { lambda_tail: None },
                bound: Some(c.clone()),
            },
        },
        ExtExp::Tower(pieces) => {
            let Some(tail) = pieces.last() else {
                return CanonicalFamily::Finite(vec![base]);
            };
            let prefix = pieces[..pieces.len() - 1].to_vec();
            if tail.d.is_one() {
                if tail.g == 0 {
                    // Successor exponent: peel one base factor.
                    CanonicalFamily::Indexed {
                        base,
                        scheme: FamilyScheme::ExpSuccessor {
                            exp: ExtExp::Tower(prefix),
                        },
                        bound: None,
                    }
                } else {
                    CanonicalFamily::Indexed {
                        base,
                        scheme: FamilyScheme::LambdaTower {
                            k: tail.g + 1,
                            prefix,
                        },
                        bound: None,
                    }
                }
            } else {
                // Final digit is an ω-power: descend through it.
                CanonicalFamily::Indexed {
                    base,
                    scheme: FamilyScheme::ExpLimit {
                        lambda_tail: Some((prefix, tail.g)),
                    },
                    bound: Some(tail.d.clone()),
                }
            }
        }
    }
}

/// The γ-th member of a family. `None` when the family is empty, the index
/// exceeds a finite family, or γ is not below the stated bound.
pub fn family_sample(
    system: ExtSystem,
    family: &CanonicalFamily,
    gamma: &CoeffTerm,
) -> Option<ExtTerm> {
    match family {
        CanonicalFamily::Empty => None,
        CanonicalFamily::Finite(xs) => {
            let idx = gamma.as_nat()? as usize;
            xs.get(idx).cloned()
        }
        CanonicalFamily::Indexed {
            base,
            scheme,
            bound,
        } => {
            if let Some(b) = bound {
                if gamma.cmp(b) != Ordering::Less {
                    return None;
                }
            }
            let tail = match scheme {
                FamilyScheme::CoeffLimit { exp } => ext_single(system, exp.clone(), gamma),
                FamilyScheme::ExpLimit { lambda_tail: None } => ext_single(
                    system,
                    ExtExp::Plain(gamma.clone()),
                    &CoeffTerm::one(),
                ),
                FamilyScheme::ExpLimit {
                    lambda_tail: Some((prefix, g)),
                } => {
                    let mut layers: Vec<(u32, CoeffTerm)> = prefix
                        .iter()
                        .map(|p| (p.g, p.d.clone()))
                        .collect();
                    layers.push((*g, gamma.clone()));
                    ext_single(system, tower_exp(&layers), &CoeffTerm::one())
                }
                FamilyScheme::ExpSuccessor { exp } => ext_single(system, exp.clone(), gamma),
                FamilyScheme::LambdaTower { k, prefix } => {
                    let mut layers: Vec<(u32, CoeffTerm)> = prefix
                        .iter()
                        .map(|p| (p.g, p.d.clone()))
                        .collect();
                    layers.push((k - 2, gamma.clone()));
                    ext_single(system, tower_exp(&layers), &CoeffTerm::one())
                }
            };
            Some(base.add(&tail))
        }
    }
}

/// For a term of type ≥ 1, the γ-th member of its unbounded family.
pub fn h_sample(a: &ExtTerm, gamma: &CoeffTerm) -> Option<ExtTerm> {
    match canonical_family(a) {
        f @ CanonicalFamily::Indexed { bound: None, .. } => {
            family_sample(a.system, &f, gamma)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Size-based enumerations
// ---------------------------------------------------------------------------

pub fn fv_size(t: &CoeffTerm) -> u64 {
    t.summands
        .iter()
        .map(|p| p.args.len() as u64 + p.args.iter().map(fv_size).sum::<u64>())
        .sum()
}

fn exp_size(e: &ExtExp) -> u64 {
    match e {
        ExtExp::Plain(c) => fv_size(c),
        ExtExp::Tower(pieces) => pieces
            .iter()
            .map(|p| 1 + p.g as u64 + fv_size(&p.d))
            .sum(),
    }
}

pub fn ext_size(t: &ExtTerm) -> u64 {
    t.summands
        .iter()
        .map(|s| 1 + exp_size(&s.exp) + fv_size(&s.coeff))
        .sum()
}

struct FvEnum {
    terms_by_size: Vec<Vec<CoeffTerm>>,
    principals_by_size: Vec<Vec<FvPrincipal>>,
    flat: Vec<CoeffTerm>,
    codes: HashMap<CoeffTerm, u64>,
}

impl FvEnum {
    fn new() -> FvEnum {
        let mut codes = HashMap::new();
        codes.insert(CoeffTerm::zero(), 0);
        FvEnum {
            terms_by_size: vec![vec![CoeffTerm::zero()]],
            principals_by_size: vec![vec![]],
            flat: vec![CoeffTerm::zero()],
            codes,
        }
    }

    fn ensure_size(&mut self, size: u64) {
        while (self.terms_by_size.len() as u64) <= size {
            let s = self.terms_by_size.len() as u64;
            let mut principals = vec![];
            // Arity k costs k slots; distribute the remaining size over
            // the argument vector.
            for k in 1..=s {
                let mut args: Vec<CoeffTerm> = vec![];
                gen_args(
                    &self.terms_by_size,
                    k as usize,
                    s - k,
                    &mut args,
                    &mut principals,
                );
            }
            self.principals_by_size.push(principals);
            let mut terms = vec![];
            let mut stack: Vec<FvPrincipal> = vec![];
            gen_fv_sums(&self.principals_by_size, s, None, &mut stack, &mut terms);
            terms.sort();
            let start = self.flat.len() as u64;
            for (k, t) in terms.iter().enumerate() {
                self.codes.insert(t.clone(), start + k as u64);
            }
            self.flat.extend(terms.iter().cloned());
            self.terms_by_size.push(terms);
        }
    }

    fn ensure_count(&mut self, n: u64) {
        while (self.flat.len() as u64) <= n {
            let next = self.terms_by_size.len() as u64;
            self.ensure_size(next);
        }
    }
}

fn gen_args(
    terms: &[Vec<CoeffTerm>],
    remaining_slots: usize,
    budget: u64,
    stack: &mut Vec<CoeffTerm>,
    out: &mut Vec<FvPrincipal>,
) {
    if remaining_slots == 0 {
        if budget == 0 {
            let args = stack.clone();
            let stripped_ok = args.len() == 1 || !args[0].is_zero();
            if stripped_ok && collapse_target(&args).is_none() {
                out.push(FvPrincipal { args });
            }
        }
        return;
    }
    for sz in 0..=budget {
        for t in &terms[sz as usize] {
            stack.push(t.clone());
            gen_args(terms, remaining_slots - 1, budget - sz, stack, out);
            stack.pop();
        }
    }
}

fn gen_fv_sums(
    principals: &[Vec<FvPrincipal>],
    remaining: u64,
    bound: Option<&FvPrincipal>,
    stack: &mut Vec<FvPrincipal>,
    out: &mut Vec<CoeffTerm>,
) {
    if remaining == 0 {
        out.push(CoeffTerm {
            summands: stack.clone(),
        });
        return;
    }
    for k in 1..=remaining {
        for p in &principals[k as usize] {
            if let Some(b) = bound {
                if cmp_fvp(p, b) == Ordering::Greater {
                    continue;
                }
            }
            stack.push(p.clone());
            gen_fv_sums(principals, remaining - k, Some(p), stack, out);
            stack.pop();
        }
    }
}

fn fv_cache() -> &'static Mutex<FvEnum> {
    static CACHE: OnceLock<Mutex<FvEnum>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(FvEnum::new()))
}

/// Position of a coefficient term in the size-then-order enumeration.
pub fn fv_encode_nat(t: &CoeffTerm) -> u64 {
    let mut c = fv_cache().lock().expect("enumeration cache poisoned");
    c.ensure_size(fv_size(t));
    *c.codes.get(t).expect("normal term is enumerated")
}

/// Inverse of [`fv_encode_nat`].
pub fn fv_decode_nat(n: u64) -> CoeffTerm {
    let mut c = fv_cache().lock().expect("enumeration cache poisoned");
    c.ensure_count(n);
    c.flat[n as usize].clone()
}

struct ExtEnum {
    terms_by_size: Vec<Vec<ExtTerm>>,
    summands_by_size: Vec<Vec<ExtSummand>>,
    flat: Vec<ExtTerm>,
    codes: HashMap<ExtTerm, u64>,
    system: ExtSystem,
}

impl ExtEnum {
    fn new(system: ExtSystem) -> ExtEnum {
        let mut codes = HashMap::new();
        codes.insert(ExtTerm::zero(system), 0);
        ExtEnum {
            terms_by_size: vec![vec![ExtTerm::zero(system)]],
            summands_by_size: vec![vec![]],
            flat: vec![ExtTerm::zero(system)],
            codes,
            system,
        }
    }

    fn exps_of_size(&self, size: u64) -> Vec<ExtExp> {
        match self.system {
            ExtSystem::Kappa => {
                let mut c = fv_cache().lock().expect("enumeration cache poisoned");
                c.ensure_size(size);
                c.terms_by_size[size as usize]
                    .iter()
                    .map(|t| ExtExp::Plain(t.clone()))
                    .collect()
            }
            ExtSystem::Lambda => {
                // Piece lists of total size `size`; each piece costs
                // 1 + g + |d| with d a nonzero principal.
                let digit_principals: Vec<(u64, CoeffTerm)> = {
                    let mut c = fv_cache().lock().expect("enumeration cache poisoned");
                    c.ensure_size(size);
                    let mut v = vec![];
                    for sz in 1..=size {
                        for p in &c.principals_by_size[sz as usize] {
                            v.push((
                                sz,
                                CoeffTerm {
                                    summands: vec![p.clone()],
                                },
                            ));
                        }
                    }
                    v
                };
                let mut out = vec![];
                let mut stack: Vec<LambdaPiece> = vec![];
                fn rec(
                    digits: &[(u64, CoeffTerm)],
                    remaining: u64,
                    bound: Option<&LambdaPiece>,
                    stack: &mut Vec<LambdaPiece>,
                    out: &mut Vec<ExtExp>,
                ) {
                    if remaining == 0 {
                        out.push(ExtExp::Tower(stack.clone()));
                        return;
                    }
                    for (dsz, d) in digits {
                        if dsz + 1 > remaining {
                            continue;
                        }
                        let max_g = remaining - dsz - 1;
                        for g in 0..=max_g.min(u32::MAX as u64) {
                            let piece = LambdaPiece {
                                g: g as u32,
                                d: d.clone(),
                            };
                            if let Some(b) = bound {
                                if cmp_piece(&piece, b) == Ordering::Greater {
                                    continue;
                                }
                            }
                            let cost = 1 + g + dsz;
                            let next_bound = piece.clone();
                            stack.push(piece);
                            rec(digits, remaining - cost, Some(&next_bound), stack, out);
                            stack.pop();
                        }
                    }
                }
                rec(&digit_principals, size, None, &mut stack, &mut out);
                out
            }
        }
    }

    fn ensure_size(&mut self, size: u64) {
        while (self.terms_by_size.len() as u64) <= size {
            let s = self.terms_by_size.len() as u64;
            let mut summands = vec![];
            // 1 + |exp| + |coeff| = s with a nonzero principal coefficient.
            let coeff_principals: Vec<(u64, CoeffTerm)> = {
                let mut c = fv_cache().lock().expect("enumeration cache poisoned");
                c.ensure_size(s);
                let mut v = vec![];
                for sz in 1..s {
                    for p in &c.principals_by_size[sz as usize] {
                        v.push((
                            sz,
                            CoeffTerm {
                                summands: vec![p.clone()],
                            },
                        ));
                    }
                }
                v
            };
            for (csz, coeff) in &coeff_principals {
                let esz = s - 1 - csz;
                for exp in self.exps_of_size(esz) {
                    summands.push(ExtSummand {
                        exp,
                        coeff: coeff.clone(),
                    });
                }
            }
            self.summands_by_size.push(summands);
            let mut terms = vec![];
            let mut stack: Vec<ExtSummand> = vec![];
            gen_ext_sums(
                &self.summands_by_size,
                self.system,
                s,
                None,
                &mut stack,
                &mut terms,
            );
            terms.sort();
            let start = self.flat.len() as u64;
            for (k, t) in terms.iter().enumerate() {
                self.codes.insert(t.clone(), start + k as u64);
            }
            self.flat.extend(terms.iter().cloned());
            self.terms_by_size.push(terms);
        }
    }

    fn ensure_count(&mut self, n: u64) {
        while (self.flat.len() as u64) <= n {
            let next = self.terms_by_size.len() as u64;
            self.ensure_size(next);
        }
    }
}

fn gen_ext_sums(
    summands: &[Vec<ExtSummand>],
    system: ExtSystem,
    remaining: u64,
    bound: Option<&ExtSummand>,
    stack: &mut Vec<ExtSummand>,
    out: &mut Vec<ExtTerm>,
) {
    if remaining == 0 {
        out.push(ExtTerm {
            system,
            summands: stack.clone(),
        });
        return;
    }
    for k in 1..=remaining {
        for p in &summands[k as usize] {
            if let Some(b) = bound {
                if cmp_summand(p, b) == Ordering::Greater {
                    continue;
                }
            }
            stack.push(p.clone());
            gen_ext_sums(summands, system, remaining - k, Some(p), stack, out);
            stack.pop();
        }
    }
}

fn ext_cache(system: ExtSystem) -> &'static Mutex<ExtEnum> {
    static KAPPA: OnceLock<Mutex<ExtEnum>> = OnceLock::new();
    static LAMBDA: OnceLock<Mutex<ExtEnum>> = OnceLock::new();
    match system {
        ExtSystem::Kappa => KAPPA.get_or_init(|| Mutex::new(ExtEnum::new(ExtSystem::Kappa))),
        ExtSystem::Lambda => LAMBDA.get_or_init(|| Mutex::new(ExtEnum::new(ExtSystem::Lambda))),
    }
}

/// Position of an extended term in its system's size-then-order enumeration.
pub fn ext_encode_nat(t: &ExtTerm) -> u64 {
    let mut c = ext_cache(t.system).lock().expect("enumeration cache poisoned");
    c.ensure_size(ext_size(t));
    *c.codes.get(t).expect("normal term is enumerated")
}

/// Inverse of [`ext_encode_nat`] for the given system.
pub fn ext_decode_nat(system: ExtSystem, n: u64) -> ExtTerm {
    let mut c = ext_cache(system).lock().expect("enumeration cache poisoned");
    c.ensure_count(n);
    c.flat[n as usize].clone()
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Canonical text for a coefficient term: decimal for finite values,
/// otherwise `phi(...)` summands with a trailing decimal run.
pub fn render_coeff(t: &CoeffTerm) -> String {
    if let Some(n) = t.as_nat() {
        return n.to_string();
    }
    let mut parts: Vec<String> = vec![];
    let s = &t.summands;
    let mut i = 0;
    while i < s.len() {
        if s[i].is_unit() {
            parts.push((s.len() - i).to_string());
            break;
        }
        let args: Vec<String> = s[i].args.iter().map(render_coeff).collect();
        let txt = format!("phi({})", args.join(","));
        let mut run = 1;
        while i + run < s.len() && s[i + run] == s[i] {
            run += 1;
        }
        parts.push(if run == 1 {
            txt
        } else {
            format!("{txt}*{run}")
        });
        i += run;
    }
    parts.join(" + ")
}

impl fmt::Display for CoeffTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_coeff(self))
    }
}

fn base_letter(system: ExtSystem) -> &'static str {
    match system {
        ExtSystem::Kappa => "k",
        ExtSystem::Lambda => "l",
    }
}

fn coeff_is_atomic(c: &CoeffTerm) -> bool {
    c.as_nat().is_some() || c.as_single_principal().is_some()
}

/// Canonical text for an exponent, in the same spelling `render_ext` uses
/// inside `B^(...)`.
pub fn render_exp(system: ExtSystem, e: &ExtExp) -> String {
    render_exp_atomic(system, e).0
}

fn render_exp_atomic(system: ExtSystem, e: &ExtExp) -> (String, bool) {
    // Returns the text and whether it is atomic (safe after `^` unparenthesized).
    match e {
        ExtExp::Plain(c) => (render_coeff(c), coeff_is_atomic(c)),
        ExtExp::Tower(pieces) => {
            let b = base_letter(system);
            let mut parts: Vec<String> = vec![];
            let mut i = 0;
            while i < pieces.len() {
                let p = &pieces[i];
                if p.g == 0 && p.d.is_one() {
                    // Nonincreasing order puts all unit layers at the tail.
                    parts.push((pieces.len() - i).to_string());
                    break;
                }
                let txt = if p.g == 0 {
                    render_coeff(&p.d)
                } else {
                    let head = if p.g == 1 {
                        b.to_string()
                    } else {
                        format!("{b}^{}", p.g)
                    };
                    if p.d.is_one() {
                        head
                    } else {
                        format!("{head}*{}", render_coeff(&p.d))
                    }
                };
                let mut run = 1;
                while i + run < pieces.len() && pieces[i + run] == *p {
                    run += 1;
                }
                parts.push(if run == 1 {
                    txt
                } else {
                    format!("{txt}*{run}")
                });
                i += run;
            }
            let atomic =
                parts.len() == 1 && !parts[0].contains('+') && !parts[0].contains('*');
            (parts.join(" + "), atomic)
        }
    }
}

/// Canonical text for an extended term: summands `B^E*C` with the obvious
/// abbreviations (`B` for `B^1*1`, dropped `*1`, plain coefficients for
/// exponent zero, trailing decimal run).
pub fn render_ext(t: &ExtTerm) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let b = base_letter(t.system);
    let mut parts: Vec<String> = vec![];
    let s = &t.summands;
    let mut i = 0;
    while i < s.len() {
        if is_unit_summand(&s[i]) {
            parts.push((s.len() - i).to_string());
            break;
        }
        let sm = &s[i];
        let txt = if exp_is_zero(&sm.exp) {
            render_coeff(&sm.coeff)
        } else {
            let one_exp = match &sm.exp {
                ExtExp::Plain(c) => c.is_one(),
                ExtExp::Tower(p) => p.len() == 1 && p[0].g == 0 && p[0].d.is_one(),
            };
            let head = if one_exp {
                b.to_string()
            } else {
                let (etxt, atomic) = render_exp_atomic(t.system, &sm.exp);
                if atomic {
                    format!("{b}^{etxt}")
                } else {
                    format!("{b}^({etxt})")
                }
            };
            if sm.coeff.is_one() {
                head
            } else {
                format!("{head}*{}", render_coeff(&sm.coeff))
            }
        };
        let mut run = 1;
        while i + run < s.len() && s[i + run] == *sm {
            run += 1;
        }
        parts.push(if run == 1 {
            txt
        } else {
            format!("{txt}*{run}")
        });
        i += run;
    }
    parts.join(" + ")
}

impl fmt::Display for ExtTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ext(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ord::{self, veblen};

    fn fv(args: &[u64]) -> CoeffTerm {
        fv_from_nats(args)
    }

    #[test]
    fn coeff_compare_chain() {
        // 0 < 1 < 2 < ω < ω+1 < ω^ω < ε₀ < Γ₀ < phi(1,0,0,0)
        let chain = vec![
            CoeffTerm::zero(),
            CoeffTerm::one(),
            CoeffTerm::from_nat(2),
            CoeffTerm::omega(),
            CoeffTerm::omega().add(&CoeffTerm::one()),
            fv_omega_pow(&CoeffTerm::omega()),
            fv(&[1, 0]),
            fv(&[1, 0, 0]),
            fv(&[1, 0, 0, 0]),
        ];
        for i in 0..chain.len() {
            for j in 0..chain.len() {
                assert_eq!(chain[i].cmp(&chain[j]), i.cmp(&j), "at {i},{j}");
                assert!(chain[i].is_normal());
            }
        }
    }

    #[test]
    fn collapse_rules() {
        // leading zeros strip
        assert_eq!(fv(&[0, 0, 5]), fv(&[5]));
        assert_eq!(fv(&[5]), fv_omega_pow(&CoeffTerm::from_nat(5)));
        // fixed points of lower maps collapse
        let g0 = fv(&[1, 0, 0]);
        assert_eq!(fv_veblen(&[g0.clone(), CoeffTerm::zero()]), g0);
        assert_eq!(fv_omega_pow(&g0), g0);
        assert_eq!(fv_veblen(&[CoeffTerm::one(), fv(&[2, 0])]), fv(&[2, 0]));
        // equal index parts do not collapse
        let t = fv_veblen(&[CoeffTerm::one(), g0.clone(), CoeffTerm::zero()]);
        assert!(t.as_single_principal().unwrap().args().len() == 3);
        assert!(t.cmp(&g0) == Ordering::Greater);
        assert!(t.is_normal());
    }

    #[test]
    fn binary_embedding_preserves_order_and_codes() {
        let mut terms: Vec<(OrdTerm, CoeffTerm)> = vec![];
        for n in 0..400 {
            let t = ord::decode_nat(n);
            let e = embed_ord(&t);
            assert!(e.is_normal(), "embed of {t}");
            terms.push((t, e));
        }
        for (a, ea) in &terms {
            for (b, eb) in &terms {
                assert_eq!(a.cmp(b), ea.cmp(eb), "{a} vs {b}");
            }
        }
        // spot values
        assert_eq!(embed_ord(&OrdTerm::from_nat(3)), CoeffTerm::from_nat(3));
        assert_eq!(
            embed_ord(&veblen(&OrdTerm::one(), &OrdTerm::zero())),
            fv(&[1, 0])
        );
    }

    #[test]
    fn delta_tower() {
        assert_eq!(delta(0), CoeffTerm::one());
        assert_eq!(delta(1), fv(&[1, 0, 0]));
        for n in 0..4 {
            assert!(delta(n).cmp(&delta(n + 1)) == Ordering::Less);
            assert!(delta(n).is_normal());
        }
        assert_eq!(tilde_delta(1, 1), fv(&[1, 0, 0]));
        for k in 0..4 {
            let t = tilde_delta(1, k);
            assert_eq!(
                t.as_single_principal().unwrap().args().len() as u32,
                k + 2
            );
            for n in 0..3 {
                assert!(tilde_delta(n, k).cmp(&tilde_delta(n + 1, k)) == Ordering::Less);
            }
        }
    }

    #[test]
    fn ext_compare_chain() {
        let sys = ExtSystem::Kappa;
        let k = ExtTerm::base(sys);
        let chain = vec![
            ExtTerm::zero(sys),
            ExtTerm::from_nat(sys, 1),
            ext_single(sys, zero_exp(sys), &CoeffTerm::omega()),
            k.clone(),
            k.add(&ExtTerm::from_nat(sys, 1)),
            ext_single(sys, one_exp(sys), &CoeffTerm::omega()),
            ext_single(sys, ExtExp::Plain(CoeffTerm::from_nat(2)), &CoeffTerm::one()),
            ext_single(sys, ExtExp::Plain(CoeffTerm::omega()), &CoeffTerm::one()),
            ext_single(sys, ExtExp::Plain(fv(&[1, 0])), &CoeffTerm::one()),
        ];
        for i in 0..chain.len() {
            for j in 0..chain.len() {
                assert_eq!(chain[i].cmp(&chain[j]), i.cmp(&j), "at {i},{j}");
                assert!(chain[i].is_normal());
            }
        }
    }

    #[test]
    fn kappa_omega_pow_cases() {
        let one = ExtTerm::from_nat(ExtSystem::Kappa, 1);
        assert_eq!(kappa_omega_pow(&CoeffTerm::zero()), one);
        let p1 = kappa_omega_pow(&CoeffTerm::one());
        assert_eq!(render_ext(&p1), "k*phi(1)");
        let pw = kappa_omega_pow(&CoeffTerm::omega());
        assert_eq!(render_ext(&pw), "k^phi(1)");
        let pw1 = kappa_omega_pow(&CoeffTerm::omega().add(&CoeffTerm::one()));
        assert_eq!(render_ext(&pw1), "k^(phi(1) + 1)*phi(1)");
        // strictly increasing in the exponent
        let exps = [
            CoeffTerm::zero(),
            CoeffTerm::one(),
            CoeffTerm::from_nat(2),
            CoeffTerm::omega(),
            CoeffTerm::omega().add(&CoeffTerm::one()),
            fv(&[1, 0]),
        ];
        for w in exps.windows(2) {
            assert!(
                kappa_omega_pow(&w[0]).cmp(&kappa_omega_pow(&w[1])) == Ordering::Less
            );
        }
    }

    #[test]
    fn types_and_families() {
        let ks = ExtSystem::Kappa;
        let ls = ExtSystem::Lambda;
        // zero and successors are type 0
        assert_eq!(type_of(&ExtTerm::zero(ks)), 0);
        assert_eq!(type_of(&ExtTerm::from_nat(ks, 3)), 0);
        // k^5·1 is type 1, k^ω·1 and k^e·ω are type 0
        let k5 = ext_single(ks, ExtExp::Plain(CoeffTerm::from_nat(5)), &CoeffTerm::one());
        assert_eq!(type_of(&k5), 1);
        let kw = ext_single(ks, ExtExp::Plain(CoeffTerm::omega()), &CoeffTerm::one());
        assert_eq!(type_of(&kw), 0);
        let kcw = ext_single(ks, ExtExp::Plain(CoeffTerm::from_nat(5)), &CoeffTerm::omega());
        assert_eq!(type_of(&kcw), 0);
        // l^(l^g)·1 is type g+1
        for g in 0..4u32 {
            let e = tower_exp(&[(g, CoeffTerm::one())]);
            let t = ext_single(ls, e, &CoeffTerm::one());
            assert_eq!(type_of(&t), g + 1, "height {g}");
        }
        // l^(l·ω)·1 is type 0 (digit is a limit)
        let e = tower_exp(&[(1, CoeffTerm::omega())]);
        assert_eq!(type_of(&ext_single(ls, e, &CoeffTerm::one())), 0);
    }

    #[test]
    fn families_descend_strictly() {
        let ks = ExtSystem::Kappa;
        let ls = ExtSystem::Lambda;
        let gammas = [
            CoeffTerm::zero(),
            CoeffTerm::one(),
            CoeffTerm::from_nat(3),
            CoeffTerm::omega(),
            CoeffTerm::omega().add(&CoeffTerm::from_nat(2)),
            fv(&[1, 0]),
        ];
        let samples: Vec<ExtTerm> = vec![
            // coefficient limit
            ext_single(ks, ExtExp::Plain(CoeffTerm::from_nat(2)), &CoeffTerm::omega()),
            // exponent limit (k)
            ext_single(ks, ExtExp::Plain(CoeffTerm::omega()), &CoeffTerm::one()),
            // successor exponent (type 1)
            ext_single(ks, ExtExp::Plain(CoeffTerm::from_nat(3)), &CoeffTerm::one()),
            // lambda tower of type 2 and 3
            ext_single(ls, tower_exp(&[(1, CoeffTerm::one())]), &CoeffTerm::one()),
            ext_single(ls, tower_exp(&[(2, CoeffTerm::one())]), &CoeffTerm::one()),
            // lambda digit limit
            ext_single(ls, tower_exp(&[(1, CoeffTerm::omega())]), &CoeffTerm::one()),
            // lambda successor exponent
            ext_single(
                ls,
                tower_exp(&[(1, CoeffTerm::one()), (0, CoeffTerm::one())]),
                &CoeffTerm::one(),
            ),
        ];
        for a in &samples {
            let fam = canonical_family(a);
            let mut prev: Option<ExtTerm> = None;
            for g in &gammas {
                let Some(x) = family_sample(a.system(), &fam, g) else {
                    continue;
                };
                assert!(x.is_normal(), "sample of {a} at {g}");
                assert!(x.cmp(a) == Ordering::Less, "{x} < {a}");
                if let Some(p) = &prev {
                    assert!(p.cmp(&x) == Ordering::Less, "{p} < {x} under {a}");
                }
                prev = Some(x);
            }
            assert!(prev.is_some(), "no samples for {a}");
        }
    }

    #[test]
    fn successor_family_is_predecessor() {
        let ks = ExtSystem::Kappa;
        let a = ExtTerm::base(ks).add(&ExtTerm::from_nat(ks, 2));
        match canonical_family(&a) {
            CanonicalFamily::Finite(xs) => {
                assert_eq!(xs, vec![a.pred().unwrap()]);
            }
            other => panic!("expected finite family, got {other:?}"),
        }
    }

    #[test]
    fn ext_codes_round_trip() {
        for n in 0..800 {
            let t = ext_decode_nat(ExtSystem::Kappa, n);
            assert!(t.is_normal());
            assert_eq!(ext_encode_nat(&t), n);
        }
        for n in 0..800 {
            let t = ext_decode_nat(ExtSystem::Lambda, n);
            assert!(t.is_normal());
            assert_eq!(ext_encode_nat(&t), n);
        }
    }

    #[test]
    fn fv_codes_round_trip() {
        for n in 0..2000 {
            let t = fv_decode_nat(n);
            assert!(t.is_normal(), "code {n}");
            assert_eq!(fv_encode_nat(&t), n);
        }
        assert_eq!(fv_decode_nat(0), CoeffTerm::zero());
        assert_eq!(fv_decode_nat(1), CoeffTerm::one());
    }

    #[test]
    fn render_ext_examples() {
        let ks = ExtSystem::Kappa;
        assert_eq!(render_ext(&ExtTerm::zero(ks)), "0");
        assert_eq!(render_ext(&ExtTerm::from_nat(ks, 2)), "2");
        assert_eq!(render_ext(&ExtTerm::base(ks)), "k");
        let t = ExtTerm::base(ks).add(&ExtTerm::from_nat(ks, 1));
        assert_eq!(render_ext(&t), "k + 1");
        let t2 = ext_single(ks, ExtExp::Plain(CoeffTerm::from_nat(2)), &CoeffTerm::omega());
        assert_eq!(render_ext(&t2), "k^2*phi(1)");
        let ls = ExtSystem::Lambda;
        let lt = ext_single(ls, tower_exp(&[(1, CoeffTerm::one())]), &CoeffTerm::one());
        assert_eq!(render_ext(&lt), "l^l");
        let lt2 = ext_single(
            ls,
            tower_exp(&[(2, CoeffTerm::from_nat(1)), (0, CoeffTerm::from_nat(3))]),
            &CoeffTerm::one(),
        );
        assert_eq!(render_ext(&lt2), "l^(l^2 + 3)");
    }
}
