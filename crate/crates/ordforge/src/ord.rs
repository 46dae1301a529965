//! Binary Veblen normal forms of order type Γ₀.
//!
//! A term is either the empty sum (zero) or a nonincreasing sequence of
//! principal terms `phi(a, b)`. Finite multiplicity is expressed by
//! repetition, so `omega + omega` is a two-summand term. A principal term is
//! kept in normal form by the single collapse rule: `phi(a, b)` with
//! `b = phi(c, d)` and `c > a` denotes `b` itself and is never constructed.
//!
//! All constructors preserve normal form, so two terms denote the same
//! ordinal exactly when they are structurally equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use thiserror::Error;

/// Errors from partial ordinal operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    /// A fundamental sequence was requested for a term that is not a limit.
    #[error("term is not a limit: {0}")]
    NotLimit(String),
    /// A predecessor was requested for a term that is not a successor.
    #[error("term is not a successor: {0}")]
    NotSuccessor(String),
}

/// Ordinal term below Γ₀: a (possibly empty) nonincreasing sum of principals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OrdTerm {
    summands: Vec<Principal>,
}

/// A principal (additively indecomposable) term `phi(index, arg)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Principal {
    index: OrdTerm,
    arg: OrdTerm,
}

/// Classification of a term as zero, a successor, or a limit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermClass {
    Zero,
    Successor,
    Limit,
}

impl Principal {
    pub fn index(&self) -> &OrdTerm {
        &self.index
    }

    pub fn arg(&self) -> &OrdTerm {
        &self.arg
    }

    fn is_unit(&self) -> bool {
        self.index.is_zero() && self.arg.is_zero()
    }

    /// The exponent x with `self = omega^x`. Principals with nonzero index
    /// are fixed points of `omega^x` and are their own logarithm.
    fn log_omega(&self) -> OrdTerm {
        if self.index.is_zero() {
            self.arg.clone()
        } else {
            OrdTerm {
                summands: vec![self.clone()],
            }
        }
    }
}

/// Compare two principal terms as ordinals.
fn cmp_principal(p: &Principal, q: &Principal) -> Ordering {
    match p.index.cmp(&q.index) {
        Ordering::Equal => p.arg.cmp(&q.arg),
        // p has the smaller index: p = phi(a, b) relates to q as b does,
        // because q is a fixed point of phi(a, .).
        Ordering::Less => cmp_term_principal(&p.arg, q),
        Ordering::Greater => cmp_term_principal(&q.arg, p).reverse(),
    }
}

/// Compare an arbitrary term with a principal term.
fn cmp_term_principal(t: &OrdTerm, p: &Principal) -> Ordering {
    match t.summands.as_slice() {
        [] => Ordering::Less,
        [s] => cmp_principal(s, p),
        [s, ..] => match cmp_principal(s, p) {
            // s < p bounds every summand, and sums of principals below p
            // stay below p.
            Ordering::Less => Ordering::Less,
            _ => Ordering::Greater,
        },
    }
}

impl Ord for OrdTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        for (p, q) in self.summands.iter().zip(other.summands.iter()) {
            match cmp_principal(p, q) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.summands.len().cmp(&other.summands.len())
    }
}

impl PartialOrd for OrdTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl OrdTerm {
    /// The empty sum.
    pub fn zero() -> OrdTerm {
        OrdTerm { summands: vec![] }
    }

    /// The term `phi(0, 0)`.
    pub fn one() -> OrdTerm {
        veblen(&OrdTerm::zero(), &OrdTerm::zero())
    }

    /// The finite ordinal n.
    pub fn from_nat(n: u64) -> OrdTerm {
        let unit = Principal {
            index: OrdTerm::zero(),
            arg: OrdTerm::zero(),
        };
        OrdTerm {
            summands: vec![unit; n as usize],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[Principal] {
        &self.summands
    }

    /// The single principal of a one-summand term.
    pub fn as_principal(&self) -> Option<&Principal> {
        match self.summands.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    /// If the term is a finite ordinal, its value.
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
            // Every principal other than 1 is a limit, and a sum inherits
            // the class of its last summand.
            Some(_) => TermClass::Limit,
        }
    }

    /// Ordinal addition: trailing summands of `self` strictly below the
    /// leading summand of `other` are absorbed.
    pub fn add(&self, other: &OrdTerm) -> OrdTerm {
        let Some(lead) = other.summands.first() else {
            return self.clone();
        };
        let mut kept: Vec<Principal> = self
            .summands
            .iter()
            .take_while(|p| cmp_principal(p, lead) != Ordering::Less)
            .cloned()
            .collect();
        kept.extend(other.summands.iter().cloned());
        OrdTerm { summands: kept }
    }

    /// Ordinal multiplication, distributing over the right argument.
    pub fn mul(&self, other: &OrdTerm) -> OrdTerm {
        if self.is_zero() || other.is_zero() {
            return OrdTerm::zero();
        }
        let lead_log = self.summands[0].log_omega();
        let mut acc = OrdTerm::zero();
        for q in &other.summands {
            if q.is_unit() {
                acc = acc.add(self);
            } else {
                let exp = lead_log.add(&q.log_omega());
                acc = acc.add(&omega_pow(&exp));
            }
        }
        acc
    }

    /// Predecessor of a successor term.
    pub fn pred(&self) -> Result<OrdTerm, OrdError> {
        match self.classify() {
            TermClass::Successor => {
                let mut s = self.summands.clone();
                s.pop();
                Ok(OrdTerm { summands: s })
            }
            _ => Err(OrdError::NotSuccessor(self.to_string())),
        }
    }

    /// Validity check for externally assembled terms (used by tests; the
    /// public constructors only build terms that pass it).
    pub fn is_normal(&self) -> bool {
        fn principal_normal(p: &Principal) -> bool {
            if !p.index.is_normal() || !p.arg.is_normal() {
                return false;
            }
            match p.arg.as_principal() {
                Some(q) => q.index.cmp(&p.index) != Ordering::Greater,
                None => true,
            }
        }
        self.summands.iter().all(principal_normal)
            && self
                .summands
                .windows(2)
                .all(|w| cmp_principal(&w[0], &w[1]) != Ordering::Less)
    }
}

/// The normal form of `phi(index, arg)`. When `arg` is a fixed point of
/// `phi(index, .)` — a principal with strictly larger index — the term
/// collapses to `arg`.
pub fn veblen(index: &OrdTerm, arg: &OrdTerm) -> OrdTerm {
    if let Some(p) = arg.as_principal() {
        if p.index.cmp(index) == Ordering::Greater {
            return arg.clone();
        }
    }
    OrdTerm {
        summands: vec![Principal {
            index: index.clone(),
            arg: arg.clone(),
        }],
    }
}

/// `omega^a`, i.e. `phi(0, a)`.
pub fn omega_pow(a: &OrdTerm) -> OrdTerm {
    veblen(&OrdTerm::zero(), a)
}

/// The n-th stage of the tower 1, phi(1,0), phi(phi(1,0),0), ... whose
/// supremum is Γ₀.
pub fn gamma(n: u64) -> OrdTerm {
    let mut t = OrdTerm::one();
    for _ in 0..n {
        t = veblen(&t, &OrdTerm::zero());
    }
    t
}

/// The n-th element of the pinned fundamental sequence of a limit term.
///
/// Sums descend through the last summand; `omega^{b+1}` steps by
/// `omega^b * (n+1)`; limit arguments and limit indices descend through
/// their own sequences; a successor index iterates the previous function
/// starting from 1 (argument zero) or from the predecessor value plus one.
pub fn fund_seq(a: &OrdTerm, n: u64) -> Result<OrdTerm, OrdError> {
    if a.classify() != TermClass::Limit {
        return Err(OrdError::NotLimit(a.to_string()));
    }
    if a.summands.len() >= 2 {
        let mut prefix = a.summands.clone();
        let last = prefix.pop().expect("nonempty");
        let last_term = OrdTerm {
            summands: vec![last],
        };
        let tail = fund_seq(&last_term, n)?;
        return Ok(OrdTerm { summands: prefix }.add(&tail));
    }
    let p = a.as_principal().expect("limit terms are nonempty");
    let index = &p.index;
    let arg = &p.arg;
    let step = |base: OrdTerm, idx: &OrdTerm| {
        let mut x = base;
        for _ in 0..=n {
            x = veblen(idx, &x);
        }
        x
    };
    let out = match (index.classify(), arg.classify()) {
        // omega^{b+1} steps through omega^b * (n+1).
        (TermClass::Zero, TermClass::Successor) => {
            let stride = omega_pow(&arg.pred()?);
            let mut acc = OrdTerm::zero();
            for _ in 0..=n {
                acc = acc.add(&stride);
            }
            acc
        }
        (TermClass::Zero, TermClass::Limit) => omega_pow(&fund_seq(arg, n)?),
        (TermClass::Zero, TermClass::Zero) => unreachable!("phi(0,0) is a successor"),
        // Successor index: iterate the previous function.
        (TermClass::Successor, TermClass::Zero) => step(OrdTerm::one(), &index.pred()?),
        (TermClass::Successor, TermClass::Successor) => {
            let base = veblen(index, &arg.pred()?).add(&OrdTerm::one());
            step(base, &index.pred()?)
        }
        (TermClass::Successor, TermClass::Limit) => veblen(index, &fund_seq(arg, n)?),
        // Limit index: descend through the index.
        (TermClass::Limit, TermClass::Zero) => veblen(&fund_seq(index, n)?, &OrdTerm::zero()),
        (TermClass::Limit, TermClass::Successor) => {
            let below = veblen(index, &arg.pred()?).add(&OrdTerm::one());
            veblen(&fund_seq(index, n)?, &below)
        }
        (TermClass::Limit, TermClass::Limit) => veblen(index, &fund_seq(arg, n)?),
    };
    Ok(out)
}

/// Total node count; the grouping key for the code enumeration.
pub fn term_size(t: &OrdTerm) -> u64 {
    t.summands
        .iter()
        .map(|p| 1 + term_size(&p.index) + term_size(&p.arg))
        .sum()
}

struct EnumCache {
    terms_by_size: Vec<Vec<OrdTerm>>,
    principals_by_size: Vec<Vec<Principal>>,
    flat: Vec<OrdTerm>,
    codes: HashMap<OrdTerm, u64>,
}

impl EnumCache {
    fn new() -> EnumCache {
        let mut codes = HashMap::new();
        codes.insert(OrdTerm::zero(), 0);
        EnumCache {
            terms_by_size: vec![vec![OrdTerm::zero()]],
            principals_by_size: vec![vec![]],
            flat: vec![OrdTerm::zero()],
            codes,
        }
    }

    /// Generate all normal terms of each size up to and including `size`.
    fn ensure_size(&mut self, size: u64) {
        while (self.terms_by_size.len() as u64) <= size {
            let s = self.terms_by_size.len() as u64;
            // Principals of size s: 1 + |index| + |arg| = s, arg not a
            // fixed point of the index.
            let mut principals = vec![];
            for ia in 0..s {
                let ib = s - 1 - ia;
                for index in &self.terms_by_size[ia as usize] {
                    for arg in &self.terms_by_size[ib as usize] {
                        let ok = match arg.as_principal() {
                            Some(q) => q.index.cmp(index) != Ordering::Greater,
                            None => true,
                        };
                        if ok {
                            principals.push(Principal {
                                index: index.clone(),
                                arg: arg.clone(),
                            });
                        }
                    }
                }
            }
            self.principals_by_size.push(principals);
            // Terms of size s: nonincreasing principal sequences with
            // sizes summing to s.
            let mut terms = vec![];
            let mut stack: Vec<Principal> = vec![];
            gen_sums(&self.principals_by_size, s, None, &mut stack, &mut terms);
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

fn gen_sums(
    principals: &[Vec<Principal>],
    remaining: u64,
    bound: Option<&Principal>,
    stack: &mut Vec<Principal>,
    out: &mut Vec<OrdTerm>,
) {
    if remaining == 0 {
        out.push(OrdTerm {
            summands: stack.clone(),
        });
        return;
    }
    for k in 1..=remaining {
        for p in &principals[k as usize] {
            if let Some(b) = bound {
                if cmp_principal(p, b) == Ordering::Greater {
                    continue;
                }
            }
            stack.push(p.clone());
            gen_sums(principals, remaining - k, Some(p), stack, out);
            stack.pop();
        }
    }
}

fn cache() -> &'static Mutex<EnumCache> {
    static CACHE: OnceLock<Mutex<EnumCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(EnumCache::new()))
}

/// Position of a normal term in the size-then-order enumeration.
pub fn encode_nat(t: &OrdTerm) -> u64 {
    let mut c = cache().lock().expect("enumeration cache poisoned");
    c.ensure_size(term_size(t));
    *c.codes.get(t).expect("normal term is enumerated")
}

/// Inverse of [`encode_nat`]: the n-th term of the enumeration.
pub fn decode_nat(n: u64) -> OrdTerm {
    let mut c = cache().lock().expect("enumeration cache poisoned");
    c.ensure_count(n);
    c.flat[n as usize].clone()
}

/// Canonical text form. Runs of trailing units are grouped as a decimal
/// numeral; every other summand prints as `phi(index, arg)`.
pub fn render(t: &OrdTerm) -> String {
    if let Some(n) = t.as_nat() {
        return n.to_string();
    }
    let mut parts: Vec<String> = vec![];
    let mut i = 0;
    let s = &t.summands;
    while i < s.len() {
        if s[i].is_unit() {
            // Nonincreasing order puts all units at the tail.
            parts.push((s.len() - i).to_string());
            break;
        }
        parts.push(format!("phi({},{})", render(&s[i].index), render(&s[i].arg)));
        i += 1;
    }
    parts.join(" + ")
}

/// Fully explicit text form with no numeral sugar.
pub fn render_strict(t: &OrdTerm) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    t.summands
        .iter()
        .map(|p| {
            format!(
                "phi({},{})",
                render_strict(&p.index),
                render_strict(&p.arg)
            )
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for OrdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// All structurally smaller terms derivable from `t`: argument and index
/// subtrees plus proper prefix sums. Used by the descent walk and the
/// cofinality tests.
pub fn subterm_pool(t: &OrdTerm) -> Vec<OrdTerm> {
    let mut out = vec![];
    fn walk(t: &OrdTerm, out: &mut Vec<OrdTerm>) {
        for k in 1..t.summands.len() {
            out.push(OrdTerm {
                summands: t.summands[..k].to_vec(),
            });
        }
        for p in &t.summands {
            out.push(p.index.clone());
            out.push(p.arg.clone());
            walk(&p.index, out);
            walk(&p.arg, out);
        }
    }
    walk(t, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> OrdTerm {
        omega_pow(&OrdTerm::one())
    }

    fn eps0() -> OrdTerm {
        veblen(&OrdTerm::one(), &OrdTerm::zero())
    }

    #[test]
    fn zero_one_basics() {
        assert!(OrdTerm::zero().is_zero());
        assert_eq!(OrdTerm::one().as_nat(), Some(1));
        assert_eq!(OrdTerm::from_nat(3).as_nat(), Some(3));
        assert_eq!(OrdTerm::zero().classify(), TermClass::Zero);
        assert_eq!(OrdTerm::from_nat(2).classify(), TermClass::Successor);
        assert_eq!(w().classify(), TermClass::Limit);
    }

    #[test]
    fn compare_small_chain() {
        // 0 < 1 < 2 < omega < omega+1 < omega*2 < omega^2 < eps0
        let chain = vec![
            OrdTerm::zero(),
            OrdTerm::one(),
            OrdTerm::from_nat(2),
            w(),
            w().add(&OrdTerm::one()),
            w().add(&w()),
            omega_pow(&OrdTerm::from_nat(2)),
            eps0(),
        ];
        for i in 0..chain.len() {
            for j in 0..chain.len() {
                assert_eq!(chain[i].cmp(&chain[j]), i.cmp(&j), "at {i},{j}");
            }
        }
    }

    #[test]
    fn addition_absorbs() {
        // 1 + omega = omega
        assert_eq!(OrdTerm::one().add(&w()), w());
        // omega + 1 has two summands
        let w1 = w().add(&OrdTerm::one());
        assert_eq!(w1.summands().len(), 2);
        // (omega + 1) + omega = omega*2
        assert_eq!(w1.add(&w()), w().add(&w()));
    }

    #[test]
    fn addition_is_associative() {
        let pool = [
            OrdTerm::zero(),
            OrdTerm::from_nat(2),
            w(),
            omega_pow(&w()),
            eps0(),
            eps0().add(&w()),
        ];
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                }
            }
        }
    }

    #[test]
    fn multiplication_table() {
        let two = OrdTerm::from_nat(2);
        // 2 * omega = omega
        assert_eq!(two.mul(&w()), w());
        // omega * 2 = omega + omega
        assert_eq!(w().mul(&two), w().add(&w()));
        // omega * omega = omega^2
        assert_eq!(w().mul(&w()), omega_pow(&two));
        // eps0 * omega = omega^(eps0 + 1)
        assert_eq!(
            eps0().mul(&w()),
            omega_pow(&eps0().add(&OrdTerm::one()))
        );
        // (omega + 1) * 2 = omega*2 + 1
        let w1 = w().add(&OrdTerm::one());
        assert_eq!(w1.mul(&two), w().add(&w()).add(&OrdTerm::one()));
    }

    #[test]
    fn veblen_collapses_fixed_points() {
        // phi(0, eps0) = eps0
        assert_eq!(omega_pow(&eps0()), eps0());
        // phi(0, eps0 + 1) is a genuine power
        let t = omega_pow(&eps0().add(&OrdTerm::one()));
        assert_eq!(t.summands().len(), 1);
        assert!(t.cmp(&eps0()) == Ordering::Greater);
        // phi(1, phi(2,0)) = phi(2,0)
        let z2 = veblen(&OrdTerm::from_nat(2), &OrdTerm::zero());
        assert_eq!(veblen(&OrdTerm::one(), &z2), z2);
    }

    #[test]
    fn gamma_tower() {
        assert_eq!(gamma(0), OrdTerm::one());
        assert_eq!(gamma(1), eps0());
        assert_eq!(gamma(2), veblen(&eps0(), &OrdTerm::zero()));
        for n in 0..6 {
            assert!(gamma(n).cmp(&gamma(n + 1)) == Ordering::Less);
        }
    }

    #[test]
    fn fund_seq_of_omega_is_naturals() {
        for n in 0..5 {
            assert_eq!(fund_seq(&w(), n).unwrap(), OrdTerm::from_nat(n + 1));
        }
    }

    #[test]
    fn fund_seq_of_eps0_is_the_tower() {
        // omega, omega^omega, omega^omega^omega, ...
        let mut expect = w();
        for n in 0..4 {
            assert_eq!(fund_seq(&eps0(), n).unwrap(), expect);
            expect = omega_pow(&expect);
        }
    }

    #[test]
    fn fund_seq_is_increasing_and_below() {
        let samples = vec![
            w(),
            omega_pow(&w()),
            omega_pow(&eps0().add(&OrdTerm::one())),
            eps0(),
            veblen(&w(), &OrdTerm::zero()),
            veblen(&eps0(), &OrdTerm::from_nat(3)),
            gamma(3),
            eps0().add(&w()),
        ];
        for a in &samples {
            let mut prev: Option<OrdTerm> = None;
            for n in 0..8 {
                let x = fund_seq(a, n).unwrap();
                assert!(x.cmp(a) == Ordering::Less, "{x} < {a}");
                assert!(x.is_normal());
                if let Some(p) = prev {
                    assert!(p.cmp(&x) == Ordering::Less, "{p} < {x} under {a}");
                }
                prev = Some(x);
            }
        }
    }

    #[test]
    fn fund_seq_rejects_non_limits() {
        assert!(fund_seq(&OrdTerm::zero(), 0).is_err());
        assert!(fund_seq(&OrdTerm::from_nat(4), 0).is_err());
    }

    #[test]
    fn codes_start_with_zero_and_one() {
        assert_eq!(decode_nat(0), OrdTerm::zero());
        assert_eq!(decode_nat(1), OrdTerm::one());
        assert_eq!(encode_nat(&OrdTerm::zero()), 0);
        assert_eq!(encode_nat(&OrdTerm::one()), 1);
    }

    #[test]
    fn codes_round_trip() {
        for n in 0..5000 {
            let t = decode_nat(n);
            assert!(t.is_normal());
            assert_eq!(encode_nat(&t), n);
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&OrdTerm::zero()), "0");
        assert_eq!(render(&OrdTerm::one()), "1");
        assert_eq!(render(&gamma(2)), "phi(phi(1,0),0)");
        assert_eq!(render(&w().add(&OrdTerm::from_nat(3))), "phi(0,1) + 3");
        assert_eq!(render_strict(&OrdTerm::one()), "phi(0,0)");
    }
}
