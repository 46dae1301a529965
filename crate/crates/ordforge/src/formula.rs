//! Two-sorted arithmetic syntax with families of relation symbols, its
//! arithmetization, and builders for the formula schemas used by the axiom
//! generators and the proof kernel.
//!
//! The language has number terms (numerals, variables, successor, `+`, `×`,
//! and applications of designated function symbols on codes) and set
//! variables. Formulas are built from equality, set membership, relation
//! applications, the intuitionistic connectives, and quantifiers over both
//! sorts. Every formula has a code (a natural number); codes are produced
//! by a self-delimiting bit serialization, so decoding is partial with a
//! decidable domain. See [`numbering_table`] for the full scheme.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::ext::{
    delta, ext_decode_nat, ext_encode_nat, ext_left_mul, ext_single, fv_decode_nat,
    fv_encode_nat, fv_omega_pow, fv_veblen, kappa_omega_pow, CoeffTerm, ExtExp, ExtSystem,
    FvPrincipal,
};
use crate::ord::{decode_nat, encode_nat, gamma, omega_pow, veblen, OrdTerm, Principal};
use crate::parse::ParseError;

/// Code of a formula (or of anything else arithmetized here).
pub type GodelCode = BigUint;

/// Which notation order a designated symbol speaks about.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum OrderKind {
    /// Plain numeric order on ℕ.
    Nat,
    /// The binary-Veblen system of [`crate::ord`].
    Gamma0,
    /// The finitary-Veblen coefficient system of [`crate::ext`].
    Coeff,
    /// The base-κ extended system.
    Kappa,
    /// The base-λ extended system.
    Lambda,
}

impl OrderKind {
    pub fn tag(self) -> &'static str {
        match self {
            OrderKind::Nat => "nat",
            OrderKind::Gamma0 => "g0",
            OrderKind::Coeff => "cf",
            OrderKind::Kappa => "kk",
            OrderKind::Lambda => "lm",
        }
    }

    fn from_tag(s: &str) -> Option<OrderKind> {
        Some(match s {
            "nat" => OrderKind::Nat,
            "g0" => OrderKind::Gamma0,
            "cf" => OrderKind::Coeff,
            "kk" => OrderKind::Kappa,
            "lm" => OrderKind::Lambda,
            _ => return None,
        })
    }
}

/// Designated function symbols. Level-tagged symbols belong to the theory
/// layer that introduced them; order-tagged symbols are base-language
/// helpers on notation codes and are readable everywhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FnSym {
    /// Binary pairing (Cantor).
    Pair,
    /// First projection of a pair.
    Proj1,
    /// Second projection of a pair.
    Proj2,
    /// Full axiom enumerator (logical + non-logical) of the layer below.
    AxOf { level: u32 },
    /// Rule-triple enumerator of the layer below.
    DedOf { level: u32 },
    /// Numeral substitution on codes: (n, i, k) ↦ code of n with free vᵢ
    /// replaced by the numeral k; 0 when n codes no formula.
    SubstF { level: u32 },
    /// Universal closure on codes: (n, i) ↦ code of (∀vᵢ)(formula n).
    CloseG { level: u32 },
    /// Per-gate axiom enumerator of an ordered layer: (a, n).
    AxAt { level: u32 },
    /// Per-gate rule-triple enumerator: (a, n).
    DedAt { level: u32 },
    /// Per-gate substitution: (a, n, i, k).
    SubstFAt { level: u32 },
    /// Per-gate closure: (a, n, i).
    CloseGAt { level: u32 },
    /// Truth-biconditional builder on codes: (b, n) ↦ code of the
    /// biconditional tying formula n to the level‑b truth predicate.
    BicondH { level: u32 },
    /// Proof predicate for the layer below, as a 0/1-valued function (d, x).
    Prf { level: u32 },
    /// b ↦ code of "(∀c)[Seq(c, b̄) → Acc_b(c)]".
    AccSeqAll { level: u32, order: OrderKind },
    /// b ↦ code of the progressivity (along ≺) of "Seq(c, b̄) → Acc_b(c)".
    AccSeqProg { level: u32, order: OrderKind },
    /// (b, c) ↦ code of "Acc_b(c̄)".
    AccCode { level: u32 },
    /// Notation addition on codes.
    OrdAdd { order: OrderKind },
    /// Notation multiplication on codes (extended systems: left factor must
    /// be a single summand).
    OrdMul { order: OrderKind },
    /// ω-power on codes (for the extended systems: the step scale (Bω)^x,
    /// mapping a coefficient code to an extended code).
    OmegaPow { order: OrderKind },
    /// (a, m) ↦ code of the φ-notation the pair points at.
    PhiDot { order: OrderKind },
    /// Drop the last summand of a notation.
    Trunc { order: OrderKind },
    /// The last summand of a notation.
    StrideOf { order: OrderKind },
    /// (x, y) ↦ code of "[[x]] → [[y]]" (formula insertion).
    ImpQuote,
    /// z ↦ code of the progressivity of the formula coded by z (hole v₁).
    ProgQuote { order: OrderKind },
    /// (z, w) ↦ code of the jump statement for the formula coded by z with
    /// distance w̄ (hole v₁).
    JQuote { order: OrderKind },
    /// (a, b) ↦ code of the m-progressivity of the jump-transfer statement
    /// at parameters (a, b).
    LadderQuote { level: u32, order: OrderKind },
    /// Uninterpreted base-language function symbol.
    Named { name: String, arity: u8 },
}

impl FnSym {
    pub fn arity(&self) -> usize {
        match self {
            FnSym::Pair => 2,
            FnSym::Proj1 | FnSym::Proj2 => 1,
            FnSym::AxOf { .. } | FnSym::DedOf { .. } => 1,
            FnSym::SubstF { .. } => 3,
            FnSym::CloseG { .. } => 2,
            FnSym::AxAt { .. } | FnSym::DedAt { .. } => 2,
            FnSym::SubstFAt { .. } => 4,
            FnSym::CloseGAt { .. } => 3,
            FnSym::BicondH { .. } => 2,
            FnSym::Prf { .. } => 2,
            FnSym::AccSeqAll { .. } | FnSym::AccSeqProg { .. } => 1,
            FnSym::AccCode { .. } => 2,
            FnSym::OrdAdd { .. } | FnSym::OrdMul { .. } => 2,
            FnSym::OmegaPow { .. } => 1,
            FnSym::PhiDot { .. } => 2,
            FnSym::Trunc { .. } | FnSym::StrideOf { .. } => 1,
            FnSym::ImpQuote => 2,
            FnSym::ProgQuote { .. } => 1,
            FnSym::JQuote { .. } => 2,
            FnSym::LadderQuote { .. } => 2,
            FnSym::Named { arity, .. } => *arity as usize,
        }
    }

    /// The theory layer a symbol belongs to; `None` for base-language
    /// symbols readable at every level.
    pub fn level(&self) -> Option<u32> {
        match self {
            FnSym::AxOf { level }
            | FnSym::DedOf { level }
            | FnSym::SubstF { level }
            | FnSym::CloseG { level }
            | FnSym::AxAt { level }
            | FnSym::DedAt { level }
            | FnSym::SubstFAt { level }
            | FnSym::CloseGAt { level }
            | FnSym::BicondH { level }
            | FnSym::Prf { level }
            | FnSym::AccSeqAll { level, .. }
            | FnSym::AccSeqProg { level, .. }
            | FnSym::AccCode { level }
            | FnSym::LadderQuote { level, .. } => Some(*level),
            _ => None,
        }
    }
}

/// Relation symbols. The truth and acceptability families carry the layer
/// that introduced them and (for the indexed families) a subscript code.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RelSym {
    /// The single truth predicate of an unordered layer.
    Truth { level: u32 },
    /// The indexed truth family T<sub>a</sub> of an ordered layer.
    TruthAt { level: u32, sub: BigUint },
    /// The plain acceptability predicate of an ordered layer.
    Acc { level: u32 },
    /// The indexed acceptability family Acc<sub>a</sub>.
    AccAt { level: u32, sub: BigUint },
    /// Readability: (a, n) — formula n only mentions families below a.
    Rd { level: u32 },
    /// n codes a formula with no free set variables.
    Bd,
    /// The notation order on codes.
    Prec { order: OrderKind },
    /// (x, a): x is a member of a's canonical family.
    Seq { order: OrderKind },
    /// a is of type 0.
    Typ0 { order: OrderKind },
    /// (a, k): a is of type k.
    TypeIs { order: OrderKind },
    /// Numeric strict order.
    Lt,
    /// Uninterpreted base-language relation symbol (any arity).
    Plain(String),
}

impl RelSym {
    /// Expected argument count; `None` for flexible-arity symbols.
    pub fn arity(&self) -> Option<usize> {
        Some(match self {
            RelSym::Truth { .. } | RelSym::TruthAt { .. } => 1,
            RelSym::Acc { .. } | RelSym::AccAt { .. } => 1,
            RelSym::Rd { .. } => 2,
            RelSym::Bd => 1,
            RelSym::Prec { .. } => 2,
            RelSym::Seq { .. } => 2,
            RelSym::Typ0 { .. } => 1,
            RelSym::TypeIs { .. } => 2,
            RelSym::Lt => 2,
            RelSym::Plain(_) => return None,
        })
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            RelSym::Truth { level }
            | RelSym::TruthAt { level, .. }
            | RelSym::Acc { level }
            | RelSym::AccAt { level, .. }
            | RelSym::Rd { level } => Some(*level),
            _ => None,
        }
    }
}

/// First-sort terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NumTerm {
    /// Numeral (a successor tower over zero, stored compactly).
    Const(BigUint),
    /// Number variable vᵢ.
    Var(u32),
    Succ(Box<NumTerm>),
    Add(Box<NumTerm>, Box<NumTerm>),
    Mul(Box<NumTerm>, Box<NumTerm>),
    App(FnSym, Vec<NumTerm>),
}

impl NumTerm {
    pub fn nat(n: u64) -> NumTerm {
        NumTerm::Const(BigUint::from(n))
    }

    pub fn big(n: &BigUint) -> NumTerm {
        NumTerm::Const(n.clone())
    }
}

/// Formulas of the two-sorted language.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Eq(NumTerm, NumTerm),
    /// t ∈ Xᵢ.
    InSet(NumTerm, u32),
    Rel(RelSym, Vec<NumTerm>),
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForallNum(u32, Box<Formula>),
    ExistsNum(u32, Box<Formula>),
    ForallSet(u32, Box<Formula>),
    ExistsSet(u32, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(v: u32, f: Formula) -> Formula {
        Formula::ForallNum(v, Box::new(f))
    }
    pub fn exists(v: u32, f: Formula) -> Formula {
        Formula::ExistsNum(v, Box::new(f))
    }

    /// Conjunction of a nonempty list, right-nested.
    pub fn and_all(mut parts: Vec<Formula>) -> Formula {
        let last = parts.pop().expect("nonempty conjunction");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, p| Formula::and(p, acc))
    }
}

/// Structural well-formedness: designated symbols applied at their arities.
pub fn well_formed(f: &Formula) -> bool {
    fn term_ok(t: &NumTerm) -> bool {
        match t {
            NumTerm::Const(_) | NumTerm::Var(_) => true,
            NumTerm::Succ(a) => term_ok(a),
            NumTerm::Add(a, b) | NumTerm::Mul(a, b) => term_ok(a) && term_ok(b),
            NumTerm::App(sym, args) => {
                args.len() == sym.arity() && args.iter().all(term_ok)
            }
        }
    }
    match f {
        Formula::Eq(a, b) => term_ok(a) && term_ok(b),
        Formula::InSet(t, _) => term_ok(t),
        Formula::Rel(sym, args) => {
            sym.arity().map_or(true, |k| args.len() == k) && args.iter().all(term_ok)
        }
        Formula::False => true,
        Formula::Not(a) => well_formed(a),
        Formula::And(a, b)
        | Formula::Or(a, b)
        | Formula::Implies(a, b)
        | Formula::Iff(a, b) => well_formed(a) && well_formed(b),
        Formula::ForallNum(_, a)
        | Formula::ExistsNum(_, a)
        | Formula::ForallSet(_, a)
        | Formula::ExistsSet(_, a) => well_formed(a),
    }
}

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

/// Cantor pairing on naturals: a bijection ℕ² → ℕ.
pub fn pair2(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair2`].
pub fn unpair2(n: &BigUint) -> (BigUint, BigUint) {
    // s = floor((sqrt(8n+1) - 1) / 2), the diagonal index.
    let d = (n * 8u32 + 1u32).sqrt();
    let s = (&d - 1u32) / 2u32;
    let t = (&s * (&s + 1u32)) / 2u32;
    let y = n - &t;
    let x = &s - &y;
    (x, y)
}

/// Right-nested tupling: `pair([a]) = a`, `pair([a, rest…]) = pair2(a, pair(rest))`.
pub fn pair(xs: &[BigUint]) -> BigUint {
    match xs {
        [] => BigUint::zero(),
        [a] => a.clone(),
        [a, rest @ ..] => pair2(a, &pair(rest)),
    }
}

/// Projection from a right-nested tuple of the given arity (1-based index).
pub fn proj(i: usize, arity: usize, n: &BigUint) -> BigUint {
    assert!(i >= 1 && i <= arity && arity >= 1);
    let mut cur = n.clone();
    for _ in 1..i {
        let (_, rest) = unpair2(&cur);
        cur = rest;
    }
    if i < arity {
        let (head, _) = unpair2(&cur);
        head
    } else {
        cur
    }
}

// ---------------------------------------------------------------------------
// Bit-stream serialization
// ---------------------------------------------------------------------------

struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn new() -> BitWriter {
        BitWriter { bits: vec![] }
    }

    fn bit(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// Self-delimiting natural: for n, write (len(n+1) − 1) zeros, then the
    /// bits of n+1 most-significant first.
    fn nat(&mut self, n: &BigUint) {
        let m = n + 1u32;
        let len = m.bits();
        for _ in 1..len {
            self.bit(false);
        }
        for k in (0..len).rev() {
            self.bit(m.bit(k));
        }
    }

    fn small(&mut self, n: u64) {
        self.nat(&BigUint::from(n));
    }

    fn finish(self) -> BigUint {
        // Guard bit keeps leading zeros, then the payload bits.
        let mut acc = BigUint::one();
        for b in self.bits {
            acc <<= 1;
            if b {
                acc |= BigUint::one();
            }
        }
        acc
    }
}

struct BitReader {
    bits: Vec<bool>,
    pos: usize,
}

impl BitReader {
    /// Split a code back into its payload bits; `None` for 0 (no guard).
    fn from_code(n: &BigUint) -> Option<BitReader> {
        if n.is_zero() {
            return None;
        }
        let len = n.bits();
        // Top bit is the guard; the rest is the payload, MSB first.
        let bits = (0..len - 1).rev().map(|k| n.bit(k)).collect();
        Some(BitReader { bits, pos: 0 })
    }

    fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn nat(&mut self) -> Option<BigUint> {
        let mut zeros = 0usize;
        loop {
            if self.bit()? {
                break;
            }
            zeros += 1;
            if zeros > self.bits.len() {
                return None;
            }
        }
        let mut m = BigUint::one();
        for _ in 0..zeros {
            m <<= 1;
            if self.bit()? {
                m |= BigUint::one();
            }
        }
        Some(m - 1u32)
    }

    fn small(&mut self) -> Option<u64> {
        self.nat()?.to_u64()
    }

    fn small32(&mut self) -> Option<u32> {
        self.nat()?.to_u32()
    }

    fn done(&self) -> bool {
        self.pos == self.bits.len()
    }
}

fn write_order(w: &mut BitWriter, o: OrderKind) {
    w.small(match o {
        OrderKind::Nat => 0,
        OrderKind::Gamma0 => 1,
        OrderKind::Coeff => 2,
        OrderKind::Kappa => 3,
        OrderKind::Lambda => 4,
    });
}

fn read_order(r: &mut BitReader) -> Option<OrderKind> {
    Some(match r.small()? {
        0 => OrderKind::Nat,
        1 => OrderKind::Gamma0,
        2 => OrderKind::Coeff,
        3 => OrderKind::Kappa,
        4 => OrderKind::Lambda,
        _ => return None,
    })
}

fn write_name(w: &mut BitWriter, s: &str) {
    let bytes = s.as_bytes();
    w.small(bytes.len() as u64);
    for &b in bytes {
        for k in (0..8).rev() {
            w.bit((b >> k) & 1 == 1);
        }
    }
}

fn read_name(r: &mut BitReader) -> Option<String> {
    let len = r.small()? as usize;
    if len > 1 << 16 {
        return None;
    }
    let mut bytes = Vec::with_capacity(len);
    for _ in 0..len {
        let mut b = 0u8;
        for _ in 0..8 {
            b = (b << 1) | (r.bit()? as u8);
        }
        bytes.push(b);
    }
    String::from_utf8(bytes).ok()
}

fn write_fnsym(w: &mut BitWriter, sym: &FnSym) {
    match sym {
        FnSym::Pair => w.small(0),
        FnSym::Proj1 => w.small(1),
        FnSym::Proj2 => w.small(2),
        FnSym::AxOf { level } => {
            w.small(3);
            w.small(*level as u64);
        }
        FnSym::DedOf { level } => {
            w.small(4);
            w.small(*level as u64);
        }
        FnSym::SubstF { level } => {
            w.small(5);
            w.small(*level as u64);
        }
        FnSym::CloseG { level } => {
            w.small(6);
            w.small(*level as u64);
        }
        FnSym::AxAt { level } => {
            w.small(7);
            w.small(*level as u64);
        }
        FnSym::DedAt { level } => {
            w.small(8);
            w.small(*level as u64);
        }
        FnSym::SubstFAt { level } => {
            w.small(9);
            w.small(*level as u64);
        }
        FnSym::CloseGAt { level } => {
            w.small(10);
            w.small(*level as u64);
        }
        FnSym::BicondH { level } => {
            w.small(11);
            w.small(*level as u64);
        }
        FnSym::Prf { level } => {
            w.small(12);
            w.small(*level as u64);
        }
        FnSym::AccSeqAll { level, order } => {
            w.small(13);
            w.small(*level as u64);
            write_order(w, *order);
        }
        FnSym::AccSeqProg { level, order } => {
            w.small(14);
            w.small(*level as u64);
            write_order(w, *order);
        }
        FnSym::AccCode { level } => {
            w.small(15);
            w.small(*level as u64);
        }
        FnSym::OrdAdd { order } => {
            w.small(16);
            write_order(w, *order);
        }
        FnSym::OrdMul { order } => {
            w.small(17);
            write_order(w, *order);
        }
        FnSym::OmegaPow { order } => {
            w.small(18);
            write_order(w, *order);
        }
        FnSym::PhiDot { order } => {
            w.small(19);
            write_order(w, *order);
        }
        FnSym::Trunc { order } => {
            w.small(20);
            write_order(w, *order);
        }
        FnSym::StrideOf { order } => {
            w.small(21);
            write_order(w, *order);
        }
        FnSym::ImpQuote => w.small(22),
        FnSym::ProgQuote { order } => {
            w.small(23);
            write_order(w, *order);
        }
        FnSym::JQuote { order } => {
            w.small(24);
            write_order(w, *order);
        }
        FnSym::LadderQuote { level, order } => {
            w.small(25);
            w.small(*level as u64);
            write_order(w, *order);
        }
        FnSym::Named { name, arity } => {
            w.small(26);
            w.small(*arity as u64);
            write_name(w, name);
        }
    }
}

fn read_fnsym(r: &mut BitReader) -> Option<FnSym> {
    Some(match r.small()? {
        0 => FnSym::Pair,
        1 => FnSym::Proj1,
        2 => FnSym::Proj2,
        3 => FnSym::AxOf { level: r.small32()? },
        4 => FnSym::DedOf { level: r.small32()? },
        5 => FnSym::SubstF { level: r.small32()? },
        6 => FnSym::CloseG { level: r.small32()? },
        7 => FnSym::AxAt { level: r.small32()? },
        8 => FnSym::DedAt { level: r.small32()? },
        9 => FnSym::SubstFAt { level: r.small32()? },
        10 => FnSym::CloseGAt { level: r.small32()? },
        11 => FnSym::BicondH { level: r.small32()? },
        12 => FnSym::Prf { level: r.small32()? },
        13 => FnSym::AccSeqAll {
            level: r.small32()?,
            order: read_order(r)?,
        },
        14 => FnSym::AccSeqProg {
            level: r.small32()?,
            order: read_order(r)?,
        },
        15 => FnSym::AccCode { level: r.small32()? },
        16 => FnSym::OrdAdd { order: read_order(r)? },
        17 => FnSym::OrdMul { order: read_order(r)? },
        18 => FnSym::OmegaPow { order: read_order(r)? },
        19 => FnSym::PhiDot { order: read_order(r)? },
        20 => FnSym::Trunc { order: read_order(r)? },
        21 => FnSym::StrideOf { order: read_order(r)? },
        22 => FnSym::ImpQuote,
        23 => FnSym::ProgQuote { order: read_order(r)? },
        24 => FnSym::JQuote { order: read_order(r)? },
        25 => FnSym::LadderQuote {
            level: r.small32()?,
            order: read_order(r)?,
        },
        26 => {
            let arity = r.small()?;
            if arity > u8::MAX as u64 {
                return None;
            }
            FnSym::Named {
                arity: arity as u8,
                name: read_name(r)?,
            }
        }
        _ => return None,
    })
}

fn write_relsym(w: &mut BitWriter, sym: &RelSym) {
    match sym {
        RelSym::Truth { level } => {
            w.small(0);
            w.small(*level as u64);
        }
        RelSym::TruthAt { level, sub } => {
            w.small(1);
            w.small(*level as u64);
            w.nat(sub);
        }
        RelSym::Acc { level } => {
            w.small(2);
            w.small(*level as u64);
        }
        RelSym::AccAt { level, sub } => {
            w.small(3);
            w.small(*level as u64);
            w.nat(sub);
        }
        RelSym::Rd { level } => {
            w.small(4);
            w.small(*level as u64);
        }
        RelSym::Bd => w.small(5),
        RelSym::Prec { order } => {
            w.small(6);
            write_order(w, *order);
        }
        RelSym::Seq { order } => {
            w.small(7);
            write_order(w, *order);
        }
        RelSym::Typ0 { order } => {
            w.small(8);
            write_order(w, *order);
        }
        RelSym::TypeIs { order } => {
            w.small(9);
            write_order(w, *order);
        }
        RelSym::Lt => w.small(10),
        RelSym::Plain(name) => {
            w.small(11);
            write_name(w, name);
        }
    }
}

fn read_relsym(r: &mut BitReader) -> Option<RelSym> {
    Some(match r.small()? {
        0 => RelSym::Truth { level: r.small32()? },
        1 => RelSym::TruthAt {
            level: r.small32()?,
            sub: r.nat()?,
        },
        2 => RelSym::Acc { level: r.small32()? },
        3 => RelSym::AccAt {
            level: r.small32()?,
            sub: r.nat()?,
        },
        4 => RelSym::Rd { level: r.small32()? },
        5 => RelSym::Bd,
        6 => RelSym::Prec { order: read_order(r)? },
        7 => RelSym::Seq { order: read_order(r)? },
        8 => RelSym::Typ0 { order: read_order(r)? },
        9 => RelSym::TypeIs { order: read_order(r)? },
        10 => RelSym::Lt,
        11 => RelSym::Plain(read_name(r)?),
        _ => return None,
    })
}

fn write_term(w: &mut BitWriter, t: &NumTerm) {
    match t {
        NumTerm::Const(n) => {
            w.small(0);
            w.nat(n);
        }
        NumTerm::Var(i) => {
            w.small(1);
            w.small(*i as u64);
        }
        NumTerm::Succ(a) => {
            w.small(2);
            write_term(w, a);
        }
        NumTerm::Add(a, b) => {
            w.small(3);
            write_term(w, a);
            write_term(w, b);
        }
        NumTerm::Mul(a, b) => {
            w.small(4);
            write_term(w, a);
            write_term(w, b);
        }
        NumTerm::App(sym, args) => {
            w.small(5);
            write_fnsym(w, sym);
            for a in args {
                write_term(w, a);
            }
        }
    }
}

fn read_term(r: &mut BitReader) -> Option<NumTerm> {
    Some(match r.small()? {
        0 => NumTerm::Const(r.nat()?),
        1 => NumTerm::Var(r.small32()?),
        2 => NumTerm::Succ(Box::new(read_term(r)?)),
        3 => NumTerm::Add(Box::new(read_term(r)?), Box::new(read_term(r)?)),
        4 => NumTerm::Mul(Box::new(read_term(r)?), Box::new(read_term(r)?)),
        5 => {
            let sym = read_fnsym(r)?;
            let mut args = Vec::with_capacity(sym.arity());
            for _ in 0..sym.arity() {
                args.push(read_term(r)?);
            }
            NumTerm::App(sym, args)
        }
        _ => return None,
    })
}

fn write_formula(w: &mut BitWriter, f: &Formula) {
    match f {
        Formula::Eq(a, b) => {
            w.small(0);
            write_term(w, a);
            write_term(w, b);
        }
        Formula::InSet(t, x) => {
            w.small(1);
            write_term(w, t);
            w.small(*x as u64);
        }
        Formula::Rel(sym, args) => {
            w.small(2);
            write_relsym(w, sym);
            w.small(args.len() as u64);
            for a in args {
                write_term(w, a);
            }
        }
        Formula::False => w.small(3),
        Formula::Not(a) => {
            w.small(4);
            write_formula(w, a);
        }
        Formula::And(a, b) => {
            w.small(5);
            write_formula(w, a);
            write_formula(w, b);
        }
        Formula::Or(a, b) => {
            w.small(6);
            write_formula(w, a);
            write_formula(w, b);
        }
        Formula::Implies(a, b) => {
            w.small(7);
            write_formula(w, a);
            write_formula(w, b);
        }
        Formula::Iff(a, b) => {
            w.small(8);
            write_formula(w, a);
            write_formula(w, b);
        }
        Formula::ForallNum(v, a) => {
            w.small(9);
            w.small(*v as u64);
            write_formula(w, a);
        }
        Formula::ExistsNum(v, a) => {
            w.small(10);
            w.small(*v as u64);
            write_formula(w, a);
        }
        Formula::ForallSet(v, a) => {
            w.small(11);
            w.small(*v as u64);
            write_formula(w, a);
        }
        Formula::ExistsSet(v, a) => {
            w.small(12);
            w.small(*v as u64);
            write_formula(w, a);
        }
    }
}

fn read_formula(r: &mut BitReader) -> Option<Formula> {
    Some(match r.small()? {
        0 => Formula::Eq(read_term(r)?, read_term(r)?),
        1 => Formula::InSet(read_term(r)?, r.small32()?),
        2 => {
            let sym = read_relsym(r)?;
            let argc = r.small()? as usize;
            if let Some(k) = sym.arity() {
                if argc != k {
                    return None;
                }
            }
            if argc > 1 << 16 {
                return None;
            }
            let mut args = Vec::with_capacity(argc);
            for _ in 0..argc {
                args.push(read_term(r)?);
            }
            Formula::Rel(sym, args)
        }
        3 => Formula::False,
        4 => Formula::Not(Box::new(read_formula(r)?)),
        5 => Formula::And(Box::new(read_formula(r)?), Box::new(read_formula(r)?)),
        6 => Formula::Or(Box::new(read_formula(r)?), Box::new(read_formula(r)?)),
        7 => Formula::Implies(Box::new(read_formula(r)?), Box::new(read_formula(r)?)),
        8 => Formula::Iff(Box::new(read_formula(r)?), Box::new(read_formula(r)?)),
        9 => Formula::ForallNum(r.small32()?, Box::new(read_formula(r)?)),
        10 => Formula::ExistsNum(r.small32()?, Box::new(read_formula(r)?)),
        11 => Formula::ForallSet(r.small32()?, Box::new(read_formula(r)?)),
        12 => Formula::ExistsSet(r.small32()?, Box::new(read_formula(r)?)),
        _ => return None,
    })
}

/// Code of a formula.
pub fn encode(f: &Formula) -> GodelCode {
    let mut w = BitWriter::new();
    write_formula(&mut w, f);
    w.finish()
}

/// Partial inverse of [`encode`]; `None` when the number codes no formula.
pub fn decode(n: &GodelCode) -> Option<Formula> {
    let mut r = BitReader::from_code(n)?;
    let f = read_formula(&mut r)?;
    if r.done() {
        Some(f)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Variables and substitution
// ---------------------------------------------------------------------------

fn term_vars(t: &NumTerm, out: &mut BTreeSet<u32>) {
    match t {
        NumTerm::Const(_) => {}
        NumTerm::Var(i) => {
            out.insert(*i);
        }
        NumTerm::Succ(a) => term_vars(a, out),
        NumTerm::Add(a, b) | NumTerm::Mul(a, b) => {
            term_vars(a, out);
            term_vars(b, out);
        }
        NumTerm::App(_, args) => {
            for a in args {
                term_vars(a, out);
            }
        }
    }
}

/// Variables of a term.
pub fn num_term_vars(t: &NumTerm) -> BTreeSet<u32> {
    let mut s = BTreeSet::new();
    term_vars(t, &mut s);
    s
}

/// Free number variables of a formula, in ascending order.
pub fn free_num_vars(f: &Formula) -> BTreeSet<u32> {
    fn walk(f: &Formula, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        let terms = |ts: &[NumTerm], bound: &Vec<u32>, out: &mut BTreeSet<u32>| {
            let mut s = BTreeSet::new();
            for t in ts {
                term_vars(t, &mut s);
            }
            for v in s {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match f {
            Formula::Eq(a, b) => terms(&[a.clone(), b.clone()], bound, out),
            Formula::InSet(t, _) => terms(&[t.clone()], bound, out),
            Formula::Rel(_, args) => terms(args, bound, out),
            Formula::False => {}
            Formula::Not(a) => walk(a, bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                walk(a, bound, out);
                walk(b, bound, out);
            }
            Formula::ForallNum(v, a) | Formula::ExistsNum(v, a) => {
                bound.push(*v);
                walk(a, bound, out);
                bound.pop();
            }
            Formula::ForallSet(_, a) | Formula::ExistsSet(_, a) => walk(a, bound, out),
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut Vec::new(), &mut out);
    out
}

/// Free set variables of a formula.
pub fn free_set_vars(f: &Formula) -> BTreeSet<u32> {
    fn walk(f: &Formula, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match f {
            Formula::InSet(_, x) => {
                if !bound.contains(x) {
                    out.insert(*x);
                }
            }
            Formula::Eq(..) | Formula::Rel(..) | Formula::False => {}
            Formula::Not(a) => walk(a, bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                walk(a, bound, out);
                walk(b, bound, out);
            }
            Formula::ForallNum(_, a) | Formula::ExistsNum(_, a) => walk(a, bound, out),
            Formula::ForallSet(x, a) | Formula::ExistsSet(x, a) => {
                bound.push(*x);
                walk(a, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut Vec::new(), &mut out);
    out
}

/// Largest number-variable index appearing anywhere (free or bound);
/// `None` when no number variable appears.
pub fn max_num_var(f: &Formula) -> Option<u32> {
    fn walk(f: &Formula, out: &mut Option<u32>) {
        let bump = |v: u32, out: &mut Option<u32>| {
            *out = Some(out.map_or(v, |m| m.max(v)));
        };
        let terms = |ts: &[&NumTerm], out: &mut Option<u32>| {
            let mut s = BTreeSet::new();
            for t in ts {
                term_vars(t, &mut s);
            }
            if let Some(&v) = s.iter().next_back() {
                *out = Some(out.map_or(v, |m| m.max(v)));
            }
        };
        match f {
            Formula::Eq(a, b) => terms(&[a, b], out),
            Formula::InSet(t, _) => terms(&[t], out),
            Formula::Rel(_, args) => terms(&args.iter().collect::<Vec<_>>(), out),
            Formula::False => {}
            Formula::Not(a) => walk(a, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Formula::ForallNum(v, a) | Formula::ExistsNum(v, a) => {
                bump(*v, out);
                walk(a, out);
            }
            Formula::ForallSet(_, a) | Formula::ExistsSet(_, a) => walk(a, out),
        }
    }
    let mut out = None;
    walk(f, &mut out);
    out
}

fn subst_in_term(t: &NumTerm, var: u32, repl: &NumTerm) -> NumTerm {
    match t {
        NumTerm::Const(_) => t.clone(),
        NumTerm::Var(i) => {
            if *i == var {
                repl.clone()
            } else {
                t.clone()
            }
        }
        NumTerm::Succ(a) => NumTerm::Succ(Box::new(subst_in_term(a, var, repl))),
        NumTerm::Add(a, b) => NumTerm::Add(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        NumTerm::Mul(a, b) => NumTerm::Mul(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        NumTerm::App(sym, args) => NumTerm::App(
            sym.clone(),
            args.iter().map(|a| subst_in_term(a, var, repl)).collect(),
        ),
    }
}

/// Replace free occurrences of vᵥₐᵣ by `repl`. The replacement must be
/// closed or use only variables not bound in `f` (numerals always qualify).
pub fn subst_num_var(f: &Formula, var: u32, repl: &NumTerm) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::Eq(
            subst_in_term(a, var, repl),
            subst_in_term(b, var, repl),
        ),
        Formula::InSet(t, x) => Formula::InSet(subst_in_term(t, var, repl), *x),
        Formula::Rel(sym, args) => Formula::Rel(
            sym.clone(),
            args.iter().map(|a| subst_in_term(a, var, repl)).collect(),
        ),
        Formula::False => Formula::False,
        Formula::Not(a) => Formula::not(subst_num_var(a, var, repl)),
        Formula::And(a, b) => Formula::and(
            subst_num_var(a, var, repl),
            subst_num_var(b, var, repl),
        ),
        Formula::Or(a, b) => Formula::or(
            subst_num_var(a, var, repl),
            subst_num_var(b, var, repl),
        ),
        Formula::Implies(a, b) => Formula::implies(
            subst_num_var(a, var, repl),
            subst_num_var(b, var, repl),
        ),
        Formula::Iff(a, b) => Formula::iff(
            subst_num_var(a, var, repl),
            subst_num_var(b, var, repl),
        ),
        Formula::ForallNum(v, a) => {
            if *v == var {
                f.clone()
            } else {
                Formula::forall(*v, subst_num_var(a, var, repl))
            }
        }
        Formula::ExistsNum(v, a) => {
            if *v == var {
                f.clone()
            } else {
                Formula::exists(*v, subst_num_var(a, var, repl))
            }
        }
        Formula::ForallSet(x, a) => {
            Formula::ForallSet(*x, Box::new(subst_num_var(a, var, repl)))
        }
        Formula::ExistsSet(x, a) => {
            Formula::ExistsSet(*x, Box::new(subst_num_var(a, var, repl)))
        }
    }
}

// ---------------------------------------------------------------------------
// The recursive syntax functions
// ---------------------------------------------------------------------------

/// Numeral substitution on codes: when `n` codes a formula, the code of
/// that formula with free vᵢ replaced by the numeral `k`; otherwise 0.
pub fn subst_f(n: &BigUint, i: &BigUint, k: &BigUint) -> BigUint {
    let Some(f) = decode(n) else {
        return BigUint::zero();
    };
    let Some(i) = i.to_u32() else {
        // Variable indices beyond the representable range cannot occur
        // free, so the formula is unchanged.
        return n.clone();
    };
    encode(&subst_num_var(&f, i, &NumTerm::Const(k.clone())))
}

/// Universal closure on codes: when `n` codes a formula, the code of
/// (∀vᵢ) applied to it; otherwise 0.
pub fn close_g(n: &BigUint, i: &BigUint) -> BigUint {
    let Some(f) = decode(n) else {
        return BigUint::zero();
    };
    let Some(i) = i.to_u32() else {
        return BigUint::zero();
    };
    encode(&Formula::forall(i, f))
}

/// The chain of substitution applications realizing "the code of A with all
/// free number variables replaced by their numerals": one nested `SubstF`
/// (or gate-indexed `SubstFAt`) application per free variable, ascending.
fn quote_chain(level: u32, gate: Option<&BigUint>, base: &BigUint, f: &Formula) -> NumTerm {
    let mut acc = NumTerm::big(base);
    for v in free_num_vars(f) {
        acc = match gate {
            None => NumTerm::App(
                FnSym::SubstF { level },
                vec![acc, NumTerm::nat(v as u64), NumTerm::Var(v)],
            ),
            Some(a) => NumTerm::App(
                FnSym::SubstFAt { level },
                vec![NumTerm::big(a), acc, NumTerm::nat(v as u64), NumTerm::Var(v)],
            ),
        };
    }
    acc
}

/// Truth biconditional for an unordered layer: A ↔ T(⌜A(numerals)⌝).
/// `None` when the formula has free set variables.
pub fn bicond_t_formula(level: u32, f: &Formula) -> Option<Formula> {
    if !free_set_vars(f).is_empty() {
        return None;
    }
    let chain = quote_chain(level, None, &encode(f), f);
    Some(Formula::iff(
        f.clone(),
        Formula::Rel(RelSym::Truth { level }, vec![chain]),
    ))
}

/// Code-level form of [`bicond_t_formula`]; 0 on failure.
pub fn bicond_t(level: u32, n: &BigUint) -> BigUint {
    decode(n)
        .and_then(|f| bicond_t_formula(level, &f))
        .map(|f| encode(&f))
        .unwrap_or_default()
}

/// Truth biconditional against the gate-`a` truth predicate of an ordered
/// layer: A ↔ T_a(⌜A(numerals)⌝). `None` on free set variables.
pub fn bicond_at_formula(level: u32, a: &BigUint, f: &Formula) -> Option<Formula> {
    if !free_set_vars(f).is_empty() {
        return None;
    }
    let chain = quote_chain(level, Some(a), &encode(f), f);
    Some(Formula::iff(
        f.clone(),
        Formula::Rel(
            RelSym::TruthAt {
                level,
                sub: a.clone(),
            },
            vec![chain],
        ),
    ))
}

/// Code-level form of [`bicond_at_formula`]; 0 when `n` codes no formula or
/// the formula has free set variables.
pub fn bicond_h(level: u32, a: &BigUint, n: &BigUint) -> BigUint {
    decode(n)
        .and_then(|f| bicond_at_formula(level, a, &f))
        .map(|f| encode(&f))
        .unwrap_or_default()
}

/// Compare two codes under a notation order. `None` when a code does not
/// fit the order's value domain.
pub fn code_cmp(order: OrderKind, x: &BigUint, y: &BigUint) -> Option<Ordering> {
    match order {
        OrderKind::Nat => Some(x.cmp(y)),
        OrderKind::Gamma0 => {
            let (a, b) = (x.to_u64()?, y.to_u64()?);
            Some(decode_nat(a).cmp(&decode_nat(b)))
        }
        OrderKind::Coeff => {
            let (a, b) = (x.to_u64()?, y.to_u64()?);
            Some(fv_decode_nat(a).cmp(&fv_decode_nat(b)))
        }
        OrderKind::Kappa => {
            let (a, b) = (x.to_u64()?, y.to_u64()?);
            Some(ext_decode_nat(ExtSystem::Kappa, a).cmp(&ext_decode_nat(ExtSystem::Kappa, b)))
        }
        OrderKind::Lambda => {
            let (a, b) = (x.to_u64()?, y.to_u64()?);
            Some(
                ext_decode_nat(ExtSystem::Lambda, a)
                    .cmp(&ext_decode_nat(ExtSystem::Lambda, b)),
            )
        }
    }
}

/// Whether every truth/acceptability symbol inside the formula coded by `n`
/// is available to the gate-`a` truth predicate of the given layer: symbols
/// of lower layers freely, this layer's indexed families only with
/// subscripts strictly below `a` (the acceptability family only when
/// `with_acc` is set). `false` on non-formulas.
pub fn readable_rd(
    order: OrderKind,
    level: u32,
    with_acc: bool,
    a: &BigUint,
    n: &BigUint,
) -> bool {
    let Some(f) = decode(n) else {
        return false;
    };
    readable_formula(order, level, with_acc, a, &f)
}

/// [`readable_rd`] on an already-decoded formula.
pub fn readable_formula(
    order: OrderKind,
    level: u32,
    with_acc: bool,
    a: &BigUint,
    f: &Formula,
) -> bool {
    fn term_ok(
        t: &NumTerm,
        order: OrderKind,
        level: u32,
        a: &BigUint,
    ) -> bool {
        match t {
            NumTerm::Const(_) | NumTerm::Var(_) => true,
            NumTerm::Succ(x) => term_ok(x, order, level, a),
            NumTerm::Add(x, y) | NumTerm::Mul(x, y) => {
                term_ok(x, order, level, a) && term_ok(y, order, level, a)
            }
            NumTerm::App(sym, args) => {
                sym.level().map_or(true, |l| l < level)
                    && args.iter().all(|x| term_ok(x, order, level, a))
            }
        }
    }
    fn rel_ok(
        sym: &RelSym,
        order: OrderKind,
        level: u32,
        with_acc: bool,
        a: &BigUint,
    ) -> bool {
        match sym {
            RelSym::TruthAt { level: l, sub } if *l == level => {
                code_cmp(order, sub, a) == Some(Ordering::Less)
            }
            RelSym::AccAt { level: l, sub } if *l == level => {
                with_acc && code_cmp(order, sub, a) == Some(Ordering::Less)
            }
            _ => sym.level().map_or(true, |l| l < level),
        }
    }
    fn walk(
        f: &Formula,
        order: OrderKind,
        level: u32,
        with_acc: bool,
        a: &BigUint,
    ) -> bool {
        match f {
            Formula::Eq(x, y) => term_ok(x, order, level, a) && term_ok(y, order, level, a),
            Formula::InSet(t, _) => term_ok(t, order, level, a),
            Formula::Rel(sym, args) => {
                rel_ok(sym, order, level, with_acc, a)
                    && args.iter().all(|t| term_ok(t, order, level, a))
            }
            Formula::False => true,
            Formula::Not(x) => walk(x, order, level, with_acc, a),
            Formula::And(x, y)
            | Formula::Or(x, y)
            | Formula::Implies(x, y)
            | Formula::Iff(x, y) => {
                walk(x, order, level, with_acc, a) && walk(y, order, level, with_acc, a)
            }
            Formula::ForallNum(_, x)
            | Formula::ExistsNum(_, x)
            | Formula::ForallSet(_, x)
            | Formula::ExistsSet(_, x) => walk(x, order, level, with_acc, a),
        }
    }
    walk(f, order, level, with_acc, a)
}

/// Whether `n` codes a formula with no free set variables.
pub fn bounded_bd(n: &BigUint) -> bool {
    decode(n).map_or(false, |f| free_set_vars(&f).is_empty())
}

// ---------------------------------------------------------------------------
// Notation arithmetic on codes
// ---------------------------------------------------------------------------

fn g0_code(x: &BigUint) -> Option<OrdTerm> {
    Some(decode_nat(x.to_u64()?))
}

fn cf_code(x: &BigUint) -> Option<CoeffTerm> {
    Some(fv_decode_nat(x.to_u64()?))
}

fn ext_code(system: ExtSystem, x: &BigUint) -> Option<crate::ext::ExtTerm> {
    Some(ext_decode_nat(system, x.to_u64()?))
}

/// Notation addition on codes; `None` outside the order's domain.
pub fn ord_add_code(order: OrderKind, x: &BigUint, y: &BigUint) -> Option<BigUint> {
    Some(match order {
        OrderKind::Nat => x + y,
        OrderKind::Gamma0 => BigUint::from(encode_nat(&g0_code(x)?.add(&g0_code(y)?))),
        OrderKind::Coeff => BigUint::from(fv_encode_nat(&cf_code(x)?.add(&cf_code(y)?))),
        OrderKind::Kappa => BigUint::from(ext_encode_nat(
            &ext_code(ExtSystem::Kappa, x)?.add(&ext_code(ExtSystem::Kappa, y)?),
        )),
        OrderKind::Lambda => BigUint::from(ext_encode_nat(
            &ext_code(ExtSystem::Lambda, x)?.add(&ext_code(ExtSystem::Lambda, y)?),
        )),
    })
}

/// Notation multiplication on codes. For the extended systems the left
/// factor must be a single summand; `None` otherwise.
pub fn ord_mul_code(order: OrderKind, x: &BigUint, y: &BigUint) -> Option<BigUint> {
    Some(match order {
        OrderKind::Nat => x * y,
        OrderKind::Gamma0 => BigUint::from(encode_nat(&g0_code(x)?.mul(&g0_code(y)?))),
        OrderKind::Coeff => BigUint::from(fv_encode_nat(&cf_code(x)?.mul(&cf_code(y)?))),
        OrderKind::Kappa | OrderKind::Lambda => {
            let system = if order == OrderKind::Kappa {
                ExtSystem::Kappa
            } else {
                ExtSystem::Lambda
            };
            let lead = ext_code(system, x)?;
            if lead.summands().len() != 1 {
                return None;
            }
            BigUint::from(ext_encode_nat(&ext_left_mul(&lead, &ext_code(system, y)?)))
        }
    })
}

/// ω-power on codes. For the κ system this is the step scale
/// (base·ω)^x taking a coefficient code to an extended code.
pub fn omega_pow_code(order: OrderKind, x: &BigUint) -> Option<BigUint> {
    Some(match order {
        OrderKind::Nat | OrderKind::Lambda => return None,
        OrderKind::Gamma0 => BigUint::from(encode_nat(&omega_pow(&g0_code(x)?))),
        OrderKind::Coeff => BigUint::from(fv_encode_nat(&fv_omega_pow(&cf_code(x)?))),
        OrderKind::Kappa => BigUint::from(ext_encode_nat(&kappa_omega_pow(&cf_code(x)?))),
    })
}

/// (a, m) ↦ the φ-notation code the pair points at: the binary form for the
/// Γ₀ order, the "next-index block" form φ(a, 0, m) for coefficients.
pub fn phi_dot_code(order: OrderKind, a: &BigUint, m: &BigUint) -> Option<BigUint> {
    Some(match order {
        OrderKind::Gamma0 => BigUint::from(encode_nat(&veblen(&g0_code(a)?, &g0_code(m)?))),
        OrderKind::Coeff => {
            let (a, m) = (cf_code(a)?, cf_code(m)?);
            BigUint::from(fv_encode_nat(&fv_veblen(&[a, CoeffTerm::zero(), m])))
        }
        _ => return None,
    })
}

fn g0_from_summands(ps: &[Principal]) -> OrdTerm {
    ps.iter()
        .fold(OrdTerm::zero(), |acc, p| acc.add(&veblen(p.index(), p.arg())))
}

fn cf_from_summands(ps: &[FvPrincipal]) -> CoeffTerm {
    ps.iter()
        .fold(CoeffTerm::zero(), |acc, p| acc.add(&fv_veblen(p.args())))
}

/// Drop the last summand of the notation a code names.
pub fn trunc_code(order: OrderKind, x: &BigUint) -> Option<BigUint> {
    fn drop_last<T: Clone>(s: &[T]) -> Vec<T> {
        s[..s.len().saturating_sub(1)].to_vec()
    }
    Some(match order {
        OrderKind::Nat => {
            if x.is_zero() {
                BigUint::zero()
            } else {
                x - 1u32
            }
        }
        OrderKind::Gamma0 => {
            let t = g0_code(x)?;
            BigUint::from(encode_nat(&g0_from_summands(&drop_last(t.summands()))))
        }
        OrderKind::Coeff => {
            let t = cf_code(x)?;
            BigUint::from(fv_encode_nat(&cf_from_summands(&drop_last(t.summands()))))
        }
        OrderKind::Kappa | OrderKind::Lambda => {
            let system = if order == OrderKind::Kappa {
                ExtSystem::Kappa
            } else {
                ExtSystem::Lambda
            };
            let t = ext_code(system, x)?;
            let mut acc = crate::ext::ExtTerm::zero(system);
            for s in drop_last(t.summands()) {
                acc = acc.add(&ext_single(system, s.exp.clone(), &s.coeff));
            }
            BigUint::from(ext_encode_nat(&acc))
        }
    })
}

/// The last summand of the notation a code names (0 for the zero notation).
pub fn stride_code(order: OrderKind, x: &BigUint) -> Option<BigUint> {
    Some(match order {
        OrderKind::Nat => {
            if x.is_zero() {
                BigUint::zero()
            } else {
                BigUint::one()
            }
        }
        OrderKind::Gamma0 => {
            let t = g0_code(x)?;
            let last: Vec<Principal> = t.summands().last().cloned().into_iter().collect();
            BigUint::from(encode_nat(&g0_from_summands(&last)))
        }
        OrderKind::Coeff => {
            let t = cf_code(x)?;
            let last: Vec<FvPrincipal> = t.summands().last().cloned().into_iter().collect();
            BigUint::from(fv_encode_nat(&cf_from_summands(&last)))
        }
        OrderKind::Kappa | OrderKind::Lambda => {
            let system = if order == OrderKind::Kappa {
                ExtSystem::Kappa
            } else {
                ExtSystem::Lambda
            };
            let t = ext_code(system, x)?;
            match t.summands().last() {
                None => BigUint::zero(),
                Some(s) => BigUint::from(ext_encode_nat(&ext_single(
                    system,
                    s.exp.clone(),
                    &s.coeff,
                ))),
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Schema builders
// ---------------------------------------------------------------------------

fn prec(order: OrderKind, x: NumTerm, y: NumTerm) -> Formula {
    Formula::Rel(RelSym::Prec { order }, vec![x, y])
}

fn fresh_above(f: &Formula, extra: &[&NumTerm]) -> u32 {
    let mut m = max_num_var(f).map_or(0, |v| v + 1);
    for t in extra {
        if let Some(&v) = num_term_vars(t).iter().next_back() {
            m = m.max(v + 1);
        }
    }
    m
}

/// Progressivity of A along the order: (∀b)[(∀c ≺ b)A(c) → A(b)], where A
/// is `a` read with distinguished variable `hole`.
pub fn build_prog(order: OrderKind, a: &Formula, hole: u32) -> Formula {
    let base = fresh_above(a, &[]).max(hole + 1);
    let (b, c) = (base, base + 1);
    let at = |v: u32| subst_num_var(a, hole, &NumTerm::Var(v));
    Formula::forall(
        b,
        Formula::implies(
            Formula::forall(
                c,
                Formula::implies(prec(order, NumTerm::Var(c), NumTerm::Var(b)), at(c)),
            ),
            at(b),
        ),
    )
}

/// Progressivity of membership in set variable Xₓ.
pub fn build_prog_set(order: OrderKind, x: u32) -> Formula {
    let (b, c) = (0, 1);
    Formula::forall(
        b,
        Formula::implies(
            Formula::forall(
                c,
                Formula::implies(
                    prec(order, NumTerm::Var(c), NumTerm::Var(b)),
                    Formula::InSet(NumTerm::Var(c), x),
                ),
            ),
            Formula::InSet(NumTerm::Var(b), x),
        ),
    )
}

/// Transfinite induction up to `bound` for A: Prog(A) → (∀b ≺ bound)A(b).
pub fn build_ti(order: OrderKind, a: &Formula, hole: u32, bound: &NumTerm) -> Formula {
    let b = fresh_above(a, &[bound]).max(hole + 1);
    let at = |v: u32| subst_num_var(a, hole, &NumTerm::Var(v));
    Formula::implies(
        build_prog(order, a, hole),
        Formula::forall(
            b,
            Formula::implies(prec(order, NumTerm::Var(b), bound.clone()), at(b)),
        ),
    )
}

/// Transfinite induction up to `bound` for membership in Xₓ.
pub fn build_ti_set(order: OrderKind, x: u32, bound: &NumTerm) -> Formula {
    let b = {
        let mut m = 0;
        if let Some(&v) = num_term_vars(bound).iter().next_back() {
            m = v + 1;
        }
        m
    };
    Formula::implies(
        build_prog_set(order, x),
        Formula::forall(
            b,
            Formula::implies(
                prec(order, NumTerm::Var(b), bound.clone()),
                Formula::InSet(NumTerm::Var(b), x),
            ),
        ),
    )
}

/// The jump statement: (∀y)[(∀x ≺ y)A(x) → (∀x ≺ y ∔ dist)A(x)].
pub fn build_j(order: OrderKind, a: &Formula, hole: u32, dist: &NumTerm) -> Formula {
    let base = fresh_above(a, &[dist]).max(hole + 1);
    let (y, x) = (base, base + 1);
    let at = |v: u32| subst_num_var(a, hole, &NumTerm::Var(v));
    let below = |bound: NumTerm| {
        Formula::forall(
            x,
            Formula::implies(prec(order, NumTerm::Var(x), bound), at(x)),
        )
    };
    Formula::forall(
        y,
        Formula::implies(
            below(NumTerm::Var(y)),
            below(NumTerm::App(
                FnSym::OrdAdd { order },
                vec![NumTerm::Var(y), dist.clone()],
            )),
        ),
    )
}

/// Bounded iterated jumpability over [lo, hi): at depth 1,
/// (∀ lo ⪯ x ≺ hi)[A(x) → A(x ∔ dist)]; at depth k+1 the same shape over
/// the depth-k statement with the running point as distance.
pub fn build_jk(
    order: OrderKind,
    k: u32,
    lo: &NumTerm,
    hi: &NumTerm,
    a: &Formula,
    hole: u32,
    dist: &NumTerm,
) -> Formula {
    assert!(k >= 1, "jump depth starts at 1");
    let base = fresh_above(a, &[lo, hi, dist]).max(hole + 1);
    let x = base + k;
    let in_range = Formula::and(
        Formula::or(
            prec(order, lo.clone(), NumTerm::Var(x)),
            Formula::Eq(lo.clone(), NumTerm::Var(x)),
        ),
        prec(order, NumTerm::Var(x), hi.clone()),
    );
    let step = NumTerm::App(
        FnSym::OrdAdd { order },
        vec![NumTerm::Var(x), dist.clone()],
    );
    let (at_x, at_step) = if k == 1 {
        (
            subst_num_var(a, hole, &NumTerm::Var(x)),
            subst_num_var(a, hole, &step),
        )
    } else {
        (
            build_jk(order, k - 1, lo, hi, a, hole, &NumTerm::Var(x)),
            build_jk(order, k - 1, lo, hi, a, hole, &step),
        )
    };
    Formula::forall(
        x,
        Formula::implies(in_range, Formula::implies(at_x, at_step)),
    )
}

/// The numeric decidability-to-omniscience shape:
/// (∀n)(A ∨ ¬A) → [(∀n)A ∨ (∃n)¬A], quantifying the hole variable.
pub fn build_nos(a: &Formula, hole: u32) -> Formula {
    Formula::implies(
        Formula::forall(hole, Formula::or(a.clone(), Formula::not(a.clone()))),
        Formula::or(
            Formula::forall(hole, a.clone()),
            Formula::exists(hole, Formula::not(a.clone())),
        ),
    )
}

/// Which coefficient-side order the quoted statements of a jump transfer
/// live in.
fn inner_order(order: OrderKind) -> OrderKind {
    match order {
        OrderKind::Gamma0 => OrderKind::Gamma0,
        OrderKind::Kappa | OrderKind::Lambda => OrderKind::Coeff,
        o => o,
    }
}

/// The truth-level index of a jump transfer: ω̇^a·b for the Γ₀ order, the
/// step-scale product for the κ order.
pub fn jump_level_code(order: OrderKind, a: &BigUint, b: &BigUint) -> Option<BigUint> {
    match order {
        OrderKind::Gamma0 => ord_mul_code(order, &omega_pow_code(order, a)?, b),
        OrderKind::Kappa => {
            let step = kappa_omega_pow(&cf_code(a)?);
            let rhs = ext_code(ExtSystem::Kappa, b)?;
            Some(BigUint::from(ext_encode_nat(&ext_left_mul(&step, &rhs))))
        }
        _ => None,
    }
}

/// The jump-transfer statement at parameters (a, b) with index term `m`:
/// every readable set-variable-free z has, at the (a,b) truth level, the
/// truth of "progressivity of [[z]] implies the jump of [[z]] by the
/// φ-notation at (a, m)".
pub fn build_jump_transfer(
    order: OrderKind,
    level: u32,
    a: &BigUint,
    b: &BigUint,
    m: &NumTerm,
) -> Option<Formula> {
    let w = jump_level_code(order, a, b)?;
    let io = inner_order(order);
    let z = {
        let mut base = 0;
        if let Some(&v) = num_term_vars(m).iter().next_back() {
            base = v + 1;
        }
        base
    };
    let quoted = NumTerm::App(
        FnSym::ImpQuote,
        vec![
            NumTerm::App(FnSym::ProgQuote { order: io }, vec![NumTerm::Var(z)]),
            NumTerm::App(
                FnSym::JQuote { order: io },
                vec![
                    NumTerm::Var(z),
                    NumTerm::App(
                        FnSym::PhiDot { order: io },
                        vec![NumTerm::big(a), m.clone()],
                    ),
                ],
            ),
        ],
    );
    Some(Formula::forall(
        z,
        Formula::implies(
            Formula::and(
                Formula::Rel(
                    RelSym::Rd { level },
                    vec![NumTerm::big(&w), NumTerm::Var(z)],
                ),
                Formula::Rel(RelSym::Bd, vec![NumTerm::Var(z)]),
            ),
            Formula::Rel(
                RelSym::TruthAt {
                    level,
                    sub: w.clone(),
                },
                vec![quoted],
            ),
        ),
    ))
}

/// The ladder statement over parameter term `a`: all gates b strictly
/// between 0 and the stage-n tower value satisfy, at the tower-level truth
/// predicate, the quoted progressivity of the jump transfer at (a, b). The
/// κ-order variant adds the type-0 and acceptability side conditions.
pub fn build_jump_ladder(
    order: OrderKind,
    level: u32,
    n: u32,
    a: &NumTerm,
) -> Option<Formula> {
    let b = {
        let mut base = 0;
        if let Some(&v) = num_term_vars(a).iter().next_back() {
            base = v + 1;
        }
        base
    };
    let ladder = |top: BigUint, side: Option<Formula>| {
        let quoted = NumTerm::App(
            FnSym::LadderQuote { level, order },
            vec![a.clone(), NumTerm::Var(b)],
        );
        let mut conds = vec![
            prec(order, NumTerm::Const(BigUint::zero()), NumTerm::Var(b)),
            prec(order, NumTerm::Var(b), NumTerm::big(&top)),
        ];
        if let Some(s) = side {
            conds.push(s);
        }
        Formula::forall(
            b,
            Formula::implies(
                Formula::and_all(conds),
                Formula::Rel(
                    RelSym::TruthAt {
                        level,
                        sub: top.clone(),
                    },
                    vec![quoted],
                ),
            ),
        )
    };
    match order {
        OrderKind::Gamma0 => {
            let top = BigUint::from(encode_nat(&gamma(n as u64)));
            Some(ladder(top, None))
        }
        OrderKind::Kappa => {
            let tower = ext_single(
                ExtSystem::Kappa,
                ExtExp::Plain(delta(n as u64)),
                &CoeffTerm::one(),
            );
            let top = BigUint::from(ext_encode_nat(&tower));
            let gate_val = NumTerm::App(
                FnSym::OrdMul { order },
                vec![
                    NumTerm::App(FnSym::OmegaPow { order }, vec![a.clone()]),
                    NumTerm::Var(b),
                ],
            );
            let side = Formula::and(
                Formula::Rel(RelSym::Typ0 { order }, vec![NumTerm::Var(b)]),
                Formula::Rel(
                    RelSym::AccAt {
                        level,
                        sub: top.clone(),
                    },
                    vec![gate_val],
                ),
            );
            Some(ladder(top, Some(side)))
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Designated-symbol evaluation
// ---------------------------------------------------------------------------

/// Meta-level value of a designated function symbol on concrete arguments.
/// `None` for symbols owned by the theory layer (axiom/rule enumerators and
/// the proof predicate) and for uninterpreted named symbols.
pub fn eval_fnsym(sym: &FnSym, args: &[BigUint]) -> Option<BigUint> {
    debug_assert_eq!(args.len(), sym.arity());
    let zero = BigUint::zero;
    Some(match sym {
        FnSym::Pair => pair2(&args[0], &args[1]),
        FnSym::Proj1 => unpair2(&args[0]).0,
        FnSym::Proj2 => unpair2(&args[0]).1,
        FnSym::AxOf { .. }
        | FnSym::DedOf { .. }
        | FnSym::AxAt { .. }
        | FnSym::DedAt { .. }
        | FnSym::Prf { .. }
        | FnSym::Named { .. } => return None,
        FnSym::SubstF { .. } => subst_f(&args[0], &args[1], &args[2]),
        FnSym::CloseG { .. } => close_g(&args[0], &args[1]),
        FnSym::SubstFAt { .. } => subst_f(&args[1], &args[2], &args[3]),
        FnSym::CloseGAt { .. } => close_g(&args[1], &args[2]),
        FnSym::BicondH { level } => bicond_h(*level, &args[0], &args[1]),
        FnSym::AccSeqAll { level, order } => {
            encode(&acc_seq_all_formula(*level, *order, &args[0]))
        }
        FnSym::AccSeqProg { level, order } => {
            encode(&acc_seq_prog_formula(*level, *order, &args[0]))
        }
        FnSym::AccCode { level } => encode(&Formula::Rel(
            RelSym::AccAt {
                level: *level,
                sub: args[0].clone(),
            },
            vec![NumTerm::big(&args[1])],
        )),
        FnSym::OrdAdd { order } => ord_add_code(*order, &args[0], &args[1]).unwrap_or_else(zero),
        FnSym::OrdMul { order } => ord_mul_code(*order, &args[0], &args[1]).unwrap_or_else(zero),
        FnSym::OmegaPow { order } => omega_pow_code(*order, &args[0]).unwrap_or_else(zero),
        FnSym::PhiDot { order } => {
            phi_dot_code(*order, &args[0], &args[1]).unwrap_or_else(zero)
        }
        FnSym::Trunc { order } => trunc_code(*order, &args[0]).unwrap_or_else(zero),
        FnSym::StrideOf { order } => stride_code(*order, &args[0]).unwrap_or_else(zero),
        FnSym::ImpQuote => match (decode(&args[0]), decode(&args[1])) {
            (Some(x), Some(y)) => encode(&Formula::implies(x, y)),
            _ => zero(),
        },
        FnSym::ProgQuote { order } => match decode(&args[0]) {
            Some(f) => encode(&build_prog(*order, &f, 1)),
            None => zero(),
        },
        FnSym::JQuote { order } => match decode(&args[0]) {
            Some(f) => encode(&build_j(*order, &f, 1, &NumTerm::big(&args[1]))),
            None => zero(),
        },
        FnSym::LadderQuote { level, order } => {
            ladder_quote(*level, *order, &args[0], &args[1]).unwrap_or_else(zero)
        }
    })
}

/// The formula "(∀c)[Seq(c, b̄) → Acc_b(c)]".
pub fn acc_seq_all_formula(level: u32, order: OrderKind, b: &BigUint) -> Formula {
    let c = 0;
    Formula::forall(
        c,
        Formula::implies(
            Formula::Rel(
                RelSym::Seq { order },
                vec![NumTerm::Var(c), NumTerm::big(b)],
            ),
            Formula::Rel(
                RelSym::AccAt {
                    level,
                    sub: b.clone(),
                },
                vec![NumTerm::Var(c)],
            ),
        ),
    )
}

/// The formula stating progressivity (along the order) of
/// "Seq(c, b̄) → Acc_b(c)".
pub fn acc_seq_prog_formula(level: u32, order: OrderKind, b: &BigUint) -> Formula {
    let c = 0;
    let body = Formula::implies(
        Formula::Rel(
            RelSym::Seq { order },
            vec![NumTerm::Var(c), NumTerm::big(b)],
        ),
        Formula::Rel(
            RelSym::AccAt {
                level,
                sub: b.clone(),
            },
            vec![NumTerm::Var(c)],
        ),
    );
    build_prog(order, &body, c)
}

/// Code of the m-progressivity of the jump transfer at concrete (a, b).
fn ladder_quote(level: u32, order: OrderKind, a: &BigUint, b: &BigUint) -> Option<BigUint> {
    let hole = 1u32;
    let body = build_jump_transfer(order, level, a, b, &NumTerm::Var(hole))?;
    Some(encode(&build_prog(inner_order(order), &body, hole)))
}

// ---------------------------------------------------------------------------
// Structured text form
// ---------------------------------------------------------------------------

fn sym_text(sym: &FnSym) -> String {
    match sym {
        FnSym::Pair => "pair".into(),
        FnSym::Proj1 => "p1".into(),
        FnSym::Proj2 => "p2".into(),
        FnSym::AxOf { level } => format!("ax.{level}"),
        FnSym::DedOf { level } => format!("ded.{level}"),
        FnSym::SubstF { level } => format!("sf.{level}"),
        FnSym::CloseG { level } => format!("cg.{level}"),
        FnSym::AxAt { level } => format!("axat.{level}"),
        FnSym::DedAt { level } => format!("dedat.{level}"),
        FnSym::SubstFAt { level } => format!("sfat.{level}"),
        FnSym::CloseGAt { level } => format!("cgat.{level}"),
        FnSym::BicondH { level } => format!("bic.{level}"),
        FnSym::Prf { level } => format!("prf.{level}"),
        FnSym::AccSeqAll { level, order } => format!("aqall.{level}.{}", order.tag()),
        FnSym::AccSeqProg { level, order } => format!("aqprog.{level}.{}", order.tag()),
        FnSym::AccCode { level } => format!("aq.{level}"),
        FnSym::OrdAdd { order } => format!("oadd.{}", order.tag()),
        FnSym::OrdMul { order } => format!("omul.{}", order.tag()),
        FnSym::OmegaPow { order } => format!("wpow.{}", order.tag()),
        FnSym::PhiDot { order } => format!("phidot.{}", order.tag()),
        FnSym::Trunc { order } => format!("trunc.{}", order.tag()),
        FnSym::StrideOf { order } => format!("stride.{}", order.tag()),
        FnSym::ImpQuote => "impq".into(),
        FnSym::ProgQuote { order } => format!("progq.{}", order.tag()),
        FnSym::JQuote { order } => format!("jq.{}", order.tag()),
        FnSym::LadderQuote { level, order } => format!("ladq.{level}.{}", order.tag()),
        FnSym::Named { name, arity } => format!("n:{name}:{arity}"),
    }
}

fn sym_from_text(s: &str) -> Option<FnSym> {
    if let Some(rest) = s.strip_prefix("n:") {
        let (name, arity) = rest.rsplit_once(':')?;
        return Some(FnSym::Named {
            name: name.to_string(),
            arity: arity.parse().ok()?,
        });
    }
    let parts: Vec<&str> = s.split('.').collect();
    let lvl = |i: usize| -> Option<u32> { parts.get(i)?.parse().ok() };
    let ord = |i: usize| -> Option<OrderKind> { OrderKind::from_tag(parts.get(i)?) };
    Some(match parts[0] {
        "pair" => FnSym::Pair,
        "p1" => FnSym::Proj1,
        "p2" => FnSym::Proj2,
        "ax" => FnSym::AxOf { level: lvl(1)? },
        "ded" => FnSym::DedOf { level: lvl(1)? },
        "sf" => FnSym::SubstF { level: lvl(1)? },
        "cg" => FnSym::CloseG { level: lvl(1)? },
        "axat" => FnSym::AxAt { level: lvl(1)? },
        "dedat" => FnSym::DedAt { level: lvl(1)? },
        "sfat" => FnSym::SubstFAt { level: lvl(1)? },
        "cgat" => FnSym::CloseGAt { level: lvl(1)? },
        "bic" => FnSym::BicondH { level: lvl(1)? },
        "prf" => FnSym::Prf { level: lvl(1)? },
        "aqall" => FnSym::AccSeqAll {
            level: lvl(1)?,
            order: ord(2)?,
        },
        "aqprog" => FnSym::AccSeqProg {
            level: lvl(1)?,
            order: ord(2)?,
        },
        "aq" => FnSym::AccCode { level: lvl(1)? },
        "oadd" => FnSym::OrdAdd { order: ord(1)? },
        "omul" => FnSym::OrdMul { order: ord(1)? },
        "wpow" => FnSym::OmegaPow { order: ord(1)? },
        "phidot" => FnSym::PhiDot { order: ord(1)? },
        "trunc" => FnSym::Trunc { order: ord(1)? },
        "stride" => FnSym::StrideOf { order: ord(1)? },
        "impq" => FnSym::ImpQuote,
        "progq" => FnSym::ProgQuote { order: ord(1)? },
        "jq" => FnSym::JQuote { order: ord(1)? },
        "ladq" => FnSym::LadderQuote {
            level: lvl(1)?,
            order: ord(2)?,
        },
        _ => return None,
    })
}

fn rel_text(sym: &RelSym) -> String {
    match sym {
        RelSym::Truth { level } => format!("T.{level}"),
        RelSym::TruthAt { level, sub } => format!("T.{level}.{sub}"),
        RelSym::Acc { level } => format!("acc.{level}"),
        RelSym::AccAt { level, sub } => format!("acc.{level}.{sub}"),
        RelSym::Rd { level } => format!("rd.{level}"),
        RelSym::Bd => "bd".into(),
        RelSym::Prec { order } => format!("prec.{}", order.tag()),
        RelSym::Seq { order } => format!("seq.{}", order.tag()),
        RelSym::Typ0 { order } => format!("typ0.{}", order.tag()),
        RelSym::TypeIs { order } => format!("typeis.{}", order.tag()),
        RelSym::Lt => "lt".into(),
        RelSym::Plain(name) => format!("r:{name}"),
    }
}

fn rel_from_text(s: &str) -> Option<RelSym> {
    if let Some(name) = s.strip_prefix("r:") {
        return Some(RelSym::Plain(name.to_string()));
    }
    let parts: Vec<&str> = s.split('.').collect();
    let lvl = |i: usize| -> Option<u32> { parts.get(i)?.parse().ok() };
    let ord = |i: usize| -> Option<OrderKind> { OrderKind::from_tag(parts.get(i)?) };
    Some(match parts[0] {
        "T" => {
            if parts.len() == 2 {
                RelSym::Truth { level: lvl(1)? }
            } else {
                RelSym::TruthAt {
                    level: lvl(1)?,
                    sub: parts.get(2)?.parse().ok()?,
                }
            }
        }
        "acc" => {
            if parts.len() == 2 {
                RelSym::Acc { level: lvl(1)? }
            } else {
                RelSym::AccAt {
                    level: lvl(1)?,
                    sub: parts.get(2)?.parse().ok()?,
                }
            }
        }
        "rd" => RelSym::Rd { level: lvl(1)? },
        "bd" => RelSym::Bd,
        "prec" => RelSym::Prec { order: ord(1)? },
        "seq" => RelSym::Seq { order: ord(1)? },
        "typ0" => RelSym::Typ0 { order: ord(1)? },
        "typeis" => RelSym::TypeIs { order: ord(1)? },
        "lt" => RelSym::Lt,
        _ => return None,
    })
}

/// Structured text for a term (prefix form).
pub fn render_num_term(t: &NumTerm) -> String {
    match t {
        NumTerm::Const(n) => format!("(const {n})"),
        NumTerm::Var(i) => format!("(v {i})"),
        NumTerm::Succ(a) => format!("(s {})", render_num_term(a)),
        NumTerm::Add(a, b) => format!("(+ {} {})", render_num_term(a), render_num_term(b)),
        NumTerm::Mul(a, b) => format!("(* {} {})", render_num_term(a), render_num_term(b)),
        NumTerm::App(sym, args) => {
            let mut out = format!("(ap {}", sym_text(sym));
            for a in args {
                out.push(' ');
                out.push_str(&render_num_term(a));
            }
            out.push(')');
            out
        }
    }
}

/// Structured text for a formula (prefix form).
pub fn render_formula(f: &Formula) -> String {
    match f {
        Formula::Eq(a, b) => format!("(= {} {})", render_num_term(a), render_num_term(b)),
        Formula::InSet(t, x) => format!("(in {} {x})", render_num_term(t)),
        Formula::Rel(sym, args) => {
            let mut out = format!("(rel {}", rel_text(sym));
            for a in args {
                out.push(' ');
                out.push_str(&render_num_term(a));
            }
            out.push(')');
            out
        }
        Formula::False => "false".into(),
        Formula::Not(a) => format!("(not {})", render_formula(a)),
        Formula::And(a, b) => format!("(and {} {})", render_formula(a), render_formula(b)),
        Formula::Or(a, b) => format!("(or {} {})", render_formula(a), render_formula(b)),
        Formula::Implies(a, b) => {
            format!("(-> {} {})", render_formula(a), render_formula(b))
        }
        Formula::Iff(a, b) => format!("(<-> {} {})", render_formula(a), render_formula(b)),
        Formula::ForallNum(v, a) => format!("(all {v} {})", render_formula(a)),
        Formula::ExistsNum(v, a) => format!("(ex {v} {})", render_formula(a)),
        Formula::ForallSet(v, a) => format!("(allX {v} {})", render_formula(a)),
        Formula::ExistsSet(v, a) => format!("(exX {v} {})", render_formula(a)),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

pub(crate) struct SexprLexer<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> SexprLexer<'a> {
    pub(crate) fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub(crate) fn atom(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src[self.pos..]
            .starts_with(|c: char| !c.is_whitespace() && c != '(' && c != ')')
        {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
        if self.pos == start {
            Err(self.error("expected an atom"))
        } else {
            Ok(&self.src[start..self.pos])
        }
    }

    pub(crate) fn error(&mut self, msg: impl fmt::Display) -> ParseError {
        self.skip_ws();
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }
}

pub(crate) fn parse_term_sexpr(lx: &mut SexprLexer) -> Result<NumTerm, ParseError> {
    lx.expect('(')?;
    let head = lx.atom()?;
    let t = match head {
        "const" => {
            let a = lx.atom()?;
            NumTerm::Const(
                a.parse()
                    .map_err(|_| lx.error("expected a numeral"))?,
            )
        }
        "v" => {
            let a = lx.atom()?;
            NumTerm::Var(a.parse().map_err(|_| lx.error("expected a variable index"))?)
        }
        "s" => NumTerm::Succ(Box::new(parse_term_sexpr(lx)?)),
        "+" => NumTerm::Add(
            Box::new(parse_term_sexpr(lx)?),
            Box::new(parse_term_sexpr(lx)?),
        ),
        "*" => NumTerm::Mul(
            Box::new(parse_term_sexpr(lx)?),
            Box::new(parse_term_sexpr(lx)?),
        ),
        "ap" => {
            let name = lx.atom()?;
            let sym =
                sym_from_text(name).ok_or_else(|| lx.error("unknown function symbol"))?;
            let mut args = vec![];
            for _ in 0..sym.arity() {
                args.push(parse_term_sexpr(lx)?);
            }
            NumTerm::App(sym, args)
        }
        _ => return Err(lx.error("unknown term head")),
    };
    lx.expect(')')?;
    Ok(t)
}

pub(crate) fn parse_formula_sexpr_inner(lx: &mut SexprLexer) -> Result<Formula, ParseError> {
    if lx.peek() != Some('(') {
        let a = lx.atom()?;
        if a == "false" {
            return Ok(Formula::False);
        }
        return Err(lx.error("expected a formula"));
    }
    lx.expect('(')?;
    let head = lx.atom()?;
    let f = match head {
        "=" => Formula::Eq(parse_term_sexpr(lx)?, parse_term_sexpr(lx)?),
        "in" => {
            let t = parse_term_sexpr(lx)?;
            let x = lx.atom()?;
            Formula::InSet(
                t,
                x.parse().map_err(|_| lx.error("expected a set index"))?,
            )
        }
        "rel" => {
            let name = lx.atom()?;
            let sym =
                rel_from_text(name).ok_or_else(|| lx.error("unknown relation symbol"))?;
            let mut args = vec![];
            while lx.peek() == Some('(') {
                args.push(parse_term_sexpr(lx)?);
            }
            if let Some(k) = sym.arity() {
                if args.len() != k {
                    return Err(lx.error("wrong relation arity"));
                }
            }
            Formula::Rel(sym, args)
        }
        "not" => Formula::not(parse_formula_sexpr_inner(lx)?),
        "and" => Formula::and(
            parse_formula_sexpr_inner(lx)?,
            parse_formula_sexpr_inner(lx)?,
        ),
        "or" => Formula::or(
            parse_formula_sexpr_inner(lx)?,
            parse_formula_sexpr_inner(lx)?,
        ),
        "->" => Formula::implies(
            parse_formula_sexpr_inner(lx)?,
            parse_formula_sexpr_inner(lx)?,
        ),
        "<->" => Formula::iff(
            parse_formula_sexpr_inner(lx)?,
            parse_formula_sexpr_inner(lx)?,
        ),
        "all" | "ex" | "allX" | "exX" => {
            let v: u32 = lx
                .atom()?
                .parse()
                .map_err(|_| lx.error("expected a variable index"))?;
            let body = parse_formula_sexpr_inner(lx)?;
            match head {
                "all" => Formula::forall(v, body),
                "ex" => Formula::exists(v, body),
                "allX" => Formula::ForallSet(v, Box::new(body)),
                _ => Formula::ExistsSet(v, Box::new(body)),
            }
        }
        _ => return Err(lx.error("unknown formula head")),
    };
    lx.expect(')')?;
    Ok(f)
}

/// Parse the structured text form of a formula, requiring the whole string
/// to be consumed.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut lx = SexprLexer { src, pos: 0 };
    let f = parse_formula_sexpr_inner(&mut lx)?;
    lx.skip_ws();
    if lx.pos == src.len() {
        Ok(f)
    } else {
        Err(lx.error("trailing input"))
    }
}

/// Human-readable description of the numbering scheme: serialization rules
/// and the symbol tag tables.
pub fn numbering_table() -> String {
    let mut out = String::new();
    out.push_str(
        "Formula numbering\n\
         =================\n\
         A formula is serialized to a self-delimiting bit stream and read as\n\
         a natural number with a leading guard bit (so 0 codes nothing and\n\
         decode(0) is rejected). Naturals inside the stream are written as\n\
         (len(n+1)-1) zeros followed by the bits of n+1, most significant\n\
         first. Every code therefore decodes to at most one formula, and the\n\
         decoder rejects any stream with trailing or missing bits.\n\n\
         Term tags: 0 numeral, 1 variable, 2 successor, 3 addition,\n\
         4 multiplication, 5 function application (symbol, then arguments,\n\
         arity fixed by the symbol).\n\n\
         Formula tags: 0 equality, 1 set membership, 2 relation application\n\
         (symbol, argument count, arguments), 3 falsum, 4 negation,\n\
         5 conjunction, 6 disjunction, 7 implication, 8 biconditional,\n\
         9/10 number quantifiers, 11/12 set quantifiers.\n\n\
         Order tags: 0 numeric, 1 binary-Veblen (g0), 2 coefficient (cf),\n\
         3 base-k extended (kk), 4 base-l extended (lm).\n\n",
    );
    out.push_str("Function symbols (tag, text, arity):\n");
    let fns: Vec<(u32, FnSym)> = vec![
        (0, FnSym::Pair),
        (1, FnSym::Proj1),
        (2, FnSym::Proj2),
        (3, FnSym::AxOf { level: 1 }),
        (4, FnSym::DedOf { level: 1 }),
        (5, FnSym::SubstF { level: 1 }),
        (6, FnSym::CloseG { level: 1 }),
        (7, FnSym::AxAt { level: 1 }),
        (8, FnSym::DedAt { level: 1 }),
        (9, FnSym::SubstFAt { level: 1 }),
        (10, FnSym::CloseGAt { level: 1 }),
        (11, FnSym::BicondH { level: 1 }),
        (12, FnSym::Prf { level: 1 }),
        (
            13,
            FnSym::AccSeqAll {
                level: 1,
                order: OrderKind::Kappa,
            },
        ),
        (
            14,
            FnSym::AccSeqProg {
                level: 1,
                order: OrderKind::Kappa,
            },
        ),
        (15, FnSym::AccCode { level: 1 }),
        (16, FnSym::OrdAdd { order: OrderKind::Gamma0 }),
        (17, FnSym::OrdMul { order: OrderKind::Gamma0 }),
        (18, FnSym::OmegaPow { order: OrderKind::Gamma0 }),
        (19, FnSym::PhiDot { order: OrderKind::Gamma0 }),
        (20, FnSym::Trunc { order: OrderKind::Kappa }),
        (21, FnSym::StrideOf { order: OrderKind::Kappa }),
        (22, FnSym::ImpQuote),
        (23, FnSym::ProgQuote { order: OrderKind::Gamma0 }),
        (24, FnSym::JQuote { order: OrderKind::Gamma0 }),
        (
            25,
            FnSym::LadderQuote {
                level: 1,
                order: OrderKind::Gamma0,
            },
        ),
        (
            26,
            FnSym::Named {
                name: "example".into(),
                arity: 2,
            },
        ),
    ];
    for (tag, sym) in fns {
        out.push_str(&format!(
            "  {tag:>2}  {:<14} arity {}\n",
            sym_text(&sym),
            sym.arity()
        ));
    }
    out.push_str("\nRelation symbols (tag, text, arity):\n");
    let rels: Vec<(u32, RelSym)> = vec![
        (0, RelSym::Truth { level: 1 }),
        (
            1,
            RelSym::TruthAt {
                level: 1,
                sub: BigUint::from(7u32),
            },
        ),
        (2, RelSym::Acc { level: 1 }),
        (
            3,
            RelSym::AccAt {
                level: 1,
                sub: BigUint::from(7u32),
            },
        ),
        (4, RelSym::Rd { level: 1 }),
        (5, RelSym::Bd),
        (6, RelSym::Prec { order: OrderKind::Gamma0 }),
        (7, RelSym::Seq { order: OrderKind::Kappa }),
        (8, RelSym::Typ0 { order: OrderKind::Kappa }),
        (9, RelSym::TypeIs { order: OrderKind::Lambda }),
        (10, RelSym::Lt),
        (11, RelSym::Plain("example".into())),
    ];
    for (tag, sym) in rels {
        let ar = sym
            .arity()
            .map(|k| k.to_string())
            .unwrap_or_else(|| "any".into());
        out.push_str(&format!(
            "  {tag:>2}  {:<14} arity {ar}\n",
            rel_text(&sym)
        ));
    }
    out.push_str(
        "\nConventions: substitution/closure functions return 0 on inputs\n\
         that code no formula; notation arithmetic on codes returns 0\n\
         outside its domain; quote builders return 0 on non-formula codes.\n",
    );
    out
}

// ---------------------------------------------------------------------------
// Deterministic sample formulas
// ---------------------------------------------------------------------------

/// Small deterministic pseudo-random source for reproducible samples.
#[derive(Clone)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> SplitMix {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

fn sample_term(rng: &mut SplitMix, depth: u32) -> NumTerm {
    if depth == 0 {
        return match rng.below(3) {
            0 => NumTerm::Const(BigUint::from(rng.below(20))),
            _ => NumTerm::Var(rng.below(6) as u32),
        };
    }
    match rng.below(8) {
        0 => NumTerm::Const(BigUint::from(rng.below(50))),
        1 | 2 => NumTerm::Var(rng.below(6) as u32),
        3 => NumTerm::Succ(Box::new(sample_term(rng, depth - 1))),
        4 => NumTerm::Add(
            Box::new(sample_term(rng, depth - 1)),
            Box::new(sample_term(rng, depth - 1)),
        ),
        5 => NumTerm::Mul(
            Box::new(sample_term(rng, depth - 1)),
            Box::new(sample_term(rng, depth - 1)),
        ),
        6 => NumTerm::App(
            FnSym::Pair,
            vec![sample_term(rng, depth - 1), sample_term(rng, depth - 1)],
        ),
        _ => {
            let sym = match rng.below(4) {
                0 => FnSym::SubstF { level: 1 },
                1 => FnSym::OrdAdd {
                    order: OrderKind::Gamma0,
                },
                2 => FnSym::Proj1,
                _ => FnSym::CloseG { level: 1 },
            };
            let args = (0..sym.arity()).map(|_| sample_term(rng, depth - 1)).collect();
            NumTerm::App(sym, args)
        }
    }
}

/// Deterministic sample formula for round-trip and oracle tests.
pub fn sample_formula(rng: &mut SplitMix, depth: u32) -> Formula {
    if depth == 0 {
        return match rng.below(3) {
            0 => Formula::Eq(sample_term(rng, 0), sample_term(rng, 0)),
            1 => Formula::InSet(sample_term(rng, 0), rng.below(3) as u32),
            _ => Formula::False,
        };
    }
    match rng.below(13) {
        0 => Formula::Eq(sample_term(rng, depth - 1), sample_term(rng, depth - 1)),
        1 => Formula::InSet(sample_term(rng, depth - 1), rng.below(3) as u32),
        2 => {
            let sym = match rng.below(5) {
                0 => RelSym::Truth { level: 1 },
                1 => RelSym::TruthAt {
                    level: 1,
                    sub: BigUint::from(rng.below(50)),
                },
                2 => RelSym::Prec {
                    order: OrderKind::Gamma0,
                },
                3 => RelSym::Lt,
                _ => RelSym::Acc { level: 1 },
            };
            let k = sym.arity().unwrap();
            let args = (0..k).map(|_| sample_term(rng, depth - 1)).collect();
            Formula::Rel(sym, args)
        }
        3 => Formula::False,
        4 => Formula::not(sample_formula(rng, depth - 1)),
        5 => Formula::and(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        6 => Formula::or(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        7 => Formula::implies(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        8 => Formula::iff(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        9 => Formula::forall(rng.below(6) as u32, sample_formula(rng, depth - 1)),
        10 => Formula::exists(rng.below(6) as u32, sample_formula(rng, depth - 1)),
        11 => Formula::ForallSet(
            rng.below(3) as u32,
            Box::new(sample_formula(rng, depth - 1)),
        ),
        _ => Formula::ExistsSet(
            rng.below(3) as u32,
            Box::new(sample_formula(rng, depth - 1)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> BigUint {
        BigUint::from(k)
    }

    #[test]
    fn pairing_laws() {
        let cases = [(0u64, 0u64), (1, 0), (0, 1), (7, 3), (100, 255)];
        for (x, y) in cases {
            let p = pair2(&n(x), &n(y));
            assert_eq!(unpair2(&p), (n(x), n(y)));
        }
        // Bijectivity on a prefix: unpair then pair is the identity.
        for k in 0..10_000u64 {
            let (x, y) = unpair2(&n(k));
            assert_eq!(pair2(&x, &y), n(k));
        }
        let t = pair(&[n(4), n(9), n(2)]);
        assert_eq!(proj(1, 3, &t), n(4));
        assert_eq!(proj(2, 3, &t), n(9));
        assert_eq!(proj(3, 3, &t), n(2));
        // The arity-2 and arity-3 tuples of the same leading values differ.
        assert_ne!(pair(&[n(4), n(9)]), t);
    }

    #[test]
    fn codec_round_trips() {
        let zero_eq = Formula::Eq(NumTerm::nat(0), NumTerm::nat(0));
        assert_eq!(decode(&encode(&zero_eq)), Some(zero_eq.clone()));
        let mut rng = SplitMix::new(7);
        for _ in 0..500 {
            let f = sample_formula(&mut rng, 4);
            let c = encode(&f);
            assert_eq!(decode(&c), Some(f.clone()));
        }
    }

    #[test]
    fn decode_is_exact_inverse_on_its_domain() {
        assert_eq!(decode(&BigUint::zero()), None);
        let mut hits = 0;
        for k in 0..30_000u64 {
            if let Some(f) = decode(&n(k)) {
                assert_eq!(encode(&f), n(k));
                hits += 1;
            }
        }
        assert!(hits > 0, "some small codes decode");
    }

    #[test]
    fn substitution_on_codes() {
        // v1 = 0, substituting 3 for v1.
        let f = Formula::Eq(NumTerm::Var(1), NumTerm::nat(0));
        let c = encode(&f);
        let expect = Formula::Eq(NumTerm::nat(3), NumTerm::nat(0));
        assert_eq!(subst_f(&c, &n(1), &n(3)), encode(&expect));
        // Bound occurrences stay.
        let g = Formula::forall(1, f.clone());
        let cg = encode(&g);
        assert_eq!(subst_f(&cg, &n(1), &n(3)), cg);
        // Non-formula codes map to 0.
        assert_eq!(subst_f(&BigUint::zero(), &n(1), &n(3)), BigUint::zero());
        // Closure binds the variable.
        let closed = close_g(&c, &n(1));
        assert_eq!(decode(&closed), Some(g));
        assert_eq!(close_g(&BigUint::zero(), &n(1)), BigUint::zero());
    }

    #[test]
    fn biconditional_shapes() {
        // Sentence: A ↔ T(⌜A⌝) with the bare code.
        let a = Formula::Eq(NumTerm::nat(0), NumTerm::nat(0));
        let c = encode(&a);
        let b = bicond_t_formula(1, &a).unwrap();
        assert_eq!(
            b,
            Formula::iff(
                a.clone(),
                Formula::Rel(RelSym::Truth { level: 1 }, vec![NumTerm::big(&c)])
            )
        );
        // One free variable: a single substitution link.
        let open = Formula::Eq(NumTerm::Var(1), NumTerm::Var(1));
        let oc = encode(&open);
        let ob = bicond_t_formula(1, &open).unwrap();
        let chain = NumTerm::App(
            FnSym::SubstF { level: 1 },
            vec![NumTerm::big(&oc), NumTerm::nat(1), NumTerm::Var(1)],
        );
        assert_eq!(
            ob,
            Formula::iff(
                open.clone(),
                Formula::Rel(RelSym::Truth { level: 1 }, vec![chain])
            )
        );
        // Free set variables are rejected.
        let withset = Formula::InSet(NumTerm::Var(1), 0);
        assert!(bicond_t_formula(1, &withset).is_none());
        assert_eq!(bicond_h(1, &n(5), &encode(&withset)), BigUint::zero());
        // The gate-indexed variant uses the indexed family and chain.
        let hb = bicond_at_formula(1, &n(5), &open).unwrap();
        match hb {
            Formula::Iff(_, rhs) => match *rhs {
                Formula::Rel(RelSym::TruthAt { level: 1, ref sub }, ref args) => {
                    assert_eq!(sub, &n(5));
                    assert!(matches!(
                        args[0],
                        NumTerm::App(FnSym::SubstFAt { level: 1 }, _)
                    ));
                }
                ref other => panic!("unexpected rhs {other:?}"),
            },
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn readability_and_boundedness() {
        let base = Formula::Eq(NumTerm::nat(0), NumTerm::nat(0));
        let cb = encode(&base);
        // Order positions: code 5 vs code 9 in the Γ₀ enumeration.
        let lo = n(5);
        let hi = n(9);
        assert_eq!(
            code_cmp(OrderKind::Gamma0, &lo, &hi),
            Some(Ordering::Less)
        );
        let t_lo = encode(&Formula::Rel(
            RelSym::TruthAt {
                level: 1,
                sub: lo.clone(),
            },
            vec![NumTerm::nat(0)],
        ));
        assert!(readable_rd(OrderKind::Gamma0, 1, false, &hi, &cb));
        assert!(readable_rd(OrderKind::Gamma0, 1, false, &hi, &t_lo));
        assert!(!readable_rd(OrderKind::Gamma0, 1, false, &lo, &t_lo));
        assert!(!readable_rd(OrderKind::Gamma0, 1, false, &hi, &BigUint::zero()));
        // The plain acceptability symbol of the same layer is never readable.
        let acc = encode(&Formula::Rel(RelSym::Acc { level: 1 }, vec![NumTerm::nat(0)]));
        assert!(!readable_rd(OrderKind::Gamma0, 1, false, &hi, &acc));
        // The indexed acceptability family needs the flag.
        let acc_lo = encode(&Formula::Rel(
            RelSym::AccAt {
                level: 1,
                sub: lo.clone(),
            },
            vec![NumTerm::nat(0)],
        ));
        assert!(!readable_rd(OrderKind::Gamma0, 1, false, &hi, &acc_lo));
        assert!(readable_rd(OrderKind::Gamma0, 1, true, &hi, &acc_lo));
        // Monotonicity spot check: readable at lo implies readable at hi.
        for code in 0..200u64 {
            if readable_rd(OrderKind::Gamma0, 1, false, &lo, &n(code)) {
                assert!(readable_rd(OrderKind::Gamma0, 1, false, &hi, &n(code)));
            }
        }
        // Boundedness.
        assert!(bounded_bd(&cb));
        assert!(!bounded_bd(&encode(&Formula::InSet(NumTerm::nat(0), 1))));
        let bound_set = Formula::ForallSet(1, Box::new(Formula::InSet(NumTerm::nat(0), 1)));
        assert!(bounded_bd(&encode(&bound_set)));
        assert!(!bounded_bd(&BigUint::zero()));
    }

    #[test]
    fn progressivity_and_induction_shapes() {
        let order = OrderKind::Gamma0;
        let a = Formula::Eq(NumTerm::Var(0), NumTerm::Var(0));
        let p = build_prog(order, &a, 0);
        let expect = Formula::forall(
            1,
            Formula::implies(
                Formula::forall(
                    2,
                    Formula::implies(
                        prec(order, NumTerm::Var(2), NumTerm::Var(1)),
                        Formula::Eq(NumTerm::Var(2), NumTerm::Var(2)),
                    ),
                ),
                Formula::Eq(NumTerm::Var(1), NumTerm::Var(1)),
            ),
        );
        assert_eq!(p, expect);
        let ti = build_ti(order, &a, 0, &NumTerm::nat(9));
        match ti {
            Formula::Implies(prog, rest) => {
                assert_eq!(*prog, expect);
                assert!(matches!(*rest, Formula::ForallNum(..)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        // Set variants quote the membership shape.
        let ps = build_prog_set(order, 0);
        assert!(matches!(ps, Formula::ForallNum(..)));
        assert!(free_set_vars(&ps).contains(&0));
        let tis = build_ti_set(order, 0, &NumTerm::nat(9));
        assert!(matches!(tis, Formula::Implies(..)));
    }

    #[test]
    fn jump_shapes() {
        let order = OrderKind::Gamma0;
        let a = Formula::Eq(NumTerm::Var(0), NumTerm::Var(0));
        let j = build_j(order, &a, 0, &NumTerm::nat(0));
        // (∀y)[(∀x ≺ y)A(x) → (∀x ≺ y ∔ 0)A(x)]
        match &j {
            Formula::ForallNum(y, body) => match body.as_ref() {
                Formula::Implies(_, rhs) => match rhs.as_ref() {
                    Formula::ForallNum(x, inner) => match inner.as_ref() {
                        Formula::Implies(guard, _) => match guard.as_ref() {
                            Formula::Rel(RelSym::Prec { .. }, args) => {
                                assert_eq!(args[0], NumTerm::Var(*x));
                                assert_eq!(
                                    args[1],
                                    NumTerm::App(
                                        FnSym::OrdAdd { order },
                                        vec![NumTerm::Var(*y), NumTerm::nat(0)]
                                    )
                                );
                            }
                            other => panic!("unexpected guard {other:?}"),
                        },
                        other => panic!("unexpected inner {other:?}"),
                    },
                    other => panic!("unexpected rhs {other:?}"),
                },
                other => panic!("unexpected body {other:?}"),
            },
            other => panic!("unexpected shape {other:?}"),
        }
        // Depth 1: (∀ lo ⪯ x ≺ hi)[A(x) → A(x ∔ c)].
        let j1 = build_jk(
            order,
            1,
            &NumTerm::nat(1),
            &NumTerm::nat(9),
            &a,
            0,
            &NumTerm::nat(2),
        );
        match &j1 {
            Formula::ForallNum(_, body) => match body.as_ref() {
                Formula::Implies(range, step) => {
                    assert!(matches!(range.as_ref(), Formula::And(..)));
                    assert!(matches!(step.as_ref(), Formula::Implies(..)));
                }
                other => panic!("unexpected body {other:?}"),
            },
            other => panic!("unexpected shape {other:?}"),
        }
        // Depth 2 nests depth 1.
        let j2 = build_jk(
            order,
            2,
            &NumTerm::nat(1),
            &NumTerm::nat(9),
            &a,
            0,
            &NumTerm::nat(2),
        );
        let text = render_formula(&j2);
        let inner = render_formula(&build_jk(
            order,
            1,
            &NumTerm::nat(1),
            &NumTerm::nat(9),
            &a,
            0,
            &NumTerm::Var(3),
        ));
        assert!(text.contains(&inner[5..inner.len() - 1]));
        // Omniscience shape.
        let nos = build_nos(&a, 0);
        assert_eq!(
            nos,
            Formula::implies(
                Formula::forall(0, Formula::or(a.clone(), Formula::not(a.clone()))),
                Formula::or(
                    Formula::forall(0, a.clone()),
                    Formula::exists(0, Formula::not(a.clone()))
                )
            )
        );
    }

    #[test]
    fn jump_transfer_and_ladder() {
        // Γ₀ order: the level index is ω̇^a · b.
        let a = n(3);
        let b = n(4);
        let w = jump_level_code(OrderKind::Gamma0, &a, &b).unwrap();
        let expected = {
            let wa = omega_pow(&decode_nat(3));
            BigUint::from(encode_nat(&wa.mul(&decode_nat(4))))
        };
        assert_eq!(w, expected);
        let bt = build_jump_transfer(OrderKind::Gamma0, 1, &a, &b, &NumTerm::Var(1)).unwrap();
        let c = encode(&bt);
        assert_eq!(decode(&c), Some(bt.clone()));
        let text = render_formula(&bt);
        assert!(text.contains("rd.1"));
        assert!(text.contains("bd"));
        assert!(text.contains(&format!("T.1.{w}")));
        assert!(text.contains("phidot.g0"));
        // The ladder at stage 1 bounds gates by the stage-1 tower value.
        let lad = build_jump_ladder(OrderKind::Gamma0, 1, 1, &NumTerm::Var(0)).unwrap();
        let tower = BigUint::from(encode_nat(&gamma(1)));
        let ltext = render_formula(&lad);
        assert!(ltext.contains(&format!("T.1.{tower}")));
        assert!(ltext.contains("ladq.1.g0"));
        // κ-order variant carries the type and acceptability side conditions.
        let klad = build_jump_ladder(OrderKind::Kappa, 1, 1, &NumTerm::Var(0)).unwrap();
        let ktext = render_formula(&klad);
        assert!(ktext.contains("typ0.kk"));
        assert!(ktext.contains("acc.1."));
        assert!(ktext.contains("wpow.kk"));
    }

    #[test]
    fn designated_evaluation() {
        // Substitution symbols evaluate like the code functions.
        let f = Formula::Eq(NumTerm::Var(1), NumTerm::nat(0));
        let c = encode(&f);
        assert_eq!(
            eval_fnsym(&FnSym::SubstF { level: 1 }, &[c.clone(), n(1), n(3)]),
            Some(subst_f(&c, &n(1), &n(3)))
        );
        // Quote helpers return 0 on junk.
        assert_eq!(
            eval_fnsym(&FnSym::ImpQuote, &[BigUint::zero(), c.clone()]),
            Some(BigUint::zero())
        );
        // Jump quotes build the jump statement for the coded formula.
        let jq = eval_fnsym(&FnSym::JQuote { order: OrderKind::Gamma0 }, &[c.clone(), n(0)])
            .unwrap();
        let expect = encode(&build_j(
            OrderKind::Gamma0,
            &f,
            1,
            &NumTerm::Const(BigUint::zero()),
        ));
        assert_eq!(jq, expect);
        // Notation arithmetic matches the notation layer.
        let x = BigUint::from(encode_nat(&decode_nat(6)));
        let y = BigUint::from(encode_nat(&decode_nat(11)));
        let sum = eval_fnsym(&FnSym::OrdAdd { order: OrderKind::Gamma0 }, &[x, y]).unwrap();
        assert_eq!(
            sum,
            BigUint::from(encode_nat(&decode_nat(6).add(&decode_nat(11))))
        );
        // Theory-owned symbols stay uninterpreted here.
        assert_eq!(eval_fnsym(&FnSym::AxOf { level: 1 }, &[n(0)]), None);
        // The acceptability quote functions produce the advertised codes.
        let q = eval_fnsym(
            &FnSym::AccCode { level: 1 },
            &[n(5), n(2)],
        )
        .unwrap();
        assert_eq!(
            decode(&q),
            Some(Formula::Rel(
                RelSym::AccAt {
                    level: 1,
                    sub: n(5)
                },
                vec![NumTerm::nat(2)]
            ))
        );
    }

    #[test]
    fn structured_text_round_trips() {
        let mut rng = SplitMix::new(99);
        for _ in 0..300 {
            let f = sample_formula(&mut rng, 4);
            let text = render_formula(&f);
            let back = parse_formula(&text).unwrap();
            assert_eq!(back, f, "text {text}");
        }
        // Designated symbols and families survive the trip.
        let f = Formula::Rel(
            RelSym::TruthAt {
                level: 2,
                sub: n(19),
            },
            vec![NumTerm::App(
                FnSym::LadderQuote {
                    level: 2,
                    order: OrderKind::Kappa,
                },
                vec![NumTerm::Var(0), NumTerm::Var(1)],
            )],
        );
        assert_eq!(parse_formula(&render_formula(&f)).unwrap(), f);
    }

    #[test]
    fn numbering_table_mentions_every_tag() {
        let t = numbering_table();
        for s in ["pair", "sf.1", "ladq.1.g0", "prec.g0", "typeis.lm", "lt"] {
            assert!(t.contains(s), "missing {s}");
        }
    }
}
