//! Text syntax for ordinal terms.
//!
//! The canonical output form uses `phi(index, arg)` applications, `+` sums,
//! and decimal numerals. The parser additionally accepts sugar — `w`,
//! `w^A`, `eps0`, `A * n` — and normalizes while reading, so any
//! well-formed input yields a normal term even when the text is not in
//! canonical form (for example `phi(0, phi(1,0))` reads back as
//! `phi(1,0)`).

use std::fmt;

use thiserror::Error;

use crate::ext::{
    ext_single, fv_omega_pow, fv_veblen, one_exp, tower_exp, zero_exp, CoeffTerm, ExtExp,
    ExtSystem, ExtTerm,
};
use crate::ord::{omega_pow, veblen, OrdTerm};

/// Parse failure with the byte offset where reading stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pub pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src, pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    /// Consume `word` when it appears here as a whole identifier.
    pub fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(word) {
            let after = &rest[word.len()..];
            if !after.starts_with(|c: char| c.is_alphanumeric() || c == '_') {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    pub fn numeral(&mut self) -> Option<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        match digits.parse::<u64>() {
            Ok(n) => {
                self.pos += digits.len();
                Some(n)
            }
            Err(_) => None,
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub fn error(&mut self, msg: impl fmt::Display) -> ParseError {
        self.skip_ws();
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }
}

/// Read a Γ₀ term, requiring the whole string to be consumed.
pub fn parse_term(src: &str) -> Result<OrdTerm, ParseError> {
    let mut lx = Lexer::new(src);
    let t = term(&mut lx)?;
    if lx.at_end() {
        Ok(t)
    } else {
        Err(lx.error("trailing input"))
    }
}

pub(crate) fn term(lx: &mut Lexer) -> Result<OrdTerm, ParseError> {
    let mut acc = factor(lx)?;
    while lx.eat('+') {
        let next = factor(lx)?;
        acc = acc.add(&next);
    }
    Ok(acc)
}

fn factor(lx: &mut Lexer) -> Result<OrdTerm, ParseError> {
    let mut acc = atom(lx)?;
    while lx.eat('*') {
        let next = atom(lx)?;
        acc = acc.mul(&next);
    }
    Ok(acc)
}

fn atom(lx: &mut Lexer) -> Result<OrdTerm, ParseError> {
    if let Some(n) = lx.numeral() {
        return Ok(OrdTerm::from_nat(n));
    }
    if lx.eat_word("phi") {
        lx.expect('(')?;
        let index = term(lx)?;
        lx.expect(',')?;
        let arg = term(lx)?;
        lx.expect(')')?;
        return Ok(veblen(&index, &arg));
    }
    if lx.eat_word("eps0") {
        return Ok(veblen(&OrdTerm::one(), &OrdTerm::zero()));
    }
    if lx.eat_word("w") {
        if lx.eat('^') {
            let e = atom(lx)?;
            return Ok(omega_pow(&e));
        }
        return Ok(omega_pow(&OrdTerm::one()));
    }
    if lx.eat('(') {
        let t = term(lx)?;
        lx.expect(')')?;
        return Ok(t);
    }
    Err(lx.error("expected a term"))
}

/// Read a coefficient term (finitary `phi`), requiring the whole string to
/// be consumed.
pub fn parse_coeff(src: &str) -> Result<CoeffTerm, ParseError> {
    let mut lx = Lexer::new(src);
    let t = coeff(&mut lx)?;
    if lx.at_end() {
        Ok(t)
    } else {
        Err(lx.error("trailing input"))
    }
}

pub(crate) fn coeff(lx: &mut Lexer) -> Result<CoeffTerm, ParseError> {
    let mut acc = cfactor(lx)?;
    while lx.eat('+') {
        let next = cfactor(lx)?;
        acc = acc.add(&next);
    }
    Ok(acc)
}

fn cfactor(lx: &mut Lexer) -> Result<CoeffTerm, ParseError> {
    let mut acc = catom(lx)?;
    while lx.eat('*') {
        let next = catom(lx)?;
        acc = acc.mul(&next);
    }
    Ok(acc)
}

fn catom(lx: &mut Lexer) -> Result<CoeffTerm, ParseError> {
    if let Some(n) = lx.numeral() {
        return Ok(CoeffTerm::from_nat(n));
    }
    if lx.eat_word("phi") || lx.eat_word("fv") {
        lx.expect('(')?;
        let mut args = vec![coeff(lx)?];
        while lx.eat(',') {
            args.push(coeff(lx)?);
        }
        lx.expect(')')?;
        return Ok(fv_veblen(&args));
    }
    if lx.eat_word("eps0") {
        return Ok(fv_veblen(&[CoeffTerm::one(), CoeffTerm::zero()]));
    }
    if lx.eat_word("w") {
        if lx.eat('^') {
            let e = catom(lx)?;
            return Ok(fv_omega_pow(&e));
        }
        return Ok(fv_omega_pow(&CoeffTerm::one()));
    }
    if lx.eat('(') {
        let t = coeff(lx)?;
        lx.expect(')')?;
        return Ok(t);
    }
    Err(lx.error("expected a coefficient term"))
}

/// Read an extended (base-`k` or base-`l`) term, requiring the whole string
/// to be consumed.
pub fn parse_ext(system: ExtSystem, src: &str) -> Result<ExtTerm, ParseError> {
    let mut lx = Lexer::new(src);
    let t = ext_term(&mut lx, system)?;
    if lx.at_end() {
        Ok(t)
    } else {
        Err(lx.error("trailing input"))
    }
}

pub(crate) fn ext_term(lx: &mut Lexer, system: ExtSystem) -> Result<ExtTerm, ParseError> {
    let mut acc = ext_summand(lx, system)?;
    while lx.eat('+') {
        let next = ext_summand(lx, system)?;
        acc = acc.add(&next);
    }
    Ok(acc)
}

fn base_word(system: ExtSystem) -> &'static str {
    match system {
        ExtSystem::Kappa => "k",
        ExtSystem::Lambda => "l",
    }
}

fn ext_summand(lx: &mut Lexer, system: ExtSystem) -> Result<ExtTerm, ParseError> {
    if lx.eat_word(base_word(system)) {
        let exp = if lx.eat('^') {
            ext_exponent(lx, system)?
        } else {
            one_exp(system)
        };
        let mut c = CoeffTerm::one();
        while lx.eat('*') {
            let next = catom(lx)?;
            c = c.mul(&next);
        }
        return Ok(ext_single(system, exp, &c));
    }
    let c = cfactor(lx)?;
    Ok(ext_single(system, zero_exp(system), &c))
}

fn ext_exponent(lx: &mut Lexer, system: ExtSystem) -> Result<ExtExp, ParseError> {
    match system {
        ExtSystem::Kappa => Ok(ExtExp::Plain(catom(lx)?)),
        ExtSystem::Lambda => {
            if lx.eat('(') {
                let mut layers = vec![tower_layer(lx)?];
                while lx.eat('+') {
                    layers.push(tower_layer(lx)?);
                }
                lx.expect(')')?;
                return Ok(tower_exp(&layers));
            }
            // Unparenthesized exponents are single atoms: the summand
            // coefficient owns any following `*`.
            if lx.eat_word("l") {
                let g = if lx.eat('^') {
                    lx.numeral()
                        .ok_or_else(|| lx.error("expected a tower height numeral"))?
                } else {
                    1
                };
                let g = u32::try_from(g).map_err(|_| lx.error("tower height too large"))?;
                return Ok(tower_exp(&[(g, CoeffTerm::one())]));
            }
            let d = catom(lx)?;
            Ok(tower_exp(&[(0, d)]))
        }
    }
}

fn tower_layer(lx: &mut Lexer) -> Result<(u32, CoeffTerm), ParseError> {
    if lx.eat_word("l") {
        let g = if lx.eat('^') {
            lx.numeral()
                .ok_or_else(|| lx.error("expected a tower height numeral"))?
        } else {
            1
        };
        let g = u32::try_from(g).map_err(|_| lx.error("tower height too large"))?;
        let mut d = CoeffTerm::one();
        while lx.eat('*') {
            let next = catom(lx)?;
            d = d.mul(&next);
        }
        return Ok((g, d));
    }
    let d = cfactor(lx)?;
    Ok((0, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ord::{gamma, render, OrdTerm};

    fn p(s: &str) -> OrdTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn numerals_and_sugar() {
        assert_eq!(p("0"), OrdTerm::zero());
        assert_eq!(p("7"), OrdTerm::from_nat(7));
        assert_eq!(p("w"), omega_pow(&OrdTerm::one()));
        assert_eq!(p("w^w"), omega_pow(&omega_pow(&OrdTerm::one())));
        assert_eq!(p("eps0"), gamma(1));
        assert_eq!(p("w ^ 2"), p("phi(0,2)"));
        assert_eq!(p("w*2 + 1"), p("phi(0,1) + phi(0,1) + 1"));
    }

    #[test]
    fn parser_normalizes() {
        assert_eq!(p("1 + w"), p("w"));
        assert_eq!(p("phi(0, phi(1,0))"), p("phi(1,0)"));
        assert_eq!(p("phi(0, eps0 + 1)"), p("w^(eps0 + 1)"));
    }

    #[test]
    fn round_trips_canonical_text() {
        let samples = ["0", "3", "phi(0,1)", "phi(0,1) + 3", "phi(phi(1,0),0)"];
        for s in samples {
            assert_eq!(render(&p(s)), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("phi(1").unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_term("w + ").unwrap_err();
        assert!(e.msg.contains("expected a term"));
        assert!(parse_term("2 2").is_err());
        assert!(parse_term("").is_err());
    }

    #[test]
    fn coeff_grammar() {
        let c = |s: &str| parse_coeff(s).unwrap();
        assert_eq!(c("0"), CoeffTerm::zero());
        assert_eq!(c("phi(1)"), CoeffTerm::omega());
        assert_eq!(c("w"), CoeffTerm::omega());
        assert_eq!(
            c("phi(1)*2 + 3"),
            CoeffTerm::omega()
                .mul(&CoeffTerm::from_nat(2))
                .add(&CoeffTerm::from_nat(3))
        );
        assert_eq!(c("phi(0,5)"), c("w^5"));
        assert_eq!(c("phi(1,0)"), c("eps0"));
        assert_eq!(c("phi(phi(1,0,0),0)"), c("phi(1,0,0)"));
        assert!(parse_coeff("phi()").is_err());
    }

    #[test]
    fn coeff_round_trips() {
        use crate::ext::{fv_decode_nat, render_coeff};
        for code in 0..1500u64 {
            let t = fv_decode_nat(code);
            let back = parse_coeff(&render_coeff(&t)).unwrap();
            assert_eq!(back, t, "code {code}");
        }
    }

    #[test]
    fn ext_grammar() {
        use crate::ext::render_ext;
        let k = |s: &str| parse_ext(ExtSystem::Kappa, s).unwrap();
        let l = |s: &str| parse_ext(ExtSystem::Lambda, s).unwrap();
        assert_eq!(k("k"), ExtTerm::base(ExtSystem::Kappa));
        assert_eq!(
            render_ext(&k("k^phi(1)*3 + k*2 + 7")),
            "k^phi(1)*3 + k*2 + 7"
        );
        assert_eq!(render_ext(&l("l^l")), "l^l");
        assert_eq!(render_ext(&l("l^l^2")), "l^l^2");
        assert_eq!(render_ext(&l("l^(l*2 + 3)*phi(1)")), "l^(l*2 + 3)*phi(1)");
        assert!(parse_ext(ExtSystem::Kappa, "l").is_err());
        assert!(parse_ext(ExtSystem::Lambda, "k").is_err());
    }

    #[test]
    fn ext_round_trips() {
        use crate::ext::{ext_decode_nat, render_ext};
        for system in [ExtSystem::Kappa, ExtSystem::Lambda] {
            for code in 0..1200u64 {
                let t = ext_decode_nat(system, code);
                let back = parse_ext(system, &render_ext(&t)).unwrap();
                assert_eq!(back, t, "{system:?} code {code}");
            }
        }
    }
}
