//! Ordinal notation systems with arithmetized truth theories and a small
//! proof kernel.
//!
//! The crate has three layers:
//!
//! * ordinal notations — binary Veblen forms below Γ₀ ([`ord`]), plus two
//!   extended systems built from base-κ and base-λ decompositions with
//!   finitary Veblen coefficients ([`ext`]);
//! * an arithmetized formula language over those notations ([`formula`])
//!   and enumerated axiom systems layering truth predicates over a base
//!   arithmetic ([`theory`]);
//! * a proof kernel that checks derivations in those systems and builders
//!   that assemble reusable derivations ([`proof`]).

pub mod ext;
pub mod formula;
pub mod logic;
pub mod ord;
pub mod parse;
pub mod proof;
pub mod theory;

pub use ext::{
    canonical_family, delta, embed_ord, ext_decode_nat, ext_encode_nat, ext_left_mul,
    ext_normalize, ext_single, family_sample, fv_decode_nat, fv_encode_nat, fv_from_nats,
    fv_omega_pow, fv_veblen, h_sample, kappa_omega_pow, render_coeff, render_exp, render_ext,
    tilde_delta, tower_exp, type_of, CanonicalFamily, CoeffTerm, ExtExp, ExtSummand, ExtSystem,
    ExtTerm, FamilyScheme, FvPrincipal, LambdaPiece,
};
pub use formula::{
    bicond_at_formula, bicond_h, bicond_t, bicond_t_formula, bounded_bd, build_j, build_jk,
    build_jump_ladder, build_jump_transfer, build_nos, build_prog, build_prog_set, build_ti,
    build_ti_set, close_g, code_cmp, decode, encode, eval_fnsym, free_num_vars, free_set_vars,
    jump_level_code, max_num_var, numbering_table, pair, pair2, parse_formula, proj,
    readable_formula, readable_rd, render_formula, render_num_term, sample_formula, subst_f,
    subst_num_var, unpair2, well_formed, Formula, FnSym, GodelCode, NumTerm, OrderKind, RelSym,
    SplitMix,
};
pub use logic::{
    is_logical_axiom, match_num_instance, match_set_instance, schema_id, schema_matches,
    schema_name, subst_set_var, SCHEMA_COUNT,
};
pub use proof::{
    all_elim, and_elim_l, and_elim_r, and_intro, assume, axiom, build_reflection,
    build_truth_intro, check, conj_at, discharge, gated, gen, gen_set, identity, iff_backward,
    iff_forward, logical, mp, parse_proof, render_proof, rewrite, sym, uses_assumption,
    ProofNode, Rule, Verdict,
};
pub use ord::{
    decode_nat, encode_nat, fund_seq, gamma, omega_pow, render, render_strict, subterm_pool,
    term_size, veblen, OrdError, OrdTerm, Principal, TermClass,
};
pub use parse::{parse_coeff, parse_ext, parse_term, ParseError};
pub use theory::{
    ax_truth_axiom, cov_induction_axiom, ded_transfer_axiom, fallback_axiom, family_member,
    fallback_logical_code, fallback_triple_code, fg_axiom, induction_axiom, max_symbol_level,
    notation_type, peano_axioms, prf_inversion_axiom, prf_leaf_axiom, prf_node_axiom,
    prog_acc_axiom, seq_holds, stability_at_axiom, stability_axiom, type0_axiom, type1_axiom,
    typek_axiom, TheorySpec,
};
