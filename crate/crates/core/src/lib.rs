//! Continued fractions, twist braids, knot invariants and lattice forms for
//! comparing plugs and corks built from 2-bridge twist data.

pub mod braids;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod obstruction;
pub mod qforms;
pub mod rationals;

pub use braids::{
    burau, f2_exponent, is_trivial, to_braid, twist_word, twist_word_for, word_nontriviality_report,
    BraidGen, BraidWord, BurauMatrix, TwistGen, TwistWord,
};
pub use error::{Error, Result};
pub use invariants::{
    alexander_closure, alexander_plat, alexander_two_bridge, basic_class_pairing_check,
    basic_classes, braid_bpq, torus_knot_genus, torus_link_alexander, AlexanderResult,
    BasicClassSet,
};
pub use laurent::{LaurentPoly1, LaurentPoly2};
pub use obstruction::{
    adjunction_defect, nondiffeo_certificate, sm_coeffs_even, sm_coeffs_odd, surface_data, Case,
    CaseRow, CoeffVector, Conclusion, ObstructionCertificate, OddVariant, SurfaceData,
};
pub use qforms::{
    classify_normal_form, classify_twist, enumerate_isometries, form_parity, matches_lemma_shape,
    preserves_form, standard_form, standard_form_by_name, FormIsometry, FormName, FormParity,
    GramForm, LemmaShape, TwistClassification, TwistKind,
};
pub use rationals::{
    cf_apply_move, cf_evaluate, cf_expand, cf_normalize, mod4_signed_odd_sum, ContinuedFraction,
    FormKind, Move, NormalForm, Normalized, Rational, Sign,
};
