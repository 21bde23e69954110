//! The registry of every checked statement, grouped into suites.
//!
//! Proof-step identities are named `PS_<k>_<depth><letter>`: `k` is the
//! number of colors, `depth` the number of 3-dissections applied to reach
//! the progression on the left (0 for the undissected generating function,
//! 1 for `3n + s`, 2 for `9n + s`, 3 for `27n + s`, 4 for `81n + s`), and
//! the letter orders the displayed forms of the same depth.

use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{
    Arithmetic, Check, Checker, CongruenceFamily, InternalCongruence, Report, SeriesIdentity,
    VerifyError,
};
use crate::recipe::Recipe;

pub const DEFAULT_ORDER: usize = 2000;

/// Order used for the deep instances (`alpha >= 1`) of the `3^{2 alpha + 3}` families.
pub const DEEP_ORDER: usize = 20000;

/// Named suites accepted by [`run_suite`], besides entry ids.
pub const SUITES: &[&str] = &[
    "all",
    "ramanujan",
    "thm_1_1",
    "thm_1_2",
    "cor_3_2",
    "thm_1_3",
    "thm_4_1",
    "thm_4_2",
    "cor_4_3",
    "cor_4_4",
    "lemmas",
    "proof_steps",
];

/// The three-term 3-dissection of `f2/f1^2` mod 3, in recipe syntax.
const THETA_3DISSECTION: &str = "(D(q^9)^2 + 2*q*D(q^9)*Y(q^3) + q^2*Y(q^3)^2)/D(q^3)";

/// The exact 3-dissection of `f2^2/f1`.
const PSI_3DISSECTION: &str = "(f6*f9^2/(f3*f18) + q*f18^2/f9)";

/// `(id, lhs, rhs, modulus)`. `{L}` and `{P}` expand to the two dissections.
const PROOF_STEPS: &[(&str, &str, &str, u64)] = &[
    // a_5 mod 5
    ("PS_5_0a", "a5", "f10/f5/f2", 5),
    ("PS_5_0b", "a5", "f10/f5*dilate(a1, 2)", 5),
    ("PS_10_0a", "a10", "f10/f5*f2^4/f1^5", 5),
    ("PS_10_0b", "a10", "f10/f5*a5", 5),
    ("PS_15_0a", "a15", "f10^2/f5^2*f2^4/f1^5", 5),
    ("PS_15_0b", "a15", "f10^2/f5^2*a5", 5),
    // a_5 mod 3
    ("PS_5_0c", "a5", "f6/f3*f2/f1^2", 3),
    ("PS_5_0d", "a5", "f6/f3*{L}", 3),
    (
        "PS_5_1a",
        "component(a5, 3, 1)",
        "2*q*f6/f3*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    ("PS_5_1b", "component(a5, 3, 1)", "2*q*f6*f9*f18/f3^2", 3),
    ("PS_5_1c", "extract(a5, 3, 1)", "2*f3*f6*f2/f1^2", 3),
    ("PS_5_1d", "extract(a5, 3, 1)", "2*f1*f2*f6", 3),
    (
        "PS_5_2a",
        "component(extract(a5, 3, 1), 3, 0)",
        "2*f3*f6*D(q^9)^2/D(q^3)",
        3,
    ),
    ("PS_5_2b", "extract(a5, 9, 1)", "2*f1*f2*D(q^3)^2/D(q)", 3),
    (
        "PS_5_2c",
        "extract(a5, 9, 1)",
        "2*f1*f2*(f3^2/f6)^2*(f2/f1^2)",
        3,
    ),
    ("PS_5_2d", "extract(a5, 9, 1)", "2*f3^4/f6^2*(f2^2/f1)", 3),
    ("PS_5_2e", "extract(a5, 9, 1)", "2*f3^4/f6^2*{P}", 3),
    ("PS_5_3a", "extract(a5, 27, 19)", "0", 3),
    (
        "PS_5_3b",
        "component(extract(a5, 9, 1), 3, 1)",
        "2*f3^4/f6^2*(q*f18^2/f9)",
        3,
    ),
    (
        "PS_5_3c",
        "component(extract(a5, 9, 1), 3, 1)",
        "2*q*f3^4*f6^6/(f3^3*f6^2)",
        3,
    ),
    (
        "PS_5_3d",
        "component(extract(a5, 9, 1), 3, 1)",
        "2*q*f3*f6^4",
        3,
    ),
    ("PS_5_3e", "extract(a5, 27, 10)", "2*f1*f2^4", 3),
    ("PS_5_3f", "extract(a5, 27, 10)", "2*f1*f2*f6", 3),
    ("PS_5_4a", "extract(a5, 81, 10)", "extract(a5, 9, 1)", 3),
    // a_8
    ("PS_8_0a", "a8", "f6^2/f3^2*f2/f1^2", 3),
    ("PS_8_0b", "a8", "f6^2/f3^2*{L}", 3),
    (
        "PS_8_1a",
        "component(a8, 3, 2)",
        "f6^2/f3^2*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    (
        "PS_8_1b",
        "component(a8, 3, 2)",
        "q^2*f6*f18^4/(f3^2*f9^2)",
        3,
    ),
    ("PS_8_1c", "extract(a8, 3, 2)", "f2*f6^4/(f1^2*f3^2)", 3),
    ("PS_8_1d", "extract(a8, 3, 0)", "f2^3*f3^4/(f1^4*f6^2)", 3),
    ("PS_8_1e", "extract(a8, 3, 0)", "f1^8/f2^3", 3),
    (
        "PS_8_2a",
        "component(extract(a8, 3, 2), 3, 0)",
        "f6^4/f3^2*D(q^9)^2/D(q^3)",
        3,
    ),
    ("PS_8_2b", "extract(a8, 9, 2)", "f2^4/f1^2*D(q^3)^2/D(q)", 3),
    (
        "PS_8_2c",
        "extract(a8, 9, 2)",
        "f2^4/f1^2*(f3^2/f6)^2*f2/f1^2",
        3,
    ),
    (
        "PS_8_2d",
        "extract(a8, 9, 2)",
        "f2^3*f3^4/(f6^2*f1^3)*f2^2/f1",
        3,
    ),
    ("PS_8_2e", "extract(a8, 9, 2)", "f3^3/f6*f2^2/f1", 3),
    ("PS_8_2f", "extract(a8, 9, 2)", "f3^3/f6*{P}", 3),
    ("PS_8_3a", "extract(a8, 27, 20)", "0", 3),
    (
        "PS_8_3b",
        "component(extract(a8, 9, 2), 3, 0)",
        "f3^3/f6*f6*f9^2/(f3*f18)",
        3,
    ),
    (
        "PS_8_3c",
        "component(extract(a8, 9, 2), 3, 0)",
        "f3^2*f9^2/f18",
        3,
    ),
    ("PS_8_3d", "extract(a8, 27, 2)", "f1^2*f3^2/f6", 3),
    ("PS_8_3e", "extract(a8, 27, 2)", "f1^8/f2^3", 3),
    // a_11
    ("PS_11_0a", "a11", "f6^3/f3^3*f2/f1^2", 3),
    ("PS_11_0b", "a11", "f6^3/f3^3*{L}", 3),
    (
        "PS_11_1a",
        "component(a11, 3, 0)",
        "f6^3/f3^3*D(q^9)^2/D(q^3)",
        3,
    ),
    (
        "PS_11_1b",
        "component(a11, 3, 0)",
        "f6^4*f9^4/(f3^5*f18^2)",
        3,
    ),
    ("PS_11_1c", "extract(a11, 3, 0)", "f2^4*f3^4/(f1^5*f6^2)", 3),
    ("PS_11_1d", "extract(a11, 3, 0)", "f3^3/f6*f2/f1^2", 3),
    (
        "PS_11_1e",
        "component(a11, 3, 1)",
        "f6^3/f3^3*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    (
        "PS_11_1f",
        "component(a11, 3, 1)",
        "2*q*f6^3*f9*f18/f3^4",
        3,
    ),
    ("PS_11_1g", "extract(a11, 3, 1)", "2*f2^3*f3*f6/f1^4", 3),
    ("PS_11_1h", "extract(a11, 3, 1)", "2*f2^6/f1", 3),
    (
        "PS_11_2a",
        "component(extract(a11, 3, 0), 3, 1)",
        "f3^3/f6*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    ("PS_11_2b", "extract(a11, 9, 3)", "2*f1^2*f3*f6/f2", 3),
    ("PS_11_2c", "extract(a11, 9, 3)", "2*f3^2*f2^2/f1", 3),
    ("PS_11_3a", "extract(a11, 27, 21)", "0", 3),
    (
        "PS_11_3b",
        "component(extract(a11, 9, 3), 3, 1)",
        "2*f3^2*q*f18^2/f9",
        3,
    ),
    ("PS_11_3c", "extract(a11, 27, 12)", "2*f1^2*f6^2/f3", 3),
    ("PS_11_3d", "extract(a11, 27, 12)", "2*f2^6/f1", 3),
    // a_14
    ("PS_14_0a", "a14", "f6^4/f3^4*f2/f1^2", 3),
    ("PS_14_0b", "a14", "f6^4/f3^4*{L}", 3),
    (
        "PS_14_1a",
        "component(a14, 3, 1)",
        "f6^4/f3^4*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    (
        "PS_14_1b",
        "component(a14, 3, 1)",
        "2*q*f6^4*f9*f18/f3^5",
        3,
    ),
    ("PS_14_1c", "extract(a14, 3, 1)", "2*f2^4*f3*f6/f1^5", 3),
    ("PS_14_1d", "extract(a14, 3, 1)", "2*f6^2*f2/f1^2", 3),
    (
        "PS_14_1e",
        "component(a14, 3, 0)",
        "f6^4/f3^4*D(q^9)^2/D(q^3)",
        3,
    ),
    (
        "PS_14_1f",
        "component(a14, 3, 0)",
        "f6^5*f9^4/(f3^6*f18^2)",
        3,
    ),
    ("PS_14_1g", "extract(a14, 3, 0)", "f2^5*f3^4/(f1^6*f6^2)", 3),
    ("PS_14_1h", "extract(a14, 3, 0)", "f1^6/f2", 3),
    (
        "PS_14_2a",
        "component(extract(a14, 3, 1), 3, 1)",
        "2*f6^2*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    ("PS_14_2b", "extract(a14, 9, 4)", "f3*f6*f2^2/f1", 3),
    ("PS_14_3a", "extract(a14, 27, 22)", "0", 3),
    (
        "PS_14_3b",
        "component(extract(a14, 9, 4), 3, 0)",
        "f3*f6*f6*f9^2/(f3*f18)",
        3,
    ),
    (
        "PS_14_3c",
        "component(extract(a14, 9, 4), 3, 0)",
        "f6^2*f9^2/f18",
        3,
    ),
    ("PS_14_3d", "extract(a14, 27, 4)", "f2^2*f3^2/f6", 3),
    ("PS_14_3e", "extract(a14, 27, 4)", "f1^6/f2", 3),
    // a_17
    ("PS_17_0a", "a17", "f6^5/f3^5*f2/f1^2", 3),
    ("PS_17_0b", "a17", "f6^5/f3^5*{L}", 3),
    (
        "PS_17_1a",
        "component(a17, 3, 2)",
        "f6^5/f3^5*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    (
        "PS_17_1b",
        "component(a17, 3, 2)",
        "q^2*f6^4*f18^4/(f3^5*f9^2)",
        3,
    ),
    ("PS_17_1c", "extract(a17, 3, 2)", "f2^4*f6^4/(f1^5*f3^2)", 3),
    ("PS_17_1d", "extract(a17, 3, 2)", "f6^5/f3^3*f2/f1^2", 3),
    (
        "PS_17_1e",
        "component(a17, 3, 1)",
        "f6^5/f3^5*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    (
        "PS_17_1f",
        "component(a17, 3, 1)",
        "2*q*f6^5*f9*f18/f3^6",
        3,
    ),
    ("PS_17_1g", "extract(a17, 3, 1)", "2*f2^8/f1^3", 3),
    (
        "PS_17_2a",
        "component(extract(a17, 3, 2), 3, 1)",
        "f6^5/f3^3*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    ("PS_17_2b", "extract(a17, 9, 5)", "2*f6^2*f2^2/f1", 3),
    ("PS_17_3a", "extract(a17, 27, 23)", "0", 3),
    (
        "PS_17_3b",
        "component(extract(a17, 9, 5), 3, 1)",
        "2*f6^2*q*f18^2/f9",
        3,
    ),
    ("PS_17_3c", "extract(a17, 27, 14)", "2*f2^2*f6^2/f3", 3),
    ("PS_17_3d", "extract(a17, 27, 14)", "2*f2^8/f1^3", 3),
    // a_20
    ("PS_20_0a", "a20", "f6^6/f3^6*f2/f1^2", 3),
    ("PS_20_0b", "a20", "f6^6/f3^6*{L}", 3),
    (
        "PS_20_1a",
        "component(a20, 3, 0)",
        "f6^6/f3^6*D(q^9)^2/D(q^3)",
        3,
    ),
    (
        "PS_20_1b",
        "component(a20, 3, 0)",
        "f6^7*f9^4/(f3^8*f18^2)",
        3,
    ),
    ("PS_20_1c", "extract(a20, 3, 0)", "f2^7*f3^4/(f1^8*f6^2)", 3),
    ("PS_20_1d", "extract(a20, 3, 0)", "f3^2*f2/f1^2", 3),
    ("PS_20_1e", "extract(a20, 3, 0)", "f1^4*f2", 3),
    (
        "PS_20_2a",
        "component(extract(a20, 3, 0), 3, 2)",
        "f3^2*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    ("PS_20_2b", "extract(a20, 9, 6)", "f6^3/f3*f2^2/f1", 3),
    ("PS_20_3a", "extract(a20, 27, 24)", "0", 3),
    (
        "PS_20_3b",
        "component(extract(a20, 9, 6), 3, 0)",
        "f6^3/f3*f6*f9^2/(f3*f18)",
        3,
    ),
    (
        "PS_20_3c",
        "component(extract(a20, 9, 6), 3, 0)",
        "f6^4*f9^2/(f3^2*f18)",
        3,
    ),
    ("PS_20_3d", "extract(a20, 27, 6)", "f2^4*f3^2/(f1^2*f6)", 3),
    ("PS_20_3e", "extract(a20, 27, 6)", "f1^4*f2", 3),
    // a_23
    ("PS_23_0a", "a23", "f6^7/f3^7*f2/f1^2", 3),
    ("PS_23_0b", "a23", "f6^7/f3^7*{L}", 3),
    (
        "PS_23_1a",
        "component(a23, 3, 1)",
        "f6^7/f3^7*2*q*D(q^9)*Y(q^3)/D(q^3)",
        3,
    ),
    (
        "PS_23_1b",
        "component(a23, 3, 1)",
        "2*q*f6^7*f9*f18/f3^8",
        3,
    ),
    ("PS_23_1c", "extract(a23, 3, 1)", "2*f2^7*f3*f6/f1^8", 3),
    ("PS_23_1d", "extract(a23, 3, 1)", "2*f6^3/f3*f2/f1^2", 3),
    ("PS_23_1e", "extract(a23, 3, 1)", "2*f2^10/f1^5", 3),
    (
        "PS_23_2a",
        "component(extract(a23, 3, 1), 3, 2)",
        "2*f6^3/f3*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    ("PS_23_2b", "extract(a23, 9, 7)", "2*f6^4/f3^2*f2^2/f1", 3),
    ("PS_23_3a", "extract(a23, 27, 25)", "0", 3),
    (
        "PS_23_3b",
        "component(extract(a23, 9, 7), 3, 1)",
        "2*f6^4/f3^2*q*f18^2/f9",
        3,
    ),
    (
        "PS_23_3c",
        "extract(a23, 27, 16)",
        "2*f2^4*f6^2/(f1^2*f3)",
        3,
    ),
    ("PS_23_3d", "extract(a23, 27, 16)", "2*f2^10/f1^5", 3),
    // a_26
    ("PS_26_0a", "a26", "f6^8/f3^8*f2/f1^2", 3),
    ("PS_26_0b", "a26", "f6^8/f3^8*{L}", 3),
    (
        "PS_26_1a",
        "component(a26, 3, 2)",
        "f6^8/f3^8*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    (
        "PS_26_1b",
        "component(a26, 3, 2)",
        "q^2*f6^7*f18^4/(f3^8*f9^2)",
        3,
    ),
    ("PS_26_1c", "extract(a26, 3, 2)", "f2^7*f6^4/(f1^8*f3^2)", 3),
    ("PS_26_1d", "extract(a26, 3, 2)", "f6^6/f3^4*f2/f1^2", 3),
    (
        "PS_26_1e",
        "component(a26, 3, 0)",
        "f6^8/f3^8*D(q^9)^2/D(q^3)",
        3,
    ),
    (
        "PS_26_1f",
        "component(a26, 3, 0)",
        "f6^9*f9^4/(f3^10*f18^2)",
        3,
    ),
    (
        "PS_26_1g",
        "extract(a26, 3, 0)",
        "f2^9*f3^4/(f1^10*f6^2)",
        3,
    ),
    ("PS_26_1h", "extract(a26, 3, 0)", "f1^2*f2^3", 3),
    (
        "PS_26_2a",
        "component(extract(a26, 3, 2), 3, 2)",
        "f6^6/f3^4*q^2*Y(q^3)^2/D(q^3)",
        3,
    ),
    ("PS_26_2b", "extract(a26, 9, 8)", "f6^5/f3^3*f2^2/f1", 3),
    ("PS_26_3a", "extract(a26, 27, 26)", "0", 3),
    (
        "PS_26_3b",
        "component(extract(a26, 9, 8), 3, 0)",
        "f6^5/f3^3*f6*f9^2/(f3*f18)",
        3,
    ),
    ("PS_26_3c", "extract(a26, 27, 8)", "f2^6*f3^2/(f1^4*f6)", 3),
    ("PS_26_3d", "extract(a26, 27, 8)", "f1^2*f2^3", 3),
];

fn expand(template: &str) -> String {
    template
        .replace("{L}", THETA_3DISSECTION)
        .replace("{P}", PSI_3DISSECTION)
}

/// All proof-step identities, including the lifts `a_{27+3t+2} = (f54/f27) a_{3t+2}`
/// behind the `j`-families.
pub fn proof_steps() -> Vec<SeriesIdentity> {
    let mut out: Vec<SeriesIdentity> = PROOF_STEPS
        .iter()
        .map(|&(id, lhs, rhs, m)| SeriesIdentity::parse(id, &expand(lhs), &expand(rhs), Some(m)))
        .collect();
    for t in 0..=8u32 {
        let (base, k) = (3 * t + 2, 27 + 3 * t + 2);
        let lhs = format!("a{k}");
        out.push(SeriesIdentity::parse(
            &format!("PS_{k}_0a"),
            &lhs,
            &format!("f54/f27*f2^{}/f1^{}", base - 1, base),
            Some(3),
        ));
        out.push(SeriesIdentity::parse(
            &format!("PS_{k}_0b"),
            &lhs,
            &format!("f54/f27*a{base}"),
            Some(3),
        ));
    }
    out
}

/// Markdown table of the proof-step identities, one row per id.
pub fn proof_step_table() -> String {
    let mut out = String::from("| id | left side | right side | modulus |\n|---|---|---|---|\n");
    for s in proof_steps() {
        out.push_str(&format!(
            "| `{}` | `{}` | `{}` | {} |\n",
            s.id,
            s.lhs,
            s.rhs,
            s.modulus.map_or("exact".to_string(), |m| m.to_string())
        ));
    }
    out
}

/// `(coef * 9^alpha - sub) / 8`, failing unless the division is exact.
pub fn closed_form_offset(coef: u64, sub: u64, alpha: u32) -> Result<u64, VerifyError> {
    let numerator = BigInt::from(coef) * BigInt::from(9u32).pow(alpha) - BigInt::from(sub);
    let (q, r) = numerator.div_rem(&BigInt::from(8));
    if r != BigInt::from(0) || q.sign() == num_bigint::Sign::Minus {
        return Err(VerifyError::NonIntegralOffset {
            numerator: numerator.to_string(),
            denominator: 8,
        });
    }
    q.to_u64()
        .ok_or_else(|| VerifyError::BadParams(format!("offset {q} too large")))
}

/// `(r_t, s_t)`: `(t, 0)` for even `t`, `(t + 9, 1)` for odd `t`.
pub fn internal_residues(t: u32) -> (u64, u64) {
    if t.is_multiple_of(2) {
        (t as u64, 0)
    } else {
        (t as u64 + 9, 1)
    }
}

/// Family parameter ranges. `None` keeps each family's default range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamBounds {
    pub alpha: Option<RangeInclusive<u32>>,
    pub j: Option<RangeInclusive<u32>>,
    pub t: Option<RangeInclusive<u32>>,
}

impl ParamBounds {
    fn alpha_or(&self, default: RangeInclusive<u32>) -> RangeInclusive<u32> {
        self.alpha.clone().unwrap_or(default)
    }

    fn j_or(&self, default: RangeInclusive<u32>) -> RangeInclusive<u32> {
        self.j.clone().unwrap_or(default)
    }

    fn t_range(&self) -> RangeInclusive<u32> {
        self.t.clone().unwrap_or(0..=8)
    }
}

impl FromStr for ParamBounds {
    type Err = VerifyError;

    /// `alpha=0..2,j=0..2,t=0..8`; a bare number `t=3` means `3..3`.
    fn from_str(src: &str) -> Result<Self, VerifyError> {
        let mut out = ParamBounds::default();
        for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || VerifyError::BadParams(format!("cannot parse `{part}`"));
            let (name, range) = part.split_once('=').ok_or_else(bad)?;
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
                None => (range, range),
            };
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(VerifyError::BadParams(format!("empty range in `{part}`")));
            }
            match name.trim() {
                "alpha" => out.alpha = Some(lo..=hi),
                "j" => out.j = Some(lo..=hi),
                "t" if hi <= 8 => out.t = Some(lo..=hi),
                "t" => return Err(VerifyError::BadParams("t ranges over 0..8 only".into())),
                other => {
                    return Err(VerifyError::BadParams(format!(
                        "unknown parameter `{other}`"
                    )))
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub check: Check,
    /// Suite this entry belongs to, one of [`SUITES`].
    pub suite: &'static str,
    /// Runs at `max(order, DEEP_ORDER)`.
    pub deep: bool,
}

impl Entry {
    pub fn order_for(&self, order: usize, deep_order: usize) -> usize {
        if self.deep {
            order.max(deep_order)
        } else {
            order
        }
    }
}

type DeepFamily = (
    &'static str,
    u32,
    u64,
    u64,
    RangeInclusive<u32>,
    &'static str,
);

fn vanishing(
    id: String,
    k: u32,
    stride: u64,
    offset: u64,
    modulus: u64,
    params: &[(&str, i64)],
) -> Check {
    Check::Vanishing(CongruenceFamily {
        id,
        recipe: Recipe::ak(k),
        stride,
        offset,
        modulus,
        params: params.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
    })
}

fn entry(check: Check, suite: &'static str) -> Entry {
    Entry {
        check,
        suite,
        deep: false,
    }
}

/// Immutable list of registered checks in a fixed order.
#[derive(Clone, Debug)]
pub struct Registry {
    entries: Vec<Entry>,
}

impl Registry {
    pub fn build(params: &ParamBounds) -> Result<Registry, VerifyError> {
        let mut entries = Vec::new();

        for (m, b) in [(5u64, 4u64), (7, 5), (11, 6)] {
            entries.push(entry(
                vanishing(format!("RAM_{m}"), 1, m, b, m, &[]),
                "ramanujan",
            ));
        }

        for j in params.j_or(0..=2) {
            for (c, b) in [(1u32, 5u64), (3, 2), (4, 4), (5, 6), (7, 3)] {
                let k = 7 * j + c;
                let id = format!("THM_1_1(j={j},a{k},7n+{b})");
                entries.push(entry(
                    vanishing(id, k, 7, b, 7, &[("j", j as i64)]),
                    "thm_1_1",
                ));
            }
        }

        entries.push(entry(
            vanishing("THM_1_2".into(), 5, 5, 3, 5, &[]),
            "thm_1_2",
        ));

        for j in params.j_or(0..=2) {
            let k = 5 * j + 5;
            let id = format!("COR_3_2(j={j},a{k})");
            entries.push(entry(
                vanishing(id, k, 5, 3, 5, &[("j", j as i64)]),
                "cor_3_2",
            ));
        }

        // (id template, k, coef, sub, alpha range, suite): offset (coef 9^a - sub) / 8.
        let deep_families: [DeepFamily; 3] = [
            (
                "THM_1_3(alpha={a})",
                5,
                153,
                1,
                params.alpha_or(0..=2),
                "thm_1_3",
            ),
            (
                "COR_4_3(a20,alpha={a})",
                20,
                198,
                6,
                params.alpha_or(0..=1),
                "cor_4_3",
            ),
            (
                "COR_4_3(a23,alpha={a})",
                23,
                207,
                7,
                params.alpha_or(0..=1),
                "cor_4_3",
            ),
        ];
        for (template, k, coef, sub, alphas, suite) in deep_families {
            for alpha in alphas {
                let offset = closed_form_offset(coef, sub, alpha)?;
                let stride = 3u64.pow(2 * alpha + 3);
                let id = template.replace("{a}", &alpha.to_string());
                entries.push(Entry {
                    check: vanishing(id, k, stride, offset, 3, &[("alpha", alpha as i64)]),
                    suite,
                    deep: alpha >= 1,
                });
            }
        }

        for t in params.t_range() {
            let k = 3 * t + 2;
            let id = format!("THM_4_1(t={t},a{k})");
            entries.push(entry(
                vanishing(id, k, 27, 18 + t as u64, 3, &[("t", t as i64)]),
                "thm_4_1",
            ));
        }

        for t in params.t_range() {
            let k = 3 * t + 2;
            let (r, s) = internal_residues(t);
            entries.push(entry(
                Check::Internal(InternalCongruence {
                    id: format!("THM_4_2(t={t},a{k})"),
                    recipe: Recipe::ak(k),
                    modulus: 3,
                    lhs: (27, r),
                    rhs: (3, s),
                }),
                "thm_4_2",
            ));
        }

        for j in params.j_or(0..=1) {
            for t in params.t_range() {
                let k = 27 * j + 3 * t + 2;
                let id = format!("COR_4_4(j={j},t={t},a{k})");
                let bindings = [("j", j as i64), ("t", t as i64)];
                entries.push(entry(
                    vanishing(id, k, 27, 18 + t as u64, 3, &bindings),
                    "cor_4_4",
                ));
            }
        }

        entries.extend(identity_checks().into_iter().map(|c| entry(c, "lemmas")));
        entries.extend(
            proof_steps()
                .into_iter()
                .map(|s| entry(Check::Identity(s), "proof_steps")),
        );

        Ok(Registry { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entries of a named suite, or the entries whose id (or id up to the
    /// first `(`) equals `suite_id`, ignoring ASCII case. A proof-step stage
    /// such as `PS_5_1` selects every lettered line `PS_5_1a`, `PS_5_1b`, ...
    pub fn select(&self, suite_id: &str) -> Result<Vec<&Entry>, VerifyError> {
        let picked: Vec<&Entry> = if suite_id.eq_ignore_ascii_case("all") {
            self.entries.iter().collect()
        } else {
            self.entries
                .iter()
                .filter(|e| {
                    let id = e.check.id();
                    let base = id.split('(').next().unwrap_or(id);
                    e.suite.eq_ignore_ascii_case(suite_id)
                        || id.eq_ignore_ascii_case(suite_id)
                        || base.eq_ignore_ascii_case(suite_id)
                        || is_stage_of(id, suite_id)
                })
                .collect()
        };
        if picked.is_empty() {
            return Err(VerifyError::UnknownSuite(suite_id.to_string()));
        }
        Ok(picked)
    }
}

fn is_stage_of(id: &str, stage: &str) -> bool {
    stage.starts_with("PS_")
        && id.len() == stage.len() + 1
        && id.starts_with(stage)
        && id.as_bytes()[stage.len()].is_ascii_lowercase()
}

fn identity_checks() -> Vec<Check> {
    let frobenius_samples = [
        (3u64, 1usize, 1i64),
        (3, 2, 3),
        (5, 1, 1),
        (5, 2, 2),
        (7, 1, 1),
    ]
    .into_iter()
    .map(|(p, a, b)| {
        Check::Identity(SeriesIdentity::parse(
            &format!("LEM_2_3(p={p},a={a},b={b})"),
            &format!("f{a}^{}", b * p as i64),
            &format!("f{}^{b}", a * p as usize),
            Some(p),
        ))
    })
    .collect();
    vec![
        Check::Identity(SeriesIdentity::parse("D_PROD", "D(q)", "f1^2/f2", None)),
        Check::Identity(SeriesIdentity::parse(
            "Y_PROD",
            "Y(q)",
            "f1*f6^2/(f2*f3)",
            None,
        )),
        Check::Identity(SeriesIdentity::parse(
            "LEM_2_1",
            "f2/f1^2",
            THETA_3DISSECTION,
            Some(3),
        )),
        Check::Identity(SeriesIdentity::parse(
            "LEM_2_2",
            "f2^2/f1",
            PSI_3DISSECTION,
            None,
        )),
        Check::Group {
            id: "LEM_2_3".into(),
            parts: frobenius_samples,
        },
    ]
}

/// `THM_1_2` and `THM_4_1` for `t = 0, 1, 2` with the offset moved up by one.
pub fn shifted_offset_mutants() -> Vec<CongruenceFamily> {
    let mut out = vec![CongruenceFamily {
        id: "MUT_THM_1_2(B+1)".into(),
        recipe: Recipe::ak(5),
        stride: 5,
        offset: 4,
        modulus: 5,
        params: vec![],
    }];
    for t in 0..=2u32 {
        out.push(CongruenceFamily {
            id: format!("MUT_THM_4_1(t={t},B+1)"),
            recipe: Recipe::ak(3 * t + 2),
            stride: 27,
            offset: 19 + t as u64,
            modulus: 3,
            params: vec![("t".into(), t as i64)],
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub order: usize,
    pub deep_order: usize,
    pub params: ParamBounds,
    pub arithmetic: Arithmetic,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: DEFAULT_ORDER,
            deep_order: DEEP_ORDER,
            params: ParamBounds::default(),
            arithmetic: Arithmetic::Modular,
        }
    }
}

impl RunConfig {
    pub fn with_order(order: usize) -> RunConfig {
        RunConfig {
            order,
            ..RunConfig::default()
        }
    }
}

/// Runs every check of `suite_id` in parallel. Reports come back sorted by id.
pub fn run_suite(suite_id: &str, config: &RunConfig) -> Result<Vec<Report>, VerifyError> {
    let registry = Registry::build(&config.params)?;
    let selected = registry.select(suite_id)?;
    let checker = Checker::new(config.arithmetic);
    let work: Vec<(&Entry, usize)> = selected
        .iter()
        .map(|e| (*e, e.order_for(config.order, config.deep_order)))
        .collect();
    checker.warm(work.iter().map(|(e, n)| (&e.check, *n)));
    let mut reports: Vec<Report> = work
        .par_iter()
        .map(|(e, n)| checker.check(&e.check, *n))
        .collect::<Result<_, _>>()?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}
