//! Fixed-precision number formatting shared by every CSV and JSON writer.
//!
//! All reals are printed with at most 15 significant digits so that output
//! files are byte-identical across runs and platforms.

/// Formats `v` with 15 significant digits, trimming trailing zeros.
///
/// Plain decimal notation is used for magnitudes in `[1e-5, 1e15)`,
/// scientific notation (`1.5e-13`) otherwise.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.14e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("rust always emits an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Rounds to the value whose shortest decimal representation is
/// [`fmt_real`]'s output; serde_json then prints at most 15 digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    fmt_real(v).parse().unwrap_or(v)
}

/// `serialize_with` adaptor applying [`round15`].
pub fn ser_real<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round15(*v))
}
