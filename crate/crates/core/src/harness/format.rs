/// Fixed 12-decimal rendering with negative zero folded to zero.
pub fn fmt_f64(v: f64) -> String {
    let s = format!("{v:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_negative_zero() {
        assert_eq!(fmt_f64(-0.0), "0.000000000000");
        assert_eq!(fmt_f64(-1e-15), "0.000000000000");
        assert_eq!(fmt_f64(-0.5), "-0.500000000000");
    }
}
