use super::summary::AstSummary;
use crate::scalar::Scalar;

pub const MI_MAX: f64 = 171.0;

/// Classic three-term maintainability index
/// `171 - 5.2 ln V - 0.23 CC - 16.2 ln LOC`, clamped to `[0, 171]`.
/// A Halstead volume of zero is treated as one.
pub fn maintainability_index<T: Scalar>(ast: &AstSummary) -> T {
    mi_from_parts(
        ast.halstead.volume(),
        ast.cyclomatic_complexity,
        ast.lines_of_code.max(1),
    )
}

pub fn mi_from_parts<T: Scalar>(volume: f64, cyclomatic: usize, loc: usize) -> T {
    let volume = if volume <= 0.0 { T::one() } else { T::lit(volume) };
    let loc = T::from_count(loc.max(1));
    let raw = T::lit(MI_MAX)
        - T::lit(5.2) * volume.ln()
        - T::lit(0.23) * T::from_count(cyclomatic)
        - T::lit(16.2) * loc.ln();
    raw.max(T::zero()).min(T::lit(MI_MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithms_vanish() {
        let mi: f64 = mi_from_parts(0.0, 1, 1);
        assert!((mi - 170.77).abs() < 1e-12);
        let mi: f64 = mi_from_parts(1.0, 1, 1);
        assert!((mi - 170.77).abs() < 1e-12);
    }

    #[test]
    fn cyclomatic_term_is_linear() {
        let a: f64 = mi_from_parts(120.0, 3, 10);
        let b: f64 = mi_from_parts(120.0, 13, 10);
        assert!(((a - b) - 2.3).abs() < 1e-9);
    }

    #[test]
    fn clamped() {
        let low: f64 = mi_from_parts(1e30, 500, 100_000);
        assert_eq!(low, 0.0);
        let single: f32 = mi_from_parts(0.0, 0, 1);
        assert_eq!(single, 171.0);
    }
}
