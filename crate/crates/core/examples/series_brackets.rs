//! Truncations of ln(sinh t / t) and of the Stirling exponent alternate
//! around the true value.

use windschitl::numerics::Real;
use windschitl::series::{ln_sinh_over_t, stirling_exponent};

fn main() -> windschitl::Result<()> {
    let prec = 128;
    let t = Real::from_decimal_str("0.5", prec)?;
    println!("ln(sinh t / t), t = 0.5");
    for n in 1..=6 {
        let s = ln_sinh_over_t(&t, n, prec)?;
        println!("  n = {n}  {:?}  {}", s.bracket_kind, s.value);
    }

    let x = Real::from_int(3, prec);
    println!("ln Γ(x+1) - ln(sqrt(2πx)(x/e)^x), x = 3");
    for n in 1..=6 {
        let s = stirling_exponent(&x, n, prec)?;
        println!("  n = {n}  {:?}  {}", s.bracket_kind, s.value);
    }
    Ok(())
}
