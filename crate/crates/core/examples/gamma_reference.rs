//! Certified enclosures of Γ(x+1) at a few points.

use windschitl::numerics::Real;
use windschitl::reference::gamma_enclosure;

fn main() -> windschitl::Result<()> {
    let prec = 192;
    let target = Real::from_decimal_str("1e-40", prec)?;
    for x in ["0.5", "1", "4.25", "30", "1000"] {
        let xr = Real::from_decimal_str(x, prec)?;
        let g = gamma_enclosure(&xr, &target, prec)?;
        println!("Γ({x} + 1) in {}  (shift {}, depth {})", g.value, g.shift_used, g.stirling_terms);
    }
    Ok(())
}
