//! Estimates x^7 (ln Γ(x+1) - ln W(x)) at large x and compares it with the
//! limiting constants.

use windschitl::analysis::{rate_constant, rate_margin};
use windschitl::approximations::FormulaId;
use windschitl::numerics::Real;

fn main() -> windschitl::Result<()> {
    let prec = 256;
    for x in [1000, 10000] {
        let xr = Real::from_int(x, prec);
        for id in [FormulaId::W1, FormulaId::Wc1, FormulaId::W01, FormulaId::W01Star, FormulaId::Wl1] {
            let r = rate_constant(id, &xr, prec)?;
            println!(
                "x = {x:>5}  {:>8}  target {:>12}  deviation {:.2e}  {:?}",
                id.name(),
                r.target,
                r.relative_deviation(),
                r.check(rate_margin(&xr))
            );
        }
    }
    Ok(())
}
