//! Certifies the ordering Γ(x+1) < W1 < Wc1 < W01* < W01 < Wl1 and the
//! β₀ W1 < Γ(x+1) < W1 sandwich on a grid.

use windschitl::analysis::{beta0, grid, verify_ordering, verify_sandwich};
use windschitl::numerics::Rational;

fn main() -> windschitl::Result<()> {
    let prec = 256;
    let xs = grid(&Rational::from_integer(1), &Rational::from_integer(20), &Rational::new(1, 2), prec)?;

    let ordering = verify_ordering(&xs, prec)?;
    println!("ordering: {:?}, {} violations", ordering.status(), ordering.violations());
    for p in ordering.inconclusive_points() {
        println!("  unresolved at x = {p}");
    }

    println!("β₀ in {}", beta0(prec)?);
    let sandwich = verify_sandwich(&xs[1..], prec)?;
    println!("sandwich on (1, 20]: {:?}", sandwich.status());
    Ok(())
}
