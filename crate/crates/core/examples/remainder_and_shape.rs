//! Checks the exponential-series remainder bound and the monotone, concave
//! shape of f1 = ln Γ(x+1) - ln W1(x).

use windschitl::analysis::{grid, probe_f1_shape, verify_remainder};
use windschitl::numerics::{Rational, Real};

fn main() -> windschitl::Result<()> {
    let prec = 256;
    let xs: Vec<Real> = [1, 2, 5, 10].iter().map(|&x| Real::from_int(x, prec)).collect();
    let report = verify_remainder(&[4, 5, 6, 7, 8], &xs, prec)?;
    for c in &report.cells {
        println!("n = {}  x = {:>3}  |R| <= {:.3e}  {:?}", c.n, c.x.to_f64(), c.bound.to_f64(), c.status);
    }

    let shape_xs = grid(&Rational::from_integer(1), &Rational::from_integer(10), &Rational::new(1, 2), prec)?;
    let shape = probe_f1_shape(&shape_xs, prec)?;
    println!("f1 increasing and concave on [1, 10]: {:?}", shape.status());
    Ok(())
}
