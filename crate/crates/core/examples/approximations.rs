//! Evaluates every closed-form approximation and a few truncated expansions.

use windschitl::approximations::{eval_expansion, eval_formula, ExpansionFamily, ExpansionSpec, FormulaId};
use windschitl::numerics::Real;
use windschitl::reference::gamma_enclosure;

fn main() -> windschitl::Result<()> {
    let prec = 128;
    let x = Real::from_int(5, prec);
    let gamma = gamma_enclosure(&x, &Real::from_decimal_str("1e-30", prec)?, prec)?;
    println!("Γ(6) in {}", gamma.value);

    for id in FormulaId::ALL {
        let w = eval_formula(id, &x, prec)?;
        println!("{:>8}(5)  {}", id.name(), w.mid());
    }

    let families = [ExpansionFamily::ExpSeries, ExpansionFamily::MultSeries, ExpansionFamily::ExponentSeries];
    for family in families {
        for n in family.min_truncation()..family.min_truncation() + 3 {
            let v = eval_expansion(ExpansionSpec::new(family, n)?, &x, prec)?;
            println!("{family:?} n = {n}  {}", v.mid());
        }
    }
    Ok(())
}
