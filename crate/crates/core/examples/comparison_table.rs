//! Relative errors of the four main approximations, rendered as text.

use windschitl::analysis::TableReport;
use windschitl::report::{render, OutputFormat};

fn main() -> windschitl::Result<()> {
    let table = TableReport::standard(256)?;
    print!("{}", render(&table, OutputFormat::Text)?);
    Ok(())
}
