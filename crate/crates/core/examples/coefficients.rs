//! Prints the first few exact coefficients of every family.

use windschitl::coefficients::{CoefficientFamily, FamilyKind};

fn main() {
    let kinds = [
        ("a", FamilyKind::A),
        ("a*", FamilyKind::AStar),
        ("b", FamilyKind::B),
        ("c", FamilyKind::C),
        ("a'", FamilyKind::StirlingPrime),
        ("a''", FamilyKind::StirlingDoublePrime),
        ("lu", FamilyKind::Lu),
    ];
    for (name, kind) in kinds {
        let family = CoefficientFamily::generate(kind, 8);
        let values: Vec<String> = family.values.iter().map(|(n, v)| format!("{n}:{v}")).collect();
        println!("{name:>4}  {}", values.join("  "));
    }
}
