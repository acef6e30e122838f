//! Regenerates the tabulated G(2,4), G(2,5), G(2,6) rows and compares them
//! with the embedded fixture.

use sigsurf::catalog::fixtures::TABLE_ONE;

fn main() {
    for table in &TABLE_ONE {
        println!("{}", table.model);
        for rec in table.regenerate() {
            println!(
                "  {:<6} {:>3} {:>3}  {}",
                rec.grid.to_string(),
                rec.r,
                rec.q,
                rec.h2
            );
        }
        let bad = table.mismatches();
        println!("  {} mismatches", bad.len());
    }
}
