//! Integral n_{k,i}: adjacent grids (i,i+1) paired with gapped grids (k,l)
//! of equal (r, q) in G(2,n), and the H^2 values that separate them.

use sigsurf::search::{admissible_counts, default_i_max, nki_scan};

fn main() -> sigsurf::Result<()> {
    let k_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let recs = nki_scan(k_max, default_i_max(k_max))?;
    for r in recs.iter().filter(|r| r.admissible && r.k >= 1) {
        let (a, b) = r.h2_pair.as_ref().unwrap();
        println!(
            "k={:<2} i={:<3} n={:<4} {} vs {}  H^2 {} vs {}",
            r.k,
            r.i,
            r.n,
            r.adjacent_grid(),
            r.gapped_grid(),
            a,
            b
        );
    }
    println!("admissible per k: {:?}", admissible_counts(&recs));
    Ok(())
}
