//! Groups of G(m,n) solutions sharing (K, q), and whether H^2 splits them.

use sigsurf::search::coincidences;

fn main() -> sigsurf::Result<()> {
    let m = 2;
    for n in 4..=10 {
        let groups = coincidences(n, m)?;
        let split = groups.iter().filter(|g| g.fully_separated).count();
        println!(
            "G({m},{n}): {} groups, {split} fully separated by H^2",
            groups.len()
        );
        for g in &groups {
            let members: Vec<String> = g.members.iter().map(ToString::to_string).collect();
            let h2: Vec<String> = g.h2_values.iter().map(ToString::to_string).collect();
            println!(
                "  r={} q={:?}: {} -> {}",
                g.r,
                g.q.as_ref().map(ToString::to_string),
                members.join(" "),
                h2.join(" ")
            );
        }
    }
    Ok(())
}
