//! Writes invariant and scan records as newline-delimited JSON and reads
//! them back.

use std::io::Cursor;

use sigsurf::catalog::{read_records, write_records, CatalogRecord};
use sigsurf::exact::beta_invariants;
use sigsurf::search::{enumerate, nki_record};

fn main() -> sigsurf::Result<()> {
    let mut records: Vec<CatalogRecord> = enumerate(5, 2, true)?
        .map(|b| CatalogRecord::from(&beta_invariants(&b)))
        .collect();
    if let Some(rec) = nki_record(2, 5)? {
        records.push(CatalogRecord::from(&rec));
    }
    let mut buf = Vec::new();
    write_records(&mut buf, &records).expect("in-memory write");
    print!("{}", String::from_utf8_lossy(&buf));
    let back = read_records(Cursor::new(buf))?;
    assert_eq!(back, records);
    println!("{} records round-tripped", back.len());
    Ok(())
}
