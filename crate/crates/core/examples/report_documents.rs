//! Report documents in JSON, CSV and table form, and the on-disk cache that
//! the command-line tool uses.
//!
//! ```text
//! cargo run --example report_documents
//! ```

use tighthilbert::cli::{Cache, CacheKey, Format, ReportDocument};
use tighthilbert::scenarios::{build_scenario, hilbert_report};

fn main() -> tighthilbert::Result<()> {
    let s = build_scenario(3, 4, 3)?;
    let mut doc = ReportDocument::new("hilbert");
    doc.param("scenario", s.label());
    doc.reports.push(hilbert_report(&s, 5, None));

    for format in [Format::Table, Format::Csv, Format::Json] {
        println!("--- {format:?}");
        print!("{}", doc.render(format)?);
    }

    let dir = tempfile::tempdir()?;
    let cache = Cache::new(dir.path());
    let key = CacheKey::new("hilbert", &[("scenario", s.label())]);
    cache.put(&key, &doc)?;
    let back = cache.get(&key).expect("entry just written");
    assert_eq!(back.to_json()?, doc.to_json()?);
    println!("--- cached as {}/{}.json", cache.dir().display(), key.digest());
    Ok(())
}
