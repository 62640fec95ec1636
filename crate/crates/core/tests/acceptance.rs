use std::time::Instant;

use graphfair::bench::{poc_table, render_table, run_all};

#[test]
fn acceptance() {
    let start = Instant::now();
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    println!(
        "{} of {} passed in {:.1?}",
        reports.len() - failed.len(),
        reports.len(),
        start.elapsed()
    );
    assert_eq!(reports.len(), 15);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn poc_summary_table() {
    let rows = poc_table().unwrap();
    print!("{}", render_table(&rows));
    for r in &rows {
        assert!(
            r.matches(),
            "{}: expected {}, measured {}",
            r.instance,
            r.expected,
            r.measured
        );
    }
}
