//! CSV ingestion: from a raw data file to distance correlations.
//!
//! Run with: cargo run --example csv_pipeline

use dcor::io::{read_csv, read_csv_table};
use dcor::stats::{dcor_sample, dcor_sample_affine};
use std::io::Write;

fn main() {
    // Write a small wind-style data file: two stations, two velocity
    // components each, plus a quality column we will not select.
    let dir = std::env::temp_dir();
    let path = dir.join("dcor_example_wind.csv");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "v_ew,v_ns,g_ew,g_ns,flag").unwrap();
    let mut state: u64 = 31;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let (mut v_ew, mut v_ns) = (0.0_f64, 0.0_f64);
    for _ in 0..300 {
        v_ew = 0.8 * v_ew + next();
        v_ns = 0.6 * v_ns + next();
        // the second station echoes the first with noise
        let g_ew = 0.7 * v_ew + 0.4 * next();
        let g_ns = 0.5 * v_ns + 0.4 * next();
        writeln!(file, "{v_ew},{v_ns},{g_ew},{g_ns},1").unwrap();
    }
    drop(file);

    let table = read_csv_table(&path).unwrap();
    println!(
        "read {} rows x {} columns: {:?}",
        table.n_rows(),
        table.n_cols(),
        table.headers
    );

    // Select the two bivariate wind vectors.
    let station_v = read_csv(&path, &["v_ew", "v_ns"]).unwrap();
    let station_g = read_csv(&path, &["g_ew", "g_ns"]).unwrap();
    println!(
        "station vectors: {} samples of dimension {}",
        station_v.n(),
        station_v.dim()
    );

    let standard = dcor_sample(&station_v, &station_g).unwrap();
    let affine = dcor_sample_affine(&station_v, &station_g).unwrap();
    println!("distance correlation between stations:");
    println!("  standard: {:.4}", standard.r);
    println!("  affine:   {:.4}", affine.r);

    // Error reporting names the offending cell.
    let bad = dir.join("dcor_example_bad.csv");
    std::fs::write(&bad, "a,b\n1.0,2.0\n3.0,NA\n").unwrap();
    match read_csv(&bad, &["a", "b"]) {
        Err(e) => println!("bad file rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    std::fs::remove_file(&path).ok();
    std::fs::remove_file(&bad).ok();
}
