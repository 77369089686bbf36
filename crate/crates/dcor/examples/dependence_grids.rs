//! Dependence tables over parameter grids: the single-parameter curves at
//! p = q = 2 and the two-parameter surfaces.
//!
//! Run with: cargo run --example dependence_grids

use dcor::gaussian::{grid_curves, grid_halfdisc, grid_surface};

fn main() {
    println!("p = q = 2, one-parameter cross blocks (values are R~):");
    println!("  r     diag(0,r)  diag(r,r)  all-r");
    for row in grid_curves(0.1).unwrap() {
        let all_r = row
            .all_r
            .map(|v| format!("{v:.4}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "  {:.1}   {:.4}     {:.4}     {all_r}",
            row.r, row.diag_0r, row.diag_rr
        );
    }
    println!("  (all-r requires r < 1/2 for positive definiteness)\n");

    println!("p = q = 2, cross block diag(r, s) (corner of the surface):");
    let surface = grid_surface(0.25).unwrap();
    print!("  r\\s  ");
    for s in [0.0, 0.25, 0.5, 0.75] {
        print!("  {s:.2} ");
    }
    println!();
    for r in [0.0, 0.25, 0.5, 0.75] {
        print!("  {r:.2} ");
        for s in [0.0, 0.25, 0.5, 0.75] {
            let pt = surface
                .iter()
                .find(|pt| (pt.r - r).abs() < 1e-12 && (pt.s - s).abs() < 1e-12)
                .unwrap();
            print!("  {:.3}", pt.value);
        }
        println!();
    }

    println!("\np = 2, q = 1, cross block (r, s)' on the quarter disc r^2 + s^2 < 1:");
    let disc = grid_halfdisc(0.2).unwrap();
    for pt in disc.iter().filter(|pt| pt.s == 0.0) {
        println!("  (r, s) = ({:.1}, 0.0) -> R~ = {:.4}", pt.r, pt.value);
    }
    let max = disc
        .iter()
        .max_by(|a, b| a.value.partial_cmp(&b.value).unwrap())
        .unwrap();
    println!(
        "  largest grid value {:.4} at (r, s) = ({:.1}, {:.1}); the supremum as",
        max.value, max.r, max.s
    );
    println!("  r^2 + s^2 -> 1 is approximately 0.8252, not 1.");
}
