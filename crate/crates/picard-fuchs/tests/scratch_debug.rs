use algebra_core::{fmt_q, qi, BiSeries, Scalar};
use picard_fuchs::{omega0_residue_oracle, tables_plain};

#[test]
fn debug_apply_against_hand_values() {
    let (d2, d3) = tables_plain();

    // D2(x) = (p00 + p10 + p20)·x = 6xy² + 32x²y² − 480x³y².
    let x = BiSeries::poly_q(&[(1, 0, 1, 1)]);
    let image = d2.apply_series(&x.with_window((8, 8)));
    println!(
        "D2(x): (1,2)={} (2,2)={} (3,2)={} (others zero: {})",
        fmt_q(&image.coeff(1, 2)),
        fmt_q(&image.coeff(2, 2)),
        fmt_q(&image.coeff(3, 2)),
        image.coeff(1, 1).is_zero() && image.coeff(0, 2).is_zero()
    );

    // D2(y) = −(1−4x)³y² + (−2+72x−448x²)y³.
    let y = BiSeries::poly_q(&[(0, 1, 1, 1)]);
    let image = d2.apply_series(&y.with_window((8, 8)));
    println!(
        "D2(y): (0,2)={} (1,2)={} (2,2)={} (3,2)={} (0,3)={} (1,3)={} (2,3)={}",
        fmt_q(&image.coeff(0, 2)),
        fmt_q(&image.coeff(1, 2)),
        fmt_q(&image.coeff(2, 2)),
        fmt_q(&image.coeff(3, 2)),
        fmt_q(&image.coeff(0, 3)),
        fmt_q(&image.coeff(1, 3)),
        fmt_q(&image.coeff(2, 3))
    );

    // D3(1) = q00 = 16xy(1−36x−3y).
    let one = BiSeries::one().with_window((8, 8));
    let image = d3.apply_series(&one);
    println!(
        "D3(1): (1,1)={} (2,1)={} (1,2)={}",
        fmt_q(&image.coeff(1, 1)),
        fmt_q(&image.coeff(2, 1)),
        fmt_q(&image.coeff(1, 2))
    );
}

#[test]
fn debug_oracle_vs_operators() {
    let omega0 = match omega0_residue_oracle(6) {
        Ok(s) => s,
        Err(e) => {
            println!("oracle FAILED: {e}");
            return;
        }
    };
    for (i, j, expect) in [
        (0, 0, "1"),
        (1, 0, "0"),
        (0, 1, "0"),
        (2, 0, "8"),
        (1, 1, "16"),
        (3, 0, "0"),
        (2, 1, "160"),
        (1, 2, "16"),
        (4, 0, "88"),
        (3, 1, "1536"),
    ] {
        let got = fmt_q(&omega0.coeff(i, j));
        let tag = if got == expect { "ok" } else { "MISMATCH" };
        println!("oracle[{i},{j}] = {got} (expect {expect}) {tag}");
    }

    let (d2, d3) = tables_plain();
    // The oracle output has window (6,6) but only i+j<=6 is populated;
    // restrict to a total-degree-safe rectangular window (4,2) before
    // applying, so every referenced coefficient is genuine.
    let f = omega0.truncate_to((4, 2));
    let im2 = d2.apply_series(&f);
    let im3 = d3.apply_series(&f);
    println!("D2(oracle omega0) nonzero terms within (3,2):");
    for (&(i, j), c) in im2.iter() {
        if i <= 3 && j <= 2 {
            println!("  ({i},{j}) = {}", fmt_q(c));
        }
    }
    println!("D3(oracle omega0) nonzero terms within (3,2):");
    for (&(i, j), c) in im3.iter() {
        if i <= 3 && j <= 2 {
            println!("  ({i},{j}) = {}", fmt_q(c));
        }
    }
}
