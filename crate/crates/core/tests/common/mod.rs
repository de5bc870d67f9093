#![allow(dead_code)]

use dualgomory::instance::DualFormInstance;
use num_bigint::BigInt;
use rand::Rng;

pub fn worked() -> DualFormInstance {
    DualFormInstance::from_i64(
        &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
        &[26, 19],
        &[126, 141, -10, 5, 67],
    )
    .unwrap()
    .with_name("example3")
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Appends `y_i <= upper_i` and `-y_i <= -lower_i` for every coordinate.
pub fn with_box(
    mut rows: Vec<Vec<i64>>,
    mut c: Vec<i64>,
    lower: &[i64],
    upper: &[i64],
) -> (Vec<Vec<i64>>, Vec<i64>) {
    let m = rows.len();
    for i in 0..m {
        for (k, row) in rows.iter_mut().enumerate() {
            row.push(if k == i { 1 } else { 0 });
            row.push(if k == i { -1 } else { 0 });
        }
        c.push(upper[i]);
        c.push(-lower[i]);
    }
    (rows, c)
}

pub fn build(rows: &[Vec<i64>], b: &[i64], c: &[i64]) -> DualFormInstance {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    DualFormInstance::from_i64(&refs, b, c).unwrap()
}

/// Random instance: `m` in {2, 3}, up to 6 columns with entries in
/// [-5, 5], costs in [-50, 50], then box rows with bounds in [-8, 8].
///
/// Costs are drawn near the activity of a half-integral anchor point in the
/// box, so most relaxations are nonempty and the optimum is usually
/// fractional.
pub fn random_bounded<R: Rng>(rng: &mut R) -> DualFormInstance {
    let m = rng.gen_range(2..=3);
    let n = rng.gen_range(1..=6);
    let lower: Vec<i64> = (0..m).map(|_| rng.gen_range(-8..=0)).collect();
    let upper: Vec<i64> = lower.iter().map(|&l| l + rng.gen_range(0..=10)).collect();
    // anchor coordinates in half units
    let anchor: Vec<i64> = (0..m)
        .map(|i| rng.gen_range(2 * lower[i]..=2 * upper[i]))
        .collect();
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect())
        .collect();
    let c: Vec<i64> = (0..n)
        .map(|j| {
            let twice: i64 = (0..m).map(|i| anchor[i] * rows[i][j]).sum();
            (twice.div_euclid(2) + rng.gen_range(-2..=8)).clamp(-50, 50)
        })
        .collect();
    let b: Vec<i64> = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
    let (rows, c) = with_box(rows, c, &lower, &upper);
    build(&rows, &b, &c)
}

/// Bounded instance whose relaxation contains a point but no integer
/// point: `a'y = k` with every entry of `a` a multiple of `g` and `k` not.
pub fn fractional_forcing<R: Rng>(rng: &mut R) -> DualFormInstance {
    let m = rng.gen_range(1..=3);
    let g = [2, 3, 5][rng.gen_range(0..3)];
    let mut a: Vec<i64> = (0..m).map(|_| g * rng.gen_range(-2..=2)).collect();
    a[0] = g * rng.gen_range(1..=2);
    let k = loop {
        let k = rng.gen_range(-3 * g..=3 * g);
        if k % g != 0 {
            break k;
        }
    };
    // the real point (k / a_0, 0, ..., 0) lies in the box [-4, 4]^m
    let rows: Vec<Vec<i64>> = (0..m).map(|i| vec![a[i], -a[i]]).collect();
    let c = vec![k, -k];
    let (rows, c) = with_box(rows, c, &vec![-4; m], &vec![4; m]);
    let b: Vec<i64> = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
    build(&rows, &b, &c)
}
