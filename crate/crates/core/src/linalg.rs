//! Exact integer rank and kernel via fraction-free row reduction.
//!
//! Matrices here are tiny (exponent sums of equations), so the code favors
//! an obviously-correct elimination with i128 intermediates over anything
//! clever. The kernel vector choice is deterministic: basis vector of the
//! first free column, scaled integral, entry gcd 1, first nonzero entry
//! positive.

use crate::arith::gcd;

fn reduce_row(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = gcd_i128(g, v);
    }
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exact rank and, when rank < cols, the deterministic primitive kernel
/// vector described above.
pub fn integer_rank_and_kernel(matrix: &[Vec<i64>], cols: usize) -> (usize, Option<Vec<i64>>) {
    let mut rows: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&v| v as i128).collect()
        })
        .collect();

    // row echelon with gcd-reduced rows
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let (head, tail) = rows.split_at_mut(pivot_row + 1);
        let p = &head[pivot_row];
        let pv = p[col];
        for r in tail.iter_mut() {
            let rv = r[col];
            if rv == 0 {
                continue;
            }
            let g = gcd_i128(pv, rv);
            let (pm, rm) = (rv / g, pv / g);
            for c in 0..cols {
                r[c] = r[c] * rm - p[c] * pm;
            }
            reduce_row(r);
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    let rank = pivot_cols.len();
    if rank == cols {
        return (rank, None);
    }

    // first free column, back-substitute over the echelon rows
    let first_free = (0..cols).find(|c| !pivot_cols.contains(c)).expect("rank < cols");
    // rational solution as num/den with common denominator tracking
    let mut num = vec![0i128; cols];
    let mut den = vec![1i128; cols];
    num[first_free] = 1;
    for (r, &pc) in pivot_cols.iter().enumerate().rev() {
        // rows[r]: pv * x_pc + sum_{c > pc} a_c x_c = 0
        let pv = rows[r][pc];
        let mut acc_num: i128 = 0;
        let mut acc_den: i128 = 1;
        for c in (pc + 1)..cols {
            let a = rows[r][c];
            if a == 0 || num[c] == 0 {
                continue;
            }
            // acc += a * num[c]/den[c]
            let (n2, d2) = (a * num[c], den[c]);
            acc_num = acc_num * d2 + n2 * acc_den;
            acc_den *= d2;
            let g = gcd_i128(acc_num, acc_den);
            if g > 1 {
                acc_num /= g;
                acc_den /= g;
            }
        }
        // x_pc = -acc / pv
        num[pc] = -acc_num;
        den[pc] = acc_den * pv;
        if num[pc] == 0 {
            den[pc] = 1;
        } else {
            let g = gcd_i128(num[pc], den[pc]);
            if g > 1 {
                num[pc] /= g;
                den[pc] /= g;
            }
        }
    }
    // clear denominators
    let mut lcm: i128 = 1;
    for &d in &den {
        let d = d.abs().max(1);
        lcm = lcm / gcd_i128(lcm, d) * d;
    }
    let mut vec_int: Vec<i64> = (0..cols)
        .map(|c| {
            let v = num[c] * (lcm / den[c]);
            i64::try_from(v).expect("kernel entry fits i64")
        })
        .collect();
    // primitive + sign normalization
    let mut g = 0i64;
    for &v in &vec_int {
        g = gcd(g, v);
    }
    if g > 1 {
        for v in vec_int.iter_mut() {
            *v /= g;
        }
    }
    if let Some(first) = vec_int.iter().find(|&&v| v != 0) {
        if *first < 0 {
            for v in vec_int.iter_mut() {
                *v = -*v;
            }
        }
    }
    (rank, Some(vec_int))
}
