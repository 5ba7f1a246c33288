//! Tiny dense complex linear algebra for the Newton systems and determinant
//! evaluations of the reductions.

use num_complex::Complex64;

/// Gaussian elimination with partial pivoting; `None` for a singular system.
pub(crate) fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

pub(crate) fn determinant(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
        }
    }
    det
}

/// Characteristic polynomial `det(y·I − A)`, ascending and monic, by
/// pivoted elementary reduction to Hessenberg form and La Budde's recurrence.
pub(crate) fn char_poly(mut a: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = a.len();
    let zero = Complex64::new(0.0, 0.0);
    for m in 1..n.saturating_sub(1) {
        let c = m - 1;
        let pivot = (m..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm())).unwrap_or(m);
        if a[pivot][c].norm() == 0.0 {
            continue;
        }
        if pivot != m {
            a.swap(pivot, m);
            for row in a.iter_mut() {
                row.swap(pivot, m);
            }
        }
        for i in m + 1..n {
            let f = a[i][c] / a[m][c];
            if f.norm() == 0.0 {
                continue;
            }
            for k in 0..n {
                let v = a[m][k];
                a[i][k] -= f * v;
            }
            for row in a.iter_mut() {
                let v = row[i];
                row[m] += f * v;
            }
        }
    }
    // p[i] = det(y·I − H[..i, ..i])
    let mut p: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]];
    for i in 0..n {
        let prev = &p[i];
        let mut next = vec![zero; i + 2];
        for (k, v) in prev.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= a[i][i] * v;
        }
        let mut sub = Complex64::new(1.0, 0.0);
        for m in 1..=i {
            sub *= a[i - m + 1][i - m];
            let f = a[i - m][i] * sub;
            for (k, v) in p[i - m].iter().enumerate() {
                next[k] -= f * v;
            }
        }
        p.push(next);
    }
    p.pop().unwrap_or_default()
}
