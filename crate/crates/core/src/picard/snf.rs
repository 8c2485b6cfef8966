//! Smith and Hermite normal forms of small integer matrices.

pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()
        })
        .collect()
}

/// `x M` for a row vector `x`.
pub fn vec_mat(x: &[i64], m: &Mat) -> Vec<i64> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| x.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

/// Result of [`snf`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.d[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

fn swap_cols(m: &mut Mat, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

// column j += k * column i
fn add_col(m: &mut Mat, j: usize, i: usize, k: i64) {
    for row in m.iter_mut() {
        row[j] += k * row[i];
    }
}

// row j += k * row i
fn add_row(m: &mut Mat, j: usize, i: usize, k: i64) {
    let src = m[i].clone();
    for (a, b) in m[j].iter_mut().zip(src) {
        *a += k * b;
    }
}

/// Smith normal form by gcd pivoting, with explicit unimodular transforms.
pub fn snf(m: &Mat) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[i][t].div_euclid(d[t][t]);
                add_row(&mut d, i, t, -q);
                add_row(&mut u, i, t, -q);
                clean &= d[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = d[t][j].div_euclid(d[t][t]);
                add_col(&mut d, j, t, -q);
                add_col(&mut v, j, t, -q);
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    Smith { u, d, v }
}

/// Row Hermite normal form: nonzero rows only, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &Mat) -> Mat {
    let mut a: Mat = m.clone();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let piv = (r..a.len()).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let q = a[i][c].div_euclid(a[r][c]);
                add_row(&mut a, i, r, -q);
                done &= a[i][c] == 0;
            }
            if done {
                break;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                for x in a[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = a[i][c].div_euclid(a[r][c]);
                add_row(&mut a, i, r, -q);
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Basis of the left kernel `{x : x m = 0}`, in Hermite form.
pub fn left_kernel(m: &Mat) -> Mat {
    let s = snf(m);
    let r = s.rank();
    let basis: Mat = s.u[r..].to_vec();
    hnf(&basis)
}

pub fn det(m: &Mat) -> i64 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = snf(&vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(s.diagonal(), vec![1, 6]);
        let s = snf(&vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(s.diagonal(), vec![0, 0]);
        assert_eq!(snf(&identity(2)).d, identity(2));
        let k = left_kernel(&vec![vec![1], vec![2]]);
        assert_eq!(k, vec![vec![2, -1]]);
        assert_eq!(det(&vec![vec![2, 1], vec![7, 4]]), 1);
    }
}
