//! Exact linear algebra over the integers and rationals.
//!
//! Elimination is fraction-free (Bareiss), so intermediate entries are
//! always minors of the input and stay in `i128`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i128>;

/// Upper-triangularizes `m` in place with Bareiss elimination and row
/// pivoting over the first `cols` columns. Returns the pivot columns and
/// the sign of the row permutation.
fn bareiss(m: &mut [Vec<i128>], cols: usize) -> (Vec<usize>, i128) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut sign = 1i128;
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..m[i].len() {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push(c);
        r += 1;
    }
    (pivots, sign)
}

/// Exact determinant of a square integer matrix.
pub fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut work = m.to_vec();
    let (pivots, sign) = bareiss(&mut work, n);
    if pivots.len() < n {
        return 0;
    }
    sign * work[n - 1][n - 1]
}

/// Rank of an integer matrix.
pub fn rank(m: &[Vec<i128>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.to_vec();
    bareiss(&mut work, cols).0.len()
}

/// Unique solution of the square system `a x = rhs`, or `None` when `a`
/// is singular.
pub fn solve(a: &[Vec<i128>], rhs: &[i128]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert_eq!(rhs.len(), n);
    let mut work: Vec<Vec<i128>> = a
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut v = row.clone();
            v.push(r);
            v
        })
        .collect();
    let (pivots, _) = bareiss(&mut work, n);
    if pivots.len() < n {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(work[i][n]);
        for j in i + 1..n {
            acc -= Rational::from_integer(work[i][j]) * x[j];
        }
        x[i] = acc / Rational::from_integer(work[i][i]);
    }
    Some(x)
}

/// Inverse of a square integer matrix over the rationals.
pub fn inverse(a: &[Vec<i128>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let unit: Vec<i128> = (0..n).map(|i| i128::from(i == k)).collect();
        columns.push(solve(a, &unit)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|k| columns[k][i]).collect())
            .collect(),
    )
}

/// Inverse of a unimodular integer matrix, or `None` if the inverse is
/// not integral.
pub fn integer_inverse(a: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    inverse(a)?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|q| q.is_integer().then(|| q.to_integer()))
                .collect()
        })
        .collect()
}

/// Whether some nonzero `y >= 0` satisfies `m y >= 0` componentwise.
///
/// Solved as the linear program `max Σ y` subject to `-m y <= 0`,
/// `Σ y <= 1`, `y >= 0` with an exact simplex method and Bland's rule.
pub fn has_nonnegative_kernel_ray(m: &[Vec<i128>]) -> bool {
    let vars = m.first().map_or(0, Vec::len);
    if vars == 0 {
        return false;
    }
    // Certificate by a single row whose entries are all negative.
    if m.iter().any(|row| row.iter().all(|&x| x < 0)) {
        return false;
    }
    let rows = m.len() + 1;
    let width = vars + rows + 1;
    let q = |x: i128| Rational::from_integer(x);
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for (i, row) in m.iter().enumerate() {
        let mut t = vec![Rational::zero(); width];
        for j in 0..vars {
            t[j] = q(-row[j]);
        }
        t[vars + i] = Rational::one();
        tableau.push(t);
    }
    let mut bound = vec![Rational::one(); vars];
    bound.resize(width, Rational::zero());
    bound[vars + rows - 1] = Rational::one();
    bound[width - 1] = Rational::one();
    tableau.push(bound);
    // Objective row holds reduced costs; maximizing Σ y.
    let mut objective = vec![Rational::zero(); width];
    for c in objective.iter_mut().take(vars) {
        *c = Rational::one();
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();
    while let Some(enter) = (0..width - 1).find(|&j| objective[j].is_positive()) {
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            let a = tableau[i][enter];
            if a.is_positive() {
                let ratio = tableau[i][width - 1] / a;
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = tableau[l][width - 1] / tableau[l][enter];
                        if ratio < best || (ratio == best && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        // The feasible region is bounded, so a leaving row always exists.
        let l = leave.expect("bounded program");
        let pivot = tableau[l][enter];
        for x in tableau[l].iter_mut() {
            *x /= pivot;
        }
        let pivot_row = tableau[l].clone();
        for (i, row) in tableau.iter_mut().enumerate() {
            if i != l && !row[enter].is_zero() {
                let f = row[enter];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        let f = objective[enter];
        for (x, p) in objective.iter_mut().zip(&pivot_row) {
            *x -= f * p;
        }
        basis[l] = enter;
    }
    // Optimal value is -objective[rhs].
    (-objective[width - 1]).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> Vec<Vec<i128>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[1, 0], &[1, 1]])), 1);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(determinant(&m(&[&[2, 4], &[1, 2]])), 0);
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            4
        );
        assert_eq!(determinant(&[]), 1);
    }

    #[test]
    fn solve_rational_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[1, 2]).unwrap();
        assert_eq!(x, [Rational::new(1, 5), Rational::new(3, 5)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[1, 1]).is_none());
    }

    #[test]
    fn unimodular_inverse_is_integral() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(integer_inverse(&a).unwrap(), m(&[&[1, -1], &[0, 1]]));
        assert!(integer_inverse(&m(&[&[2, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
    }

    #[test]
    fn kernel_ray_detection() {
        // y1 - y2 >= 0 and y2 - y1 >= 0 admit y = (1, 1).
        assert!(has_nonnegative_kernel_ray(&m(&[&[1, -1], &[-1, 1]])));
        // -y1 >= 0 and -y2 >= 0 force y = 0.
        assert!(!has_nonnegative_kernel_ray(&m(&[&[-1, 0], &[0, -1]])));
        // y1 - 2 y2 >= 0, -y1 + y2 >= 0 forces y = 0.
        assert!(!has_nonnegative_kernel_ray(&m(&[&[1, -2], &[-1, 1]])));
        // y1 - y2 >= 0 with y2 free to vanish.
        assert!(has_nonnegative_kernel_ray(&m(&[&[1, -1], &[0, -1]])));
    }
}
