//! Integer matrix normal forms.
//!
//! The one consumer-facing type is [`FinitePresentation`]: a finite abelian
//! group presented as `Z^n` modulo the row span of a relation matrix, reduced
//! by Smith normal form. It provides a projection from `Z^n` onto canonical
//! coordinates and an explicit integral section, which is exactly what the
//! tensor-product construction needs to induce multiplication on
//! representatives.

use crate::error::{Error, Result};

type Mat = Vec<Vec<i64>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Row-style integer reduction: maintains a set of rows in echelon form whose
/// span equals the span of everything fed in. Keeps relation matrices small
/// before the full Smith pass.
#[derive(Debug, Default)]
pub struct RowSpan {
    n: usize,
    /// (leading column, row) sorted by leading column.
    rows: Vec<(usize, Vec<i64>)>,
}

impl RowSpan {
    pub fn new(n: usize) -> Self {
        RowSpan { n, rows: Vec::new() }
    }

    pub fn add_row(&mut self, mut row: Vec<i64>) {
        assert_eq!(row.len(), self.n);
        let mut col = 0;
        while col < self.n {
            if row[col] == 0 {
                col += 1;
                continue;
            }
            match self.rows.iter().position(|(lead, _)| *lead == col) {
                None => {
                    if row[col] < 0 {
                        for x in row.iter_mut() {
                            *x = -*x;
                        }
                    }
                    let pos = self
                        .rows
                        .iter()
                        .position(|(lead, _)| *lead > col)
                        .unwrap_or(self.rows.len());
                    self.rows.insert(pos, (col, row));
                    return;
                }
                Some(idx) => {
                    // Euclidean elimination against the pivot row.
                    loop {
                        let pivot = self.rows[idx].1[col];
                        let q = row[col].div_euclid(pivot);
                        if q != 0 {
                            let prow = self.rows[idx].1.clone();
                            for (x, p) in row.iter_mut().zip(&prow) {
                                *x -= q * p;
                            }
                        }
                        if row[col] == 0 {
                            break;
                        }
                        std::mem::swap(&mut self.rows[idx].1, &mut row);
                    }
                }
            }
        }
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Smith normal form result for an `m x n` relation matrix `M`.
///
/// `diag` holds the diagonal of `D = U M V` in divisibility order. `v` and
/// `v_inv` are the tracked column transform and its inverse; the row
/// transform `U` is discarded because quotient bookkeeping never needs it.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub v: Mat,
    pub v_inv: Mat,
}

pub fn smith_normal_form(m: &[Vec<i64>], n: usize) -> Smith {
    let mut a: Mat = m.to_vec();
    let rows = a.len();
    let mut v = identity(n);
    let mut v_inv = identity(n);

    let swap_cols = |a: &mut Mat, v: &mut Mat, v_inv: &mut Mat, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    };
    // col j += k * col i; inverse acts on rows of v_inv.
    let add_col = |a: &mut Mat, v: &mut Mat, v_inv: &mut Mat, i: usize, j: usize, k: i64| {
        for row in a.iter_mut() {
            row[j] += k * row[i];
        }
        for row in v.iter_mut() {
            row[j] += k * row[i];
        }
        let sub: Vec<i64> = v_inv[j].iter().map(|x| k * x).collect();
        for (x, s) in v_inv[i].iter_mut().zip(sub) {
            *x -= s;
        }
    };
    let negate_col = |a: &mut Mat, v: &mut Mat, v_inv: &mut Mat, i: usize| {
        for row in a.iter_mut() {
            row[i] = -row[i];
        }
        for row in v.iter_mut() {
            row[i] = -row[i];
        }
        for x in v_inv[i].iter_mut() {
            *x = -*x;
        }
    };

    let mut t = 0;
    while t < rows.min(n) {
        // Locate a nonzero entry of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..n {
                if a[r][c] != 0
                    && pivot.map_or(true, |(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        if pc != t {
            swap_cols(&mut a, &mut v, &mut v_inv, t, pc);
        }

        'eliminate: loop {
            // Clear column t below the pivot with row operations.
            for r in t + 1..rows {
                while a[r][t] != 0 {
                    let q = a[r][t].div_euclid(a[t][t]);
                    if q != 0 {
                        let prow = a[t].clone();
                        for (x, p) in a[r].iter_mut().zip(&prow) {
                            *x -= q * p;
                        }
                    }
                    if a[r][t] != 0 {
                        a.swap(t, r);
                    }
                }
            }
            // Clear row t to the right of the pivot with column operations.
            for c in t + 1..n {
                while a[t][c] != 0 {
                    let q = a[t][c].div_euclid(a[t][t]);
                    if q != 0 {
                        add_col(&mut a, &mut v, &mut v_inv, t, c, -q);
                    }
                    if a[t][c] != 0 {
                        swap_cols(&mut a, &mut v, &mut v_inv, t, c);
                    }
                }
            }
            // Column ops may have reintroduced entries below the pivot.
            if (t + 1..rows).any(|r| a[r][t] != 0) {
                continue 'eliminate;
            }
            break;
        }

        // Divisibility fix-up: the pivot must divide the whole submatrix.
        let p = a[t][t];
        if p != 0 {
            if let Some(r) = (t + 1..rows).find(|&r| a[r][t + 1..].iter().any(|&x| x % p != 0)) {
                let addend = a[r].clone();
                for (x, y) in a[t].iter_mut().zip(addend) {
                    *x += y;
                }
                continue;
            }
        }
        t += 1;
    }

    let mut diag: Vec<i64> = (0..rows.min(n)).map(|i| a[i][i]).collect();
    for (i, d) in diag.clone().into_iter().enumerate() {
        if d < 0 {
            negate_col(&mut a, &mut v, &mut v_inv, i);
            diag[i] = -d;
        }
    }
    while diag.last() == Some(&0) {
        diag.pop();
    }

    Smith { diag, v, v_inv }
}

/// A finite abelian group `Z^n / <relations>` with canonical coordinates.
#[derive(Debug, Clone)]
pub struct FinitePresentation {
    n: usize,
    /// Invariant factors > 1 of the quotient, in divisibility order.
    invariants: Vec<i64>,
    /// Columns (in SNF coordinates) carrying the nontrivial factors.
    kept: Vec<usize>,
    v: Mat,
    v_inv: Mat,
}

impl FinitePresentation {
    /// Reduces the relations and returns the quotient, or an error if the
    /// quotient has a free part (is infinite).
    pub fn quotient(n: usize, relations: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut span = RowSpan::new(n);
        for r in relations {
            span.add_row(r);
        }
        let reduced = span.into_rows();
        let smith = smith_normal_form(&reduced, n);
        if smith.diag.len() < n {
            return Err(Error::InvalidInput(format!(
                "quotient of Z^{n} by {} relations is infinite",
                reduced.len()
            )));
        }
        let mut invariants = Vec::new();
        let mut kept = Vec::new();
        for (i, &d) in smith.diag.iter().enumerate() {
            if d > 1 {
                invariants.push(d);
                kept.push(i);
            }
        }
        Ok(FinitePresentation {
            n,
            invariants,
            kept,
            v: smith.v,
            v_inv: smith.v_inv,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn order(&self) -> usize {
        self.invariants.iter().product::<i64>() as usize
    }

    /// Canonical coordinates of `x` in the quotient.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.n);
        self.kept
            .iter()
            .zip(&self.invariants)
            .map(|(&col, &m)| {
                let y: i64 = (0..self.n).map(|i| x[i] * self.v[i][col]).sum();
                y.rem_euclid(m)
            })
            .collect()
    }

    /// An integral representative of the class with coordinates `t`.
    pub fn lift(&self, t: &[i64]) -> Vec<i64> {
        debug_assert_eq!(t.len(), self.invariants.len());
        (0..self.n)
            .map(|i| {
                self.kept
                    .iter()
                    .zip(t)
                    .map(|(&col, &tc)| tc * self.v_inv[col][i])
                    .sum()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonal_matrix_is_its_own_smith_form() {
        let s = smith_normal_form(&[vec![2, 0], vec![0, 3]], 2);
        // 2 and 3 merge into the single invariant factor chain 1 | 6.
        assert_eq!(s.diag.iter().product::<i64>(), 6);
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn quotient_of_plane_by_scaled_axes() {
        let q = FinitePresentation::quotient(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.project(&[2, 0]), vec![0; q.invariants().len()]);
        assert_eq!(q.project(&[0, 3]), vec![0; q.invariants().len()]);
    }

    #[test]
    fn free_quotients_are_rejected() {
        assert!(FinitePresentation::quotient(2, vec![vec![2, 0]]).is_err());
        assert!(FinitePresentation::quotient(1, Vec::<Vec<i64>>::new()).is_err());
    }

    proptest! {
        #[test]
        fn transforms_are_mutually_inverse(
            entries in proptest::collection::vec(-4i64..=4, 12)
        ) {
            let m: Mat = entries.chunks(4).map(|c| c.to_vec()).collect();
            let s = smith_normal_form(&m, 4);
            let prod = mat_mul(&s.v, &s.v_inv);
            prop_assert_eq!(prod, identity(4));
        }

        #[test]
        fn projection_kills_relations_and_sections_project_back(
            entries in proptest::collection::vec(-3i64..=3, 9),
            torsion in 2i64..=6,
        ) {
            let mut rels: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            // Force finiteness.
            for i in 0..3 {
                let mut r = vec![0i64; 3];
                r[i] = torsion;
                rels.push(r);
            }
            let q = FinitePresentation::quotient(3, rels.clone()).unwrap();
            let zero = vec![0i64; q.invariants().len()];
            for r in &rels {
                prop_assert_eq!(q.project(r), zero.clone());
            }
            // project . lift = id on canonical coordinates.
            for flat in 0..q.order() {
                let mut coords = Vec::new();
                let mut rem = flat as i64;
                for &m in q.invariants().iter().rev() {
                    coords.push(rem.rem_euclid(m));
                    rem /= m;
                }
                coords.reverse();
                prop_assert_eq!(q.project(&q.lift(&coords)), coords);
            }
        }
    }
}
