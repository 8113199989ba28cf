use super::{Field, Scalar, ScalarError};

/// Dense row-major matrix over `Q(z_D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self, ScalarError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ScalarError::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            field: field.clone(),
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, ScalarError> {
        if x.len() != self.cols {
            return Err(ScalarError::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, xc) in x.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !xc.is_zero() {
                        acc += &(a * xc);
                    }
                }
                acc
            })
            .collect())
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let b = vec![self.field.zero(); self.rows];
        match gaussian_solve(self, &b).expect("dimensions agree") {
            Solution::Unique(_) => Vec::new(),
            Solution::Parametric { null_space, .. } => null_space,
            Solution::Inconsistent => unreachable!("homogeneous systems are consistent"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    Parametric {
        particular: Vec<Scalar>,
        null_space: Vec<Vec<Scalar>>,
    },
    Inconsistent,
}

/// Solves `A x = b` exactly by reduction to reduced row echelon form.
pub fn gaussian_solve(a: &Matrix, b: &[Scalar]) -> Result<Solution, ScalarError> {
    if b.len() != a.rows {
        return Err(ScalarError::DimensionMismatch(format!(
            "{} rows but right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let field = &a.field;
    let (rows, cols) = (a.rows, a.cols);
    // Augmented matrix.
    let mut m: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..cols).map(|c| a.get(r, c).clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        let Some(sel) = (prow..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, sel);
        let inv = m[prow][col].inverse()?;
        for x in m[prow].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r == prow || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let delta = &factor * &m[prow][c];
                m[r][c] -= &delta;
            }
        }
        pivots.push(col);
        prow += 1;
        if prow == rows {
            break;
        }
    }

    if m[prow..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(Solution::Inconsistent);
    }

    let mut particular = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[r][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(Solution::Unique(particular));
    }
    let null_space = free
        .iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][fc];
            }
            v
        })
        .collect();
    Ok(Solution::Parametric { particular, null_space })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn unique_solution() {
        let f = Field::rationals();
        let a = mat(&f, &[&[1, 1], &[1, -1]]);
        let sol = gaussian_solve(&a, &[f.int(1), f.int(0)]).unwrap();
        assert_eq!(sol, Solution::Unique(vec![f.frac(1, 2), f.frac(1, 2)]));
    }

    #[test]
    fn identity_zero_rhs() {
        let f = Field::rationals();
        let a = Matrix::identity(&f, 3);
        let sol = gaussian_solve(&a, &[f.zero(), f.zero(), f.zero()]).unwrap();
        assert_eq!(sol, Solution::Unique(vec![f.zero(); 3]));
    }

    #[test]
    fn inconsistent() {
        let f = Field::rationals();
        let a = mat(&f, &[&[1, 1], &[2, 2]]);
        let sol = gaussian_solve(&a, &[f.int(1), f.int(3)]).unwrap();
        assert_eq!(sol, Solution::Inconsistent);
    }

    #[test]
    fn dimension_mismatch() {
        let f = Field::rationals();
        let a = mat(&f, &[&[1, 1]]);
        assert!(matches!(
            gaussian_solve(&a, &[f.one(), f.one()]),
            Err(ScalarError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn parametric_solution_checks_out() {
        let f = Field::new(3).unwrap();
        let z = f.zeta();
        let a = Matrix::from_rows(
            &f,
            vec![
                vec![f.one(), z.clone(), f.int(2), f.zero()],
                vec![f.int(2), &z * &f.int(2), f.int(4), f.one()],
            ],
        )
        .unwrap();
        let b = vec![f.one(), z.clone()];
        let Solution::Parametric { particular, null_space } = gaussian_solve(&a, &b).unwrap() else {
            panic!("expected parametric solution");
        };
        assert_eq!(a.mul_vec(&particular).unwrap(), b);
        assert_eq!(null_space.len(), 2);
        for v in &null_space {
            assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
