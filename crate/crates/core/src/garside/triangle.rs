use crate::error::{Error, Result};

/// `N_{n,ℓ}` for `2 <= n <= n_max` and `0 <= ℓ <= 2n - 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTriangle {
    /// `rows[n - 2][ℓ]`.
    rows: Vec<Vec<u64>>,
}

impl CountTriangle {
    pub fn n_max(&self) -> u32 {
        self.rows.len() as u32 + 1
    }

    pub fn row(&self, n: u32) -> Option<&[u64]> {
        n.checked_sub(2)
            .and_then(|k| self.rows.get(k as usize))
            .map(Vec::as_slice)
    }

    /// `N_{n,ℓ}`, and 0 outside the triangle.
    pub fn get(&self, n: u32, length: usize) -> u64 {
        self.row(n)
            .and_then(|r| r.get(length))
            .copied()
            .unwrap_or(0)
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, &[u64])> {
        self.rows
            .iter()
            .enumerate()
            .map(|(k, r)| (k as u32 + 2, r.as_slice()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (_, row) in self.rows() {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Each entry is the sum of the three entries above it, from the row `(1, 1)`.
pub fn count_triangle(n_max: u32) -> Result<CountTriangle> {
    if n_max < 2 {
        return Err(Error::RankTooSmall);
    }
    let mut rows = vec![vec![1u64, 1]];
    for _ in 3..=n_max {
        let prev = rows.last().unwrap();
        let mut row = vec![0u64; prev.len() + 2];
        for (l, cell) in row.iter_mut().enumerate() {
            let mut sum = 0u64;
            for back in 0..3 {
                if let Some(v) = l.checked_sub(back).and_then(|k| prev.get(k)) {
                    sum = sum
                        .checked_add(*v)
                        .ok_or(Error::Overflow("count triangle"))?;
                }
            }
            *cell = sum;
        }
        rows.push(row);
    }
    Ok(CountTriangle { rows })
}

/// Coefficients of `(1 + x)(1 + x + x²)^{n-2}`, lowest degree first.
pub fn generating_polynomial(n: u32) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::RankTooSmall);
    }
    let mut poly = vec![1u64, 1];
    for _ in 2..n {
        let mut next = vec![0u64; poly.len() + 2];
        for (k, &c) in poly.iter().enumerate() {
            for shift in 0..3 {
                next[k + shift] = next[k + shift]
                    .checked_add(c)
                    .ok_or(Error::Overflow("generating polynomial"))?;
            }
        }
        poly = next;
    }
    Ok(poly)
}
