//! Dense linear algebra over GF(2) on boolean rows.

/// Reduced row echelon form. Zero rows are dropped; returns the rows and
/// their pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<bool>>, n_cols: usize) -> (Vec<Vec<bool>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] {
                let (a, b) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&mut hi[0], &lo[r])
                };
                a.iter_mut().zip(b).for_each(|(x, y)| *x ^= *y);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : M v = 0}`.
pub(crate) fn kernel(rows: Vec<Vec<bool>>, n_cols: usize) -> Vec<Vec<bool>> {
    let (reduced, pivots) = rref(rows, n_cols);
    let mut is_pivot = vec![false; n_cols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    (0..n_cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![false; n_cols];
            v[f] = true;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = row[f];
            }
            v
        })
        .collect()
}

pub(crate) fn rank(rows: Vec<Vec<bool>>, n_cols: usize) -> usize {
    rref(rows, n_cols).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &str) -> Vec<bool> {
        bits.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = vec![row("1101"), row("0111"), row("1010")];
        let k = kernel(m.clone(), 4);
        assert_eq!(k.len(), 4 - rank(m.clone(), 4));
        for v in &k {
            for r in &m {
                let dot = r.iter().zip(v).filter(|(a, b)| **a && **b).count();
                assert_eq!(dot % 2, 0);
            }
        }
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let (rows, piv) = rref(vec![row("110"), row("011"), row("101")], 3);
        assert_eq!(rows.len(), 2);
        assert_eq!(piv, vec![0, 1]);
    }
}
